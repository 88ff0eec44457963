//! Brute-force collision engine.
//!
//! This module knows nothing about transition weights or limit-cycle
//! algebra: it builds the exact collision unitary U = e^{−iĤτ}, conjugates
//! full density matrices, traces out the ancillas and books every energy
//! flow from expectation values.  It exists to be slow and obviously
//! correct, so that the closed forms in [`crate::alternating`] and
//! [`crate::simultaneous`] have something independent to be checked
//! against.
//!
//! Energy bookkeeping uses Heisenberg increments ΔÔ = U†ÔU − Ô evaluated
//! in the pre-collision product state: heat is the increment of an
//! ancilla's free Hamiltonian, work the increment of an interaction term
//! (the cost of switching it on and off), and ΔE the increment of the
//! system's own Hamiltonian.  Unitarity of U makes the ledger close
//! exactly: ΔE + W + Q = 0 collision by collision.

use crate::alternating::ThermoCycle;
use crate::matops::{self, dagger, expectation, kron, partial_trace, CMatrix};
use crate::model::{
    interaction_pair, interaction_simultaneous, qubit_hamiltonian, total_hamiltonian_alternating,
    total_hamiltonian_simultaneous, MachineConfig, Mode, QubitState, Side, POSITIVITY_TOL,
};
use crate::Error;

/// Contraction multipliers at least this close to one are treated as
/// non-relaxing when solving for the limit cycle numerically.
pub const CONTRACTION_GUARD: f64 = 1e-12;

/// Energy flows booked during one collision.  Signs follow the crate
/// convention: positive heat enters an ancilla, positive work is stored by
/// the coupling switches, `de_system` is the system's own energy change.
/// Entries of a contact not touched by the collision are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionLedger {
    pub q_hot: f64,
    pub q_cold: f64,
    pub w_hot: f64,
    pub w_cold: f64,
    pub de_system: f64,
}

impl CollisionLedger {
    pub fn zero() -> Self {
        Self {
            q_hot: 0.0,
            q_cold: 0.0,
            w_hot: 0.0,
            w_cold: 0.0,
            de_system: 0.0,
        }
    }

    /// First-law residual ΔE + W + Q; zero up to rounding for every
    /// unitary collision.
    pub fn closure(&self) -> f64 {
        self.de_system + self.q_hot + self.q_cold + self.w_hot + self.w_cold
    }
}

/// Validate a state about to enter a collision.
fn require_physical(state: &QubitState) -> Result<(), Error> {
    if !state.is_physical(POSITIVITY_TOL) {
        return Err(Error::UnphysicalState(format!(
            "p = {}, c = {} lies outside the Bloch ball",
            state.p, state.c
        )));
    }
    Ok(())
}

/// One exact collision with a single contact (alternating operation).
///
/// The unitary and the Heisenberg increments are diagonalised once at
/// construction; [`AlternatingCollision::apply`] is then pure matrix
/// arithmetic.
pub struct AlternatingCollision {
    side: Side,
    ancilla: CMatrix,
    u: CMatrix,
    delta_hs: CMatrix,
    delta_ha: CMatrix,
    delta_hi: CMatrix,
}

impl AlternatingCollision {
    pub fn new(cfg: &MachineConfig, side: Side) -> Result<Self, Error> {
        cfg.validate()?;
        let contact = cfg.contact(side);
        let h = total_hamiltonian_alternating(cfg, side);
        let u = matops::expm_hermitian(&h, cfg.tau)?;
        let id = matops::identity(2);
        let h_s = kron(&qubit_hamiltonian(cfg.omega_s), &id);
        let h_a = kron(&id, &qubit_hamiltonian(contact.bath.omega));
        let h_i = interaction_pair(&contact.coupling);
        let heisenberg = |op: &CMatrix| dagger(&u).dot(op).dot(&u) - op;
        Ok(Self {
            side,
            ancilla: contact.bath.gibbs().to_density(),
            delta_hs: heisenberg(&h_s),
            delta_ha: heisenberg(&h_a),
            delta_hi: heisenberg(&h_i),
            u,
        })
    }

    /// Collide `state` with a fresh ancilla; return the post-collision
    /// system state and the energy ledger of the collision.
    pub fn apply(&self, state: &QubitState) -> Result<(QubitState, CollisionLedger), Error> {
        require_physical(state)?;
        let rho = kron(&state.to_density(), &self.ancilla);
        let q = expectation(&self.delta_ha, &rho)?;
        let w = expectation(&self.delta_hi, &rho)?;
        let de_system = expectation(&self.delta_hs, &rho)?;
        let rho_out = self.u.dot(&rho).dot(&dagger(&self.u));
        let reduced = partial_trace(&rho_out, &[2, 2], &[0])?;
        let state_out = QubitState::from_density(&reduced)?;
        require_physical(&state_out)?;
        let ledger = match self.side {
            Side::Hot => CollisionLedger {
                q_hot: q,
                w_hot: w,
                q_cold: 0.0,
                w_cold: 0.0,
                de_system,
            },
            Side::Cold => CollisionLedger {
                q_hot: 0.0,
                w_hot: 0.0,
                q_cold: q,
                w_cold: w,
                de_system,
            },
        };
        Ok((state_out, ledger))
    }
}

/// One exact collision with both contacts at once (simultaneous
/// operation), on the three-qubit space system ⊗ hot ⊗ cold.
pub struct SimultaneousCollision {
    ancillas: CMatrix,
    u: CMatrix,
    delta_hs: CMatrix,
    delta_hh: CMatrix,
    delta_hc: CMatrix,
    delta_wh: CMatrix,
    delta_wc: CMatrix,
}

impl SimultaneousCollision {
    pub fn new(cfg: &MachineConfig) -> Result<Self, Error> {
        cfg.validate()?;
        let h = total_hamiltonian_simultaneous(cfg);
        let u = matops::expm_hermitian(&h, cfg.tau)?;
        let id = matops::identity(2);
        let id4 = matops::identity(4);
        let h_s = kron(&qubit_hamiltonian(cfg.omega_s), &id4);
        let h_h = kron(&id, &kron(&qubit_hamiltonian(cfg.hot.bath.omega), &id));
        let h_c = kron(&id4, &qubit_hamiltonian(cfg.cold.bath.omega));
        let heisenberg = |op: &CMatrix| dagger(&u).dot(op).dot(&u) - op;
        Ok(Self {
            ancillas: kron(
                &cfg.hot.bath.gibbs().to_density(),
                &cfg.cold.bath.gibbs().to_density(),
            ),
            delta_hs: heisenberg(&h_s),
            delta_hh: heisenberg(&h_h),
            delta_hc: heisenberg(&h_c),
            delta_wh: heisenberg(&interaction_simultaneous(cfg, Side::Hot)),
            delta_wc: heisenberg(&interaction_simultaneous(cfg, Side::Cold)),
            u,
        })
    }

    pub fn apply(&self, state: &QubitState) -> Result<(QubitState, CollisionLedger), Error> {
        require_physical(state)?;
        let rho = kron(&state.to_density(), &self.ancillas);
        let ledger = CollisionLedger {
            q_hot: expectation(&self.delta_hh, &rho)?,
            q_cold: expectation(&self.delta_hc, &rho)?,
            w_hot: expectation(&self.delta_wh, &rho)?,
            w_cold: expectation(&self.delta_wc, &rho)?,
            de_system: expectation(&self.delta_hs, &rho)?,
        };
        let rho_out = self.u.dot(&rho).dot(&dagger(&self.u));
        let reduced = partial_trace(&rho_out, &[2, 2, 2], &[0])?;
        let state_out = QubitState::from_density(&reduced)?;
        require_physical(&state_out)?;
        Ok((state_out, ledger))
    }
}

/// One-off collision with a single contact.  For repeated collisions
/// construct an [`AlternatingCollision`] once and reuse it.
pub fn collide_alternating(
    state: QubitState,
    cfg: &MachineConfig,
    side: Side,
) -> Result<(QubitState, CollisionLedger), Error> {
    AlternatingCollision::new(cfg, side)?.apply(&state)
}

/// One-off collision with both contacts.  For repeated collisions
/// construct a [`SimultaneousCollision`] once and reuse it.
pub fn collide_simultaneous(
    state: QubitState,
    cfg: &MachineConfig,
) -> Result<(QubitState, CollisionLedger), Error> {
    SimultaneousCollision::new(cfg)?.apply(&state)
}

/// One point of a recorded trajectory: the state after collision `n` and
/// the ledger of that collision (`n = 0` carries the initial state and an
/// empty ledger).
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryPoint {
    pub n: u64,
    pub state: QubitState,
    pub ledger: CollisionLedger,
}

/// Run `collisions` collisions from `initial` and record every step.
///
/// In alternating mode the first collision is with the hot contact, the
/// second with the cold one, and so on; in simultaneous mode every
/// collision involves both.
pub fn evolve(
    initial: QubitState,
    cfg: &MachineConfig,
    mode: Mode,
    collisions: u64,
) -> Result<Vec<TrajectoryPoint>, Error> {
    require_physical(&initial)?;
    let mut points = Vec::with_capacity(collisions as usize + 1);
    points.push(TrajectoryPoint {
        n: 0,
        state: initial,
        ledger: CollisionLedger::zero(),
    });
    let mut state = initial;
    match mode {
        Mode::Alternating => {
            let hot = AlternatingCollision::new(cfg, Side::Hot)?;
            let cold = AlternatingCollision::new(cfg, Side::Cold)?;
            for n in 1..=collisions {
                let (next, ledger) = if n % 2 == 1 {
                    hot.apply(&state)?
                } else {
                    cold.apply(&state)?
                };
                state = next;
                points.push(TrajectoryPoint { n, state, ledger });
            }
        }
        Mode::Simultaneous => {
            let collision = SimultaneousCollision::new(cfg)?;
            for n in 1..=collisions {
                let (next, ledger) = collision.apply(&state)?;
                state = next;
                points.push(TrajectoryPoint { n, state, ledger });
            }
        }
    }
    Ok(points)
}

/// Limit cycle found by the engine alone, with the per-cycle ledger
/// evaluated there.  In simultaneous mode the two populations coincide.
#[derive(Debug, Clone, Copy)]
pub struct NumericLimitCycle {
    pub p_after_cold: f64,
    pub p_after_hot: f64,
    /// Fitted multiplier of the full-cycle population map.
    pub contraction: f64,
    /// Iterations of the true map spent confirming stationarity.
    pub verify_cycles: u64,
    pub thermo: ThermoCycle,
}

/// Solve for the limit cycle numerically, without any closed-form input.
///
/// Parity decouples populations from coherences, so the full-cycle
/// population map is affine: two probe cycles determine it exactly, and
/// p* = b/(1 − a) is its fixed point.  The fit is then confirmed by
/// iterating the actual collision map until successive cycles differ by
/// less than `tol` in population and residual coherence (at most
/// `max_cycles` iterations).  Fails with [`Error::FrozenDynamics`] when
/// |a| is within [`CONTRACTION_GUARD`] of one and nothing relaxes.
pub fn find_limit_cycle_numeric(
    cfg: &MachineConfig,
    mode: Mode,
    tol: f64,
    max_cycles: u64,
) -> Result<NumericLimitCycle, Error> {
    match mode {
        Mode::Alternating => {
            let hot = AlternatingCollision::new(cfg, Side::Hot)?;
            let cold = AlternatingCollision::new(cfg, Side::Cold)?;
            let cycle = |state: &QubitState| -> Result<QubitState, Error> {
                let (after_hot, _) = hot.apply(state)?;
                let (after_cold, _) = cold.apply(&after_hot)?;
                Ok(after_cold)
            };
            let (fixed, contraction, verify_cycles) = affine_fixed_point(cycle, tol, max_cycles)?;
            let p_after_cold = fixed.p;
            let (after_hot, ledger_hot) = hot.apply(&QubitState::diagonal(p_after_cold))?;
            let (_, ledger_cold) = cold.apply(&after_hot)?;
            Ok(NumericLimitCycle {
                p_after_cold,
                p_after_hot: after_hot.p,
                contraction,
                verify_cycles,
                thermo: ThermoCycle {
                    q_hot: ledger_hot.q_hot,
                    w_hot: ledger_hot.w_hot,
                    q_cold: ledger_cold.q_cold,
                    w_cold: ledger_cold.w_cold,
                },
            })
        }
        Mode::Simultaneous => {
            let collision = SimultaneousCollision::new(cfg)?;
            let cycle = |state: &QubitState| -> Result<QubitState, Error> {
                Ok(collision.apply(state)?.0)
            };
            let (fixed, contraction, verify_cycles) = affine_fixed_point(cycle, tol, max_cycles)?;
            let (_, ledger) = collision.apply(&QubitState::diagonal(fixed.p))?;
            Ok(NumericLimitCycle {
                p_after_cold: fixed.p,
                p_after_hot: fixed.p,
                contraction,
                verify_cycles,
                thermo: ThermoCycle {
                    q_hot: ledger.q_hot,
                    w_hot: ledger.w_hot,
                    q_cold: ledger.q_cold,
                    w_cold: ledger.w_cold,
                },
            })
        }
    }
}

/// Fit p ↦ a·p + b from two diagonal probes, solve for the fixed point,
/// then confirm stationarity (population and coherence) under the true
/// map.
fn affine_fixed_point(
    cycle: impl Fn(&QubitState) -> Result<QubitState, Error>,
    tol: f64,
    max_cycles: u64,
) -> Result<(QubitState, f64, u64), Error> {
    let y0 = cycle(&QubitState::diagonal(0.25))?.p;
    let y1 = cycle(&QubitState::diagonal(0.75))?.p;
    let a = (y1 - y0) / 0.5;
    if a.abs() >= 1.0 - CONTRACTION_GUARD {
        return Err(Error::FrozenDynamics(format!(
            "cycle map does not contract (fitted multiplier {a})"
        )));
    }
    let b = y0 - a * 0.25;
    let mut state = QubitState::diagonal((b / (1.0 - a)).clamp(0.0, 1.0));
    let mut cycles = 0;
    loop {
        let next = cycle(&state)?;
        cycles += 1;
        let residual = (next.p - state.p).abs().max(next.c.norm());
        state = next;
        if residual < tol {
            return Ok((state, a, cycles));
        }
        if cycles >= max_cycles {
            return Err(Error::NoConvergence { cycles, residual });
        }
    }
}
