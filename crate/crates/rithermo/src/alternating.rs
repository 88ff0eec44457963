//! Closed-form treatment of the alternating machine.
//!
//! In alternating operation the system meets one fresh ancilla per
//! collision, hot and cold strokes in turn.  Because the interaction
//! conserves the joint excitation parity, populations decouple from
//! coherences and each stroke acts on the ground population as an affine
//! map
//!
//! p ↦ g·p + f,   g = 1 − κ_θ − κ_φ,   f = κ_θ p_A + κ_φ (1 − p_A),
//!
//! with transition weights
//!
//! κ_θ = (4s²/θ²) sin²(θτ/2),   θ = √(4s² + (ω_A − ω_S)²),   s = J_xx + J_yy,
//! κ_φ = (4d²/φ²) sin²(φτ/2),   φ = √(4d² + (ω_A + ω_S)²),   d = J_xx − J_yy.
//!
//! κ_θ is the excitation-exchange probability and κ_φ the pair
//! creation/annihilation probability of a single collision.  Everything in
//! this module — stroke maps, the limit cycle, heat, work, the resonant
//! conduction formulas and the current turnover — follows from these two
//! numbers, and every formula is cross-checked elsewhere against direct
//! unitary evolution of the collision.

use crate::model::{MachineConfig, Side};
use crate::Error;

/// A contact whose combined transition weight κ_θ + κ_φ falls below this
/// threshold is treated as inert ("frozen"): it cannot relax the system.
pub const FROZEN_TOL: f64 = 1e-14;

/// Below this value of θτ (or φτ) the oscillatory weight is evaluated by
/// its quadratic series instead of the 0/0-prone closed form.
const SERIES_GUARD: f64 = 1e-6;

/// Transition weights of a single collision with one contact.
#[derive(Debug, Clone, Copy)]
pub struct CollisionCoeffs {
    /// Excitation-exchange probability κ_θ ∈ [0, 1].
    pub kappa_theta: f64,
    /// Pair creation/annihilation probability κ_φ ∈ [0, 1).
    pub kappa_phi: f64,
    /// Co-rotating Rabi frequency θ = √(4s² + (ω_A − ω_S)²).
    pub theta: f64,
    /// Counter-rotating Rabi frequency φ = √(4d² + (ω_A + ω_S)²).
    pub phi: f64,
}

impl CollisionCoeffs {
    /// Multiplier g = 1 − κ_θ − κ_φ of the incoming population.
    pub fn contraction(&self) -> f64 {
        1.0 - self.kappa_theta - self.kappa_phi
    }

    /// Offset f = κ_θ p_A + κ_φ (1 − p_A) injected by an ancilla of ground
    /// population p_A.
    pub fn injection(&self, p_ancilla: f64) -> f64 {
        self.kappa_theta * p_ancilla + self.kappa_phi * (1.0 - p_ancilla)
    }

    /// Combined transition weight κ_θ + κ_φ.
    pub fn total(&self) -> f64 {
        self.kappa_theta + self.kappa_phi
    }

    /// True when the collision cannot move any population.
    pub fn is_frozen(&self) -> bool {
        self.total() < FROZEN_TOL
    }
}

/// 4a²/Ω² · sin²(Ωτ/2), continued through Ωτ → 0 by its series (aτ)².
fn transition_weight(a: f64, omega: f64, tau: f64) -> f64 {
    if omega * tau < SERIES_GUARD {
        (a * tau).powi(2)
    } else {
        let ratio = 2.0 * a / omega;
        ratio * ratio * (omega * tau / 2.0).sin().powi(2)
    }
}

/// Transition weights of one collision with the given contact.
pub fn collision_coefficients(cfg: &MachineConfig, side: Side) -> CollisionCoeffs {
    let contact = cfg.contact(side);
    let s = contact.coupling.sum();
    let d = contact.coupling.diff();
    let theta = (4.0 * s * s + (contact.bath.omega - cfg.omega_s).powi(2)).sqrt();
    let phi = (4.0 * d * d + (contact.bath.omega + cfg.omega_s).powi(2)).sqrt();
    CollisionCoeffs {
        kappa_theta: transition_weight(s, theta, cfg.tau),
        kappa_phi: transition_weight(d, phi, cfg.tau),
        theta,
        phi,
    }
}

/// Ground population after one collision with the given contact,
/// p' = g·p + f(p_A).
pub fn population_step(cfg: &MachineConfig, side: Side, p: f64) -> f64 {
    let coeffs = collision_coefficients(cfg, side);
    let p_ancilla = cfg.contact(side).bath.gibbs().p;
    coeffs.contraction() * p + coeffs.injection(p_ancilla)
}

/// Heat absorbed by the ancilla during one collision that starts from
/// system population `p`,
///
/// Q = ω_A [−κ_θ (p − p_A) + κ_φ (p − (1 − p_A))].
///
/// Exchange moves a quantum ω_A out of the bath when the system is the more
/// excited party; pair processes always push the ancilla up.  Coherences do
/// not contribute (they live in the odd parity sector).
pub fn collision_heat(cfg: &MachineConfig, side: Side, p: f64) -> f64 {
    let coeffs = collision_coefficients(cfg, side);
    let contact = cfg.contact(side);
    let p_a = contact.bath.gibbs().p;
    contact.bath.omega
        * (-coeffs.kappa_theta * (p - p_a) + coeffs.kappa_phi * (p - (1.0 - p_a)))
}

/// Work stored in switching the coupling on and off during one collision
/// that starts from system population `p`,
///
/// W = κ_θ (ω_A − ω_S)(p − p_A) − κ_φ (ω_A + ω_S)(p − (1 − p_A)).
///
/// On resonance the exchange channel is workless; the pair channel always
/// costs the splitting of both qubits.
pub fn collision_work(cfg: &MachineConfig, side: Side, p: f64) -> f64 {
    let coeffs = collision_coefficients(cfg, side);
    let contact = cfg.contact(side);
    let p_a = contact.bath.gibbs().p;
    coeffs.kappa_theta * (contact.bath.omega - cfg.omega_s) * (p - p_a)
        - coeffs.kappa_phi * (contact.bath.omega + cfg.omega_s) * (p - (1.0 - p_a))
}

/// Stationary population under repeated collisions with a single contact,
/// p* = f(p_A)/(κ_θ + κ_φ).
///
/// With the exchange channel alone p* = p_A (thermalisation); the pair
/// channel pulls towards the inverted 1 − p_A instead.
pub fn single_bath_fixed_point(cfg: &MachineConfig, side: Side) -> Result<f64, Error> {
    let coeffs = collision_coefficients(cfg, side);
    if coeffs.is_frozen() {
        return Err(Error::FrozenDynamics(format!(
            "contact cannot relax the system (kappa_theta + kappa_phi = {:e})",
            coeffs.total()
        )));
    }
    let p_a = cfg.contact(side).bath.gibbs().p;
    Ok(coeffs.injection(p_a) / coeffs.total())
}

/// Limit cycle of the alternating machine.
///
/// `p_after_hot` / `p_after_cold` are the two stroboscopic populations the
/// cycle visits once transients have died out; `frozen` is set when both
/// contacts are inert and no limit cycle exists.
#[derive(Debug, Clone, Copy)]
pub struct LimitCycleReport {
    pub hot: CollisionCoeffs,
    pub cold: CollisionCoeffs,
    pub frozen: bool,
    /// Population right after a cold collision (start of the next cycle).
    pub p_after_cold: Option<f64>,
    /// Population right after a hot collision.
    pub p_after_hot: Option<f64>,
}

impl LimitCycleReport {
    /// `(p_after_cold, p_after_hot)`, if the machine is not frozen.
    pub fn populations(&self) -> Option<(f64, f64)> {
        Some((self.p_after_cold?, self.p_after_hot?))
    }
}

/// Solve the limit cycle of the hot-then-cold collision sequence in closed
/// form:
///
/// p^(∞,C) = (f_C + g_C f_H) / (1 − g_C g_H),
/// p^(∞,H) = (f_H + g_H f_C) / (1 − g_C g_H).
///
/// The denominator can only vanish when both contacts are frozen (κ_φ = 1
/// would need ω_A + ω_S = 0), in which case the report says so instead.
pub fn limit_cycle(cfg: &MachineConfig) -> LimitCycleReport {
    let hot = collision_coefficients(cfg, Side::Hot);
    let cold = collision_coefficients(cfg, Side::Cold);
    if hot.is_frozen() && cold.is_frozen() {
        return LimitCycleReport {
            hot,
            cold,
            frozen: true,
            p_after_cold: None,
            p_after_hot: None,
        };
    }
    let f_h = hot.injection(cfg.hot.bath.gibbs().p);
    let f_c = cold.injection(cfg.cold.bath.gibbs().p);
    let g_h = hot.contraction();
    let g_c = cold.contraction();
    let denom = 1.0 - g_c * g_h;
    LimitCycleReport {
        hot,
        cold,
        frozen: false,
        p_after_cold: Some((f_c + g_c * f_h) / denom),
        p_after_hot: Some((f_h + g_h * f_c) / denom),
    }
}

/// Heat and work exchanged over one full cycle (one hot plus one cold
/// collision) at the limit cycle.  Signs: positive heat flows into the
/// ancilla, positive work is stored in the coupling switches.
#[derive(Debug, Clone, Copy)]
pub struct ThermoCycle {
    pub q_hot: f64,
    pub q_cold: f64,
    pub w_hot: f64,
    pub w_cold: f64,
}

impl ThermoCycle {
    pub fn w_total(&self) -> f64 {
        self.w_hot + self.w_cold
    }

    pub fn q_total(&self) -> f64 {
        self.q_hot + self.q_cold
    }

    /// W + Q over a closed cycle; zero in exact arithmetic because the
    /// system energy returns to itself.
    pub fn closure(&self) -> f64 {
        self.w_total() + self.q_total()
    }
}

/// Evaluate the per-cycle ledger at the limit cycle: the hot collision
/// starts from p^(∞,C), the cold collision from p^(∞,H).
pub fn thermo_limit_cycle(cfg: &MachineConfig) -> Result<ThermoCycle, Error> {
    let report = limit_cycle(cfg);
    let (p_after_cold, p_after_hot) = report.populations().ok_or_else(|| {
        Error::FrozenDynamics("both contacts are inert; no limit cycle exists".into())
    })?;
    Ok(ThermoCycle {
        q_hot: collision_heat(cfg, Side::Hot, p_after_cold),
        w_hot: collision_work(cfg, Side::Hot, p_after_cold),
        q_cold: collision_heat(cfg, Side::Cold, p_after_hot),
        w_cold: collision_work(cfg, Side::Cold, p_after_hot),
    })
}

/// Limit-cycle population in the stroboscopic regime τ → 0 at fixed
/// couplings,
///
/// p^∞ = (d_C² + d_H² + 4 J_xx^C J_yy^C p_C + 4 J_xx^H J_yy^H p_H)
///       / (2 (J_xx^H² + J_yy^H² + J_xx^C² + J_yy^C²)),
///
/// a coupling-weighted compromise between the two thermal populations and
/// the inverted targets of the pair channels.  Frequencies drop out because
/// both transition weights start at order τ².
pub fn stroboscopic_fixed_point(cfg: &MachineConfig) -> Result<f64, Error> {
    let h = &cfg.hot.coupling;
    let c = &cfg.cold.coupling;
    let denom = 2.0 * (h.jxx * h.jxx + h.jyy * h.jyy + c.jxx * c.jxx + c.jyy * c.jyy);
    if denom == 0.0 {
        return Err(Error::FrozenDynamics(
            "all coupling amplitudes vanish; the stroboscopic limit is undefined".into(),
        ));
    }
    let p_h = cfg.hot.bath.gibbs().p;
    let p_c = cfg.cold.bath.gibbs().p;
    let num = c.diff().powi(2)
        + h.diff().powi(2)
        + 4.0 * c.jxx * c.jyy * p_c
        + 4.0 * h.jxx * h.jyy * p_h;
    Ok(num / denom)
}

/// Per-collision heat delivered to the cold bath at the limit cycle of a
/// resonant machine with symmetric couplings (J_xx = J_yy on both
/// contacts), where the machine is a pure heat conductor:
///
/// Q_C^∞ = ω κ_C κ_H (p_H − p_C) / (κ_C κ_H − κ_C − κ_H),
///
/// with κ_A = sin²(2 J^A τ).  Always non-negative: heat flows from hot to
/// cold, never backwards.
pub fn conduction_heat(cfg: &MachineConfig) -> Result<f64, Error> {
    if !cfg.is_resonant() {
        return Err(Error::InvalidConfig(
            "conduction form requires resonance (omega_h = omega_c = omega_s)".into(),
        ));
    }
    if cfg.hot.coupling.diff() != 0.0 || cfg.cold.coupling.diff() != 0.0 {
        return Err(Error::InvalidConfig(
            "conduction form requires symmetric couplings (jxx = jyy on both contacts)".into(),
        ));
    }
    let k_h = (2.0 * cfg.hot.coupling.jxx * cfg.tau).sin().powi(2);
    let k_c = (2.0 * cfg.cold.coupling.jxx * cfg.tau).sin().powi(2);
    let denom = k_c * k_h - k_c - k_h;
    if denom.abs() < FROZEN_TOL {
        return Err(Error::FrozenDynamics(
            "both exchange weights vanish; no heat is conducted".into(),
        ));
    }
    let p_h = cfg.hot.bath.gibbs().p;
    let p_c = cfg.cold.bath.gibbs().p;
    Ok(cfg.omega_s * k_c * k_h * (p_h - p_c) / denom)
}

/// Per-collision-time heat current dQ_C^∞/dτ of the symmetric resonant
/// conductor with equal couplings J on both contacts:
///
/// dQ/dτ = 4Jω sin(4Jτ) (p_C − p_H) / (2 − sin²(2Jτ))².
pub fn heat_current(j: f64, omega: f64, tau: f64, p_cold: f64, p_hot: f64) -> f64 {
    let x = (2.0 * j * tau).sin().powi(2);
    4.0 * j * omega * (4.0 * j * tau).sin() * (p_cold - p_hot) / (2.0 - x).powi(2)
}

/// The same current on the rising branch 2Jτ ∈ [0, π/2], parameterised by
/// x = sin²(2Jτ):
///
/// dQ/dτ = 8Jω √(x(1−x)) (p_C − p_H) / (2 − x)².
pub fn heat_current_x(x: f64, j: f64, omega: f64, p_cold: f64, p_hot: f64) -> f64 {
    8.0 * j * omega * (x * (1.0 - x)).sqrt() * (p_cold - p_hot) / (2.0 - x).powi(2)
}

/// Leading weak-coupling behaviour of the conducted heat per unit
/// collision time, Q_C^∞/τ → 2ω (p_C − p_H) J² τ as Jτ → 0.
pub fn weak_coupling_current(j: f64, omega: f64, tau: f64, p_cold: f64, p_hot: f64) -> f64 {
    2.0 * omega * (p_cold - p_hot) * j * j * tau
}

/// Location of the heat-current maximum in x = sin²(2Jτ): the positive
/// root x* = (√17 − 1)/4 of 2x² + x − 2 = 0, independent of J, ω and the
/// bath temperatures.
pub fn turnover_point() -> f64 {
    (17.0_f64.sqrt() - 1.0) / 4.0
}

/// Signed distances of the limit-cycle populations from the allowed band
/// 1 − p_C ≤ p ≤ p_C.  All four are non-negative exactly when the bounds
/// hold.
#[derive(Debug, Clone, Copy)]
pub struct BoundsMargins {
    pub upper_cold: f64,
    pub upper_hot: f64,
    pub lower_cold: f64,
    pub lower_hot: f64,
}

impl BoundsMargins {
    /// The tightest of the four margins.
    pub fn min(&self) -> f64 {
        self.upper_cold
            .min(self.upper_hot)
            .min(self.lower_cold)
            .min(self.lower_hot)
    }
}

/// Margins of the limit-cycle populations against the band
/// [1 − p_C, p_C] set by the cold-bath ground population `p_cold_bath`.
/// `None` when the machine is frozen and has no limit cycle.
pub fn check_population_bounds(
    report: &LimitCycleReport,
    p_cold_bath: f64,
) -> Option<BoundsMargins> {
    let (p_after_cold, p_after_hot) = report.populations()?;
    Some(BoundsMargins {
        upper_cold: p_cold_bath - p_after_cold,
        upper_hot: p_cold_bath - p_after_hot,
        lower_cold: p_after_cold - (1.0 - p_cold_bath),
        lower_hot: p_after_hot - (1.0 - p_cold_bath),
    })
}
