//! Machine description: qubit states, thermal contacts and collision
//! Hamiltonians.
//!
//! A machine is a system qubit of splitting `omega_s` plus two contacts.
//! Each [`Contact`] pairs a thermal ancilla family ([`BathSpec`]) with an
//! anisotropic exchange coupling ([`Coupling`]),
//!
//! Ĥ_I = J_xx σ_x⊗σ_x + J_yy σ_y⊗σ_y,
//!
//! acting between the system and a fresh ancilla for a window of length
//! `tau`.  The same [`MachineConfig`] feeds both the closed-form modules and
//! the brute-force engine, so every cross-check compares like with like.

use num_complex::Complex64;

use crate::matops::{self, kron, CMatrix};
use crate::Error;

/// Allowed deviation of a reduced state's trace from one.
pub const TRACE_TOL: f64 = 1e-12;

/// Physicality slack: the smallest eigenvalue of a reduced state may not lie
/// below −[`POSITIVITY_TOL`].
pub const POSITIVITY_TOL: f64 = 1e-10;

/// System-qubit state in the {|0⟩, |1⟩} basis: ρ = [[p, c], [c̄, 1−p]].
///
/// `p` is the ground-state population, `c = ⟨0|ρ|1⟩` the coherence.  The
/// Bloch-ball constraint is |c|² ≤ p(1−p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub p: f64,
    pub c: Complex64,
}

impl QubitState {
    pub fn new(p: f64, c: Complex64) -> Self {
        Self { p, c }
    }

    /// Population-only state (no coherence).
    pub fn diagonal(p: f64) -> Self {
        Self::new(p, Complex64::new(0.0, 0.0))
    }

    /// The ground state, p = 1 — the default initial state of every run.
    pub fn ground() -> Self {
        Self::diagonal(1.0)
    }

    /// Dense 2×2 density matrix.
    pub fn to_density(&self) -> CMatrix {
        let mut rho = CMatrix::zeros((2, 2));
        rho[[0, 0]] = Complex64::new(self.p, 0.0);
        rho[[0, 1]] = self.c;
        rho[[1, 0]] = self.c.conj();
        rho[[1, 1]] = Complex64::new(1.0 - self.p, 0.0);
        rho
    }

    /// Read a state back off a 2×2 density matrix, validating shape,
    /// Hermiticity and unit trace.
    pub fn from_density(rho: &CMatrix) -> Result<Self, Error> {
        if rho.nrows() != 2 || rho.ncols() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "qubit state must be 2x2, got {}x{}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let defect = matops::hermiticity_defect(rho);
        if defect > matops::HERMITICITY_TOL {
            return Err(Error::UnphysicalState(format!(
                "density matrix is not Hermitian (defect {defect:e})"
            )));
        }
        let tr = matops::trace(rho);
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::UnphysicalState(format!(
                "density matrix trace is {tr} (must be 1 within {TRACE_TOL:e})"
            )));
        }
        Ok(Self::new(rho[[0, 0]].re, rho[[0, 1]]))
    }

    /// True when the state sits inside the Bloch ball up to slack `tol`,
    /// i.e. its smallest eigenvalue ½ − √((p−½)² + |c|²) is ≥ −tol.
    pub fn is_physical(&self, tol: f64) -> bool {
        let radius = ((self.p - 0.5).powi(2) + self.c.norm_sqr()).sqrt();
        self.p.is_finite() && self.c.is_finite() && radius <= 0.5 + tol
    }
}

/// Ground-state population of a thermal qubit, p = 1/(1 + e^{−βω}).
pub fn gibbs_population(beta: f64, omega: f64) -> f64 {
    1.0 / (1.0 + (-beta * omega).exp())
}

/// A family of identically prepared thermal ancillas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    /// Inverse temperature β ≥ 0.
    pub beta: f64,
    /// Ancilla splitting ω > 0.
    pub omega: f64,
}

impl BathSpec {
    /// The Gibbs state every fresh ancilla arrives in: diagonal, with
    /// ground population 1/(1 + e^{−βω}) ≥ 1/2.
    pub fn gibbs(&self) -> QubitState {
        QubitState::diagonal(gibbs_population(self.beta, self.omega))
    }
}

/// Exchange-coupling amplitudes of one contact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub jxx: f64,
    pub jyy: f64,
}

impl Coupling {
    pub fn new(jxx: f64, jyy: f64) -> Self {
        Self { jxx, jyy }
    }

    /// Isotropic coupling J_xx = J_yy = j (pure excitation exchange on
    /// resonance).
    pub fn symmetric(j: f64) -> Self {
        Self::new(j, j)
    }

    /// J_xx + J_yy — drives the co-rotating (excitation-conserving) channel.
    pub fn sum(&self) -> f64 {
        self.jxx + self.jyy
    }

    /// J_xx − J_yy — drives the counter-rotating (pair creation) channel.
    pub fn diff(&self) -> f64 {
        self.jxx - self.jyy
    }
}

/// One thermal contact: a bath plus the coupling through which the system
/// meets its ancillas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contact {
    pub bath: BathSpec,
    pub coupling: Coupling,
}

/// Which contact a collision involves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Hot,
    Cold,
}

/// Coupling layout of the machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// One ancilla per collision, hot and cold strokes in turn.
    Alternating,
    /// One hot and one cold ancilla in every collision.
    Simultaneous,
}

/// Complete machine description shared by all modules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineConfig {
    /// System-qubit splitting ω_S > 0.
    pub omega_s: f64,
    /// Collision duration τ ≥ 0.
    pub tau: f64,
    pub hot: Contact,
    pub cold: Contact,
}

impl MachineConfig {
    /// Build and validate a configuration.
    pub fn new(omega_s: f64, tau: f64, hot: Contact, cold: Contact) -> Result<Self, Error> {
        let cfg = Self {
            omega_s,
            tau,
            hot,
            cold,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Check signs, finiteness and the temperature ordering β_C ≥ β_H
    /// (the cold bath is the colder one by definition).
    pub fn validate(&self) -> Result<(), Error> {
        let fields = [
            (self.omega_s, "omega_s"),
            (self.tau, "tau"),
            (self.hot.bath.beta, "beta_h"),
            (self.hot.bath.omega, "omega_h"),
            (self.cold.bath.beta, "beta_c"),
            (self.cold.bath.omega, "omega_c"),
            (self.hot.coupling.jxx, "jxx_h"),
            (self.hot.coupling.jyy, "jyy_h"),
            (self.cold.coupling.jxx, "jxx_c"),
            (self.cold.coupling.jyy, "jyy_c"),
        ];
        for (value, name) in fields {
            if !value.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be finite, got {value}")));
            }
        }
        if self.omega_s <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "omega_s must be positive, got {}",
                self.omega_s
            )));
        }
        if self.tau < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tau must be non-negative, got {}",
                self.tau
            )));
        }
        for (bath, name) in [(self.hot.bath, "hot"), (self.cold.bath, "cold")] {
            if bath.omega <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} bath omega must be positive, got {}",
                    bath.omega
                )));
            }
            if bath.beta < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} bath beta must be non-negative, got {}",
                    bath.beta
                )));
            }
        }
        if self.cold.bath.beta < self.hot.bath.beta {
            return Err(Error::InvalidConfig(format!(
                "cold bath must not be hotter than the hot bath (beta_c = {} < beta_h = {})",
                self.cold.bath.beta, self.hot.bath.beta
            )));
        }
        Ok(())
    }

    pub fn contact(&self, side: Side) -> &Contact {
        match side {
            Side::Hot => &self.hot,
            Side::Cold => &self.cold,
        }
    }

    /// True when both contacts are resonant with the system,
    /// ω_H = ω_C = ω_S.
    pub fn is_resonant(&self) -> bool {
        self.hot.bath.omega == self.omega_s && self.cold.bath.omega == self.omega_s
    }
}

/// Free qubit Hamiltonian Ĥ = −(ω/2)σ_z (ground level at −ω/2).
pub fn qubit_hamiltonian(omega: f64) -> CMatrix {
    let mut h = matops::sigma_z();
    h.mapv_inplace(|z| z * (-omega / 2.0));
    h
}

/// Two-body interaction Ĥ_I = J_xx σ_x⊗σ_x + J_yy σ_y⊗σ_y on
/// system ⊗ ancilla.
pub fn interaction_pair(coupling: &Coupling) -> CMatrix {
    let mut xx = kron(&matops::sigma_x(), &matops::sigma_x());
    xx.mapv_inplace(|z| z * coupling.jxx);
    let mut yy = kron(&matops::sigma_y(), &matops::sigma_y());
    yy.mapv_inplace(|z| z * coupling.jyy);
    xx + yy
}

/// 4×4 generator of one alternating-mode collision:
/// Ĥ_S⊗1 + 1⊗Ĥ_A + Ĥ_I on system ⊗ ancilla.
pub fn total_hamiltonian_alternating(cfg: &MachineConfig, side: Side) -> CMatrix {
    let contact = cfg.contact(side);
    let id = matops::identity(2);
    kron(&qubit_hamiltonian(cfg.omega_s), &id)
        + kron(&id, &qubit_hamiltonian(contact.bath.omega))
        + interaction_pair(&contact.coupling)
}

/// 8×8 generator of one simultaneous-mode collision on
/// system ⊗ hot ⊗ cold: free terms plus both couplings at once.
pub fn total_hamiltonian_simultaneous(cfg: &MachineConfig) -> CMatrix {
    let id = matops::identity(2);
    let id4 = matops::identity(4);
    let free = kron(&qubit_hamiltonian(cfg.omega_s), &id4)
        + kron(&id, &kron(&qubit_hamiltonian(cfg.hot.bath.omega), &id))
        + kron(&id4, &qubit_hamiltonian(cfg.cold.bath.omega));
    free + interaction_simultaneous(cfg, Side::Hot) + interaction_simultaneous(cfg, Side::Cold)
}

/// 8×8 embedding of one contact's interaction term on system ⊗ hot ⊗ cold.
pub fn interaction_simultaneous(cfg: &MachineConfig, side: Side) -> CMatrix {
    let id = matops::identity(2);
    let coupling = &cfg.contact(side).coupling;
    let embed = |pauli: CMatrix, scale: f64| -> CMatrix {
        let mut m = match side {
            Side::Hot => kron(&pauli, &kron(&pauli, &id)),
            Side::Cold => kron(&pauli, &kron(&id, &pauli)),
        };
        m.mapv_inplace(|z| z * scale);
        m
    };
    embed(matops::sigma_x(), coupling.jxx) + embed(matops::sigma_y(), coupling.jyy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matops::{dagger, expectation, hermiticity_defect, max_abs_diff, trace};

    fn fig_config() -> MachineConfig {
        MachineConfig::new(
            1.0,
            0.5,
            Contact {
                bath: BathSpec { beta: 1.0, omega: 1.0 },
                coupling: Coupling::new(4.0, 16.0),
            },
            Contact {
                bath: BathSpec { beta: 2.0, omega: 1.0 },
                coupling: Coupling::new(2.0, 8.0),
            },
        )
        .unwrap()
    }

    #[test]
    fn gibbs_population_limits() {
        // β = 0: maximally mixed.
        assert_eq!(gibbs_population(0.0, 1.0), 0.5);
        // β → ∞: pure ground state.
        assert!((gibbs_population(1e6, 1.0) - 1.0).abs() < 1e-12);
        // β = 2, ω = 1 evaluated at high precision externally.
        assert!((gibbs_population(2.0, 1.0) - 0.880_797_077_977_882_4).abs() < 1e-15);
        // β = 1, ω = 1.
        assert!((gibbs_population(1.0, 1.0) - 0.731_058_578_630_004_9).abs() < 1e-15);
    }

    #[test]
    fn gibbs_state_is_diagonal_and_majority_ground() {
        let bath = BathSpec { beta: 0.7, omega: 1.3 };
        let state = bath.gibbs();
        assert_eq!(state.c, Complex64::new(0.0, 0.0));
        assert!(state.p >= 0.5 && state.p <= 1.0);
        // Boltzmann ratio between the two levels is e^{−βω}.
        let rho = state.to_density();
        let ratio = rho[[1, 1]].re / rho[[0, 0]].re;
        assert!((ratio - (-0.7f64 * 1.3).exp()).abs() < 1e-15);
    }

    #[test]
    fn density_round_trip() {
        let state = QubitState::new(0.62, Complex64::new(0.21, -0.13));
        let rho = state.to_density();
        assert!(hermiticity_defect(&rho) == 0.0);
        assert!((trace(&rho).re - 1.0).abs() < 1e-15);
        let back = QubitState::from_density(&rho).unwrap();
        assert_eq!(back, state);
    }

    #[test]
    fn from_density_rejects_bad_trace() {
        let mut rho = QubitState::ground().to_density();
        rho[[1, 1]] = Complex64::new(0.1, 0.0);
        assert!(matches!(
            QubitState::from_density(&rho),
            Err(Error::UnphysicalState(_))
        ));
    }

    #[test]
    fn physicality_respects_bloch_ball() {
        assert!(QubitState::diagonal(1.0).is_physical(0.0));
        assert!(QubitState::new(0.5, Complex64::new(0.5, 0.0)).is_physical(1e-12));
        assert!(!QubitState::new(0.5, Complex64::new(0.51, 0.0)).is_physical(1e-3));
        assert!(!QubitState::diagonal(1.2).is_physical(0.1));
        assert!(!QubitState::diagonal(f64::NAN).is_physical(1.0));
    }

    #[test]
    fn qubit_hamiltonian_spectrum() {
        let h = qubit_hamiltonian(2.0);
        // Ground |0⟩ at −ω/2, excited |1⟩ at +ω/2, traceless.
        assert_eq!(h[[0, 0]].re, -1.0);
        assert_eq!(h[[1, 1]].re, 1.0);
        assert_eq!(trace(&h), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn interaction_pair_is_hermitian_traceless() {
        let hi = interaction_pair(&Coupling::new(1.7, -0.4));
        assert!(hermiticity_defect(&hi) < 1e-15);
        assert_eq!(trace(&hi), Complex64::new(0.0, 0.0));
        // Thermal (diagonal) states give ⟨Ĥ_I⟩ = 0: couplings only move
        // energy once the collision unitary acts.
        let rho = kron(
            &QubitState::diagonal(0.9).to_density(),
            &QubitState::diagonal(0.7).to_density(),
        );
        assert!(expectation(&hi, &rho).unwrap().abs() < 1e-15);
    }

    #[test]
    fn resonant_symmetric_coupling_conserves_free_energy_operator() {
        // J_xx = J_yy on resonance: [Ĥ_I, Ĥ_S⊗1 + 1⊗Ĥ_A] = 0 (pure exchange).
        let cfg = MachineConfig::new(
            1.0,
            0.5,
            Contact {
                bath: BathSpec { beta: 1.0, omega: 1.0 },
                coupling: Coupling::symmetric(3.0),
            },
            Contact {
                bath: BathSpec { beta: 2.0, omega: 1.0 },
                coupling: Coupling::symmetric(1.0),
            },
        )
        .unwrap();
        let id = crate::matops::identity(2);
        let free = kron(&qubit_hamiltonian(cfg.omega_s), &id) + kron(&id, &qubit_hamiltonian(1.0));
        let hi = interaction_pair(&cfg.hot.coupling);
        let comm = hi.dot(&free) - free.dot(&hi);
        assert!(max_abs_diff(&comm, &CMatrix::zeros((4, 4))) < 1e-14);

        // Detuned or anisotropic contacts do not commute.
        let hi_aniso = interaction_pair(&Coupling::new(3.0, 1.0));
        let comm2 = hi_aniso.dot(&free) - free.dot(&hi_aniso);
        assert!(max_abs_diff(&comm2, &CMatrix::zeros((4, 4))) > 1e-3);
    }

    #[test]
    fn total_hamiltonians_are_hermitian() {
        let cfg = fig_config();
        for side in [Side::Hot, Side::Cold] {
            let h = total_hamiltonian_alternating(&cfg, side);
            assert!(hermiticity_defect(&h) < 1e-15);
            assert_eq!(h.nrows(), 4);
        }
        let h8 = total_hamiltonian_simultaneous(&cfg);
        assert!(hermiticity_defect(&h8) < 1e-15);
        assert_eq!(h8.nrows(), 8);
        assert_eq!(trace(&h8), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn simultaneous_interactions_embed_on_correct_legs() {
        let cfg = fig_config();
        // The hot term must be the 4×4 system⊗hot interaction tensored with
        // identity on the trailing cold leg.
        let hot8 = interaction_simultaneous(&cfg, Side::Hot);
        let by_hand = kron(&interaction_pair(&cfg.hot.coupling), &matops::identity(2));
        assert!(max_abs_diff(&hot8, &by_hand) < 1e-15);

        let cold8 = interaction_simultaneous(&cfg, Side::Cold);
        let h8 = total_hamiltonian_simultaneous(&cfg);
        let free = &h8 - &hot8 - &cold8;
        // The remaining free part must be diagonal.
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert!(free[[i, j]].norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn config_validation_catches_bad_input() {
        let good = fig_config();
        let mut bad = good;
        bad.omega_s = 0.0;
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let mut bad = good;
        bad.tau = -0.1;
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let mut bad = good;
        bad.cold.bath.beta = 0.5; // hotter than the hot bath
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let mut bad = good;
        bad.hot.coupling.jxx = f64::NAN;
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        assert!(good.validate().is_ok());
    }

    #[test]
    fn unitarity_of_collision_propagator() {
        let cfg = fig_config();
        let h = total_hamiltonian_alternating(&cfg, Side::Hot);
        let u = crate::matops::expm_hermitian(&h, cfg.tau).unwrap();
        let udag = dagger(&u);
        assert!(max_abs_diff(&u.dot(&udag), &crate::matops::identity(4)) < 1e-12);
    }
}
