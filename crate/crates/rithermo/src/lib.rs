//! Minimal qubit thermal machines driven by repeated interactions.
//!
//! A single system qubit exchanges energy with two thermal reservoirs through
//! brief unitary collisions with fresh ancilla qubits drawn from hot and cold
//! Gibbs ensembles.  Because every collision is a finite-duration unitary, the
//! dynamics is Markovian by construction yet exact at arbitrary coupling
//! strength — no weak-coupling or secular approximation is involved.  The
//! crate implements two coupling layouts:
//!
//! * **alternating** — the system meets one ancilla per collision, hot and
//!   cold in turn ([`alternating`] has the closed-form population map, limit
//!   cycle and per-cycle heat/work);
//! * **simultaneous** — the system couples to one hot and one cold ancilla at
//!   once ([`simultaneous`] has the short-time Dyson map, its equations of
//!   motion and the equal-coupling closed form).
//!
//! Both layouts are cross-checked against [`engine`], a dense 4×4/8×8 unitary
//! evolution that knows nothing about the closed forms: it exponentiates the
//! collision Hamiltonian, evolves the joint state and reads heat and work off
//! Heisenberg-picture energy ledgers.  [`verify`] packages the battery of
//! consistency checks (oracle equivalence, no-refrigeration, population
//! bounds, heat-current turnover, first-law closure, Trotter consistency)
//! that gates a release; [`sampling`] fixes the seeded RNG policy so every
//! sweep is reproducible byte for byte.
//!
//! # Conventions
//!
//! * ħ = 1.  |0⟩ is the **ground** state and σ_z|0⟩ = +|0⟩, so a free qubit
//!   has Ĥ = −(ω/2)σ_z with ω > 0 and the ground level at −ω/2.
//! * `p` always denotes the ground-state population; a thermal qubit has
//!   p = 1/(1+e^{−βω}) ≥ 1/2.  Coherence `c` is the ⟨0|ρ|1⟩ entry.
//! * Tensor factors are ordered system ⊗ ancilla (4×4) and
//!   system ⊗ hot ⊗ cold (8×8).
//! * Per collision, `q_*` is the energy deposited into that bath's ancilla,
//!   `w_*` the energy picked up by the corresponding coupling term and `de`
//!   the system's energy change; they satisfy
//!   `de + q_hot + q_cold + w_hot + w_cold = 0` to round-off.
//!
//! # Quick start
//!
//! ```
//! use rithermo::model::{BathSpec, Contact, Coupling, MachineConfig};
//! use rithermo::{alternating, engine};
//!
//! let cfg = MachineConfig::new(
//!     1.0, // system splitting
//!     0.5, // collision duration
//!     Contact { bath: BathSpec { beta: 1.0, omega: 1.0 }, coupling: Coupling { jxx: 4.0, jyy: 16.0 } },
//!     Contact { bath: BathSpec { beta: 2.0, omega: 1.0 }, coupling: Coupling { jxx: 2.0, jyy: 8.0 } },
//! )?;
//!
//! // Closed-form limit cycle of the alternating machine ...
//! let cycle = alternating::limit_cycle(&cfg);
//! let (after_cold, after_hot) = cycle.populations().unwrap();
//!
//! // ... agrees with the brute-force unitary engine.
//! let oracle = engine::find_limit_cycle_numeric(&cfg, rithermo::model::Mode::Alternating, 1e-12, 1_000_000)?;
//! assert!((after_cold - oracle.p_after_cold).abs() < 1e-9);
//! assert!((after_hot - oracle.p_after_hot).abs() < 1e-9);
//! # Ok::<(), rithermo::Error>(())
//! ```

pub mod alternating;
pub mod engine;
pub mod matops;
pub mod model;
pub mod sampling;
pub mod simultaneous;
pub mod verify;

/// Errors shared across the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A matrix had the wrong shape for the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A generator handed to the exponential/eigensolver was not Hermitian.
    #[error("matrix is not Hermitian (max |a_ij - conj(a_ji)| = {defect:e})")]
    NotHermitian { defect: f64 },
    /// The Jacobi eigensolver failed to drive the off-diagonal norm down.
    #[error("eigensolver did not converge (residual off-diagonal norm {residual:e})")]
    EigensolverStalled { residual: f64 },
    /// A machine description violated its invariants (signs, ordering, NaNs).
    #[error("invalid machine configuration: {0}")]
    InvalidConfig(String),
    /// A qubit state left the Bloch ball by more than the allowed slack.
    #[error("unphysical qubit state: {0}")]
    UnphysicalState(String),
    /// Both collision coefficients vanish — the contact cannot move the
    /// system and fixed points are undefined.
    #[error("frozen dynamics: {0}")]
    FrozenDynamics(String),
    /// An iterative solve ran out of its cycle budget.
    #[error("no convergence after {cycles} cycles (last residual {residual:e})")]
    NoConvergence { cycles: u64, residual: f64 },
}

pub use model::{BathSpec, Contact, Coupling, MachineConfig, Mode, QubitState, Side};

/// Complex scalar used throughout the public API (coherences, matrices).
pub use num_complex::Complex64;
