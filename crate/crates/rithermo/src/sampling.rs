//! Deterministic, indexable random machine configurations.
//!
//! Every sampler takes a `seed` and an `index` and is pure: the same pair
//! always produces the same configuration, independent of how many other
//! samples were drawn before.  Indexability comes from ChaCha streams —
//! sample `index` lives on its own stream, so batteries can be re-run,
//! resumed, or spot-checked one sample at a time.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{BathSpec, Contact, Coupling, MachineConfig};

/// The coupling amplitudes are drawn uniformly from [−JMAX, JMAX].
pub const JMAX: f64 = 5.0;

/// The RNG for sample `index` of a battery keyed by `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `base` with all four coupling amplitudes replaced by fresh uniform
/// draws from [−JMAX, JMAX], in the order J_xx^H, J_yy^H, J_xx^C, J_yy^C.
pub fn with_sampled_couplings(base: &MachineConfig, seed: u64, index: u64) -> MachineConfig {
    let mut rng = stream(seed, index);
    let jxx_h = rng.gen_range(-JMAX..JMAX);
    let jyy_h = rng.gen_range(-JMAX..JMAX);
    let jxx_c = rng.gen_range(-JMAX..JMAX);
    let jyy_c = rng.gen_range(-JMAX..JMAX);
    MachineConfig::new(
        base.omega_s,
        base.tau,
        Contact {
            bath: base.hot.bath,
            coupling: Coupling::new(jxx_h, jyy_h),
        },
        Contact {
            bath: base.cold.bath,
            coupling: Coupling::new(jxx_c, jyy_c),
        },
    )
    .expect("resampling couplings keeps a valid configuration valid")
}

/// A machine with every knob randomised: couplings in [−JMAX, JMAX],
/// τ ∈ (0, 2], inverse temperatures in [0.1, 5] (the colder of the two
/// draws goes to the cold bath), and one shared splitting in [0.5, 2]
/// for the system and both baths.
///
/// The splittings are kept equal on purpose.  With mismatched splittings
/// a larger β no longer implies a larger Gibbs ground population (βω is
/// what orders qubit populations), and the machine leaves the regime in
/// which the population bounds and heat-sign theorems apply — a bath
/// that is "cold" by temperature can act hot as a qubit.  The resonant
/// family keeps β-ordering and population-ordering synonymous, so every
/// sampled machine is inside the theorems' domain.
pub fn sample_wide_config(seed: u64, index: u64) -> MachineConfig {
    let mut rng = stream(seed, index);
    let jxx_h = rng.gen_range(-JMAX..JMAX);
    let jyy_h = rng.gen_range(-JMAX..JMAX);
    let jxx_c = rng.gen_range(-JMAX..JMAX);
    let jyy_c = rng.gen_range(-JMAX..JMAX);
    let tau = 2.0 * (1.0 - rng.gen_range(0.0..1.0));
    let beta_a: f64 = rng.gen_range(0.1..5.0);
    let beta_b: f64 = rng.gen_range(0.1..5.0);
    let omega = rng.gen_range(0.5..2.0);
    MachineConfig::new(
        omega,
        tau,
        Contact {
            bath: BathSpec { beta: beta_a.min(beta_b), omega },
            coupling: Coupling::new(jxx_h, jyy_h),
        },
        Contact {
            bath: BathSpec { beta: beta_a.max(beta_b), omega },
            coupling: Coupling::new(jxx_c, jyy_c),
        },
    )
    .expect("sampled parameters lie inside the validated ranges")
}
