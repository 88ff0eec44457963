//! Analytic layer for the simultaneous-coupling machine.
//!
//! With both ancillas attached in every collision the three-body problem
//! has no convenient closed solution at arbitrary τ, so this module offers
//! the three tractable views:
//!
//! * a short-collision (second order in τ) expansion — population map,
//!   coherence map, fixed point, heat and work, and the continuous-time
//!   equations of motion built from the rates Γ_mm^A = (J_mm^A)²τ;
//! * the exact all-equal-couplings solution, valid at every τ, where the
//!   machine is a pure heat conductor;
//! * the overheating inequality deciding when the steady population drops
//!   below the hot bath's own.
//!
//! Everything here is validated against the 8×8 engine of
//! [`crate::engine`], which makes no expansion at all.

use num_complex::Complex64;

use crate::model::{MachineConfig, QubitState};
use crate::Error;

/// Second-order (in τ) one-collision maps and rates of the simultaneous
/// machine, valid in the regime Jτ ≪ 1.  The record carries its own
/// smallness indicators so callers can judge applicability.
#[derive(Debug, Clone, Copy)]
pub struct DysonPrediction {
    /// Population contraction per collision, η = 1 − 2τ²Σ(J²) ≤ 1.
    pub eta: f64,
    /// Steady population p∞ (fixed point of the population map).
    pub p_fixed: f64,
    /// Coherence map c' = ψ_c·c + ψ_c̄·c̄: coefficient on c.
    pub psi_on_c: Complex64,
    /// Coefficient on the conjugate c̄ — real, Σ(J_xx² − J_yy²)τ².
    pub psi_on_conj: Complex64,
    /// Exchange rates Γ_mm^A = (J_mm^A)²τ of the continuous-time limit.
    pub gamma_xx_hot: f64,
    pub gamma_yy_hot: f64,
    pub gamma_xx_cold: f64,
    pub gamma_yy_cold: f64,
    /// Rotation parameter Ω = ω_S τ/2, held constant in the τ → 0 limit.
    pub omega_eff: f64,
    /// Largest |J|τ of the four couplings — the expansion is trustworthy
    /// only when this is ≪ 1.
    pub j_tau: f64,
    /// Largest ωτ among system and ancilla splittings.
    pub omega_tau: f64,
}

/// Σ over both contacts of s² p_A + d² (1 − p_A): the population the
/// couplings pump in, before normalisation.
fn injection_sum(cfg: &MachineConfig) -> f64 {
    let mut total = 0.0;
    for contact in [&cfg.hot, &cfg.cold] {
        let s = contact.coupling.sum();
        let d = contact.coupling.diff();
        let p_a = contact.bath.gibbs().p;
        total += s * s * p_a + d * d * (1.0 - p_a);
    }
    total
}

/// Σ over both contacts of s² + d² = 2Σ(J²): the total pumping weight.
fn weight_sum(cfg: &MachineConfig) -> f64 {
    let mut total = 0.0;
    for contact in [&cfg.hot, &cfg.cold] {
        let s = contact.coupling.sum();
        let d = contact.coupling.diff();
        total += s * s + d * d;
    }
    total
}

/// Steady population of the simultaneous machine to second order in τ:
/// the ratio of pumped-in population to total pumping weight.  τ cancels,
/// so the same number is the alternating machine's τ → 0 limit point.
pub fn dyson_fixed_point(cfg: &MachineConfig) -> Result<f64, Error> {
    let weight = weight_sum(cfg);
    if weight == 0.0 {
        return Err(Error::FrozenDynamics(
            "all coupling amplitudes vanish; the steady population is undefined".into(),
        ));
    }
    Ok(injection_sum(cfg) / weight)
}

/// One collision acting on the ground population, to second order in τ:
/// p' = ηp + τ²Σ[s²p_A + d²(1−p_A)].  Written without the fixed point so
/// it stays finite for vanishing couplings.
pub fn dyson_population_step(p: f64, cfg: &MachineConfig) -> f64 {
    let tau2 = cfg.tau * cfg.tau;
    let eta = 1.0 - tau2 * weight_sum(cfg);
    eta * p + tau2 * injection_sum(cfg)
}

/// One collision acting on the coherence, to second order in τ:
/// c' = [1 + iω_Sτ − (ω_S²/2 + ΣJ²)τ²]·c + [Σ(J_xx² − J_yy²)]τ²·c̄.
/// There is no inhomogeneous term: thermal ancillas carry no coherence.
pub fn dyson_coherence_step(c: Complex64, cfg: &MachineConfig) -> Complex64 {
    let tau = cfg.tau;
    let s2 = 0.5 * weight_sum(cfg); // Σ over contacts and axes of J²
    let on_c = Complex64::new(
        1.0 - (cfg.omega_s * cfg.omega_s / 2.0 + s2) * tau * tau,
        cfg.omega_s * tau,
    );
    let on_conj = conj_coefficient(cfg) * tau * tau;
    on_c * c + on_conj * c.conj()
}

/// Σ(J_xx² − J_yy²) over both contacts — the anisotropy that couples c to
/// its conjugate.
fn conj_coefficient(cfg: &MachineConfig) -> f64 {
    let mut total = 0.0;
    for contact in [&cfg.hot, &cfg.cold] {
        total += contact.coupling.jxx * contact.coupling.jxx
            - contact.coupling.jyy * contact.coupling.jyy;
    }
    total
}

/// Full second-order prediction record for one configuration.
pub fn dyson_prediction(cfg: &MachineConfig) -> Result<DysonPrediction, Error> {
    let p_fixed = dyson_fixed_point(cfg)?;
    let tau = cfg.tau;
    let tau2 = tau * tau;
    let s2 = 0.5 * weight_sum(cfg);
    let j_max = [
        cfg.hot.coupling.jxx,
        cfg.hot.coupling.jyy,
        cfg.cold.coupling.jxx,
        cfg.cold.coupling.jyy,
    ]
    .into_iter()
    .fold(0.0_f64, |acc, j| acc.max(j.abs()));
    let omega_max = cfg
        .omega_s
        .max(cfg.hot.bath.omega)
        .max(cfg.cold.bath.omega);
    Ok(DysonPrediction {
        eta: 1.0 - 2.0 * s2 * tau2,
        p_fixed,
        psi_on_c: Complex64::new(
            1.0 - (cfg.omega_s * cfg.omega_s / 2.0 + s2) * tau2,
            cfg.omega_s * tau,
        ),
        psi_on_conj: Complex64::new(conj_coefficient(cfg) * tau2, 0.0),
        gamma_xx_hot: cfg.hot.coupling.jxx.powi(2) * tau,
        gamma_yy_hot: cfg.hot.coupling.jyy.powi(2) * tau,
        gamma_xx_cold: cfg.cold.coupling.jxx.powi(2) * tau,
        gamma_yy_cold: cfg.cold.coupling.jyy.powi(2) * tau,
        omega_eff: cfg.omega_s * tau / 2.0,
        j_tau: j_max * tau,
        omega_tau: omega_max * tau,
    })
}

/// Continuous-time right-hand sides (dp/dt, dc/dt) obtained from the
/// one-collision Dyson maps as (map − id)/τ:
///
/// dp/dt = −2(ΣΓ)p + 2(ΣΓ)p∞,
/// dc/dt = (iω_S − ω_S Ω − ΣΓ)c + (Γ_xx^C − Γ_yy^C + Γ_xx^H − Γ_yy^H)c̄,
///
/// with Γ_mm^A = (J_mm^A)²τ and Ω = ω_Sτ/2 held fixed as τ → 0.  Time is
/// measured in collision time: one collision advances t by τ.
pub fn eom_rhs(state: &QubitState, cfg: &MachineConfig) -> (f64, Complex64) {
    let tau = cfg.tau;
    let dp = (dyson_population_step(state.p, cfg) - state.p) / tau;
    let dc = (dyson_coherence_step(state.c, cfg) - state.c) / tau;
    (dp, dc)
}

/// Exact one-collision population map when all four couplings equal `j`
/// (valid at any τ, no expansion):
///
/// p' = ¼[−cos(4√2 jτ)(p_C + p_H − 2p) + p_C + p_H + 2p].
pub fn equal_coupling_step(p: f64, j: f64, tau: f64, p_cold: f64, p_hot: f64) -> f64 {
    let cos = (4.0 * 2.0_f64.sqrt() * j * tau).cos();
    0.25 * (-cos * (p_cold + p_hot - 2.0 * p) + p_cold + p_hot + 2.0 * p)
}

/// Heat (q_cold, q_hot) deposited in the two ancillas by one collision
/// starting from population `p`, to second order in τ:
///
/// Q_A = [d_A²(2p_A − 1) + 4 J_xx^A J_yy^A (p_A − p)]·ω_A·τ².
pub fn dyson_heat(p: f64, cfg: &MachineConfig) -> (f64, f64) {
    let tau2 = cfg.tau * cfg.tau;
    let one = |contact: &crate::model::Contact| {
        let d = contact.coupling.diff();
        let m = contact.coupling.jxx * contact.coupling.jyy;
        let p_a = contact.bath.gibbs().p;
        (d * d * (2.0 * p_a - 1.0) + 4.0 * m * (p_a - p)) * contact.bath.omega * tau2
    };
    (one(&cfg.cold), one(&cfg.hot))
}

/// Switching work (w_cold, w_hot) of one collision starting from
/// population `p`, to second order in τ:
///
/// W_A = 2 d_A² ω_S (1 − p_A − p) τ².
///
/// Only the pair channel works; the expression assumes resonance, where
/// the exchange channel moves no net energy into the couplings.
pub fn dyson_work(p: f64, cfg: &MachineConfig) -> (f64, f64) {
    let tau2 = cfg.tau * cfg.tau;
    let one = |contact: &crate::model::Contact| {
        let d = contact.coupling.diff();
        let p_a = contact.bath.gibbs().p;
        2.0 * d * d * cfg.omega_s * (1.0 - p_a - p) * tau2
    };
    (one(&cfg.cold), one(&cfg.hot))
}

/// Steady-state conduction of the all-equal-couplings machine (exact in
/// τ): per-collision heat into the cold ancillas and the heat current,
///
/// Q_C^∞ = ω (p_C − p_H) sin²(√2 jτ) = −Q_H^∞,
/// dQ/dτ = 2√2 ωj (p_C − p_H) √(y(1−y)),   y = sin²(√2 jτ).
pub fn conduction_closed_form(
    j: f64,
    tau: f64,
    omega: f64,
    p_cold: f64,
    p_hot: f64,
) -> (f64, f64) {
    let y = (2.0_f64.sqrt() * j * tau).sin().powi(2);
    let q = omega * (p_cold - p_hot) * y;
    let current = 2.0 * 2.0_f64.sqrt() * omega * j * (p_cold - p_hot) * (y * (1.0 - y)).sqrt();
    (q, current)
}

/// True when the steady population drops below the hot bath's own
/// ("overheating": the system runs hotter than both baths), i.e. when
///
/// (1 − 2p_H)(d_H² + d_C²) + 4 J_xx^C J_yy^C (p_C − p_H) < 0.
///
/// Equivalent to p∞ < p_H; requires anisotropic couplings, since with
/// J_xx = J_yy both terms are non-negative.
pub fn overheating_condition(cfg: &MachineConfig) -> bool {
    let p_h = cfg.hot.bath.gibbs().p;
    let p_c = cfg.cold.bath.gibbs().p;
    let d_h = cfg.hot.coupling.diff();
    let d_c = cfg.cold.coupling.diff();
    let m_c = cfg.cold.coupling.jxx * cfg.cold.coupling.jyy;
    (1.0 - 2.0 * p_h) * (d_h * d_h + d_c * d_c) + 4.0 * m_c * (p_c - p_h) < 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;
    use crate::model::{BathSpec, Contact, Coupling, Mode};
    use crate::{alternating, Error};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn config(
        omega_s: f64,
        tau: f64,
        hot: (f64, f64, f64, f64),
        cold: (f64, f64, f64, f64),
    ) -> MachineConfig {
        MachineConfig::new(
            omega_s,
            tau,
            Contact {
                bath: BathSpec { beta: hot.0, omega: hot.1 },
                coupling: Coupling::new(hot.2, hot.3),
            },
            Contact {
                bath: BathSpec { beta: cold.0, omega: cold.1 },
                coupling: Coupling::new(cold.2, cold.3),
            },
        )
        .unwrap()
    }

    fn fig_config(tau: f64) -> MachineConfig {
        config(1.0, tau, (1.0, 1.0, 4.0, 16.0), (2.0, 1.0, 2.0, 8.0))
    }

    fn random_config(rng: &mut ChaCha8Rng, tau: f64) -> MachineConfig {
        config(
            1.0,
            tau,
            (1.0, 1.0, rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
            (2.0, 1.0, rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
        )
    }

    #[test]
    fn fixed_point_matches_reference_and_stroboscopic_formula() {
        let cfg = fig_config(0.5);
        let p_fixed = dyson_fixed_point(&cfg).unwrap();
        assert!((p_fixed - 0.622_826_483_999_802_5).abs() < 1e-15);
        // Independent implementation of the same ratio in the alternating
        // module: equality must hold to round-off.
        let strobo = alternating::stroboscopic_fixed_point(&cfg).unwrap();
        assert!((p_fixed - strobo).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let cfg = random_config(&mut rng, 0.5);
            match (
                dyson_fixed_point(&cfg),
                alternating::stroboscopic_fixed_point(&cfg),
            ) {
                (Ok(a), Ok(b)) => assert!((a - b).abs() < 1e-13),
                (Err(_), Err(_)) => {}
                (a, b) => panic!("disagree on definedness: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn equal_couplings_settle_halfway() {
        let cfg = config(1.0, 0.5, (1.0, 1.0, 1.7, 1.7), (2.0, 1.0, 1.7, 1.7));
        let p_fixed = dyson_fixed_point(&cfg).unwrap();
        let expected = 0.5 * (cfg.hot.bath.gibbs().p + cfg.cold.bath.gibbs().p);
        assert!((p_fixed - expected).abs() < 1e-15);
    }

    #[test]
    fn fixed_point_rejects_null_couplings() {
        let cfg = config(1.0, 0.5, (1.0, 1.0, 0.0, 0.0), (2.0, 1.0, 0.0, 0.0));
        assert!(matches!(
            dyson_fixed_point(&cfg),
            Err(Error::FrozenDynamics(_))
        ));
        assert!(matches!(
            dyson_prediction(&cfg),
            Err(Error::FrozenDynamics(_))
        ));
    }

    #[test]
    fn population_step_fixes_its_fixed_point() {
        let cfg = fig_config(0.001);
        let p_fixed = dyson_fixed_point(&cfg).unwrap();
        assert!((dyson_population_step(p_fixed, &cfg) - p_fixed).abs() < 1e-15);
        // Equal couplings: η = 1 − 8J²τ².
        let eq = config(1.0, 0.01, (1.0, 1.0, 1.5, 1.5), (2.0, 1.0, 1.5, 1.5));
        let eta = dyson_prediction(&eq).unwrap().eta;
        assert!((eta - (1.0 - 8.0 * 1.5 * 1.5 * 0.01 * 0.01)).abs() < 1e-15);
    }

    #[test]
    fn dyson_step_matches_engine_at_short_tau() {
        let cfg = fig_config(0.001);
        let tol = 10.0 * (16.0 * cfg.tau).powi(3);
        let state = QubitState::new(0.7, Complex64::new(0.1, 0.05));
        let (out, _) = engine::collide_simultaneous(state, &cfg).unwrap();
        let p_pred = dyson_population_step(state.p, &cfg);
        let c_pred = dyson_coherence_step(state.c, &cfg);
        assert!((out.p - p_pred).abs() < tol, "{} vs {}", out.p, p_pred);
        assert!((out.c - c_pred).norm() < tol, "{} vs {}", out.c, c_pred);
    }

    #[test]
    fn coherence_map_structure() {
        let cfg = fig_config(0.001);
        assert_eq!(
            dyson_coherence_step(Complex64::new(0.0, 0.0), &cfg),
            Complex64::new(0.0, 0.0)
        );
        // Symmetric couplings on both contacts kill the conjugate term:
        // the map becomes complex-linear, step(i·c) = i·step(c).
        let sym = config(1.0, 0.001, (1.0, 1.0, 1.5, 1.5), (2.0, 1.0, 0.4, 0.4));
        let c = Complex64::new(0.21, -0.09);
        let lhs = dyson_coherence_step(Complex64::new(0.0, 1.0) * c, &sym);
        let rhs = Complex64::new(0.0, 1.0) * dyson_coherence_step(c, &sym);
        assert!((lhs - rhs).norm() < 1e-18);
        assert_eq!(dyson_prediction(&sym).unwrap().psi_on_conj.re, 0.0);
        // Anisotropic couplings do not commute with i.
        let aniso = fig_config(0.001);
        let lhs = dyson_coherence_step(Complex64::new(0.0, 1.0) * c, &aniso);
        let rhs = Complex64::new(0.0, 1.0) * dyson_coherence_step(c, &aniso);
        assert!((lhs - rhs).norm() > 1e-7);
    }

    #[test]
    fn eom_vanishes_at_the_fixed_point_and_relaxes_towards_it() {
        let cfg = fig_config(0.001);
        let p_fixed = dyson_fixed_point(&cfg).unwrap();
        let (dp, dc) = eom_rhs(&QubitState::diagonal(p_fixed), &cfg);
        assert!(dp.abs() < 1e-12);
        assert_eq!(dc, Complex64::new(0.0, 0.0));

        let (dp_above, _) = eom_rhs(&QubitState::diagonal(p_fixed + 0.1), &cfg);
        let (dp_below, _) = eom_rhs(&QubitState::diagonal(p_fixed - 0.1), &cfg);
        assert!(dp_above < 0.0);
        assert!(dp_below > 0.0);
    }

    #[test]
    fn integrated_eom_tracks_discrete_dyson_steps() {
        // Euler-integrate the continuous equations with 20 substeps per
        // collision and compare with the discrete maps at collision times.
        let cfg = fig_config(0.001);
        let mut discrete = QubitState::new(1.0, Complex64::new(0.05, 0.0));
        let mut p = discrete.p;
        let mut c = discrete.c;
        let substeps = 20;
        let dt = cfg.tau / substeps as f64;
        for n in 1..=10_000u32 {
            discrete = QubitState::new(
                dyson_population_step(discrete.p, &cfg),
                dyson_coherence_step(discrete.c, &cfg),
            );
            for _ in 0..substeps {
                let (dp, dc) = eom_rhs(&QubitState::new(p, c), &cfg);
                p += dp * dt;
                c += dc * dt;
            }
            if n % 1000 == 0 {
                assert!((p - discrete.p).abs() < 0.01, "p drift at collision {n}");
                assert!((c - discrete.c).norm() < 0.01, "c drift at collision {n}");
            }
        }
    }

    #[test]
    fn equal_coupling_step_properties() {
        let (p_c, p_h) = (0.88, 0.73);
        // A full cosine period leaves the population untouched.
        let period_tau = 2.0 * std::f64::consts::PI / (4.0 * 2.0_f64.sqrt() * 1.3);
        assert!((equal_coupling_step(0.4, 1.3, period_tau, p_c, p_h) - 0.4).abs() < 1e-14);
        // The halfway point is stationary.
        let mid = 0.5 * (p_c + p_h);
        assert!((equal_coupling_step(mid, 1.3, 0.7, p_c, p_h) - mid).abs() < 1e-15);
    }

    #[test]
    fn equal_coupling_step_matches_engine_at_any_tau() {
        for (j, tau) in [(0.9, 0.8), (2.3, 0.37), (0.2, 2.5)] {
            let cfg = config(1.0, tau, (1.0, 1.0, j, j), (2.0, 1.0, j, j));
            let p_c = cfg.cold.bath.gibbs().p;
            let p_h = cfg.hot.bath.gibbs().p;
            for p in [0.0, 0.33, 0.71, 1.0] {
                let (out, _) =
                    engine::collide_simultaneous(QubitState::diagonal(p), &cfg).unwrap();
                let closed = equal_coupling_step(p, j, tau, p_c, p_h);
                assert!(
                    (out.p - closed).abs() < 1e-10,
                    "engine {} vs closed {} at j={j}, tau={tau}",
                    out.p,
                    closed
                );
            }
        }
    }

    #[test]
    fn dyson_heat_zeroes_and_engine_agreement() {
        // Cold contact symmetric and system already at p_C: nothing flows.
        let cfg = config(1.0, 0.001, (1.0, 1.0, 4.0, 16.0), (2.0, 1.0, 3.0, 3.0));
        let p_c = cfg.cold.bath.gibbs().p;
        let (q_cold, _) = dyson_heat(p_c, &cfg);
        assert_eq!(q_cold, 0.0);

        let cfg = fig_config(0.001);
        let tol = 10.0 * (16.0 * cfg.tau).powi(3);
        for p in [0.3, 0.62, 0.9] {
            let (_, ledger) =
                engine::collide_simultaneous(QubitState::diagonal(p), &cfg).unwrap();
            let (q_cold, q_hot) = dyson_heat(p, &cfg);
            let (w_cold, w_hot) = dyson_work(p, &cfg);
            assert!((ledger.q_cold - q_cold).abs() < tol);
            assert!((ledger.q_hot - q_hot).abs() < tol);
            assert!((ledger.w_cold - w_cold).abs() < tol);
            assert!((ledger.w_hot - w_hot).abs() < tol);
        }
    }

    #[test]
    fn dyson_work_zeroes() {
        let sym = config(1.0, 0.01, (1.0, 1.0, 2.0, 2.0), (2.0, 1.0, 0.7, 0.7));
        assert_eq!(dyson_work(0.4, &sym), (0.0, 0.0));
        let cfg = fig_config(0.01);
        let p_h = cfg.hot.bath.gibbs().p;
        let (_, w_hot) = dyson_work(1.0 - p_h, &cfg);
        assert_eq!(w_hot, 0.0);
    }

    #[test]
    fn perturbative_no_refrigeration_at_the_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..500 {
            let cfg = random_config(&mut rng, 0.001);
            let Ok(p_fixed) = dyson_fixed_point(&cfg) else {
                continue;
            };
            let (q_cold, _) = dyson_heat(p_fixed, &cfg);
            assert!(q_cold >= -1e-12, "q_cold = {q_cold}");
        }
    }

    #[test]
    fn conduction_closed_form_properties() {
        let (p_c, p_h) = (0.880_797_077_977_882_4, 0.731_058_578_630_004_9);
        let omega = 1.0;
        // y = 1: maximal heat per collision, dead current.
        let j = 1.1;
        let tau = std::f64::consts::FRAC_PI_2 / (2.0_f64.sqrt() * j);
        let (q, current) = conduction_closed_form(j, tau, omega, p_c, p_h);
        assert!((q - omega * (p_c - p_h)).abs() < 1e-14);
        assert!(current.abs() < 1e-7);
        // Weak coupling: Q → 2ω(p_C−p_H)(jτ)².
        let (q_weak, _) = conduction_closed_form(1e-3, 1.0, omega, p_c, p_h);
        let expected = 2.0 * omega * (p_c - p_h) * 1e-6;
        assert!((q_weak - expected).abs() / expected < 1e-5);
        // The current peaks at y = 1/2 (√2 jτ = π/4).
        let tau_peak = std::f64::consts::FRAC_PI_4 / (2.0_f64.sqrt() * j);
        let (_, peak) = conduction_closed_form(j, tau_peak, omega, p_c, p_h);
        let mut t = 0.01 * tau;
        while t < tau {
            let (_, c) = conduction_closed_form(j, t, omega, p_c, p_h);
            assert!(c <= peak + 1e-12);
            t += 0.01 * tau;
        }
        assert!((peak - 2.0_f64.sqrt() * omega * j * (p_c - p_h)).abs() < 1e-12);
    }

    #[test]
    fn conduction_matches_engine_steady_state() {
        let j = 0.8;
        let cfg = config(1.0, 0.6, (1.0, 1.0, j, j), (2.0, 1.0, j, j));
        let numeric =
            engine::find_limit_cycle_numeric(&cfg, Mode::Simultaneous, 1e-13, 1_000_000).unwrap();
        let (q, _) = conduction_closed_form(
            j,
            cfg.tau,
            cfg.omega_s,
            cfg.cold.bath.gibbs().p,
            cfg.hot.bath.gibbs().p,
        );
        assert!((numeric.thermo.q_cold - q).abs() < 1e-11);
        assert!((numeric.thermo.q_hot + q).abs() < 1e-11);
    }

    #[test]
    fn overheating_agrees_with_the_fixed_point_ordering() {
        // Symmetric couplings can never overheat.
        let sym = config(1.0, 0.5, (1.0, 1.0, 2.0, 2.0), (2.0, 1.0, 0.7, 0.7));
        assert!(!overheating_condition(&sym));

        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let mut seen_overheating = 0u32;
        for _ in 0..10_000 {
            let cfg = random_config(&mut rng, 0.5);
            let Ok(p_fixed) = dyson_fixed_point(&cfg) else {
                continue;
            };
            let p_h = cfg.hot.bath.gibbs().p;
            let verdict = overheating_condition(&cfg);
            if (p_fixed - p_h).abs() > 1e-12 {
                assert_eq!(verdict, p_fixed < p_h);
            }
            seen_overheating += verdict as u32;
        }
        // The condition is realisable: the sample must contain both kinds.
        assert!(seen_overheating > 0);
        assert!(seen_overheating < 10_000);
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn fixed_point_respects_population_bounds(
            jxx_h in -5.0..5.0f64,
            jyy_h in -5.0..5.0f64,
            jxx_c in -5.0..5.0f64,
            jyy_c in -5.0..5.0f64,
            beta_h in 0.0..3.0f64,
            extra in 0.0..3.0f64,
        ) {
            let cfg = config(
                1.0,
                0.5,
                (beta_h, 1.0, jxx_h, jyy_h),
                (beta_h + extra, 1.0, jxx_c, jyy_c),
            );
            if let Ok(p_fixed) = dyson_fixed_point(&cfg) {
                let p_c = cfg.cold.bath.gibbs().p;
                prop_assert!(p_fixed <= p_c + 1e-12);
                prop_assert!(p_fixed >= 1.0 - p_c - 1e-12);
            }
        }

        #[test]
        fn eta_never_exceeds_one(
            jxx_h in -5.0..5.0f64,
            jyy_h in -5.0..5.0f64,
            jxx_c in -5.0..5.0f64,
            jyy_c in -5.0..5.0f64,
            tau in 0.0..2.0f64,
        ) {
            let cfg = config(1.0, tau, (1.0, 1.0, jxx_h, jyy_h), (2.0, 1.0, jxx_c, jyy_c));
            if let Ok(pred) = dyson_prediction(&cfg) {
                prop_assert!(pred.eta <= 1.0);
            }
        }
    }
}
