//! Randomized invariants of the spectrum and the special functions.

use pdm_spectra::cli::{fit_quadratic, TABLE_GAMMAS};
use pdm_spectra::energy_analytic;
use pdm_spectra::model::{Deformation, PotentialParams, UnitMode, UnitSystem};
use pdm_spectra::specfun::{gamma, gamma_ratio, hyp2f1, pochhammer, HypParams};
use pdm_spectra::spectrum::{energy_principal, select_branches, Spectrum, QUANTIZATION_TOL};
use proptest::prelude::*;

fn units_strategy() -> impl Strategy<Value = UnitSystem> {
    (0.3f64..3.0, 0.3f64..5.0).prop_map(|(h, m)| UnitSystem::new(h, m, UnitMode::Atomic).unwrap())
}

fn params_strategy() -> impl Strategy<Value = PotentialParams> {
    (0.0f64..4.0, 0.05f64..12.0).prop_map(|(a, b)| PotentialParams::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn energy_is_never_positive(u in units_strategy(), p in params_strategy(), g in 0.0f64..5.0, n in 0u32..12) {
        let e = energy_analytic(n, &u, Deformation::new(g).unwrap(), &p).unwrap();
        prop_assert!(e.energy <= 0.0);
    }

    #[test]
    fn index_and_principal_forms_agree(u in units_strategy(), p in params_strategy(), g in 0.0f64..3.0, n in 0u32..10) {
        let d = Deformation::new(g).unwrap();
        let e16 = energy_analytic(n, &u, d, &p).unwrap().energy;
        let e17 = energy_principal(n + 1, &u, d, &p).unwrap();
        prop_assert!((e16 - e17).abs() <= 1e-12 * e16.abs().max(1e-300));
    }

    #[test]
    fn pochhammer_is_gamma_ratio(a in 0.05f64..20.0, k in 0u32..15) {
        let ratio = gamma(a + k as f64).unwrap() / gamma(a).unwrap();
        prop_assert!((pochhammer(a, k) - ratio).abs() <= 1e-12 * ratio.abs());
    }

    #[test]
    fn gamma_recurrence(x in -9.7f64..30.0) {
        prop_assume!((x - x.round()).abs() > 1e-3);
        let ratio = gamma_ratio(&[x + 1.0], &[x]).unwrap();
        prop_assert!((ratio - x).abs() <= 1e-12 * x.abs().max(1.0));
    }

    #[test]
    fn branches_agree_on_overlap(a in -1.5f64..1.5, b in -1.5f64..1.5, c in 0.6f64..3.0, z in -0.45f64..-0.05) {
        let p = HypParams::new(a, b, c);
        prop_assume!(p.terminating_degree().is_none());
        let series = pdm_spectra::specfun::hyp2f1_on(pdm_spectra::specfun::Branch::Series, &p, z).unwrap();
        let pfaff = pdm_spectra::specfun::hyp2f1_on(pdm_spectra::specfun::Branch::Pfaff, &p, z).unwrap();
        prop_assert!((series - pfaff).abs() <= 1e-11 * series.abs().max(1.0));
    }

    #[test]
    fn sweep_is_exactly_quadratic(u in units_strategy(), p in params_strategy(), n in 0u32..5) {
        let pts: Vec<(f64, f64)> = (0..15)
            .map(|i| {
                let g = 0.2 * i as f64;
                (g, energy_analytic(n, &u, Deformation::new(g).unwrap(), &p).unwrap().energy)
            })
            .collect();
        let (_, resid) = fit_quadratic(&pts).unwrap();
        let scale = pts.iter().map(|q| q.1.abs()).fold(0.0, f64::max);
        prop_assert!(resid <= 1e-10 * scale.max(1.0));
    }
}

#[test]
fn quantization_holds_across_the_coulomb_grid() {
    let u = UnitSystem::atomic();
    let p = PotentialParams::coulomb(5.0).unwrap();
    for g in TABLE_GAMMAS.into_iter().filter(|g| *g > 0.0) {
        let d = Deformation::new(g).unwrap();
        for n in 0..6 {
            let e = energy_analytic(n, &u, d, &p).unwrap();
            let branch = select_branches(n, &u, d, &p).unwrap();
            let h = e.hypergeometric.unwrap();
            assert!((h.hyp.a + n as f64).abs() < QUANTIZATION_TOL);
            assert!(branch.residual < QUANTIZATION_TOL);
            assert_eq!(
                (branch.p_sign, branch.q_root, branch.imag_sign),
                (h.branch.p_sign, h.branch.q_root, h.branch.imag_sign)
            );
        }
    }
}

#[test]
fn spectrum_levels_match_single_level_calls() {
    let u = UnitSystem::atomic();
    let p = PotentialParams::new(0.7, 5.0).unwrap();
    let d = Deformation::new(0.3).unwrap();
    let s = Spectrum::new(u, d, p);
    let levels = s.levels(0..6).unwrap();
    for (n, l) in levels.iter().enumerate() {
        assert_eq!(l.energy, energy_analytic(n as u32, &u, d, &p).unwrap().energy);
    }
    assert!(hyp2f1(&HypParams::new(-3.0, 1.0, 2.0), 10.0).is_ok());
}
