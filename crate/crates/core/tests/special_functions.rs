//! Special functions against independent quadrature and closed forms.

use std::f64::consts::{FRAC_PI_2, PI};

use pdm_spectra::specfun::{
    beta, beta_integral_identity_check, gamma, hyp2f1, hyp2f1_asymptotic_split, hyp2f1_on, integrate, integrate_with,
    Branch, HypParams, IntegrateOptions,
};
use pdm_spectra::Error;

const TIGHT: IntegrateOptions = IntegrateOptions { abs_tol: 1e-14, rel_tol: 1e-13, max_intervals: 4000 };

/// `2F1(a, b; c; z)` from the Euler integral, `c > b > 0`, `z < 1`.
fn euler_integral(p: &HypParams, z: f64) -> f64 {
    let HypParams { a, b, c } = *p;
    let f = |th: f64| {
        let (s, co) = th.sin_cos();
        let t = s * s;
        2.0 * s.powf(2.0 * b - 1.0) * co.powf(2.0 * (c - b) - 1.0) * (1.0 - t * z).powf(-a)
    };
    integrate_with(f, 0.0, FRAC_PI_2, TIGHT).unwrap().value / beta(b, c - b).unwrap()
}

#[test]
fn beta_by_quadrature() {
    let q = integrate(|t: f64| t.powf(1.5) * (1.0 - t).sqrt(), 0.0, 1.0, 1e-13).unwrap();
    let exact = 3.0 * PI / 48.0;
    assert!((beta(2.5, 1.5).unwrap() - exact).abs() < 1e-14);
    assert!((q.value - exact).abs() < 1e-10);
}

#[test]
fn every_branch_matches_euler_integral() {
    let p = HypParams::new(0.4, 0.9, 2.35);
    for (z, branch) in
        [(0.3, Branch::Series), (0.97, Branch::OneMinusZ), (-4.0, Branch::Pfaff), (-30.0, Branch::Continuation)]
    {
        let v = hyp2f1(&p, z).unwrap();
        assert_eq!(v.branch, branch, "z = {z}");
        let oracle = euler_integral(&p, z);
        assert!((v.value - oracle).abs() < 1e-10 * oracle.abs(), "z = {z}: {} vs {oracle}", v.value);
    }
}

#[test]
fn terminating_polynomial_beyond_unit_disk() {
    // 2F1(-2, b; c; z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
    let (b, c, z) = (1.7, 0.9, 5.5);
    let exact = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
    let v = hyp2f1(&HypParams::new(-2.0, b, c), z).unwrap();
    assert_eq!(v.branch, Branch::Polynomial);
    assert!((v.value - exact).abs() < 1e-12 * exact.abs());
}

#[test]
fn recombination_against_direct_evaluation() {
    for (p, z) in [(HypParams::new(0.5, 1.25, 2.0), -50.0), (HypParams::new(0.3, 0.7, 1.1), -100.0)] {
        let split = hyp2f1_asymptotic_split(&p).unwrap();
        let full = split.recombine(z).unwrap();
        let pfaff = hyp2f1_on(Branch::Pfaff, &p, z).unwrap();
        assert!((full - pfaff).abs() < 1e-6 * pfaff.abs());
        // the two leading terms alone approach the value only as |z| grows
        let far = -1e8;
        let lead = split.leading(far);
        let exact = hyp2f1(&p, far).unwrap().value;
        assert!((lead - exact).abs() < 1e-3 * exact.abs());
    }
    assert!(split_errors(HypParams::new(0.5, 1.5, 2.0)));
}

fn split_errors(p: HypParams) -> bool {
    matches!(hyp2f1_asymptotic_split(&p), Err(Error::GammaPole { .. }))
}

#[test]
fn split_flags_terminating_parameters() {
    for n in 0..5 {
        assert!(split_errors(HypParams::new(-(n as f64), 0.35, 1.6)), "a = -{n}");
    }
}

#[test]
fn beta_identity_grid() {
    let grid = [0.5, 1.0, 2.0, 3.0];
    for r in grid {
        for rp in grid {
            for x in [-0.5, 0.0, 0.5] {
                assert!(beta_integral_identity_check(r, rp, x).unwrap() < 1e-8);
            }
        }
    }
    assert!(beta_integral_identity_check(-1.0, 1.0, 0.0).is_err());
    assert!(beta_integral_identity_check(1.0, 1.0, 1.0).is_err());
}

#[test]
fn reflection_and_poles() {
    for x in [0.3, 0.5, 0.77] {
        let lhs = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
        assert!((lhs - PI / (PI * x).sin()).abs() < 1e-13 * lhs);
    }
    assert!(matches!(gamma(-3.0), Err(Error::GammaPole { .. })));
    assert!(hyp2f1(&HypParams::new(0.5, 0.5, 1.0), 1.5).is_err());
}
