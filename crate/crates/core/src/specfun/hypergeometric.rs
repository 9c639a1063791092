//! Gauss hypergeometric function `2F1(a, b; c; z)` on the real axis.
//!
//! The evaluator picks one of several representations depending on `z` and
//! the parameters and reports which one it used:
//!
//! | branch         | domain                                   |
//! |----------------|------------------------------------------|
//! | `Polynomial`   | `a` or `b` a non-positive integer, any z |
//! | `Series`       | `-1/2 <= z <= 0.9`                       |
//! | `OneMinusZ`    | `0.9 < z <= 1`, `c - a - b` non-integer   |
//! | `Pfaff`        | `z < -1/2` via `z / (z - 1)`             |
//! | `Continuation` | `z < -9`, `a - b` non-integer            |

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use super::gamma::{beta, gamma_ratio, is_nonpositive_integer};
use super::quadrature::{integrate_with, IntegrateOptions};
use crate::{Error, Result};

/// A series stops once a term is this small relative to the partial sum.
pub const SERIES_REL_TOL: f64 = 1e-16;
pub const MAX_SERIES_TERMS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// Degree of the polynomial when `a` or `b` is a non-positive integer.
    pub fn terminating_degree(&self) -> Option<u32> {
        let da = is_nonpositive_integer(self.a).then(|| (-self.a.round()) as u32);
        let db = is_nonpositive_integer(self.b).then(|| (-self.b.round()) as u32);
        match (da, db) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Series,
    Polynomial,
    OneMinusZ,
    Pfaff,
    Continuation,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::Series => "series",
            Branch::Polynomial => "polynomial",
            Branch::OneMinusZ => "one-minus-z",
            Branch::Pfaff => "pfaff",
            Branch::Continuation => "continuation",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2f1Value {
    pub value: f64,
    pub branch: Branch,
}

fn series(p: &HypParams, z: f64) -> Result<f64> {
    if z == 0.0 {
        return Ok(1.0);
    }
    if z.abs() >= 1.0 {
        return Err(Error::NonConvergence(format!("series needs |z| < 1, got z = {z}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        let denom = (p.c + kf) * (kf + 1.0);
        if denom == 0.0 || is_nonpositive_integer(p.c + kf) {
            return Err(Error::NonConvergence(format!(
                "c = {} is a non-positive integer before the series terminates",
                p.c
            )));
        }
        term *= (p.a + kf) * (p.b + kf) / denom * z;
        sum += term;
        if term.abs() <= SERIES_REL_TOL * sum.abs() {
            small += 1;
            if small == 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence(format!("series for {p:?} at z = {z} not converged after {MAX_SERIES_TERMS} terms")))
}

fn polynomial(p: &HypParams, z: f64) -> Result<f64> {
    let degree = p.terminating_degree().ok_or_else(|| Error::NonConvergence(format!("{p:?} does not terminate")))?;
    // use the exact integer so a tiny offset cannot leak into the tail
    let (a, b) = if is_nonpositive_integer(p.a) && (-p.a.round()) as u32 == degree {
        (-(degree as f64), p.b)
    } else {
        (p.a, -(degree as f64))
    };
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..degree {
        let kf = k as f64;
        let ck = p.c + kf;
        if is_nonpositive_integer(ck) && ck.round() == 0.0 {
            return Err(Error::NonConvergence(format!(
                "c = {} hits zero before the polynomial of degree {degree} ends",
                p.c
            )));
        }
        term *= (a + kf) * (b + kf) / (ck * (kf + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

fn inner(p: &HypParams, w: f64) -> Result<f64> {
    if p.terminating_degree().is_some() {
        polynomial(p, w)
    } else {
        series(p, w)
    }
}

fn one_minus_z(p: &HypParams, z: f64) -> Result<f64> {
    if z > 1.0 {
        return Err(Error::NonConvergence(format!("one-minus-z branch needs z <= 1, got {z}")));
    }
    let s = p.c - p.a - p.b;
    if (s - s.round()).abs() <= 1e-10 {
        return Err(Error::NonConvergence(format!("c - a - b = {s} is an integer; one-minus-z branch degenerate")));
    }
    let w = 1.0 - z;
    let first = gamma_ratio(&[p.c, s], &[p.c - p.a, p.c - p.b])? * inner(&HypParams::new(p.a, p.b, 1.0 - s), w)?;
    if w == 0.0 {
        if s < 0.0 {
            return Err(Error::NonConvergence(format!("2F1 diverges at z = 1 when c - a - b = {s} < 0")));
        }
        return Ok(first);
    }
    let second =
        w.powf(s) * gamma_ratio(&[p.c, -s], &[p.a, p.b])? * inner(&HypParams::new(p.c - p.a, p.c - p.b, 1.0 + s), w)?;
    Ok(first + second)
}

fn pfaff(p: &HypParams, z: f64) -> Result<f64> {
    if z >= 1.0 {
        return Err(Error::NonConvergence(format!("Pfaff branch needs z < 1, got {z}")));
    }
    let w = z / (z - 1.0);
    Ok((1.0 - z).powf(-p.a) * inner(&HypParams::new(p.a, p.c - p.b, p.c), w)?)
}

fn continuation(p: &HypParams, z: f64) -> Result<f64> {
    hyp2f1_asymptotic_split(p)?.recombine(z)
}

/// Evaluate on one specific branch, with no fallback.
pub fn hyp2f1_on(branch: Branch, p: &HypParams, z: f64) -> Result<f64> {
    match branch {
        Branch::Series => series(p, z),
        Branch::Polynomial => polynomial(p, z),
        Branch::OneMinusZ => one_minus_z(p, z),
        Branch::Pfaff => pfaff(p, z),
        Branch::Continuation => continuation(p, z),
    }
}

/// `2F1(a, b; c; z)` with automatic branch choice.
pub fn hyp2f1(p: &HypParams, z: f64) -> Result<Hyp2f1Value> {
    let found = |branch, value| Ok(Hyp2f1Value { value, branch });
    if !z.is_finite() {
        return Err(Error::NonConvergence(format!("z = {z}")));
    }
    if z == 0.0 {
        return found(Branch::Series, 1.0);
    }
    if p.terminating_degree().is_some() {
        return found(Branch::Polynomial, polynomial(p, z)?);
    }
    if z > 1.0 {
        return Err(Error::NonConvergence(format!("non-terminating 2F1 has no real branch at z = {z} > 1")));
    }
    if z > 0.9 {
        return match one_minus_z(p, z) {
            Ok(v) => found(Branch::OneMinusZ, v),
            Err(e) if z == 1.0 => Err(e),
            Err(_) => found(Branch::Series, series(p, z)?),
        };
    }
    if z >= -0.5 {
        return found(Branch::Series, series(p, z)?);
    }
    if z < -9.0 {
        if let Ok(v) = continuation(p, z) {
            return found(Branch::Continuation, v);
        }
    }
    found(Branch::Pfaff, pfaff(p, z)?)
}

/// Leading large-`|z|` behaviour `2F1 ~ C1 (-z)^(-a) + C2 (-z)^(-b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticSplit {
    pub params: HypParams,
    pub coeff1: f64,
    pub exponent1: f64,
    pub coeff2: f64,
    pub exponent2: f64,
}

impl AsymptoticSplit {
    /// The two leading terms only.
    pub fn leading(&self, z: f64) -> f64 {
        let mz = -z;
        self.coeff1 * mz.powf(self.exponent1) + self.coeff2 * mz.powf(self.exponent2)
    }

    /// Full connection formula: each leading term times its `2F1` series in
    /// `1/z`. Needs `z < -1`.
    pub fn recombine(&self, z: f64) -> Result<f64> {
        if !(z < -1.0) {
            return Err(Error::NonConvergence(format!("continuation needs z < -1, got z = {z}")));
        }
        let HypParams { a, b, c } = self.params;
        let w = 1.0 / z;
        let mz = -z;
        let f1 = inner(&HypParams::new(a, a - c + 1.0, a - b + 1.0), w)?;
        let f2 = inner(&HypParams::new(b, b - c + 1.0, b - a + 1.0), w)?;
        Ok(self.coeff1 * mz.powf(-a) * f1 + self.coeff2 * mz.powf(-b) * f2)
    }
}

/// Coefficients `Gamma(b-a)Gamma(c)/(Gamma(b)Gamma(c-a))` and
/// `Gamma(a-b)Gamma(c)/(Gamma(a)Gamma(c-b))` of the large-`|z|` split.
///
/// Every Gamma argument is checked, so a terminating `a = -n` (where
/// `Gamma(a)` is infinite) is reported as a pole rather than a zero
/// coefficient.
pub fn hyp2f1_asymptotic_split(p: &HypParams) -> Result<AsymptoticSplit> {
    let HypParams { a, b, c } = *p;
    let diff = a - b;
    if (diff - diff.round()).abs() <= 1e-10 * diff.abs().max(1.0) {
        let arg = if diff <= 0.0 { diff } else { -diff };
        return Err(Error::GammaPole { arg });
    }
    let coeff1 = gamma_ratio(&[b - a, c], &[b, c - a])?;
    let coeff2 = gamma_ratio(&[a - b, c], &[a, c - b])?;
    Ok(AsymptoticSplit { params: *p, coeff1, exponent1: -a, coeff2, exponent2: -b })
}

/// `|int_0^1 t^(r-1) (1-t)^(r'-1) (1-t x)^(-r-r') dt - B(r,r') 2F1(r+r', r; r+r'; x)|`.
///
/// The left side is integrated in `t = sin^2(theta)` so that neither endpoint
/// needs `1 - t` near round-off.
pub fn beta_integral_identity_check(r: f64, r_prime: f64, x: f64) -> Result<f64> {
    if !(r > 0.0 && r_prime > 0.0) {
        return Err(Error::Domain(format!("need r, r' > 0, got ({r}, {r_prime})")));
    }
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!("need |x| < 1, got {x}")));
    }
    let integrand = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let t = s * s;
        2.0 * s.powf(2.0 * r - 1.0) * c.powf(2.0 * r_prime - 1.0) * (1.0 - t * x).powf(-r - r_prime)
    };
    let opts = IntegrateOptions { abs_tol: 1e-13, rel_tol: 1e-13, max_intervals: 4000 };
    let lhs = integrate_with(integrand, 0.0, FRAC_PI_2, opts)?.value;
    let rhs = beta(r, r_prime)? * hyp2f1(&HypParams::new(r + r_prime, r, r + r_prime), x)?.value;
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn value_at_zero() {
        let v = hyp2f1(&HypParams::new(0.3, -7.2, 4.1), 0.0).unwrap();
        assert_eq!(v.value, 1.0);
    }

    #[test]
    fn linear_polynomial() {
        let (b, c) = (2.5, 3.5);
        for z in [-40.0, -0.5, 0.3, 2.0, 17.0] {
            let v = hyp2f1(&HypParams::new(-1.0, b, c), z).unwrap();
            assert_eq!(v.branch, Branch::Polynomial);
            assert!((v.value - (1.0 - b * z / c)).abs() < 1e-13 * (1.0 + z.abs()));
        }
    }

    #[test]
    fn log_closed_form() {
        // 2F1(1,1;2;z) = -ln(1-z)/z
        let v = hyp2f1(&HypParams::new(1.0, 1.0, 2.0), 0.5).unwrap();
        assert_eq!(v.branch, Branch::Series);
        assert!(rel(v.value, 2.0 * 2f64.ln()) < 1e-14);
        assert!((v.value - 1.386_294_4).abs() < 1e-7);
        // same closed form through the other branches
        for z in [-0.8, -5.0, -30.0, 0.95] {
            let v = hyp2f1(&HypParams::new(1.0, 1.0, 2.0), z).unwrap();
            assert!(rel(v.value, -(1.0 - z).ln() / z) < 1e-12, "z = {z} via {}", v.branch);
        }
    }

    #[test]
    fn arcsin_closed_form_on_one_minus_z() {
        // 2F1(1/2,1/2;3/2;z^2) = asin(z)/z
        let z: f64 = 0.97;
        let v = hyp2f1(&HypParams::new(0.5, 0.5, 1.5), z * z).unwrap();
        assert_eq!(v.branch, Branch::OneMinusZ);
        assert!(rel(v.value, z.asin() / z) < 1e-13);
    }

    #[test]
    fn a_equal_c_terminates_at_a() {
        // F(-2, b; -2; z) = 1 + b z + b(b+1) z^2 / 2
        let b = 3.0;
        let z = 2.0;
        let v = hyp2f1(&HypParams::new(-2.0, b, -2.0), z).unwrap();
        assert_eq!(v.value, 1.0 + b * z + b * (b + 1.0) * z * z / 2.0);
        assert!(hyp2f1(&HypParams::new(-3.0, b, -2.0), z).is_err());
    }

    #[test]
    fn divergent_cases_are_errors() {
        assert!(hyp2f1(&HypParams::new(0.3, 0.4, 0.5), 2.0).is_err());
        // c - a - b < 0 at z = 1
        assert!(hyp2f1(&HypParams::new(1.3, 1.4, 0.5), 1.0).is_err());
        assert!(hyp2f1_on(Branch::Series, &HypParams::new(0.3, 0.4, 0.5), -1.5).is_err());
    }

    #[test]
    fn split_pole_for_terminating_a() {
        assert_eq!(hyp2f1_asymptotic_split(&HypParams::new(-2.0, 1.3, 2.0)), Err(Error::GammaPole { arg: -2.0 }));
        // integer a - b
        assert!(matches!(hyp2f1_asymptotic_split(&HypParams::new(0.5, 1.5, 2.0)), Err(Error::GammaPole { .. })));
    }

    #[test]
    fn beta_identity_trivial_point() {
        assert!(beta_integral_identity_check(1.0, 1.0, 0.0).unwrap() < 1e-12);
        assert!(beta_integral_identity_check(0.0, 1.0, 0.0).is_err());
        assert!(beta_integral_identity_check(1.0, 1.0, 1.0).is_err());
    }
}
