//! The closed-form normalization chain built on the large-`|z|` split of
//! `2F1`:
//!
//! ```text
//! Gamma1 = (-1)^n Gamma(2n+2p+2q) Gamma(1+2p) / (Gamma(n+2p+2q) Gamma(1+n+2p))
//! Gamma2 = (-1)^-(n+2p+2q) Gamma(-2n-2p-2q) Gamma(1+2p) / (Gamma(-n) Gamma(1-n-2q))
//! I1 = Gamma1^2      B(1+2n+2p, -1-2n-2p-2q)     2F1(-2q, 1+2n+2p; -2q; 2)
//! I2 = 2 Gamma1 Gamma2 B(1-2q, -1)               2F1(-2q, 1-2q; -2q; 2)
//! I3 = Gamma2^2      B(1-2n-2p-4q, -1-2n-2p-2q)  2F1(-2q, 1-2n-2p-2q; -2q; 2)
//! N  = 1 / sqrt(2 (I1 + I2 + I3))
//! ```
//!
//! Every Gamma, Beta and `2F1` factor is evaluated with pole detection. A
//! pole makes the affected term [`Term::Singular`]; nothing is regularized.
//! For integer `n`, `Gamma(-n)` is always a pole, and `B(1-2q, -1)` always
//! is, so this chain never yields a number at physical parameters.

use std::fmt;

use num_complex::Complex64;

use super::WavefunctionSpec;
use crate::model::{Deformation, PotentialParams, UnitSystem};
use crate::specfun::{gamma_ratio, hyp2f1, is_nonpositive_integer, HypParams};
use crate::spectrum::{energy_analytic, SpectrumEntry};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum PoleKind {
    Gamma {
        arg: f64,
    },
    /// `2F1` has no real value (non-terminating at `z = 2`, or a `c` pole).
    Hyp2f1 {
        params: HypParams,
        z: f64,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleFlag {
    /// Which factor, e.g. `"Gamma2: Gamma(-n)"`.
    pub site: String,
    pub kind: PoleKind,
}

impl fmt::Display for PoleFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PoleKind::Gamma { arg } => write!(f, "{}: Gamma pole at {arg}", self.site),
            PoleKind::Hyp2f1 { params, z, reason } => {
                write!(f, "{}: 2F1({}, {}; {}; {z}) undefined ({reason})", self.site, params.a, params.b, params.c)
            }
        }
    }
}

/// A factor of the chain: a number, or the poles that prevent one.
#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Value(Complex64),
    Singular(Vec<PoleFlag>),
}

impl Term {
    pub fn real(v: f64) -> Self {
        Term::Value(Complex64::new(v, 0.0))
    }

    pub fn value(&self) -> Option<Complex64> {
        match self {
            Term::Value(v) => Some(*v),
            Term::Singular(_) => None,
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Term::Singular(_))
    }

    fn combine(&self, other: &Term, op: impl Fn(Complex64, Complex64) -> Complex64) -> Term {
        match (self, other) {
            (Term::Value(a), Term::Value(b)) => Term::Value(op(*a, *b)),
            (Term::Singular(a), Term::Singular(b)) => Term::Singular(a.iter().chain(b).cloned().collect()),
            (Term::Singular(a), _) | (_, Term::Singular(a)) => Term::Singular(a.clone()),
        }
    }

    fn mul(&self, other: &Term) -> Term {
        self.combine(other, |a, b| a * b)
    }

    fn add(&self, other: &Term) -> Term {
        self.combine(other, |a, b| a + b)
    }
}

/// `(-1)^x = exp(i pi x)`.
fn phase(x: f64) -> Term {
    Term::Value(Complex64::from_polar(1.0, std::f64::consts::PI * x))
}

fn gamma_factor(site: &str, num: &[(&str, f64)], den: &[(&str, f64)]) -> Term {
    let flags: Vec<PoleFlag> = num
        .iter()
        .chain(den)
        .filter(|(_, x)| is_nonpositive_integer(*x))
        .map(|(label, x)| PoleFlag { site: format!("{site}: Gamma({label})"), kind: PoleKind::Gamma { arg: *x } })
        .collect();
    if !flags.is_empty() {
        return Term::Singular(flags);
    }
    let nums: Vec<f64> = num.iter().map(|(_, x)| *x).collect();
    let dens: Vec<f64> = den.iter().map(|(_, x)| *x).collect();
    match gamma_ratio(&nums, &dens) {
        Ok(v) => Term::real(v),
        Err(_) => unreachable!("poles filtered above"),
    }
}

fn beta_factor(site: &str, x: f64, y: f64) -> Term {
    gamma_factor(site, &[("x", x), ("y", y)], &[("x+y", x + y)]).relabel(&format!("{site}: B({x}, {y})"))
}

impl Term {
    fn relabel(self, site: &str) -> Term {
        match self {
            Term::Singular(flags) => Term::Singular(
                flags.into_iter().map(|f| PoleFlag { site: format!("{site} via {}", f.site), kind: f.kind }).collect(),
            ),
            v => v,
        }
    }
}

fn hyp_factor(site: &str, params: HypParams, z: f64) -> Term {
    match hyp2f1(&params, z) {
        Ok(v) => Term::real(v.value),
        Err(e) => Term::Singular(vec![PoleFlag {
            site: site.to_string(),
            kind: PoleKind::Hyp2f1 { params, z, reason: e.to_string() },
        }]),
    }
}

/// The eight factors the chain is assembled from.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainInputs {
    pub gamma1: Term,
    pub gamma2: Term,
    pub beta: [Term; 3],
    pub hyp: [Term; 3],
}

impl ChainInputs {
    /// Evaluate every factor at `(n, p, q)`. `n` may be non-integer for
    /// off-spectrum studies.
    pub fn evaluate(n: f64, p: f64, q: f64) -> Self {
        let s = n + 2.0 * p + 2.0 * q; // n + 2p + 2q
        let gamma1 = phase(n).mul(&gamma_factor(
            "Gamma1",
            &[("2n+2p+2q", n + s), ("1+2p", 1.0 + 2.0 * p)],
            &[("n+2p+2q", s), ("1+n+2p", 1.0 + n + 2.0 * p)],
        ));
        let gamma2 = phase(-s).mul(&gamma_factor(
            "Gamma2",
            &[("-2n-2p-2q", -(n + s)), ("1+2p", 1.0 + 2.0 * p)],
            &[("-n", -n), ("1-n-2q", 1.0 - n - 2.0 * q)],
        ));
        let beta = [
            beta_factor("I1", 1.0 + 2.0 * n + 2.0 * p, -1.0 - (n + s)),
            beta_factor("I2", 1.0 - 2.0 * q, -1.0),
            beta_factor("I3", 1.0 - (n + s) - 2.0 * q, -1.0 - (n + s)),
        ];
        let c = -2.0 * q;
        let hyp = [
            hyp_factor("I1", HypParams::new(c, 1.0 + 2.0 * n + 2.0 * p, c), 2.0),
            hyp_factor("I2", HypParams::new(c, 1.0 - 2.0 * q, c), 2.0),
            hyp_factor("I3", HypParams::new(c, 1.0 - (n + s), c), 2.0),
        ];
        Self { gamma1, gamma2, beta, hyp }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationData {
    pub gamma1: Term,
    pub gamma2: Term,
    pub i1: Term,
    pub i2: Term,
    pub i3: Term,
    pub norm: Term,
    pub pole_flags: Vec<PoleFlag>,
}

impl NormalizationData {
    pub fn assemble(inputs: ChainInputs) -> Self {
        let ChainInputs { gamma1, gamma2, beta, hyp } = inputs;
        let [b1, b2, b3] = beta;
        let [h1, h2, h3] = hyp;
        let i1 = gamma1.mul(&gamma1).mul(&b1).mul(&h1);
        let i2 = Term::real(2.0).mul(&gamma1).mul(&gamma2).mul(&b2).mul(&h2);
        let i3 = gamma2.mul(&gamma2).mul(&b3).mul(&h3);
        let norm = match i1.add(&i2).add(&i3) {
            Term::Value(sum) => Term::Value(1.0 / (2.0 * sum).sqrt()),
            singular => singular,
        };
        let mut pole_flags: Vec<PoleFlag> = Vec::new();
        for t in [&gamma1, &gamma2, &b1, &b2, &b3, &h1, &h2, &h3] {
            if let Term::Singular(flags) = t {
                for f in flags {
                    if !pole_flags.contains(f) {
                        pole_flags.push(f.clone());
                    }
                }
            }
        }
        Self { gamma1, gamma2, i1, i2, i3, norm, pole_flags }
    }

    pub fn is_regular(&self) -> bool {
        self.pole_flags.is_empty()
    }
}

/// The chain at an arbitrary `(n, p, q)`.
pub fn paper_normalization_for(n: f64, p: f64, q: f64) -> NormalizationData {
    NormalizationData::assemble(ChainInputs::evaluate(n, p, q))
}

/// The chain at a resolved level's `(n, p, q)`.
pub fn paper_normalization(entry: &SpectrumEntry) -> Result<NormalizationData> {
    let h = entry.hypergeometric.ok_or(Error::ZeroDeformation)?;
    Ok(paper_normalization_for(entry.n as f64, h.p, h.q))
}

/// Numeric and closed-form normalization side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationReport {
    /// `ln N` from quadrature.
    pub numeric_log_norm: Result<f64>,
    pub paper: Result<NormalizationData>,
    /// `N_paper / N_numeric` when both are finite.
    pub ratio: Option<Complex64>,
}

impl NormalizationReport {
    pub fn upstream(err: Error) -> Self {
        Self { numeric_log_norm: Err(err.clone()), paper: Err(err), ratio: None }
    }

    pub fn numeric_norm(&self) -> Option<f64> {
        self.numeric_log_norm.as_ref().ok().map(|l| l.exp())
    }
}

impl fmt::Display for NormalizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.numeric_log_norm {
            Ok(l) => writeln!(f, "numeric: ln N = {l:.12}, N = {:.12e}", l.exp())?,
            Err(e) => writeln!(f, "numeric: error: {e}")?,
        }
        match &self.paper {
            Ok(d) if d.is_regular() => writeln!(f, "closed form: N = {:?}", d.norm.value())?,
            Ok(d) => {
                writeln!(f, "closed form: {} pole flag(s)", d.pole_flags.len())?;
                for flag in &d.pole_flags {
                    writeln!(f, "  {flag}")?;
                }
            }
            Err(e) => writeln!(f, "closed form: error: {e}")?,
        }
        if let Some(r) = self.ratio {
            writeln!(f, "ratio: {r}")?;
        }
        Ok(())
    }
}

pub fn compare_normalizations(spec: &WavefunctionSpec) -> NormalizationReport {
    let numeric_log_norm = spec.normalized().map(|s| s.log_norm());
    let paper = paper_normalization(&spec.entry);
    let ratio = match (&numeric_log_norm, &paper) {
        (Ok(l), Ok(d)) => d.norm.value().map(|n| n / l.exp()),
        _ => None,
    };
    NormalizationReport { numeric_log_norm, paper, ratio }
}

/// Build the level and compare; failures before the comparison (such as
/// `gamma = 0`) are carried in the report.
pub fn compare_level(n: u32, units: &UnitSystem, d: Deformation, params: &PotentialParams) -> NormalizationReport {
    match energy_analytic(n, units, d, params).and_then(WavefunctionSpec::new) {
        Ok(spec) => compare_normalizations(&spec),
        Err(e) => NormalizationReport::upstream(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(n: u32, gamma: f64) -> SpectrumEntry {
        energy_analytic(
            n,
            &UnitSystem::atomic(),
            Deformation::new(gamma).unwrap(),
            &PotentialParams::coulomb(5.0).unwrap(),
        )
        .unwrap()
    }

    fn flagged(data: &NormalizationData, needle: &str) -> bool {
        data.pole_flags.iter().any(|f| f.site.contains(needle))
    }

    #[test]
    fn coulomb_ground_state_is_flagged() {
        let data = paper_normalization(&level(0, 0.1)).unwrap();
        assert!(!data.is_regular());
        // q = 1 gives B(-1, -1)
        assert!(flagged(&data, "I2: B(-1, -1)"));
        assert!(flagged(&data, "Gamma2: Gamma(-n)"));
        assert!(data.norm.is_singular());
    }

    #[test]
    fn gamma_minus_n_always_flagged() {
        for n in 0..5 {
            let data = paper_normalization(&level(n, 0.5)).unwrap();
            assert!(data.gamma2.is_singular());
            assert!(data
                .pole_flags
                .iter()
                .any(|f| { f.site == "Gamma2: Gamma(-n)" && f.kind == PoleKind::Gamma { arg: -(n as f64) } }));
        }
    }

    #[test]
    fn off_spectrum_still_hits_beta_minus_one() {
        let data = paper_normalization_for(0.37, -3.21, 1.13);
        assert!(!data.gamma2.is_singular());
        assert!(data.i2.is_singular());
        assert!(flagged(&data, "I2: B("));
    }

    #[test]
    fn regular_assembly_matches_formula() {
        let g1 = Complex64::new(0.7, -0.2);
        let g2 = Complex64::new(-1.3, 0.4);
        let b = [2.5, -0.75, 0.125];
        let h = [1.5, 0.5, -2.0];
        let inputs = ChainInputs {
            gamma1: Term::Value(g1),
            gamma2: Term::Value(g2),
            beta: b.map(Term::real),
            hyp: h.map(Term::real),
        };
        let data = NormalizationData::assemble(inputs);
        assert!(data.is_regular());
        let i1 = g1 * g1 * b[0] * h[0];
        let i2 = 2.0 * g1 * g2 * b[1] * h[1];
        let i3 = g2 * g2 * b[2] * h[2];
        let expect = 1.0 / (2.0 * (i1 + i2 + i3)).sqrt();
        let got = data.norm.value().unwrap();
        assert!((got - expect).norm() < 1e-10 * expect.norm());
    }

    #[test]
    fn report_for_ground_state() {
        let report = compare_level(
            0,
            &UnitSystem::atomic(),
            Deformation::new(0.1).unwrap(),
            &PotentialParams::coulomb(5.0).unwrap(),
        );
        assert!(report.numeric_norm().unwrap().is_finite());
        assert!(!report.paper.as_ref().unwrap().is_regular());
        assert_eq!(report.ratio, None);
        let text = report.to_string();
        assert!(text.contains("pole flag"));
    }

    #[test]
    fn report_carries_upstream_error() {
        let report =
            compare_level(0, &UnitSystem::atomic(), Deformation::none(), &PotentialParams::coulomb(5.0).unwrap());
        assert_eq!(report.numeric_log_norm, Err(Error::ZeroDeformation));
        assert_eq!(report.paper, Err(Error::ZeroDeformation));
    }
}
