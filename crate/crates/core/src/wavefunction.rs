//! Bound-state wavefunctions `phi(z) = N z^p (z-1)^q 2F1(-n, b; c; z)`,
//! `z = 1 + gamma x`.
//!
//! On the physical half-line `z > 1`, so `(1-z)^q` is taken as `(z-1)^q`; the
//! constant phase `(-1)^q` is absorbed into `N`. `N` is kept as `ln N`
//! because molecular parameters push it far beyond `f64` range.

mod analytic_norm;

use std::fmt::Write as _;

pub use analytic_norm::{
    compare_level, compare_normalizations, paper_normalization, paper_normalization_for, ChainInputs,
    NormalizationData, NormalizationReport, PoleFlag, PoleKind, Term,
};

use crate::model::{mass_profile, potential_value};
use crate::specfun::{hyp2f1, integrate_with, Branch, HypParams, IntegrateOptions};
use crate::spectrum::SpectrumEntry;
use crate::{Error, Result};

/// Integration measure of the normalization integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Measure {
    /// `dx` over `x in (0, inf)`.
    #[default]
    Dx,
    /// `dz` over `z in (1, inf)`, i.e. `gamma dx`.
    Dz,
    /// `dx / (1 + gamma x)`, the weight under which `p_gamma` is Hermitian.
    WeightedDx,
}

impl Measure {
    fn weight(self, gamma: f64, x: f64) -> f64 {
        match self {
            Measure::Dx => 1.0,
            Measure::Dz => gamma,
            Measure::WeightedDx => 1.0 / (1.0 + gamma * x),
        }
    }

    /// Power of `z` the measure contributes at large `z`.
    fn tail_power(self) -> f64 {
        match self {
            Measure::Dx | Measure::Dz => 0.0,
            Measure::WeightedDx => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionSpec {
    pub entry: SpectrumEntry,
    pub measure: Measure,
    /// `(-n, b, c)` with the exact integer `-n`.
    hyp: HypParams,
    p: f64,
    q: f64,
    gamma: f64,
    log_norm: f64,
}

impl WavefunctionSpec {
    /// Unnormalized (`N = 1`) wavefunction of a resolved level.
    pub fn new(entry: SpectrumEntry) -> Result<Self> {
        let data = entry.hypergeometric.ok_or(Error::ZeroDeformation)?;
        if data.branch.residual >= crate::spectrum::QUANTIZATION_TOL.max(1e-6) {
            return Err(Error::NoConsistentBranch { n: entry.n, candidates: data.branch.to_string() });
        }
        let hyp = HypParams::new(-(entry.n as f64), data.hyp.b, data.hyp.c);
        let gamma = entry.deformation.gamma();
        Ok(Self { hyp, p: data.p, q: data.q, gamma, log_norm: 0.0, measure: Measure::Dx, entry })
    }

    pub fn with_measure(mut self, measure: Measure) -> Self {
        self.measure = measure;
        self
    }

    pub fn norm_constant(&self) -> f64 {
        self.log_norm.exp()
    }

    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    /// Multiply `phi` by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut s = self.clone();
        s.log_norm += factor.ln();
        s
    }

    pub fn exponents(&self) -> (f64, f64) {
        (self.p, self.q)
    }

    pub fn hyp_params(&self) -> HypParams {
        self.hyp
    }

    /// `z`-interval of the physical domain `x in (0, inf)`.
    pub fn z_domain(&self) -> (f64, f64) {
        (1.0, f64::INFINITY)
    }

    /// Growth exponent of `|phi|` in `z` at infinity: `p + q + n`.
    pub fn asymptotic_exponent(&self) -> f64 {
        self.p + self.q + self.entry.n as f64
    }

    /// `(ln |phi / N|, sign)` at `x`.
    fn ln_unnormalized(&self, x: f64) -> Result<(f64, f64)> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("wavefunction needs x > 0, got {x}")));
        }
        let z = 1.0 + self.gamma * x;
        let f = hyp2f1(&self.hyp, z)?;
        assert_eq!(f.branch, Branch::Polynomial, "bound-state 2F1 must terminate");
        let ln = self.p * z.ln() + self.q * (self.gamma * x).ln() + f.value.abs().ln();
        Ok((ln, f.value.signum()))
    }

    fn ln_abs(&self, x: f64) -> Result<(f64, f64)> {
        let (ln, s) = self.ln_unnormalized(x)?;
        Ok((ln + self.log_norm, s))
    }

    /// Normalize in place under the current measure.
    pub fn normalize(&mut self) -> Result<()> {
        let factor = normalize_numeric(self)?;
        self.log_norm += factor.ln();
        Ok(())
    }

    pub fn normalized(&self) -> Result<Self> {
        let mut s = self.clone();
        s.normalize()?;
        Ok(s)
    }
}

/// `phi(x)`.
pub fn evaluate_phi(spec: &WavefunctionSpec, x: f64) -> Result<f64> {
    let (ln, s) = spec.ln_abs(x)?;
    Ok(if s == 0.0 { 0.0 } else { s * ln.exp() })
}

/// Peak of `|phi|^2 w` found on a log-spaced scan, as `(x, ln |phi|)`.
fn locate_peak(spec: &WavefunctionSpec) -> Result<(f64, f64)> {
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for j in -200..=200 {
        let x = 10f64.powf(j as f64 / 25.0);
        let (ln, _) = spec.ln_abs(x)?;
        let score = ln + 0.5 * spec.measure.weight(spec.gamma, x).ln();
        if score > best.1 {
            best = (x, score);
        }
    }
    if !best.1.is_finite() {
        return Err(Error::NotNormalizable("phi vanishes on the scan".into()));
    }
    Ok(best)
}

fn check_decay(spec: &WavefunctionSpec) -> Result<()> {
    let alpha = spec.asymptotic_exponent();
    if 2.0 * alpha + spec.measure.tail_power() >= -1.0 {
        return Err(Error::NotNormalizable(format!(
            "|phi|^2 grows like z^{:.4} at infinity under {:?}",
            2.0 * alpha,
            spec.measure
        )));
    }
    Ok(())
}

const NORM_OPTS: IntegrateOptions = IntegrateOptions { abs_tol: 0.0, rel_tol: 1e-12, max_intervals: 4000 };

/// Scaled density `|phi|^2 w / exp(2 shift)`.
fn density<'a>(spec: &'a WavefunctionSpec, shift: f64) -> impl Fn(f64) -> f64 + 'a {
    move |x: f64| {
        if x <= 0.0 {
            return 0.0;
        }
        match spec.ln_abs(x) {
            Ok((ln, s)) if s != 0.0 => (2.0 * (ln - shift)).exp() * spec.measure.weight(spec.gamma, x),
            _ => 0.0,
        }
    }
}

/// Factor that normalizes the current `phi` under its measure.
///
/// The range `[0, x_max]` is extended by doubling until
/// `|phi(x_max)|^2 w x_max` drops below `1e-12` of the running integral.
pub fn normalize_numeric(spec: &WavefunctionSpec) -> Result<f64> {
    check_decay(spec)?;
    let (x_peak, shift) = locate_peak(spec)?;
    let f = density(spec, shift);
    let mut hi = 2.0 * x_peak;
    let mut total = integrate_with(&f, 0.0, hi, NORM_OPTS)?.value;
    for _ in 0..400 {
        if f(hi) * hi < 1e-12 * total {
            if !(total > 0.0 && total.is_finite()) {
                break;
            }
            return Ok((-0.5 * (total.ln() + 2.0 * shift)).exp());
        }
        total += integrate_with(&f, hi, 2.0 * hi, NORM_OPTS)?.value;
        hi *= 2.0;
    }
    Err(Error::NotNormalizable(format!("tail not converged (integral {total})")))
}

/// `int |phi|^2 dmu` over the whole half-line, by a route independent of
/// [`normalize_numeric`]: split at the peak, the right half mapped to a
/// finite interval.
pub fn norm_integral(spec: &WavefunctionSpec) -> Result<f64> {
    check_decay(spec)?;
    let (x_peak, shift) = locate_peak(spec)?;
    let f = density(spec, shift);
    let peak = f(x_peak);
    // width: first point right of the peak where the density halves
    let mut width = x_peak;
    let mut x = x_peak;
    for _ in 0..2000 {
        x *= 1.01;
        if f(x) < 0.5 * peak {
            width = x - x_peak;
            break;
        }
    }
    let left = integrate_with(&f, 0.0, x_peak, NORM_OPTS)?.value;
    let right = integrate_with(|y| f(x_peak + width * y) * width, 0.0, f64::INFINITY, NORM_OPTS)?.value;
    Ok((left + right) * (2.0 * shift).exp())
}

/// `x` past the peak where `|phi|^2 (1 + x)` has fallen below `rel` of its peak value.
pub fn extent(spec: &WavefunctionSpec, rel: f64) -> Result<f64> {
    check_decay(spec)?;
    let (x_peak, shift) = locate_peak(spec)?;
    let f = density(spec, shift);
    let reference = f(x_peak) * (1.0 + x_peak);
    let mut x = x_peak;
    for _ in 0..10_000 {
        x *= 1.02;
        if f(x) * (1.0 + x) < rel * reference {
            return Ok(x);
        }
    }
    Err(Error::NotNormalizable("no finite extent".into()))
}

/// Sample points uniform in `ln z` on `(0, x_max]`.
pub fn log_z_samples(gamma: f64, x_max: f64, count: usize) -> Vec<f64> {
    let u_max = (gamma * x_max).ln_1p();
    (1..=count).map(|i| (u_max * i as f64 / count as f64).exp_m1() / gamma).collect()
}

/// Interior sign changes of `phi` on `(0, x_max)` from dense sampling.
pub fn count_nodes(spec: &WavefunctionSpec, x_max: f64, samples: usize) -> Result<usize> {
    let mut nodes = 0;
    let mut prev = 0.0;
    for x in log_z_samples(spec.gamma, x_max, samples) {
        let (_, s) = spec.ln_unnormalized(x)?;
        if s != 0.0 {
            if prev != 0.0 && s != prev {
                nodes += 1;
            }
            prev = s;
        }
    }
    Ok(nodes)
}

/// Relative residual of the stationary equation
/// `[2/m(x) phi'' + (1/m)' phi' + 4/hbar^2 (E - V) phi] = 0`
/// evaluated with central differences of step `fd_step (1 + gamma x)` (a
/// uniform step in `ln z`) at `samples` points uniform in `ln z` on
/// `(0, x_max]`. The result is
/// `||residual||_2 / ||4/hbar^2 E phi||_2`.
pub fn ode_residual(spec: &WavefunctionSpec, x_max: f64, samples: usize, fd_step: f64) -> Result<f64> {
    let entry = &spec.entry;
    let units = &entry.units;
    let d = entry.deformation;
    let energy = entry.energy;
    let c = 4.0 / (units.hbar() * units.hbar());
    let inv_mass = |x: f64| -> Result<f64> { Ok(1.0 / mass_profile(units, d, x)?) };

    let xs = log_z_samples(spec.gamma, x_max, samples);
    let mut num = 0.0;
    let mut den = 0.0;
    let mut prev_x = 0.0;
    for &x in &xs {
        let h = (fd_step * (1.0 + spec.gamma * x)).min(0.5 * x);
        let (fm, f0, fp) = (evaluate_phi(spec, x - h)?, evaluate_phi(spec, x)?, evaluate_phi(spec, x + h)?);
        let d2 = (fp - 2.0 * f0 + fm) / (h * h);
        let d1 = (fp - fm) / (2.0 * h);
        let dinv_m = (inv_mass(x + h)? - inv_mass(x - h)?) / (2.0 * h);
        let v = potential_value(&entry.params, x)?;
        let r = 2.0 * inv_mass(x)? * d2 + dinv_m * d1 + c * (energy - v) * f0;
        let dx = x - prev_x;
        prev_x = x;
        num += r * r * dx;
        den += (c * energy * f0).powi(2) * dx;
    }
    Ok((num / den).sqrt())
}

/// CSV of `x, z, phi, |phi|^2` at the given points.
pub fn samples_csv(spec: &WavefunctionSpec, xs: &[f64]) -> Result<String> {
    let mut out = String::from("x,z,phi,phi_sq\n");
    for &x in xs {
        let phi = evaluate_phi(spec, x)?;
        let z = 1.0 + spec.gamma * x;
        writeln!(out, "{x:.9e},{z:.9e},{phi:.9e},{:.9e}", phi * phi).expect("string write");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Deformation, PotentialParams, UnitSystem};
    use crate::spectrum::energy_analytic;

    fn spec(n: u32, gamma: f64) -> WavefunctionSpec {
        let e = energy_analytic(
            n,
            &UnitSystem::atomic(),
            Deformation::new(gamma).unwrap(),
            &PotentialParams::coulomb(5.0).unwrap(),
        )
        .unwrap();
        WavefunctionSpec::new(e).unwrap()
    }

    #[test]
    fn ground_state_is_power_product() {
        let s = spec(0, 0.1);
        let (p, q) = s.exponents();
        assert!((p + 50.5).abs() < 1e-12);
        assert_eq!(q, 1.0);
        for x in [0.01, 0.3, 2.0, 40.0] {
            let z: f64 = 1.0 + 0.1 * x;
            let expect = z.powf(p) * (z - 1.0).powf(q);
            assert!((evaluate_phi(&s, x).unwrap() - expect).abs() <= 1e-12 * expect);
        }
    }

    #[test]
    fn decays_at_large_x() {
        let s = spec(0, 0.1);
        assert!(s.asymptotic_exponent() < 0.0);
        let far = evaluate_phi(&s, 1e4).unwrap().abs();
        let near = evaluate_phi(&s, 0.2).unwrap().abs();
        assert!(far < 1e-60 * near);
    }

    #[test]
    fn first_excited_state_has_one_node() {
        assert_eq!(count_nodes(&spec(1, 0.1), 200.0, 20_000).unwrap(), 1);
        assert_eq!(count_nodes(&spec(0, 0.1), 200.0, 20_000).unwrap(), 0);
    }

    #[test]
    fn domain_errors() {
        let s = spec(0, 0.1);
        assert!(evaluate_phi(&s, 0.0).is_err());
        assert!(evaluate_phi(&s, -1.0).is_err());
        let e0 =
            energy_analytic(0, &UnitSystem::atomic(), Deformation::none(), &PotentialParams::coulomb(5.0).unwrap())
                .unwrap();
        assert_eq!(WavefunctionSpec::new(e0), Err(Error::ZeroDeformation));
    }

    #[test]
    fn normalization_and_scaling() {
        let s = spec(0, 0.1);
        let n = normalize_numeric(&s).unwrap();
        assert!(n > 0.0 && n.is_finite());
        let doubled = normalize_numeric(&s.scaled(2.0)).unwrap();
        assert!((doubled / n - 0.5).abs() < 1e-12);

        let normed = s.normalized().unwrap();
        assert!((norm_integral(&normed).unwrap() - 1.0).abs() < 1e-6);
        let again = normalize_numeric(&normed).unwrap();
        assert!((again - 1.0).abs() < 1e-10);
    }

    #[test]
    fn measures_differ_by_gamma() {
        let s = spec(1, 0.5);
        let dx = norm_integral(&s).unwrap();
        let dz = norm_integral(&s.clone().with_measure(Measure::Dz)).unwrap();
        assert!((dz / dx - 0.5).abs() < 1e-8);
        let w = norm_integral(&s.clone().with_measure(Measure::WeightedDx)).unwrap();
        assert!(w < dx);
    }

    #[test]
    fn unphysical_level_not_normalizable() {
        let s = spec(4, 1.0);
        assert!(matches!(normalize_numeric(&s), Err(Error::NotNormalizable(_))));
    }

    #[test]
    fn csv_columns() {
        let s = spec(0, 0.1).normalized().unwrap();
        let csv = samples_csv(&s, &[0.1, 0.2]).unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "x,z,phi,phi_sq");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("1.000000000e-1,1.010000000e0,"));
    }
}
