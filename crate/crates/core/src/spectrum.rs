//! Closed-form bound-state spectrum.
//!
//! With `z = 1 + gamma x` the stationary equation becomes
//!
//! ```text
//! phi'' + phi'/z + [a1/z^2 + a2/(z(1-z)) + a3/(1-z)^2] phi = 0
//! a1 = M [E - gamma(A gamma + B)],  a2 = -gamma M (2 A gamma + B),  a3 = -A M gamma^2
//! M  = 2m / (gamma^2 hbar^2)
//! ```
//!
//! and `phi = z^p (1-z)^q 2F1(a, b; c; z)` with
//! `p^2 = M[gamma(A gamma + B) - E]`, `q = (1 +- sqrt(1 + 4 A M gamma^2)) / 2`,
//! `a, b = p + q +- sqrt(-M E)`, `c = 1 + 2p`. Requiring `a = -n` quantizes
//! the energy:
//!
//! ```text
//! E(n) = -1/4 [ gamma hbar/sqrt(2m) d - sqrt(2m)/hbar (A gamma + B)/d ]^2
//! d    = n + 1/2 + 1/2 sqrt(1 + 8 A m / hbar^2)
//! ```
//!
//! None of the three sign choices (sign of `p`, root of `q`, sign of the
//! `sqrt(-ME)` term) is fixed a priori; [`select_branches`] finds them by
//! exhaustive search and records the result in every [`SpectrumEntry`].

use std::fmt;

use crate::model::{potential_minimum, Deformation, PotentialParams, UnitSystem};
use crate::specfun::HypParams;
use crate::{Error, Result};

/// `|a + n|` below which a branch triple counts as quantized.
pub const QUANTIZATION_TOL: f64 = 1e-9;

/// `M` and the three ODE coefficients of the `z`-equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedCoefficients {
    pub big_m: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

pub fn ode_coefficients(
    units: &UnitSystem,
    d: Deformation,
    params: &PotentialParams,
    energy: f64,
) -> Result<DerivedCoefficients> {
    if d.is_constant_mass() {
        return Err(Error::ZeroDeformation);
    }
    let g = d.gamma();
    let big_m = 2.0 / (g * g * units.hbar2_over_m());
    let (a, b) = (params.a, params.b);
    Ok(DerivedCoefficients {
        big_m,
        a1: big_m * (energy - g * (a * g + b)),
        a2: -g * big_m * (2.0 * a * g + b),
        a3: -a * big_m * g * g,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QRoot {
    Upper,
    Lower,
}

impl fmt::Display for QRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QRoot::Upper => "upper",
            QRoot::Lower => "lower",
        })
    }
}

/// Which of the eight sign/root combinations gave `a = -n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchRecord {
    pub p_sign: Sign,
    pub q_root: QRoot,
    pub imag_sign: Sign,
    /// `|a + n|` under this choice.
    pub residual: f64,
}

impl fmt::Display for BranchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{} q:{} sqrt(-ME){} (|a+n| = {:.1e})", self.p_sign, self.q_root, self.imag_sign, self.residual)
    }
}

/// Both roots of `p` (as a magnitude) and of `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PqParameters {
    pub p_magnitude: f64,
    pub q_upper: f64,
    pub q_lower: f64,
}

impl PqParameters {
    pub fn p(&self, sign: Sign) -> f64 {
        sign.value() * self.p_magnitude
    }

    pub fn q(&self, root: QRoot) -> f64 {
        match root {
            QRoot::Upper => self.q_upper,
            QRoot::Lower => self.q_lower,
        }
    }
}

pub fn pq_parameters(
    units: &UnitSystem,
    d: Deformation,
    params: &PotentialParams,
    energy: f64,
) -> Result<PqParameters> {
    let coeffs = ode_coefficients(units, d, params, energy)?;
    let g = d.gamma();
    let threshold = g * (params.a * g + params.b);
    let p2 = -coeffs.a1;
    if p2 < 0.0 {
        return Err(Error::ImaginaryP { energy, threshold });
    }
    // 4 A M gamma^2 = -4 a3
    let disc = 1.0 - 4.0 * coeffs.a3;
    if disc < 0.0 {
        return Err(Error::InvalidParameter(format!("1 + 4AM gamma^2 = {disc} < 0")));
    }
    let root = disc.sqrt();
    Ok(PqParameters { p_magnitude: p2.sqrt(), q_upper: 0.5 * (1.0 + root), q_lower: 0.5 * (1.0 - root) })
}

/// `a = p + q + s sqrt(-ME)`, `b = p + q - s sqrt(-ME)`, `c = 1 + 2p`.
///
/// For `E < 0` the term `i sqrt(ME)` is the real `sqrt(-ME)` up to the sign
/// `imag_sign`. `c` uses the signed `p`, which is what the hypergeometric
/// equation for `psi` demands.
pub fn hypergeometric_parameters(p: f64, q: f64, big_m: f64, energy: f64, imag_sign: Sign) -> Result<HypParams> {
    if energy > 0.0 {
        return Err(Error::Scattering(energy));
    }
    let k = imag_sign.value() * (-big_m * energy).sqrt();
    Ok(HypParams::new(p + q + k, p + q - k, 1.0 + 2.0 * p))
}

const BRANCH_ORDER: [(Sign, QRoot, Sign); 8] = [
    (Sign::Minus, QRoot::Upper, Sign::Plus),
    (Sign::Minus, QRoot::Upper, Sign::Minus),
    (Sign::Minus, QRoot::Lower, Sign::Plus),
    (Sign::Minus, QRoot::Lower, Sign::Minus),
    (Sign::Plus, QRoot::Upper, Sign::Plus),
    (Sign::Plus, QRoot::Upper, Sign::Minus),
    (Sign::Plus, QRoot::Lower, Sign::Plus),
    (Sign::Plus, QRoot::Lower, Sign::Minus),
];

fn search_branches(
    n: u32,
    units: &UnitSystem,
    d: Deformation,
    params: &PotentialParams,
    energy: f64,
    hint: Option<(Sign, QRoot, Sign)>,
) -> Result<BranchRecord> {
    let pq = pq_parameters(units, d, params, energy)?;
    let big_m = ode_coefficients(units, d, params, energy)?.big_m;
    let k = (-big_m * energy).sqrt();
    let nf = n as f64;
    let tol = QUANTIZATION_TOL.max(64.0 * f64::EPSILON * (pq.p_magnitude + pq.q_upper + k + nf));

    let evaluate = |(ps, qr, is): (Sign, QRoot, Sign)| -> Result<BranchRecord> {
        let h = hypergeometric_parameters(pq.p(ps), pq.q(qr), big_m, energy, is)?;
        Ok(BranchRecord { p_sign: ps, q_root: qr, imag_sign: is, residual: (h.a + nf).abs() })
    };

    if let Some(h) = hint {
        let rec = evaluate(h)?;
        if rec.residual < tol {
            return Ok(rec);
        }
    }
    let mut dump = Vec::with_capacity(8);
    for combo in BRANCH_ORDER {
        let rec = evaluate(combo)?;
        if rec.residual < tol {
            return Ok(rec);
        }
        dump.push(rec.to_string());
    }
    Err(Error::NoConsistentBranch { n, candidates: dump.join("; ") })
}

/// Sign/root triple under which the level-`n` energy makes `a = -n`.
pub fn select_branches(n: u32, units: &UnitSystem, d: Deformation, params: &PotentialParams) -> Result<BranchRecord> {
    if d.is_constant_mass() {
        return Err(Error::ZeroDeformation);
    }
    params.require_bound()?;
    let energy = energy_terms(n, units, d, params).energy;
    search_branches(n, units, d, params, energy, None)
}

/// The denominator `d` and, for `gamma > 0`, the threshold
/// `d_crit = sqrt(2m(A gamma + B)/gamma)/hbar` beyond which the bracket of
/// the energy formula changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityRule {
    pub denominator: f64,
    pub critical: Option<f64>,
}

impl ValidityRule {
    pub fn new(n: u32, units: &UnitSystem, d: Deformation, params: &PotentialParams) -> Self {
        let denominator = level_denominator(n, units, params);
        let critical = (!d.is_constant_mass()).then(|| {
            let g = d.gamma();
            (2.0 * (params.a * g + params.b) / (g * units.hbar2_over_m())).sqrt()
        });
        Self { denominator, critical }
    }

    pub fn is_physical(&self) -> bool {
        match self.critical {
            None => true,
            Some(crit) => self.denominator <= crit,
        }
    }
}

/// `sqrt(1 + 8 A m / hbar^2)`.
pub fn inverse_square_root(units: &UnitSystem, params: &PotentialParams) -> f64 {
    (1.0 + 8.0 * params.a / units.hbar2_over_m()).sqrt()
}

/// `d = n + 1/2 + 1/2 sqrt(1 + 8 A m / hbar^2)`; also the upper `q` plus `n`.
pub fn level_denominator(n: u32, units: &UnitSystem, params: &PotentialParams) -> f64 {
    n as f64 + 0.5 + 0.5 * inverse_square_root(units, params)
}

/// The pieces of the energy formula for one level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyTerms {
    pub denominator: f64,
    /// `gamma hbar / sqrt(2m) * d`.
    pub deformation_term: f64,
    /// `sqrt(2m)/hbar * (A gamma + B) / d`.
    pub coulomb_term: f64,
    pub bracket: f64,
    pub energy: f64,
}

pub fn energy_terms(n: u32, units: &UnitSystem, d: Deformation, params: &PotentialParams) -> EnergyTerms {
    let denominator = level_denominator(n, units, params);
    let scale = (0.5 * units.hbar2_over_m()).sqrt(); // hbar / sqrt(2m)
    let g = d.gamma();
    let deformation_term = g * scale * denominator;
    let coulomb_term = (params.a * g + params.b) / (scale * denominator);
    let bracket = deformation_term - coulomb_term;
    EnergyTerms { denominator, deformation_term, coulomb_term, bracket, energy: -0.25 * bracket * bracket }
}

/// Exponents and hypergeometric parameters of one level (`gamma > 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricData {
    pub coefficients: DerivedCoefficients,
    pub p: f64,
    pub q: f64,
    pub hyp: HypParams,
    pub branch: BranchRecord,
}

/// One bound level.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub n: u32,
    /// `N = n + 1`.
    pub principal: u32,
    pub energy: f64,
    /// `E - V_min`; `None` for `A = 0` where the well has no interior minimum.
    pub energy_shifted: Option<f64>,
    pub physical: bool,
    pub validity: ValidityRule,
    pub terms: EnergyTerms,
    /// `None` at `gamma = 0`, where `M` is undefined.
    pub hypergeometric: Option<HypergeometricData>,
    pub units: UnitSystem,
    pub deformation: Deformation,
    pub params: PotentialParams,
}

fn build_entry(
    n: u32,
    units: &UnitSystem,
    d: Deformation,
    params: &PotentialParams,
    hint: Option<(Sign, QRoot, Sign)>,
) -> Result<SpectrumEntry> {
    params.require_bound()?;
    let terms = energy_terms(n, units, d, params);
    let energy = terms.energy;
    let validity = ValidityRule::new(n, units, d, params);
    let hypergeometric = if d.is_constant_mass() {
        None
    } else {
        let branch = search_branches(n, units, d, params, energy, hint)?;
        let coefficients = ode_coefficients(units, d, params, energy)?;
        let pq = pq_parameters(units, d, params, energy)?;
        let (p, q) = (pq.p(branch.p_sign), pq.q(branch.q_root));
        let hyp = hypergeometric_parameters(p, q, coefficients.big_m, energy, branch.imag_sign)?;
        Some(HypergeometricData { coefficients, p, q, hyp, branch })
    };
    let energy_shifted = potential_minimum(params).ok().map(|(_, v_min)| energy - v_min);
    Ok(SpectrumEntry {
        n,
        principal: n + 1,
        energy,
        energy_shifted,
        physical: validity.is_physical(),
        validity,
        terms,
        hypergeometric,
        units: *units,
        deformation: d,
        params: *params,
    })
}

/// Level `n` from the closed-form energy, with branches resolved and the
/// physicality flag set.
pub fn energy_analytic(n: u32, units: &UnitSystem, d: Deformation, params: &PotentialParams) -> Result<SpectrumEntry> {
    build_entry(n, units, d, params, None)
}

/// The energy written with the principal quantum number `N = n + 1`:
/// `-1/4 [gamma hbar/(2 sqrt(2m)) (2N-1+s) - 2 sqrt(2m)/hbar (A gamma+B)/(2N-1+s)]^2`.
pub fn energy_principal(principal: u32, units: &UnitSystem, d: Deformation, params: &PotentialParams) -> Result<f64> {
    if principal < 1 {
        return Err(Error::InvalidParameter("principal quantum number N >= 1".into()));
    }
    let s = inverse_square_root(units, params);
    let big_d = 2.0 * principal as f64 - 1.0 + s;
    let root_2m_over_hbar = (2.0 / units.hbar2_over_m()).sqrt();
    let g = d.gamma();
    let bracket = g / (2.0 * root_2m_over_hbar) * big_d - 2.0 * root_2m_over_hbar * (params.a * g + params.b) / big_d;
    Ok(-0.25 * bracket * bracket)
}

/// Constant-mass limit `-1/4 [2 sqrt(2m) B / hbar / (2N - 1 + s)]^2`.
pub fn energy_limit_constant_mass(principal: u32, params: &PotentialParams, units: &UnitSystem) -> Result<f64> {
    if principal < 1 {
        return Err(Error::InvalidParameter("principal quantum number N >= 1".into()));
    }
    let s = inverse_square_root(units, params);
    let t = 2.0 * (2.0 / units.hbar2_over_m()).sqrt() * params.b / (2.0 * principal as f64 - 1.0 + s);
    Ok(-0.25 * t * t)
}

/// Hydrogen-like limit `-(2m/hbar^2) B^2 / (4 N^2)`.
pub fn energy_limit_coulomb(principal: u32, b: f64, units: &UnitSystem) -> Result<f64> {
    if principal < 1 {
        return Err(Error::InvalidParameter("principal quantum number N >= 1".into()));
    }
    if !(b > 0.0) {
        return Err(Error::InvalidParameter(format!("B must be > 0, got {b}")));
    }
    let nf = principal as f64;
    Ok(-(2.0 / units.hbar2_over_m()) * b * b / (4.0 * nf * nf))
}

/// `gamma B/2 - gamma^2 hbar^2 n'^2/(32 m) - 2 m B^2/(hbar^2 n'^2)` under both
/// readings of `n'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombPdmLimit {
    /// `n' = 2N - 1`, the printed convention.
    pub printed: f64,
    /// `n' = 2N`, the expansion of the principal-number formula at `A = 0`.
    pub consistent: f64,
}

pub fn energy_limit_coulomb_pdm(principal: u32, d: Deformation, b: f64, units: &UnitSystem) -> Result<CoulombPdmLimit> {
    if principal < 1 {
        return Err(Error::InvalidParameter("principal quantum number N >= 1".into()));
    }
    let g = d.gamma();
    let h2m = units.hbar2_over_m();
    let eval = |n_prime: f64| {
        let n2 = n_prime * n_prime;
        0.5 * g * b - g * g * h2m * n2 / 32.0 - 2.0 * b * b / (h2m * n2)
    };
    let nf = principal as f64;
    Ok(CoulombPdmLimit { printed: eval(2.0 * nf - 1.0), consistent: eval(2.0 * nf) })
}

/// Physical iff `gamma = 0` or `d <= d_crit`.
pub fn classify_physical(entry: &SpectrumEntry) -> bool {
    ValidityRule::new(entry.n, &entry.units, entry.deformation, &entry.params).is_physical()
}

/// Levels of one parameter set. Each level first tries the branch that
/// resolved the previous one.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub units: UnitSystem,
    pub deformation: Deformation,
    pub params: PotentialParams,
}

impl Spectrum {
    pub fn new(units: UnitSystem, deformation: Deformation, params: PotentialParams) -> Self {
        Self { units, deformation, params }
    }

    pub fn level(&self, n: u32) -> Result<SpectrumEntry> {
        energy_analytic(n, &self.units, self.deformation, &self.params)
    }

    pub fn levels(&self, ns: impl IntoIterator<Item = u32>) -> Result<Vec<SpectrumEntry>> {
        let mut hint = None;
        ns.into_iter()
            .map(|n| {
                let entry = build_entry(n, &self.units, self.deformation, &self.params, hint)?;
                hint = entry.hypergeometric.map(|h| (h.branch.p_sign, h.branch.q_root, h.branch.imag_sign));
                Ok(entry)
            })
            .collect()
    }
}
