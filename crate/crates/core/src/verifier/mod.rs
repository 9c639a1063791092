//! Finite-difference oracle for the deformed stationary equation
//!
//! ```text
//! -(hbar^2 / 2m) (1 + gamma x) [(1 + gamma x) phi'' + gamma phi'] + V(x) phi = E phi
//! ```
//!
//! on `x in [x_min, x_max]` with Dirichlet ends. No closed-form energy is
//! used anywhere in this module except in [`crosscheck_analytic`], which
//! exists to compare against one.
//!
//! Three discretizations are available:
//!
//! - [`Discretization::Liouville`] (default): with `u = ln(1 + gamma x) / gamma`
//!   the operator becomes `-(hbar^2/2m) d^2/du^2 + V(x(u))`, discretized on a
//!   uniform `u` grid with the three-point stencil. Symmetric as built.
//! - [`Discretization::WeightedX`]: uniform `x` grid, flux form
//!   `-(hbar^2/2m) w (w phi')'` with `w = 1 + gamma x`, made symmetric by the
//!   `diag(1/w)^(1/2)` similarity.
//! - [`Discretization::RawX`]: the plain central-difference stencil of the
//!   expanded operator, symmetrized by a diagonal similarity. Kept for
//!   comparison.
//!
//! At `gamma = 0` all three reduce to the standard kinetic stencil plus a
//! diagonal potential.

mod sturm;

use std::fmt::{self, Write as _};

pub use sturm::{sign_changes, Tridiagonal};

use crate::model::{potential_value, Deformation, PotentialParams, UnitSystem};
use crate::spectrum::energy_analytic;
use crate::{Error, Result};

/// Absolute bisection tolerance in the discrete problem.
pub const BISECTION_TOL: f64 = 1e-10;

pub const DEFAULT_X_MIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Discretization {
    #[default]
    Liouville,
    WeightedX,
    RawX,
}

impl Discretization {
    pub fn tag(self) -> &'static str {
        match self {
            Discretization::Liouville => "liouville-u",
            Discretization::WeightedX => "weighted-x",
            Discretization::RawX => "raw-x",
        }
    }
}

impl fmt::Display for Discretization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `num_points` interior nodes on the coarsest grid; refinement `r` halves
/// the spacing `r` times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub num_points: usize,
    pub refinements: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, num_points: usize, refinements: usize) -> Result<Self> {
        if !(x_min > 0.0) || !x_min.is_finite() {
            return Err(Error::GridBoundary { x: x_min });
        }
        if !(x_max > x_min) || !x_max.is_finite() {
            return Err(Error::InvalidParameter(format!("x_max = {x_max} must exceed x_min = {x_min}")));
        }
        if num_points < 200 {
            return Err(Error::InvalidParameter(format!("num_points = {num_points} < 200")));
        }
        if refinements < 2 {
            return Err(Error::InvalidParameter(format!("refinements = {refinements} < 2")));
        }
        Ok(Self { x_min, x_max, num_points, refinements })
    }

    /// Starts at [`DEFAULT_X_MIN`] with `x_max` wide enough for the lowest
    /// `levels` hydrogen-like states of the undeformed problem, stretched by
    /// the Liouville map. A rough scale only; no level energies are used.
    pub fn for_levels(
        units: &UnitSystem,
        d: Deformation,
        params: &PotentialParams,
        levels: usize,
        num_points: usize,
    ) -> Result<Self> {
        let scale = if params.b > 0.0 { units.hbar2_over_m() / params.b } else { 1.0 };
        let n_eff = levels as f64 + (2.0 * params.a / units.hbar2_over_m()).sqrt();
        let u_max = (2.0 * n_eff * n_eff + 30.0 * n_eff) * scale;
        Self::new(DEFAULT_X_MIN, x_of_u(d, u_max), num_points, 2)
    }

    pub fn refined(&self, level: usize) -> Self {
        Self { num_points: (self.num_points + 1) * (1 << level) - 1, ..*self }
    }

    pub fn with_x_min(&self, x_min: f64) -> Result<Self> {
        Self::new(x_min, self.x_max, self.num_points, self.refinements)
    }

    pub fn with_x_max(&self, x_max: f64) -> Result<Self> {
        Self::new(self.x_min, x_max, self.num_points, self.refinements)
    }
}

fn u_of_x(d: Deformation, x: f64) -> f64 {
    let g = d.gamma();
    if g == 0.0 {
        x
    } else {
        (g * x).ln_1p() / g
    }
}

fn x_of_u(d: Deformation, u: f64) -> f64 {
    let g = d.gamma();
    if g == 0.0 {
        u
    } else {
        (g * u).exp_m1() / g
    }
}

/// A symmetric tridiagonal operator with the node positions and the
/// positive scaling that maps its eigenvectors back to `phi(x_i)`.
#[derive(Debug, Clone)]
pub struct DiscreteHamiltonian {
    pub matrix: Tridiagonal,
    /// Node positions in `x`.
    pub nodes: Vec<f64>,
    /// `phi_i = scale_i * psi_i`.
    pub scale: Vec<f64>,
    pub method: Discretization,
}

impl DiscreteHamiltonian {
    pub fn to_phi(&self, psi: &[f64]) -> Vec<f64> {
        psi.iter().zip(&self.scale).map(|(p, s)| p * s).collect()
    }
}

pub fn build_discrete_hamiltonian(
    units: &UnitSystem,
    d: Deformation,
    params: &PotentialParams,
    grid: &GridSpec,
    method: Discretization,
) -> Result<DiscreteHamiltonian> {
    if grid.x_min <= 0.0 {
        return Err(Error::GridBoundary { x: grid.x_min });
    }
    let n = grid.num_points;
    let kin = 0.5 * units.hbar2_over_m();
    let g = d.gamma();
    match method {
        Discretization::Liouville => {
            let (u0, u1) = (u_of_x(d, grid.x_min), u_of_x(d, grid.x_max));
            let h = (u1 - u0) / (n + 1) as f64;
            let nodes: Vec<f64> = (1..=n).map(|i| x_of_u(d, u0 + i as f64 * h)).collect();
            let diag = nodes
                .iter()
                .map(|&x| Ok(2.0 * kin / (h * h) + potential_value(params, x)?))
                .collect::<Result<Vec<_>>>()?;
            let off = vec![-kin / (h * h); n - 1];
            Ok(DiscreteHamiltonian { matrix: Tridiagonal::new(diag, off)?, nodes, scale: vec![1.0; n], method })
        }
        Discretization::WeightedX => {
            let h = (grid.x_max - grid.x_min) / (n + 1) as f64;
            let x = |i: f64| grid.x_min + i * h;
            let w = |x: f64| 1.0 + g * x;
            let nodes: Vec<f64> = (1..=n).map(|i| x(i as f64)).collect();
            let mut diag = Vec::with_capacity(n);
            for (k, &xi) in nodes.iter().enumerate() {
                let i = (k + 1) as f64;
                let wi = w(xi);
                let k_ii = kin * (w(x(i + 0.5)) + w(x(i - 0.5))) / (h * h) + potential_value(params, xi)? / wi;
                diag.push(k_ii * wi);
            }
            let off = (0..n - 1)
                .map(|k| {
                    let i = (k + 1) as f64;
                    -kin * w(x(i + 0.5)) / (h * h) * (w(nodes[k]) * w(nodes[k + 1])).sqrt()
                })
                .collect();
            let scale = nodes.iter().map(|&xi| w(xi).sqrt()).collect();
            Ok(DiscreteHamiltonian { matrix: Tridiagonal::new(diag, off)?, nodes, scale, method })
        }
        Discretization::RawX => {
            let h = (grid.x_max - grid.x_min) / (n + 1) as f64;
            let nodes: Vec<f64> = (1..=n).map(|i| grid.x_min + i as f64 * h).collect();
            let w: Vec<f64> = nodes.iter().map(|&x| 1.0 + g * x).collect();
            let lower: Vec<f64> = w.iter().map(|wi| -kin * (wi * wi / (h * h) - g * wi / (2.0 * h))).collect();
            let upper: Vec<f64> = w.iter().map(|wi| -kin * (wi * wi / (h * h) + g * wi / (2.0 * h))).collect();
            let diag = nodes
                .iter()
                .zip(&w)
                .map(|(&x, wi)| Ok(2.0 * kin * wi * wi / (h * h) + potential_value(params, x)?))
                .collect::<Result<Vec<_>>>()?;
            let mut off = Vec::with_capacity(n - 1);
            // phi = Delta^-1 psi with delta_{i+1} / delta_i = sqrt(U_i / L_{i+1}).
            let mut ln_delta = vec![0.0; n];
            for i in 0..n - 1 {
                let prod = upper[i] * lower[i + 1];
                if !(prod > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "raw stencil not symmetrizable at x = {}: refine the grid",
                        nodes[i]
                    )));
                }
                off.push(-prod.sqrt());
                ln_delta[i + 1] = ln_delta[i] + 0.5 * (upper[i] / lower[i + 1]).ln();
            }
            let scale = ln_delta.iter().map(|l| (-l).exp()).collect();
            Ok(DiscreteHamiltonian { matrix: Tridiagonal::new(diag, off)?, nodes, scale, method })
        }
    }
}

/// One extrapolated level.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericalLevel {
    pub index: usize,
    /// `(4 E(h/2) - E(h)) / 3` over the two finest grids.
    pub energy: f64,
    /// `|E(h) - E(h/2)|` over the two finest grids.
    pub convergence: f64,
    /// `|E(x_min) - E(10 x_min)|` on the coarsest grid; NaN when `10 x_min`
    /// does not fit inside the grid.
    pub xmin_shift: f64,
    /// Raw eigenvalue on every refinement, coarsest first.
    pub sequence: Vec<f64>,
}

impl NumericalLevel {
    /// Successive ratios `|E_r - E_{r+1}| / |E_{r+1} - E_{r+2}|`.
    pub fn convergence_ratios(&self) -> Vec<f64> {
        let diffs: Vec<f64> = self.sequence.windows(2).map(|w| (w[0] - w[1]).abs()).collect();
        diffs.windows(2).map(|w| w[0] / w[1]).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericalSpectrum {
    pub levels: Vec<NumericalLevel>,
    pub grid: GridSpec,
    pub method: Discretization,
    pub deformation: Deformation,
    pub params: PotentialParams,
}

fn metadata_header(
    out: &mut String,
    grid: &GridSpec,
    method: Discretization,
    d: Deformation,
    params: &PotentialParams,
) {
    let _ = writeln!(out, "# method={method}");
    let _ = writeln!(out, "# x_min={:e}", grid.x_min);
    let _ = writeln!(out, "# x_max={:e}", grid.x_max);
    let _ = writeln!(out, "# num_points={}", grid.num_points);
    let _ = writeln!(out, "# refinements={}", grid.refinements);
    let _ = writeln!(out, "# extrapolation=richardson-h2");
    let _ = writeln!(out, "# gamma={}", d.gamma());
    let _ = writeln!(out, "# A={}", params.a);
    let _ = writeln!(out, "# B={}", params.b);
}

impl NumericalSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        metadata_header(&mut out, &self.grid, self.method, self.deformation, &self.params);
        out.push_str("index,energy,convergence,xmin_shift\n");
        for l in &self.levels {
            let _ = writeln!(out, "{},{:.12},{:.3e},{:.3e}", l.index, l.energy, l.convergence, l.xmin_shift);
        }
        out
    }
}

fn bound_eigenvalues(
    units: &UnitSystem,
    d: Deformation,
    params: &PotentialParams,
    grid: &GridSpec,
    method: Discretization,
    k: usize,
) -> Result<Vec<f64>> {
    let h = build_discrete_hamiltonian(units, d, params, grid, method)?;
    Ok(h.matrix.eigenvalues_below(0.0, k, BISECTION_TOL))
}

/// Up to `k` levels; fewer if the grids hold fewer bound states.
fn solve_partial(
    units: &UnitSystem,
    d: Deformation,
    params: &PotentialParams,
    grid: &GridSpec,
    method: Discretization,
    k: usize,
) -> Result<NumericalSpectrum> {
    let mut per_grid = Vec::with_capacity(grid.refinements);
    for r in 0..grid.refinements {
        per_grid.push(bound_eigenvalues(units, d, params, &grid.refined(r), method, k)?);
    }
    // x_min sensitivity, skipped when the shifted boundary would eat the box
    let shifted = if 10.0 * grid.x_min < 0.5 * grid.x_max {
        bound_eigenvalues(units, d, params, &grid.with_x_min(10.0 * grid.x_min)?, method, k)?
    } else {
        Vec::new()
    };
    let found = per_grid.iter().map(Vec::len).min().unwrap_or(0);
    let levels = (0..found)
        .map(|i| {
            let sequence: Vec<f64> = per_grid.iter().map(|e| e[i]).collect();
            let coarse = sequence[sequence.len() - 2];
            let fine = sequence[sequence.len() - 1];
            NumericalLevel {
                index: i,
                energy: (4.0 * fine - coarse) / 3.0,
                convergence: (coarse - fine).abs(),
                xmin_shift: shifted.get(i).map_or(f64::NAN, |e| (e - sequence[0]).abs()),
                sequence,
            }
        })
        .collect();
    Ok(NumericalSpectrum { levels, grid: *grid, method, deformation: d, params: *params })
}

/// The `k` lowest bound levels, each bisected to [`BISECTION_TOL`] on every
/// refinement and Richardson-extrapolated.
pub fn solve_numerical_spectrum(
    units: &UnitSystem,
    d: Deformation,
    params: &PotentialParams,
    grid: &GridSpec,
    method: Discretization,
    k: usize,
) -> Result<NumericalSpectrum> {
    if k == 0 {
        return Err(Error::InvalidParameter("level count must be at least 1".into()));
    }
    let spectrum = solve_partial(units, d, params, grid, method, k)?;
    if spectrum.levels.len() < k {
        return Err(Error::TooFewBoundStates { found: spectrum.levels.len(), requested: k });
    }
    Ok(spectrum)
}

/// Eigenvector of level `k` on the coarsest grid, returned as `phi(x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfunction {
    pub energy: f64,
    pub x: Vec<f64>,
    pub phi: Vec<f64>,
}

impl Eigenfunction {
    pub fn nodes(&self) -> usize {
        sign_changes(&self.phi, 1e-6)
    }
}

pub fn numerical_eigenfunction(
    units: &UnitSystem,
    d: Deformation,
    params: &PotentialParams,
    grid: &GridSpec,
    method: Discretization,
    k: usize,
) -> Result<Eigenfunction> {
    let h = build_discrete_hamiltonian(units, d, params, grid, method)?;
    let energies = h.matrix.eigenvalues_below(0.0, k + 1, BISECTION_TOL);
    let energy = *energies.get(k).ok_or(Error::TooFewBoundStates { found: energies.len(), requested: k + 1 })?;
    let psi = h.matrix.eigenvector(energy);
    Ok(Eigenfunction { energy, x: h.nodes.clone(), phi: h.to_phi(&psi) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
    /// The grid holds no bound level at this index.
    Missing,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Missing => "missing",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckRow {
    pub n: u32,
    pub analytic: f64,
    pub physical: bool,
    pub numeric: Option<NumericalLevel>,
    pub abs_gap: f64,
    pub rel_gap: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub rows: Vec<CrossCheckRow>,
    pub tolerance: f64,
    /// Verdicts are binding only for the constant-mass problem.
    pub asserted: bool,
    pub grid: GridSpec,
    pub method: Discretization,
    pub deformation: Deformation,
    pub params: PotentialParams,
}

impl CrossCheck {
    /// True unless an asserted row failed.
    pub fn passed(&self) -> bool {
        !self.asserted || self.rows.iter().all(|r| r.verdict == Verdict::Match)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        metadata_header(&mut out, &self.grid, self.method, self.deformation, &self.params);
        let _ = writeln!(out, "# tolerance={:e}", self.tolerance);
        let _ = writeln!(out, "# asserted={}", self.asserted);
        out.push_str("n,physical,E_analytic,E_numeric,abs_gap,rel_gap,convergence,verdict\n");
        for r in &self.rows {
            let (num, conv) = match &r.numeric {
                Some(l) => (format!("{:.10}", l.energy), format!("{:.3e}", l.convergence)),
                None => (String::new(), String::new()),
            };
            let gap = |v: f64| if v.is_nan() { String::new() } else { format!("{v:.3e}") };
            let _ = writeln!(
                out,
                "{},{},{:.10},{},{},{},{},{}",
                r.n,
                r.physical,
                r.analytic,
                num,
                gap(r.abs_gap),
                gap(r.rel_gap),
                conv,
                r.verdict
            );
        }
        out
    }
}

/// Analytic levels `0..=n_max` against the numerical spectrum on `grid`,
/// matched by index. `tolerance` is relative.
pub fn crosscheck_analytic(
    units: &UnitSystem,
    d: Deformation,
    params: &PotentialParams,
    n_max: u32,
    grid: &GridSpec,
    method: Discretization,
    tolerance: f64,
) -> Result<CrossCheck> {
    let numeric = solve_partial(units, d, params, grid, method, n_max as usize + 1)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let entry = energy_analytic(n, units, d, params)?;
        let level = numeric.levels.get(n as usize).cloned();
        let (abs_gap, rel_gap, verdict) = match &level {
            Some(l) => {
                let gap = (l.energy - entry.energy).abs();
                let rel = gap / entry.energy.abs();
                (gap, rel, if rel <= tolerance { Verdict::Match } else { Verdict::Mismatch })
            }
            None => (f64::NAN, f64::NAN, Verdict::Missing),
        };
        rows.push(CrossCheckRow {
            n,
            analytic: entry.energy,
            physical: entry.physical,
            numeric: level,
            abs_gap,
            rel_gap,
            verdict,
        });
    }
    Ok(CrossCheck {
        rows,
        tolerance,
        asserted: d.is_constant_mass(),
        grid: *grid,
        method,
        deformation: d,
        params: *params,
    })
}
