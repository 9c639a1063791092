//! Run configuration, table and sweep generation, and the CSV writers
//! behind the `pdm-spectra` binary.
//!
//! All output is deterministic: fixed precision, fixed column order, and
//! metadata lines (`# key=value`) that depend only on the configuration.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use crate::model::{preset, Deformation, MoleculePreset, PotentialParams, Preset, UnitMode, UnitSystem};
use crate::spectrum::{energy_analytic, SpectrumEntry};
use crate::verifier::{crosscheck_analytic, CrossCheck, Discretization, GridSpec};
use crate::wavefunction::{extent, log_z_samples, samples_csv, WavefunctionSpec};
use crate::{Error, Result};

pub const TOOL_VERSION: &str = concat!("pdm-spectra ", env!("CARGO_PKG_VERSION"));

/// Columns of both tables.
pub const TABLE_GAMMAS: [f64; 4] = [0.0, 0.1, 0.5, 1.0];
pub const TABLE_LEVELS: u32 = 6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

const DEFAULT_VERIFY_TOL: f64 = 1e-3;
const DEFAULT_POINTS: usize = 4000;
const DEFAULT_SWEEP: &str = "0:2:41";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Spectrum,
    Wavefunction,
    Verify,
    Table,
    Sweep,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Spectrum => "spectrum",
            Mode::Wavefunction => "wavefunction",
            Mode::Verify => "verify",
            Mode::Table => "table",
            Mode::Sweep => "sweep",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectrum" => Ok(Mode::Spectrum),
            "wavefunction" => Ok(Mode::Wavefunction),
            "verify" => Ok(Mode::Verify),
            "table" => Ok(Mode::Table),
            "sweep" => Ok(Mode::Sweep),
            other => Err(Error::Config(format!("unknown mode '{other}'"))),
        }
    }
}

/// Everything a run needs. Unset fields take per-mode defaults.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub units: Option<UnitMode>,
    /// A comma list (`0,0.1,0.5`) or a range `start:stop:count`.
    pub gamma: Option<String>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub preset: Option<String>,
    /// Number of levels, `n = 0..levels`.
    pub levels: Option<u32>,
    /// A single level for `wavefunction` and `sweep`.
    pub n: Option<u32>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub verbose: bool,
    /// Mass: in units of `m` (atomic) or amu (molecular).
    pub mu: Option<f64>,
    /// Coarsest verifier grid size.
    pub points: Option<usize>,
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::Config(format!("{key}: '{v}' is not a finite number")))
}

fn parse_u32(key: &str, v: &str) -> Result<u32> {
    v.trim().parse().map_err(|_| Error::Config(format!("{key}: '{v}' is not a non-negative integer")))
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        Self { mode: Some(mode), ..Self::default() }
    }

    /// Parse flat `key = value` text; `#` starts a comment.
    pub fn parse_config(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "mode" => self.mode = Some(value.parse()?),
            "units" => self.units = Some(value.parse()?),
            "gamma" => self.gamma = Some(value.to_string()),
            "A" | "a" => self.a = Some(parse_f64(key, value)?),
            "B" | "b" => self.b = Some(parse_f64(key, value)?),
            "preset" => self.preset = Some(value.to_string()),
            "levels" => self.levels = Some(parse_u32(key, value)?),
            "n" => self.n = Some(parse_u32(key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "tol" => self.tol = Some(parse_f64(key, value)?),
            "verbose" => {
                self.verbose = match value {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    other => return Err(Error::Config(format!("verbose: '{other}' is not a boolean"))),
                }
            }
            "mu" => self.mu = Some(parse_f64(key, value)?),
            "points" => self.points = Some(value.parse().map_err(|_| Error::Config(format!("points: '{value}'")))?),
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merge(self, over: RunConfig) -> Self {
        Self {
            mode: over.mode.or(self.mode),
            units: over.units.or(self.units),
            gamma: over.gamma.or(self.gamma),
            a: over.a.or(self.a),
            b: over.b.or(self.b),
            preset: over.preset.or(self.preset),
            levels: over.levels.or(self.levels),
            n: over.n.or(self.n),
            out: over.out.or(self.out),
            tol: over.tol.or(self.tol),
            verbose: over.verbose || self.verbose,
            mu: over.mu.or(self.mu),
            points: over.points.or(self.points),
        }
    }
}

/// Parse a gamma list or `start:stop:count` range; every value must be a
/// finite number `>= 0`.
pub fn parse_gammas(spec: &str) -> Result<Vec<f64>> {
    let values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!("gamma range '{spec}' must be start:stop:count")));
        }
        let start = parse_f64("gamma", parts[0])?;
        let stop = parse_f64("gamma", parts[1])?;
        let count = parse_u32("gamma", parts[2])? as usize;
        if count < 2 || stop < start {
            return Err(Error::Config(format!("gamma range '{spec}' needs stop >= start and count >= 2")));
        }
        let step = (stop - start) / (count - 1) as f64;
        (0..count).map(|i| if i + 1 == count { stop } else { start + step * i as f64 }).collect()
    } else {
        spec.split(',').map(|v| parse_f64("gamma", v)).collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        return Err(Error::Config("empty gamma list".into()));
    }
    if let Some(bad) = values.iter().find(|g| **g < 0.0) {
        return Err(Error::Config(format!("gamma must be >= 0, got {bad}")));
    }
    Ok(values)
}

/// Physics resolved from a config.
#[derive(Debug, Clone, PartialEq)]
pub struct Setup {
    pub label: String,
    pub units: UnitSystem,
    pub params: PotentialParams,
    pub molecule: Option<MoleculePreset>,
}

impl Setup {
    pub fn resolve(cfg: &RunConfig) -> Result<Self> {
        let found = cfg.preset.as_deref().map(preset).transpose().map_err(|e| Error::Config(e.to_string()))?;
        let mode = cfg.units.unwrap_or(match &found {
            Some(Preset::Molecule(_)) => UnitMode::Molecular,
            _ => UnitMode::Atomic,
        });
        let mut molecule = match &found {
            Some(Preset::Molecule(m)) => Some(m.clone()),
            _ => None,
        };
        if let (Some(m), Some(mu)) = (&mut molecule, cfg.mu) {
            m.reduced_mass = mu;
        }
        let base = found.as_ref().map(Preset::potential);
        let a = cfg.a.or(base.map(|p| p.a)).unwrap_or(0.0);
        let b = cfg.b.or(base.map(|p| p.b)).ok_or_else(|| Error::Config("set --preset or --B".into()))?;
        let params = PotentialParams::new(a, b).map_err(|e| Error::Config(e.to_string()))?;
        if cfg.a.is_some() || cfg.b.is_some() {
            // Explicit A/B override a molecule's constants; keep its mass only.
            if let Some(m) = &molecule {
                molecule = MoleculePreset::from_potential(m.name.clone(), &params, m.reduced_mass).ok();
            }
        }
        let units = match mode {
            UnitMode::Atomic => UnitSystem::atomic_with_mass(cfg.mu.unwrap_or(1.0)),
            UnitMode::Molecular => {
                let mu = cfg.mu.or(molecule.as_ref().map(|m| m.reduced_mass));
                UnitSystem::molecular(mu.ok_or_else(|| Error::Config("molecular units need --mu".into()))?)
            }
        }
        .map_err(|e| Error::Config(e.to_string()))?;
        let label = cfg.preset.clone().unwrap_or_else(|| "custom".to_string());
        Ok(Self { label, units, params, molecule })
    }

    fn metadata(&self, out: &mut String, mode: Mode) {
        let _ = writeln!(out, "# {TOOL_VERSION}");
        let _ = writeln!(out, "# mode={mode}");
        let _ = writeln!(out, "# preset={}", self.label);
        let _ = writeln!(out, "# units={}", self.units.mode());
        let _ = writeln!(out, "# hbar={}", self.units.hbar());
        let _ = writeln!(out, "# mass={}", self.units.mass());
        let _ = writeln!(out, "# A={}", self.params.a);
        let _ = writeln!(out, "# B={}", self.params.b);
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TableCell {
    pub n: u32,
    pub gamma: f64,
    /// `-E` for the Coulomb table, `E - V_min` for a molecule.
    pub value: f64,
    pub physical: bool,
    pub entry: SpectrumEntry,
}

/// Fixed decimals with ties rounded away from zero. The nudge absorbs the
/// binary representation error of decimal ties such as `12.25125`.
pub fn format_fixed(v: f64, decimals: usize) -> String {
    let scale = 10f64.powi(decimals as i32);
    let rounded = (v * scale * (1.0 + 8.0 * f64::EPSILON)).round() / scale;
    format!("{rounded:.decimals$}")
}

/// Six significant digits as the Coulomb table prints them.
pub fn format_coulomb_cell(v: f64) -> String {
    format_fixed(v, if v.abs() >= 10.0 { 4 } else { 5 })
}

pub fn format_molecule_cell(v: f64) -> String {
    format_fixed(v, 6)
}

fn level(n: u32, units: &UnitSystem, gamma: f64, params: &PotentialParams) -> Result<SpectrumEntry> {
    energy_analytic(n, units, Deformation::new(gamma)?, params)
}

/// Cells of the Coulomb table: `A = 0`, `B = 5`, `m = hbar = 1`.
pub fn coulomb_cells() -> Result<Vec<TableCell>> {
    let units = UnitSystem::atomic();
    let params = PotentialParams::coulomb(5.0)?;
    let mut cells = Vec::new();
    for n in 0..TABLE_LEVELS {
        for &gamma in &TABLE_GAMMAS {
            let entry = level(n, &units, gamma, &params)?;
            cells.push(TableCell { n, gamma, value: -entry.energy, physical: entry.physical, entry });
        }
    }
    Ok(cells)
}

/// Cells of the molecule table in the `E - V_min` convention.
pub fn molecule_cells(m: &MoleculePreset) -> Result<Vec<TableCell>> {
    let units = m.units();
    let params = m.potential();
    let mut cells = Vec::new();
    for n in 0..TABLE_LEVELS {
        for &gamma in &TABLE_GAMMAS {
            let entry = level(n, &units, gamma, &params)?;
            let value = entry.energy_shifted.ok_or(Error::NoInteriorMinimum)?;
            cells.push(TableCell { n, gamma, value, physical: entry.physical, entry });
        }
    }
    Ok(cells)
}

fn wide_table(cells: &[TableCell], fmt_cell: fn(f64) -> String) -> String {
    let mut out = String::from("n");
    for g in TABLE_GAMMAS {
        let _ = write!(out, ",gamma={g}");
    }
    out.push('\n');
    for row in cells.chunks(TABLE_GAMMAS.len()) {
        let _ = write!(out, "{}", row[0].n);
        for c in row {
            let mark = if c.physical { "" } else { "*" };
            let _ = write!(out, ",{}{mark}", fmt_cell(c.value));
        }
        out.push('\n');
    }
    out
}

fn table_notes(out: &mut String) {
    out.push_str("# gamma columns in inverse length units\n");
    out.push_str("# a trailing * marks a level past the normalizability bound\n");
}

/// The Coulomb table as CSV, `-E` per cell.
pub fn table_coulomb() -> Result<String> {
    let setup = Setup {
        label: "coulomb-B5".into(),
        units: UnitSystem::atomic(),
        params: PotentialParams::coulomb(5.0)?,
        molecule: None,
    };
    let mut out = String::new();
    setup.metadata(&mut out, Mode::Table);
    out.push_str("# quantity=-E\n");
    table_notes(&mut out);
    out.push_str(&wide_table(&coulomb_cells()?, format_coulomb_cell));
    Ok(out)
}

/// A molecule table as CSV, `E - V_min = E + D_e` per cell, in eV.
pub fn table_molecule(m: &MoleculePreset) -> Result<String> {
    let setup = Setup { label: m.name.clone(), units: m.units(), params: m.potential(), molecule: Some(m.clone()) };
    let mut out = String::new();
    setup.metadata(&mut out, Mode::Table);
    let _ = writeln!(out, "# D_e={} eV", m.dissociation_energy);
    let _ = writeln!(out, "# r_e={} Angstrom", m.equilibrium_distance);
    let _ = writeln!(out, "# mu={} amu", m.reduced_mass);
    out.push_str("# quantity=E-V_min (eV)\n");
    table_notes(&mut out);
    out.push_str(&wide_table(&molecule_cells(m)?, format_molecule_cell));
    Ok(out)
}

/// Which quantity a sweep reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepQuantity {
    MinusEnergy,
    ShiftedEnergy,
}

impl SweepQuantity {
    fn column(self) -> &'static str {
        match self {
            SweepQuantity::MinusEnergy => "minus_E",
            SweepQuantity::ShiftedEnergy => "E_shifted",
        }
    }

    fn of(self, entry: &SpectrumEntry) -> Result<f64> {
        match self {
            SweepQuantity::MinusEnergy => Ok(-entry.energy),
            SweepQuantity::ShiftedEnergy => entry.energy_shifted.ok_or(Error::NoInteriorMinimum),
        }
    }
}

/// `(gamma, value, physical)` rows for level `n`.
pub fn sweep_rows(
    units: &UnitSystem,
    params: &PotentialParams,
    n: u32,
    gammas: &[f64],
    quantity: SweepQuantity,
) -> Result<Vec<(f64, f64, bool)>> {
    gammas
        .iter()
        .map(|&g| {
            let e = level(n, units, g, params)?;
            Ok((g, quantity.of(&e)?, e.physical))
        })
        .collect()
}

pub fn sweep_gamma(
    units: &UnitSystem,
    params: &PotentialParams,
    n: u32,
    gammas: &[f64],
    quantity: SweepQuantity,
) -> Result<String> {
    let mut out = format!("gamma,{},physical\n", quantity.column());
    for (g, v, phys) in sweep_rows(units, params, n, gammas, quantity)? {
        let _ = writeln!(out, "{g:.6},{v:.12},{phys}");
    }
    Ok(out)
}

/// Least-squares `c0 + c1 x + c2 x^2` and the largest absolute residual.
pub fn fit_quadratic(points: &[(f64, f64)]) -> Result<([f64; 3], f64)> {
    if points.len() < 3 {
        return Err(Error::InvalidParameter("quadratic fit needs 3 points".into()));
    }
    // Normal equations, centred and scaled for conditioning.
    let mean = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
    let span = points.iter().map(|p| (p.0 - mean).abs()).fold(0.0, f64::max).max(1e-300);
    let mut m = [[0.0; 4]; 3];
    for &(x, y) in points {
        let t = (x - mean) / span;
        let basis = [1.0, t, t * t];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += basis[i] * basis[j];
            }
            m[i][3] += basis[i] * y;
        }
    }
    for col in 0..3 {
        let pivot = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        m.swap(col, pivot);
        let pivot_row = m[col];
        for (r, row) in m.iter_mut().enumerate() {
            if r != col {
                let f = row[col] / pivot_row[col];
                row.iter_mut().zip(pivot_row).skip(col).for_each(|(v, p)| *v -= f * p);
            }
        }
    }
    let t = [m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]];
    let eval = |x: f64| {
        let s = (x - mean) / span;
        t[0] + t[1] * s + t[2] * s * s
    };
    let resid = points.iter().map(|&(x, y)| (eval(x) - y).abs()).fold(0.0, f64::max);
    // Back to powers of x.
    let (a, b) = (1.0 / span, -mean / span);
    let coeffs = [t[0] + t[1] * b + t[2] * b * b, t[1] * a + 2.0 * t[2] * a * b, t[2] * a * a];
    Ok((coeffs, resid))
}

/// Output of [`run`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub csv: String,
    pub exit_code: i32,
    /// Per-cell trace lines when `verbose` is set.
    pub trace: Vec<String>,
}

fn trace_entry(trace: &mut Vec<String>, e: &SpectrumEntry) {
    let t = &e.terms;
    trace.push(format!(
        "n={} gamma={} d={:.12} deformation_term={:.12} coulomb_term={:.12} bracket={:.12} E={:.12} physical={}",
        e.n,
        e.deformation.gamma(),
        t.denominator,
        t.deformation_term,
        t.coulomb_term,
        t.bracket,
        e.energy,
        e.physical
    ));
}

/// Execute a configuration and return its CSV. Nothing is written; see
/// [`execute`] for the file and exit-code handling.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    let mode = cfg.mode.ok_or_else(|| Error::Config("no mode given".into()))?;
    let gammas = cfg.gamma.as_deref().map(parse_gammas).transpose()?;
    if cfg.levels == Some(0) {
        return Err(Error::Config("levels must be >= 1".into()));
    }
    let mut trace = Vec::new();
    let mut exit_code = EXIT_OK;
    let csv = match mode {
        Mode::Table => {
            let name = cfg.preset.as_deref().unwrap_or("coulomb-B5");
            let table = match preset(name).map_err(|e| Error::Config(e.to_string()))? {
                Preset::Molecule(m) => {
                    let m = if let Some(mu) = cfg.mu { MoleculePreset { reduced_mass: mu, ..m } } else { m };
                    if cfg.verbose {
                        molecule_cells(&m)?.iter().for_each(|c| trace_entry(&mut trace, &c.entry));
                    }
                    table_molecule(&m)?
                }
                Preset::Atomic { .. } => {
                    if cfg.verbose {
                        coulomb_cells()?.iter().for_each(|c| trace_entry(&mut trace, &c.entry));
                    }
                    table_coulomb()?
                }
            };
            table
        }
        Mode::Spectrum => {
            let setup = Setup::resolve(cfg)?;
            let gammas = gammas.unwrap_or_else(|| vec![0.0]);
            let levels = cfg.levels.unwrap_or(TABLE_LEVELS);
            let mut out = String::new();
            setup.metadata(&mut out, mode);
            out.push_str("gamma,n,E,E_shifted,physical,d,d_critical\n");
            for &g in &gammas {
                for n in 0..levels {
                    let e = level(n, &setup.units, g, &setup.params)?;
                    if cfg.verbose {
                        trace_entry(&mut trace, &e);
                    }
                    let shifted = e.energy_shifted.map_or(String::new(), |v| format!("{v:.12}"));
                    let crit = e.validity.critical.map_or("inf".to_string(), |c| format!("{c:.12}"));
                    let _ = writeln!(
                        out,
                        "{g},{n},{:.12},{shifted},{},{:.12},{crit}",
                        e.energy, e.physical, e.validity.denominator
                    );
                }
            }
            out
        }
        Mode::Sweep => {
            let setup = Setup::resolve(cfg)?;
            let gammas = match gammas {
                Some(g) => g,
                None => parse_gammas(DEFAULT_SWEEP)?,
            };
            let n = cfg.n.unwrap_or(0);
            let quantity =
                if setup.molecule.is_some() { SweepQuantity::ShiftedEnergy } else { SweepQuantity::MinusEnergy };
            if cfg.verbose {
                for &g in &gammas {
                    trace_entry(&mut trace, &level(n, &setup.units, g, &setup.params)?);
                }
            }
            let mut out = String::new();
            setup.metadata(&mut out, mode);
            let _ = writeln!(out, "# n={n}");
            out.push_str(&sweep_gamma(&setup.units, &setup.params, n, &gammas, quantity)?);
            out
        }
        Mode::Wavefunction => {
            let setup = Setup::resolve(cfg)?;
            let gammas = gammas.ok_or_else(|| Error::Config("wavefunction needs --gamma".into()))?;
            let &[g] = gammas.as_slice() else {
                return Err(Error::Config("wavefunction takes a single gamma".into()));
            };
            let n = cfg.n.unwrap_or(0);
            let entry = level(n, &setup.units, g, &setup.params)?;
            if cfg.verbose {
                trace_entry(&mut trace, &entry);
            }
            let spec = WavefunctionSpec::new(entry)?.normalized()?;
            let x_max = extent(&spec, 1e-12)?;
            let mut out = String::new();
            setup.metadata(&mut out, mode);
            let _ = writeln!(out, "# gamma={g}");
            let _ = writeln!(out, "# n={n}");
            let _ = writeln!(out, "# E={:.12}", spec.entry.energy);
            let _ = writeln!(out, "# measure=dx");
            let _ = writeln!(out, "# ln_N={:.12}", spec.log_norm());
            out.push_str(&samples_csv(&spec, &log_z_samples(g, x_max, 400))?);
            out
        }
        Mode::Verify => {
            let setup = Setup::resolve(cfg)?;
            let gammas = gammas.unwrap_or_else(|| vec![0.0]);
            let levels = cfg.levels.unwrap_or(3);
            let tol = cfg.tol.unwrap_or(DEFAULT_VERIFY_TOL);
            let points = cfg.points.unwrap_or(DEFAULT_POINTS);
            let mut out = String::new();
            setup.metadata(&mut out, mode);
            let _ = writeln!(out, "# method={}", Discretization::Liouville);
            let _ = writeln!(out, "# points={points}");
            let _ = writeln!(out, "# tolerance={tol:e}");
            out.push_str("gamma,n,physical,E_analytic,E_numeric,rel_gap,convergence,verdict,asserted\n");
            for &g in &gammas {
                let d = Deformation::new(g)?;
                let grid = GridSpec::for_levels(&setup.units, d, &setup.params, levels as usize, points)?;
                let check = crosscheck_analytic(
                    &setup.units,
                    d,
                    &setup.params,
                    levels - 1,
                    &grid,
                    Discretization::Liouville,
                    tol,
                )?;
                if !check.passed() {
                    exit_code = EXIT_VERIFY;
                }
                write_check_rows(&mut out, &check);
            }
            out
        }
    };
    Ok(RunOutput { csv, exit_code, trace })
}

fn write_check_rows(out: &mut String, check: &CrossCheck) {
    for r in &check.rows {
        let (num, conv) = match &r.numeric {
            Some(l) => (format!("{:.10}", l.energy), format!("{:.3e}", l.convergence)),
            None => (String::new(), String::new()),
        };
        let rel = if r.rel_gap.is_nan() { String::new() } else { format!("{:.3e}", r.rel_gap) };
        let _ = writeln!(
            out,
            "{},{},{},{:.10},{num},{rel},{conv},{},{}",
            check.deformation.gamma(),
            r.n,
            r.physical,
            r.analytic,
            r.verdict,
            check.asserted
        );
    }
}

/// Run, then write the CSV to `cfg.out` or `stdout` and trace lines to
/// `stderr`. Errors produce one diagnostic line and no output file.
pub fn execute(cfg: &RunConfig, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32 {
    let result = run(cfg).and_then(|r| {
        for line in &r.trace {
            writeln!(stderr, "{line}")?;
        }
        match &cfg.out {
            Some(path) => std::fs::write(path, &r.csv)?,
            None => stdout.write_all(r.csv.as_bytes())?,
        }
        Ok(r.exit_code)
    });
    match result {
        Ok(code) => {
            if code == EXIT_VERIFY {
                let _ = writeln!(stderr, "error: constant-mass verification failed");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_CONFIG
        }
    }
}
