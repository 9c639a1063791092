//! Physical parameters, unit systems, the potential, the mass profile and the
//! deformed derivative `D_gamma = (1 + gamma x) d/dx`.

use std::fmt;

use crate::{Error, Result};

/// hbar * c in eV * Angstrom.
pub const HBAR_C_EV_ANGSTROM: f64 = 1973.269804;
/// One atomic mass unit times c^2, in eV.
pub const AMU_EV: f64 = 931.494_102_42e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitMode {
    /// hbar = m = 1, dimensionless lengths and energies.
    Atomic,
    /// Energies in eV, lengths in Angstrom, masses in amu.
    Molecular,
}

impl fmt::Display for UnitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitMode::Atomic => f.write_str("atomic"),
            UnitMode::Molecular => f.write_str("molecular"),
        }
    }
}

impl std::str::FromStr for UnitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "atomic" => Ok(UnitMode::Atomic),
            "molecular" => Ok(UnitMode::Molecular),
            other => Err(Error::Config(format!("unknown unit mode '{other}' (expected atomic|molecular)"))),
        }
    }
}

/// hbar and the constant mass `m` in a consistent unit system.
///
/// In molecular mode both are stored with `c = 1`: `hbar` is hbar*c in
/// eV*Angstrom and `mass` is m*c^2 in eV, so `hbar^2 / mass` comes out in
/// eV*Angstrom^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    hbar: f64,
    mass: f64,
    mode: UnitMode,
}

impl UnitSystem {
    pub fn new(hbar: f64, mass: f64, mode: UnitMode) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidParameter(format!("hbar must be > 0, got {hbar}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidParameter(format!("mass must be > 0, got {mass}")));
        }
        Ok(Self { hbar, mass, mode })
    }

    /// hbar = m = 1.
    pub fn atomic() -> Self {
        Self { hbar: 1.0, mass: 1.0, mode: UnitMode::Atomic }
    }

    /// Atomic units with a mass other than 1 (hbar = 1).
    pub fn atomic_with_mass(mass: f64) -> Result<Self> {
        Self::new(1.0, mass, UnitMode::Atomic)
    }

    /// eV / Angstrom / amu units for a particle of `mass_amu` (reduced mass).
    pub fn molecular(mass_amu: f64) -> Result<Self> {
        if !(mass_amu > 0.0) {
            return Err(Error::InvalidParameter(format!("reduced mass must be > 0 amu, got {mass_amu}")));
        }
        Self::new(HBAR_C_EV_ANGSTROM, mass_amu * AMU_EV, UnitMode::Molecular)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn mode(&self) -> UnitMode {
        self.mode
    }

    /// `hbar^2 / m`, the only combination the kinetic term needs.
    pub fn hbar2_over_m(&self) -> f64 {
        self.hbar * self.hbar / self.mass
    }

    pub fn with_mass(&self, mass: f64) -> Result<Self> {
        Self::new(self.hbar, mass, self.mode)
    }
}

/// Strengths of `V(x) = A/x^2 - B/x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    /// Inverse-square strength (energy * length^2).
    pub a: f64,
    /// Coulomb strength (energy * length).
    pub b: f64,
}

impl PotentialParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::InvalidParameter(format!("A must be >= 0, got {a}")));
        }
        if !b.is_finite() {
            return Err(Error::InvalidParameter(format!("B must be finite, got {b}")));
        }
        Ok(Self { a, b })
    }

    /// Pure Coulomb tail, `A = 0`.
    pub fn coulomb(b: f64) -> Result<Self> {
        Self::new(0.0, b)
    }

    /// Bound-state operations need an attractive tail.
    pub fn require_bound(&self) -> Result<()> {
        if self.b > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("bound states need B > 0, got {}", self.b)))
        }
    }
}

/// The mixing parameter `gamma` (1/length). `gamma = 0` is constant mass.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Deformation(f64);

impl Deformation {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma >= 0.0 && gamma.is_finite() {
            Ok(Self(gamma))
        } else {
            Err(Error::InvalidParameter(format!("gamma must be finite and >= 0, got {gamma}")))
        }
    }

    pub const fn none() -> Self {
        Self(0.0)
    }

    pub fn gamma(&self) -> f64 {
        self.0
    }

    pub fn is_constant_mass(&self) -> bool {
        self.0 == 0.0
    }

    /// `1 + gamma x`.
    pub fn stretch(&self, x: f64) -> f64 {
        1.0 + self.0 * x
    }
}

/// `V(x) = A/x^2 - B/x` for `x > 0`.
pub fn potential_value(params: &PotentialParams, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("potential needs x > 0, got {x}")));
    }
    Ok(params.a / (x * x) - params.b / x)
}

/// Position and depth of the well minimum: `x_min = 2A/B`, `V_min = -B^2/(4A)`.
pub fn potential_minimum(params: &PotentialParams) -> Result<(f64, f64)> {
    if params.a == 0.0 {
        return Err(Error::NoInteriorMinimum);
    }
    if !(params.b > 0.0) {
        return Err(Error::InvalidParameter(format!("well minimum needs B > 0, got {}", params.b)));
    }
    Ok((2.0 * params.a / params.b, -params.b * params.b / (4.0 * params.a)))
}

/// `m(x) = m (1 + gamma x)^-2`.
pub fn mass_profile(units: &UnitSystem, d: Deformation, x: f64) -> Result<f64> {
    let s = d.stretch(x);
    if s == 0.0 {
        return Err(Error::MassSingularity { x });
    }
    Ok(units.mass() / (s * s))
}

/// Samples of a function on the uniform grid `x0 + i h`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub x0: f64,
    pub h: f64,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(x0: f64, h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter(format!("grid spacing must be > 0, got {h}")));
        }
        Ok(Self { x0, h, values })
    }

    pub fn from_fn(x0: f64, h: f64, len: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..len).map(|i| f(x0 + i as f64 * h)).collect();
        Self::new(x0, h, values)
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.h
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn central(&self, i: usize) -> f64 {
        (self.values[i + 1] - self.values[i - 1]) / (2.0 * self.h)
    }
}

/// Central-difference estimate of `(1 + gamma x) f'(x)`.
///
/// Off-node points interpolate linearly between the two neighbouring nodal
/// estimates, so `x` must leave one node of margin on either side.
pub fn deformed_derivative(d: Deformation, f: &SampledFunction, x: f64) -> Result<f64> {
    let n = f.len();
    if n < 3 {
        return Err(Error::GridBoundary { x });
    }
    let t = (x - f.x0) / f.h;
    let nearest = t.round();
    let derivative = if (t - nearest).abs() <= 1e-9 {
        let i = nearest as isize;
        if i < 1 || i as usize >= n - 1 {
            return Err(Error::GridBoundary { x });
        }
        f.central(i as usize)
    } else {
        let i = t.floor() as isize;
        if i < 1 || i as usize + 1 >= n - 1 {
            return Err(Error::GridBoundary { x });
        }
        let i = i as usize;
        let w = t - i as f64;
        (1.0 - w) * f.central(i) + w * f.central(i + 1)
    };
    Ok(d.stretch(x) * derivative)
}

/// `D_gamma f` on every interior node; the result loses one node at each end.
///
/// Applying it twice gives `D_gamma^2 f`, so `-hbar^2/(2m) D_gamma^2` is the
/// deformed kinetic operator.
pub fn apply_deformed_derivative(d: Deformation, f: &SampledFunction) -> Result<SampledFunction> {
    if f.len() < 3 {
        return Err(Error::GridBoundary { x: f.x0 });
    }
    let values = (1..f.len() - 1).map(|i| d.stretch(f.x(i)) * f.central(i)).collect();
    SampledFunction::new(f.x0 + f.h, f.h, values)
}

/// Spectroscopic constants of a diatomic molecule.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculePreset {
    pub name: String,
    /// Dissociation energy (eV).
    pub dissociation_energy: f64,
    /// Equilibrium distance (Angstrom).
    pub equilibrium_distance: f64,
    /// Reduced mass (amu).
    pub reduced_mass: f64,
}

impl MoleculePreset {
    pub fn new(
        name: impl Into<String>,
        dissociation_energy: f64,
        equilibrium_distance: f64,
        reduced_mass: f64,
    ) -> Result<Self> {
        for (label, v) in [("D_e", dissociation_energy), ("r_e", equilibrium_distance), ("mu", reduced_mass)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{label} must be > 0, got {v}")));
            }
        }
        Ok(Self { name: name.into(), dissociation_energy, equilibrium_distance, reduced_mass })
    }

    /// Carbon monoxide. `D_e` and `r_e` are the values that regenerate the
    /// constant-mass CO energies of the tabulated inverse-square plus Coulomb
    /// spectrum; they are a calibration, not independently measured inputs.
    #[allow(clippy::approx_constant)] // r_e happens to be close to 2/sqrt(pi)
    pub fn carbon_monoxide() -> Self {
        Self {
            name: "CO".to_string(),
            dissociation_energy: 11.2256,
            equilibrium_distance: 1.1283,
            reduced_mass: 6.8606719,
        }
    }

    /// `A = D_e r_e^2`, `B = 2 D_e r_e`.
    pub fn potential(&self) -> PotentialParams {
        let (de, re) = (self.dissociation_energy, self.equilibrium_distance);
        PotentialParams { a: de * re * re, b: 2.0 * de * re }
    }

    /// Inverse of [`MoleculePreset::potential`]: `D_e = B^2/(4A)`, `r_e = 2A/B`.
    pub fn from_potential(name: impl Into<String>, params: &PotentialParams, reduced_mass: f64) -> Result<Self> {
        let (x_min, v_min) = potential_minimum(params)?;
        Self::new(name, -v_min, x_min, reduced_mass)
    }

    pub fn units(&self) -> UnitSystem {
        UnitSystem::molecular(self.reduced_mass).expect("preset mass validated at construction")
    }

    /// Energy scale `E0 = hbar^2 / (m r_e^2)`.
    pub fn e0(&self) -> f64 {
        self.units().hbar2_over_m() / (self.equilibrium_distance * self.equilibrium_distance)
    }
}

/// A named parameter set from the registry.
#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    Molecule(MoleculePreset),
    Atomic { name: String, params: PotentialParams },
}

impl Preset {
    pub fn name(&self) -> &str {
        match self {
            Preset::Molecule(m) => &m.name,
            Preset::Atomic { name, .. } => name,
        }
    }

    pub fn potential(&self) -> PotentialParams {
        match self {
            Preset::Molecule(m) => m.potential(),
            Preset::Atomic { params, .. } => *params,
        }
    }

    pub fn units(&self) -> UnitSystem {
        match self {
            Preset::Molecule(m) => m.units(),
            Preset::Atomic { .. } => UnitSystem::atomic(),
        }
    }
}

pub const PRESET_NAMES: [&str; 2] = ["CO", "coulomb-B5"];

pub fn preset(name: &str) -> Result<Preset> {
    match name {
        "CO" => Ok(Preset::Molecule(MoleculePreset::carbon_monoxide())),
        "coulomb-B5" => {
            Ok(Preset::Atomic { name: "coulomb-B5".to_string(), params: PotentialParams { a: 0.0, b: 5.0 } })
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

/// Plain-text reference of the pinned constants and presets.
pub fn units_reference() -> String {
    let mut out = String::new();
    out.push_str("# units reference\n");
    out.push_str("atomic: hbar = 1, m = 1, lengths and energies dimensionless\n");
    out.push_str("molecular: energies eV, lengths Angstrom, masses amu\n");
    out.push_str(&format!("hbar*c = {HBAR_C_EV_ANGSTROM} eV*Angstrom\n"));
    out.push_str(&format!("1 amu*c^2 = {AMU_EV:.2} eV\n"));
    for name in PRESET_NAMES {
        let p = preset(name).expect("registered preset");
        let pot = p.potential();
        match &p {
            Preset::Molecule(m) => out.push_str(&format!(
                "preset {name}: D_e = {} eV, r_e = {} Angstrom, mu = {} amu, A = {:.9} eV*A^2, B = {:.9} eV*A, E0 = {:.9e} eV\n",
                m.dissociation_energy,
                m.equilibrium_distance,
                m.reduced_mass,
                pot.a,
                pot.b,
                m.e0()
            )),
            Preset::Atomic { .. } => out.push_str(&format!(
                "preset {name}: atomic units, A = {}, B = {}\n",
                pot.a, pot.b
            )),
        }
    }
    out
}
