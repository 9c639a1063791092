// Ground-state energy against the mass-deformation parameter for both
// presets. The energy is a square of a bracket affine in `gamma`, so an
// exact quadratic fits the sweep to round-off.
//
// ```bash
// cargo run -p pdm-spectra --example gamma_sweep
// ```

use std::fmt::Write as _;

use pdm_spectra::cli::{fit_quadratic, parse_gammas, sweep_gamma, sweep_rows, SweepQuantity};
use pdm_spectra::model::{MoleculePreset, PotentialParams, UnitSystem};

pub fn run_example() -> pdm_spectra::Result<String> {
    let gammas = parse_gammas("0:2:21")?;
    let co = MoleculePreset::carbon_monoxide();
    let cases = [
        ("coulomb-B5", UnitSystem::atomic(), PotentialParams::coulomb(5.0)?, SweepQuantity::MinusEnergy),
        ("CO", co.units(), co.potential(), SweepQuantity::ShiftedEnergy),
    ];
    let mut out = String::new();
    for (name, units, params, quantity) in cases {
        writeln!(out, "## {name}").unwrap();
        out.push_str(&sweep_gamma(&units, &params, 0, &gammas, quantity)?);
        let pts: Vec<(f64, f64)> =
            sweep_rows(&units, &params, 0, &gammas, quantity)?.iter().map(|r| (r.0, r.1)).collect();
        let (c, resid) = fit_quadratic(&pts)?;
        writeln!(out, "fit: {:.9} + {:.9} g + {:.9} g^2, max residual {resid:.1e}\n", c[0], c[1], c[2]).unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> pdm_spectra::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
