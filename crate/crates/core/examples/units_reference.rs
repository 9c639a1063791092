// Pinned constants, unit systems and the preset registry.
//
// ```bash
// cargo run -p pdm-spectra --example units_reference
// ```

use std::fmt::Write as _;

use pdm_spectra::model::{mass_profile, units_reference, Deformation, UnitSystem};

pub fn run_example() -> pdm_spectra::Result<String> {
    let mut out = units_reference();
    let co = UnitSystem::molecular(6.8606719)?;
    writeln!(out, "\nCO: hbar^2/m = {:.9e} eV A^2", co.hbar2_over_m()).unwrap();
    let d = Deformation::new(0.5)?;
    out.push_str("m(x)/m for gamma = 0.5:");
    for x in [0.0, 1.0, 2.0, 4.0] {
        write!(out, " x={x}: {:.4}", mass_profile(&UnitSystem::atomic(), d, x)?).unwrap();
    }
    out.push('\n');
    Ok(out)
}

#[allow(dead_code)]
fn main() -> pdm_spectra::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
