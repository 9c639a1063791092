// The closed-form normalization chain built from the large-argument split.
// At physical parameters it always hits Gamma and Beta poles; this example
// prints the pole report next to the quadrature normalization.
//
// ```bash
// cargo run -p pdm-spectra --example closed_form_normalization
// ```

use std::fmt::Write as _;

use pdm_spectra::model::{Deformation, PotentialParams, UnitSystem};
use pdm_spectra::wavefunction::{compare_level, paper_normalization_for};

pub fn run_example() -> pdm_spectra::Result<String> {
    let units = UnitSystem::atomic();
    let params = PotentialParams::coulomb(5.0)?;
    let mut out = String::new();
    for (n, gamma) in [(0, 0.1), (2, 0.5)] {
        writeln!(out, "## n = {n}, gamma = {gamma}").unwrap();
        out.push_str(&compare_level(n, &units, Deformation::new(gamma)?, &params).to_string());
    }
    out.push_str("## gamma = 0\n");
    out.push_str(&compare_level(0, &units, Deformation::none(), &params).to_string());

    // Away from the spectrum Gamma(-n) is finite but B(1-2q, -1) is not.
    let off = paper_normalization_for(0.37, -3.21, 1.13);
    writeln!(out, "## off-spectrum (n, p, q) = (0.37, -3.21, 1.13)").unwrap();
    writeln!(out, "Gamma1 = {:?}", off.gamma1.value()).unwrap();
    writeln!(out, "Gamma2 = {:?}", off.gamma2.value()).unwrap();
    for f in &off.pole_flags {
        writeln!(out, "  {f}").unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> pdm_spectra::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
