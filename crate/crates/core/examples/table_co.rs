// Carbon monoxide levels in eV, reported above the well bottom
// (`E - V_min = E + D_e`).
//
// ```bash
// cargo run -p pdm-spectra --example table_co
// ```

use std::fmt::Write as _;

use pdm_spectra::cli::table_molecule;
use pdm_spectra::model::{potential_minimum, MoleculePreset};

pub fn run_example() -> pdm_spectra::Result<String> {
    let co = MoleculePreset::carbon_monoxide();
    let params = co.potential();
    let (x_min, v_min) = potential_minimum(&params)?;
    let mut out = String::new();
    writeln!(out, "A = D_e r_e^2 = {:.6} eV A^2", params.a).unwrap();
    writeln!(out, "B = 2 D_e r_e = {:.6} eV A", params.b).unwrap();
    writeln!(out, "well bottom V({x_min:.4} A) = {v_min:.4} eV").unwrap();
    writeln!(out, "E0 = hbar^2/(m r_e^2) = {:.6e} eV\n", co.e0()).unwrap();
    out.push_str(&table_molecule(&co)?);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> pdm_spectra::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
