// The general energy against its special cases: principal-number form,
// constant-mass limit, hydrogen-like limit, and the deformed Coulomb
// expansion under both readings of its level label.
//
// ```bash
// cargo run -p pdm-spectra --example limit_formulas
// ```

use std::fmt::Write as _;

use pdm_spectra::energy_analytic;
use pdm_spectra::model::{Deformation, PotentialParams, UnitSystem};
use pdm_spectra::spectrum::{
    energy_limit_constant_mass, energy_limit_coulomb, energy_limit_coulomb_pdm, energy_principal,
};

pub fn run_example() -> pdm_spectra::Result<String> {
    let units = UnitSystem::atomic();
    let mut out = String::new();
    let p = PotentialParams::new(1.0, 5.0)?;
    out.push_str("A = 1, B = 5, gamma = 0.3\nN  analytic  principal  constant-mass(gamma=0)\n");
    for n in 0..3 {
        let e = energy_analytic(n, &units, Deformation::new(0.3)?, &p)?.energy;
        let ep = energy_principal(n + 1, &units, Deformation::new(0.3)?, &p)?;
        let e0 = energy_limit_constant_mass(n + 1, &p, &units)?;
        writeln!(out, "{}  {e:.12}  {ep:.12}  {e0:.12}", n + 1).unwrap();
    }
    out.push_str("\nA = 0, B = 5\nN gamma  analytic  n'=2N  n'=2N-1  hydrogen(gamma=0)\n");
    let c = PotentialParams::coulomb(5.0)?;
    for n in 0..3 {
        for gamma in [0.0, 0.5] {
            let d = Deformation::new(gamma)?;
            let e = energy_analytic(n, &units, d, &c)?.energy;
            let lim = energy_limit_coulomb_pdm(n + 1, d, 5.0, &units)?;
            let h = energy_limit_coulomb(n + 1, 5.0, &units)?;
            writeln!(out, "{} {gamma}  {e:.10}  {:.10}  {:.10}  {h:.10}", n + 1, lim.consistent, lim.printed).unwrap();
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> pdm_spectra::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
