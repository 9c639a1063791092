// Finite-difference eigenvalues against the closed-form spectrum. At
// `gamma = 0` the verdicts are binding; for `gamma > 0` they are a
// diagnostic.
//
// ```bash
// cargo run --release -p pdm-spectra --example verify_oracle
// ```

use pdm_spectra::model::{Deformation, PotentialParams, UnitSystem};
use pdm_spectra::verifier::{crosscheck_analytic, Discretization, GridSpec};

pub fn run_example() -> pdm_spectra::Result<String> {
    let units = UnitSystem::atomic();
    let mut out = String::new();
    let cases = [(0.0, 1.0, 0.0), (0.0, 5.0, 0.0), (1.0, 5.0, 0.0), (0.0, 5.0, 0.1), (0.0, 5.0, 0.5)];
    for (a, b, gamma) in cases {
        let params = PotentialParams::new(a, b)?;
        let d = Deformation::new(gamma)?;
        let grid = GridSpec::for_levels(&units, d, &params, 3, 4000)?;
        let check = crosscheck_analytic(&units, d, &params, 2, &grid, Discretization::Liouville, 1e-3)?;
        out.push_str(&check.to_csv());
        out.push('\n');
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> pdm_spectra::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
