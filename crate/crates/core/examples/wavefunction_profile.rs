// Normalized eigenfunctions `phi(x)` of the deformed Coulomb problem:
// norm by quadrature, node count, and the residual of the stationary
// equation.
//
// ```bash
// cargo run -p pdm-spectra --example wavefunction_profile
// ```

use std::fmt::Write as _;

use pdm_spectra::model::{Deformation, PotentialParams, UnitSystem};
use pdm_spectra::wavefunction::{count_nodes, extent, norm_integral, ode_residual, samples_csv};
use pdm_spectra::{energy_analytic, WavefunctionSpec};

pub fn run_example() -> pdm_spectra::Result<String> {
    let units = UnitSystem::atomic();
    let params = PotentialParams::coulomb(5.0)?;
    let mut out = String::from("gamma n E ln_N norm nodes residual\n");
    for gamma in [0.1, 0.5] {
        for n in 0..3 {
            let entry = energy_analytic(n, &units, Deformation::new(gamma)?, &params)?;
            let spec = WavefunctionSpec::new(entry)?.normalized()?;
            let x_max = extent(&spec, 1e-14)?;
            writeln!(
                out,
                "{gamma} {n} {:.8} {:.6} {:.10} {} {:.2e}",
                spec.entry.energy,
                spec.log_norm(),
                norm_integral(&spec)?,
                count_nodes(&spec, x_max, 20_000)?,
                ode_residual(&spec, x_max, 2_000, 1e-4)?
            )
            .unwrap();
        }
    }
    let entry = energy_analytic(1, &units, Deformation::new(0.5)?, &params)?;
    let spec = WavefunctionSpec::new(entry)?.normalized()?;
    out.push_str("\nn = 1, gamma = 0.5 samples:\n");
    out.push_str(&samples_csv(&spec, &[0.05, 0.2, 0.4, 0.8, 1.6, 3.2])?);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> pdm_spectra::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
