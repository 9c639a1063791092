// Drive the command-line runner from a `key = value` configuration, the
// same path the `pdm-spectra` binary takes after parsing flags.
//
// ```bash
// cargo run -p pdm-spectra --example config_run
// ```

use pdm_spectra::cli::{run, RunConfig};

const CONFIG: &str = "\
# ground and first excited level of a deformed well
mode = spectrum
A = 1
B = 5
gamma = 0, 0.25
levels = 2
";

pub fn run_example() -> pdm_spectra::Result<String> {
    let cfg = RunConfig::parse_config(CONFIG)?;
    Ok(run(&cfg)?.csv)
}

#[allow(dead_code)]
fn main() -> pdm_spectra::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
