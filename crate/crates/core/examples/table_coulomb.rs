// The Coulomb table: `-E` for `A = 0`, `B = 5`, `m = hbar = 1`, with
// unnormalizable levels marked.
//
// ```bash
// cargo run -p pdm-spectra --example table_coulomb
// ```

use std::fmt::Write as _;

use pdm_spectra::cli::{coulomb_cells, format_coulomb_cell, table_coulomb};

pub fn run_example() -> pdm_spectra::Result<String> {
    let mut out = table_coulomb()?;
    let flagged: Vec<_> = coulomb_cells()?.into_iter().filter(|c| !c.physical).collect();
    writeln!(out, "\n{} levels lie past d_crit:", flagged.len()).unwrap();
    for c in flagged {
        let v = c.entry.validity;
        writeln!(
            out,
            "  n={} gamma={}: -E={} d={:.3} d_crit={:.3}",
            c.n,
            c.gamma,
            format_coulomb_cell(c.value),
            v.denominator,
            v.critical.unwrap_or(f64::INFINITY)
        )
        .unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> pdm_spectra::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
