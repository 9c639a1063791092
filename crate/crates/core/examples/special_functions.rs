// Gamma, Beta, Pochhammer, the Gauss hypergeometric function on each of
// its evaluation branches, the large-argument split, and the Euler Beta
// integral identity.
//
// ```bash
// cargo run -p pdm-spectra --example special_functions
// ```

use std::fmt::Write as _;

use pdm_spectra::specfun::{
    beta, beta_integral_identity_check, gamma, gamma_ratio, hyp2f1, hyp2f1_asymptotic_split, integrate, pochhammer,
    HypParams,
};

pub fn run_example() -> pdm_spectra::Result<String> {
    let mut out = String::new();
    writeln!(out, "Gamma(0.5)^2 = {:.15}", gamma(0.5)?.powi(2)).unwrap();
    writeln!(out, "Gamma(-1.5) = {:.15}", gamma(-1.5)?).unwrap();
    writeln!(out, "B(2.5, 1.5) = {:.15}", beta(2.5, 1.5)?).unwrap();
    let quad = integrate(|t: f64| t.powf(1.5) * (1.0 - t).sqrt(), 0.0, 1.0, 1e-13)?;
    writeln!(out, "  by quadrature {:.15} (+- {:.1e})", quad.value, quad.error).unwrap();
    writeln!(out, "(0.3)_4 = {:.15}", pochhammer(0.3, 4)).unwrap();
    writeln!(out, "Gamma(401)/Gamma(400.5) = {:.12}", gamma_ratio(&[401.0], &[400.5])?).unwrap();
    writeln!(out, "Gamma(-2) -> {}", gamma(-2.0).unwrap_err()).unwrap();

    out.push_str("\n2F1 branches\n");
    let cases = [
        (HypParams::new(-3.0, 2.5, 1.5), 4.0),
        (HypParams::new(0.5, 1.25, 2.0), 0.3),
        (HypParams::new(0.5, 1.25, 2.0), 0.95),
        (HypParams::new(0.5, 1.25, 2.0), -3.0),
        (HypParams::new(0.5, 1.25, 2.0), -50.0),
    ];
    for (p, z) in cases {
        let v = hyp2f1(&p, z)?;
        writeln!(out, "  2F1({}, {}; {}; {z}) = {:.12} [{}]", p.a, p.b, p.c, v.value, v.branch).unwrap();
    }
    let gauss = HypParams::new(0.3, 0.7, 2.1);
    let closed = gamma_ratio(&[2.1, 1.1], &[1.8, 1.4])?;
    writeln!(out, "  Gauss sum at z = 1: {:.12} vs {:.12}", hyp2f1(&gauss, 1.0)?.value, closed).unwrap();

    let split = hyp2f1_asymptotic_split(&HypParams::new(0.5, 1.25, 2.0))?;
    writeln!(
        out,
        "\nlarge z: {:.6} (-z)^{} + {:.6} (-z)^{}",
        split.coeff1, split.exponent1, split.coeff2, split.exponent2
    )
    .unwrap();
    for z in [-50.0, -1e4] {
        let direct = hyp2f1(&split.params, z)?.value;
        writeln!(
            out,
            "  z = {z}: leading {:.10}, recombined {:.10}, direct {:.10}",
            split.leading(z),
            split.recombine(z)?,
            direct
        )
        .unwrap();
    }
    writeln!(out, "  a = -2 -> {}", hyp2f1_asymptotic_split(&HypParams::new(-2.0, 0.5, 1.5)).unwrap_err()).unwrap();

    out.push_str("\nBeta integral identity residuals\n");
    for (r, rp, x) in [(0.5, 0.5, -0.5), (1.0, 2.0, 0.0), (3.0, 0.5, 0.5)] {
        writeln!(out, "  r={r} r'={rp} x={x}: {:.1e}", beta_integral_identity_check(r, rp, x)?).unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> pdm_spectra::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
