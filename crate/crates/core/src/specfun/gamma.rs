use std::f64::consts::PI;

use crate::{Error, Result};

/// Arguments within this (scaled) distance of a non-positive integer count
/// as poles.
pub const POLE_TOLERANCE: f64 = 1e-10;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
#[allow(clippy::excessive_precision)]
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

pub fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.5 && (x - x.round()).abs() <= POLE_TOLERANCE * x.abs().max(1.0)
}

fn check_pole(x: f64) -> Result<()> {
    if x.is_nan() || is_nonpositive_integer(x) {
        Err(Error::GammaPole { arg: x })
    } else {
        Ok(())
    }
}

/// `ln Gamma(x)` for `x >= 0.5` (Lanczos, g = 7).
fn ln_gamma_lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + acc.ln()
}

/// `(ln |Gamma(x)|, sign Gamma(x))`, with reflection below 1/2.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    check_pole(x)?;
    if x >= 0.5 {
        return Ok((ln_gamma_lanczos(x), 1.0));
    }
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    let s = (PI * x).sin();
    let ln = PI.ln() - s.abs().ln() - ln_gamma_lanczos(1.0 - x);
    Ok((ln, s.signum()))
}

/// `ln |Gamma(x)|`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    ln_gamma_signed(x).map(|(l, _)| l)
}

pub fn gamma(x: f64) -> Result<f64> {
    check_pole(x)?;
    if x > 0.0 && x <= 30.0 && x == x.trunc() {
        // exact factorial
        return Ok((1..x as u64).fold(1.0, |acc, k| acc * k as f64));
    }
    let (l, s) = ln_gamma_signed(x)?;
    Ok(s * l.exp())
}

/// `prod Gamma(num_i) / prod Gamma(den_j)` in log space. Any pole, in the
/// numerator or the denominator, is an error carrying its argument.
pub fn gamma_ratio(num: &[f64], den: &[f64]) -> Result<f64> {
    let mut ln = 0.0;
    let mut sign = 1.0;
    for &x in num {
        let (l, s) = ln_gamma_signed(x)?;
        ln += l;
        sign *= s;
    }
    for &x in den {
        let (l, s) = ln_gamma_signed(x)?;
        ln -= l;
        sign *= s;
    }
    Ok(sign * ln.exp())
}

/// `B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    gamma_ratio(&[a, b], &[a + b])
}

/// Rising factorial `a (a+1) ... (a+k-1)`; `k = 0` gives 1.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}
