//! Adaptive Gauss-Kronrod (7/15) quadrature with global subdivision.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 0.0, max_intervals: 4000 }
    }
}

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kron * half;
    let mut error = ((kron - gauss) * half).abs();
    if !value.is_finite() {
        error = f64::INFINITY;
    }
    Segment { lo, hi, value, error }
}

/// `integral_lo^hi f` to absolute tolerance `tol`. `hi` may be `+inf`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Quadrature> {
    integrate_with(f, lo, hi, IntegrateOptions { abs_tol: tol, ..Default::default() })
}

/// As [`integrate`], stopping once the error is below
/// `max(abs_tol, rel_tol * |value|)`.
pub fn integrate_with<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, opts: IntegrateOptions) -> Result<Quadrature> {
    if lo.is_nan() || hi.is_nan() || !lo.is_finite() {
        return Err(Error::Domain(format!("integration limits [{lo}, {hi}] not supported")));
    }
    if hi == f64::INFINITY {
        // x = lo + t / (1 - t)
        let mapped = move |t: f64| {
            let s = 1.0 - t;
            f(lo + t / s) / (s * s)
        };
        return adaptive(&mapped, 0.0, 1.0, opts);
    }
    if !hi.is_finite() {
        return Err(Error::Domain(format!("integration limits [{lo}, {hi}] not supported")));
    }
    if hi < lo {
        let mut q = adaptive(&f, hi, lo, opts)?;
        q.value = -q.value;
        return Ok(q);
    }
    adaptive(&f, lo, hi, opts)
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, opts: IntegrateOptions) -> Result<Quadrature> {
    if lo == hi {
        return Ok(Quadrature { value: 0.0, error: 0.0, evaluations: 0, intervals: 0 });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(f, lo, hi);
    let (mut value, mut error) = (first.value, first.error);
    heap.push(first);
    let mut evaluations = 15;

    loop {
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target {
            break;
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::ToleranceNotMet { estimate: value, error, tol: target });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            // interval cannot be split further in floating point
            heap.push(worst);
            return Err(Error::ToleranceNotMet { estimate: value, error, tol: target });
        }
        let left = kronrod(f, worst.lo, mid);
        let right = kronrod(f, mid, worst.hi);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // re-sum periodically to keep the running totals free of drift
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let error: f64 = heap.iter().map(|s| s.error).sum();
    if !value.is_finite() {
        return Err(Error::ToleranceNotMet { estimate: value, error, tol: opts.abs_tol });
    }
    Ok(Quadrature { value, error, evaluations, intervals: heap.len() })
}
