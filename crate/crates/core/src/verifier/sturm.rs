//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, and
//! eigenvectors by inverse iteration.

use crate::{Error, Result};

/// Symmetric tridiagonal matrix: `diag[i]` on the diagonal, `off[i]`
/// coupling rows `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal needs off.len() = diag.len() - 1, got {} and {}",
                off.len(),
                diag.len()
            )));
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / q };
            q = self.diag[i] - lambda - coupling;
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based), bisected to `tol` absolute.
    pub fn eigenvalue(&self, k: usize, tol: f64) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::InvalidParameter(format!("index {k} out of range {}", self.len())));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
        lo -= pad;
        hi += pad;
        Ok(self.bisect(k, lo, hi, tol))
    }

    /// Bisect for eigenvalue `k` knowing `count(lo) <= k < count(hi)`.
    pub(crate) fn bisect(&self, k: usize, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The lowest eigenvalues strictly below `ceiling`, at most `k` of them.
    pub fn eigenvalues_below(&self, ceiling: f64, k: usize, tol: f64) -> Vec<f64> {
        let available = self.sturm_count(ceiling).min(k);
        let (lo, _) = self.gershgorin();
        let lo = lo - 1e-12 * (1.0 + lo.abs());
        (0..available).map(|i| self.bisect(i, lo, ceiling, tol)).collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Solve `(T - shift) y = rhs` by Gaussian elimination with partial
    /// pivoting. Exactly singular pivots are nudged so inverse iteration
    /// can proceed.
    pub fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let tiny = f64::EPSILON * (1.0 + shift.abs());
        // Row i after elimination holds u0[i] x_i + u1[i] x_{i+1} + u2[i] x_{i+2}.
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut b = rhs.to_vec();
        let mut cur = [self.diag[0] - shift, if n > 1 { self.off[0] } else { 0.0 }, 0.0];
        for i in 0..n {
            if i + 1 == n {
                u0[i] = if cur[0] == 0.0 { tiny } else { cur[0] };
                break;
            }
            let below = [self.off[i], self.diag[i + 1] - shift, if i + 2 < n { self.off[i + 1] } else { 0.0 }];
            let (pivot, other, swap) =
                if below[0].abs() > cur[0].abs() { (below, cur, true) } else { (cur, below, false) };
            if swap {
                b.swap(i, i + 1);
            }
            let p0 = if pivot[0] == 0.0 { tiny } else { pivot[0] };
            u0[i] = p0;
            u1[i] = pivot[1];
            u2[i] = pivot[2];
            let factor = other[0] / p0;
            b[i + 1] -= factor * b[i];
            cur = [other[1] - factor * pivot[1], other[2] - factor * pivot[2], 0.0];
        }
        let mut y = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= u1[i] * y[i + 1];
            }
            if i + 2 < n {
                s -= u2[i] * y[i + 2];
            }
            y[i] = s / u0[i];
        }
        y
    }

    /// Unit eigenvector for a converged eigenvalue by inverse iteration.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.len();
        let scale = self.gershgorin().1.abs().max(self.gershgorin().0.abs()).max(1.0);
        let shift = eigenvalue + 1e-10 * scale;
        // Deterministic start vector with no special symmetry.
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i as f64) * 0.618_033_988_75).sin()).collect();
        normalize(&mut v);
        for _ in 0..4 {
            let mut w = self.solve_shifted(shift, &v);
            normalize(&mut w);
            let dot: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
            v = w;
            if (dot.abs() - 1.0).abs() < 1e-14 {
                break;
            }
        }
        // Fix the sign so the first significant component is positive.
        if let Some(first) = v.iter().find(|c| c.abs() > 1e-8) {
            if *first < 0.0 {
                v.iter_mut().for_each(|c| *c = -*c);
            }
        }
        v
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    v.iter_mut().for_each(|c| *c /= norm);
}

/// Sign changes of `v`, ignoring components below `floor` times the peak.
pub fn sign_changes(v: &[f64], floor: f64) -> usize {
    let peak = v.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let mut count = 0;
    let mut last = 0.0;
    for &c in v {
        if c.abs() <= floor * peak {
            continue;
        }
        if last != 0.0 && c.signum() != last {
            count += 1;
        }
        last = c.signum();
    }
    count
}
