//! Bottom eigenpair of a symmetric tridiagonal matrix.
//!
//! The eigenvalue comes from Sturm-sequence bisection and the eigenvector
//! from inverse iteration with a partially pivoted tridiagonal LU. Both are
//! `O(k)` per sweep, cheap enough to run after every Lanczos step.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;

/// Number of eigenvalues strictly below `x`. `off[i]` couples rows `i` and `i + 1`.
fn count_below(diag: &[f64], off: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut d = diag[0] - x;
    if d.abs() < pivmin {
        d = -pivmin;
    }
    if d < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        d = diag[i] - x - off[i - 1] * off[i - 1] / d;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Smallest eigenvalue and its unit eigenvector.
pub(crate) fn smallest_eigenpair(diag: &[f64], off: &[f64]) -> (f64, Vec<f64>) {
    let k = diag.len();
    debug_assert_eq!(off.len() + 1, k);
    if k == 1 {
        return (diag[0], vec![1.0]);
    }

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..k {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < k { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    let pivmin = f64::MIN_POSITIVE.max(scale * f64::EPSILON * f64::EPSILON);
    lo -= scale * f64::EPSILON;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * scale {
            break;
        }
        if count_below(diag, off, mid, pivmin) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let theta = 0.5 * (lo + hi);
    (theta, inverse_iteration(diag, off, theta, scale))
}

fn inverse_iteration(diag: &[f64], off: &[f64], shift: f64, scale: f64) -> Vec<f64> {
    let k = diag.len();
    let tiny = f64::EPSILON * scale;

    // LU of (T - shift I) with partial pivoting: U has two superdiagonals.
    let mut u0 = vec![0.0; k];
    let mut u1 = vec![0.0; k];
    let mut u2 = vec![0.0; k];
    let mut mult = vec![0.0; k];
    let mut swapped = vec![false; k];

    let mut cur_d = diag[0] - shift;
    let mut cur_e = off[0];
    for i in 0..k - 1 {
        let sub = off[i];
        let next_d = diag[i + 1] - shift;
        let next_e = if i + 2 < k { off[i + 1] } else { 0.0 };
        if cur_d.abs() >= sub.abs() {
            let piv = if cur_d.abs() < tiny { tiny } else { cur_d };
            let m = sub / piv;
            u0[i] = piv;
            u1[i] = cur_e;
            mult[i] = m;
            cur_d = next_d - m * cur_e;
            cur_e = next_e;
        } else {
            let m = cur_d / sub;
            u0[i] = sub;
            u1[i] = next_d;
            u2[i] = next_e;
            mult[i] = m;
            swapped[i] = true;
            cur_d = cur_e - m * next_d;
            cur_e = -m * next_e;
        }
    }
    u0[k - 1] = if cur_d.abs() < tiny { tiny } else { cur_d };

    let mut x = vec![1.0; k];
    for _ in 0..3 {
        // forward: apply row swaps and multipliers
        for i in 0..k - 1 {
            if swapped[i] {
                x.swap(i, i + 1);
            }
            x[i + 1] -= mult[i] * x[i];
        }
        // back substitution
        for i in (0..k).rev() {
            let mut acc = x[i];
            if i + 1 < k {
                acc -= u1[i] * x[i + 1];
            }
            if i + 2 < k {
                acc -= u2[i] * x[i + 2];
            }
            x[i] = acc / u0[i];
        }
        let nrm = math::norm(&x);
        math::scale(1.0 / nrm, &mut x);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(diag: &[f64], off: &[f64], theta: f64, v: &[f64]) -> f64 {
        let k = diag.len();
        let mut r = 0.0;
        for i in 0..k {
            let mut t = (diag[i] - theta) * v[i];
            if i > 0 {
                t += off[i - 1] * v[i - 1];
            }
            if i + 1 < k {
                t += off[i] * v[i + 1];
            }
            r += t * t;
        }
        math::sqrt(r)
    }

    #[test]
    fn path_laplacian_like() {
        // [[2,-1,0],[-1,2,-1],[0,-1,2]] has eigenvalues 2 - sqrt(2), 2, 2 + sqrt(2)
        let diag = [2.0, 2.0, 2.0];
        let off = [-1.0, -1.0];
        let (theta, v) = smallest_eigenpair(&diag, &off);
        assert!((theta - (2.0 - math::sqrt(2.0))).abs() < 1e-14);
        assert!(residual(&diag, &off, theta, &v) < 1e-13);
    }

    #[test]
    fn split_matrix() {
        // zero coupling: blocks {5}, {[1, 0.5], [0.5, 1]}
        let diag = [5.0, 1.0, 1.0];
        let off = [0.0, 0.5];
        let (theta, v) = smallest_eigenpair(&diag, &off);
        assert!((theta - 0.5).abs() < 1e-14);
        assert!(v[0].abs() < 1e-12);
        assert!(residual(&diag, &off, theta, &v) < 1e-13);
    }

    #[test]
    fn pivoting_path() {
        let diag = [1e-3, 4.0, -2.0, 3.0, 0.5];
        let off = [7.0, 0.1, 2.0, -1.0];
        let (theta, v) = smallest_eigenpair(&diag, &off);
        assert!(residual(&diag, &off, theta, &v) < 1e-12);
    }
}
