//! Dense cyclic Jacobi eigensolver used as a reference for the Lanczos path.

use alloc::vec;
use alloc::vec::Vec;

use super::{finish, SpectralResult};
use crate::graph::SparseGraph;
use crate::math;
use crate::{Error, Result};

/// Size limit of the dense oracle; the matrix is stored in full.
pub const DENSE_MAX_NODES: usize = 2000;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and matching eigenvectors of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSpectrum {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

/// Full eigendecomposition of the row-major symmetric `n x n` matrix `a`.
pub fn symmetric_eigen_jacobi(mut a: Vec<f64>, n: usize) -> DenseSpectrum {
    assert_eq!(a.len(), n * n);
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let total: f64 = a.iter().map(|x| x * x).sum();
    let target = (f64::EPSILON * f64::EPSILON) * total.max(f64::MIN_POSITIVE);

    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum();
        if off <= target {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + math::sqrt(theta * theta + 1.0));
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    DenseSpectrum {
        values: order.iter().map(|&i| a[i * n + i]).collect(),
        vectors: order
            .iter()
            .map(|&j| (0..n).map(|k| v[k * n + j]).collect())
            .collect(),
        sweeps,
    }
}

/// Spectrum of `L` restricted to the complement of the all-ones vector:
/// `n - 1` values in ascending order, `values[0] = lambda_2`.
///
/// The ones direction is lifted out of the way by decomposing
/// `L + s 11^T / n` with `s` above the Gershgorin bound.
pub fn dense_deflated_spectrum(g: &SparseGraph) -> Result<DenseSpectrum> {
    let n = g.node_count();
    if n > DENSE_MAX_NODES {
        return Err(Error::TooLargeForDense {
            n,
            max: DENSE_MAX_NODES,
        });
    }
    let lap = g.laplacian();
    let shift = lap.gershgorin_bound() + 1.0;
    let mut m = lap.to_dense();
    for x in m.iter_mut() {
        *x += shift / n as f64;
    }
    let mut spec = symmetric_eigen_jacobi(m, n);
    spec.values.pop();
    spec.vectors.pop();
    Ok(spec)
}

/// Second-smallest Laplacian eigenpair from a dense Jacobi decomposition.
/// `iterations` reports the number of Jacobi sweeps.
pub fn fiedler_dense_oracle(g: &SparseGraph) -> Result<SpectralResult> {
    let mut spec = dense_deflated_spectrum(g)?;
    let y = spec.vectors.swap_remove(0);
    Ok(finish(g, y, spec.sweeps))
}
