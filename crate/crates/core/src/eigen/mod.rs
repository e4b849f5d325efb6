//! Algebraic connectivity and the Fiedler vector.
//!
//! [`fiedler`] is the production path: Lanczos on the Laplacian with the
//! all-ones direction projected out of every Krylov vector. [`fiedler_dense_oracle`]
//! is an independent dense path built on cyclic Jacobi rotations. It shares no
//! numerical code with the Lanczos solver and exists to check it.

mod jacobi;
mod lanczos;
mod tridiagonal;

use alloc::vec::Vec;

pub use jacobi::{dense_deflated_spectrum, fiedler_dense_oracle, symmetric_eigen_jacobi, DenseSpectrum, DENSE_MAX_NODES};
pub use lanczos::fiedler;

use crate::graph::SparseGraph;
use crate::math;

/// Second-smallest Laplacian eigenpair with solver diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    /// `lambda_2(L)`, the algebraic connectivity.
    pub lambda2: f64,
    /// Unit eigenvector orthogonal to the all-ones vector, sign-normalized so
    /// the first entry with magnitude above `1e-12` is positive.
    pub fiedler: Vec<f64>,
    pub iterations: usize,
    /// `||L y - lambda2 y||_2`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiedlerOptions {
    /// Relative residual tolerance; a result is accepted once
    /// `residual <= tol * max(1, lambda2)`.
    pub tol: f64,
    /// Lanczos step limit. `None` means `10 sqrt(n) + 200`.
    pub max_iter: Option<usize>,
}

impl Default for FiedlerOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: None,
        }
    }
}

impl FiedlerOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = Some(max_iter);
        self
    }

    pub fn max_iter_for(&self, n: usize) -> usize {
        self.max_iter
            .unwrap_or_else(|| (10.0 * math::sqrt(n as f64)) as usize + 200)
    }

    pub fn residual_tolerance(&self, lambda2: f64) -> f64 {
        self.tol * lambda2.max(1.0)
    }
}

/// Flips `y` so its first entry above `1e-12` in magnitude is positive.
pub(crate) fn normalize_sign(y: &mut [f64]) {
    if let Some(first) = y.iter().copied().find(|v| v.abs() > 1e-12) {
        if first < 0.0 {
            math::scale(-1.0, y);
        }
    }
}

pub(crate) fn project_out_ones(y: &mut [f64]) {
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    for v in y.iter_mut() {
        *v -= mean;
    }
}

/// Builds a [`SpectralResult`] from an approximate eigenvector: projects out
/// the ones direction, normalizes, fixes the sign and evaluates the Rayleigh
/// quotient and the residual on `g`.
pub(crate) fn finish(g: &SparseGraph, mut y: Vec<f64>, iterations: usize) -> SpectralResult {
    project_out_ones(&mut y);
    let nrm = math::norm(&y);
    math::scale(1.0 / nrm, &mut y);
    normalize_sign(&mut y);
    let mut ly = alloc::vec![0.0; y.len()];
    g.laplacian().apply(&y, &mut ly);
    let lambda2 = math::dot(&y, &ly);
    math::axpy(-lambda2, &y, &mut ly);
    SpectralResult {
        lambda2,
        fiedler: y,
        iterations,
        residual: math::norm(&ly),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::erdos_renyi;
    use crate::rng::stream;
    use rand_core::RngCore;

    fn path3() -> SparseGraph {
        SparseGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn two_k2() -> SparseGraph {
        SparseGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
    }

    fn check_invariants(g: &SparseGraph, r: &SpectralResult) {
        let n = g.node_count() as f64;
        assert!((math::norm(&r.fiedler) - 1.0).abs() <= 1e-10);
        assert!(r.fiedler.iter().sum::<f64>().abs() <= 1e-8 * math::sqrt(n));
        assert!(r.lambda2 >= -1e-10);
        assert!(r.residual <= 1e-8 * r.lambda2.max(1.0), "residual {}", r.residual);
    }

    #[test]
    fn complete_graph() {
        for n in [2, 3, 4, 7, 30] {
            let g = SparseGraph::complete(n).unwrap();
            let r = fiedler(&g, &FiedlerOptions::default()).unwrap();
            assert!((r.lambda2 - n as f64).abs() < 1e-9, "K{n}: {}", r.lambda2);
            check_invariants(&g, &r);
        }
    }

    #[test]
    fn disconnected_pairs() {
        let g = two_k2();
        for r in [
            fiedler(&g, &FiedlerOptions::default()).unwrap(),
            fiedler_dense_oracle(&g).unwrap(),
        ] {
            assert!(r.lambda2.abs() < 1e-10);
            for (a, b) in r.fiedler.iter().zip([0.5, 0.5, -0.5, -0.5]) {
                assert!((a - b).abs() < 1e-9, "{:?}", r.fiedler);
            }
            check_invariants(&g, &r);
        }
    }

    #[test]
    fn path_three() {
        // dense 3x3 eigendecomposition: L = [[1,-1,0],[-1,2,-1],[0,-1,1]],
        // spectrum {0, 1, 3}, lambda2 vector (1, 0, -1)/sqrt(2)
        let s = 1.0 / math::sqrt(2.0);
        let g = path3();
        for r in [
            fiedler(&g, &FiedlerOptions::default()).unwrap(),
            fiedler_dense_oracle(&g).unwrap(),
        ] {
            assert!((r.lambda2 - 1.0).abs() < 1e-10);
            for (a, b) in r.fiedler.iter().zip([s, 0.0, -s]) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn cycle_and_star_oracle() {
        let c4 = SparseGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let star = SparseGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!((fiedler_dense_oracle(&c4).unwrap().lambda2 - 2.0).abs() < 1e-10);
        assert!((fiedler_dense_oracle(&star).unwrap().lambda2 - 1.0).abs() < 1e-10);
        let spec = dense_deflated_spectrum(&star).unwrap();
        for (a, b) in spec.values.iter().zip([1.0, 1.0, 4.0]) {
            assert!((a - b).abs() < 1e-10);
        }
        for g in [&c4, &star] {
            let r = fiedler(g, &FiedlerOptions::default()).unwrap();
            check_invariants(g, &r);
        }
    }

    #[test]
    fn dense_oracle_rejects_large_graphs() {
        let g = SparseGraph::empty(DENSE_MAX_NODES + 1).unwrap();
        assert_eq!(
            fiedler_dense_oracle(&g),
            Err(crate::Error::TooLargeForDense {
                n: DENSE_MAX_NODES + 1,
                max: DENSE_MAX_NODES
            })
        );
    }

    #[test]
    fn agrees_with_dense_on_random_graphs() {
        for seed in 0..20u64 {
            let n = 10 + (seed as usize * 7) % 60;
            let p = 0.1 + 0.04 * seed as f64;
            let g = erdos_renyi(n, p, seed).unwrap();
            let it = fiedler(&g, &FiedlerOptions::default()).unwrap();
            let dense = dense_deflated_spectrum(&g).unwrap();
            assert!((it.lambda2 - dense.values[0]).abs() <= 1e-8, "seed {seed}");
            check_invariants(&g, &it);
        }
    }

    #[test]
    fn rayleigh_optimality() {
        let g = erdos_renyi(60, 0.2, 4).unwrap();
        let r = fiedler(&g, &FiedlerOptions::default()).unwrap();
        let mut rng = stream(99);
        for _ in 0..100 {
            let mut x: Vec<f64> = (0..60)
                .map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
                .collect();
            project_out_ones(&mut x);
            let nrm = math::norm(&x);
            math::scale(1.0 / nrm, &mut x);
            assert!(g.laplacian_quadform(&x).unwrap() >= r.lambda2 - 1e-8);
        }
    }

    #[test]
    fn repeated_runs_are_identical() {
        let g = erdos_renyi(80, 0.1, 8).unwrap();
        let a = fiedler(&g, &FiedlerOptions::default()).unwrap();
        let b = fiedler(&g, &FiedlerOptions::default()).unwrap();
        assert_eq!(a, b);
        let first = a.fiedler.iter().find(|v| v.abs() > 1e-12).unwrap();
        assert!(*first > 0.0);
    }

    #[test]
    fn non_convergence_reports_best_result() {
        let g = erdos_renyi(300, 0.05, 2).unwrap();
        match fiedler(&g, &FiedlerOptions::default().with_max_iter(3)) {
            Err(crate::Error::NotConverged {
                iterations,
                residual,
                best,
            }) => {
                assert_eq!(iterations, 3);
                assert!(residual > 1e-8);
                assert_eq!(best.fiedler.len(), 300);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
