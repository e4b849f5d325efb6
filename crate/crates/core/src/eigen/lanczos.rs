//! Lanczos iteration for the bottom of the Laplacian spectrum on the
//! complement of the all-ones vector.
//!
//! Every Krylov vector is reorthogonalized against the full basis and against
//! `1 / sqrt(n)` (two Gram-Schmidt passes). The bottom Ritz pair of the
//! tridiagonal projection is refreshed after each step and the residual
//! estimate `beta_k |s_k|` decides when to form the Ritz vector and check the
//! true residual.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use super::tridiagonal::smallest_eigenpair;
use super::{finish, project_out_ones, FiedlerOptions, SpectralResult};
use crate::graph::SparseGraph;
use crate::math;
use crate::rng::splitmix64;
use crate::{Error, Result};

/// Computes `lambda_2(L)` and a unit Fiedler vector.
///
/// For disconnected graphs the result has `lambda2 = 0` and a vector that is a
/// combination of component indicators orthogonal to the ones vector.
///
/// Fails with [`Error::NotConverged`] when the residual tolerance is not met
/// within the step limit; the error carries the best result seen.
pub fn fiedler(g: &SparseGraph, opts: &FiedlerOptions) -> Result<SpectralResult> {
    let n = g.node_count();
    let lap = g.laplacian();
    let max_steps = opts.max_iter_for(n).clamp(1, n - 1);
    let breakdown = f64::EPSILON * lap.gershgorin_bound().max(1.0) * 1e2;

    let mut basis: Vec<f64> = Vec::with_capacity(n * max_steps.min(64));
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut restarts = 0u64;

    let mut v = start_vector(n, 0);
    project_out_ones(&mut v);
    math::scale(1.0 / math::norm(&v), &mut v);

    let mut w = vec![0.0; n];
    let mut best: Option<SpectralResult> = None;
    let mut next_check = 0usize;

    for step in 0..max_steps {
        basis.extend_from_slice(&v);
        lap.apply(&v, &mut w);
        let a = math::dot(&v, &w);
        alpha.push(a);

        reorthogonalize(&basis, n, &mut w);
        reorthogonalize(&basis, n, &mut w);
        let mut b = math::norm(&w);

        let (theta, s) = smallest_eigenpair(&alpha, &beta);
        let estimate = b * s.last().unwrap().abs();
        let steps = step + 1;
        let exhausted = steps == max_steps;
        let tol = opts.residual_tolerance(theta);

        if (estimate <= 0.5 * tol && steps >= next_check) || b <= breakdown || exhausted {
            let y = ritz_vector(&basis, n, &s);
            let result = finish(g, y, steps);
            if result.residual <= opts.residual_tolerance(result.lambda2) {
                return Ok(result);
            }
            next_check = steps + 5;
            if best.as_ref().map_or(true, |r| result.residual < r.residual) {
                best = Some(result);
            }
        }
        if exhausted {
            break;
        }

        if b <= breakdown {
            // invariant subspace: continue from a fresh direction
            restarts += 1;
            w = start_vector(n, restarts);
            reorthogonalize(&basis, n, &mut w);
            reorthogonalize(&basis, n, &mut w);
            let nrm = math::norm(&w);
            if nrm <= breakdown {
                break;
            }
            math::scale(1.0 / nrm, &mut w);
            b = 0.0;
        } else {
            math::scale(1.0 / b, &mut w);
        }
        beta.push(b);
        core::mem::swap(&mut v, &mut w);
    }

    let best = best.expect("at least one Ritz vector is formed before exit");
    Err(Error::NotConverged {
        iterations: best.iterations,
        residual: best.residual,
        best: Box::new(best),
    })
}

/// Removes the components of `w` along the stored basis and the ones vector.
fn reorthogonalize(basis: &[f64], n: usize, w: &mut [f64]) {
    project_out_ones(w);
    for q in basis.chunks_exact(n) {
        let c = math::dot(q, w);
        math::axpy(-c, q, w);
    }
}

fn ritz_vector(basis: &[f64], n: usize, coeffs: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; n];
    for (q, &c) in basis.chunks_exact(n).zip(coeffs) {
        math::axpy(c, q, &mut y);
    }
    y
}

/// Deterministic pseudo-random vector with entries in [-0.5, 0.5).
fn start_vector(n: usize, salt: u64) -> Vec<f64> {
    let key = splitmix64(0x5eed ^ salt.wrapping_mul(0x9e37_79b9));
    (0..n as u64)
        .map(|i| (splitmix64(key ^ i) >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
        .collect()
}
