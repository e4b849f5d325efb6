//! Data-driven reliability check for a detected two-way partition.
//!
//! From a partition with sides of size `n1`, `n2` and the algebraic
//! connectivities `l1`, `l2` of the two induced subgraphs:
//!
//! ```text
//! p_hat    = cross edges / (n1 n2)
//! p_hat_lb = 2 min(l1, l2) / (n + |n1 - n2|)
//! p_hat_ub = 2 min(l1, l2) / (n - |n1 - n2|)
//! ```
//!
//! The noise level is unobservable, so the estimators carry no `- q` term:
//! `p_hat_lb` is the theoretical lower bound plus `q` on the same spectra.
//!
//! A single-node side has no second eigenvalue; its algebraic connectivity is
//! taken as zero.

use core::fmt;

use crate::eigen::{fiedler, FiedlerOptions, SpectralResult};
use crate::graph::SparseGraph;
use crate::partition::{detect_communities, Partition};
use crate::theory::CommunitySpectra;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `p_hat <= p_hat_lb`.
    Reliable,
    /// `p_hat_lb < p_hat < p_hat_ub`.
    Intermediate,
    /// `p_hat >= p_hat_ub`.
    Unreliable,
}

impl Regime {
    /// Reliable takes precedence when `p_hat_lb == p_hat == p_hat_ub`.
    pub fn classify(p_hat: f64, p_hat_lb: f64, p_hat_ub: f64) -> Self {
        if p_hat <= p_hat_lb {
            Regime::Reliable
        } else if p_hat >= p_hat_ub {
            Regime::Unreliable
        } else {
            Regime::Intermediate
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Reliable => "reliable",
            Regime::Intermediate => "intermediate",
            Regime::Unreliable => "unreliable",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssessmentReport {
    pub p_hat: f64,
    pub p_hat_lb: f64,
    pub p_hat_ub: f64,
    pub regime: Regime,
    /// Sizes of the sides labeled `0` and `1`.
    pub sizes: (usize, usize),
    /// Algebraic connectivity of each induced side.
    pub lambda2_hats: (f64, f64),
    pub cross_edges: usize,
}

impl AssessmentReport {
    /// The estimated spectra as theory-module input at noise level `q`.
    pub fn spectra(&self, q: f64) -> CommunitySpectra {
        CommunitySpectra::new(self.lambda2_hats.0, self.lambda2_hats.1, self.sizes.0, self.sizes.1, q)
    }
}

/// Estimators and regime for `g` split by `part`.
pub fn assess(g: &SparseGraph, part: &Partition, opts: &FiedlerOptions) -> Result<AssessmentReport> {
    let n = g.node_count();
    if part.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: part.len(),
        });
    }
    let (n1, n2) = part.sizes;
    if n1 == 0 || n2 == 0 {
        return Err(Error::DegeneratePartition { n1, n2 });
    }

    let cross_edges = g
        .edges()
        .filter(|&(i, j)| part.assignment[i] != part.assignment[j])
        .count();
    let l1 = side_connectivity(g, part, 0, opts)?;
    let l2 = side_connectivity(g, part, 1, opts)?;

    let twice_min = l1 + l2 - (l1 - l2).abs();
    let gap = n1.abs_diff(n2);
    let p_hat = cross_edges as f64 / (n1 as f64 * n2 as f64);
    let p_hat_lb = twice_min / (n + gap) as f64;
    let p_hat_ub = twice_min / (n - gap) as f64;
    Ok(AssessmentReport {
        p_hat,
        p_hat_lb,
        p_hat_ub,
        regime: Regime::classify(p_hat, p_hat_lb, p_hat_ub),
        sizes: (n1, n2),
        lambda2_hats: (l1, l2),
        cross_edges,
    })
}

fn side_connectivity(g: &SparseGraph, part: &Partition, label: u8, opts: &FiedlerOptions) -> Result<f64> {
    let members = part.members(label);
    if members.len() < 2 {
        return Ok(0.0);
    }
    let sub = g.induced_subgraph(&members)?;
    Ok(fiedler(&sub, opts)?.lambda2)
}

/// Spectral detection followed by [`assess`].
pub fn assess_with_detection(
    g: &SparseGraph,
    opts: &FiedlerOptions,
) -> Result<(AssessmentReport, Partition, SpectralResult)> {
    let (part, spectral) = detect_communities(g, opts)?;
    let report = assess(g, &part, opts)?;
    Ok((report, part, spectral))
}
