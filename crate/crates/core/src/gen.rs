//! Two-block random graphs with insertion-only Erdos-Renyi noise.
//!
//! An instance is sampled in two stages. The signal graph draws each
//! within-block pair of block `i` with probability `p_i` and each cross pair
//! with probability `p`. Noise then inserts every pair that is still absent
//! with probability `q`; existing edges are never removed. Within a block the
//! effective edge density is therefore `p_i + q - p_i q`, and across blocks it
//! is `p + q - p q`.

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::graph::SparseGraph;
use crate::rng::{bernoulli_indices, stream};
use crate::{Error, Result};

/// Which node pairs are eligible for noise insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseScope {
    /// Every absent pair.
    #[default]
    All,
    /// Only absent pairs that cross the two blocks.
    Cross,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub n1: usize,
    pub n2: usize,
    pub p1: f64,
    pub p2: f64,
    /// Cross-block (signal) probability.
    pub p: f64,
    /// Noise insertion probability.
    pub q: f64,
    pub seed: u64,
    pub noise_scope: NoiseScope,
}

impl GenParams {
    pub fn new(n1: usize, n2: usize, p1: f64, p2: f64, p: f64, q: f64, seed: u64) -> Self {
        Self {
            n1,
            n2,
            p1,
            p2,
            p,
            q,
            seed,
            noise_scope: NoiseScope::All,
        }
    }

    pub fn with_noise_scope(mut self, scope: NoiseScope) -> Self {
        self.noise_scope = scope;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn node_count(&self) -> usize {
        self.n1 + self.n2
    }

    /// `c = n1 / n2`.
    pub fn size_ratio(&self) -> f64 {
        self.n1 as f64 / self.n2 as f64
    }

    /// Probability that a cross pair ends up connected, `p + q - p q`.
    pub fn effective_cross_density(&self) -> f64 {
        effective_density(self.p, self.q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n1 < 2 || self.n2 < 2 {
            return Err(Error::CommunityTooSmall {
                n1: self.n1,
                n2: self.n2,
            });
        }
        check_probability("p1", self.p1)?;
        check_probability("p2", self.p2)?;
        check_probability("p", self.p)?;
        check_probability("q", self.q)
    }
}

/// Edge probability after insertion-only noise: `p + q - p q`.
pub fn effective_density(p: f64, q: f64) -> f64 {
    p + q - p * q
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidProbability { name, value })
    }
}

/// A sampled graph with its ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunityInstance {
    /// Observed graph, signal plus noise.
    pub graph: SparseGraph,
    /// Signal graph before noise insertion.
    pub signal_graph: SparseGraph,
    /// `0` for nodes `0..n1`, `1` for the rest.
    pub truth: Vec<u8>,
    pub params: GenParams,
}

impl CommunityInstance {
    pub fn community(&self, label: u8) -> Vec<usize> {
        (0..self.truth.len()).filter(|&i| self.truth[i] == label).collect()
    }
}

/// Samples a two-block instance. Deterministic in `params.seed`.
pub fn generate_sbm(params: &GenParams) -> Result<CommunityInstance> {
    params.validate()?;
    let (n1, n2) = (params.n1, params.n2);
    let n = n1 + n2;
    let mut rng = stream(params.seed);

    let mut pairs = Vec::new();
    sample_triangle(0, n1, params.p1, &mut rng, &mut pairs);
    sample_triangle(n1, n2, params.p2, &mut rng, &mut pairs);
    sample_rectangle(0, n1, n1, n2, params.p, &mut rng, &mut pairs);
    let signal_graph = SparseGraph::from_checked_pairs(n, &pairs);

    let mut candidates = Vec::new();
    match params.noise_scope {
        NoiseScope::All => sample_triangle(0, n, params.q, &mut rng, &mut candidates),
        NoiseScope::Cross => sample_rectangle(0, n1, n1, n2, params.q, &mut rng, &mut candidates),
    }
    pairs.extend(
        candidates
            .into_iter()
            .filter(|&(u, v)| !signal_graph.has_edge(u as usize, v as usize)),
    );
    let graph = SparseGraph::from_checked_pairs(n, &pairs);

    let mut truth = alloc::vec![0u8; n];
    truth[n1..].fill(1);
    Ok(CommunityInstance {
        graph,
        signal_graph,
        truth,
        params: *params,
    })
}

/// Inserts each absent pair of `g` independently with probability `q`.
pub fn add_noise(g: &SparseGraph, q: f64, seed: u64) -> Result<SparseGraph> {
    check_probability("q", q)?;
    let n = g.node_count();
    let mut rng = stream(seed);
    let mut pairs: Vec<(u32, u32)> = g.edges().map(|(i, j)| (i as u32, j as u32)).collect();
    let mut candidates = Vec::new();
    sample_triangle(0, n, q, &mut rng, &mut candidates);
    pairs.extend(
        candidates
            .into_iter()
            .filter(|&(u, v)| !g.has_edge(u as usize, v as usize)),
    );
    Ok(SparseGraph::from_checked_pairs(n, &pairs))
}

/// `G(n, p)`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<SparseGraph> {
    check_probability("p", p)?;
    if n < 2 {
        return Err(Error::TooFewNodes { n });
    }
    let mut rng = stream(seed);
    let mut pairs = Vec::new();
    sample_triangle(0, n, p, &mut rng, &mut pairs);
    Ok(SparseGraph::from_checked_pairs(n, &pairs))
}

/// Unordered pairs among nodes `base..base + m`.
fn sample_triangle(base: usize, m: usize, p: f64, rng: &mut impl RngCore, out: &mut Vec<(u32, u32)>) {
    if m < 2 {
        return;
    }
    let total = (m as u64) * (m as u64 - 1) / 2;
    // rows are walked forward as the (increasing) hit indices advance
    let mut row = 0u64;
    let mut row_start = 0u64;
    let mut row_len = m as u64 - 1;
    bernoulli_indices(total, p, rng, |k| {
        while k >= row_start + row_len {
            row_start += row_len;
            row += 1;
            row_len -= 1;
        }
        let col = row + 1 + (k - row_start);
        out.push(((base as u64 + row) as u32, (base as u64 + col) as u32));
    });
}

/// Pairs `(a, b)` with `a` in `base_a..base_a + m_a` and `b` in `base_b..base_b + m_b`.
fn sample_rectangle(
    base_a: usize,
    m_a: usize,
    base_b: usize,
    m_b: usize,
    p: f64,
    rng: &mut impl RngCore,
    out: &mut Vec<(u32, u32)>,
) {
    let total = m_a as u64 * m_b as u64;
    bernoulli_indices(total, p, rng, |k| {
        let a = base_a as u64 + k / m_b as u64;
        let b = base_b as u64 + k % m_b as u64;
        out.push((a as u32, b as u32));
    });
}
