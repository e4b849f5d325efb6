use alloc::boxed::Box;

use crate::eigen::SpectralResult;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("graph needs at least 2 nodes, got {n}")]
    TooFewNodes { n: usize },
    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop on node {node}")]
    SelfLoop { node: usize },
    #[error("node {node} listed more than once")]
    DuplicateNode { node: usize },
    #[error("empty node set")]
    EmptyNodeSet,
    #[error("probability `{name}` = {value} is outside [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("community sizes must both be at least 2 (got {n1}, {n2})")]
    CommunityTooSmall { n1: usize, n2: usize },
    #[error("size ratio must be positive and finite, got {0}")]
    InvalidRatio(f64),
    #[error("eigensolver did not converge after {iterations} iterations (best residual {residual:e})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        best: Box<SpectralResult>,
    },
    #[error("dense oracle limited to {max} nodes, got {n}")]
    TooLargeForDense { n: usize, max: usize },
    #[error("all values are equal; no meaningful two-way split")]
    DegenerateInput,
    #[error("degenerate partition with sizes ({n1}, {n2})")]
    DegeneratePartition { n1: usize, n2: usize },
    #[error("equal community sizes required (got {n1}, {n2})")]
    UnequalSizes { n1: usize, n2: usize },
    #[error("bound denominator is zero")]
    ZeroDenominator,
}
