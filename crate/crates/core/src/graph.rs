//! Simple undirected graphs in compressed sparse row form.
//!
//! Both orientations of every edge are stored, so a Laplacian product is a
//! single pass over each row. Node ids are dense `0..n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// An immutable simple undirected graph on `n >= 2` nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseGraph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl SparseGraph {
    /// Builds a graph from unordered pairs.
    ///
    /// Duplicate pairs and reversed duplicates collapse into one edge.
    /// Self-loops and out-of-range endpoints are rejected, as are graphs with
    /// fewer than two nodes.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n < 2 {
            return Err(Error::TooFewNodes { n });
        }
        assert!(n <= u32::MAX as usize, "node ids are stored as u32");
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::NodeOutOfRange { node: u, n });
            }
            if v >= n {
                return Err(Error::NodeOutOfRange { node: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { node: u });
            }
            pairs.push((u as u32, v as u32));
        }
        Ok(Self::from_checked_pairs(n, &pairs))
    }

    /// `pairs` must be in range and loop-free.
    pub(crate) fn from_checked_pairs(n: usize, pairs: &[(u32, u32)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; offsets[n]];
        for &(u, v) in pairs {
            neighbors[fill[u as usize]] = v;
            fill[u as usize] += 1;
            neighbors[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }

        // sort and dedup each row, compacting in place
        let mut write = 0;
        let mut new_offsets = Vec::with_capacity(n + 1);
        new_offsets.push(0);
        for i in 0..n {
            let (start, end) = (offsets[i], offsets[i + 1]);
            neighbors[start..end].sort_unstable();
            let mut prev = None;
            for k in start..end {
                let v = neighbors[k];
                if prev != Some(v) {
                    neighbors[write] = v;
                    write += 1;
                    prev = Some(v);
                }
            }
            new_offsets.push(write);
        }
        neighbors.truncate(write);
        neighbors.shrink_to_fit();
        Self {
            offsets: new_offsets,
            neighbors,
        }
    }

    /// The graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, core::iter::empty())
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        Self::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted neighbor list of `i`.
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.node_count() && j < self.node_count() && self.neighbors(i).binary_search(&(j as u32)).is_ok()
    }

    /// Each edge once, as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .map(|&j| j as usize)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// `d_i` = number of neighbors of `i`.
    pub fn degree_vector(&self) -> Vec<usize> {
        (0..self.node_count()).map(|i| self.degree(i)).collect()
    }

    /// `x^T L x = sum over edges (x_i - x_j)^2`.
    pub fn laplacian_quadform(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x.len())?;
        Ok(self
            .edges()
            .map(|(i, j)| {
                let d = x[i] - x[j];
                d * d
            })
            .sum())
    }

    pub fn laplacian(&self) -> LaplacianView<'_> {
        LaplacianView { graph: self }
    }

    /// Subgraph induced by `nodes`, relabeled `0..nodes.len()` in the given order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<SparseGraph> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let n = self.node_count();
        let mut local = vec![u32::MAX; n];
        for (k, &v) in nodes.iter().enumerate() {
            if v >= n {
                return Err(Error::NodeOutOfRange { node: v, n });
            }
            if local[v] != u32::MAX {
                return Err(Error::DuplicateNode { node: v });
            }
            local[v] = k as u32;
        }
        if nodes.len() < 2 {
            return Err(Error::TooFewNodes { n: nodes.len() });
        }
        let mut pairs = Vec::new();
        for (k, &v) in nodes.iter().enumerate() {
            for &w in self.neighbors(v) {
                let lw = local[w as usize];
                if lw != u32::MAX && (k as u32) < lw {
                    pairs.push((k as u32, lw));
                }
            }
        }
        Ok(Self::from_checked_pairs(nodes.len(), &pairs))
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SparseGraph> {
        self.check_len(perm.len())?;
        let n = self.node_count();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n {
                return Err(Error::NodeOutOfRange { node: p, n });
            }
            if core::mem::replace(&mut seen[p], true) {
                return Err(Error::DuplicateNode { node: p });
            }
        }
        let pairs: Vec<(u32, u32)> = self
            .edges()
            .map(|(i, j)| (perm[i] as u32, perm[j] as u32))
            .collect();
        Ok(Self::from_checked_pairs(n, &pairs))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.node_count() {
            return Err(Error::DimensionMismatch {
                expected: self.node_count(),
                found: len,
            });
        }
        Ok(())
    }
}

/// The Laplacian `L = D - A` of a borrowed graph, applied matrix-free.
#[derive(Debug, Clone, Copy)]
pub struct LaplacianView<'a> {
    graph: &'a SparseGraph,
}

impl LaplacianView<'_> {
    pub fn dim(&self) -> usize {
        self.graph.node_count()
    }

    /// `out = L x`. Rows are reduced sequentially in neighbor order, so the
    /// result is bit-reproducible.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        let g = self.graph;
        for (i, o) in out.iter_mut().enumerate() {
            let nb = g.neighbors(i);
            let mut acc = nb.len() as f64 * x[i];
            for &j in nb {
                acc -= x[j as usize];
            }
            *o = acc;
        }
    }

    /// Gershgorin upper bound on the spectrum, `2 * max degree`.
    pub fn gershgorin_bound(&self) -> f64 {
        2.0 * self.graph.max_degree() as f64
    }

    /// Row-major dense copy of `L`.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = self.graph.degree(i) as f64;
            for &j in self.graph.neighbors(i) {
                m[i * n + j as usize] = -1.0;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> SparseGraph {
        SparseGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn star4() -> SparseGraph {
        SparseGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn quadform_examples() {
        let k2 = SparseGraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(k2.laplacian_quadform(&[1.0, -1.0]).unwrap(), 4.0);
        assert_eq!(path3().laplacian_quadform(&[1.0, 0.0, -1.0]).unwrap(), 2.0);
        let k5 = SparseGraph::complete(5).unwrap();
        assert_eq!(k5.laplacian_quadform(&[1.0; 5]).unwrap(), 0.0);
    }

    #[test]
    fn quadform_dimension_mismatch() {
        assert_eq!(
            path3().laplacian_quadform(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn degree_examples() {
        assert_eq!(SparseGraph::complete(4).unwrap().degree_vector(), [3, 3, 3, 3]);
        assert_eq!(SparseGraph::empty(3).unwrap().degree_vector(), [0, 0, 0]);
        assert_eq!(path3().degree_vector(), [1, 2, 1]);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(SparseGraph::empty(1), Err(Error::TooFewNodes { n: 1 }));
        assert_eq!(SparseGraph::empty(0), Err(Error::TooFewNodes { n: 0 }));
        assert_eq!(SparseGraph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop { node: 1 }));
        assert_eq!(
            SparseGraph::from_edges(3, [(0, 3)]),
            Err(Error::NodeOutOfRange { node: 3, n: 3 })
        );
    }

    #[test]
    fn duplicates_collapse() {
        let g = SparseGraph::from_edges(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0), [1]);
        assert_eq!(g.neighbors(1), [0]);
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = SparseGraph::complete(4).unwrap();
        let k2 = k4.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(k2, SparseGraph::complete(2).unwrap());

        let all = k4.induced_subgraph(&[0, 1, 2, 3]).unwrap();
        assert_eq!(all, k4);

        let leaves = star4().induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(leaves, SparseGraph::empty(3).unwrap());
    }

    #[test]
    fn induced_subgraph_errors() {
        let g = star4();
        assert_eq!(g.induced_subgraph(&[]), Err(Error::EmptyNodeSet));
        assert_eq!(g.induced_subgraph(&[0, 9]), Err(Error::NodeOutOfRange { node: 9, n: 4 }));
        assert_eq!(g.induced_subgraph(&[1, 1]), Err(Error::DuplicateNode { node: 1 }));
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = star4();
        let mut out = [0.0; 4];
        g.laplacian().apply(&[1.0; 4], &mut out);
        assert_eq!(out, [0.0; 4]);
        assert_eq!(g.laplacian().gershgorin_bound(), 6.0);
    }
}
