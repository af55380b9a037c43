//! Labeled simple graphs and their nearest unit interval graph.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::mask::BinaryMask;
use crate::pipeline::{approximate_binary_with, ApproxReport, PipelineOptions};

/// Simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Stored with `u < v`.
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Rejects self-loops, out-of-range vertices and duplicate edges (in
    /// either orientation).
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedGraph("graph must have at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::MalformedGraph(format!("self-loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::MalformedGraph(format!("edge {u} {v} has a vertex outside 1..={n}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::MalformedGraph(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(Self { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Adjacency matrix with the diagonal set to 1.
    pub fn augmented_adjacency(&self) -> BinaryMask {
        let mut m = BinaryMask::identity(self.n);
        for &(u, v) in &self.edges {
            m.set(u, v, true);
        }
        m
    }

    /// Graph whose edges are the off-diagonal ones of `m`.
    pub fn from_adjacency(m: &BinaryMask) -> Self {
        let n = m.n();
        let edges = (1..=n).flat_map(|u| ((u + 1)..=n).map(move |v| (u, v))).filter(|&(u, v)| m.get(u, v)).collect();
        Self { n, edges }
    }

    /// Number of edge insertions and deletions turning `self` into `other`.
    pub fn edit_distance(&self, other: &Self) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(self.edges.symmetric_difference(&other.edges).count())
    }
}

/// Unit interval graph close to `g` in edit distance.
///
/// The output's augmented adjacency matrix is Robinson in the given vertex
/// order, and `ed(g, out) / n^2 <= 26 * gamma1(B_g)^(1/3)`.
pub fn unit_interval_approx(g: &Graph) -> (Graph, usize, ApproxReport) {
    let b = g.augmented_adjacency();
    let opts = PipelineOptions { preprocess: true, restore_diagonal: true, unit_diagonal: true };
    let (r, report) = approximate_binary_with(&b, opts);
    let out = Graph::from_adjacency(&r);
    let ed = g.edit_distance(&out).expect("same vertex set");
    (out, ed, report)
}
