//! Simple undirected graphs with dense integer labels.

use crate::bits::BitRow;
use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// No self-loops, no parallel edges; adjacency is kept symmetric by
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<BitRow>,
}

impl Graph {
    /// Builds a graph from an explicit edge list. Rejects loops, out-of-range
    /// endpoints, and duplicate edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph {
            n,
            m: 0,
            adj: vec![BitRow::with_capacity(n); n],
        };
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, &[]).unwrap()
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u},{v}) out of range for n={}",
                self.n
            )));
        }
        if self.adj[u].contains(v) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
        }
        self.adj[u].set(v);
        self.adj[v].set(u);
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors_row(&self, v: usize) -> &BitRow {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `Some(d)` when every vertex has degree exactly `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = BitRow::with_capacity(self.n);
        let mut stack = vec![0];
        seen.set(0);
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.adj[v].ones() {
                if !seen.contains(w) {
                    seen.set(w);
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// The induced subgraph on `keep`, relabelled to `0..keep.len()` in the
    /// order given.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<Graph> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.n {
                return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
            }
            if pos[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!("duplicate vertex {v}")));
            }
            pos[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            for w in self.adj[u].ones() {
                if pos[w] != usize::MAX && pos[w] > i {
                    edges.push((i, pos[w]));
                }
            }
        }
        Graph::new(keep.len(), &edges)
    }

    /// Applies a permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges: Vec<_> = self
            .edges()
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::new(self.n, &edges).unwrap()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
