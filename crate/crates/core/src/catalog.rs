//! Exhaustive catalogs of small graphs up to isomorphism, generated by
//! one-vertex extension with canonical-form deduplication.

use std::collections::HashSet;

use crate::canon;
use crate::graph::Graph;

/// All graphs on exactly `n` vertices, one representative per isomorphism
/// class. Practical for n <= 8.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n >= 1, "catalogs start at one vertex");
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            // every subset of the old vertices as the new vertex's neighbourhood
            for mask in 0u32..1 << (size - 1) {
                let mut edges = g.edges();
                for v in 0..size - 1 {
                    if mask >> v & 1 == 1 {
                        edges.push((v, size - 1));
                    }
                }
                let candidate = Graph::new(size, &edges).unwrap();
                if seen.insert(canon::graph_key(&candidate)) {
                    next.push(candidate);
                }
            }
        }
        level = next;
    }
    level
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n)
        .into_iter()
        .filter(|g| g.is_connected())
        .collect()
}

/// All connected graphs with between 1 and `max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}
