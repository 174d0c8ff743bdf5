//! Canonical forms for small graphs and trigraphs.
//!
//! The encoding returned by the canonicalizers is the full relabelled
//! structure, so equal keys always certify isomorphism. The trigraph variant
//! takes a leaf cap: hitting the cap can make two isomorphic states produce
//! different keys (a missed memo hit), never the reverse. The graph variant
//! runs uncapped and is a true canonical form, which the catalog relies on.

use std::collections::HashMap;

use crate::graph::Graph;
use crate::trigraph::Trigraph;

const NO_EDGE: u8 = 0;
const BLACK: u8 = 1;
const RED: u8 = 2;

/// Compact two-colour adjacency used by the search.
struct Compact {
    k: usize,
    colour: Vec<Vec<u8>>, // k x k matrix of edge codes
}

impl Compact {
    fn from_trigraph(t: &Trigraph, mark: Option<usize>) -> (Compact, Vec<usize>) {
        let labels: Vec<usize> = t.live_vertices().collect();
        let k = labels.len();
        let mut colour = vec![vec![NO_EDGE; k]; k];
        for (i, &v) in labels.iter().enumerate() {
            for (j, &w) in labels.iter().enumerate() {
                if t.has_black(v, w) {
                    colour[i][j] = BLACK;
                } else if t.has_red(v, w) {
                    colour[i][j] = RED;
                }
            }
        }
        let init = labels
            .iter()
            .map(|&v| usize::from(mark == Some(v)))
            .collect();
        (Compact { k, colour }, init)
    }

    fn from_graph(g: &Graph) -> (Compact, Vec<usize>) {
        let k = g.n();
        let mut colour = vec![vec![NO_EDGE; k]; k];
        for (u, v) in g.edges() {
            colour[u][v] = BLACK;
            colour[v][u] = BLACK;
        }
        (Compact { k, colour }, vec![0; k])
    }

    /// Colour refinement: repeatedly split classes by the multiset of
    /// (edge colour, class) pairs seen at each vertex. New class ids are
    /// assigned by signature order, which is relabelling-invariant.
    fn refine(&self, cells: &mut Vec<usize>) {
        loop {
            let mut sigs: Vec<(usize, Vec<(u8, usize)>)> = Vec::with_capacity(self.k);
            for v in 0..self.k {
                let mut nbrs: Vec<(u8, usize)> = (0..self.k)
                    .filter(|&w| self.colour[v][w] != NO_EDGE)
                    .map(|w| (self.colour[v][w], cells[w]))
                    .collect();
                nbrs.sort_unstable();
                sigs.push((cells[v], nbrs));
            }
            let mut order: Vec<&(usize, Vec<(u8, usize)>)> = sigs.iter().collect();
            order.sort_unstable();
            order.dedup();
            let index: HashMap<_, _> = order.iter().enumerate().map(|(i, s)| (*s, i)).collect();
            let next: Vec<usize> = sigs.iter().map(|s| index[s]).collect();
            if next == *cells {
                return;
            }
            *cells = next;
        }
    }

    fn encode(&self, cells: &[usize]) -> Vec<u8> {
        let mut order: Vec<usize> = (0..self.k).collect();
        order.sort_unstable_by_key(|&v| cells[v]);
        let mut out = Vec::with_capacity(2 + self.k * self.k / 4);
        out.push(self.k as u8);
        let mut acc = 0u8;
        let mut used = 0;
        for i in 0..self.k {
            for j in i + 1..self.k {
                acc = acc << 2 | self.colour[order[i]][order[j]];
                used += 1;
                if used == 4 {
                    out.push(acc);
                    acc = 0;
                    used = 0;
                }
            }
        }
        if used > 0 {
            out.push(acc << (2 * (4 - used)));
        }
        out
    }

    fn search(&self, cells: Vec<usize>, best: &mut Option<Vec<u8>>, leaves_left: &mut usize) {
        if *leaves_left == 0 {
            return;
        }
        let mut cells = cells;
        self.refine(&mut cells);
        // first non-singleton class by class id
        let mut counts = vec![0usize; self.k];
        for &c in &cells {
            counts[c] += 1;
        }
        let target = (0..self.k).find(|&c| counts[c] > 1);
        match target {
            None => {
                *leaves_left -= 1;
                let enc = self.encode(&cells);
                if best.as_ref().is_none_or(|b| enc < *b) {
                    *best = Some(enc);
                }
            }
            Some(cell) => {
                for v in 0..self.k {
                    if cells[v] != cell {
                        continue;
                    }
                    // individualize v: shift later classes up by one
                    let child: Vec<usize> = (0..self.k)
                        .map(|w| {
                            if w == v {
                                cell
                            } else if cells[w] > cell || (cells[w] == cell && w != v) {
                                cells[w] + 1
                            } else {
                                cells[w]
                            }
                        })
                        .collect();
                    self.search(child, best, leaves_left);
                    if *leaves_left == 0 {
                        return;
                    }
                }
            }
        }
    }

    fn canonical(&self, init: Vec<usize>, cap: usize) -> Vec<u8> {
        let mut best = None;
        let mut leaves = cap;
        self.search(init, &mut best, &mut leaves);
        best.expect("canonical search visits at least one leaf")
    }
}

/// Canonical key for the live part of a trigraph, capped for use as a memo
/// key in the solver.
pub fn trigraph_key(t: &Trigraph, leaf_cap: usize) -> Vec<u8> {
    let (compact, init) = Compact::from_trigraph(t, None);
    compact.canonical(init, leaf_cap.max(1))
}

/// Exact canonical key for a small graph (uncapped search).
pub fn graph_key(g: &Graph) -> Vec<u8> {
    let (compact, init) = Compact::from_graph(g);
    compact.canonical(init, usize::MAX)
}

/// Exact isomorphism test by backtracking on degree-compatible mappings.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let n = a.n();
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let mut sorted_a = deg_a.clone();
    sorted_a.sort_unstable();
    db.sort_unstable();
    if sorted_a != db {
        return false;
    }
    // map vertices of `a` in decreasing-degree order to candidates in `b`
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| std::cmp::Reverse(deg_a[v]));
    deg_a = order.iter().map(|&v| a.degree(v)).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        pos: usize,
        order: &[usize],
        deg_a: &[usize],
        a: &Graph,
        b: &Graph,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        'cand: for w in 0..b.n() {
            if used[w] || b.degree(w) != deg_a[pos] {
                continue;
            }
            for &prev in &order[..pos] {
                if a.has_edge(v, prev) != b.has_edge(w, image[prev]) {
                    continue 'cand;
                }
            }
            image[v] = w;
            used[w] = true;
            if extend(pos + 1, order, deg_a, a, b, image, used) {
                return true;
            }
            used[w] = false;
            image[v] = usize::MAX;
        }
        false
    }
    extend(0, &order, &deg_a, a, b, &mut image, &mut used)
}

/// Sound vertex-transitivity detection: true only when every vertex-marked
/// canonical key coincides, which certifies an automorphism between any two
/// vertices. May answer false for transitive graphs with unlucky refinement.
pub fn is_vertex_transitive(g: &Graph) -> bool {
    if g.n() <= 1 {
        return true;
    }
    if g.regular_degree().is_none() {
        return false;
    }
    let t = Trigraph::from_graph(g);
    let marked_key = |v: usize| {
        let (c, init) = Compact::from_trigraph(&t, Some(v));
        c.canonical(init, 512)
    };
    let key0 = marked_key(0);
    (1..g.n()).all(|v| marked_key(v) == key0)
}
