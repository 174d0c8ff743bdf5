//! Rotation maps for regular graphs.
//!
//! For a d-regular graph with a per-vertex labelling of incident edges by
//! 1..=d, the rotation map sends (v, i) to (w, j) when v's i-th edge leads to
//! w and is w's j-th edge. It is an involution, and the multiset of
//! destinations from v is exactly N(v). Replacement and zig-zag products are
//! defined on top of these maps, and their structure genuinely depends on
//! the labelling, so callers may supply custom maps.

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationMap {
    n: usize,
    degree: usize,
    /// Entry `v * degree + (i - 1)` holds `(w, j)`.
    table: Vec<(usize, usize)>,
}

impl RotationMap {
    pub fn from_table(n: usize, degree: usize, table: Vec<(usize, usize)>) -> Self {
        assert_eq!(table.len(), n * degree);
        RotationMap { n, degree, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Slot `i` is 1-based.
    pub fn rot(&self, v: usize, i: usize) -> (usize, usize) {
        self.table[v * self.degree + (i - 1)]
    }

    pub fn check_involution(&self) -> Result<()> {
        for v in 0..self.n {
            for i in 1..=self.degree {
                let (w, j) = self.rot(v, i);
                if w >= self.n || j == 0 || j > self.degree {
                    return Err(Error::InvalidParameter(format!(
                        "rotation entry ({v},{i}) -> ({w},{j}) out of range"
                    )));
                }
                if self.rot(w, j) != (v, i) {
                    return Err(Error::InvalidParameter(format!(
                        "rotation is not an involution at ({v},{i})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks that the map describes exactly the edges of `g`: for every
    /// vertex the slot destinations enumerate N(v) with no repeats.
    pub fn check_describes(&self, g: &Graph) -> Result<()> {
        self.check_involution()?;
        if g.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "rotation map is over {} vertices, graph has {}",
                self.n,
                g.n()
            )));
        }
        match g.regular_degree() {
            Some(d) if d == self.degree => {}
            _ => {
                return Err(Error::NotRegular(format!(
                    "graph is not {}-regular",
                    self.degree
                )))
            }
        }
        for v in 0..self.n {
            let mut dests: Vec<usize> = (1..=self.degree).map(|i| self.rot(v, i).0).collect();
            dests.sort_unstable();
            dests.dedup();
            let mut nbrs: Vec<usize> = g.neighbors(v).collect();
            nbrs.sort_unstable();
            if dests != nbrs {
                return Err(Error::InvalidParameter(format!(
                    "slot destinations of vertex {v} do not match its neighbourhood"
                )));
            }
        }
        Ok(())
    }
}

/// The deterministic default rotation map of a regular graph: vertex `v`'s
/// i-th edge goes to its i-th smallest neighbour.
pub fn build_rotation_map(g: &Graph) -> Result<RotationMap> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::NotRegular("rotation maps need a regular graph".into()))?;
    let nbrs: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).collect()).collect();
    let mut table = vec![(0usize, 0usize); g.n() * d];
    for v in 0..g.n() {
        for (idx, &w) in nbrs[v].iter().enumerate() {
            let j = nbrs[w].iter().position(|&x| x == v).unwrap() + 1;
            table[v * d + idx] = (w, j);
        }
    }
    let rot = RotationMap::from_table(g.n(), d, table);
    debug_assert!(rot.check_describes(g).is_ok());
    Ok(rot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, FamilySpec};

    #[test]
    fn c4_sorted_neighbour_map() {
        // C4 as the cycle 0-1-2-3-0; N(0) = {1,3} in sorted order, so slot 1
        // of vertex 0 leads to vertex 1, which sees 0 as its first neighbour.
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let rot = build_rotation_map(&g).unwrap();
        assert_eq!(rot.rot(0, 1), (1, 1));
        assert_eq!(rot.rot(0, 2), (3, 1));
        assert_eq!(rot.rot(2, 2), (3, 2));
        rot.check_describes(&g).unwrap();
    }

    #[test]
    fn k3_slots_cover_neighbours() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let rot = build_rotation_map(&g).unwrap();
        for v in 0..3 {
            let mut seen: Vec<usize> = (1..=2).map(|i| rot.rot(v, i).0).collect();
            seen.sort_unstable();
            let mut nbrs: Vec<usize> = g.neighbors(v).collect();
            nbrs.sort_unstable();
            assert_eq!(seen, nbrs);
        }
    }

    #[test]
    fn involution_on_random_regular_graphs() {
        for (n, d, seed) in [(8, 3, 1), (10, 4, 2), (12, 5, 3), (6, 2, 4)] {
            let g = families::generate(&FamilySpec::RandomRegular { n, d, seed }).unwrap();
            let rot = build_rotation_map(&g).unwrap();
            rot.check_involution().unwrap();
            rot.check_describes(&g).unwrap();
        }
    }

    #[test]
    fn non_regular_input_is_rejected() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(build_rotation_map(&g), Err(Error::NotRegular(_))));
    }
}
