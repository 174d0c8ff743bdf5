//! Trigraphs: black edges plus red "error" edges, and the contraction
//! operation that drives every sequence in this crate.

use crate::bits::BitRow;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A trigraph over a fixed label space `0..labels`.
///
/// Labels are never reused: contracting removes the absorbed label from the
/// live set and the surviving vertex keeps its own label. The black and red
/// edge sets are disjoint and only touch live labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Trigraph {
    labels: usize,
    live: BitRow,
    live_count: usize,
    black: Vec<BitRow>,
    red: Vec<BitRow>,
    red_deg: Vec<u32>,
}

impl Trigraph {
    /// Lifts a graph to a trigraph with every edge black.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut live = BitRow::with_capacity(n);
        for v in 0..n {
            live.set(v);
        }
        Trigraph {
            labels: n,
            live,
            live_count: n,
            black: (0..n).map(|v| g.neighbors_row(v).clone()).collect(),
            red: vec![BitRow::with_capacity(n); n],
            red_deg: vec![0; n],
        }
    }

    pub fn label_space(&self) -> usize {
        self.labels
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    pub fn is_live(&self, v: usize) -> bool {
        v < self.labels && self.live.contains(v)
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.live.ones()
    }

    pub fn has_black(&self, u: usize, v: usize) -> bool {
        self.black[u].contains(v)
    }

    pub fn has_red(&self, u: usize, v: usize) -> bool {
        self.red[u].contains(v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.has_black(u, v) || self.has_red(u, v)
    }

    pub fn black_row(&self, v: usize) -> &BitRow {
        &self.black[v]
    }

    pub fn red_row(&self, v: usize) -> &BitRow {
        &self.red[v]
    }

    /// Black-or-red neighbourhood of `v`.
    pub fn neighbors_row(&self, v: usize) -> BitRow {
        self.black[v].union(&self.red[v])
    }

    pub fn red_degree(&self, v: usize) -> usize {
        self.red_deg[v] as usize
    }

    pub fn total_degree(&self, v: usize) -> usize {
        self.black[v].count() + self.red_deg[v] as usize
    }

    /// Maximum red degree over live vertices; 0 for an edgeless or all-black
    /// trigraph.
    pub fn max_red_degree(&self) -> usize {
        self.live
            .ones()
            .map(|v| self.red_deg[v] as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn red_edge_count(&self) -> usize {
        self.live.ones().map(|v| self.red_deg[v] as usize).sum::<usize>() / 2
    }

    fn check_pair(&self, survivor: usize, absorbed: usize) -> Result<()> {
        if survivor == absorbed {
            return Err(Error::InvalidContraction(format!(
                "cannot contract vertex {survivor} with itself"
            )));
        }
        for v in [survivor, absorbed] {
            if !self.is_live(v) {
                return Err(Error::InvalidContraction(format!(
                    "vertex {v} is not live"
                )));
            }
        }
        Ok(())
    }

    /// Contracts `absorbed` into `survivor` and returns the resulting
    /// trigraph. For every other vertex `x`: the edge `{x, survivor}` is
    /// black when both old connections were black, red when `x` saw exactly
    /// one of the pair or saw both with a red connection involved, and absent
    /// when `x` saw neither.
    pub fn contract(&self, survivor: usize, absorbed: usize) -> Result<Trigraph> {
        let mut out = self.clone();
        out.contract_in_place(survivor, absorbed)?;
        Ok(out)
    }

    pub(crate) fn contract_in_place(&mut self, survivor: usize, absorbed: usize) -> Result<()> {
        self.check_pair(survivor, absorbed)?;
        let (s, a) = (survivor, absorbed);

        let mut new_black = self.black[s].clone();
        new_black.intersect_with(&self.black[a]);
        new_black.clear(s);
        new_black.clear(a);

        let mut new_red = self.black[s].clone();
        new_red.union_with(&self.red[s]);
        new_red.union_with(&self.black[a]);
        new_red.union_with(&self.red[a]);
        new_red.clear(s);
        new_red.clear(a);
        let touched = new_red.clone();
        new_red.subtract(&new_black);

        for x in touched.ones() {
            let was_rs = self.red[x].contains(s);
            let was_ra = self.red[x].contains(a);
            self.red_deg[x] -= (was_rs as u32) + (was_ra as u32);
            self.black[x].clear(s);
            self.black[x].clear(a);
            self.red[x].clear(s);
            self.red[x].clear(a);
            if new_black.contains(x) {
                self.black[x].set(s);
            } else {
                self.red[x].set(s);
                self.red_deg[x] += 1;
            }
        }

        self.red_deg[s] = new_red.count() as u32;
        self.red_deg[a] = 0;
        self.black[s] = new_black;
        self.red[s] = new_red;
        self.black[a].clear_all();
        self.red[a].clear_all();
        self.live.clear(a);
        self.live_count -= 1;
        Ok(())
    }

    /// Maximum red degree the trigraph would have right after
    /// `contract(survivor, absorbed)`, without materializing the result.
    pub fn contraction_peak_red(&self, survivor: usize, absorbed: usize) -> usize {
        let (s, a) = (survivor, absorbed);
        let mut both_black = self.black[s].clone();
        both_black.intersect_with(&self.black[a]);

        let mut touched = self.black[s].clone();
        touched.union_with(&self.red[s]);
        touched.union_with(&self.black[a]);
        touched.union_with(&self.red[a]);
        touched.clear(s);
        touched.clear(a);

        let mut peak = 0usize;
        let mut survivor_red = 0usize;
        for x in touched.ones() {
            let mut deg = self.red_deg[x] as usize;
            deg -= self.red[x].contains(s) as usize;
            deg -= self.red[x].contains(a) as usize;
            if !both_black.contains(x) {
                deg += 1;
                survivor_red += 1;
            }
            peak = peak.max(deg);
        }
        peak = peak.max(survivor_red);
        for x in self.live.ones() {
            if x != s && x != a && !touched.contains(x) {
                peak = peak.max(self.red_deg[x] as usize);
            }
        }
        peak
    }

    /// Restriction of both edge sets to the live subset `keep`; labels are
    /// preserved.
    pub fn induced_subtrigraph(&self, keep: &[usize]) -> Result<Trigraph> {
        let mut mask = BitRow::with_capacity(self.labels);
        for &v in keep {
            if !self.is_live(v) {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} is not live in the trigraph"
                )));
            }
            if mask.contains(v) {
                return Err(Error::InvalidParameter(format!("duplicate vertex {v}")));
            }
            mask.set(v);
        }
        let mut out = self.clone();
        out.live = mask.clone();
        out.live_count = keep.len();
        for v in 0..self.labels {
            if mask.contains(v) {
                out.black[v].intersect_with(&mask);
                out.red[v].intersect_with(&mask);
                out.red_deg[v] = out.red[v].count() as u32;
            } else {
                out.black[v].clear_all();
                out.red[v].clear_all();
                out.red_deg[v] = 0;
            }
        }
        Ok(out)
    }

    /// The live trigraph compacted to a graph on `0..live_count` ignoring
    /// colours, together with the map from new indices to old labels.
    pub fn underlying_graph(&self) -> (Graph, Vec<usize>) {
        let labels: Vec<usize> = self.live.ones().collect();
        let mut pos = vec![usize::MAX; self.labels];
        for (i, &v) in labels.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = Vec::new();
        for &v in &labels {
            for w in self.neighbors_row(v).ones() {
                if v < w {
                    edges.push((pos[v], pos[w]));
                }
            }
        }
        (Graph::new(labels.len(), &edges).unwrap(), labels)
    }

    /// Checks the structural invariants; used by tests and audit runs.
    pub fn check_invariants(&self) -> Result<()> {
        for v in 0..self.labels {
            if !self.live.contains(v) {
                if !self.black[v].is_empty() || !self.red[v].is_empty() {
                    return Err(Error::InvalidGraph(format!("dead vertex {v} has edges")));
                }
                continue;
            }
            if self.black[v].intersects(&self.red[v]) {
                return Err(Error::InvalidGraph(format!(
                    "black and red overlap at vertex {v}"
                )));
            }
            if self.red_deg[v] as usize != self.red[v].count() {
                return Err(Error::InvalidGraph(format!("stale red degree at {v}")));
            }
            for w in self.neighbors_row(v).ones() {
                if !self.live.contains(w) {
                    return Err(Error::InvalidGraph(format!(
                        "edge ({v},{w}) touches a dead vertex"
                    )));
                }
                if self.has_black(v, w) != self.has_black(w, v)
                    || self.has_red(v, w) != self.has_red(w, v)
                {
                    return Err(Error::InvalidGraph(format!(
                        "asymmetric edge ({v},{w})"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Trigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut blacks = Vec::new();
        let mut reds = Vec::new();
        for v in self.live.ones() {
            for w in self.black[v].ones() {
                if v < w {
                    blacks.push((v, w));
                }
            }
            for w in self.red[v].ones() {
                if v < w {
                    reds.push((v, w));
                }
            }
        }
        write!(
            f,
            "Trigraph(live={:?}, black={blacks:?}, red={reds:?})",
            self.live
        )
    }
}
