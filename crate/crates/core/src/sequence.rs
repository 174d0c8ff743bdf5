//! Contraction sequences and the width verifier.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::trigraph::Trigraph;

/// An ordered list of `(survivor, absorbed)` contractions. A full sequence
/// for an `n`-vertex graph has exactly `n - 1` steps; prefixes are valid as
/// partial sequences.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ContractionSequence {
    steps: Vec<(usize, usize)>,
}

impl ContractionSequence {
    pub fn new() -> Self {
        ContractionSequence { steps: Vec::new() }
    }

    pub fn from_steps(steps: Vec<(usize, usize)>) -> Self {
        ContractionSequence { steps }
    }

    pub fn push(&mut self, survivor: usize, absorbed: usize) {
        self.steps.push((survivor, absorbed));
    }

    pub fn extend(&mut self, other: &ContractionSequence) {
        self.steps.extend_from_slice(&other.steps);
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_full_for(&self, n: usize) -> bool {
        n > 0 && self.steps.len() == n - 1
    }

    /// Rewrites every step through a label map.
    pub fn mapped(&self, map: impl Fn(usize) -> usize) -> ContractionSequence {
        ContractionSequence {
            steps: self.steps.iter().map(|&(s, a)| (map(s), map(a))).collect(),
        }
    }
}

/// Applies a full sequence to `g` and returns the maximum red degree seen
/// over all intermediate trigraphs. The twin-width of `g` is at most this
/// value for any valid full sequence.
pub fn sequence_width(g: &Graph, seq: &ContractionSequence) -> Result<usize> {
    if !seq.is_full_for(g.n()) {
        return Err(Error::InvalidSequence(format!(
            "expected {} steps for {} vertices, got {}",
            g.n().saturating_sub(1),
            g.n(),
            seq.len()
        )));
    }
    let (width, _) = replay(&Trigraph::from_graph(g), seq)?;
    Ok(width)
}

/// Applies a (possibly partial) sequence to a trigraph, returning the peak
/// red degree along the way and the final trigraph.
pub fn replay(t: &Trigraph, seq: &ContractionSequence) -> Result<(usize, Trigraph)> {
    let mut t = t.clone();
    let mut width = t.max_red_degree();
    for &(s, a) in seq.steps() {
        t.contract_in_place(s, a)
            .map_err(|e| Error::InvalidSequence(e.to_string()))?;
        width = width.max(t.max_red_degree());
    }
    Ok((width, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_twin_sequence_has_width_zero() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let seq = ContractionSequence::from_steps(vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(sequence_width(&g, &seq).unwrap(), 0);
    }

    #[test]
    fn p5_end_inward_has_width_one() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let seq = ContractionSequence::from_steps(vec![(1, 0), (2, 1), (3, 2), (4, 3)]);
        assert_eq!(sequence_width(&g, &seq).unwrap(), 1);
    }

    #[test]
    fn c4_antipodal_pairs_have_width_zero() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let seq = ContractionSequence::from_steps(vec![(0, 2), (1, 3), (0, 1)]);
        assert_eq!(sequence_width(&g, &seq).unwrap(), 0);
    }

    #[test]
    fn malformed_sequences_are_rejected() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        // wrong length
        let seq = ContractionSequence::from_steps(vec![(0, 1)]);
        assert!(sequence_width(&g, &seq).is_err());
        // reuses a dead vertex
        let seq = ContractionSequence::from_steps(vec![(0, 1), (2, 1)]);
        assert!(sequence_width(&g, &seq).is_err());
        // self pair
        let seq = ContractionSequence::from_steps(vec![(0, 0), (1, 2)]);
        assert!(sequence_width(&g, &seq).is_err());
    }
}
