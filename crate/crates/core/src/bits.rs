//! Fixed-capacity bitsets used as adjacency rows.

const WORD_BITS: usize = 64;

/// A bitset over a fixed label space `0..capacity`.
///
/// Capacity is decided by the owner (all rows of one graph share it); the
/// word vector never grows after construction.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn with_capacity(capacity: usize) -> Self {
        BitRow {
            words: vec![0; capacity.div_ceil(WORD_BITS)],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear_all(&mut self) {
        self.words.fill(0);
    }

    pub fn union_with(&mut self, other: &BitRow) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &BitRow) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn subtract(&mut self, other: &BitRow) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
    }

    pub fn union(&self, other: &BitRow) -> BitRow {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &BitRow) -> BitRow {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// Number of positions set in exactly one of the two rows.
    pub fn symdiff_count(&self, other: &BitRow) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            row: self,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }
}

impl std::fmt::Debug for BitRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

pub struct Ones<'a> {
    row: &'a BitRow,
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.row.words.len() {
                return None;
            }
            self.current = self.row.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * WORD_BITS + bit)
    }
}
