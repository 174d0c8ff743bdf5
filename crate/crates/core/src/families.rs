//! Deterministic generators for the named graph families used across the
//! toolkit: cliques, paths, cycles, stars, bicliques, grids, Hamming graphs
//! (hypercubes), weak clique powers, Paley graphs, and seeded random regular
//! graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::SmallField;
use crate::graph::Graph;
use crate::products;

const MAX_VERTICES: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    CompleteBipartite { n: usize, m: usize },
    Grid { rows: usize, cols: usize },
    Hypercube { d: usize },
    Hamming { d: usize, k: usize },
    WeakPower { d: usize, k: usize },
    Paley { q: usize },
    RandomRegular { n: usize, d: usize, seed: u64 },
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match *spec {
        FamilySpec::Complete { n } => complete(n),
        FamilySpec::Path { n } => path(n),
        FamilySpec::Cycle { n } => cycle(n),
        FamilySpec::Star { leaves } => star(leaves),
        FamilySpec::CompleteBipartite { n, m } => complete_bipartite(n, m),
        FamilySpec::Grid { rows, cols } => grid(rows, cols),
        FamilySpec::Hypercube { d } => hamming(d, 2),
        FamilySpec::Hamming { d, k } => hamming(d, k),
        FamilySpec::WeakPower { d, k } => weak_power(d, k),
        FamilySpec::Paley { q } => paley(q),
        FamilySpec::RandomRegular { n, d, seed } => random_regular(n, d, seed),
    }
}

fn positive(value: usize, what: &str) -> Result<usize> {
    if value == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be at least 1")));
    }
    Ok(value)
}

pub fn complete(n: usize) -> Result<Graph> {
    positive(n, "n")?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    positive(n, "n")?;
    Graph::new(n, &(0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>())
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("cycles need n >= 3".into()));
    }
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    Graph::new(n, &edges)
}

/// The star K_{1,leaves}: centre 0, leaves 1..=leaves.
pub fn star(leaves: usize) -> Result<Graph> {
    positive(leaves, "leaves")?;
    Graph::new(leaves + 1, &(1..=leaves).map(|v| (0, v)).collect::<Vec<_>>())
}

pub fn complete_bipartite(n: usize, m: usize) -> Result<Graph> {
    positive(n, "n")?;
    positive(m, "m")?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..m {
            edges.push((u, n + v));
        }
    }
    Graph::new(n + m, &edges)
}

pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    Ok(products::cartesian(&path(rows)?, &path(cols)?))
}

fn checked_power(k: usize, d: usize) -> Result<usize> {
    let mut total = 1usize;
    for _ in 0..d {
        total = total
            .checked_mul(k)
            .filter(|&t| t <= MAX_VERTICES)
            .ok_or_else(|| Error::InvalidParameter(format!("{k}^{d} vertices is too large")))?;
    }
    Ok(total)
}

/// Digits of `label` in base `k`, most significant first.
fn digits(mut label: usize, d: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    for slot in (0..d).rev() {
        out[slot] = label % k;
        label /= k;
    }
    out
}

/// Hamming graph H(d,k): strings in {0..k-1}^d, adjacent when they differ in
/// exactly one coordinate. Labels put the first coordinate most significant,
/// which makes H(d,k) literally equal to cartesian(K_k, H(d-1,k)) under the
/// product's flat indexing.
pub fn hamming(d: usize, k: usize) -> Result<Graph> {
    positive(d, "d")?;
    positive(k, "k")?;
    let n = checked_power(k, d)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let du = digits(u, d, k);
            let dv = digits(v, d, k);
            if du.iter().zip(&dv).filter(|(a, b)| a != b).count() == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges)
}

/// Weak clique power T(d,k): strings adjacent when they differ in every
/// coordinate; equals tensor(K_k, T(d-1,k)) under the same labelling.
pub fn weak_power(d: usize, k: usize) -> Result<Graph> {
    positive(d, "d")?;
    positive(k, "k")?;
    let n = checked_power(k, d)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let du = digits(u, d, k);
            let dv = digits(v, d, k);
            if du.iter().zip(&dv).all(|(a, b)| a != b) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges)
}

/// Paley graph P(q) for a prime power q = 1 mod 4: vertices are the field
/// elements, edges join pairs whose difference is a nonzero square. The
/// arithmetic runs in GF(q), not Z/q, which matters for q = 9 and 25.
pub fn paley(q: usize) -> Result<Graph> {
    if q % 4 != 1 {
        return Err(Error::InvalidParameter(format!(
            "Paley graphs need q = 1 mod 4, got {q}"
        )));
    }
    let field = SmallField::new(q)?;
    let squares = field.nonzero_squares();
    let mut edges = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            if squares[field.sub(a, b)] {
                edges.push((a, b));
            }
        }
    }
    let g = Graph::new(q, &edges)?;
    debug_assert_eq!(g.regular_degree(), Some((q - 1) / 2));
    Ok(g)
}

/// A random simple d-regular graph on n vertices, deterministic for a fixed
/// seed. Tries the pairing model first; when rejection keeps failing (dense
/// degrees make simple pairings vanishingly rare), falls back to a circulant
/// base graph randomized by degree-preserving double-edge swaps.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n && !(n == 1 && d == 0) {
        return Err(Error::InvalidParameter(format!(
            "degree {d} impossible on {n} vertices"
        )));
    }
    if n * d % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "n*d must be even, got n={n} d={d}"
        )));
    }
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(g) = pairing_model(n, d, &mut rng) {
        return Ok(g);
    }
    circulant_shuffled(n, d, &mut rng)
}

fn pairing_model(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    'attempt: for _ in 0..200 {
        stubs.shuffle(rng);
        let mut edges = Vec::with_capacity(n * d / 2);
        let mut seen = std::collections::HashSet::new();
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        return Some(Graph::new(n, &edges).unwrap());
    }
    None
}

fn circulant_shuffled(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if d % 2 == 1 && n % 2 == 1 {
        return Err(Error::RetryExhausted(format!(
            "no circulant base for n={n} d={d}"
        )));
    }
    let mut edge_set = std::collections::BTreeSet::new();
    for offset in 1..=d / 2 {
        for v in 0..n {
            let w = (v + offset) % n;
            edge_set.insert((v.min(w), v.max(w)));
        }
    }
    if d % 2 == 1 {
        for v in 0..n / 2 {
            edge_set.insert((v, v + n / 2));
        }
    }
    let mut edges: Vec<(usize, usize)> = edge_set.into_iter().collect();
    let has = |edges: &[(usize, usize)], u: usize, v: usize| {
        edges.contains(&(u.min(v), u.max(v)))
    };
    // randomize with double-edge swaps, which preserve every degree
    let swaps = 20 * edges.len();
    for _ in 0..swaps {
        let a = rng.gen_range(0..edges.len());
        let b = rng.gen_range(0..edges.len());
        if a == b {
            continue;
        }
        let (u1, v1) = edges[a];
        let (u2, v2) = edges[b];
        if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
            continue;
        }
        let (x1, y1, x2, y2) = if rng.gen_bool(0.5) {
            (u1, u2, v1, v2)
        } else {
            (u1, v2, v1, u2)
        };
        if x1 == y1 || x2 == y2 || has(&edges, x1, y1) || has(&edges, x2, y2) {
            continue;
        }
        edges[a] = (x1.min(y1), x1.max(y1));
        edges[b] = (x2.min(y2), x2.max(y2));
    }
    Graph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_3_2_is_the_cube() {
        let g = hamming(3, 2).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.m(), 12);
        assert_eq!(g.regular_degree(), Some(3));
    }

    #[test]
    fn hamming_regularity_formula() {
        for (d, k) in [(2, 3), (3, 3), (2, 4), (4, 2)] {
            let g = hamming(d, k).unwrap();
            assert_eq!(g.regular_degree(), Some(d * (k - 1)), "H({d},{k})");
        }
    }

    #[test]
    fn weak_power_of_two_symbols_is_a_matching() {
        for d in 1..=4 {
            let g = weak_power(d, 2).unwrap();
            assert_eq!(g.regular_degree(), Some(1), "T({d},2)");
            assert_eq!(g.m(), g.n() / 2);
        }
    }

    #[test]
    fn weak_power_regularity_formula() {
        for (d, k) in [(2, 3), (3, 3), (2, 4)] {
            let g = weak_power(d, k).unwrap();
            assert_eq!(g.regular_degree(), Some((k - 1).pow(d as u32)), "T({d},{k})");
        }
    }

    #[test]
    fn paley_5_is_the_pentagon() {
        let g = paley(5).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.regular_degree(), Some(2));
        // squares mod 5 are {1,4}: the cycle 0-1-2-3-4-0
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 4));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn paley_9_is_four_regular() {
        let g = paley(9).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.regular_degree(), Some(4));
    }

    #[test]
    fn paley_rejects_bad_orders() {
        assert!(paley(7).is_err()); // 7 = 3 mod 4
        assert!(paley(15).is_err());
    }

    #[test]
    fn random_regular_unique_cubic_on_four_vertices() {
        for seed in 0..10 {
            let g = random_regular(4, 3, seed).unwrap();
            assert_eq!(g.m(), 6); // K4 is the only simple 3-regular graph here
        }
    }

    #[test]
    fn random_regular_two_regular_is_cycle_cover() {
        for seed in 0..10 {
            let g = random_regular(6, 2, seed).unwrap();
            assert_eq!(g.regular_degree(), Some(2));
        }
    }

    #[test]
    fn random_regular_postcondition_sampled() {
        let mut checked = 0;
        for seed in 0..25 {
            for (n, d) in [(8, 3), (9, 4), (10, 5), (12, 4)] {
                let g = random_regular(n, d, seed).unwrap();
                assert_eq!(g.regular_degree(), Some(d));
                checked += 1;
            }
        }
        assert_eq!(checked, 100);
    }

    #[test]
    fn random_regular_is_seed_deterministic() {
        let a = random_regular(10, 3, 7).unwrap();
        let b = random_regular(10, 3, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_regular_rejects_infeasible() {
        assert!(random_regular(5, 3, 0).is_err()); // odd n*d
        assert!(random_regular(4, 4, 0).is_err()); // d >= n
    }

    #[test]
    fn grid_2_by_3() {
        let g = grid(2, 3).unwrap();
        assert_eq!((g.n(), g.m()), (6, 7));
    }
}
