//! The nine graph products, all built on the flat vertex indexing
//! `(u, i) -> u * fibre + i`. Corona reserves fibre slot 0 for the hub
//! vertex and shifts the H-copy to slots 1..=n_H.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rotation::RotationMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Cartesian,
    Tensor,
    Strong,
    Lexicographic,
    Modular,
    Corona,
    Rooted,
    Replacement,
    Zigzag,
}

impl ProductKind {
    pub const ALL: [ProductKind; 9] = [
        ProductKind::Cartesian,
        ProductKind::Tensor,
        ProductKind::Strong,
        ProductKind::Lexicographic,
        ProductKind::Modular,
        ProductKind::Corona,
        ProductKind::Rooted,
        ProductKind::Replacement,
        ProductKind::Zigzag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Tensor => "tensor",
            ProductKind::Strong => "strong",
            ProductKind::Lexicographic => "lexicographic",
            ProductKind::Modular => "modular",
            ProductKind::Corona => "corona",
            ProductKind::Rooted => "rooted",
            ProductKind::Replacement => "replacement",
            ProductKind::Zigzag => "zigzag",
        }
    }
}

impl std::str::FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProductKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown product kind {s:?}")))
    }
}

/// The bijection between operand pairs and flat labels of a product graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductVertexIndex {
    pub kind: ProductKind,
    pub g_size: usize,
    pub h_size: usize,
}

impl ProductVertexIndex {
    pub fn new(kind: ProductKind, g_size: usize, h_size: usize) -> Self {
        ProductVertexIndex {
            kind,
            g_size,
            h_size,
        }
    }

    /// Slots per copy of G's vertex: corona carries the hub in slot 0.
    pub fn fibre(&self) -> usize {
        match self.kind {
            ProductKind::Corona => self.h_size + 1,
            _ => self.h_size,
        }
    }

    pub fn total(&self) -> usize {
        self.g_size * self.fibre()
    }

    pub fn encode(&self, u: usize, slot: usize) -> usize {
        debug_assert!(u < self.g_size && slot < self.fibre());
        u * self.fibre() + slot
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        (x / self.fibre(), x % self.fibre())
    }

    /// Corona hub vertex (u, infinity).
    pub fn encode_hub(&self, u: usize) -> usize {
        debug_assert_eq!(self.kind, ProductKind::Corona);
        self.encode(u, 0)
    }

    /// Corona copy vertex (u, i) for i in V(H).
    pub fn encode_copy(&self, u: usize, i: usize) -> usize {
        debug_assert_eq!(self.kind, ProductKind::Corona);
        self.encode(u, i + 1)
    }
}

fn pairwise_product(
    kind: ProductKind,
    g: &Graph,
    h: &Graph,
    rule: impl Fn(usize, usize, usize, usize) -> bool,
) -> Graph {
    let idx = ProductVertexIndex::new(kind, g.n(), h.n());
    let n = idx.total();
    let mut edges = Vec::new();
    for x in 0..n {
        let (u, i) = idx.decode(x);
        for y in x + 1..n {
            let (v, j) = idx.decode(y);
            if rule(u, i, v, j) {
                edges.push((x, y));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// (u,i)(v,j) is an edge iff [u = v and ij in E(H)] or [i = j and uv in E(G)].
pub fn cartesian(g: &Graph, h: &Graph) -> Graph {
    pairwise_product(ProductKind::Cartesian, g, h, |u, i, v, j| {
        (u == v && h.has_edge(i, j)) || (i == j && g.has_edge(u, v))
    })
}

/// (u,i)(v,j) is an edge iff uv in E(G) and ij in E(H).
pub fn tensor(g: &Graph, h: &Graph) -> Graph {
    pairwise_product(ProductKind::Tensor, g, h, |u, i, v, j| {
        g.has_edge(u, v) && h.has_edge(i, j)
    })
}

/// Edge set is the union of the Cartesian and tensor edge sets.
pub fn strong(g: &Graph, h: &Graph) -> Graph {
    pairwise_product(ProductKind::Strong, g, h, |u, i, v, j| {
        (u == v && h.has_edge(i, j))
            || (i == j && g.has_edge(u, v))
            || (g.has_edge(u, v) && h.has_edge(i, j))
    })
}

/// (u,i)(v,j) is an edge iff [u = v and ij in E(H)] or [uv in E(G)].
pub fn lexicographic(g: &Graph, h: &Graph) -> Graph {
    pairwise_product(ProductKind::Lexicographic, g, h, |u, i, v, j| {
        (u == v && h.has_edge(i, j)) || g.has_edge(u, v)
    })
}

/// Edges join pairs that agree in neither coordinate and are either edges in
/// both factors or non-edges in both factors.
pub fn modular(g: &Graph, h: &Graph) -> Graph {
    pairwise_product(ProductKind::Modular, g, h, |u, i, v, j| {
        u != v && i != j && (g.has_edge(u, v) == h.has_edge(i, j))
    })
}

/// Corona: the hub layer carries a copy of G, and each hub (u, inf) is
/// complete to its private copy of H.
pub fn corona(g: &Graph, h: &Graph) -> Graph {
    let idx = ProductVertexIndex::new(ProductKind::Corona, g.n(), h.n());
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        edges.push((idx.encode_hub(u), idx.encode_hub(v)));
    }
    for u in 0..g.n() {
        for (i, j) in h.edges() {
            edges.push((idx.encode_copy(u, i), idx.encode_copy(u, j)));
        }
        for i in 0..h.n() {
            edges.push((idx.encode_hub(u), idx.encode_copy(u, i)));
        }
    }
    Graph::new(idx.total(), &edges).unwrap()
}

/// Rooted product: copies of H glued to G along the root vertex r.
pub fn rooted(g: &Graph, h: &Graph, r: usize) -> Result<Graph> {
    if r >= h.n() {
        return Err(Error::InvalidParameter(format!(
            "root {r} out of range for {} vertices",
            h.n()
        )));
    }
    Ok(pairwise_product(ProductKind::Rooted, g, h, |u, i, v, j| {
        (g.has_edge(u, v) && i == r && j == r) || (u == v && h.has_edge(i, j))
    }))
}

fn check_replacement_inputs(
    g: &Graph,
    h: &Graph,
    rot_g: &RotationMap,
    rot_h: &RotationMap,
) -> Result<(usize, usize)> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::NotRegular("outer graph must be regular".into()))?;
    let delta = h
        .regular_degree()
        .ok_or_else(|| Error::NotRegular("inner graph must be regular".into()))?;
    if h.n() != d {
        return Err(Error::DimensionMismatch(format!(
            "inner graph must have exactly {d} vertices, has {}",
            h.n()
        )));
    }
    if d == 0 {
        return Err(Error::InvalidParameter(
            "replacement and zig-zag need a positive outer degree".into(),
        ));
    }
    rot_g.check_describes(g)?;
    rot_h.check_describes(h)?;
    Ok((d, delta))
}

/// Replacement product: each vertex of G becomes a cloud inducing a copy of
/// H (cloud slot = G edge label - 1), and each G-edge becomes the single
/// inter-cloud edge dictated by the rotation maps. (delta + 1)-regular.
pub fn replacement(g: &Graph, h: &Graph, rot_g: &RotationMap, rot_h: &RotationMap) -> Result<Graph> {
    let (d, _) = check_replacement_inputs(g, h, rot_g, rot_h)?;
    let idx = ProductVertexIndex::new(ProductKind::Replacement, g.n(), d);
    let mut edges = Vec::new();
    for v in 0..g.n() {
        for (i, j) in h.edges() {
            edges.push((idx.encode(v, i), idx.encode(v, j)));
        }
        for k in 1..=d {
            let (w, j) = rot_g.rot(v, k);
            if v < w {
                edges.push((idx.encode(v, k - 1), idx.encode(w, j - 1)));
            }
        }
    }
    Graph::new(idx.total(), &edges)
}

/// A zig-zag product: the simple graph plus the raw rotation relation, which
/// stays (delta^2)-regular even when the simple graph loses parallel edges.
#[derive(Clone, Debug)]
pub struct ZigzagProduct {
    pub graph: Graph,
    /// Involution on (cloud vertex, slot) with slot space [delta^2]; the
    /// slot pair (i, j) is flattened as (i - 1) * delta + j.
    pub relation: RotationMap,
}

/// Zig-zag product: edges are H-step, G-step, H-step walks through the
/// replacement structure. Clouds induce independent sets.
pub fn zigzag(g: &Graph, h: &Graph, rot_g: &RotationMap, rot_h: &RotationMap) -> Result<ZigzagProduct> {
    let (d, delta) = check_replacement_inputs(g, h, rot_g, rot_h)?;
    let idx = ProductVertexIndex::new(ProductKind::Zigzag, g.n(), d);
    let n = idx.total();
    let mut table = vec![(0usize, 0usize); n * delta * delta];
    let mut edges = std::collections::BTreeSet::new();
    // cloud slot k (0-based) doubles as H-vertex k and as G edge label k + 1
    for v in 0..g.n() {
        for k in 0..d {
            let x = idx.encode(v, k);
            for i in 1..=delta {
                for j in 1..=delta {
                    let (k_mid, i_back) = rot_h.rot(k, i);
                    let (w, l_mid) = rot_g.rot(v, k_mid + 1);
                    let (l, j_back) = rot_h.rot(l_mid - 1, j);
                    let y = idx.encode(w, l);
                    let slot_in = (i - 1) * delta + j;
                    let slot_out = (j_back - 1) * delta + i_back;
                    table[x * delta * delta + (slot_in - 1)] = (y, slot_out);
                    edges.insert((x.min(y), x.max(y)));
                }
            }
        }
    }
    let graph = Graph::new(n, &edges.into_iter().collect::<Vec<_>>())?;
    let relation = RotationMap::from_table(n, delta * delta, table);
    relation.check_involution()?;
    Ok(ZigzagProduct { graph, relation })
}

/// Convenience constructor taking the deterministic sorted-neighbour
/// rotation maps.
pub fn replacement_default(g: &Graph, h: &Graph) -> Result<Graph> {
    replacement(g, h, &crate::rotation::build_rotation_map(g)?, &crate::rotation::build_rotation_map(h)?)
}

pub fn zigzag_default(g: &Graph, h: &Graph) -> Result<ZigzagProduct> {
    zigzag(g, h, &crate::rotation::build_rotation_map(g)?, &crate::rotation::build_rotation_map(h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::rotation::build_rotation_map;

    fn k(n: usize) -> Graph {
        families::complete(n).unwrap()
    }

    fn p(n: usize) -> Graph {
        families::path(n).unwrap()
    }

    fn c(n: usize) -> Graph {
        families::cycle(n).unwrap()
    }

    #[test]
    fn cartesian_k2_k2_is_c4() {
        let g = cartesian(&k(2), &k(2));
        assert_eq!((g.n(), g.m()), (4, 4));
        assert_eq!(g.regular_degree(), Some(2));
        assert!(g.is_connected());
    }

    #[test]
    fn cartesian_k1_kn_is_kn() {
        for n in 1..=5 {
            let g = cartesian(&k(1), &k(n));
            assert_eq!((g.n(), g.m()), (n, n * (n - 1) / 2));
        }
    }

    #[test]
    fn cartesian_p2_p3_is_the_grid() {
        let g = cartesian(&p(2), &p(3));
        assert_eq!((g.n(), g.m()), (6, 7));
    }

    #[test]
    fn cartesian_edge_count_formula() {
        let g = p(4);
        let h = c(5);
        let prod = cartesian(&g, &h);
        assert_eq!(prod.m(), g.n() * h.m() + h.n() * g.m());
    }

    #[test]
    fn tensor_k2_k2_is_a_matching() {
        let g = tensor(&k(2), &k(2));
        assert_eq!((g.n(), g.m()), (4, 2));
        assert_eq!(g.regular_degree(), Some(1));
    }

    #[test]
    fn tensor_edge_count_and_edgeless_factor() {
        let g = p(4);
        let h = c(4);
        assert_eq!(tensor(&g, &h).m(), 2 * g.m() * h.m());
        assert_eq!(tensor(&g, &k(1)).m(), 0);
    }

    #[test]
    fn tensor_of_cliques_is_rook_complement() {
        let g = tensor(&k(3), &k(3));
        let rook = cartesian(&k(3), &k(3));
        assert_eq!(g, rook.complement());
    }

    #[test]
    fn strong_product_of_cliques_is_a_clique() {
        let g = strong(&k(3), &k(4));
        assert_eq!((g.n(), g.m()), (12, 12 * 11 / 2));
        let g = strong(&k(2), &k(2));
        assert_eq!((g.n(), g.m()), (4, 6));
    }

    #[test]
    fn strong_edges_are_cartesian_plus_tensor() {
        let g = p(3);
        let h = c(4);
        assert_eq!(strong(&g, &h).m(), cartesian(&g, &h).m() + tensor(&g, &h).m());
    }

    #[test]
    fn strong_c4_c4_is_eight_regular() {
        let g = strong(&c(4), &c(4));
        assert_eq!(g.n(), 16);
        assert_eq!(g.regular_degree(), Some(8));
    }

    #[test]
    fn lexicographic_small_cases() {
        assert_eq!(lexicographic(&k(2), &k(2)), k(4));
        let g = p(4);
        let lex = lexicographic(&g, &k(1));
        assert_eq!(lex, g);
        // P2 over two isolated vertices gives C4 (as K_{2,2})
        let lex = lexicographic(&p(2), &Graph::empty(2));
        assert_eq!((lex.n(), lex.m()), (4, 4));
        assert_eq!(lex.regular_degree(), Some(2));
    }

    #[test]
    fn modular_k2_k2_is_a_perfect_matching() {
        let idx = ProductVertexIndex::new(ProductKind::Modular, 2, 2);
        let g = modular(&k(2), &k(2));
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(idx.encode(0, 0), idx.encode(1, 1)));
        assert!(g.has_edge(idx.encode(0, 1), idx.encode(1, 0)));
    }

    #[test]
    fn modular_never_joins_agreeing_coordinates() {
        let g = p(4);
        let h = c(5);
        let idx = ProductVertexIndex::new(ProductKind::Modular, 4, 5);
        let prod = modular(&g, &h);
        for x in 0..prod.n() {
            for y in x + 1..prod.n() {
                let (u, i) = idx.decode(x);
                let (v, j) = idx.decode(y);
                if u == v || i == j {
                    assert!(!prod.has_edge(x, y));
                }
            }
        }
    }

    #[test]
    fn modular_against_k1_is_edgeless() {
        assert_eq!(modular(&p(4), &k(1)).m(), 0);
        assert_eq!(modular(&p(6), &p(6)).n(), 36);
    }

    #[test]
    fn corona_k3_k1_is_a_triangle_with_pendants() {
        let g = corona(&k(3), &k(1));
        assert_eq!((g.n(), g.m()), (6, 6));
        let degrees: Vec<usize> = (0..6).map(|v| g.degree(v)).collect();
        assert_eq!(degrees.iter().filter(|&&d| d == 3).count(), 3);
        assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 3);
    }

    #[test]
    fn corona_k1_h_adds_a_universal_vertex() {
        let h = p(4);
        let g = corona(&k(1), &h);
        assert_eq!(g.n(), 5);
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.m(), h.m() + 4);
    }

    #[test]
    fn corona_paley9_k1_has_18_vertices() {
        let g = corona(&families::paley(9).unwrap(), &k(1));
        assert_eq!(g.n(), 18);
    }

    #[test]
    fn rooted_c3_p2_is_a_triangle_with_pendants() {
        let g = rooted(&c(3), &p(2), 0).unwrap();
        assert_eq!((g.n(), g.m()), (6, 6));
        // isomorphic to corona(K3, K1): same degree profile
        let mut degs: Vec<usize> = (0..6).map(|v| g.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 3, 3, 3]);
    }

    #[test]
    fn rooted_small_cases() {
        let g = p(4);
        assert_eq!(rooted(&g, &k(1), 0).unwrap(), g);
        let prod = rooted(&k(2), &p(3), 1).unwrap();
        assert_eq!((prod.n(), prod.m()), (6, 5));
        assert!(rooted(&k(2), &p(3), 3).is_err());
    }

    #[test]
    fn replacement_k4_c3() {
        let g = k(4);
        let h = c(3);
        let prod = replacement_default(&g, &h).unwrap();
        assert_eq!(prod.n(), 12);
        assert_eq!(prod.regular_degree(), Some(3));
        assert_eq!(prod.m(), 18);
    }

    #[test]
    fn replacement_clouds_induce_h_and_edges_match_g() {
        let g = families::random_regular(8, 3, 5).unwrap();
        let h = c(3);
        let prod = replacement_default(&g, &h).unwrap();
        let idx = ProductVertexIndex::new(ProductKind::Replacement, 8, 3);
        let mut inter = 0;
        for x in 0..prod.n() {
            for y in x + 1..prod.n() {
                if prod.has_edge(x, y) && idx.decode(x).0 != idx.decode(y).0 {
                    inter += 1;
                }
            }
        }
        assert_eq!(inter, g.m());
        for v in 0..8 {
            let cloud: Vec<usize> = (0..3).map(|i| idx.encode(v, i)).collect();
            let sub = prod.induced_subgraph(&cloud).unwrap();
            assert_eq!(sub.m(), h.m());
            assert_eq!(sub.regular_degree(), h.regular_degree());
        }
    }

    #[test]
    fn replacement_dimension_mismatch() {
        assert!(replacement_default(&k(4), &c(4)).is_err()); // |V(H)| != 3
        assert!(replacement_default(&p(4), &c(3)).is_err()); // outer not regular
    }

    #[test]
    fn zigzag_relation_is_delta_squared_regular_involution() {
        let g = k(5); // 4-regular
        let h = c(4); // 2-regular on 4 vertices
        let z = zigzag_default(&g, &h).unwrap();
        assert_eq!(z.relation.degree(), 4);
        z.relation.check_involution().unwrap();
        assert_eq!(z.graph.n(), 20);
    }

    #[test]
    fn zigzag_clouds_are_independent_sets() {
        let g = k(5);
        let h = c(4);
        let z = zigzag_default(&g, &h).unwrap();
        let idx = ProductVertexIndex::new(ProductKind::Zigzag, 5, 4);
        for v in 0..5 {
            for i in 0..4 {
                for j in i + 1..4 {
                    assert!(!z.graph.has_edge(idx.encode(v, i), idx.encode(v, j)));
                }
            }
        }
    }

    #[test]
    fn zigzag_edges_are_three_step_walks_in_replacement() {
        let g = k(5);
        let h = c(4);
        let rot_g = build_rotation_map(&g).unwrap();
        let rot_h = build_rotation_map(&h).unwrap();
        let z = zigzag(&g, &h, &rot_g, &rot_h).unwrap();
        let rep = replacement(&g, &h, &rot_g, &rot_h).unwrap();
        let idx = ProductVertexIndex::new(ProductKind::Zigzag, 5, 4);
        for x in 0..z.graph.n() {
            for y in x + 1..z.graph.n() {
                let (u, i) = idx.decode(x);
                let (v, j) = idx.decode(y);
                // walk: cloud edge at u, the single G-edge, cloud edge at v
                let mut reachable = false;
                for mid_i in 0..4 {
                    let a = idx.encode(u, mid_i);
                    if !rep.has_edge(x, a) || idx.decode(a).0 != u {
                        continue;
                    }
                    for mid_j in 0..4 {
                        let b = idx.encode(v, mid_j);
                        if rep.has_edge(a, b) && rep.has_edge(b, y) && v != u {
                            reachable = true;
                        }
                    }
                }
                let _ = (i, j);
                assert_eq!(z.graph.has_edge(x, y), reachable, "pair {x},{y}");
            }
        }
    }

    #[test]
    fn product_vertex_index_round_trips() {
        let idx = ProductVertexIndex::new(ProductKind::Corona, 4, 3);
        assert_eq!(idx.total(), 16);
        for x in 0..idx.total() {
            let (u, slot) = idx.decode(x);
            assert_eq!(idx.encode(u, slot), x);
        }
        assert_eq!(idx.encode_hub(2), 8);
        assert_eq!(idx.encode_copy(2, 0), 9);
    }

    #[test]
    fn degree_identities_on_random_instances() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let n1 = rng.gen_range(1..=6);
            let n2 = rng.gen_range(1..=6);
            let g = random_graph(n1, &mut rng);
            let h = random_graph(n2, &mut rng);
            let cart = cartesian(&g, &h);
            let tens = tensor(&g, &h);
            let strg = strong(&g, &h);
            let idx = ProductVertexIndex::new(ProductKind::Cartesian, g.n(), h.n());
            for x in 0..cart.n() {
                let (u, i) = idx.decode(x);
                assert_eq!(cart.degree(x), g.degree(u) + h.degree(i));
                assert_eq!(tens.degree(x), g.degree(u) * h.degree(i));
                assert_eq!(strg.degree(x), (g.degree(u) + 1) * (h.degree(i) + 1) - 1);
            }
        }
    }

    fn random_graph(n: usize, rng: &mut impl rand::Rng) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn hamming_recursion_matches_cartesian() {
        for (d, k_sz) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let smaller = families::hamming(d - 1, k_sz).unwrap();
            let built = cartesian(&k(k_sz), &smaller);
            let direct = families::hamming(d, k_sz).unwrap();
            assert_eq!(built, direct, "H({d},{k_sz})");
        }
    }

    #[test]
    fn weak_power_recursion_matches_tensor() {
        for (d, k_sz) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let smaller = families::weak_power(d - 1, k_sz).unwrap();
            let built = tensor(&k(k_sz), &smaller);
            let direct = families::weak_power(d, k_sz).unwrap();
            assert_eq!(built, direct, "T({d},{k_sz})");
        }
    }
}
