//! Restriction sequences and structured rectangles: the exposed-edge
//! hypergraph, its weight, cyclicity and almost-acyclicity decisions, the
//! potential, and the goodness/fairness predicates.

use std::collections::HashMap;

use num_traits::Zero;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::game::GameSpec;
use crate::matching::{restricted_size, EdgeTuple, LabeledMatching, LabeledSpace, VertexId};
use crate::ratio::rat_u128;

/// One restriction per player of a game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionSeq {
    pub per_player: Vec<LabeledMatching>,
}

impl RestrictionSeq {
    pub fn empty(num_players: usize) -> Self {
        RestrictionSeq { per_player: vec![LabeledMatching::empty(); num_players] }
    }

    pub fn validate(&self, spec: &GameSpec) -> Result<()> {
        if self.per_player.len() != spec.num_players() {
            return Err(Error::domain("restriction sequence does not match the game"));
        }
        for (p, z) in self.per_player.iter().enumerate() {
            if z.len() > spec.matching_size {
                return Err(Error::domain(format!("player {p} restriction larger than its space")));
            }
            let universe = spec.universe_of_player(p);
            for (e, lab) in z.entries() {
                if !universe.contains_edge(e) {
                    return Err(Error::domain(format!("player {p} restriction leaves its universe")));
                }
                if lab.iter().any(|&l| l as usize >= spec.frame.graph.modulus) {
                    return Err(Error::domain("restriction label outside Z_N"));
                }
            }
        }
        Ok(())
    }

    pub fn supports_pairwise_disjoint(&self) -> bool {
        let mut seen: Vec<&EdgeTuple> = Vec::new();
        for z in &self.per_player {
            for (e, _) in z.entries() {
                if seen.contains(&e) {
                    return false;
                }
                seen.push(e);
            }
        }
        true
    }

    /// Edge set of the exposed-edge hypergraph (union over players, deduped).
    pub fn union_edges(&self) -> Vec<EdgeTuple> {
        let mut edges: Vec<EdgeTuple> = self
            .per_player
            .iter()
            .flat_map(|z| z.entries().iter().map(|(e, _)| e.clone()))
            .collect();
        edges.sort();
        edges.dedup();
        edges
    }

    pub fn total_support(&self) -> usize {
        self.per_player.iter().map(|z| z.len()).sum()
    }

    /// Vertex sets of the nontrivial connected components of the exposed-edge
    /// hypergraph, each sorted, in first-vertex order.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        hypergraph_components(&self.union_edges())
    }

    /// `Σ_i |V_i|²` over nontrivial components.
    pub fn weight(&self) -> u64 {
        self.components().iter().map(|c| (c.len() * c.len()) as u64).sum()
    }

    /// Cyclic when supports overlap across players or the union hypergraph
    /// contains a cycle.
    pub fn is_cyclic(&self, k: usize) -> bool {
        if !self.supports_pairwise_disjoint() {
            return true;
        }
        contains_cycle_peeling(&self.union_edges(), k)
    }

    /// Almost-acyclic: supports pairwise disjoint and every small edge subset
    /// covers at least `ℓ(k-1.1)` vertices.
    pub fn is_almost_acyclic(&self, k: usize, locality: usize) -> bool {
        self.supports_pairwise_disjoint()
            && is_locally_almost_acyclic(&self.union_edges(), k, locality)
    }
}

/// Connected components (with ≥ 2 vertices) of a k-uniform edge list.
pub fn hypergraph_components(edges: &[EdgeTuple]) -> Vec<Vec<VertexId>> {
    let mut parent: HashMap<VertexId, VertexId> = HashMap::new();
    fn find(parent: &mut HashMap<VertexId, VertexId>, v: VertexId) -> VertexId {
        let p = *parent.entry(v).or_insert(v);
        if p == v {
            v
        } else {
            let root = find(parent, p);
            parent.insert(v, root);
            root
        }
    }
    for e in edges {
        let r0 = find(&mut parent, e[0]);
        for &v in &e[1..] {
            let rv = find(&mut parent, v);
            parent.insert(rv, r0);
        }
    }
    let vertices: Vec<VertexId> = {
        let mut vs: Vec<VertexId> = edges.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    };
    let mut by_root: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for v in vertices {
        let r = find(&mut parent, v);
        by_root.entry(r).or_default().push(v);
    }
    let mut components: Vec<Vec<VertexId>> = by_root
        .into_values()
        .filter(|c| c.len() >= 2)
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    components.sort();
    components
}

fn distinct_vertex_count(edges: &[&EdgeTuple]) -> usize {
    let mut vs: Vec<VertexId> = edges.iter().flat_map(|e| e.iter().copied()).collect();
    vs.sort_unstable();
    vs.dedup();
    vs.len()
}

/// Exhaustive cycle oracle: some `ℓ ≥ 1` edges cover at most `ℓ(k-1)`
/// vertices. Duplicate edges in the list count as distinct.
pub fn contains_cycle_exhaustive(edges: &[EdgeTuple], k: usize) -> bool {
    let m = edges.len();
    if m == 0 {
        return false;
    }
    assert!(m <= 25, "exhaustive cycle oracle is for small inputs only");
    for mask in 1u32..(1u32 << m) {
        let subset: Vec<&EdgeTuple> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| &edges[i]).collect();
        let l = subset.len();
        if distinct_vertex_count(&subset) <= l * (k - 1) {
            return true;
        }
    }
    false
}

/// Peeling fast path: repeatedly delete an edge incident to at least `k-1`
/// vertices of degree 1; the list is cycle-free iff everything peels away.
pub fn contains_cycle_peeling(edges: &[EdgeTuple], k: usize) -> bool {
    let mut remaining: Vec<&EdgeTuple> = edges.iter().collect();
    loop {
        if remaining.is_empty() {
            return false;
        }
        let mut degree: HashMap<VertexId, usize> = HashMap::new();
        for e in &remaining {
            for &v in e.iter() {
                *degree.entry(v).or_insert(0) += 1;
            }
        }
        let peel = remaining
            .iter()
            .position(|e| e.iter().filter(|v| degree[v] == 1).count() >= k - 1);
        match peel {
            Some(i) => {
                remaining.swap_remove(i);
            }
            None => return true,
        }
    }
}

/// Local almost-acyclicity: every subset of at most `locality` distinct edges
/// covers at least `ℓ(k-1.1)` vertices, compared exactly as
/// `10·cover ≥ ℓ(10k-11)`.
pub fn is_locally_almost_acyclic(edges: &[EdgeTuple], k: usize, locality: usize) -> bool {
    let m = edges.len();
    let limit = locality.min(m);
    assert!(m <= 25, "almost-acyclicity scan is for small inputs only");
    for mask in 1u64..(1u64 << m) {
        let l = mask.count_ones() as usize;
        if l > limit {
            continue;
        }
        let subset: Vec<&EdgeTuple> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| &edges[i]).collect();
        if 10 * distinct_vertex_count(&subset) < l * (10 * k - 11) {
            return false;
        }
    }
    true
}

/// A rectangle: one subset of its input space per player, stored as sorted
/// space indices.
#[derive(Debug, Clone)]
pub struct Rectangle {
    pub per_player: Vec<Vec<u64>>,
}

impl Rectangle {
    /// The full joint space.
    pub fn full(spaces: &[LabeledSpace]) -> Self {
        Rectangle {
            per_player: spaces.iter().map(|s| s.iter_indices().collect()).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.per_player.iter().any(|a| a.is_empty())
    }
}

/// A structured rectangle: per-player sets inside their restricted spaces.
/// Globalness is a checked property, not assumed.
pub struct StructuredRect {
    pub zeta: RestrictionSeq,
    pub rect: Rectangle,
}

impl StructuredRect {
    /// Containment `A^{(p)} ⊆ Ω_{z^{(p)}}` for every player.
    pub fn check_containment(&self, spaces: &[LabeledSpace]) -> Result<()> {
        for ((a, z), space) in self.rect.per_player.iter().zip(&self.zeta.per_player).zip(spaces) {
            for &idx in a {
                if !space.decode(idx).subsumes(z) {
                    return Err(Error::domain("rectangle leaves its restricted space"));
                }
            }
        }
        Ok(())
    }

    /// Per-player globalness of the whole structured rectangle.
    pub fn check_global(&self, spaces: &[LabeledSpace], caps: &Caps) -> Result<bool> {
        for ((a, z), space) in self.rect.per_player.iter().zip(&self.zeta.per_player).zip(spaces) {
            if !crate::matching::is_global(space, a, z, caps)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `φ(ζ,R) = Σ_p |supp(z_p)| + log2(|Ω_{z_p}| / |A_p|)`. Empty player sets
/// make the potential infinite, reported as an error.
pub fn potential(spec: &GameSpec, sr: &StructuredRect) -> Result<f64> {
    let mut phi = 0.0;
    for (p, (z, a)) in sr.zeta.per_player.iter().zip(&sr.rect.per_player).enumerate() {
        if a.is_empty() {
            return Err(Error::domain(format!("player {p} has an empty set: infinite potential")));
        }
        let omega = restricted_size(
            &spec.universe_of_player(p),
            spec.matching_size,
            z,
            spec.frame.graph.modulus,
        )?;
        phi += z.len() as f64 + (omega as f64 / a.len() as f64).log2();
    }
    Ok(phi)
}

/// Goodness: acyclic restriction sequence, per-player conditional density at
/// least `2^{-w1}`, and weight at most `w2`.
pub fn is_good(spec: &GameSpec, sr: &StructuredRect, w1: f64, w2: f64) -> Result<bool> {
    if sr.zeta.is_cyclic(spec.frame.graph.arity()) {
        return Ok(false);
    }
    if (sr.zeta.weight() as f64) > w2 {
        return Ok(false);
    }
    density_at_least(spec, sr, w1)
}

/// Fairness (the two-wise relaxation): almost-acyclic, total support at most
/// `w`, density at least `2^{-w}`.
pub fn is_fair(spec: &GameSpec, sr: &StructuredRect, w: f64, locality: usize) -> Result<bool> {
    if !sr.zeta.is_almost_acyclic(spec.frame.graph.arity(), locality) {
        return Ok(false);
    }
    if sr.zeta.total_support() as f64 > w {
        return Ok(false);
    }
    density_at_least(spec, sr, w)
}

fn density_at_least(spec: &GameSpec, sr: &StructuredRect, w: f64) -> Result<bool> {
    for (p, (z, a)) in sr.zeta.per_player.iter().zip(&sr.rect.per_player).enumerate() {
        if a.is_empty() {
            return Ok(false);
        }
        let omega = restricted_size(
            &spec.universe_of_player(p),
            spec.matching_size,
            z,
            spec.frame.graph.modulus,
        )?;
        let ratio = rat_u128(omega) / rat_u128(a.len() as u128);
        debug_assert!(!ratio.is_zero());
        if crate::ratio::rat_to_f64(&ratio).log2() > w {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm(entries: &[(&[VertexId], &[u8])]) -> LabeledMatching {
        LabeledMatching::new(entries.iter().map(|(e, l)| (e.to_vec(), l.to_vec())).collect()).unwrap()
    }

    #[test]
    fn weight_of_small_sequences() {
        let empty = RestrictionSeq::empty(2);
        assert_eq!(empty.weight(), 0);

        // Two disjoint 2-edges: components {2,2} → 8.
        let zeta = RestrictionSeq {
            per_player: vec![lm(&[(&[0, 10], &[0, 0])]), lm(&[(&[1, 11], &[0, 0])])],
        };
        assert_eq!(zeta.weight(), 8);

        // Two 2-edges sharing a vertex: one component of 3 → 9.
        let zeta = RestrictionSeq {
            per_player: vec![lm(&[(&[0, 10], &[0, 0])]), lm(&[(&[1, 10], &[0, 0])])],
        };
        assert_eq!(zeta.weight(), 9);
    }

    #[test]
    fn cyclicity_examples() {
        // A single edge is acyclic.
        assert!(!contains_cycle_peeling(&[vec![0, 1]], 2));
        assert!(!contains_cycle_exhaustive(&[vec![0, 1]], 2));

        // Identical edge in two players' supports is cyclic by overlap.
        let zeta = RestrictionSeq {
            per_player: vec![lm(&[(&[0, 10], &[0, 0])]), lm(&[(&[0, 10], &[1, 1])])],
        };
        assert!(zeta.is_cyclic(2));

        // Triangle: 3 edges over 3 vertices.
        let tri = vec![vec![0, 1], vec![1, 2], vec![2, 0]];
        assert!(contains_cycle_peeling(&tri, 2));
        assert!(contains_cycle_exhaustive(&tri, 2));

        // Path is acyclic.
        let path = vec![vec![0, 1], vec![1, 2]];
        assert!(!contains_cycle_peeling(&path, 2));
        assert!(!contains_cycle_exhaustive(&path, 2));
    }

    #[test]
    fn peeling_matches_oracle_on_k3_samples() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..500 {
            let m = rng.gen_range(1..=4);
            let edges: Vec<EdgeTuple> = (0..m)
                .map(|_| {
                    let mut e: Vec<VertexId> = Vec::new();
                    while e.len() < 3 {
                        let v = rng.gen_range(0..7);
                        if !e.contains(&v) {
                            e.push(v);
                        }
                    }
                    e
                })
                .collect();
            assert_eq!(
                contains_cycle_peeling(&edges, 3),
                contains_cycle_exhaustive(&edges, 3),
                "disagreement on {edges:?}"
            );
        }
    }

    #[test]
    fn almost_acyclicity_tolerates_short_cycles_only_when_sparse() {
        // k = 3 loose triangle: edges pairwise share one vertex.
        // 3 edges, 6 vertices: 10·6 = 60 ≥ 3·19 = 57 → almost-acyclic,
        // although it contains a cycle in the strict sense (6 ≤ 3·2).
        let loose = vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]];
        assert!(contains_cycle_exhaustive(&loose, 3));
        assert!(is_locally_almost_acyclic(&loose, 3, 10));

        // A doubled edge is not almost-acyclic: 10·3 = 30 < 2·19 = 38.
        let doubled = vec![vec![0, 1, 2], vec![0, 1, 2]];
        assert!(!is_locally_almost_acyclic(&doubled, 3, 10));
    }

    #[test]
    fn potential_and_goodness_on_the_minimal_game() {
        let spec = crate::game::minimal_maxcut_spec(2);
        let caps = Caps::default();
        let spaces = spec.player_spaces(&caps).unwrap();

        // Full space, empty restriction: potential 0, good for any budgets.
        let sr = StructuredRect {
            zeta: RestrictionSeq::empty(2),
            rect: Rectangle::full(&spaces),
        };
        sr.check_containment(&spaces).unwrap();
        assert_eq!(potential(&spec, &sr).unwrap(), 0.0);
        assert!(is_good(&spec, &sr, 0.0, 0.0).unwrap());
        assert!(sr.check_global(&spaces, &caps).unwrap());

        // Halving each player's set costs one bit each.
        let halves: Vec<Vec<u64>> = spaces
            .iter()
            .map(|s| s.iter_indices().filter(|i| i % 2 == 0).collect())
            .collect();
        let sr = StructuredRect {
            zeta: RestrictionSeq::empty(2),
            rect: Rectangle { per_player: halves },
        };
        assert!((potential(&spec, &sr).unwrap() - 2.0).abs() < 1e-12);
        assert!(!is_good(&spec, &sr, 0.5, 10.0).unwrap());
        assert!(is_good(&spec, &sr, 1.0, 10.0).unwrap());

        // One exposed labeled edge: |supp| contributes 1.
        let z0 = lm(&[(&[0, 1], &[0, 1])]);
        let a0 = spaces[0].restricted_indices(&z0);
        let sr = StructuredRect {
            zeta: RestrictionSeq { per_player: vec![z0, LabeledMatching::empty()] },
            rect: Rectangle { per_player: vec![a0, spaces[1].iter_indices().collect()] },
        };
        sr.check_containment(&spaces).unwrap();
        assert!((potential(&spec, &sr).unwrap() - 1.0).abs() < 1e-12);
        // Weight is k² = 4: good only when w2 ≥ 4.
        assert!(!is_good(&spec, &sr, 2.0, 3.9).unwrap());
        assert!(is_good(&spec, &sr, 2.0, 4.0).unwrap());
    }

    #[test]
    fn duplicated_edge_is_never_good() {
        let spec = crate::game::minimal_maxcut_spec(2);
        let caps = Caps::default();
        let spaces = spec.player_spaces(&caps).unwrap();
        let z = lm(&[(&[0, 1], &[0, 1])]);
        let sr = StructuredRect {
            zeta: RestrictionSeq { per_player: vec![z.clone(), z.clone()] },
            rect: Rectangle {
                per_player: vec![spaces[0].restricted_indices(&z), spaces[1].restricted_indices(&z)],
            },
        };
        assert!(!is_good(&spec, &sr, 100.0, 100.0).unwrap());
    }

    #[test]
    fn fairness_uses_support_sum_and_almost_acyclicity() {
        let inst = crate::csp::gallery::e3lin_contradiction();
        let sol = crate::lp::canonical_value1_solution(&inst, crate::csp::IndependenceOrder::Two)
            .unwrap()
            .unwrap();
        let graph = crate::blowup::reduce_to_graph(&inst, &sol).unwrap();
        let spec = crate::game::GameSpec::new(graph, 2, crate::ratio::rat(1, 2), 1).unwrap();
        let caps = Caps::default();
        let spaces = spec.player_spaces(&caps).unwrap();
        let u0 = spec.universe_of_player(0);
        let e0: EdgeTuple = vec![u0.part(0)[0], u0.part(1)[0], u0.part(2)[0]];
        let z0 = LabeledMatching::new(vec![(e0, vec![0, 0, 0])]).unwrap();
        let a0 = spaces[0].restricted_indices(&z0);
        let sr = StructuredRect {
            zeta: RestrictionSeq { per_player: vec![z0, LabeledMatching::empty()] },
            rect: Rectangle { per_player: vec![a0, spaces[1].iter_indices().collect()] },
        };
        sr.check_containment(&spaces).unwrap();
        assert!(is_fair(&spec, &sr, 1.0, 10).unwrap());
        assert!(!is_fair(&spec, &sr, 0.5, 10).unwrap());
    }
}
