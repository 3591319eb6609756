//! Counting lemmas on component structures: singleton-free subset counts with
//! their closed-form ceiling, per-edge index maps with heavy supports and the
//! Hamming-weight floor of their sums, and canonical hypergraph generation for
//! the cyclicity-oracle equivalence sweep.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matching::{binomial, EdgeTuple, VertexId};
use crate::ratio::Rat;
use crate::rectangle::structure::hypergraph_components;

/// Exact number of `ℓ`-element subsets of `⋃V_i` meeting every `V_i` in ≠ 1
/// elements, for pairwise disjoint components of the given sizes.
pub fn count_no_singleton(sizes: &[usize], ell: usize) -> BigUint {
    // Dynamic program over components: choose j ∈ {0} ∪ {2..|V_i|} from each.
    let mut dp = vec![BigUint::zero(); ell + 1];
    dp[0] = BigUint::one();
    for &s in sizes {
        let mut next = vec![BigUint::zero(); ell + 1];
        for used in 0..=ell {
            if dp[used].is_zero() {
                continue;
            }
            for take in std::iter::once(0).chain(2..=s) {
                if used + take > ell {
                    break;
                }
                let ways = binomial(s as u128, take as u128).expect("desk-scale binomial");
                next[used + take] += &dp[used] * BigUint::from(ways);
            }
        }
        dp = next;
    }
    dp[ell].clone()
}

/// Closed-form ceiling `(20·Σ|V_i|²/ℓ)^{ℓ/2}`, compared exactly by squaring:
/// `count² ≤ (20W/ℓ)^ℓ`.
pub fn no_singleton_bound_holds(sizes: &[usize], ell: usize) -> Result<(BigUint, bool)> {
    if ell < 2 {
        return Err(Error::domain("the count bound applies to ℓ ≥ 2"));
    }
    if sizes.iter().any(|&s| s < 2) {
        return Err(Error::domain("components must have at least 2 vertices"));
    }
    let count = count_no_singleton(sizes, ell);
    let weight: u128 = sizes.iter().map(|&s| (s * s) as u128).sum();
    let base = Rat::new(
        num_bigint::BigInt::from(20u128 * weight),
        num_bigint::BigInt::from(ell),
    );
    // count² ≤ base^ℓ, all exact.
    let count_rat = Rat::from_integer(num_bigint::BigInt::from(count.clone()));
    let lhs = &count_rat * &count_rat;
    let mut rhs = Rat::one();
    for _ in 0..ell {
        rhs *= &base;
    }
    Ok((count, lhs <= rhs))
}

/// One per-edge index map: for each edge a vector supported inside the edge
/// with at least 3 nonzero coordinates. Entries are the packed nonzero
/// patterns; the map's sum is reported as a ground-set vector.
#[derive(Debug, Clone)]
pub struct HeavyIndexMap {
    /// Per edge, the chosen `Z_N` values at the edge's vertex positions.
    pub per_edge: Vec<Vec<u8>>,
    /// `Σ_e B(e)` as a sparse ground vector.
    pub sum: Vec<(VertexId, u8)>,
}

impl HeavyIndexMap {
    pub fn sum_weight(&self) -> usize {
        self.sum.len()
    }
}

/// Enumerates every map in the heavy-support family of `edges` over `Z_N`:
/// per edge choose a value vector with ≥ 3 nonzero coordinates.
pub fn enumerate_heavy_maps(edges: &[EdgeTuple], modulus: usize) -> Vec<HeavyIndexMap> {
    if edges.is_empty() {
        return Vec::new();
    }
    let k = edges[0].len();
    // Per-edge candidate value vectors.
    let mut candidates: Vec<Vec<u8>> = Vec::new();
    let mut v = vec![0u8; k];
    loop {
        if v.iter().filter(|&&d| d != 0).count() >= 3 {
            candidates.push(v.clone());
        }
        if !crate::game::kernels::advance_point(&mut v, modulus) {
            break;
        }
    }
    if candidates.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; edges.len()];
    loop {
        let per_edge: Vec<Vec<u8>> = pick.iter().map(|&c| candidates[c].clone()).collect();
        let mut acc: std::collections::BTreeMap<VertexId, usize> = std::collections::BTreeMap::new();
        for (e, vals) in edges.iter().zip(&per_edge) {
            for (&vertex, &val) in e.iter().zip(vals) {
                *acc.entry(vertex).or_insert(0) += val as usize;
            }
        }
        let sum: Vec<(VertexId, u8)> = acc
            .into_iter()
            .map(|(vtx, total)| (vtx, (total % modulus) as u8))
            .filter(|&(_, d)| d != 0)
            .collect();
        out.push(HeavyIndexMap { per_edge, sum });
        let mut pos = 0;
        loop {
            if pos == pick.len() {
                break;
            }
            pick[pos] += 1;
            if pick[pos] < candidates.len() {
                break;
            }
            pick[pos] = 0;
            pos += 1;
        }
        if pos == pick.len() {
            break;
        }
    }
    out
}

/// For an almost-acyclic edge set with `t` nontrivial components and `r`
/// edges, every heavy map's sum has Hamming weight ≥ max{2t, 4r/5}, compared
/// exactly as `5·w ≥ 4r` and `w ≥ 2t`.
pub fn heavy_maps_weight_floor(edges: &[EdgeTuple], modulus: usize) -> Result<HeavyMapsReport> {
    let k = edges.first().map(|e| e.len()).unwrap_or(0);
    if !edges.is_empty()
        && !crate::rectangle::structure::is_locally_almost_acyclic(edges, k, edges.len())
    {
        return Err(Error::domain("weight floor requires an almost-acyclic edge set"));
    }
    let t = hypergraph_components(edges).len();
    let r = edges.len();
    let maps = enumerate_heavy_maps(edges, modulus);
    let mut min_weight = usize::MAX;
    let mut violations = 0usize;
    for map in &maps {
        let w = map.sum_weight();
        min_weight = min_weight.min(w);
        if w < 2 * t || 5 * w < 4 * r {
            violations += 1;
        }
    }
    Ok(HeavyMapsReport { maps_checked: maps.len(), min_weight, components: t, edges: r, violations })
}

#[derive(Debug, Clone, Copy)]
pub struct HeavyMapsReport {
    pub maps_checked: usize,
    pub min_weight: usize,
    pub components: usize,
    pub edges: usize,
    pub violations: usize,
}

impl HeavyMapsReport {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

/// Canonical exhaustive generation of k-uniform hypergraphs with up to
/// `max_edges` edges: edges are ascending vertex sets listed in lexicographic
/// order, and vertex labels are introduced contiguously (each new edge may use
/// vertices `0..=max_seen+k-1`). Every isomorphism class with ≤ `max_edges`
/// edges appears at least once.
pub fn generate_hypergraphs(k: usize, max_edges: usize) -> Vec<Vec<EdgeTuple>> {
    let mut out = Vec::new();
    let mut current: Vec<EdgeTuple> = Vec::new();
    fn ascending_tuples(k: usize, pool: usize) -> Vec<EdgeTuple> {
        let mut out = Vec::new();
        let mut cur: Vec<VertexId> = Vec::new();
        fn rec(start: VertexId, k: usize, pool: VertexId, cur: &mut Vec<VertexId>, out: &mut Vec<EdgeTuple>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in start..pool {
                cur.push(v);
                rec(v + 1, k, pool, cur, out);
                cur.pop();
            }
        }
        rec(0, k, pool as VertexId, &mut cur, &mut out);
        out
    }
    fn rec(
        k: usize,
        max_edges: usize,
        max_seen: usize,
        current: &mut Vec<EdgeTuple>,
        out: &mut Vec<Vec<EdgeTuple>>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        if current.len() == max_edges {
            return;
        }
        let pool = max_seen + k;
        for e in ascending_tuples(k, pool) {
            // Lexicographic order on the edge list and contiguous labels keep
            // the generation canonical.
            if let Some(last) = current.last() {
                if e <= *last {
                    continue;
                }
            }
            let new_max = e.iter().map(|&v| v as usize + 1).max().unwrap().max(max_seen);
            current.push(e);
            if labels_contiguous(current) {
                rec(k, max_edges, new_max, current, out);
            }
            current.pop();
        }
    }
    fn labels_contiguous(edges: &[EdgeTuple]) -> bool {
        let mut seen: Vec<bool> = Vec::new();
        for e in edges {
            for &v in e {
                let v = v as usize;
                if v >= seen.len() {
                    seen.resize(v + 1, false);
                }
                seen[v] = true;
            }
        }
        seen.iter().all(|&b| b)
    }
    rec(k, max_edges, 0, &mut current, &mut out);
    out
}
