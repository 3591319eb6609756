//! Labeled-matching spaces `Ω^{U,m}`, restrictions, subsumption, globalness and
//! pseudo-uniformity testing, and the internal/boundary-vertex probability
//! estimator.
//!
//! Matchings live in the complete k-partite grid of a k-universe. A labeled
//! matching maps its support edges to `Z_N^k`; a restriction is the same type
//! with fewer edges than the ambient space size.

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::ratio::{rat_u128, Rat};

pub type VertexId = u32;
pub type EdgeTuple = Vec<VertexId>;

/// A k-tuple of pairwise disjoint, equal-size vertex parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KUniverse {
    parts: Vec<Vec<VertexId>>,
}

impl KUniverse {
    pub fn new(parts: Vec<Vec<VertexId>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("a k-universe needs at least one part"));
        }
        let size = parts[0].len();
        if parts.iter().any(|p| p.len() != size) {
            return Err(Error::domain("k-universe parts must have equal cardinality"));
        }
        let mut all: Vec<VertexId> = parts.iter().flatten().copied().collect();
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        if all.len() != total {
            return Err(Error::domain("k-universe parts must be pairwise disjoint"));
        }
        Ok(KUniverse { parts })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Common cardinality `|U|` of the parts.
    pub fn size(&self) -> usize {
        self.parts[0].len()
    }

    pub fn part(&self, i: usize) -> &[VertexId] {
        &self.parts[i]
    }

    pub fn union_vertices(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.parts.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn contains_edge(&self, edge: &[VertexId]) -> bool {
        edge.len() == self.k() && edge.iter().zip(&self.parts).all(|(v, p)| p.contains(v))
    }

    /// Universe subtraction: removes each matched vertex from the part given by
    /// its coordinate position in the edge.
    pub fn minus_matching(&self, edges: &[EdgeTuple]) -> Result<KUniverse> {
        let mut parts = self.parts.clone();
        for e in edges {
            if e.len() != self.k() {
                return Err(Error::domain("edge arity does not match universe"));
            }
            for (i, v) in e.iter().enumerate() {
                let before = parts[i].len();
                parts[i].retain(|u| u != v);
                if parts[i].len() == before {
                    return Err(Error::domain(format!(
                        "vertex {v} is not in part {i} of the universe"
                    )));
                }
            }
        }
        KUniverse::new(parts)
    }
}

/// A labeled (partial) matching: support edges in grid order with labels in
/// `Z_N^k`. The all-`nil` map is the empty value. Also serves as a
/// restriction. Serializes as the sorted list of `(edge, label)` pairs; the
/// nil map serializes as the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LabeledMatching {
    entries: Vec<(EdgeTuple, Vec<u8>)>,
}

impl<'de> Deserialize<'de> for LabeledMatching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<(EdgeTuple, Vec<u8>)>::deserialize(d)?;
        LabeledMatching::new(entries).map_err(serde::de::Error::custom)
    }
}

impl LabeledMatching {
    pub fn empty() -> Self {
        LabeledMatching { entries: Vec::new() }
    }

    pub fn new(mut entries: Vec<(EdgeTuple, Vec<u8>)>) -> Result<Self> {
        entries.sort();
        for window in entries.windows(2) {
            if window[0].0 == window[1].0 {
                return Err(Error::domain("duplicate edge in labeled matching"));
            }
        }
        // No two support edges may share a vertex in any coordinate.
        let k = entries.first().map(|(e, _)| e.len()).unwrap_or(0);
        let mut seen: Vec<VertexId> = Vec::new();
        for (e, lab) in &entries {
            if e.len() != k || lab.len() != k {
                return Err(Error::domain("ragged edge or label tuple"));
            }
            for &v in e {
                if seen.contains(&v) {
                    return Err(Error::domain("support is not a matching: shared vertex"));
                }
                seen.push(v);
            }
        }
        Ok(LabeledMatching { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(EdgeTuple, Vec<u8>)] {
        &self.entries
    }

    pub fn support(&self) -> Vec<EdgeTuple> {
        self.entries.iter().map(|(e, _)| e.clone()).collect()
    }

    pub fn label_of(&self, edge: &[VertexId]) -> Option<&[u8]> {
        self.entries
            .binary_search_by(|(e, _)| e.as_slice().cmp(edge))
            .ok()
            .map(|i| self.entries[i].1.as_slice())
    }

    /// Support containment plus label agreement on the smaller support.
    pub fn subsumes(&self, other: &LabeledMatching) -> bool {
        other
            .entries
            .iter()
            .all(|(e, lab)| self.label_of(e) == Some(lab.as_slice()))
    }

    /// Union of two label maps with disjoint supports.
    pub fn merged_with(&self, other: &LabeledMatching) -> Result<LabeledMatching> {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        LabeledMatching::new(entries)
    }
}

/// `|M_{U,m}| = C(|U|,m)^k · (m!)^{k-1}` with overflow treated as structural.
pub fn count_matchings(universe: &KUniverse, m: usize) -> Result<u128> {
    if m > universe.size() {
        return Err(Error::domain(format!(
            "matching size {m} exceeds universe cardinality {}",
            universe.size()
        )));
    }
    count_matchings_free(universe.size(), universe.k(), m)
}

/// Same count from raw parameters (`|U|`, `k`, `m`).
pub fn count_matchings_free(size: usize, k: usize, m: usize) -> Result<u128> {
    let overflow = || Error::structural("matching count overflows u128");
    let choose = binomial(size as u128, m as u128).ok_or_else(overflow)?;
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(choose).ok_or_else(overflow)?;
    }
    let fact = factorial(m as u128).ok_or_else(overflow)?;
    for _ in 1..k {
        acc = acc.checked_mul(fact).ok_or_else(overflow)?;
    }
    Ok(acc)
}

pub fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

fn factorial(n: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 2..=n {
        acc = acc.checked_mul(i)?;
    }
    Some(acc)
}

/// All matchings of `M_{U,m}` in a stable deterministic order: lexicographic
/// part-index combinations, then lexicographic permutations for parts ≥ 1.
/// Edges come out sorted by their part-0 vertex.
pub fn enumerate_matchings(universe: &KUniverse, m: usize, caps: &Caps) -> Result<Vec<Vec<EdgeTuple>>> {
    let total = count_matchings(universe, m)?;
    caps.check("matching_space", total)?;
    let k = universe.k();
    let size = universe.size();

    let combos = combinations(size, m);
    let perms = permutations(m);

    let mut out: Vec<Vec<EdgeTuple>> = Vec::with_capacity(total as usize);
    // Odometer over one combination per part and one permutation per part ≥ 1.
    let mut combo_idx = vec![0usize; k];
    loop {
        let mut perm_idx = vec![0usize; k.saturating_sub(1)];
        loop {
            let mut edges: Vec<EdgeTuple> = Vec::with_capacity(m);
            for j in 0..m {
                let mut e = Vec::with_capacity(k);
                e.push(universe.part(0)[combos[combo_idx[0]][j]]);
                for i in 1..k {
                    let combo = &combos[combo_idx[i]];
                    let perm = &perms[perm_idx[i - 1]];
                    e.push(universe.part(i)[combo[perm[j]]]);
                }
                edges.push(e);
            }
            out.push(edges);
            if !advance(&mut perm_idx, perms.len()) {
                break;
            }
        }
        if !advance(&mut combo_idx, combos.len()) {
            break;
        }
    }
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    rec(0, n, m, &mut cur, &mut out);
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    fn heap(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        // Lexicographic generation by selection sort of remaining suffix.
        let start = cur.len() - rest;
        for i in start..cur.len() {
            cur.swap(start, i);
            let mut tail: Vec<usize> = cur[start + 1..].to_vec();
            tail.sort_unstable();
            cur[start + 1..].copy_from_slice(&tail);
            heap(rest - 1, cur, out);
        }
        let mut tail: Vec<usize> = cur[start..].to_vec();
        tail.sort_unstable();
        cur[start..].copy_from_slice(&tail);
    }
    heap(m, &mut cur, &mut out);
    out
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// The enumerated space `Ω^{U,m}` with dense indexing: matching-major, label
/// integer minor (per-edge label tuples packed base `N`, edge 0 least
/// significant).
pub struct LabeledSpace {
    pub universe: KUniverse,
    pub m: usize,
    pub modulus: usize,
    pub matchings: Vec<Vec<EdgeTuple>>,
    labels_per_matching: u128,
}

impl LabeledSpace {
    pub fn build(universe: KUniverse, m: usize, modulus: usize, caps: &Caps) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::domain("modulus must be at least 2"));
        }
        let count = count_matchings(&universe, m)?;
        let labels = (modulus as u128)
            .checked_pow((universe.k() * m) as u32)
            .ok_or_else(|| Error::structural("label space overflows u128"))?;
        let total = count
            .checked_mul(labels)
            .ok_or_else(|| Error::structural("labeled space overflows u128"))?;
        caps.check("labeled_space", total)?;
        let matchings = enumerate_matchings(&universe, m, caps)?;
        Ok(LabeledSpace { universe, m, modulus, matchings, labels_per_matching: labels })
    }

    pub fn size(&self) -> u128 {
        self.matchings.len() as u128 * self.labels_per_matching
    }

    pub fn k(&self) -> usize {
        self.universe.k()
    }

    pub fn decode(&self, idx: u64) -> LabeledMatching {
        let idx = idx as u128;
        let matching = &self.matchings[(idx / self.labels_per_matching) as usize];
        let mut label_int = idx % self.labels_per_matching;
        let n = self.modulus as u128;
        let entries = matching
            .iter()
            .map(|e| {
                let mut lab = Vec::with_capacity(self.k());
                for _ in 0..self.k() {
                    lab.push((label_int % n) as u8);
                    label_int /= n;
                }
                (e.clone(), lab)
            })
            .collect();
        LabeledMatching { entries }
    }

    pub fn encode(&self, y: &LabeledMatching) -> Option<u64> {
        if y.len() != self.m {
            return None;
        }
        let support = y.support();
        let mi = self.matchings.iter().position(|m| *m == support)? as u128;
        let n = self.modulus as u128;
        let mut label_int: u128 = 0;
        let mut scale: u128 = 1;
        for (_, lab) in y.entries() {
            for &l in lab {
                label_int += l as u128 * scale;
                scale *= n;
            }
        }
        Some((mi * self.labels_per_matching + label_int) as u64)
    }

    pub fn iter_indices(&self) -> impl Iterator<Item = u64> + '_ {
        0..self.size() as u64
    }

    /// Uniform sample without enumerating the space.
    pub fn sample(&self, rng: &mut impl Rng) -> LabeledMatching {
        sample_labeled(&self.universe, self.m, self.modulus, rng)
    }

    /// Indices of `Ω^{U,m}_z`: all labeled matchings subsuming `z`.
    pub fn restricted_indices(&self, z: &LabeledMatching) -> Vec<u64> {
        self.iter_indices().filter(|&i| self.decode(i).subsumes(z)).collect()
    }
}

/// Uniform sample from `Ω^{U,m}`: a uniform support matching plus independent
/// uniform labels.
pub fn sample_labeled(universe: &KUniverse, m: usize, modulus: usize, rng: &mut impl Rng) -> LabeledMatching {
    let k = universe.k();
    let size = universe.size();
    let mut chosen: Vec<Vec<VertexId>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut idx: Vec<usize> = (0..size).collect();
        // Partial Fisher-Yates for an m-subset.
        for j in 0..m {
            let pick = rng.gen_range(j..size);
            idx.swap(j, pick);
        }
        let mut sel: Vec<VertexId> = idx[..m].iter().map(|&i2| universe.part(i)[i2]).collect();
        if i == 0 {
            sel.sort_unstable();
        }
        chosen.push(sel);
    }
    // Random bijections between part 0 and parts ≥ 1 come free from the
    // unsorted order of the other parts' selections.
    let entries = (0..m)
        .map(|j| {
            let mut e = Vec::with_capacity(k);
            for part in chosen.iter() {
                e.push(part[j]);
            }
            let lab = (0..k).map(|_| rng.gen_range(0..modulus) as u8).collect();
            (e, lab)
        })
        .collect();
    LabeledMatching::new(entries).expect("sampled support is a matching")
}

/// `|Ω^{U,m}_z|` by the universe-subtraction formula.
pub fn restricted_size(universe: &KUniverse, m: usize, z: &LabeledMatching, modulus: usize) -> Result<u128> {
    if z.len() > m {
        return Err(Error::domain(format!(
            "restriction has {} edges, ambient matchings have {m}",
            z.len()
        )));
    }
    let residual = universe.minus_matching(&z.support())?;
    let free = m - z.len();
    let count = count_matchings(&residual, free)?;
    let labels = (modulus as u128)
        .checked_pow((universe.k() * free) as u32)
        .ok_or_else(|| Error::structural("label space overflows u128"))?;
    count
        .checked_mul(labels)
        .ok_or_else(|| Error::structural("restricted space overflows u128"))
}

/// Globalness of a set `A ⊆ Ω^{U,m}_z`: for every restriction `z'` subsuming
/// `z`, the conditional density of `A` grows by at most `2^{|z'|-|z|}`.
/// Decided by exhaustive enumeration of subsuming restrictions.
pub fn is_global(space: &LabeledSpace, a: &[u64], z: &LabeledMatching, caps: &Caps) -> Result<bool> {
    let decoded: Vec<LabeledMatching> = a.iter().map(|&i| space.decode(i)).collect();
    if decoded.iter().any(|y| !y.subsumes(z)) {
        return Err(Error::domain("A must be contained in the restricted space of z"));
    }
    let base_size = restricted_size(&space.universe, space.m, z, space.modulus)?;
    let base_count = decoded.len() as u128;
    if base_count == 0 {
        // The empty set is trivially global.
        return Ok(true);
    }

    let residual = space.universe.minus_matching(&z.support())?;
    let max_extra = space.m - z.len();
    for extra in for_each_restriction(&residual, max_extra, space.modulus, caps)? {
        let zp = z.merged_with(&extra)?;
        let delta = extra.len() as u32;
        let zp_size = restricted_size(&space.universe, space.m, &zp, space.modulus)?;
        let zp_count = decoded.iter().filter(|y| y.subsumes(&zp)).count() as u128;
        // count(z')/|Ω_{z'}| ≤ 2^Δ count(z)/|Ω_z|, cross-multiplied.
        let lhs = zp_count.checked_mul(base_size).ok_or_else(overflow)?;
        let rhs = (1u128 << delta)
            .checked_mul(base_count)
            .and_then(|v| v.checked_mul(zp_size))
            .ok_or_else(overflow)?;
        if lhs > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn overflow() -> Error {
    Error::structural("globalness ratio overflows u128")
}

/// Enumerates all labeled partial matchings with at most `max_edges` edges in
/// `universe` (the nonempty ones; the caller adds the empty restriction).
fn for_each_restriction(
    universe: &KUniverse,
    max_edges: usize,
    modulus: usize,
    caps: &Caps,
) -> Result<Vec<LabeledMatching>> {
    let mut total: u128 = 0;
    for d in 1..=max_edges {
        let count = count_matchings(universe, d)?;
        let labels = (modulus as u128)
            .checked_pow((universe.k() * d) as u32)
            .ok_or_else(|| Error::structural("restriction space overflows u128"))?;
        total += count * labels;
    }
    caps.check("matching_space", total)?;

    let mut out = Vec::with_capacity(total as usize);
    for d in 1..=max_edges {
        for support in enumerate_matchings(universe, d, caps)? {
            let k = universe.k();
            let mut lab_idx = vec![0u8; k * d];
            loop {
                let entries = support
                    .iter()
                    .enumerate()
                    .map(|(j, e)| (e.clone(), lab_idx[j * k..(j + 1) * k].to_vec()))
                    .collect();
                out.push(LabeledMatching::new(entries)?);
                // advance label odometer
                let mut pos = 0;
                loop {
                    if pos == lab_idx.len() {
                        break;
                    }
                    lab_idx[pos] += 1;
                    if (lab_idx[pos] as usize) < modulus {
                        break;
                    }
                    lab_idx[pos] = 0;
                    pos += 1;
                }
                if pos == lab_idx.len() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Pseudo-uniformity of a distribution over `M_{U,m}` (massed pointwise over
/// `matchings` in enumeration order): every sub-matching containment
/// probability is at most `2^d` times the uniform one.
pub fn is_pseudo_uniform(
    universe: &KUniverse,
    m: usize,
    matchings: &[Vec<EdgeTuple>],
    mass: &[Rat],
    caps: &Caps,
) -> Result<bool> {
    if matchings.len() != mass.len() {
        return Err(Error::domain("distribution length mismatch"));
    }
    let total: Rat = mass.iter().sum();
    if !total.is_one() || mass.iter().any(|p| p < &Rat::zero()) {
        return Err(Error::domain("mass function must be a probability distribution"));
    }
    let full_count = count_matchings(universe, m)?;
    for d in 0..=m {
        for s in enumerate_matchings(universe, d, caps)? {
            let hit: Rat = matchings
                .iter()
                .zip(mass)
                .filter(|(mm, _)| contains_submatching(mm, &s))
                .map(|(_, p)| p.clone())
                .sum();
            // Pr_uniform[S ⊆ M] = count(U∖S, m-d) / count(U, m)
            let residual = universe.minus_matching(&s)?;
            let contain = count_matchings(&residual, m - d)?;
            let uniform_prob = rat_u128(contain) / rat_u128(full_count);
            let bound = rat_u128(1u128 << d) * uniform_prob;
            if hit > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn contains_submatching(matching: &[EdgeTuple], sub: &[EdgeTuple]) -> bool {
    sub.iter().all(|e| matching.contains(e))
}

// ---------------------------------------------------------------------------
// Internal/boundary vertex statistics for a vector's support
// ---------------------------------------------------------------------------

/// Classifies `supp(z)` vertices touched by `matching`: a support vertex is
/// boundary to an edge when it is the only support vertex on that edge, and
/// internal when the edge carries another one.
pub fn internal_boundary_counts(matching: &[EdgeTuple], z_support: &[VertexId]) -> (usize, usize) {
    let mut internal = 0usize;
    let mut boundary = 0usize;
    for e in matching {
        let hits: Vec<&VertexId> = e.iter().filter(|v| z_support.contains(v)).collect();
        match hits.len() {
            0 => {}
            1 => boundary += 1,
            h => internal += h,
        }
    }
    (internal, boundary)
}

/// Closed-form ceiling for the probability that a pseudo-uniform matching has
/// `i` internal and `b` boundary vertices against a weight-`t` vector:
/// `(24k²)^t (im/|U|²)^{i/2} (m/|U|)^b`, with the `0^0 = 1` convention.
pub fn q_probability_bound(k: usize, universe_size: usize, m: usize, t: usize, i: usize, b: usize) -> f64 {
    let u = universe_size as f64;
    let base = (24.0 * (k * k) as f64).powi(t as i32);
    let internal = if i == 0 {
        1.0
    } else {
        ((i as f64 * m as f64) / (u * u)).powf(i as f64 / 2.0)
    };
    let boundary = (m as f64 / u).powi(b as i32);
    base * internal * boundary
}

/// Monte Carlo estimate of `Pr[|in| = i and |bd| = b]` for a uniform matching
/// against a fixed support set, with a Wilson interval and the closed-form
/// bound comparison. Trials are independently seeded from `master_seed`.
pub struct QEstimate {
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub bound: f64,
    pub trials: u64,
    /// Lower confidence bound does not exceed the closed-form ceiling.
    pub within_bound: bool,
}

pub fn estimate_q(
    universe: &KUniverse,
    m: usize,
    z_support: &[VertexId],
    i: usize,
    b: usize,
    trials: u64,
    master_seed: u64,
) -> QEstimate {
    use rand::SeedableRng;
    use rayon::prelude::*;

    let t = z_support.len();
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(master_seed);
            rng.set_stream(trial);
            let y = sample_labeled(universe, m, 2, &mut rng);
            let (ii, bb) = internal_boundary_counts(&y.support(), z_support);
            u64::from(ii == i && bb == b)
        })
        .sum();
    let (lo, hi) = crate::stats::wilson_interval(hits, trials, 3.0);
    let bound = q_probability_bound(universe.k(), universe.size(), m, t, i, b);
    QEstimate {
        estimate: hits as f64 / trials as f64,
        ci_low: lo,
        ci_high: hi,
        bound,
        trials,
        within_bound: lo <= bound,
    }
}
