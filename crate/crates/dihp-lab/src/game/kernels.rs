//! The two Markov kernels of the game, as exact mass functions and as
//! pull-back linear operators on enumerated spaces.
//!
//! Vectors over a window `Z_N^W` are indexed positionally: `W` is an ascending
//! list of ground vertex ids, and the value of vertex `w` sits at its position
//! in the list.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::csp::FiniteDistribution;
use crate::error::{Error, Result};
use crate::fourier::DenseFunction;
use crate::matching::{count_matchings, EdgeTuple, KUniverse, LabeledMatching, LabeledSpace, VertexId};
use crate::ratio::{rat_u128, Rat};

/// Position of each ground vertex inside a sorted window.
pub fn window_position(window: &[VertexId], v: VertexId) -> Result<usize> {
    window
        .binary_search(&v)
        .map_err(|_| Error::domain(format!("vertex {v} outside the window")))
}

/// Extracts window values from a dense ground-set vector.
pub fn restrict_to_window(x_ground: &[u8], window: &[VertexId]) -> Vec<u8> {
    window.iter().map(|&v| x_ground[v as usize]).collect()
}

/// `x_{|e} - y(e)` in `Z_N^k` for one labeled edge.
fn shifted_label(
    x_window: &[u8],
    window: &[VertexId],
    edge: &EdgeTuple,
    label: &[u8],
    modulus: usize,
) -> Result<Vec<usize>> {
    edge.iter()
        .zip(label)
        .map(|(&v, &l)| {
            let pos = window_position(window, v)?;
            Ok((x_window[pos] as usize + modulus - l as usize) % modulus)
        })
        .collect()
}

/// Mass the matching kernel puts on the labeled matching `y` given the window
/// vector `x`: `(1/|M_{U,m}|)·∏_{e ∈ supp(y)} μ(x_{|e} - y(e))`.
pub fn kernel_p_mass(
    universe: &KUniverse,
    m: usize,
    mu: &FiniteDistribution,
    window: &[VertexId],
    x_window: &[u8],
    y: &LabeledMatching,
) -> Result<Rat> {
    if y.len() != m {
        return Err(Error::domain(format!("y has {} edges, kernel expects {m}", y.len())));
    }
    if x_window.len() != window.len() {
        return Err(Error::domain("window vector length mismatch"));
    }
    let total = count_matchings(universe, m)?;
    let mut mass = Rat::one() / rat_u128(total);
    for (edge, label) in y.entries() {
        if !universe.contains_edge(edge) {
            return Err(Error::domain("labeled matching edge outside the universe"));
        }
        let w = shifted_label(x_window, window, edge, label, mu.base)?;
        mass *= mu.mass_of_tuple(&w);
        if mass.is_zero() {
            return Ok(mass);
        }
    }
    Ok(mass)
}

/// Mass the fixed-matching kernel puts on the labeling `xi` of matching `M`:
/// `∏_{e ∈ M} μ(x_{|e} - ξ(e))`. `xi` must label every edge of `M`.
pub fn kernel_r_mass(
    matching: &[EdgeTuple],
    mu: &FiniteDistribution,
    window: &[VertexId],
    x_window: &[u8],
    xi: &LabeledMatching,
) -> Result<Rat> {
    let mut mass = Rat::one();
    for edge in matching {
        let label = xi
            .label_of(edge)
            .ok_or_else(|| Error::domain("labeling does not cover every matching edge"))?;
        let w = shifted_label(x_window, window, edge, label, mu.base)?;
        mass *= mu.mass_of_tuple(&w);
        if mass.is_zero() {
            return Ok(mass);
        }
    }
    Ok(mass)
}

/// Applies the matching kernel as a pull-back operator: maps `f` on `Ω^{U,m}`
/// (in space enumeration order) to a function of the window vector, returned
/// alongside the window. Exact rationals throughout.
pub fn apply_p(
    space: &LabeledSpace,
    mu: &FiniteDistribution,
    f: &[Rat],
    caps: &crate::config::Caps,
) -> Result<(Vec<VertexId>, Vec<Rat>)> {
    if f.len() as u128 != space.size() {
        return Err(Error::domain("function length does not match the space"));
    }
    let window = space.universe.union_vertices();
    let points = crate::fourier::DenseFunction::check_cap(space.modulus, window.len(), caps)?;
    let mut out = Vec::with_capacity(points as usize);
    let mut x = vec![0u8; window.len()];
    loop {
        let mut acc = Rat::zero();
        for (idx, y) in space.iter_indices().enumerate() {
            let mass = kernel_p_mass(&space.universe, space.m, mu, &window, &x, &space.decode(y))?;
            if !mass.is_zero() {
                acc += mass * &f[idx];
            }
        }
        out.push(acc);
        if !advance_point(&mut x, space.modulus) {
            break;
        }
    }
    Ok((window, out))
}

/// Applies the fixed-matching kernel to `f` on `Map(M → Z_N^k)` (labelings in
/// mixed-radix order: edge 0's label least significant, coordinates within an
/// edge least significant first), producing a function of the window vector.
pub fn apply_r(
    matching: &[EdgeTuple],
    mu: &FiniteDistribution,
    window: &[VertexId],
    f: &[Rat],
    caps: &crate::config::Caps,
) -> Result<Vec<Rat>> {
    let k = mu.arity;
    let n = mu.base;
    let expect = (n as u128)
        .checked_pow((k * matching.len()) as u32)
        .ok_or_else(|| Error::structural("labeling space overflows"))?;
    if f.len() as u128 != expect {
        return Err(Error::domain("function length does not match the labeling space"));
    }
    let points = crate::fourier::DenseFunction::check_cap(n, window.len(), caps)?;
    let mut out = Vec::with_capacity(points as usize);
    let mut x = vec![0u8; window.len()];
    loop {
        let mut acc = Rat::zero();
        for (idx, val) in f.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            let xi = decode_labeling(matching, idx, n, k);
            acc += kernel_r_mass(matching, mu, window, &x, &xi)? * val;
        }
        out.push(acc);
        if !advance_point(&mut x, n) {
            break;
        }
    }
    Ok(out)
}

/// Same operator on complex-valued `f`, returning a dense window function.
pub fn apply_r_complex(
    matching: &[EdgeTuple],
    mu: &FiniteDistribution,
    window: &[VertexId],
    f: &[Complex64],
    caps: &crate::config::Caps,
) -> Result<DenseFunction> {
    let k = mu.arity;
    let n = mu.base;
    crate::fourier::DenseFunction::check_cap(n, window.len(), caps)?;
    // Precompute the rational masses as floats once per labeling.
    let mut out = Vec::new();
    let mut x = vec![0u8; window.len()];
    loop {
        let mut acc = Complex64::default();
        for (idx, val) in f.iter().enumerate() {
            if val.norm_sqr() == 0.0 {
                continue;
            }
            let xi = decode_labeling(matching, idx, n, k);
            let mass = kernel_r_mass(matching, mu, window, &x, &xi)?;
            acc += val * crate::ratio::rat_to_f64(&mass);
        }
        out.push(acc);
        if !advance_point(&mut x, n) {
            break;
        }
    }
    DenseFunction::new(n, window.to_vec(), out)
}

/// Decodes labeling index `idx` into a labeled matching on `matching`.
pub fn decode_labeling(matching: &[EdgeTuple], mut idx: usize, modulus: usize, k: usize) -> LabeledMatching {
    let entries = matching
        .iter()
        .map(|e| {
            let mut lab = Vec::with_capacity(k);
            for _ in 0..k {
                lab.push((idx % modulus) as u8);
                idx /= modulus;
            }
            (e.clone(), lab)
        })
        .collect();
    LabeledMatching::new(entries).expect("matching stays a matching under labeling")
}

/// Encodes a labeling of exactly the edges of `matching` back to its index.
pub fn encode_labeling(matching: &[EdgeTuple], xi: &LabeledMatching, modulus: usize, k: usize) -> Option<usize> {
    if xi.len() != matching.len() {
        return None;
    }
    let mut idx = 0usize;
    let mut scale = 1usize;
    for e in matching {
        let lab = xi.label_of(e)?;
        for &l in lab.iter().take(k) {
            idx += l as usize * scale;
            scale *= modulus;
        }
    }
    Some(idx)
}

pub fn advance_point(x: &mut [u8], modulus: usize) -> bool {
    for slot in x.iter_mut() {
        *slot += 1;
        if (*slot as usize) < modulus {
            return true;
        }
        *slot = 0;
    }
    false
}
