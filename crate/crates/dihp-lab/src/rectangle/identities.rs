//! Exact identity checks connecting the two input laws, the kernels, and the
//! structured/pseudorandom factorization, plus the spectral transfer law of
//! the fixed-matching kernel.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::config::Caps;
use crate::csp::FiniteDistribution;
use crate::error::{Error, Result};
use crate::fourier::{dft, DenseFunction};
use crate::game::kernels::{
    advance_point, kernel_p_mass, kernel_r_mass, restrict_to_window,
};
use crate::game::{exact_masses, GameSpec};
use crate::matching::{
    EdgeTuple, KUniverse, LabeledMatching, LabeledSpace, VertexId,
};
use crate::ratio::{rat_u128, Rat};
use crate::rectangle::structure::Rectangle;

/// Exact check of the product formula relating the two laws of a rectangle:
/// `D_yes(R) = D_no(R) · E_x[∏_p P[φ_{A_p}](proj_e(x))]`. The left side is
/// summed per joint input from the full mass table; the right side follows the
/// factored formula. Returns `|LHS - RHS|`, which must be exactly zero.
pub fn verify_relating_yes_no(spec: &GameSpec, rect: &Rectangle, caps: &Caps) -> Result<Rat> {
    if rect.per_player.len() != spec.num_players() {
        return Err(Error::domain("rectangle does not match the game"));
    }
    if rect.is_empty() {
        return Err(Error::domain("rectangle has an empty side"));
    }
    let masses = exact_masses(spec, caps)?;

    // LHS: direct sum of per-input correlated masses over the rectangle.
    let mut lhs = Rat::zero();
    let sizes: Vec<usize> = masses.spaces.iter().map(|s| s.size() as usize).collect();
    let mut odometer: Vec<usize> = vec![0; spec.num_players()];
    loop {
        let joint_idx: usize = {
            let mut idx = 0usize;
            for (p, &digit) in odometer.iter().enumerate().rev() {
                idx = idx * sizes[p] + rect.per_player[p][digit] as usize;
            }
            idx
        };
        lhs += &masses.yes[joint_idx];
        let mut pos = 0;
        loop {
            if pos == odometer.len() {
                break;
            }
            odometer[pos] += 1;
            if odometer[pos] < rect.per_player[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
        if pos == odometer.len() {
            break;
        }
    }

    // RHS: D_no(R) · E_x ∏_p P[φ_{A_p}](proj(x)).
    let mut dno = Rat::one();
    for (a, size) in rect.per_player.iter().zip(&sizes) {
        dno *= rat_u128(a.len() as u128) / rat_u128(*size as u128);
    }
    let modulus = spec.frame.graph.modulus;
    let ground_points = (modulus as u128).pow(spec.frame.ground_size() as u32);
    let mut x = vec![0u8; spec.frame.ground_size()];
    let mut expectation = Rat::zero();
    loop {
        let mut product = Rat::one();
        for (p, a) in rect.per_player.iter().enumerate() {
            let universe = spec.universe_of_player(p);
            let window = universe.union_vertices();
            let xw = restrict_to_window(&x, &window);
            // P[φ_A](x) = (|Ω|/|A|)·Σ_{y∈A} P(x,y)
            let mut acc = Rat::zero();
            for &idx in a {
                acc += kernel_p_mass(
                    &universe,
                    spec.matching_size,
                    spec.mu_of_player(p),
                    &window,
                    &xw,
                    &masses.spaces[p].decode(idx),
                )?;
            }
            product *= acc * rat_u128(sizes[p] as u128) / rat_u128(a.len() as u128);
            if product.is_zero() {
                break;
            }
        }
        expectation += product;
        if !advance_point(&mut x, modulus) {
            break;
        }
    }
    expectation /= rat_u128(ground_points);

    let rhs = dno * expectation;
    Ok(if lhs >= rhs { lhs - rhs } else { rhs - lhs })
}

/// Pointwise separation of a single player's kernel image into structured and
/// pseudorandom parts:
/// `P[φ_A](proj(x)) = g_{e,z}(x) · Σ_M (|A_M|/|A|) · R[φ_{A_M}](x)` where
/// `A_M` collects the labelings of the free matching `M` occurring in `A`.
/// Returns the maximum pointwise residual, which must be exactly zero.
pub fn verify_separation(
    spec: &GameSpec,
    edge_idx: usize,
    z: &LabeledMatching,
    a: &[u64],
    space: &LabeledSpace,
    caps: &Caps,
) -> Result<Rat> {
    if a.is_empty() {
        return Err(Error::domain("empty set"));
    }
    let universe = spec.universe_of_player(edge_idx * spec.players_per_edge);
    let mu = spec.mu_of_player(edge_idx * spec.players_per_edge);
    let modulus = spec.frame.graph.modulus;
    let decoded: Vec<LabeledMatching> = a.iter().map(|&i| space.decode(i)).collect();
    if decoded.iter().any(|y| !y.subsumes(z)) {
        return Err(Error::domain("set leaves the restricted space of z"));
    }

    // Partition A by the free support M = supp(y) \ supp(z).
    let residual_universe = universe.minus_matching(&z.support())?;
    let free = spec.matching_size - z.len();
    let free_matchings = crate::matching::enumerate_matchings(&residual_universe, free, caps)?;
    let k = spec.frame.graph.arity();
    let mut parts: Vec<Vec<LabeledMatching>> = vec![Vec::new(); free_matchings.len()];
    for y in &decoded {
        let free_entries: Vec<(EdgeTuple, Vec<u8>)> = y
            .entries()
            .iter()
            .filter(|(e, _)| z.label_of(e).is_none())
            .cloned()
            .collect();
        let support: Vec<EdgeTuple> = free_entries.iter().map(|(e, _)| e.clone()).collect();
        let mi = free_matchings
            .iter()
            .position(|m| *m == support)
            .ok_or_else(|| Error::structural("free support not enumerated"))?;
        parts[mi].push(LabeledMatching::new(free_entries)?);
    }

    let ground: Vec<VertexId> = (0..spec.frame.ground_size() as VertexId).collect();
    DenseFunction::check_cap(modulus, ground.len(), caps)?;
    let a_len = rat_u128(a.len() as u128);
    let omega = rat_u128(crate::matching::restricted_size(&universe, spec.matching_size, &LabeledMatching::empty(), modulus)?);

    let zeta_single = single_edge_sequence(spec, edge_idx, z);
    let mut x = vec![0u8; ground.len()];
    let mut worst = Rat::zero();
    loop {
        // LHS: kernel image of the density of A at proj(x).
        let window = universe.union_vertices();
        let xw = restrict_to_window(&x, &window);
        let mut lhs = Rat::zero();
        for y in &decoded {
            lhs += kernel_p_mass(&universe, spec.matching_size, mu, &window, &xw, y)?;
        }
        lhs *= &omega / &a_len;

        // RHS: g_{e,z}(x) Σ_M (|A_M|/|A|)·R[φ_{A_M}](x).
        let g = crate::rectangle::density::g_value_exact(spec, &zeta_single, &x);
        let mut sum = Rat::zero();
        for (m_idx, labelings) in parts.iter().enumerate() {
            if labelings.is_empty() {
                continue;
            }
            let matching = &free_matchings[m_idx];
            // R[φ_{A_M}](x) = (N^{k|M|}/|A_M|)·Σ_{ξ∈A_M} R(x,ξ)
            let mut acc = Rat::zero();
            for xi in labelings {
                acc += kernel_r_mass(matching, mu, &ground, &x, xi)?;
            }
            let scale = rat_u128((modulus as u128).pow((k * matching.len()) as u32));
            let weight = rat_u128(labelings.len() as u128) / &a_len;
            sum += weight * acc * scale / rat_u128(labelings.len() as u128);
        }
        let rhs = g * sum;

        let residual = if lhs >= rhs { lhs - rhs } else { rhs - lhs };
        if residual > worst {
            worst = residual;
        }
        if !advance_point(&mut x, modulus) {
            break;
        }
    }
    Ok(worst)
}

/// Wraps a single player's restriction into a full sequence so the structured
/// density helper can evaluate `g_{e,z}`.
fn single_edge_sequence(spec: &GameSpec, edge_idx: usize, z: &LabeledMatching) -> crate::rectangle::structure::RestrictionSeq {
    let mut per_player = vec![LabeledMatching::empty(); spec.num_players()];
    per_player[edge_idx * spec.players_per_edge] = z.clone();
    crate::rectangle::structure::RestrictionSeq { per_player }
}

/// Character transfer report for the fixed-matching kernel.
#[derive(Debug, Clone)]
pub struct SvdReport {
    /// Largest `|⟨R[f], χ_b⟩|` over `b` that are not lifts of surviving
    /// character indices (must be ≤ 1e-10).
    pub max_off_support: f64,
    /// Largest excess of `|⟨R[f], χ_{[a]}⟩|` over `|f̂(a)|` (must be ≤ 1e-10).
    pub max_bound_excess: f64,
    /// Largest `|⟨R[f], χ_{[a]}⟩ - f̂(a)·∏_e r(a(e))|` (must be ≤ 1e-10).
    pub max_equation_residual: f64,
    /// `r(0) = 1` and `|r(t)| ≤ 1` margins for the supplied distribution.
    pub r_at_zero_error: f64,
    pub max_r_magnitude: f64,
}

impl SvdReport {
    pub fn pass(&self) -> bool {
        self.max_off_support <= 1e-10
            && self.max_bound_excess <= 1e-10
            && self.max_equation_residual <= 1e-10
            && self.r_at_zero_error <= 1e-12
            && self.max_r_magnitude <= 1.0 + 1e-12
    }
}

/// Verifies the spectral action of the fixed-matching kernel on `f`: images of
/// characters survive only at lifts `[a]` with every per-edge index of
/// Hamming weight ≠ 1, where the coefficient equals `f̂(a)·∏_e N^k·μ̂(a(e))`.
pub fn verify_svd(
    universe: &KUniverse,
    matching: &[EdgeTuple],
    mu: &FiniteDistribution,
    f: &[Complex64],
    window: &[VertexId],
    caps: &Caps,
) -> Result<SvdReport> {
    for e in matching {
        if !universe.contains_edge(e) {
            return Err(Error::domain("matching leaves the universe"));
        }
    }
    let modulus = mu.base;
    let k = mu.arity;
    let m = matching.len();

    // Singular factors r(t) = N^k·μ̂(t) = Σ_z μ(z)·conj(χ_t(z)).
    let mu_fn = DenseFunction::new(
        modulus,
        (0..k as u32).collect(),
        mu.mass()
            .iter()
            .map(|p| Complex64::new(crate::ratio::rat_to_f64(p), 0.0))
            .collect(),
    )?;
    let mu_hat = dft(&mu_fn);
    let scale = (modulus as f64).powi(k as i32);
    let r: Vec<Complex64> = mu_hat.values.iter().map(|v| v * scale).collect();
    let r_at_zero_error = (r[0] - Complex64::new(1.0, 0.0)).norm();
    let max_r_magnitude = r.iter().map(|v| v.norm()).fold(0.0, f64::max);
    // One-wise independence kills singleton indices.
    for (t, rv) in r.iter().enumerate() {
        if mu_hat.index_weight(t) == 1 && rv.norm() > 1e-12 {
            return Err(Error::domain("distribution is not one-wise independent"));
        }
    }

    // Image of f under the kernel, then its spectrum.
    let image = crate::game::kernels::apply_r_complex(matching, mu, window, f, caps)?;
    let image_hat = dft(&image);

    // Spectrum of f over the labeling space.
    let f_fn = DenseFunction::new(modulus, (0..(k * m) as u32).collect(), f.to_vec())?;
    let f_hat = dft(&f_fn);

    // Positions of matched vertices inside the window.
    let mut lift_pos: Vec<Vec<usize>> = Vec::with_capacity(m);
    for e in matching {
        let mut pos = Vec::with_capacity(k);
        for v in e {
            pos.push(
                window
                    .binary_search(v)
                    .map_err(|_| Error::domain("matching vertex outside window"))?,
            );
        }
        lift_pos.push(pos);
    }

    let mut report = SvdReport {
        max_off_support: 0.0,
        max_bound_excess: 0.0,
        max_equation_residual: 0.0,
        r_at_zero_error,
        max_r_magnitude,
    };

    for b in 0..image_hat.len() {
        let digits = image_hat.decode_index(b);
        let coeff = image_hat.values[b];
        // Try to express b as a lift [a]: a(e)_i = b at e's i-th vertex, with
        // zeros everywhere off the matching.
        let mut off_matching = false;
        let mut matched: Vec<bool> = vec![false; digits.len()];
        let mut a_digits: Vec<u8> = Vec::with_capacity(k * m);
        for pos in &lift_pos {
            for &p in pos {
                a_digits.push(digits[p]);
                matched[p] = true;
            }
        }
        for (p, &d) in digits.iter().enumerate() {
            if d != 0 && !matched[p] {
                off_matching = true;
            }
        }
        if off_matching {
            report.max_off_support = report.max_off_support.max(coeff.norm());
            continue;
        }
        // Per-edge Hamming weights decide membership in the surviving set.
        let survives = (0..m).all(|e| {
            let w = a_digits[e * k..(e + 1) * k].iter().filter(|&&d| d != 0).count();
            w != 1
        });
        if !survives {
            report.max_off_support = report.max_off_support.max(coeff.norm());
            continue;
        }
        let a_idx = f_hat.encode_index(&a_digits);
        let fa = f_hat.values[a_idx];
        let excess = coeff.norm() - fa.norm();
        report.max_bound_excess = report.max_bound_excess.max(excess);
        let mut predicted = fa;
        for e in 0..m {
            let t_idx = mu_hat.encode_index(&a_digits[e * k..(e + 1) * k]);
            predicted *= r[t_idx];
        }
        report.max_equation_residual = report.max_equation_residual.max((coeff - predicted).norm());
    }
    Ok(report)
}

/// Generates a random subset of the restricted space that passes the
/// globalness check, falling back to the full restricted space.
pub fn random_global_subset(
    space: &LabeledSpace,
    z: &LabeledMatching,
    rng: &mut impl rand::Rng,
    caps: &Caps,
) -> Result<Vec<u64>> {
    let all = space.restricted_indices(z);
    for _ in 0..40 {
        let keep_prob = rng.gen_range(0.55..0.95);
        let subset: Vec<u64> = all
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(keep_prob))
            .collect();
        if subset.is_empty() {
            continue;
        }
        if crate::matching::is_global(space, &subset, z, caps)? {
            return Ok(subset);
        }
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::minimal_maxcut_spec;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn relating_yes_no_full_space_is_exact() {
        let spec = minimal_maxcut_spec(2);
        let caps = Caps::default();
        let spaces = spec.player_spaces(&caps).unwrap();
        let rect = Rectangle::full(&spaces);
        let residual = verify_relating_yes_no(&spec, &rect, &caps).unwrap();
        assert!(residual.is_zero());
    }

    #[test]
    fn relating_yes_no_random_subrectangles() {
        let spec = minimal_maxcut_spec(2);
        let caps = Caps::default();
        let spaces = spec.player_spaces(&caps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..25 {
            let per_player: Vec<Vec<u64>> = spaces
                .iter()
                .map(|s| {
                    loop {
                        let a: Vec<u64> = s.iter_indices().filter(|_| rng.gen_bool(0.6)).collect();
                        if !a.is_empty() {
                            return a;
                        }
                    }
                })
                .collect();
            let rect = Rectangle { per_player };
            let residual = verify_relating_yes_no(&spec, &rect, &caps).unwrap();
            assert!(residual.is_zero());
        }
    }

    #[test]
    fn separation_identity_cases() {
        let spec = minimal_maxcut_spec(1);
        let caps = Caps::default();
        let space = &spec.player_spaces(&caps).unwrap()[0];

        // z empty, A full.
        let z = LabeledMatching::empty();
        let all: Vec<u64> = space.iter_indices().collect();
        let residual = verify_separation(&spec, 0, &z, &all, space, &caps).unwrap();
        assert!(residual.is_zero());

        // One exposed edge, A = the whole restricted space.
        let u = spec.universe_of_player(0);
        let e = vec![u.part(0)[0], u.part(1)[0]];
        let z = LabeledMatching::new(vec![(e, vec![1, 0])]).unwrap();
        let a = space.restricted_indices(&z);
        let residual = verify_separation(&spec, 0, &z, &a, space, &caps).unwrap();
        assert!(residual.is_zero());
    }

    #[test]
    fn separation_identity_random_global_sets() {
        // A two-cloud game so free matchings are nontrivial.
        let spec = crate::game::maxcut_spec(2, crate::ratio::rat(1, 2), 1).unwrap();
        let caps = Caps::default();
        let space = &spec.player_spaces(&caps).unwrap()[0];
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let a = random_global_subset(space, &LabeledMatching::empty(), &mut rng, &caps).unwrap();
            let residual =
                verify_separation(&spec, 0, &LabeledMatching::empty(), &a, space, &caps).unwrap();
            assert!(residual.is_zero());
        }
    }

    #[test]
    fn svd_constant_function() {
        let u = KUniverse::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let matching: Vec<EdgeTuple> = vec![vec![0, 2]];
        let mu = FiniteDistribution::uniform_on(
            2,
            2,
            &[crate::csp::pack_tuple(&[0, 1], 2), crate::csp::pack_tuple(&[1, 0], 2)],
        )
        .unwrap();
        let window = u.union_vertices();
        let f = vec![Complex64::new(1.0, 0.0); 4];
        let report = verify_svd(&u, &matching, &mu, &f, &window, &Caps::default()).unwrap();
        assert!(report.pass());
    }

    #[test]
    fn svd_random_functions() {
        let u = KUniverse::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let matching: Vec<EdgeTuple> = vec![vec![0, 2], vec![1, 3]];
        let mu = FiniteDistribution::uniform_on(
            2,
            2,
            &[crate::csp::pack_tuple(&[0, 1], 2), crate::csp::pack_tuple(&[1, 0], 2)],
        )
        .unwrap();
        let window = u.union_vertices();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..25 {
            let f: Vec<Complex64> = (0..16)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let report = verify_svd(&u, &matching, &mu, &f, &window, &Caps::default()).unwrap();
            assert!(report.pass(), "{report:?}");
        }
    }

    #[test]
    fn svd_over_z3_uniform() {
        // A one-wise distribution over Z_3²: uniform on {(a, 2a)}.
        let support: Vec<usize> = (0..3)
            .map(|a| crate::csp::pack_tuple(&[a, (2 * a) % 3], 3))
            .collect();
        let mu = FiniteDistribution::uniform_on(3, 2, &support).unwrap();
        assert!(crate::csp::check_onewise(&mu));
        let u = KUniverse::new(vec![vec![0], vec![1]]).unwrap();
        let matching: Vec<EdgeTuple> = vec![vec![0, 1]];
        let window = u.union_vertices();
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let f: Vec<Complex64> = (0..9)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let report = verify_svd(&u, &matching, &mu, &f, &window, &Caps::default()).unwrap();
        assert!(report.pass(), "{report:?}");
    }
}
