//! The hidden-partition communication game: configuration, correlated and
//! uniform input samplers, exact mass tables, protocol execution, and
//! advantage computation.

pub mod kernels;
pub mod protocol;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::blowup::{BlowupFrame, DistLabeledGraph};
use crate::config::Caps;
use crate::csp::FiniteDistribution;
use crate::error::{Error, Result};
use crate::matching::{sample_labeled, KUniverse, LabeledMatching, LabeledSpace};
use crate::ratio::{rat_u128, Rat};
use crate::stats::newcombe_diff_interval;

pub use protocol::{
    run_protocol, ConstantProtocol, CycleConsistencyProtocol, EchoProtocol,
    FullInformationProtocol, Protocol, Transcript, Verdict,
};

/// One game configuration: a distribution-labeled graph, a blow-up factor, a
/// matching density `α` with `αn` integral, and `K` players per edge. Player
/// `(e, j)` has flat id `e·K + j`.
#[derive(Debug, Clone)]
pub struct GameSpec {
    pub frame: BlowupFrame,
    pub alpha: Rat,
    pub matching_size: usize,
    pub players_per_edge: usize,
}

impl GameSpec {
    pub fn new(graph: DistLabeledGraph, n: usize, alpha: Rat, players_per_edge: usize) -> Result<Self> {
        if players_per_edge == 0 {
            return Err(Error::domain("at least one player per edge required"));
        }
        if alpha <= Rat::zero() || alpha > Rat::one() {
            return Err(Error::domain("alpha must lie in (0, 1]"));
        }
        let scaled = &alpha * rat_u128(n as u128);
        if !scaled.is_integer() {
            return Err(Error::domain(format!(
                "alpha·n = {} must be a positive integer",
                crate::ratio::rat_to_string(&scaled)
            )));
        }
        let matching_size = scaled
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::structural("matching size overflows usize"))?;
        if matching_size == 0 || matching_size > n {
            return Err(Error::domain("alpha·n must lie in 1..=n"));
        }
        Ok(GameSpec {
            frame: BlowupFrame::new(graph, n)?,
            alpha,
            matching_size,
            players_per_edge,
        })
    }

    pub fn num_players(&self) -> usize {
        self.frame.graph.num_edges() * self.players_per_edge
    }

    pub fn player_edge(&self, player: usize) -> usize {
        player / self.players_per_edge
    }

    pub fn universe_of_player(&self, player: usize) -> KUniverse {
        self.frame.universe(self.player_edge(player))
    }

    pub fn mu_of_player(&self, player: usize) -> &FiniteDistribution {
        &self.frame.graph.edge_dists[self.player_edge(player)]
    }

    pub fn spec_hash_hex(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.frame.graph.to_json().as_bytes());
        h.update(self.frame.n.to_le_bytes());
        h.update(crate::ratio::rat_to_string(&self.alpha).as_bytes());
        h.update(self.players_per_edge.to_le_bytes());
        let out: [u8; 32] = h.finalize().into();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Enumerated per-player input spaces (cap-guarded; players on the same
    /// edge share one space shape but get distinct entries for indexing
    /// clarity).
    pub fn player_spaces(&self, caps: &Caps) -> Result<Vec<LabeledSpace>> {
        (0..self.num_players())
            .map(|p| {
                LabeledSpace::build(
                    self.universe_of_player(p),
                    self.matching_size,
                    self.frame.graph.modulus,
                    caps,
                )
            })
            .collect()
    }

    /// Exact correlated-law mass of one joint input:
    /// `E_x[∏_p P(proj_e(x), y_p)]` over the uniform hidden vector.
    pub fn yes_mass(&self, joint: &JointInput) -> Result<Rat> {
        let ground = self.frame.ground_size();
        let modulus = self.frame.graph.modulus;
        let points = (modulus as u128)
            .checked_pow(ground as u32)
            .ok_or_else(|| Error::structural("hidden-vector space overflows"))?;
        let mut x = vec![0u8; ground];
        let mut total = Rat::zero();
        loop {
            let mut product = Rat::one();
            for (p, y) in joint.inputs.iter().enumerate() {
                let universe = self.universe_of_player(p);
                let window = universe.union_vertices();
                let xw = kernels::restrict_to_window(&x, &window);
                let mass = kernels::kernel_p_mass(
                    &universe,
                    self.matching_size,
                    self.mu_of_player(p),
                    &window,
                    &xw,
                    y,
                )?;
                if mass.is_zero() {
                    product = Rat::zero();
                    break;
                }
                product *= mass;
            }
            total += product;
            if !kernels::advance_point(&mut x, modulus) {
                break;
            }
        }
        Ok(total / rat_u128(points))
    }

    /// Uniform-law mass of any joint input: `1/∏_p |Ω_p|`.
    pub fn no_mass(&self) -> Rat {
        let mut denom = Rat::one();
        for p in 0..self.num_players() {
            let count = crate::matching::count_matchings(&self.universe_of_player(p), self.matching_size)
                .expect("spec sizes are valid");
            let labels = (self.frame.graph.modulus as u128)
                .pow((self.frame.graph.arity() * self.matching_size) as u32);
            denom *= rat_u128(count * labels);
        }
        Rat::one() / denom
    }
}

/// The hidden vector `x ∈ Z_N^{V×[n]}`, indexed by ground vertex id.
pub type HiddenVector = Vec<u8>;

/// One sampled input per player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointInput {
    pub inputs: Vec<LabeledMatching>,
}

/// Exact sampler for a rational-mass distribution via a common denominator.
struct RatSampler {
    cumulative: Vec<u64>,
    total: u64,
}

impl RatSampler {
    fn new(mu: &FiniteDistribution) -> Result<Self> {
        let denom = crate::ratio::lcm_of_denominators(mu.mass().iter());
        let mut cumulative = Vec::with_capacity(mu.mass().len());
        let mut acc: BigInt = BigInt::zero();
        for m in mu.mass() {
            let scaled = m * Rat::from_integer(denom.clone());
            debug_assert!(scaled.is_integer());
            acc += scaled.to_integer();
            cumulative.push(
                acc.to_u64()
                    .ok_or_else(|| Error::structural("distribution denominator exceeds u64"))?,
            );
        }
        let total = denom
            .to_u64()
            .ok_or_else(|| Error::structural("distribution denominator exceeds u64"))?;
        Ok(RatSampler { cumulative, total })
    }

    fn sample(&self, rng: &mut impl Rng) -> usize {
        let r = rng.gen_range(0..self.total);
        self.cumulative.partition_point(|&c| c <= r)
    }
}

/// Uniform joint input: every player draws independently from its full space.
pub fn sample_no(spec: &GameSpec, rng: &mut impl Rng) -> JointInput {
    let inputs = (0..spec.num_players())
        .map(|p| {
            sample_labeled(
                &spec.universe_of_player(p),
                spec.matching_size,
                spec.frame.graph.modulus,
                rng,
            )
        })
        .collect();
    JointInput { inputs }
}

/// Correlated joint input: a uniform hidden vector, then per player a uniform
/// support matching whose labels are `x_{|e} - w` with `w` drawn from the
/// edge distribution.
pub fn sample_yes(spec: &GameSpec, rng: &mut impl Rng) -> Result<(HiddenVector, JointInput)> {
    let modulus = spec.frame.graph.modulus;
    let x: Vec<u8> = (0..spec.frame.ground_size())
        .map(|_| rng.gen_range(0..modulus) as u8)
        .collect();
    let samplers: Vec<RatSampler> = spec
        .frame
        .graph
        .edge_dists
        .iter()
        .map(RatSampler::new)
        .collect::<Result<_>>()?;
    let k = spec.frame.graph.arity();
    let mut inputs = Vec::with_capacity(spec.num_players());
    for p in 0..spec.num_players() {
        let universe = spec.universe_of_player(p);
        let support = sample_labeled(&universe, spec.matching_size, modulus, rng);
        let sampler = &samplers[spec.player_edge(p)];
        let entries = support
            .entries()
            .iter()
            .map(|(e, _)| {
                let w = crate::csp::unpack_tuple(sampler.sample(rng), modulus, k);
                let lab = e
                    .iter()
                    .zip(&w)
                    .map(|(&v, &wj)| ((x[v as usize] as usize + modulus - wj) % modulus) as u8)
                    .collect();
                (e.clone(), lab)
            })
            .collect();
        inputs.push(LabeledMatching::new(entries)?);
    }
    Ok((x, JointInput { inputs }))
}

/// Exact mass tables of both input laws over the full joint space.
pub struct ExactMasses {
    pub spaces: Vec<LabeledSpace>,
    pub yes: Vec<Rat>,
    pub no: Vec<Rat>,
}

impl ExactMasses {
    pub fn joint_size(&self) -> usize {
        self.yes.len()
    }

    pub fn decode(&self, mut idx: usize) -> JointInput {
        let inputs = self
            .spaces
            .iter()
            .map(|s| {
                let size = s.size() as usize;
                let y = s.decode((idx % size) as u64);
                idx /= size;
                y
            })
            .collect();
        JointInput { inputs }
    }

    pub fn encode(&self, joint: &JointInput) -> Option<usize> {
        let mut idx = 0usize;
        let mut scale = 1usize;
        for (s, y) in self.spaces.iter().zip(&joint.inputs) {
            idx += s.encode(y)? as usize * scale;
            scale *= s.size() as usize;
        }
        Some(idx)
    }

    /// `TV(D_yes, D_no) = (1/2)·Σ_Y |D_yes(Y) - D_no(Y)|`.
    pub fn total_variation(&self) -> Rat {
        let sum: Rat = self
            .yes
            .iter()
            .zip(&self.no)
            .map(|(a, b)| (a - b).abs())
            .sum();
        sum / rat_u128(2)
    }
}

/// Brute-force oracle: enumerates every joint input and every hidden vector.
pub fn exact_masses(spec: &GameSpec, caps: &Caps) -> Result<ExactMasses> {
    let spaces = spec.player_spaces(caps)?;
    let mut joint_size: u128 = 1;
    for s in &spaces {
        joint_size = joint_size
            .checked_mul(s.size())
            .ok_or_else(|| Error::structural("joint space overflows"))?;
    }
    let ground_points = (spec.frame.graph.modulus as u128)
        .checked_pow(spec.frame.ground_size() as u32)
        .ok_or_else(|| Error::structural("hidden-vector space overflows"))?;
    caps.check(
        "exact_masses",
        joint_size
            .checked_mul(ground_points)
            .ok_or_else(|| Error::structural("mass table overflows"))?,
    )?;

    let modulus = spec.frame.graph.modulus;
    let mut yes = vec![Rat::zero(); joint_size as usize];
    let no_each = spec.no_mass();
    let no = vec![no_each; joint_size as usize];

    let windows: Vec<Vec<crate::matching::VertexId>> = (0..spec.num_players())
        .map(|p| spec.universe_of_player(p).union_vertices())
        .collect();

    let mut x = vec![0u8; spec.frame.ground_size()];
    let x_weight = Rat::one() / rat_u128(ground_points);
    loop {
        // Per-player kernel rows at this hidden vector.
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(spec.num_players());
        for (p, space) in spaces.iter().enumerate() {
            let xw = kernels::restrict_to_window(&x, &windows[p]);
            let mut row = Vec::with_capacity(space.size() as usize);
            for y in space.iter_indices() {
                row.push(kernels::kernel_p_mass(
                    &space.universe,
                    spec.matching_size,
                    spec.mu_of_player(p),
                    &windows[p],
                    &xw,
                    &space.decode(y),
                )?);
            }
            rows.push(row);
        }
        for (idx, slot) in yes.iter_mut().enumerate() {
            let mut rest = idx;
            let mut product = x_weight.clone();
            for (space, row) in spaces.iter().zip(&rows) {
                let size = space.size() as usize;
                product *= &row[rest % size];
                if product.is_zero() {
                    break;
                }
                rest /= size;
            }
            if !product.is_zero() {
                *slot += product;
            }
        }
        if !kernels::advance_point(&mut x, modulus) {
            break;
        }
    }
    Ok(ExactMasses { spaces, yes, no })
}

/// How to measure a protocol's advantage.
#[derive(Debug, Clone, Copy)]
pub enum AdvantageMode {
    Exact,
    MonteCarlo { trials: u64, seed: u64 },
}

/// Advantage estimate with acceptance rates under both laws. In Monte Carlo
/// mode the interval is a 3σ Newcombe score interval for the rate difference;
/// in exact mode it collapses to the exact value.
#[derive(Debug, Clone)]
pub struct AdvantageOutcome {
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub yes_rate: f64,
    pub no_rate: f64,
    pub trials: u64,
    pub exact: Option<Rat>,
    pub notes: Vec<String>,
}

/// `|Pr_yes[Π accepts] - Pr_no[Π accepts]|`, exact over the full joint space
/// or estimated from seeded Monte Carlo trials.
pub fn advantage(
    protocol: &dyn Protocol,
    spec: &GameSpec,
    mode: AdvantageMode,
    caps: &Caps,
) -> Result<AdvantageOutcome> {
    match mode {
        AdvantageMode::Exact => {
            let masses = exact_masses(spec, caps)?;
            let mut yes_acc = Rat::zero();
            let mut no_acc = Rat::zero();
            let mut notes = Vec::new();
            for idx in 0..masses.joint_size() {
                let joint = masses.decode(idx);
                let (verdict, _) = run_protocol(protocol, spec, &joint)?;
                notes.extend(verdict.notes);
                if verdict.accept {
                    yes_acc += &masses.yes[idx];
                    no_acc += &masses.no[idx];
                }
            }
            let adv = (&yes_acc - &no_acc).abs();
            let est = crate::ratio::rat_to_f64(&adv);
            Ok(AdvantageOutcome {
                estimate: est,
                ci_low: est,
                ci_high: est,
                yes_rate: crate::ratio::rat_to_f64(&yes_acc),
                no_rate: crate::ratio::rat_to_f64(&no_acc),
                trials: masses.joint_size() as u64,
                exact: Some(adv),
                notes,
            })
        }
        AdvantageMode::MonteCarlo { trials, seed } => {
            let run_one = |trial: u64| -> Result<(u64, u64)> {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(trial);
                let (_, yes_input) = sample_yes(spec, &mut rng)?;
                let (yes_verdict, _) = run_protocol(protocol, spec, &yes_input)?;
                let no_input = sample_no(spec, &mut rng);
                let (no_verdict, _) = run_protocol(protocol, spec, &no_input)?;
                Ok((yes_verdict.accept as u64, no_verdict.accept as u64))
            };
            let counts: Result<Vec<(u64, u64)>> = (0..trials).into_par_iter().map(run_one).collect();
            let counts = counts?;
            let yes_hits: u64 = counts.iter().map(|c| c.0).sum();
            let no_hits: u64 = counts.iter().map(|c| c.1).sum();
            let yes_rate = yes_hits as f64 / trials as f64;
            let no_rate = no_hits as f64 / trials as f64;
            let (lo, hi) = newcombe_diff_interval(yes_hits, trials, no_hits, trials, 3.0);
            // Advantage is the absolute difference; fold the interval through
            // the absolute value.
            let (ci_low, ci_high) = if lo >= 0.0 {
                (lo, hi)
            } else if hi <= 0.0 {
                (-hi, -lo)
            } else {
                (0.0, hi.max(-lo))
            };
            Ok(AdvantageOutcome {
                estimate: (yes_rate - no_rate).abs(),
                ci_low,
                ci_high,
                yes_rate,
                no_rate,
                trials,
                exact: None,
                notes: Vec::new(),
            })
        }
    }
}

/// The canonical tiny game for exact cross-checks: single-edge max-cut graph,
/// `n = 1`, `αn = 1`, `K` players.
pub fn minimal_maxcut_spec(players: usize) -> GameSpec {
    let inst = crate::csp::gallery::max_cut_instance(2, &[(0, 1)], 2);
    let sol = crate::lp::canonical_value1_solution(&inst, crate::csp::IndependenceOrder::One)
        .expect("lp feasibility")
        .expect("cut supports one-wise independence");
    let graph = crate::blowup::reduce_to_graph(&inst, &sol).expect("reduction succeeds");
    GameSpec::new(graph, 1, crate::ratio::rat(1, 1), players).expect("valid spec")
}

/// The max-cut communication preset: single-edge graph blown up `n` times.
pub fn maxcut_spec(n: usize, alpha: Rat, players_per_edge: usize) -> Result<GameSpec> {
    let inst = crate::csp::gallery::max_cut_instance(2, &[(0, 1)], 2);
    let sol = crate::lp::canonical_value1_solution(&inst, crate::csp::IndependenceOrder::One)?
        .ok_or_else(|| Error::structural("cut predicate supports one-wise independence"))?;
    let graph = crate::blowup::reduce_to_graph(&inst, &sol)?;
    GameSpec::new(graph, n, alpha, players_per_edge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn spec_validation() {
        let inst = crate::csp::gallery::max_cut_instance(2, &[(0, 1)], 2);
        let sol = crate::lp::canonical_value1_solution(&inst, crate::csp::IndependenceOrder::One)
            .unwrap()
            .unwrap();
        let graph = crate::blowup::reduce_to_graph(&inst, &sol).unwrap();
        assert!(GameSpec::new(graph.clone(), 8, rat(1, 3), 2).is_err()); // 8/3 not integral
        assert!(GameSpec::new(graph.clone(), 8, rat(1, 8), 0).is_err());
        assert!(GameSpec::new(graph, 8, rat(1, 8), 2).is_ok());
    }

    #[test]
    fn no_masses_are_uniform_and_sum_to_one() {
        let spec = minimal_maxcut_spec(2);
        let masses = exact_masses(&spec, &Caps::default()).unwrap();
        let total_no: Rat = masses.no.iter().sum();
        let total_yes: Rat = masses.yes.iter().sum();
        assert!(total_no.is_one());
        assert!(total_yes.is_one());
        let expect = Rat::one() / rat_u128(masses.joint_size() as u128);
        assert!(masses.no.iter().all(|m| *m == expect));
    }

    #[test]
    fn tvd_matches_direct_recomputation() {
        let spec = minimal_maxcut_spec(2);
        let masses = exact_masses(&spec, &Caps::default()).unwrap();
        let tv = masses.total_variation();
        // Independent route: sum of positive parts of (yes - no).
        let pos: Rat = masses
            .yes
            .iter()
            .zip(&masses.no)
            .map(|(a, b)| {
                let d = a - b;
                if d > Rat::zero() {
                    d
                } else {
                    Rat::zero()
                }
            })
            .sum();
        assert_eq!(tv, pos);
        assert!(tv > Rat::zero());
    }

    #[test]
    fn yes_sampler_matches_exact_masses() {
        let spec = minimal_maxcut_spec(1);
        let masses = exact_masses(&spec, &Caps::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let trials = 200_000usize;
        let mut counts = vec![0u64; masses.joint_size()];
        for _ in 0..trials {
            let (_, joint) = sample_yes(&spec, &mut rng).unwrap();
            counts[masses.encode(&joint).unwrap()] += 1;
        }
        // 4σ binomial envelope per outcome.
        for (idx, &c) in counts.iter().enumerate() {
            let p = crate::ratio::rat_to_f64(&masses.yes[idx]);
            let sd = (p * (1.0 - p) / trials as f64).sqrt();
            let freq = c as f64 / trials as f64;
            assert!(
                (freq - p).abs() <= 4.0 * sd + 1e-9,
                "outcome {idx}: freq {freq} vs mass {p}"
            );
        }
    }

    #[test]
    fn no_sampler_marginals_are_uniform() {
        let spec = minimal_maxcut_spec(1);
        let masses = exact_masses(&spec, &Caps::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let trials = 100_000usize;
        let mut counts = vec![0u64; masses.joint_size()];
        for _ in 0..trials {
            let joint = sample_no(&spec, &mut rng);
            counts[masses.encode(&joint).unwrap()] += 1;
        }
        let expect = trials as f64 / masses.joint_size() as f64;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expect).powi(2) / expect).sum();
        // dof = 3; generous 4σ-ish ceiling
        assert!(chi2 < 25.0, "chi2 = {chi2}");
    }

    #[test]
    fn conditional_label_law_matches_mu() {
        // Conditioned on x and the support, labels are x_{|e} - w with w ~ μ.
        let spec = minimal_maxcut_spec(1);
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let trials = 50_000usize;
        let mut w_counts = [0u64; 4];
        for _ in 0..trials {
            let (x, joint) = sample_yes(&spec, &mut rng).unwrap();
            let (e, lab) = &joint.inputs[0].entries()[0];
            let w0 = (x[e[0] as usize] as usize + 2 - lab[0] as usize) % 2;
            let w1 = (x[e[1] as usize] as usize + 2 - lab[1] as usize) % 2;
            w_counts[w0 + 2 * w1] += 1;
        }
        // μ is uniform on {(0,1),(1,0)}: indices 2 and 1.
        assert_eq!(w_counts[0], 0);
        assert_eq!(w_counts[3], 0);
        let diff = (w_counts[1] as f64 - w_counts[2] as f64).abs() / trials as f64;
        assert!(diff < 0.02);
    }

    #[test]
    fn constant_protocol_has_zero_advantage() {
        let spec = minimal_maxcut_spec(2);
        let out = advantage(&ConstantProtocol { value: true }, &spec, AdvantageMode::Exact, &Caps::default())
            .unwrap();
        assert_eq!(out.exact.unwrap(), Rat::zero());
    }

    #[test]
    fn full_information_attains_total_variation() {
        let spec_arc = std::sync::Arc::new(minimal_maxcut_spec(2));
        let masses = exact_masses(&spec_arc, &Caps::default()).unwrap();
        let proto = FullInformationProtocol::new(std::sync::Arc::clone(&spec_arc));
        let out = advantage(&proto, &spec_arc, AdvantageMode::Exact, &Caps::default()).unwrap();
        assert_eq!(out.exact.unwrap(), masses.total_variation());
    }

    #[test]
    fn advantage_never_exceeds_total_variation() {
        let spec_arc = std::sync::Arc::new(minimal_maxcut_spec(2));
        let masses = exact_masses(&spec_arc, &Caps::default()).unwrap();
        let tv = masses.total_variation();
        let protos: Vec<Box<dyn Protocol>> = vec![
            Box::new(ConstantProtocol { value: true }),
            Box::new(EchoProtocol),
            Box::new(CycleConsistencyProtocol::new(std::sync::Arc::clone(&spec_arc), 24)),
            Box::new(FullInformationProtocol::new(std::sync::Arc::clone(&spec_arc))),
        ];
        for p in &protos {
            let out = advantage(p.as_ref(), &spec_arc, AdvantageMode::Exact, &Caps::default()).unwrap();
            assert!(out.exact.unwrap() <= tv);
        }
    }

    #[test]
    fn exact_and_monte_carlo_agree() {
        let spec_arc = std::sync::Arc::new(minimal_maxcut_spec(2));
        let proto = CycleConsistencyProtocol::new(std::sync::Arc::clone(&spec_arc), 24);
        let exact = advantage(&proto, &spec_arc, AdvantageMode::Exact, &Caps::default()).unwrap();
        let mc = advantage(
            &proto,
            &spec_arc,
            AdvantageMode::MonteCarlo { trials: 40_000, seed: 5 },
            &Caps::default(),
        )
        .unwrap();
        // 4σ agreement: the Newcombe interval is already 3σ; widen slightly.
        let slack = 1.4 * (mc.ci_high - mc.ci_low).max(1e-3);
        assert!(
            (mc.estimate - exact.estimate).abs() <= slack,
            "mc {} vs exact {}",
            mc.estimate,
            exact.estimate
        );
    }

    #[test]
    fn monte_carlo_is_seed_reproducible() {
        let spec_arc = std::sync::Arc::new(minimal_maxcut_spec(1));
        let proto = EchoProtocol;
        let a = advantage(&proto, &spec_arc, AdvantageMode::MonteCarlo { trials: 5_000, seed: 9 }, &Caps::default())
            .unwrap();
        let b = advantage(&proto, &spec_arc, AdvantageMode::MonteCarlo { trials: 5_000, seed: 9 }, &Caps::default())
            .unwrap();
        assert_eq!(a.estimate, b.estimate);
        assert_eq!(a.yes_rate, b.yes_rate);
    }

    #[test]
    fn protocol_run_is_deterministic_and_cost_checked() {
        let spec = minimal_maxcut_spec(2);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let joint = sample_no(&spec, &mut rng);
        let proto = EchoProtocol;
        let (v1, t1) = run_protocol(&proto, &spec, &joint).unwrap();
        let (v2, t2) = run_protocol(&proto, &spec, &joint).unwrap();
        assert_eq!(v1.accept, v2.accept);
        assert_eq!(t1.messages, t2.messages);
        assert_eq!(t1.total_bits(), 1);

        struct Liar;
        impl Protocol for Liar {
            fn name(&self) -> &str {
                "liar"
            }
            fn schedule(&self) -> Vec<usize> {
                vec![0]
            }
            fn message(&self, _: usize, _: usize, _: &Transcript, _: &LabeledMatching) -> Vec<bool> {
                vec![true, false, true]
            }
            fn output(&self, _: &Transcript) -> Verdict {
                Verdict { accept: false, notes: Vec::new() }
            }
            fn declared_cost(&self) -> usize {
                1
            }
        }
        assert!(matches!(run_protocol(&Liar, &spec, &joint), Err(Error::Contract(_))));
    }

    #[test]
    fn cycle_consistency_accepts_every_yes_input() {
        let spec_arc = std::sync::Arc::new(minimal_maxcut_spec(2));
        let proto = CycleConsistencyProtocol::new(std::sync::Arc::clone(&spec_arc), 24);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..200 {
            let (_, joint) = sample_yes(&spec_arc, &mut rng).unwrap();
            let (verdict, _) = run_protocol(&proto, &spec_arc, &joint).unwrap();
            assert!(verdict.accept, "yes inputs are always consistent");
        }
    }

    #[test]
    fn cycle_consistency_accepts_acyclic_unions_in_both_laws() {
        // One player on the minimal game: the union is a single edge and the
        // relation system of a tree over a one-wise support is always
        // satisfiable, so the protocol accepts everything.
        let spec_arc = std::sync::Arc::new(minimal_maxcut_spec(1));
        let proto = CycleConsistencyProtocol::new(std::sync::Arc::clone(&spec_arc), 24);
        let out = advantage(&proto, &spec_arc, AdvantageMode::Exact, &Caps::default()).unwrap();
        assert_eq!(out.yes_rate, 1.0);
        assert_eq!(out.no_rate, 1.0);
        assert_eq!(out.exact.unwrap(), Rat::zero());
    }

    #[test]
    fn full_information_advantage_is_schedule_insensitive() {
        // Reversing the speaking order changes transcripts, not verdicts.
        struct Reversed(FullInformationProtocol, usize);
        impl Protocol for Reversed {
            fn name(&self) -> &str {
                "full-information-reversed"
            }
            fn schedule(&self) -> Vec<usize> {
                (0..self.1).rev().collect()
            }
            fn message(
                &self,
                round: usize,
                player: usize,
                t: &Transcript,
                input: &LabeledMatching,
            ) -> Vec<bool> {
                self.0.message(round, player, t, input)
            }
            fn output(&self, t: &Transcript) -> Verdict {
                self.0.output(t)
            }
            fn declared_cost(&self) -> usize {
                self.0.declared_cost()
            }
        }
        let spec_arc = std::sync::Arc::new(minimal_maxcut_spec(2));
        let forward = FullInformationProtocol::new(std::sync::Arc::clone(&spec_arc));
        let reversed = Reversed(
            FullInformationProtocol::new(std::sync::Arc::clone(&spec_arc)),
            spec_arc.num_players(),
        );
        let a = advantage(&forward, &spec_arc, AdvantageMode::Exact, &Caps::default()).unwrap();
        let b = advantage(&reversed, &spec_arc, AdvantageMode::Exact, &Caps::default()).unwrap();
        assert_eq!(a.exact.unwrap(), b.exact.unwrap());
    }

    #[test]
    fn cycle_consistency_acceptance_is_exactly_quarter_for_two_independent_cycles() {
        // Fix supports so the union has two independent doubled edges (c = 2
        // parity cycles), then enumerate all label assignments: the relation
        // system is satisfiable for exactly 2^{-c} of them.
        let spec = crate::game::maxcut_spec(2, rat(1, 1), 2).unwrap();
        let spec_arc = std::sync::Arc::new(spec);
        let proto = CycleConsistencyProtocol::new(std::sync::Arc::clone(&spec_arc), 24);
        let u = spec_arc.universe_of_player(0);
        let support = [
            (vec![u.part(0)[0], u.part(1)[0]], vec![0u8, 0u8]),
            (vec![u.part(0)[1], u.part(1)[1]], vec![0u8, 0u8]),
        ];
        let mut accepted = 0u32;
        let mut total = 0u32;
        // 4 label values per edge, 2 edges per player, 2 players: 4^4 combos.
        for labels in 0..256u32 {
            let mut fields = Vec::new();
            for p in 0..2 {
                let entries = support
                    .iter()
                    .enumerate()
                    .map(|(e_idx, (e, _))| {
                        let bits = labels >> (4 * p + 2 * e_idx);
                        (e.clone(), vec![(bits & 1) as u8, ((bits >> 1) & 1) as u8])
                    })
                    .collect();
                fields.push(LabeledMatching::new(entries).unwrap());
            }
            let joint = JointInput { inputs: fields };
            let (verdict, _) = run_protocol(&proto, &spec_arc, &joint).unwrap();
            accepted += verdict.accept as u32;
            total += 1;
        }
        assert_eq!(total, 256);
        assert_eq!(accepted, 64, "two independent parity cycles accept exactly 1/4");
    }

    #[test]
    fn cycle_consistency_rejects_half_of_no_inputs_on_duplicated_edge() {
        // K = 2 players on the same edge with n = 1: the union always has the
        // same grid edge twice, one independent cycle; the relation system is
        // satisfiable with probability exactly 1/2 under the uniform law.
        let spec_arc = std::sync::Arc::new(minimal_maxcut_spec(2));
        let proto = CycleConsistencyProtocol::new(std::sync::Arc::clone(&spec_arc), 24);
        let out = advantage(&proto, &spec_arc, AdvantageMode::Exact, &Caps::default()).unwrap();
        assert!((out.no_rate - 0.5).abs() < 1e-12);
        assert!((out.yes_rate - 1.0).abs() < 1e-12);
    }
}
