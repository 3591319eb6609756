//! The verification batteries behind `verify`: each suite runs a fixed set of
//! identity and bound checks and reports one verdict record per check. All
//! randomness is derived from the master seed, and records carry no
//! timestamps, so a suite run is byte-reproducible.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Caps;
use crate::csp::{FiniteDistribution, IndependenceOrder};
use crate::error::{Error, Result};
use crate::fourier;
use crate::game::{self, GameSpec};
use crate::matching::{
    enumerate_matchings, is_pseudo_uniform, EdgeTuple,
    KUniverse, LabeledMatching, LabeledSpace, VertexId,
};
use crate::ratio::{rat, rat_to_f64, rat_u128, Rat};
use crate::rectangle::combinatorics::{
    generate_hypergraphs, heavy_maps_weight_floor, no_singleton_bound_holds,
};
use crate::rectangle::density::{
    verify_spectrum_vanishing, verify_structured_bounded, DensityRegime,
};
use crate::rectangle::growth::{growth_experiment, GrowthConfig, Partitioner};
use crate::rectangle::identities::{
    random_global_subset, verify_relating_yes_no, verify_separation, verify_svd,
};
use crate::rectangle::structure::{
    contains_cycle_exhaustive, contains_cycle_peeling, Rectangle, RestrictionSeq,
};
use crate::rectangle::transfer::{check_transfer, SetFamily, TransferRoute};
use crate::report::{Manifest, VerdictRecord};

pub const SUITES: [&str; 5] = ["fourier", "kernels", "rectangles", "combinatorics", "all"];

/// Runs one suite (or all of them) and collects the manifest.
pub fn run_suite(name: &str, seed: u64, caps: &Caps) -> Result<Manifest> {
    let mut records = Vec::new();
    match name {
        "fourier" => fourier_suite(seed, caps, &mut records)?,
        "kernels" => kernels_suite(seed, caps, &mut records)?,
        "rectangles" => rectangles_suite(seed, caps, &mut records)?,
        "combinatorics" => combinatorics_suite(seed, caps, &mut records)?,
        "all" => {
            fourier_suite(seed, caps, &mut records)?;
            kernels_suite(seed, caps, &mut records)?;
            rectangles_suite(seed, caps, &mut records)?;
            combinatorics_suite(seed, caps, &mut records)?;
        }
        other => {
            return Err(Error::domain(format!(
                "unknown suite `{other}`; expected one of {SUITES:?}"
            )))
        }
    }
    // Test fixture: DIHP_LAB_FAULT=<lemma_id> forces that check to fail so the
    // harness's failure path (exit code 4, failing id surfaced) stays covered.
    if let Ok(fault) = std::env::var("DIHP_LAB_FAULT") {
        for r in records.iter_mut().filter(|r| r.lemma_id == fault) {
            r.status = crate::report::Status::Fail;
        }
    }
    Ok(Manifest::new(name, seed, records))
}

// ---------------------------------------------------------------------------
// Fourier suite
// ---------------------------------------------------------------------------

fn fourier_suite(seed: u64, _caps: &Caps, records: &mut Vec<VerdictRecord>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Transform identities on random functions.
    let mut worst_inv = 0.0f64;
    let mut worst_parseval = 0.0f64;
    for modulus in [2usize, 3, 4] {
        for _ in 0..20 {
            let f = fourier::random_real_function(modulus, (0..3).collect(), &mut rng);
            let spec = fourier::dft(&f);
            let back = fourier::idft(&spec);
            for (a, b) in f.values.iter().zip(&back.values) {
                worst_inv = worst_inv.max((a - b).norm());
            }
            let power = f.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / f.len() as f64;
            let coeff: f64 = spec.values.iter().map(|v| v.norm_sqr()).sum();
            worst_parseval = worst_parseval.max((power - coeff).abs());
        }
    }
    records.push(VerdictRecord::of_check(
        "dft_inversion",
        "random functions over Z_2,Z_3,Z_4 on 3 sites",
        worst_inv <= 1e-12,
        worst_inv,
        seed,
    ));
    records.push(VerdictRecord::of_check(
        "parseval",
        "random functions over Z_2,Z_3,Z_4 on 3 sites",
        worst_parseval <= 1e-12,
        worst_parseval,
        seed,
    ));

    // Wiener-norm submultiplicativity via the convolution theorem.
    let mut sub_ok = true;
    let mut worst_margin = f64::INFINITY;
    for _ in 0..50 {
        let f = fourier::random_real_function(2, (0..4).collect(), &mut rng);
        let g = fourier::random_real_function(2, (0..4).collect(), &mut rng);
        let product = fourier::DenseFunction {
            modulus: 2,
            sites: f.sites.clone(),
            values: f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect(),
        };
        let lhs = fourier::wiener_norm(&product);
        let rhs = fourier::wiener_norm(&f) * fourier::wiener_norm(&g);
        sub_ok &= lhs <= rhs + 1e-10;
        worst_margin = worst_margin.min(rhs - lhs);
    }
    records.push(VerdictRecord::of_check(
        "convolution_wiener_submultiplicative",
        "50 random pairs over Z_2^4",
        sub_ok,
        worst_margin,
        seed,
    ));

    // Hypercontractive inequality sweep: random real degree-≤2 functions
    // over Z_2^8 at q = 4.
    let mut hyper_violations = 0u64;
    let mut hyper_worst = f64::INFINITY;
    let hyper_trials = 10_000u64;
    for _ in 0..hyper_trials {
        let f = fourier::random_low_degree_function(2, (0..8).collect(), 2, &mut rng);
        let chk = fourier::check_hypercontractivity(&f, 4.0, 2)?;
        if !chk.holds {
            hyper_violations += 1;
        }
        hyper_worst = hyper_worst.min(chk.slack());
    }
    records.push(VerdictRecord::of_check(
        "hypercontractivity_q4_deg2",
        "10^4 random degree-≤2 real functions over Z_2^8",
        hyper_violations == 0,
        hyper_worst,
        seed,
    ));

    // Level-d inequality sweep on random nonnegative functions over Z_2^6.
    let mut level_checked = 0u64;
    let mut level_violations = 0u64;
    let mut level_worst = f64::INFINITY;
    for _ in 0..10_000u64 {
        let f = fourier::random_sparse_density(2, (0..6).collect(), &mut rng);
        for d in 1..=2usize {
            match fourier::check_level_d(&f, d)? {
                fourier::LevelDOutcome::Checked(chk) => {
                    level_checked += 1;
                    if !chk.holds {
                        level_violations += 1;
                    }
                    level_worst = level_worst.min(chk.slack());
                }
                fourier::LevelDOutcome::PreconditionFailed { .. } => {}
            }
        }
    }
    records.push(VerdictRecord::of_check(
        "level_d_density",
        "10^4 random densities over Z_2^6, levels 1-2",
        level_violations == 0 && level_checked > 0,
        level_worst,
        seed,
    ));

    // Scalar inequality sweeps.
    let binom = fourier::sweep_binomial_inequality(10_000, seed ^ 0x5eed);
    records.push(VerdictRecord::of_check(
        "scalar_binomial_bound",
        "10^4 random (x, ℓ) pairs",
        binom.pass(),
        binom.worst_margin,
        seed,
    ));
    let rearr = fourier::sweep_rearrangement_inequality(10_000, seed ^ 0xface);
    records.push(VerdictRecord::of_check(
        "scalar_rearrangement_bound",
        "10^4 random (a,b,c,d) tuples",
        rearr.pass(),
        rearr.worst_margin,
        seed,
    ));

    // Growth budget: monotonicity in n and s*, and branch-point agreement.
    let mut monotone = true;
    for d in 1..=8usize {
        let mut prev = 0.0;
        for n in [16.0, 32.0, 64.0, 128.0] {
            let p = fourier::GrowthParams::new(n, 2.0, 4.0, 0.0)?;
            let v = fourier::growth_bound(&p, d)?;
            monotone &= v >= prev - 1e-12;
            prev = v;
        }
        let mut prev = 0.0;
        for s in [1.0, 2.0, 4.0, 8.0, 16.0] {
            let p = fourier::GrowthParams::new(128.0, 2.0, s, 0.0)?;
            let v = fourier::growth_bound(&p, d)?;
            monotone &= v >= prev - 1e-12;
            prev = v;
        }
    }
    records.push(VerdictRecord::of_check(
        "growth_budget_monotone",
        "grid d ≤ 8, n ≤ 128, s* ≤ 16",
        monotone,
        0.0,
        seed,
    ));
    let p = fourier::GrowthParams::new(100.0, 2.0, 6.0, 0.0)?;
    let at_branch = fourier::growth_bound(&p, 6)?;
    let low = (p.c * (p.s_star * p.n).sqrt() / 6.0).powf(3.0);
    let high = (p.c * p.c * p.n / 6.0).powf(1.5);
    let branch_err = ((at_branch - low).abs() / low).max((at_branch - high).abs() / high);
    records.push(VerdictRecord::of_check(
        "growth_budget_branch_agreement",
        "branch point d = s* = 6",
        branch_err <= 1e-9,
        branch_err,
        seed,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// Kernels suite
// ---------------------------------------------------------------------------

fn tiny_spaces(caps: &Caps) -> Result<Vec<(LabeledSpace, FiniteDistribution)>> {
    let swap2 = FiniteDistribution::uniform_on(
        2,
        2,
        &[crate::csp::pack_tuple(&[0, 1], 2), crate::csp::pack_tuple(&[1, 0], 2)],
    )?;
    let cyc3 = FiniteDistribution::uniform_on(
        3,
        2,
        &(0..3)
            .map(|a| crate::csp::pack_tuple(&[a, (a + 1) % 3], 3))
            .collect::<Vec<_>>(),
    )?;
    Ok(vec![
        (
            LabeledSpace::build(KUniverse::new(vec![vec![0, 1], vec![2, 3]])?, 1, 2, caps)?,
            swap2.clone(),
        ),
        (
            LabeledSpace::build(KUniverse::new(vec![vec![0, 1], vec![2, 3]])?, 2, 2, caps)?,
            swap2,
        ),
        (
            LabeledSpace::build(KUniverse::new(vec![vec![0, 1], vec![2, 3]])?, 1, 3, caps)?,
            cyc3,
        ),
    ])
}

fn kernels_suite(seed: u64, caps: &Caps, records: &mut Vec<VerdictRecord>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));

    for (space_idx, (space, mu)) in tiny_spaces(caps)?.into_iter().enumerate() {
        let tag = format!("space {space_idx}: |U|={} k={} m={} N={}", space.universe.size(), space.k(), space.m, space.modulus);
        let window = space.universe.union_vertices();

        // Row stochasticity, exact.
        let mut stochastic = true;
        let mut x = vec![0u8; window.len()];
        loop {
            let mut total = Rat::zero();
            for y in space.iter_indices() {
                let mass = game::kernels::kernel_p_mass(
                    &space.universe,
                    space.m,
                    &mu,
                    &window,
                    &x,
                    &space.decode(y),
                )?;
                if mass < Rat::zero() {
                    stochastic = false;
                }
                total += mass;
            }
            stochastic &= total.is_one();
            if !game::kernels::advance_point(&mut x, space.modulus) {
                break;
            }
        }
        records.push(VerdictRecord::of_check(
            "kernel_row_stochastic",
            &tag,
            stochastic,
            0.0,
            seed,
        ));

        // Density preservation and sup-norm contraction on random rational
        // functions.
        let size = space.size() as usize;
        let mut preserved = true;
        let mut contracted = true;
        for _ in 0..100 {
            let raw: Vec<Rat> = (0..size).map(|_| rat(rng.gen_range(0..40), 1)).collect();
            let mean: Rat = raw.iter().sum::<Rat>() / rat_u128(size as u128);
            if mean.is_zero() {
                continue;
            }
            let density: Vec<Rat> = raw.iter().map(|v| v / &mean).collect();
            let (_, image) = game::kernels::apply_p(&space, &mu, &density, caps)?;
            let image_mean: Rat = image.iter().sum::<Rat>() / rat_u128(image.len() as u128);
            preserved &= image_mean.is_one();

            let signed: Vec<Rat> = (0..size).map(|_| rat(rng.gen_range(-30..30), 7)).collect();
            let sup = signed.iter().map(rat_abs).max().unwrap();
            let (_, image) = game::kernels::apply_p(&space, &mu, &signed, caps)?;
            let image_sup = image.iter().map(rat_abs).max().unwrap();
            contracted &= image_sup <= sup;
        }
        records.push(VerdictRecord::of_check("kernel_density_preserving", &tag, preserved, 0.0, seed));
        records.push(VerdictRecord::of_check("kernel_sup_contraction", &tag, contracted, 0.0, seed));

        // The fixed-matching kernel on the first enumerated matching.
        let matching = space.matchings[0].clone();
        let labelings = space.modulus.pow((space.k() * space.m) as u32);
        let mut r_stochastic = true;
        let mut x = vec![0u8; window.len()];
        loop {
            let mut total = Rat::zero();
            for idx in 0..labelings {
                let xi = game::kernels::decode_labeling(&matching, idx, space.modulus, space.k());
                total += game::kernels::kernel_r_mass(&matching, &mu, &window, &x, &xi)?;
            }
            r_stochastic &= total.is_one();
            if !game::kernels::advance_point(&mut x, space.modulus) {
                break;
            }
        }
        records.push(VerdictRecord::of_check(
            "fixed_matching_kernel_row_stochastic",
            &tag,
            r_stochastic,
            0.0,
            seed,
        ));

        let mut r_preserved = true;
        let mut r_contracted = true;
        for _ in 0..100 {
            let raw: Vec<Rat> = (0..labelings).map(|_| rat(rng.gen_range(0..40), 1)).collect();
            let mean: Rat = raw.iter().sum::<Rat>() / rat_u128(labelings as u128);
            if mean.is_zero() {
                continue;
            }
            let density: Vec<Rat> = raw.iter().map(|v| v / &mean).collect();
            let image = game::kernels::apply_r(&matching, &mu, &window, &density, caps)?;
            let image_mean: Rat = image.iter().sum::<Rat>() / rat_u128(image.len() as u128);
            r_preserved &= image_mean.is_one();

            let signed: Vec<Rat> = (0..labelings).map(|_| rat(rng.gen_range(-30..30), 5)).collect();
            let sup = signed.iter().map(rat_abs).max().unwrap();
            let image = game::kernels::apply_r(&matching, &mu, &window, &signed, caps)?;
            let image_sup = image.iter().map(rat_abs).max().unwrap();
            r_contracted &= image_sup <= sup;
        }
        records.push(VerdictRecord::of_check(
            "fixed_matching_kernel_density_preserving",
            &tag,
            r_preserved,
            0.0,
            seed,
        ));
        records.push(VerdictRecord::of_check(
            "fixed_matching_kernel_sup_contraction",
            &tag,
            r_contracted,
            0.0,
            seed,
        ));
    }
    Ok(())
}

fn rat_abs(r: &Rat) -> Rat {
    if r < &Rat::zero() {
        -r.clone()
    } else {
        r.clone()
    }
}

// ---------------------------------------------------------------------------
// Rectangles suite
// ---------------------------------------------------------------------------

fn rectangles_suite(seed: u64, caps: &Caps, records: &mut Vec<VerdictRecord>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));

    // Relating the two laws on the minimal game: full space plus 100 random
    // sub-rectangles, residual must be exactly zero.
    let spec = game::minimal_maxcut_spec(2);
    let spaces = spec.player_spaces(caps)?;
    let mut worst: Rat = Rat::zero();
    let full_residual = verify_relating_yes_no(&spec, &Rectangle::full(&spaces), caps)?;
    if full_residual > worst {
        worst = full_residual.clone();
    }
    for _ in 0..100 {
        let per_player: Vec<Vec<u64>> = spaces
            .iter()
            .map(|s| loop {
                let a: Vec<u64> = s.iter_indices().filter(|_| rng.gen_bool(0.6)).collect();
                if !a.is_empty() {
                    break a;
                }
            })
            .collect();
        let residual = verify_relating_yes_no(&spec, &Rectangle { per_player }, caps)?;
        if residual > worst {
            worst = residual;
        }
    }
    records.push(VerdictRecord::of_check(
        "relating_yes_no_identity",
        "minimal game, full space and 100 random sub-rectangles",
        worst.is_zero(),
        rat_to_f64(&worst),
        seed,
    ));

    // Structured/pseudorandom separation, exact, on restricted global sets.
    let sep_spec = game::maxcut_spec(2, rat(1, 2), 1)?;
    let sep_space = &sep_spec.player_spaces(caps)?[0];
    let universe = sep_spec.universe_of_player(0);
    let mut worst: Rat = Rat::zero();
    for trial in 0..100 {
        let z = if trial % 3 == 0 {
            LabeledMatching::empty()
        } else {
            // A random single labeled edge.
            let e = vec![
                universe.part(0)[rng.gen_range(0..2)],
                universe.part(1)[rng.gen_range(0..2)],
            ];
            LabeledMatching::new(vec![(e, vec![rng.gen_range(0..2), rng.gen_range(0..2)])])?
        };
        let a = random_global_subset(sep_space, &z, &mut rng, caps)?;
        let residual = verify_separation(&sep_spec, 0, &z, &a, sep_space, caps)?;
        if residual > worst {
            worst = residual;
        }
    }
    records.push(VerdictRecord::of_check(
        "separation_identity",
        "two-cloud game, 100 random global instantiations",
        worst.is_zero(),
        rat_to_f64(&worst),
        seed,
    ));

    // Spectral transfer of the fixed-matching kernel on random functions.
    let mut svd_ok = true;
    let mut svd_worst = 0.0f64;
    for trial in 0..100 {
        let (u, matching, mu): (KUniverse, Vec<EdgeTuple>, FiniteDistribution) = if trial % 2 == 0 {
            let u = KUniverse::new(vec![vec![0, 1], vec![2, 3]])?;
            let m: Vec<EdgeTuple> = vec![vec![0, 2], vec![1, 3]];
            let mu = FiniteDistribution::uniform_on(
                2,
                2,
                &[crate::csp::pack_tuple(&[0, 1], 2), crate::csp::pack_tuple(&[1, 0], 2)],
            )?;
            (u, m, mu)
        } else {
            let u = KUniverse::new(vec![vec![0], vec![1]])?;
            let m: Vec<EdgeTuple> = vec![vec![0, 1]];
            let mu = FiniteDistribution::uniform_on(
                3,
                2,
                &(0..3)
                    .map(|a| crate::csp::pack_tuple(&[a, (2 * a) % 3], 3))
                    .collect::<Vec<_>>(),
            )?;
            (u, m, mu)
        };
        let window = u.union_vertices();
        let size = mu.base.pow((mu.arity * matching.len()) as u32);
        let f: Vec<Complex64> = (0..size)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let report = verify_svd(&u, &matching, &mu, &f, &window, caps)?;
        svd_ok &= report.pass();
        svd_worst = svd_worst
            .max(report.max_off_support)
            .max(report.max_bound_excess)
            .max(report.max_equation_residual);
    }
    records.push(VerdictRecord::of_check(
        "spectral_transfer_fixed_matching",
        "100 random functions over Z_2 and Z_3 kernels",
        svd_ok,
        svd_worst,
        seed,
    ));

    // Spectrum support law: every restriction sequence of four small games.
    let mut grids: Vec<GameSpec> = vec![
        game::maxcut_spec(4, rat(1, 4), 2)?,
        game::maxcut_spec(5, rat(1, 5), 2)?,
        game::maxcut_spec(3, rat(1, 3), 3)?,
    ];
    {
        let inst = crate::csp::gallery::e3lin_contradiction();
        let sol = crate::lp::canonical_value1_solution(&inst, IndependenceOrder::Two)?
            .ok_or_else(|| Error::structural("two-wise support exists"))?;
        let graph = crate::blowup::reduce_to_graph(&inst, &sol)?;
        // Single-edge sub-graph keeps |V|·n ≤ 10.
        let single = crate::blowup::DistLabeledGraph::new(
            graph.vertex_names.clone(),
            vec![graph.edges[0].clone()],
            graph.modulus,
            vec![graph.edge_dists[0].clone()],
        )?;
        grids.push(GameSpec::new(single, 3, rat(1, 3), 1)?);
    }
    let mut zeta_count = 0usize;
    let mut spectrum_ok = true;
    let mut spectrum_worst = 0.0f64;
    let mut mean_worst = 0.0f64;
    for g in &grids {
        let player_options: Vec<Vec<LabeledMatching>> = (0..g.num_players())
            .map(|p| {
                let mut opts = vec![LabeledMatching::empty()];
                let u = g.universe_of_player(p);
                let mut partner_tuples: Vec<Vec<VertexId>> = vec![Vec::new()];
                for i in 1..u.k() {
                    let mut next = Vec::new();
                    for t in &partner_tuples {
                        for &v in u.part(i) {
                            let mut t2 = t.clone();
                            t2.push(v);
                            next.push(t2);
                        }
                    }
                    partner_tuples = next;
                }
                for &v0 in u.part(0) {
                    for t in &partner_tuples {
                        let mut e = vec![v0];
                        e.extend_from_slice(t);
                        let mut lab = vec![0u8; u.k()];
                        loop {
                            opts.push(
                                LabeledMatching::new(vec![(e.clone(), lab.clone())]).expect("edge"),
                            );
                            if !game::kernels::advance_point(&mut lab, g.frame.graph.modulus) {
                                break;
                            }
                        }
                    }
                }
                opts
            })
            .collect();
        let mut pick = vec![0usize; g.num_players()];
        loop {
            let zeta = RestrictionSeq {
                per_player: pick
                    .iter()
                    .enumerate()
                    .map(|(p, &i)| player_options[p][i].clone())
                    .collect(),
            };
            if !zeta.is_cyclic(g.frame.graph.arity()) {
                let report = verify_spectrum_vanishing(g, &zeta, caps)?;
                zeta_count += 1;
                spectrum_ok &= report.pass();
                spectrum_worst = spectrum_worst.max(report.max_forbidden_magnitude);
                mean_worst = mean_worst.max(report.mean_error);
            }
            let mut pos = 0;
            loop {
                if pos == pick.len() {
                    break;
                }
                pick[pos] += 1;
                if pick[pos] < player_options[pos].len() {
                    break;
                }
                pick[pos] = 0;
                pos += 1;
            }
            if pos == pick.len() {
                break;
            }
        }
    }
    records.push(VerdictRecord::of_check(
        "structured_spectrum_support",
        &format!("{zeta_count} acyclic sequences over 4 small grids"),
        spectrum_ok && zeta_count > 1000,
        spectrum_worst.max(mean_worst),
        seed,
    ));

    // Edge-sum inequality for acyclic sequences: Σ_p k·|supp(z_p)| ≤ ‖ζ‖.
    let mut edge_sum_ok = true;
    {
        let g = game::maxcut_spec(4, rat(1, 4), 2)?;
        let u = g.universe_of_player(0);
        for _ in 0..500 {
            let mut per_player = Vec::new();
            for _ in 0..g.num_players() {
                if rng.gen_bool(0.5) {
                    per_player.push(LabeledMatching::empty());
                } else {
                    let e = vec![
                        u.part(0)[rng.gen_range(0..4)],
                        u.part(1)[rng.gen_range(0..4)],
                    ];
                    per_player
                        .push(LabeledMatching::new(vec![(e, vec![rng.gen_range(0..2), rng.gen_range(0..2)])])?);
                }
            }
            let zeta = RestrictionSeq { per_player };
            if zeta.is_cyclic(2) {
                continue;
            }
            let lhs = 2 * zeta.total_support() as u64;
            edge_sum_ok &= lhs <= zeta.weight();
        }
    }
    records.push(VerdictRecord::of_check(
        "edge_sum_weight_inequality",
        "500 random acyclic sequences on the n=4 grid",
        edge_sum_ok,
        0.0,
        seed,
    ));

    // Boundedness certificates over a corpus of restriction sequences at
    // n = 64, γ = 1/4.
    let gamma = 0.25;
    let spec64 = game::maxcut_spec(64, rat(1, 8), 2)?;
    let corpus = one_wise_zeta_corpus(&spec64)?;
    let mut onewise_ok = true;
    let mut onewise_worst = f64::INFINITY;
    for zeta in &corpus {
        let report = verify_structured_bounded(&spec64, zeta, gamma, DensityRegime::OneWise, caps)?;
        onewise_ok &= report.pass();
        onewise_worst = onewise_worst.min(report.report.min_level_slack());
    }
    records.push(VerdictRecord::of_check(
        "structured_density_bounded_onewise",
        &format!("{} sequences, n=64, γ=1/4", corpus.len()),
        onewise_ok,
        onewise_worst,
        seed,
    ));

    // The per-level clause of the certificate ranges over 1 ≤ d ≤ C^{-2}·n
    // with C = 20N², so levels only appear once n ≥ 6400; re-certify at
    // n = 25600 (levels 1..4 checked) on the exposed-edge window.
    {
        let spec_big = game::maxcut_spec(25_600, rat(1, 8), 2)?;
        let corpus_big = one_wise_zeta_corpus(&spec_big)?;
        let mut ok = true;
        let mut levels_seen = 0usize;
        let mut worst = f64::INFINITY;
        for zeta in &corpus_big {
            let report =
                verify_structured_bounded(&spec_big, zeta, 0.25, DensityRegime::OneWise, caps)?;
            ok &= report.pass();
            levels_seen = levels_seen.max(report.report.levels.len());
            worst = worst.min(report.report.min_level_slack());
        }
        records.push(VerdictRecord::of_check(
            "structured_density_bounded_levels",
            &format!("{} sequences, n=25600, {levels_seen} levels checked", corpus_big.len()),
            ok && levels_seen >= 4,
            worst,
            seed,
        ));
    }

    let inst = crate::csp::gallery::e3lin_contradiction();
    let sol = crate::lp::canonical_value1_solution(&inst, IndependenceOrder::Two)?
        .ok_or_else(|| Error::structural("two-wise support exists"))?;
    let graph = crate::blowup::reduce_to_graph(&inst, &sol)?;
    let spec3 = GameSpec::new(graph, 64, rat(1, 8), 1)?;
    let corpus3 = two_wise_zeta_corpus(&spec3)?;
    let mut twowise_ok = true;
    for zeta in &corpus3 {
        let report = verify_structured_bounded(&spec3, zeta, gamma, DensityRegime::TwoWise, caps)?;
        twowise_ok &= report.pass();
    }
    records.push(VerdictRecord::of_check(
        "structured_density_bounded_twowise",
        &format!("{} sequences, k=3, n=64, γ=1/4", corpus3.len()),
        twowise_ok,
        0.0,
        seed,
    ));

    // Growth trajectories: per-state envelopes along sampled rounds. The
    // small game exercises trajectories and skips; the envelope hypotheses
    // (`‖ζ‖ ≤ 6^-(k+1)·n`) only bite at a large blow-up, so the second run is
    // where the weight and cyclicity envelopes are non-vacuous.
    let growth_spec = game::maxcut_spec(32, rat(1, 8), 2)?;
    let report = growth_experiment(
        &growth_spec,
        &GrowthConfig {
            rounds: 6,
            trials: 50,
            seed: seed.wrapping_add(3),
            partitioner_cycle: vec![Partitioner::EdgeExposure, Partitioner::LabelSumReveal],
        },
    )?;
    records.push(VerdictRecord::of_check(
        "growth_envelopes",
        "50 trajectories of 6 rounds on the n=32 game",
        report.pass(),
        report.mean_final_weight,
        seed,
    ));
    let big_spec = game::maxcut_spec(4096, rat(1, 8), 2)?;
    let big_report = growth_experiment(
        &big_spec,
        &GrowthConfig {
            rounds: 4,
            trials: 6,
            seed: seed.wrapping_add(4),
            partitioner_cycle: vec![Partitioner::EdgeExposure],
        },
    )?;
    records.push(VerdictRecord::of_check(
        "growth_envelopes_in_hypothesis",
        "6 trajectories of 4 rounds on the n=4096 game",
        big_report.pass() && big_report.in_hypothesis_rounds >= 20,
        big_report.mean_final_weight,
        seed,
    ));

    // Uniform joint inputs on a two-wise k = 3 game are locally almost
    // acyclic: the union-bound route produces a δ so small that ⌊δn⌋ vanishes
    // at this scale (making that exact clause vacuous), so the sampled check
    // additionally runs at locality 5.
    {
        let inst = crate::csp::gallery::e3lin_contradiction();
        let sol = crate::lp::canonical_value1_solution(&inst, IndependenceOrder::Two)?
            .ok_or_else(|| Error::structural("two-wise support exists"))?;
        let graph = crate::blowup::reduce_to_graph(&inst, &sol)?;
        let spec = GameSpec::new(graph, 64, rat(1, 8), 1)?;
        let k = spec.frame.graph.arity() as f64;
        let p = 1.0 / (k - 1.1);
        let players = spec.num_players() as f64;
        let c1 = (3.0 * players / p).powf(p);
        let c2 = 3.0 * c1 * spec.frame.graph.num_vertices() as f64;
        // Largest δ with c2·δ^((k-1)p-1) ≤ 1/2.
        let delta = (1.0 / (2.0 * c2)).powf(1.0 / ((k - 1.0) * p - 1.0)).min(1.0);
        let route_locality = (delta * spec.frame.n as f64).floor() as usize;
        let desk_locality = 5usize;
        let trials = 200u64;
        let mut hits_route = 0u64;
        let mut hits_desk = 0u64;
        for trial in 0..trials {
            let mut rng2 = ChaCha8Rng::seed_from_u64(seed.wrapping_add(5));
            rng2.set_stream(trial);
            let joint = game::sample_no(&spec, &mut rng2);
            let mut edges: Vec<EdgeTuple> = joint
                .inputs
                .iter()
                .flat_map(|y| y.support())
                .collect();
            edges.sort();
            let distinct_before = edges.len();
            edges.dedup();
            let disjoint = edges.len() == distinct_before;
            // Subset scans are exponential in the edge count; scan subsets of
            // edges inside small neighborhoods instead of all 16 edges: with
            // locality ≤ 5 a violating subset has ≤ 5 edges, which must be
            // pairwise connected through shared vertices, so scanning
            // connected clusters is exhaustive for the clause.
            let route_ok = disjoint && locally_almost_acyclic_clustered(&edges, 3, route_locality);
            let desk_ok = disjoint && locally_almost_acyclic_clustered(&edges, 3, desk_locality);
            hits_route += u64::from(route_ok);
            hits_desk += u64::from(desk_ok);
        }
        let route_freq = hits_route as f64 / trials as f64;
        let desk_freq = hits_desk as f64 / trials as f64;
        records.push(VerdictRecord::of_check(
            "uniform_inputs_locally_almost_acyclic",
            &format!(
                "200 uniform inputs, route locality {route_locality} (δ={delta:.2e}), desk locality {desk_locality}"
            ),
            route_freq >= 0.95 && desk_freq >= 0.95,
            desk_freq,
            seed,
        ));
    }
    Ok(())
}

/// Almost-acyclicity restricted to subsets of at most `locality` edges,
/// decided by scanning connected clusters: any violating subset may be shrunk
/// to a connected violating subset of the same size or less, because removing
/// an edge that is disconnected from the rest of a subset only tightens the
/// vertex-count ratio.
fn locally_almost_acyclic_clustered(edges: &[EdgeTuple], k: usize, locality: usize) -> bool {
    if locality == 0 {
        return true;
    }
    // Group edges into connected components, then run the exhaustive scan per
    // component (components here stay small for uniform matchings).
    let comps = crate::rectangle::structure::hypergraph_components(edges);
    for comp in comps {
        let cluster: Vec<EdgeTuple> = edges
            .iter()
            .filter(|e| comp.binary_search(&e[0]).is_ok())
            .cloned()
            .collect();
        if cluster.len() > 20 {
            // A cluster this large under a uniform matching law already
            // signals density; treat it as a failure rather than scanning.
            return false;
        }
        if !crate::rectangle::structure::is_locally_almost_acyclic(&cluster, k, locality) {
            return false;
        }
    }
    true
}

/// Acyclic restriction sequences with weight ≤ 16 on the n = 64 max-cut game.
fn one_wise_zeta_corpus(spec: &GameSpec) -> Result<Vec<RestrictionSeq>> {
    let u = spec.universe_of_player(0);
    let p0 = u.part(0);
    let p1 = u.part(1);
    let edge = |a: usize, b: usize, l0: u8, l1: u8| -> Result<LabeledMatching> {
        LabeledMatching::new(vec![(vec![p0[a], p1[b]], vec![l0, l1])])
    };
    let two_edges = |a: usize, b: usize, c: usize, d: usize| -> Result<LabeledMatching> {
        LabeledMatching::new(vec![
            (vec![p0[a], p1[b]], vec![0, 1]),
            (vec![p0[c], p1[d]], vec![1, 1]),
        ])
    };
    let empty = LabeledMatching::empty();
    Ok(vec![
        RestrictionSeq::empty(spec.num_players()),
        // single edge: weight 4
        RestrictionSeq { per_player: vec![edge(0, 0, 0, 1)?, empty.clone()] },
        // two disjoint edges, one player: weight 8
        RestrictionSeq { per_player: vec![two_edges(0, 0, 1, 1)?, empty.clone()] },
        // path across players: weight 9
        RestrictionSeq { per_player: vec![edge(0, 0, 0, 1)?, edge(1, 0, 1, 0)?] },
        // two disjoint edges across players: weight 8
        RestrictionSeq { per_player: vec![edge(0, 0, 1, 1)?, edge(2, 2, 0, 0)?] },
        // three-edge star through one cloud vertex: weight 16
        RestrictionSeq {
            per_player: vec![
                two_edges(0, 0, 1, 1)?,
                LabeledMatching::new(vec![(vec![p0[2], p1[0]], vec![1, 0])])?,
            ],
        },
    ])
}

/// Almost-acyclic sequences with few edges on the k = 3 game.
fn two_wise_zeta_corpus(spec: &GameSpec) -> Result<Vec<RestrictionSeq>> {
    let u0 = spec.universe_of_player(0);
    let u1 = spec.universe_of_player(1);
    let empty = LabeledMatching::empty();
    let e = |u: &KUniverse, a: usize, b: usize, c: usize, lab: [u8; 3]| -> Result<LabeledMatching> {
        LabeledMatching::new(vec![(vec![u.part(0)[a], u.part(1)[b], u.part(2)[c]], lab.to_vec())])
    };
    Ok(vec![
        RestrictionSeq::empty(spec.num_players()),
        RestrictionSeq { per_player: vec![e(&u0, 0, 0, 0, [1, 0, 1])?, empty.clone()] },
        RestrictionSeq { per_player: vec![e(&u0, 0, 0, 0, [1, 1, 0])?, e(&u1, 1, 1, 1, [0, 1, 1])?] },
        RestrictionSeq {
            per_player: vec![
                LabeledMatching::new(vec![
                    (vec![u0.part(0)[0], u0.part(1)[0], u0.part(2)[0]], vec![0, 0, 1]),
                    (vec![u0.part(0)[1], u0.part(1)[1], u0.part(2)[1]], vec![1, 0, 0]),
                ])?,
                e(&u1, 2, 0, 2, [1, 1, 1])?,
            ],
        },
    ])
}

// ---------------------------------------------------------------------------
// Combinatorics suite
// ---------------------------------------------------------------------------

fn combinatorics_suite(seed: u64, caps: &Caps, records: &mut Vec<VerdictRecord>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));

    // Singleton-free subset counting against its ceiling, exhaustive over
    // component-size families.
    let mut count_ok = true;
    let mut families = 0usize;
    for sizes in [
        vec![2],
        vec![3],
        vec![4],
        vec![2, 2],
        vec![3, 2],
        vec![4, 2],
        vec![3, 3],
        vec![2, 2, 2],
        vec![3, 3, 2],
        vec![4, 3, 2],
        vec![5, 4],
        vec![2, 2, 2, 2],
    ] {
        let total: usize = sizes.iter().sum();
        for ell in 2..=total {
            let (_, ok) = no_singleton_bound_holds(&sizes, ell)?;
            count_ok &= ok;
            families += 1;
        }
    }
    records.push(VerdictRecord::of_check(
        "singleton_free_count_bound",
        &format!("{families} (sizes, ℓ) families"),
        count_ok,
        0.0,
        seed,
    ));

    // Heavy index maps: weight floor over the exhaustive almost-acyclic k = 3
    // family with ≤ 4 edges, N = 2, at most 9 vertices.
    let mut floor_ok = true;
    let mut graphs_checked = 0usize;
    for g in generate_hypergraphs(3, 4) {
        let verts: std::collections::BTreeSet<VertexId> = g.iter().flatten().copied().collect();
        if verts.len() > 9 {
            continue;
        }
        if !crate::rectangle::structure::is_locally_almost_acyclic(&g, 3, g.len()) {
            continue;
        }
        let report = heavy_maps_weight_floor(&g, 2)?;
        floor_ok &= report.pass();
        graphs_checked += 1;
    }
    records.push(VerdictRecord::of_check(
        "heavy_map_weight_floor",
        &format!("{graphs_checked} almost-acyclic k=3 graphs, ≤4 edges, ≤9 vertices"),
        floor_ok && graphs_checked > 100,
        graphs_checked as f64,
        seed,
    ));

    // Cyclicity decision: peeling equals the exhaustive subset oracle. Three
    // exhaustive families: every ≤4-edge graph over a 9-vertex pool (k = 2),
    // every ≤3-edge k = 3 graph over an 8-vertex pool, and the canonical
    // contiguous-label generations with ≤ 5 edges for both arities (which
    // reach shapes needing more vertices than the pools).
    let mut oracle_ok = true;
    let mut oracle_graphs = 0usize;
    for g in edge_subsets_over_pool(2, 9, 4) {
        oracle_ok &= contains_cycle_peeling(&g, 2) == contains_cycle_exhaustive(&g, 2);
        oracle_graphs += 1;
    }
    for g in edge_subsets_over_pool(3, 8, 3) {
        oracle_ok &= contains_cycle_peeling(&g, 3) == contains_cycle_exhaustive(&g, 3);
        oracle_graphs += 1;
    }
    for k in [2usize, 3] {
        for g in generate_hypergraphs(k, 5) {
            oracle_ok &= contains_cycle_peeling(&g, k) == contains_cycle_exhaustive(&g, k);
            oracle_graphs += 1;
        }
    }
    records.push(VerdictRecord::of_check(
        "cyclicity_peeling_oracle",
        &format!("{oracle_graphs} exhaustively generated hypergraphs, k ∈ {{2,3}}"),
        oracle_ok && oracle_graphs >= 10_000,
        oracle_graphs as f64,
        seed,
    ));

    // Containment probabilities from enumerated global sets (|U| ≤ 3, k = 2):
    // Pr[S ⊆ supp(y)] ≤ (6^k·m/|U|^k)^{|S|-|supp z|}.
    let mut containment_ok = true;
    let mut containment_checked = 0usize;
    {
        let u = KUniverse::new(vec![vec![0, 1, 2], vec![3, 4, 5]])?;
        let space = LabeledSpace::build(u, 2, 2, caps)?;
        let usize_u = space.universe.size();
        for trial in 0..12 {
            let z = if trial % 2 == 0 {
                LabeledMatching::empty()
            } else {
                LabeledMatching::new(vec![(vec![0, 3], vec![1, 0])])?
            };
            if z.len() > space.m.min(usize_u / 2) {
                continue;
            }
            let a = random_global_subset(&space, &z, &mut rng, caps)?;
            let decoded: Vec<LabeledMatching> = a.iter().map(|&i| space.decode(i)).collect();
            for d in z.len()..=space.m {
                for s in enumerate_matchings(&space.universe, d, caps)? {
                    // Only S ⊇ supp(z) qualify.
                    if !z.support().iter().all(|e| s.contains(e)) {
                        continue;
                    }
                    let hits = decoded
                        .iter()
                        .filter(|y| s.iter().all(|e| y.support().contains(e)))
                        .count();
                    let prob = hits as f64 / a.len() as f64;
                    let exponent = (s.len() - z.len()) as i32;
                    let bound = (36.0 * space.m as f64 / (usize_u * usize_u) as f64).powi(exponent);
                    containment_ok &= prob <= bound + 1e-12;
                    containment_checked += 1;
                }
            }
        }
    }
    records.push(VerdictRecord::of_check(
        "global_set_containment_bound",
        &format!("{containment_checked} (A, S) pairs on the 3×3 universe"),
        containment_ok && containment_checked > 50,
        0.0,
        seed,
    ));

    // Support law of a uniformly sampled global set is pseudo-uniform.
    let mut pseudo_ok = true;
    {
        let u = KUniverse::new(vec![vec![0, 1], vec![2, 3]])?;
        let space = LabeledSpace::build(u, 1, 2, caps)?;
        for _ in 0..10 {
            let a = random_global_subset(&space, &LabeledMatching::empty(), &mut rng, caps)?;
            let mut mass = vec![Rat::zero(); space.matchings.len()];
            let per = Rat::one() / rat_u128(a.len() as u128);
            for &i in &a {
                let support = space.decode(i).support();
                let mi = space.matchings.iter().position(|m| *m == support).unwrap();
                mass[mi] += per.clone();
            }
            pseudo_ok &= is_pseudo_uniform(&space.universe, 1, &space.matchings, &mass, caps)?;
        }
    }
    records.push(VerdictRecord::of_check(
        "global_support_pseudo_uniform",
        "10 random global sets on the 2×2 universe",
        pseudo_ok,
        0.0,
        seed,
    ));

    // Internal/boundary probability ceilings, Monte Carlo with a 3σ margin.
    let mut q_ok = true;
    let mut q_checked = 0usize;
    for &(usz, m, t) in &[
        (8usize, 2usize, 1usize),
        (8, 2, 2),
        (8, 2, 3),
        (10, 2, 2),
        (12, 3, 2),
        (12, 3, 3),
        (16, 4, 2),
        (16, 4, 3),
    ] {
        let u = KUniverse::new(vec![
            (0..usz as VertexId).collect(),
            (usz as VertexId..2 * usz as VertexId).collect(),
        ])?;
        let z_support: Vec<VertexId> = (0..t as VertexId).collect();
        for i in 0..=t {
            for b in 0..=(t - i) {
                let est = crate::matching::estimate_q(&u, m, &z_support, i, b, 20_000, seed ^ x_seed(i, b, usz));
                q_ok &= est.within_bound;
                q_checked += 1;
            }
        }
    }
    records.push(VerdictRecord::of_check(
        "internal_boundary_probability_bound",
        &format!("{q_checked} (i,b) cells over 4 geometries, 2·10^4 trials each"),
        q_ok && q_checked >= 20,
        q_checked as f64,
        seed,
    ));

    // Fourier-mass transfer ceilings across the three routes, exact
    // enumeration over a seeded grid of instantiations chosen inside the route
    // hypotheses. The low route needs |U|² ≥ 64·m·√(m·s*), the intermediate
    // route |U| ≥ 6km; both push the universe larger than the zero route's.
    let mut transfer_checked = 0usize;
    let mut transfer_skipped = 0usize;
    let mut transfer_ok = true;
    let mut zero_seen = false;
    let mut low_seen = false;
    let mut mid_seen = false;
    struct TransferCell {
        u: usize,
        m: usize,
        s_star: f64,
        t: usize,
        ells: Vec<usize>,
    }
    let cells = [
        TransferCell { u: 4, m: 1, s_star: 2.0, t: 0, ells: vec![0] },
        TransferCell { u: 4, m: 2, s_star: 2.0, t: 1, ells: vec![0] },
        TransferCell { u: 6, m: 2, s_star: 3.0, t: 2, ells: vec![0] },
        TransferCell { u: 8, m: 2, s_star: 3.0, t: 1, ells: vec![0] },
        TransferCell { u: 6, m: 1, s_star: 4.0, t: 3, ells: vec![0] },
        TransferCell { u: 10, m: 1, s_star: 2.0, t: 0, ells: vec![1, 2] },
        TransferCell { u: 10, m: 1, s_star: 2.0, t: 1, ells: vec![1, 2] },
        TransferCell { u: 10, m: 1, s_star: 2.0, t: 2, ells: vec![1, 2] },
        TransferCell { u: 10, m: 1, s_star: 2.0, t: 3, ells: vec![1, 2] },
        TransferCell { u: 16, m: 2, s_star: 2.0, t: 0, ells: vec![1, 2] },
        TransferCell { u: 16, m: 2, s_star: 2.0, t: 2, ells: vec![1, 2] },
        TransferCell { u: 13, m: 1, s_star: 2.0, t: 1, ells: vec![3] },
        TransferCell { u: 13, m: 1, s_star: 2.0, t: 2, ells: vec![3, 4] },
        TransferCell { u: 13, m: 1, s_star: 2.0, t: 3, ells: vec![3, 4] },
        TransferCell { u: 16, m: 1, s_star: 2.0, t: 2, ells: vec![3, 4] },
    ];
    for cell in &cells {
        let u = KUniverse::new(vec![
            (0..cell.u as VertexId).collect(),
            (cell.u as VertexId..2 * cell.u as VertexId).collect(),
        ])?;
        let labelings = 4usize.pow(cell.m as u32);
        let min_size =
            ((labelings as f64) * (-cell.s_star * std::f64::consts::LN_2).exp()).ceil() as usize;
        for &ell in &cell.ells {
            for draw in 0..6usize {
                // Fresh z support per draw from a deterministic pattern.
                let mut z_pattern: Vec<(VertexId, u8)> = Vec::new();
                for j in 0..cell.t {
                    let v = ((j * 2 + draw + if j % 2 == 0 { 0 } else { cell.u }) % (2 * cell.u)) as VertexId;
                    if !z_pattern.iter().any(|&(w, _)| w == v) {
                        z_pattern.push((v, 1));
                    }
                }
                while z_pattern.len() < cell.t {
                    let v = rng.gen_range(0..2 * cell.u) as VertexId;
                    if !z_pattern.iter().any(|&(w, _)| w == v) {
                        z_pattern.push((v, 1));
                    }
                }
                let family = if draw % 2 == 0 {
                    SetFamily::Product(vec![1, 2]) // the swap pair over Z_2²
                } else {
                    SetFamily::Random {
                        size: rng.gen_range(min_size.max(1)..=labelings),
                        seed: rng.gen(),
                    }
                };
                let report = check_transfer(&u, cell.m, 2, cell.s_star, &z_pattern, &family, ell, caps)?;
                transfer_checked += 1;
                if report.skipped.is_some() {
                    transfer_skipped += 1;
                    continue;
                }
                transfer_ok &= report.pass();
                match report.route {
                    TransferRoute::ZeroWeight => zero_seen = true,
                    TransferRoute::LowWeight => low_seen = true,
                    TransferRoute::IntermediateWeight => mid_seen = true,
                }
            }
        }
    }
    records.push(VerdictRecord::of_check(
        "fourier_mass_transfer_bounds",
        &format!("{transfer_checked} instantiations ({transfer_skipped} outside hypotheses)"),
        transfer_ok
            && zero_seen
            && low_seen
            && mid_seen
            && transfer_checked - transfer_skipped >= 140,
        (transfer_checked - transfer_skipped) as f64,
        seed,
    ));
    Ok(())
}

/// Every edge subset of size 1..=max_edges over the complete list of ascending
/// k-tuples on a labeled vertex pool.
fn edge_subsets_over_pool(k: usize, pool: usize, max_edges: usize) -> Vec<Vec<EdgeTuple>> {
    let mut tuples: Vec<EdgeTuple> = Vec::new();
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
    rec(0, k, pool as VertexId, &mut cur, &mut tuples);

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn subsets(
        start: usize,
        max_edges: usize,
        tuples: &[EdgeTuple],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<EdgeTuple>>,
    ) {
        if !chosen.is_empty() {
            out.push(chosen.iter().map(|&i| tuples[i].clone()).collect());
        }
        if chosen.len() == max_edges {
            return;
        }
        for i in start..tuples.len() {
            chosen.push(i);
            subsets(i + 1, max_edges, tuples, chosen, out);
            chosen.pop();
        }
    }
    subsets(0, max_edges, &tuples, &mut chosen, &mut out);
    out
}

fn x_seed(i: usize, b: usize, u: usize) -> u64 {
    (i as u64) << 32 | (b as u64) << 16 | u as u64
}
