//! Acceptance gate: every criterion below must pass, each printing one
//! verdict line. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines on success.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use dihp_lab::csp::{self, IndependenceOrder, Instance};
use dihp_lab::game::{
    advantage, AdvantageMode, ConstantProtocol, CycleConsistencyProtocol,
};
use dihp_lab::ratio::{rat, rat_int, Rat};
use dihp_lab::report::{Manifest, Status};
use dihp_lab::suites::run_suite;
use dihp_lab::Caps;

const MASTER_SEED: u64 = 0xD1B5_1AB5;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn new() -> Self {
        Gate { failures: Vec::new() }
    }

    fn criterion(&mut self, id: u32, name: &str, pass: bool, budget_s: f64, started: Instant, detail: &str) {
        let elapsed = started.elapsed().as_secs_f64();
        let timely = elapsed <= budget_s;
        let verdict = if pass && timely { "PASS" } else { "FAIL" };
        println!("{verdict}  criterion {id:2} {name:<28} {elapsed:7.2}s/{budget_s:.0}s  {detail}");
        if !(pass && timely) {
            self.failures.push(format!(
                "criterion {id} {name}: pass={pass}, elapsed={elapsed:.2}s (budget {budget_s}s) — {detail}"
            ));
        }
    }

    fn finish(self) {
        assert!(self.failures.is_empty(), "acceptance failures:\n{}", self.failures.join("\n"));
    }
}

fn corpus() -> Vec<(String, Instance)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances");
    let mut out = Vec::new();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("bundled instance corpus present")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().map(|e| e == "json").unwrap_or(false))
        .collect();
    paths.sort();
    for p in paths {
        let json = std::fs::read_to_string(&p).unwrap();
        let inst = csp::instance_from_json(&json).unwrap();
        out.push((p.file_stem().unwrap().to_string_lossy().into_owned(), inst));
    }
    out
}

fn record_passes(manifest: &Manifest, ids: &[&str]) -> (bool, String) {
    let mut ok = true;
    let mut missing = Vec::new();
    for id in ids {
        let found: Vec<_> = manifest.records.iter().filter(|r| r.lemma_id == *id).collect();
        if found.is_empty() {
            ok = false;
            missing.push(format!("{id} (missing)"));
            continue;
        }
        if found.iter().any(|r| r.status != Status::Pass) {
            ok = false;
            missing.push(format!("{id} (failed)"));
        }
    }
    (ok, if missing.is_empty() { format!("{} checks", ids.len()) } else { missing.join(", ") })
}

#[test]
fn acceptance_gate() {
    let caps = Caps::default();
    let mut gate = Gate::new();
    let corpus = corpus();
    assert!(corpus.len() >= 20, "corpus must bundle at least 20 instances");

    // 1. LP exactness over the corpus.
    let t = Instant::now();
    let mut lp_ok = true;
    let mut onewise_value1 = 0usize;
    for (name, inst) in &corpus {
        let val = csp::max_value(inst, &caps).unwrap();
        let lp = dihp_lab::lp::lp_value(inst).unwrap();
        if lp < val {
            lp_ok = false;
            eprintln!("  relaxation violated on {name}");
        }
        let all_onewise = inst
            .predicates
            .iter()
            .all(|p| csp::find_independent_support(p, IndependenceOrder::One).unwrap().is_some());
        if all_onewise {
            onewise_value1 += 1;
            if lp != rat_int(1) {
                lp_ok = false;
                eprintln!("  one-wise instance {name} has LP value ≠ 1");
            }
        }
    }
    gate.criterion(
        1,
        "lp_exactness",
        lp_ok && onewise_value1 >= 10,
        10.0,
        t,
        &format!("{} instances, {} with one-wise supports", corpus.len(), onewise_value1),
    );

    // 2. Reduction soundness: one-wise marginals always, two-wise when the
    // solution is two-wise independent.
    let t = Instant::now();
    let mut reduced = 0usize;
    let mut twowise_reduced = 0usize;
    let mut reduction_ok = true;
    for (name, inst) in &corpus {
        let sol = match dihp_lab::lp::canonical_value1_solution(inst, IndependenceOrder::One).unwrap() {
            Some(s) => s,
            None => dihp_lab::lp::solve_basic_lp(inst).unwrap(),
        };
        match dihp_lab::blowup::reduce_to_graph(inst, &sol) {
            Ok(graph) => {
                reduced += 1;
                if !graph.edge_dists.iter().all(csp::check_onewise) {
                    reduction_ok = false;
                    eprintln!("  one-wise marginal failure on {name}");
                }
            }
            Err(dihp_lab::Error::Domain(_)) => {} // integral solution, modulus 1
            Err(e) => {
                reduction_ok = false;
                eprintln!("  reduction error on {name}: {e}");
            }
        }
        if let Some(sol2) = dihp_lab::lp::canonical_value1_solution(inst, IndependenceOrder::Two).unwrap() {
            let graph = dihp_lab::blowup::reduce_to_graph(inst, &sol2).unwrap();
            twowise_reduced += 1;
            if !graph.edge_dists.iter().all(csp::check_twowise) {
                reduction_ok = false;
                eprintln!("  two-wise marginal failure on {name}");
            }
        }
    }
    gate.criterion(
        2,
        "reduction_soundness",
        reduction_ok && reduced >= 15 && twowise_reduced >= 3,
        5.0,
        t,
        &format!("{reduced} graphs built, {twowise_reduced} two-wise"),
    );

    // Suite-backed criteria: each suite runs once under its own timer.
    let t_kernels = Instant::now();
    let kernels = run_suite("kernels", MASTER_SEED, &caps).unwrap();
    let (ok, detail) = record_passes(
        &kernels,
        &[
            "kernel_row_stochastic",
            "kernel_density_preserving",
            "kernel_sup_contraction",
            "fixed_matching_kernel_row_stochastic",
            "fixed_matching_kernel_density_preserving",
            "fixed_matching_kernel_sup_contraction",
        ],
    );
    gate.criterion(3, "kernel_identities", ok, 10.0, t_kernels, &detail);

    let t_rectangles = Instant::now();
    let rectangles = run_suite("rectangles", MASTER_SEED, &caps).unwrap();
    let (ok, detail) = record_passes(&rectangles, &["relating_yes_no_identity"]);
    gate.criterion(4, "relating_yes_no", ok, 60.0, t_rectangles, &detail);

    let (ok, detail) =
        record_passes(&rectangles, &["separation_identity", "spectral_transfer_fixed_matching"]);
    gate.criterion(5, "separation_and_svd", ok, 60.0, t_rectangles, &detail);

    let (ok, detail) = record_passes(&rectangles, &["structured_spectrum_support"]);
    gate.criterion(6, "spectrum_vanishing", ok, 120.0, t_rectangles, &detail);

    let (ok, detail) = record_passes(
        &rectangles,
        &[
            "structured_density_bounded_onewise",
            "structured_density_bounded_levels",
            "structured_density_bounded_twowise",
        ],
    );
    gate.criterion(7, "boundedness_certificates", ok, 120.0, t_rectangles, &detail);

    let t_comb = Instant::now();
    let combinatorics = run_suite("combinatorics", MASTER_SEED, &caps).unwrap();
    let (ok, detail) = record_passes(
        &combinatorics,
        &[
            "singleton_free_count_bound",
            "heavy_map_weight_floor",
            "internal_boundary_probability_bound",
            "fourier_mass_transfer_bounds",
            "global_set_containment_bound",
            "global_support_pseudo_uniform",
        ],
    );
    gate.criterion(8, "combinatorial_bounds", ok, 300.0, t_comb, &detail);

    let (ok, detail) = record_passes(&combinatorics, &["cyclicity_peeling_oracle"]);
    gate.criterion(9, "cyclicity_oracle", ok, 60.0, t_comb, &detail);

    // 10. Distinguishing experiment at n = 64, α = 1/8, K = 8.
    let t = Instant::now();
    let spec = Arc::new(dihp_lab::game::maxcut_spec(64, rat(1, 8), 8).unwrap());
    let cycle = CycleConsistencyProtocol::new(Arc::clone(&spec), caps.component_solver);
    let cycle_out = advantage(
        &cycle,
        &spec,
        AdvantageMode::MonteCarlo { trials: 10_000, seed: MASTER_SEED },
        &caps,
    )
    .unwrap();
    let constant_out = advantage(
        &ConstantProtocol { value: true },
        &spec,
        AdvantageMode::MonteCarlo { trials: 10_000, seed: MASTER_SEED },
        &caps,
    )
    .unwrap();
    gate.criterion(
        10,
        "distinguishing_experiment",
        cycle_out.ci_low >= 0.1 && constant_out.estimate <= 0.02,
        120.0,
        t,
        &format!(
            "cycle-consistency adv {:.3} (lower {:.3}), constant adv {:.3}",
            cycle_out.estimate, cycle_out.ci_low, constant_out.estimate
        ),
    );

    // 11. Analytic inequality sweeps (each ≥ 10^4 seeded inputs).
    let t_fourier = Instant::now();
    let fourier = run_suite("fourier", MASTER_SEED, &caps).unwrap();
    let (ok, detail) = record_passes(
        &fourier,
        &[
            "hypercontractivity_q4_deg2",
            "level_d_density",
            "scalar_binomial_bound",
            "scalar_rearrangement_bound",
        ],
    );
    gate.criterion(11, "inequality_sweeps", ok, 60.0, t_fourier, &detail);

    // 12. Determinism of the full verification run.
    let t = Instant::now();
    let manifest1 = run_suite("all", MASTER_SEED, &caps).unwrap();
    let manifest2 = run_suite("all", MASTER_SEED, &caps).unwrap();
    gate.criterion(
        12,
        "manifest_determinism",
        manifest1.to_json() == manifest2.to_json() && manifest1.all_pass(),
        600.0,
        t,
        &format!("{} records byte-identical", manifest1.records.len()),
    );

    gate.finish();
}

/// Greedy/random floor for max-cut: every instance on up to 5 vertices has
/// value at least 1/2, checked by full enumeration over all nonempty edge
/// sets.
#[test]
fn maxcut_value_floor_exhaustive() {
    let caps = Caps::default();
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
        .collect();
    let mut checked = 0u32;
    for mask in 1u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let inst = csp::gallery::max_cut_instance(5, &edges, 2);
        let val = csp::max_value(&inst, &caps).unwrap();
        assert!(val >= rat(1, 2), "edge set {edges:?} has value {val}");
        checked += 1;
    }
    assert_eq!(checked, 1023);
}

/// Relaxation dominance, exhaustive on a finite family: all instances with at
/// most 4 variables and at most 4 constraints over unordered variable pairs,
/// one binary predicate per instance drawn from all 16 truth tables.
#[test]
fn lp_dominates_value_exhaustively() {
    let caps = Caps::default();
    let pairs: Vec<Vec<usize>> = (0..4)
        .flat_map(|a| ((a + 1)..4).map(move |b| vec![a, b]))
        .collect();
    let mut tested = 0u32;
    for table_bits in 0u32..16 {
        let table: Vec<bool> = (0..4).map(|i| table_bits >> i & 1 == 1).collect();
        let pred = match csp::Predicate::new(format!("p{table_bits}"), 2, 2, table) {
            Ok(p) => p,
            Err(_) => continue,
        };
        for mask in 1u32..(1 << pairs.len()) {
            if mask.count_ones() > 4 {
                continue;
            }
            let constraints: Vec<csp::Constraint> = (0..pairs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| csp::Constraint { vars: pairs[i].clone(), predicate: 0 })
                .collect();
            let inst = Instance::new(
                2,
                2,
                (0..4).map(|i| format!("v{i}")).collect(),
                vec![pred.clone()],
                constraints,
            )
            .unwrap();
            let val = csp::max_value(&inst, &caps).unwrap();
            let lp = dihp_lab::lp::lp_value(&inst).unwrap();
            assert!(lp >= val, "LP below value for predicate {table_bits}, mask {mask:#b}");
            tested += 1;
        }
    }
    assert!(tested >= 800, "family too small: {tested}");
}

/// Max-cut ratio floor: value/LP ≥ 1/2 across the corpus's max-cut instances.
#[test]
fn maxcut_ratio_floor_on_corpus() {
    let caps = Caps::default();
    for (name, inst) in corpus() {
        if !name.starts_with("maxcut") {
            continue;
        }
        let val = csp::max_value(&inst, &caps).unwrap();
        let lp = dihp_lab::lp::lp_value(&inst).unwrap();
        assert!(&val / &lp >= rat(1, 2), "{name}: ratio below 1/2");
    }
}

/// The spec-named parameter preset stays wired up.
#[test]
fn maxcut_tiny_preset_builds() {
    let spec = dihp_lab::game::maxcut_spec(8, rat(1, 8), 4).unwrap();
    assert_eq!(spec.matching_size, 1);
    assert_eq!(spec.num_players(), 4);
    assert_eq!(spec.frame.graph.modulus, 2);
    let _: Rat = spec.no_mass();
}
