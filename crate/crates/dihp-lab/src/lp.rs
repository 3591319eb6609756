//! BasicLP construction and an exact rational simplex solver.
//!
//! The solver is a dense two-phase simplex over `BigRational` with Bland's
//! anticycling rule; degenerate ties in the ratio test are broken by lowest
//! basis-variable index. Desk-scale models are tiny, so there is no scaling,
//! presolve, or sparsity.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::csp::{unpack_tuple, FiniteDistribution, IndependenceOrder, Instance};
use crate::error::{Error, Result};
use crate::ratio::{rat_int, serde_rat, serde_rat_vec, Rat};

/// An equality-form LP: maximize `objective · x` subject to `rows · x = rhs`,
/// `x ≥ 0`.
#[derive(Debug, Clone)]
pub struct LpModel {
    pub objective: Vec<Rat>,
    pub rows: Vec<Vec<Rat>>,
    pub rhs: Vec<Rat>,
    pub var_names: Vec<String>,
}

impl LpModel {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }
}

/// The BasicLP of an instance, with index maps for the `x_{v,σ}` and `z_{i,b}`
/// variables.
#[derive(Debug, Clone)]
pub struct BasicLp {
    pub model: LpModel,
    pub alphabet: usize,
    pub arity: usize,
    pub num_instance_vars: usize,
    pub num_constraints: usize,
}

impl BasicLp {
    pub fn x_col(&self, v: usize, sigma: usize) -> usize {
        v * self.alphabet + sigma
    }

    pub fn z_col(&self, i: usize, b: usize) -> usize {
        self.num_instance_vars * self.alphabet + i * self.alphabet.pow(self.arity as u32) + b
    }
}

/// Builds BasicLP for `inst`: variables `x_{v,σ}` (one distribution per
/// variable) and `z_{i,b}` (one distribution per constraint), per-variable sum
/// rows, and marginal-consistency rows. The objective is `Σ_i Σ_b f_i(b)
/// z_{i,b} / m`.
pub fn build_basic_lp(inst: &Instance) -> BasicLp {
    let sigma = inst.alphabet;
    let k = inst.arity;
    let nv = inst.num_vars();
    let m = inst.num_constraints();
    let tuples = sigma.pow(k as u32);
    let num_vars = nv * sigma + m * tuples;
    let z_base = nv * sigma;

    let mut objective = vec![Rat::zero(); num_vars];
    let inv_m = Rat::one() / rat_int(m as i64);
    for (i, c) in inst.constraints.iter().enumerate() {
        let pred = &inst.predicates[c.predicate];
        for b in 0..tuples {
            if pred.satisfied_index(b) {
                objective[z_base + i * tuples + b] = inv_m.clone();
            }
        }
    }

    let mut rows = Vec::with_capacity(nv + m * k * sigma);
    let mut rhs = Vec::with_capacity(rows.capacity());

    // Σ_σ x_{v,σ} = 1 for every variable v.
    for v in 0..nv {
        let mut row = vec![Rat::zero(); num_vars];
        for s in 0..sigma {
            row[v * sigma + s] = Rat::one();
        }
        rows.push(row);
        rhs.push(Rat::one());
    }

    // Σ_b 1{b_j = σ} z_{i,b} = x_{v_{i,j},σ} for every i, j, σ.
    for (i, c) in inst.constraints.iter().enumerate() {
        for j in 0..k {
            let stride = sigma.pow(j as u32);
            for s in 0..sigma {
                let mut row = vec![Rat::zero(); num_vars];
                for b in 0..tuples {
                    if (b / stride) % sigma == s {
                        row[z_base + i * tuples + b] = Rat::one();
                    }
                }
                row[c.vars[j] * sigma + s] = -Rat::one();
                rows.push(row);
                rhs.push(Rat::zero());
            }
        }
    }

    let mut var_names = Vec::with_capacity(num_vars);
    for v in 0..nv {
        for s in 0..sigma {
            var_names.push(format!("x[{},{s}]", inst.variables[v]));
        }
    }
    for i in 0..m {
        for b in 0..tuples {
            var_names.push(format!("z[{i},{:?}]", unpack_tuple(b, sigma, k)));
        }
    }

    BasicLp {
        model: LpModel { objective, rows, rhs, var_names },
        alphabet: sigma,
        arity: k,
        num_instance_vars: nv,
        num_constraints: m,
    }
}

// ---------------------------------------------------------------------------
// Exact simplex
// ---------------------------------------------------------------------------

struct Tableau {
    /// `rows × (cols + 1)`; the last column is the rhs.
    t: Vec<Vec<Rat>>,
    /// Objective row in reduced-cost form; the last entry holds the *negated*
    /// objective value so the same row operation updates costs and value.
    obj: Vec<Rat>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn new(rows: &[Vec<Rat>], rhs: &[Rat], cols: usize) -> Self {
        let m = rows.len();
        // Artificial variables occupy columns cols..cols+m.
        let total = cols + m;
        let mut t = Vec::with_capacity(m);
        for (i, row) in rows.iter().enumerate() {
            let mut r: Vec<Rat> = Vec::with_capacity(total + 1);
            let flip = rhs[i] < Rat::zero();
            for v in row {
                r.push(if flip { -v.clone() } else { v.clone() });
            }
            for j in 0..m {
                r.push(if j == i { Rat::one() } else { Rat::zero() });
            }
            r.push(if flip { -rhs[i].clone() } else { rhs[i].clone() });
            t.push(r);
        }
        // Phase-1 objective: maximize -Σ artificials, canonicalized against the
        // artificial basis: reduced cost of a structural column j is Σ_i t[i][j],
        // and obj[last] = Σ_i rhs_i = -(initial value).
        let mut obj = vec![Rat::zero(); total + 1];
        for r in &t {
            for (o, v) in obj.iter_mut().zip(r.iter()) {
                *o += v;
            }
        }
        // Reduced costs of artificial columns are zero in the canonical form.
        for slot in &mut obj[cols..total] {
            *slot = Rat::zero();
        }
        let basis = (cols..total).collect();
        Tableau { t, obj, basis, cols: total }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..self.t.len() {
            if i == row {
                continue;
            }
            let factor = self.t[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..=self.cols {
                let delta = &factor * &self.t[row][j];
                self.t[i][j] -= delta;
            }
        }
        let factor = self.obj[col].clone();
        if !factor.is_zero() {
            for j in 0..=self.cols {
                let delta = &factor * &self.t[row][j];
                self.obj[j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Runs Bland's rule to optimality over the allowed columns. Returns
    /// `false` if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            // Entering: lowest-index column with positive reduced cost.
            let Some(col) = (0..allowed).find(|&j| self.obj[j] > Rat::zero()) else {
                return true;
            };
            // Leaving: minimum ratio; ties broken by lowest basis variable index.
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.t.len() {
                if self.t[i][col] > Rat::zero() {
                    let ratio = &self.t[i][self.cols] / &self.t[i][col];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn value(&self) -> Rat {
        -self.obj[self.cols].clone()
    }

    fn point(&self, num_vars: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < num_vars {
                x[b] = self.t[i][self.cols].clone();
            }
        }
        x
    }
}

/// Outcome of phase 1: a tableau in canonical feasible form with artificials
/// driven out, or `None` when the constraints are infeasible.
fn phase1(rows: &[Vec<Rat>], rhs: &[Rat], num_vars: usize) -> Result<Option<Tableau>> {
    for row in rows {
        if row.len() != num_vars {
            return Err(Error::structural("ragged LP row"));
        }
    }
    let mut tab = Tableau::new(rows, rhs, num_vars);
    if !tab.optimize(tab.cols) {
        return Err(Error::structural("phase-1 simplex unbounded"));
    }
    if !tab.value().is_zero() {
        return Ok(None);
    }
    // Drive remaining artificials out of the basis; rows that cannot pivot to a
    // structural column are redundant and dropped.
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= num_vars {
            match (0..num_vars).find(|&j| !tab.t[i][j].is_zero()) {
                Some(col) => tab.pivot(i, col),
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    Ok(Some(tab))
}

/// Exact optimal value and optimal basic point of `model` (maximization).
/// Infeasibility or unboundedness is a structural error: BasicLP instances are
/// compact, so either indicates a model-construction bug.
pub fn solve_exact(model: &LpModel) -> Result<LpSolutionRaw> {
    let n = model.num_vars();
    let mut tab = phase1(&model.rows, &model.rhs, n)?
        .ok_or_else(|| Error::structural("LP infeasible"))?;
    // Install the real objective, canonicalized against the current basis.
    // After the row operations obj[last] = -(c_B · x_B), the negated value.
    let mut obj = vec![Rat::zero(); tab.cols + 1];
    obj[..n].clone_from_slice(&model.objective);
    for (i, &b) in tab.basis.iter().enumerate() {
        let c = obj[b].clone();
        if c.is_zero() {
            continue;
        }
        for (j, slot) in obj.iter_mut().enumerate() {
            let delta = &c * &tab.t[i][j];
            *slot -= delta;
        }
    }
    tab.obj = obj;
    if !tab.optimize(n) {
        return Err(Error::structural("LP unbounded"));
    }
    Ok(LpSolutionRaw { value: tab.value(), point: tab.point(n) })
}

/// A point satisfying `rows·x = rhs, x ≥ 0`, or `None` if infeasible.
pub fn feasible_point(rows: &[Vec<Rat>], rhs: &[Rat], num_vars: usize) -> Result<Option<Vec<Rat>>> {
    Ok(phase1(rows, rhs, num_vars)?.map(|tab| tab.point(num_vars)))
}

/// Raw solver output: optimum value and the full variable vector.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolutionRaw {
    pub value: Rat,
    pub point: Vec<Rat>,
}

/// An optimal (or feasible) solution of BasicLP with named variable views.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    #[serde(with = "serde_rat")]
    pub value: Rat,
    /// `x[v][σ]` in variable order.
    pub x: Vec<XEntry>,
    /// `z[i][b]` in constraint order, `b` in tuple-index order.
    pub z: Vec<ZEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XEntry {
    pub variable: String,
    #[serde(with = "serde_rat_vec")]
    pub weights: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZEntry {
    pub constraint: usize,
    #[serde(with = "serde_rat_vec")]
    pub weights: Vec<Rat>,
}

impl LpSolution {
    pub fn from_raw(inst: &Instance, raw: &LpSolutionRaw) -> Self {
        let basic = build_basic_lp(inst);
        let sigma = inst.alphabet;
        let tuples = sigma.pow(inst.arity as u32);
        let x = (0..inst.num_vars())
            .map(|v| XEntry {
                variable: inst.variables[v].clone(),
                weights: (0..sigma).map(|s| raw.point[basic.x_col(v, s)].clone()).collect(),
            })
            .collect();
        let z = (0..inst.num_constraints())
            .map(|i| ZEntry {
                constraint: i,
                weights: (0..tuples).map(|b| raw.point[basic.z_col(i, b)].clone()).collect(),
            })
            .collect();
        LpSolution { value: raw.value.clone(), x, z }
    }

    pub fn x_weight(&self, v: usize, sigma: usize) -> &Rat {
        &self.x[v].weights[sigma]
    }

    /// The per-constraint local distribution as a `FiniteDistribution`.
    pub fn z_distribution(&self, inst: &Instance, i: usize) -> Result<FiniteDistribution> {
        FiniteDistribution::new(inst.alphabet, inst.arity, self.z[i].weights.clone())
    }

    /// Exact feasibility check against BasicLP of `inst`, plus the objective.
    pub fn validate(&self, inst: &Instance) -> Result<()> {
        let sigma = inst.alphabet;
        let k = inst.arity;
        let tuples = sigma.pow(k as u32);
        if self.x.len() != inst.num_vars() || self.z.len() != inst.num_constraints() {
            return Err(Error::domain("solution shape does not match instance"));
        }
        for xe in &self.x {
            if xe.weights.iter().any(|w| w < &Rat::zero()) {
                return Err(Error::domain("negative x weight"));
            }
            let total: Rat = xe.weights.iter().sum();
            if !total.is_one() {
                return Err(Error::domain(format!("x weights for {} sum to {}", xe.variable, total)));
            }
        }
        let mut objective = Rat::zero();
        for (i, c) in inst.constraints.iter().enumerate() {
            let ze = &self.z[i];
            if ze.weights.len() != tuples || ze.weights.iter().any(|w| w < &Rat::zero()) {
                return Err(Error::domain("bad z weights"));
            }
            let pred = &inst.predicates[c.predicate];
            for b in 0..tuples {
                if pred.satisfied_index(b) {
                    objective += &ze.weights[b];
                }
            }
            for j in 0..k {
                let stride = sigma.pow(j as u32);
                for s in 0..sigma {
                    let marginal: Rat = (0..tuples)
                        .filter(|b| (b / stride) % sigma == s)
                        .map(|b| ze.weights[b].clone())
                        .sum();
                    if marginal != *self.x_weight(c.vars[j], s) {
                        return Err(Error::domain(format!(
                            "marginal mismatch at constraint {i}, coordinate {j}, value {s}"
                        )));
                    }
                }
            }
        }
        objective /= rat_int(inst.num_constraints() as i64);
        if objective != self.value {
            return Err(Error::domain("objective value mismatch"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serializes")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

static LP_VALUE_CACHE: Lazy<Mutex<HashMap<[u8; 32], Rat>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// The exact optimum of BasicLP, cached on the instance content hash (the
/// reduction pipeline calls this repeatedly).
pub fn lp_value(inst: &Instance) -> Result<Rat> {
    let key = inst.content_hash();
    if let Some(v) = LP_VALUE_CACHE.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let raw = solve_exact(&build_basic_lp(inst).model)?;
    LP_VALUE_CACHE.lock().unwrap().insert(key, raw.value.clone());
    Ok(raw.value)
}

/// Solves BasicLP and returns the named optimal solution.
pub fn solve_basic_lp(inst: &Instance) -> Result<LpSolution> {
    let raw = solve_exact(&build_basic_lp(inst).model)?;
    let sol = LpSolution::from_raw(inst, &raw);
    sol.validate(inst)?;
    Ok(sol)
}

/// The explicit value-1 solution available whenever every predicate supports
/// the requested independence order: uniform `x`, and for each constraint the
/// independent distribution supported on its predicate's satisfying set.
/// Returns `None` if some predicate lacks such a support.
pub fn canonical_value1_solution(inst: &Instance, order: IndependenceOrder) -> Result<Option<LpSolution>> {
    let sigma = inst.alphabet;
    let mut per_predicate: Vec<Option<FiniteDistribution>> = Vec::with_capacity(inst.predicates.len());
    for p in &inst.predicates {
        match crate::csp::find_independent_support(p, order)? {
            Some(mu) => per_predicate.push(Some(mu)),
            None => return Ok(None),
        }
    }
    let uniform = vec![Rat::one() / rat_int(sigma as i64); sigma];
    let x = inst
        .variables
        .iter()
        .map(|v| XEntry { variable: v.clone(), weights: uniform.clone() })
        .collect();
    let z = inst
        .constraints
        .iter()
        .enumerate()
        .map(|(i, c)| ZEntry {
            constraint: i,
            weights: per_predicate[c.predicate].as_ref().unwrap().mass().to_vec(),
        })
        .collect();
    let sol = LpSolution { value: Rat::one(), x, z };
    sol.validate(inst)?;
    Ok(Some(sol))
}
