//! CSP instances, predicates, assignments, exact brute-force values, and
//! independence-support checks for distributions over `Σ^k`.
//!
//! Tuples `(b_1..b_k)` over a base-`B` alphabet are packed into indices as
//! `Σ b_j · B^(j-1)`, first coordinate least significant. Every truth table and
//! distribution in the crate uses this encoding.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::ratio::{rat_int, rat_u128, Rat};

pub fn pack_tuple(tuple: &[usize], base: usize) -> usize {
    let mut idx = 0;
    for &t in tuple.iter().rev() {
        idx = idx * base + t;
    }
    idx
}

pub fn unpack_tuple(mut idx: usize, base: usize, arity: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(arity);
    for _ in 0..arity {
        out.push(idx % base);
        idx /= base;
    }
    out
}

/// A predicate `f : Σ^k → {0,1}` stored as a dense truth table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    pub name: String,
    pub arity: usize,
    pub alphabet: usize,
    table: Vec<bool>,
}

impl Predicate {
    pub fn new(name: impl Into<String>, arity: usize, alphabet: usize, table: Vec<bool>) -> Result<Self> {
        let name = name.into();
        if arity == 0 {
            return Err(Error::domain("predicate arity must be at least 1"));
        }
        if alphabet < 2 {
            return Err(Error::domain("alphabet size must be at least 2"));
        }
        let expect = alphabet.pow(arity as u32);
        if table.len() != expect {
            return Err(Error::domain(format!(
                "truth table for `{name}` has {} entries, expected {expect}",
                table.len()
            )));
        }
        Ok(Predicate { name, arity, alphabet, table })
    }

    /// Builds from `(tuple, bit)` pairs; every tuple must appear exactly once.
    pub fn from_pairs(
        name: impl Into<String>,
        arity: usize,
        alphabet: usize,
        pairs: &[(Vec<usize>, u8)],
    ) -> Result<Self> {
        let size = alphabet.pow(arity as u32);
        let mut table = vec![None; size];
        for (tuple, bit) in pairs {
            if tuple.len() != arity || tuple.iter().any(|&t| t >= alphabet) {
                return Err(Error::Parse(format!("bad truth-table tuple {tuple:?}")));
            }
            let idx = pack_tuple(tuple, alphabet);
            if table[idx].replace(*bit != 0).is_some() {
                return Err(Error::Parse(format!("duplicate truth-table tuple {tuple:?}")));
            }
        }
        let table: Option<Vec<bool>> = table.into_iter().collect();
        let table = table.ok_or_else(|| {
            Error::Parse(format!("truth table incomplete: expected {size} tuples"))
        })?;
        Predicate::new(name, arity, alphabet, table)
    }

    pub fn satisfied(&self, tuple: &[usize]) -> bool {
        self.table[pack_tuple(tuple, self.alphabet)]
    }

    pub fn satisfied_index(&self, idx: usize) -> bool {
        self.table[idx]
    }

    /// Indices of satisfying assignments (`f^{-1}(1)`).
    pub fn ones(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&i| self.table[i]).collect()
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }
}

/// One ordered constraint: a tuple of distinct variables plus a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub vars: Vec<usize>,
    pub predicate: usize,
}

/// A CSP instance: variables and an ordered constraint list. The constraint
/// order is the stream order.
#[derive(Debug, Clone)]
pub struct Instance {
    pub alphabet: usize,
    pub arity: usize,
    pub variables: Vec<String>,
    pub predicates: Vec<Predicate>,
    pub constraints: Vec<Constraint>,
}

impl Instance {
    pub fn new(
        alphabet: usize,
        arity: usize,
        variables: Vec<String>,
        predicates: Vec<Predicate>,
        constraints: Vec<Constraint>,
    ) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::domain("instance must have at least one constraint"));
        }
        for p in &predicates {
            if p.arity != arity || p.alphabet != alphabet {
                return Err(Error::domain(format!(
                    "predicate `{}` has (k,|Σ|)=({},{}), instance has ({arity},{alphabet})",
                    p.name, p.arity, p.alphabet
                )));
            }
        }
        for (i, c) in constraints.iter().enumerate() {
            if c.vars.len() != arity {
                return Err(Error::domain(format!("constraint {i} has {} variables, expected {arity}", c.vars.len())));
            }
            if c.predicate >= predicates.len() {
                return Err(Error::domain(format!("constraint {i} references unknown predicate")));
            }
            for &v in &c.vars {
                if v >= variables.len() {
                    return Err(Error::domain(format!("constraint {i} references unknown variable")));
                }
            }
            let mut sorted = c.vars.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != arity {
                return Err(Error::domain(format!("constraint {i} repeats a variable; tuples must be distinct")));
            }
        }
        Ok(Instance { alphabet, arity, variables, predicates, constraints })
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn predicate_of(&self, constraint: usize) -> &Predicate {
        &self.predicates[self.constraints[constraint].predicate]
    }

    /// SHA-256 of the canonical JSON form; used as the LP cache key and as the
    /// `spec_hash` embedded in experiment records.
    pub fn content_hash(&self) -> [u8; 32] {
        let json = serde_json::to_vec(&InstanceFile::from(self)).expect("instance serializes");
        let mut h = Sha256::new();
        h.update(&json);
        h.finalize().into()
    }

    pub fn content_hash_hex(&self) -> String {
        self.content_hash().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Fraction of constraints of `inst` satisfied by the full assignment `tau`
/// (indexed by variable position), as an exact rational in `[0,1]`.
pub fn eval_assignment(inst: &Instance, tau: &[usize]) -> Result<Rat> {
    if tau.len() != inst.num_vars() {
        return Err(Error::domain(format!(
            "assignment covers {} of {} variables",
            tau.len(),
            inst.num_vars()
        )));
    }
    if let Some(&bad) = tau.iter().find(|&&s| s >= inst.alphabet) {
        return Err(Error::domain(format!("assignment value {bad} outside alphabet")));
    }
    let mut satisfied = 0u64;
    let mut scratch = vec![0usize; inst.arity];
    for c in &inst.constraints {
        for (slot, &v) in scratch.iter_mut().zip(&c.vars) {
            *slot = tau[v];
        }
        if inst.predicates[c.predicate].satisfied(&scratch) {
            satisfied += 1;
        }
    }
    Ok(rat_int(satisfied as i64) / rat_int(inst.num_constraints() as i64))
}

/// Exact maximum of [`eval_assignment`] over all `|Σ|^|V|` assignments.
pub fn max_value(inst: &Instance, caps: &Caps) -> Result<Rat> {
    let space = (inst.alphabet as u128)
        .checked_pow(inst.num_vars() as u32)
        .ok_or(Error::CapExceeded { cap: "enumeration", needed: u128::MAX, limit: caps.enumeration })?;
    caps.check("enumeration", space)?;

    let mut tau = vec![0usize; inst.num_vars()];
    let mut best = 0u64;
    let mut scratch = vec![0usize; inst.arity];
    loop {
        let mut satisfied = 0u64;
        for c in &inst.constraints {
            for (slot, &v) in scratch.iter_mut().zip(&c.vars) {
                *slot = tau[v];
            }
            if inst.predicates[c.predicate].satisfied(&scratch) {
                satisfied += 1;
            }
        }
        best = best.max(satisfied);
        // odometer over assignments
        let mut pos = 0;
        loop {
            if pos == tau.len() {
                return Ok(rat_int(best as i64) / rat_int(inst.num_constraints() as i64));
            }
            tau[pos] += 1;
            if tau[pos] < inst.alphabet {
                break;
            }
            tau[pos] = 0;
            pos += 1;
        }
    }
}

/// A probability distribution over `Γ^k` with exact rational masses, stored
/// densely in tuple-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    pub base: usize,
    pub arity: usize,
    mass: Vec<Rat>,
}

impl FiniteDistribution {
    pub fn new(base: usize, arity: usize, mass: Vec<Rat>) -> Result<Self> {
        if mass.len() != base.pow(arity as u32) {
            return Err(Error::domain(format!(
                "distribution over base {base}^{arity} needs {} masses, got {}",
                base.pow(arity as u32),
                mass.len()
            )));
        }
        if mass.iter().any(|m| m < &Rat::zero()) {
            return Err(Error::domain("negative probability mass"));
        }
        let total: Rat = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::domain(format!(
                "masses sum to {} instead of 1",
                crate::ratio::rat_to_string(&total)
            )));
        }
        Ok(FiniteDistribution { base, arity, mass })
    }

    pub fn uniform(base: usize, arity: usize) -> Self {
        let size = base.pow(arity as u32);
        let m = Rat::one() / rat_u128(size as u128);
        FiniteDistribution { base, arity, mass: vec![m; size] }
    }

    /// Point mass at the given tuple.
    pub fn point(base: usize, arity: usize, tuple: &[usize]) -> Self {
        let size = base.pow(arity as u32);
        let mut mass = vec![Rat::zero(); size];
        mass[pack_tuple(tuple, base)] = Rat::one();
        FiniteDistribution { base, arity, mass }
    }

    /// Uniform distribution on the given tuple indices.
    pub fn uniform_on(base: usize, arity: usize, support: &[usize]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::domain("empty support"));
        }
        let size = base.pow(arity as u32);
        let m = Rat::one() / rat_int(support.len() as i64);
        let mut mass = vec![Rat::zero(); size];
        for &s in support {
            if s >= size {
                return Err(Error::domain("support index out of range"));
            }
            mass[s] = m.clone();
        }
        FiniteDistribution::new(base, arity, mass)
    }

    pub fn mass(&self) -> &[Rat] {
        &self.mass
    }

    pub fn mass_at(&self, idx: usize) -> &Rat {
        &self.mass[idx]
    }

    pub fn mass_of_tuple(&self, tuple: &[usize]) -> &Rat {
        &self.mass[pack_tuple(tuple, self.base)]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.mass.len()).filter(|&i| !self.mass[i].is_zero()).collect()
    }

    /// Marginal of coordinate `j` (0-based).
    pub fn marginal(&self, j: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.base];
        let stride = self.base.pow(j as u32);
        for (idx, m) in self.mass.iter().enumerate() {
            out[(idx / stride) % self.base] += m;
        }
        out
    }

    /// Joint marginal of distinct coordinates `i < j`.
    pub fn pair_marginal(&self, i: usize, j: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.base * self.base];
        let si = self.base.pow(i as u32);
        let sj = self.base.pow(j as u32);
        for (idx, m) in self.mass.iter().enumerate() {
            let a = (idx / si) % self.base;
            let b = (idx / sj) % self.base;
            out[a + self.base * b] += m;
        }
        out
    }
}

/// Whether every single-coordinate marginal of `mu` is exactly uniform.
pub fn check_onewise(mu: &FiniteDistribution) -> bool {
    let target = Rat::one() / rat_int(mu.base as i64);
    (0..mu.arity).all(|j| mu.marginal(j).iter().all(|m| *m == target))
}

/// Whether every pair marginal of `mu` is exactly uniform on `Γ^2`.
pub fn check_twowise(mu: &FiniteDistribution) -> bool {
    let target = Rat::one() / rat_int((mu.base * mu.base) as i64);
    for i in 0..mu.arity {
        for j in (i + 1)..mu.arity {
            if mu.pair_marginal(i, j).iter().any(|m| *m != target) {
                return false;
            }
        }
    }
    true
}

/// Independence order for [`find_independent_support`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndependenceOrder {
    One,
    Two,
}

/// Looks for a distribution supported on `f^{-1}(1)` whose one-wise (resp.
/// two-wise) marginals are uniform, by exact LP feasibility. Returns `None`
/// when no such distribution exists.
pub fn find_independent_support(
    f: &Predicate,
    order: IndependenceOrder,
) -> Result<Option<FiniteDistribution>> {
    let ones = f.ones();
    if ones.is_empty() {
        return Ok(None);
    }
    let sigma = f.alphabet;
    let nvars = ones.len();

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();

    match order {
        IndependenceOrder::One => {
            let target = Rat::one() / rat_int(sigma as i64);
            for j in 0..f.arity {
                let stride = sigma.pow(j as u32);
                for gamma in 0..sigma {
                    let mut row = vec![Rat::zero(); nvars];
                    for (col, &b) in ones.iter().enumerate() {
                        if (b / stride) % sigma == gamma {
                            row[col] = Rat::one();
                        }
                    }
                    rows.push(row);
                    rhs.push(target.clone());
                }
            }
        }
        IndependenceOrder::Two => {
            if f.arity < 2 {
                return Err(Error::domain("two-wise independence needs arity at least 2"));
            }
            let target = Rat::one() / rat_int((sigma * sigma) as i64);
            for i in 0..f.arity {
                for j in (i + 1)..f.arity {
                    let si = sigma.pow(i as u32);
                    let sj = sigma.pow(j as u32);
                    for gamma in 0..sigma {
                        for delta in 0..sigma {
                            let mut row = vec![Rat::zero(); nvars];
                            for (col, &b) in ones.iter().enumerate() {
                                if (b / si) % sigma == gamma && (b / sj) % sigma == delta {
                                    row[col] = Rat::one();
                                }
                            }
                            rows.push(row);
                            rhs.push(target.clone());
                        }
                    }
                }
            }
        }
    }

    let point = match crate::lp::feasible_point(&rows, &rhs, nvars)? {
        Some(p) => p,
        None => return Ok(None),
    };
    let size = sigma.pow(f.arity as u32);
    let mut mass = vec![Rat::zero(); size];
    for (col, &b) in ones.iter().enumerate() {
        mass[b] = point[col].clone();
    }
    Ok(Some(FiniteDistribution::new(sigma, f.arity, mass)?))
}

// ---------------------------------------------------------------------------
// Instance file format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PredicateFile {
    name: String,
    truth_table: Vec<(Vec<usize>, u8)>,
}

/// On-disk JSON schema for instances. Constraint order in the file is the
/// stream order.
#[derive(Serialize, Deserialize)]
pub struct InstanceFile {
    alphabet_size: usize,
    arity: usize,
    predicates: Vec<PredicateFile>,
    variables: Vec<String>,
    constraints: Vec<ConstraintFile>,
}

#[derive(Serialize, Deserialize)]
struct ConstraintFile {
    vars: Vec<String>,
    predicate: String,
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        InstanceFile {
            alphabet_size: inst.alphabet,
            arity: inst.arity,
            predicates: inst
                .predicates
                .iter()
                .map(|p| PredicateFile {
                    name: p.name.clone(),
                    truth_table: (0..p.table.len())
                        .map(|i| (unpack_tuple(i, p.alphabet, p.arity), p.table[i] as u8))
                        .collect(),
                })
                .collect(),
            variables: inst.variables.clone(),
            constraints: inst
                .constraints
                .iter()
                .map(|c| ConstraintFile {
                    vars: c.vars.iter().map(|&v| inst.variables[v].clone()).collect(),
                    predicate: inst.predicates[c.predicate].name.clone(),
                })
                .collect(),
        }
    }
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance> {
        let mut predicates = Vec::with_capacity(self.predicates.len());
        for p in &self.predicates {
            predicates.push(Predicate::from_pairs(
                p.name.clone(),
                self.arity,
                self.alphabet_size,
                &p.truth_table,
            )?);
        }
        let var_index = |name: &str| {
            self.variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable `{name}` in constraints")))
        };
        let pred_index = |name: &str| {
            self.predicates
                .iter()
                .position(|p| p.name == name)
                .ok_or_else(|| Error::Parse(format!("unknown predicate `{name}` in constraints")))
        };
        let mut constraints = Vec::with_capacity(self.constraints.len());
        for c in &self.constraints {
            constraints.push(Constraint {
                vars: c.vars.iter().map(|v| var_index(v)).collect::<Result<_>>()?,
                predicate: pred_index(&c.predicate)?,
            });
        }
        Instance::new(self.alphabet_size, self.arity, self.variables, predicates, constraints)
    }
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from(inst)).expect("instance serializes")
}

pub fn instance_from_json(json: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(json)?;
    file.into_instance()
}

// ---------------------------------------------------------------------------
// Predicate and instance gallery used by tests, presets, and the corpus
// ---------------------------------------------------------------------------

pub mod gallery {
    use super::*;

    /// The cut predicate on alphabet `Σ`: satisfied iff the two values differ.
    pub fn cut(alphabet: usize) -> Predicate {
        let table = (0..alphabet * alphabet)
            .map(|idx| idx % alphabet != idx / alphabet)
            .collect();
        Predicate::new("cut", 2, alphabet, table).expect("valid cut table")
    }

    /// `f_b(x1,x2,x3) = 1` iff `x1+x2+x3 = b` over `Z_2`.
    pub fn e3lin(b: usize) -> Predicate {
        let table = (0..8)
            .map(|idx: usize| (idx & 1) ^ ((idx >> 1) & 1) ^ ((idx >> 2) & 1) == b)
            .collect();
        Predicate::new(format!("e3lin{b}"), 3, 2, table).expect("valid e3lin table")
    }

    /// Boolean AND of `k` inputs: satisfied only by the all-ones tuple.
    pub fn and_k(k: usize) -> Predicate {
        let size = 1usize << k;
        let table = (0..size).map(|idx| idx == size - 1).collect();
        Predicate::new(format!("and{k}"), k, 2, table).expect("valid and table")
    }

    /// Boolean OR of `k` inputs.
    pub fn or_k(k: usize) -> Predicate {
        let table = (0..1usize << k).map(|idx| idx != 0).collect();
        Predicate::new(format!("or{k}"), k, 2, table).expect("valid or table")
    }

    /// Not-all-equal on 3 booleans.
    pub fn nae3() -> Predicate {
        let table = (0..8).map(|idx| idx != 0 && idx != 7).collect();
        Predicate::new("nae3", 3, 2, table).expect("valid nae table")
    }

    /// A max-cut instance from an edge list.
    pub fn max_cut_instance(num_vars: usize, edges: &[(usize, usize)], alphabet: usize) -> Instance {
        let variables = (0..num_vars).map(|i| format!("x{i}")).collect();
        let constraints = edges
            .iter()
            .map(|&(a, b)| Constraint { vars: vec![a, b], predicate: 0 })
            .collect();
        Instance::new(alphabet, 2, variables, vec![cut(alphabet)], constraints)
            .expect("valid max-cut instance")
    }

    /// Triangle max-cut over `Z_2`.
    pub fn max_cut_triangle() -> Instance {
        max_cut_instance(3, &[(0, 1), (1, 2), (2, 0)], 2)
    }

    /// `{x1+x2+x3=0, x1+x2+x3=1}` on the same variable tuple.
    pub fn e3lin_contradiction() -> Instance {
        let variables = vec!["x1".into(), "x2".into(), "x3".into()];
        Instance::new(
            2,
            3,
            variables,
            vec![e3lin(0), e3lin(1)],
            vec![
                Constraint { vars: vec![0, 1, 2], predicate: 0 },
                Constraint { vars: vec![0, 1, 2], predicate: 1 },
            ],
        )
        .expect("valid e3lin instance")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn eval_constant_assignment_on_triangle_is_zero() {
        let inst = gallery::max_cut_triangle();
        assert_eq!(eval_assignment(&inst, &[0, 0, 0]).unwrap(), rat_int(0));
    }

    #[test]
    fn eval_two_thirds_on_triangle() {
        let inst = gallery::max_cut_triangle();
        assert_eq!(eval_assignment(&inst, &[0, 0, 1]).unwrap(), rat(2, 3));
    }

    #[test]
    fn eval_single_constraint_satisfied_is_one() {
        let inst = gallery::max_cut_instance(2, &[(0, 1)], 2);
        assert_eq!(eval_assignment(&inst, &[0, 1]).unwrap(), rat_int(1));
    }

    #[test]
    fn eval_missing_assignment_is_domain_error() {
        let inst = gallery::max_cut_triangle();
        assert!(matches!(eval_assignment(&inst, &[0, 1]), Err(Error::Domain(_))));
    }

    #[test]
    fn max_value_single_edge() {
        let inst = gallery::max_cut_instance(2, &[(0, 1)], 2);
        assert_eq!(max_value(&inst, &Caps::default()).unwrap(), rat_int(1));
    }

    #[test]
    fn max_value_triangle_is_two_thirds() {
        let inst = gallery::max_cut_triangle();
        assert_eq!(max_value(&inst, &Caps::default()).unwrap(), rat(2, 3));
    }

    #[test]
    fn max_value_contradictory_e3lin_is_half() {
        let inst = gallery::e3lin_contradiction();
        assert_eq!(max_value(&inst, &Caps::default()).unwrap(), rat(1, 2));
    }

    #[test]
    fn max_value_respects_enumeration_cap() {
        let inst = gallery::max_cut_triangle();
        let caps = Caps { enumeration: 4, ..Caps::default() };
        assert!(matches!(max_value(&inst, &caps), Err(Error::CapExceeded { cap: "enumeration", .. })));
    }

    #[test]
    fn onewise_checks() {
        let half_swap = FiniteDistribution::uniform_on(2, 2, &[pack_tuple(&[0, 1], 2), pack_tuple(&[1, 0], 2)]).unwrap();
        assert!(check_onewise(&half_swap));
        let point = FiniteDistribution::point(2, 2, &[0, 0]);
        assert!(!check_onewise(&point));
        assert!(check_onewise(&FiniteDistribution::uniform(3, 2)));
    }

    #[test]
    fn twowise_checks() {
        // uniform on solutions of x1+x2+x3=0 over Z_2
        let sols: Vec<usize> = (0..8).filter(|i| (i & 1) ^ ((i >> 1) & 1) ^ ((i >> 2) & 1) == 0).collect();
        let mu = FiniteDistribution::uniform_on(2, 3, &sols).unwrap();
        assert!(check_twowise(&mu));

        let half_swap = FiniteDistribution::uniform_on(2, 2, &[pack_tuple(&[0, 1], 2), pack_tuple(&[1, 0], 2)]).unwrap();
        assert!(!check_twowise(&half_swap));
        assert!(check_twowise(&FiniteDistribution::uniform(2, 3)));
    }

    #[test]
    fn find_support_cut_is_uniform_on_swaps() {
        let mu = find_independent_support(&gallery::cut(2), IndependenceOrder::One)
            .unwrap()
            .expect("cut supports one-wise independence");
        assert!(check_onewise(&mu));
        let expect = FiniteDistribution::uniform_on(2, 2, &[pack_tuple(&[0, 1], 2), pack_tuple(&[1, 0], 2)]).unwrap();
        assert_eq!(mu, expect);
    }

    #[test]
    fn find_support_e3lin_order_two() {
        let mu = find_independent_support(&gallery::e3lin(0), IndependenceOrder::Two)
            .unwrap()
            .expect("e3lin supports two-wise independence");
        assert!(check_twowise(&mu));
        let sols: Vec<usize> = (0..8).filter(|i| (i & 1) ^ ((i >> 1) & 1) ^ ((i >> 2) & 1) == 0).collect();
        assert_eq!(mu, FiniteDistribution::uniform_on(2, 3, &sols).unwrap());
    }

    #[test]
    fn find_support_and_is_infeasible() {
        assert!(find_independent_support(&gallery::and_k(2), IndependenceOrder::One)
            .unwrap()
            .is_none());
    }

    #[test]
    fn order_two_support_implies_order_one() {
        for p in [gallery::cut(2), gallery::e3lin(0), gallery::e3lin(1), gallery::nae3(), gallery::or_k(3)] {
            let two = find_independent_support(&p, IndependenceOrder::Two).unwrap();
            if let Some(mu) = two {
                assert!(check_twowise(&mu));
                assert!(check_onewise(&mu));
                assert!(find_independent_support(&p, IndependenceOrder::One).unwrap().is_some());
            }
        }
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = gallery::max_cut_triangle();
        let json = instance_to_json(&inst);
        let back = instance_from_json(&json).unwrap();
        assert_eq!(back.content_hash(), inst.content_hash());
        assert_eq!(back.variables, inst.variables);
    }

    #[test]
    fn rejects_repeated_variable_in_constraint() {
        let r = Instance::new(
            2,
            2,
            vec!["a".into()],
            vec![gallery::cut(2)],
            vec![Constraint { vars: vec![0, 0], predicate: 0 }],
        );
        assert!(r.is_err());
    }
}
