//! Round-based blackboard protocols over joint inputs, and the built-in
//! distinguishers: constant, single-bit echo, full-information
//! likelihood-ratio, and cycle-consistency.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::game::{GameSpec, JointInput};
use crate::matching::{EdgeTuple, LabeledMatching, VertexId};

/// The blackboard: one broadcast message per completed round.
#[derive(Debug, Clone, Default)]
pub struct Transcript {
    pub messages: Vec<(usize, Vec<bool>)>,
}

impl Transcript {
    pub fn total_bits(&self) -> usize {
        self.messages.iter().map(|(_, bits)| bits.len()).sum()
    }
}

/// Referee verdict, with notes for skipped work (e.g. components above the
/// backtracking cap).
#[derive(Debug, Clone)]
pub struct Verdict {
    pub accept: bool,
    pub notes: Vec<String>,
}

/// A deterministic communication protocol with a fixed round schedule. The
/// declared cost bounds the total bits broadcast over a run.
pub trait Protocol: Sync {
    fn name(&self) -> &str;
    /// Player speaking in each round.
    fn schedule(&self) -> Vec<usize>;
    fn message(&self, round: usize, player: usize, transcript: &Transcript, input: &LabeledMatching) -> Vec<bool>;
    fn output(&self, transcript: &Transcript) -> Verdict;
    fn declared_cost(&self) -> usize;
}

/// Runs `protocol` on one joint input in schedule order.
pub fn run_protocol(protocol: &dyn Protocol, spec: &GameSpec, input: &JointInput) -> Result<(Verdict, Transcript)> {
    if input.inputs.len() != spec.num_players() {
        return Err(Error::domain("joint input does not match the game"));
    }
    let mut transcript = Transcript::default();
    for (round, player) in protocol.schedule().into_iter().enumerate() {
        if player >= spec.num_players() {
            return Err(Error::contract(format!("schedule names unknown player {player}")));
        }
        let bits = protocol.message(round, player, &transcript, &input.inputs[player]);
        transcript.messages.push((player, bits));
        if transcript.total_bits() > protocol.declared_cost() {
            return Err(Error::contract(format!(
                "protocol `{}` exceeded its declared cost of {} bits",
                protocol.name(),
                protocol.declared_cost()
            )));
        }
    }
    Ok((protocol.output(&transcript), transcript))
}

/// Always outputs the same bit; communicates nothing.
pub struct ConstantProtocol {
    pub value: bool,
}

impl Protocol for ConstantProtocol {
    fn name(&self) -> &str {
        if self.value {
            "constant-1"
        } else {
            "constant-0"
        }
    }

    fn schedule(&self) -> Vec<usize> {
        Vec::new()
    }

    fn message(&self, _: usize, _: usize, _: &Transcript, _: &LabeledMatching) -> Vec<bool> {
        Vec::new()
    }

    fn output(&self, _: &Transcript) -> Verdict {
        Verdict { accept: self.value, notes: Vec::new() }
    }

    fn declared_cost(&self) -> usize {
        0
    }
}

/// Player 0 broadcasts the first label bit of its smallest support edge.
pub struct EchoProtocol;

impl Protocol for EchoProtocol {
    fn name(&self) -> &str {
        "echo"
    }

    fn schedule(&self) -> Vec<usize> {
        vec![0]
    }

    fn message(&self, _: usize, _: usize, _: &Transcript, input: &LabeledMatching) -> Vec<bool> {
        let bit = input
            .entries()
            .first()
            .map(|(_, lab)| lab[0] & 1 == 1)
            .unwrap_or(false);
        vec![bit]
    }

    fn output(&self, transcript: &Transcript) -> Verdict {
        let accept = transcript.messages.first().map(|(_, b)| b[0]).unwrap_or(false);
        Verdict { accept, notes: Vec::new() }
    }

    fn declared_cost(&self) -> usize {
        1
    }
}

fn push_uint(bits: &mut Vec<bool>, value: usize, width: usize) {
    for i in 0..width {
        bits.push((value >> i) & 1 == 1);
    }
}

fn pop_uint(bits: &[bool], cursor: &mut usize, width: usize) -> usize {
    let mut v = 0usize;
    for i in 0..width {
        if bits[*cursor + i] {
            v |= 1 << i;
        }
    }
    *cursor += width;
    v
}

fn width_for(n: usize) -> usize {
    (usize::BITS - (n.max(2) - 1).leading_zeros()) as usize
}

/// Every player broadcasts its full input; the referee accepts when the exact
/// likelihood of the joint input is higher under the correlated distribution
/// than under the uniform one. Its advantage equals the total variation
/// distance between the two input laws.
pub struct FullInformationProtocol {
    spec: Arc<GameSpec>,
}

impl FullInformationProtocol {
    pub fn new(spec: Arc<GameSpec>) -> Self {
        FullInformationProtocol { spec }
    }

    fn bits_per_entry(&self) -> usize {
        let k = self.spec.frame.graph.arity();
        k * (width_for(self.spec.frame.n) + width_for(self.spec.frame.graph.modulus))
    }

    fn encode_input(&self, player: usize, input: &LabeledMatching) -> Vec<bool> {
        let spec = &self.spec;
        let n = spec.frame.n;
        let edge = &spec.frame.graph.edges[spec.player_edge(player)];
        let mut bits = Vec::new();
        for (e, lab) in input.entries() {
            for (pos, &v) in e.iter().enumerate() {
                let copy = v as usize - edge[pos] * n;
                push_uint(&mut bits, copy, width_for(n));
                push_uint(&mut bits, lab[pos] as usize, width_for(spec.frame.graph.modulus));
            }
        }
        bits
    }

    fn decode_input(&self, player: usize, bits: &[bool]) -> LabeledMatching {
        let spec = &self.spec;
        let n = spec.frame.n;
        let k = spec.frame.graph.arity();
        let edge = &spec.frame.graph.edges[spec.player_edge(player)];
        let mut cursor = 0usize;
        let mut entries = Vec::with_capacity(spec.matching_size);
        for _ in 0..spec.matching_size {
            let mut e: EdgeTuple = Vec::with_capacity(k);
            let mut lab = Vec::with_capacity(k);
            for &cloud in edge.iter().take(k) {
                let copy = pop_uint(bits, &mut cursor, width_for(n));
                e.push((cloud * n + copy) as VertexId);
                lab.push(pop_uint(bits, &mut cursor, width_for(spec.frame.graph.modulus)) as u8);
            }
            entries.push((e, lab));
        }
        LabeledMatching::new(entries).expect("broadcast input decodes to a matching")
    }
}

impl Protocol for FullInformationProtocol {
    fn name(&self) -> &str {
        "full-information"
    }

    fn schedule(&self) -> Vec<usize> {
        (0..self.spec.num_players()).collect()
    }

    fn message(&self, _: usize, player: usize, _: &Transcript, input: &LabeledMatching) -> Vec<bool> {
        self.encode_input(player, input)
    }

    fn output(&self, transcript: &Transcript) -> Verdict {
        let inputs: Vec<LabeledMatching> = transcript
            .messages
            .iter()
            .map(|(player, bits)| self.decode_input(*player, bits))
            .collect();
        let joint = JointInput { inputs };
        let yes = self.spec.yes_mass(&joint).expect("in-range joint input");
        let no = self.spec.no_mass();
        Verdict { accept: yes > no, notes: Vec::new() }
    }

    fn declared_cost(&self) -> usize {
        self.spec.num_players() * self.spec.matching_size * self.bits_per_entry()
    }
}

/// Players broadcast all their labeled edges; every edge constrains
/// `x_{|e} - y(e)` to the support of its distribution. The referee builds the
/// union hypergraph and accepts iff the relation system of every connected
/// component (up to the backtracking cap) is satisfiable.
pub struct CycleConsistencyProtocol {
    spec: Arc<GameSpec>,
    component_cap: usize,
}

impl CycleConsistencyProtocol {
    pub fn new(spec: Arc<GameSpec>, component_cap: usize) -> Self {
        CycleConsistencyProtocol { spec, component_cap }
    }

    fn bits_per_entry(&self) -> usize {
        let k = self.spec.frame.graph.arity();
        k * (width_for(self.spec.frame.n) + width_for(self.spec.frame.graph.modulus))
    }
}

impl Protocol for CycleConsistencyProtocol {
    fn name(&self) -> &str {
        "cycle-consistency"
    }

    fn schedule(&self) -> Vec<usize> {
        (0..self.spec.num_players()).collect()
    }

    fn message(&self, _: usize, player: usize, _: &Transcript, input: &LabeledMatching) -> Vec<bool> {
        // Same fixed-width edge encoding as the full-information protocol.
        let full = FullInformationProtocol { spec: Arc::clone(&self.spec) };
        full.encode_input(player, input)
    }

    fn output(&self, transcript: &Transcript) -> Verdict {
        let full = FullInformationProtocol { spec: Arc::clone(&self.spec) };
        let mut relations: Vec<(usize, EdgeTuple, Vec<u8>)> = Vec::new();
        for (player, bits) in &transcript.messages {
            let input = full.decode_input(*player, bits);
            let edge_idx = self.spec.player_edge(*player);
            for (e, lab) in input.entries() {
                relations.push((edge_idx, e.clone(), lab.clone()));
            }
        }
        let (accept, notes) = check_relation_components(
            &self.spec,
            &relations,
            self.component_cap,
        );
        Verdict { accept, notes }
    }

    fn declared_cost(&self) -> usize {
        self.spec.num_players() * self.spec.matching_size * self.bits_per_entry()
    }
}

/// Satisfiability of the per-component relation systems. Returns the overall
/// accept bit plus notes for skipped components.
fn check_relation_components(
    spec: &GameSpec,
    relations: &[(usize, EdgeTuple, Vec<u8>)],
    component_cap: usize,
) -> (bool, Vec<String>) {
    // Union-find over the ground vertices touched by any relation.
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
    for (_, e, _) in relations {
        let root = find(&mut parent, e[0]);
        for &v in &e[1..] {
            let rv = find(&mut parent, v);
            parent.insert(rv, root);
        }
    }

    let mut components: HashMap<VertexId, Vec<usize>> = HashMap::new();
    for (idx, (_, e, _)) in relations.iter().enumerate() {
        let root = find(&mut parent, e[0]);
        components.entry(root).or_default().push(idx);
    }

    let mut notes = Vec::new();
    let modulus = spec.frame.graph.modulus;
    for rel_ids in components.values() {
        let mut vertices: Vec<VertexId> = rel_ids
            .iter()
            .flat_map(|&i| relations[i].1.iter().copied())
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.len() > component_cap {
            notes.push(format!(
                "component with {} vertices exceeds backtracking cap {component_cap}; skipped",
                vertices.len()
            ));
            continue;
        }
        if !component_satisfiable(spec, relations, rel_ids, &vertices, modulus) {
            return (false, notes);
        }
    }
    (true, notes)
}

/// Backtracking search for a `Z_N` assignment of the component's vertices
/// satisfying every relation `x_{|e} - lab ∈ supp(μ_e)`.
fn component_satisfiable(
    spec: &GameSpec,
    relations: &[(usize, EdgeTuple, Vec<u8>)],
    rel_ids: &[usize],
    vertices: &[VertexId],
    modulus: usize,
) -> bool {
    let pos: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // Relations become checkable once their last vertex is assigned.
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for &r in rel_ids {
        let last = relations[r].1.iter().map(|v| pos[v]).max().unwrap();
        check_at[last].push(r);
    }
    let mut assignment = vec![0u8; vertices.len()];
    fn rec(
        depth: usize,
        assignment: &mut Vec<u8>,
        check_at: &[Vec<usize>],
        relations: &[(usize, EdgeTuple, Vec<u8>)],
        pos: &HashMap<VertexId, usize>,
        spec: &GameSpec,
        modulus: usize,
    ) -> bool {
        if depth == assignment.len() {
            return true;
        }
        for val in 0..modulus {
            assignment[depth] = val as u8;
            let ok = check_at[depth].iter().all(|&r| {
                let (edge_idx, e, lab) = &relations[r];
                let mu = &spec.frame.graph.edge_dists[*edge_idx];
                let w: Vec<usize> = e
                    .iter()
                    .zip(lab)
                    .map(|(v, &l)| (assignment[pos[v]] as usize + modulus - l as usize) % modulus)
                    .collect();
                !mu.mass_of_tuple(&w).is_zero()
            });
            if ok
                && rec(depth + 1, assignment, check_at, relations, pos, spec, modulus)
            {
                return true;
            }
        }
        false
    }
    rec(0, &mut assignment, &check_at, relations, &pos, spec, modulus)
}
