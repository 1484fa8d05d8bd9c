//! Detection and removal of closed time-like curves (cycles of the influence
//! relation). Each removal step enlarges the gauge input and computational
//! output sets by one qubit and creates one flag output bit.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

use crate::flow::{derive_processing, temporal_relation, transitive_closure, FlowError, ProcessingRelations};
use crate::gf2::{BitMatrix, BitVec};
use crate::stabilizer::{GeneratorMatrix, Qubit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CtcError {
    NoSelfLoop(Qubit),
    /// The qubit is already a gauge input or computational output.
    BoundaryQubit(Qubit),
    /// The cycle has a chord or is not a cycle of the relation.
    NotMinimal,
    /// The cycle touches the gauge input or computational output set.
    BoundaryOverlap,
    Flow(FlowError),
}

impl fmt::Display for CtcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CtcError::NoSelfLoop(q) => write!(f, "qubit {q} has no self-loop"),
            CtcError::BoundaryQubit(q) => {
                write!(f, "qubit {q} is already a gauge input or computational output")
            }
            CtcError::NotMinimal => f.write_str("cycle is not a minimal closed time-like curve"),
            CtcError::BoundaryOverlap => {
                f.write_str("cycle overlaps the gauge input or computational output set")
            }
            CtcError::Flow(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CtcError {}

impl From<FlowError> for CtcError {
    fn from(e: FlowError) -> Self {
        CtcError::Flow(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtcReport {
    pub self_loops: Vec<Qubit>,
    /// One shortest cycle per strongly connected component of size ≥ 2,
    /// starting at its smallest member, ordered by that member.
    pub cycles: Vec<Vec<Qubit>>,
    /// Whether each cycle has no arrows besides its defining ones.
    pub minimal: Vec<bool>,
}

impl CtcReport {
    pub fn is_empty(&self) -> bool {
        self.self_loops.is_empty() && self.cycles.is_empty()
    }
}

/// Whether `cycle` is a cycle of `T` whose members have no other arrows
/// among themselves: `fc(c_i) ∩ L = {c_{i+1}}`.
pub fn is_minimal_cycle(t: &BitMatrix, cycle: &[Qubit]) -> bool {
    let l = cycle.len();
    if l < 2 {
        return false;
    }
    for (p, a) in cycle.iter().enumerate() {
        for (r, b) in cycle.iter().enumerate() {
            let expected = r == (p + 1) % l;
            if t.get(b.index(), a.index()) != expected {
                return false;
            }
        }
    }
    true
}

/// Shortest cycle through `start` inside `members`, ignoring self-loops.
fn shortest_cycle_from(t: &BitMatrix, start: usize, members: &[bool]) -> Option<Vec<usize>> {
    let n = t.rows();
    let mut parent = alloc::vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    queue.push_back(start);
    parent[start] = start;
    while let Some(a) = queue.pop_front() {
        for b in 0..n {
            if !members[b] || b == a || !t.get(b, a) {
                continue;
            }
            if b == start {
                let mut path = alloc::vec![a];
                let mut cur = a;
                while cur != start {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if parent[b] == usize::MAX {
                parent[b] = a;
                queue.push_back(b);
            }
        }
    }
    None
}

pub fn find_ctcs(t: &BitMatrix) -> CtcReport {
    let n = t.rows();
    let rel = temporal_relation(t);
    let mut cycles = Vec::new();
    for scc in rel.sccs.iter().filter(|s| s.len() >= 2) {
        let mut members = alloc::vec![false; n];
        for q in scc {
            members[q.index()] = true;
        }
        let mut best: Option<Vec<usize>> = None;
        for q in scc {
            if let Some(c) = shortest_cycle_from(t, q.index(), &members) {
                if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                    best = Some(c);
                }
            }
        }
        let mut cycle = best.expect("a strongly connected component of size 2+ has a cycle");
        let smallest = (0..cycle.len()).min_by_key(|&p| cycle[p]).unwrap_or(0);
        cycle.rotate_left(smallest);
        cycles.push(cycle.into_iter().map(Qubit::from_index).collect::<Vec<_>>());
    }
    cycles.sort();
    let minimal = cycles.iter().map(|c| is_minimal_cycle(t, c)).collect();
    CtcReport {
        self_loops: rel.self_loops,
        cycles,
        minimal,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    SelfLoop,
    Cycle,
}

impl StepKind {
    pub fn keyword(self) -> &'static str {
        match self {
            StepKind::SelfLoop => "self-loop",
            StepKind::Cycle => "cycle",
        }
    }
}

/// One removal step and the flag bit it created.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovalStep {
    pub kind: StepKind,
    pub qubits: Vec<Qubit>,
    /// Qubit whose output bit is the new flag.
    pub flag_qubit: Qubit,
    /// Flag row over `s` (after the step).
    pub flag_z: BitVec,
    /// Flag row over the gauge bits of the new gauge input set.
    pub flag_r: BitVec,
}

/// Result of one removal step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Broken {
    pub generators: GeneratorMatrix,
    pub relations: ProcessingRelations,
    pub step: RemovalStep,
}

fn flag_rows(p: &ProcessingRelations, flag: Qubit) -> (BitVec, BitVec) {
    let j = p
        .ocomp
        .iter()
        .position(|&q| q == flag)
        .expect("flag qubit is a computational output");
    (p.z.row(j), p.r.row(j))
}

/// Removes the self-loop at `i` by flipping its measurement plane; `i`
/// becomes both gauge input and computational output.
pub fn break_self_loop(g: &GeneratorMatrix, p: &ProcessingRelations, i: Qubit) -> Result<Broken, CtcError> {
    let ii = i.index();
    if !p.t.get(ii, ii) {
        return Err(CtcError::NoSelfLoop(i));
    }
    if p.igauge.contains(&i) || p.ocomp.contains(&i) {
        return Err(CtcError::BoundaryQubit(i));
    }
    let flipped = g.flip_plane(i);
    let mut igauge = p.igauge.clone();
    igauge.insert(i);
    let mut ocomp = p.ocomp.clone();
    ocomp.insert(i);
    let relations = derive_processing(&flipped, &igauge, &ocomp)?;
    let (flag_z, flag_r) = flag_rows(&relations, i);
    // o_i = s'_i + Σ_{j∈J∖i} s'_j with q_i = s_i + Σ_{j∈J∖i} s_j before the flip
    assert_eq!(
        flag_z,
        p.t.row(ii),
        "flag must check the old adaptation rule at i"
    );
    Ok(Broken {
        generators: flipped,
        relations,
        step: RemovalStep {
            kind: StepKind::SelfLoop,
            qubits: alloc::vec![i],
            flag_qubit: i,
            flag_z,
            flag_r,
        },
    })
}

/// Cuts a minimal cycle `(c_1, …, c_l)` between `c_l` and `c_1`: `c_1`
/// joins the gauge inputs, `c_l` the computational outputs.
pub fn break_cycle(
    g: &GeneratorMatrix,
    p: &ProcessingRelations,
    cycle: &[Qubit],
) -> Result<Broken, CtcError> {
    if !is_minimal_cycle(&p.t, cycle) {
        return Err(CtcError::NotMinimal);
    }
    if cycle.iter().any(|q| p.igauge.contains(q) || p.ocomp.contains(q)) {
        return Err(CtcError::BoundaryOverlap);
    }
    let first = cycle[0];
    let last = cycle[cycle.len() - 1];
    let mut igauge = p.igauge.clone();
    igauge.insert(first);
    let mut ocomp = p.ocomp.clone();
    ocomp.insert(last);
    let relations = derive_processing(g, &igauge, &ocomp)?;
    let (flag_z, flag_r) = flag_rows(&relations, last);
    // o'_l = s_l + Σ_{a∈bc(1)∖l} s_a, i.e. the old rule for q_1
    assert_eq!(
        flag_z,
        p.t.row(first.index()),
        "flag must check the old adaptation rule at c_1"
    );
    let before = transitive_closure(&p.t);
    let after = transitive_closure(&relations.t);
    assert!(
        (0..after.rows()).all(|a| after.row(a).ones().all(|b| before.get(a, b))),
        "cutting a cycle must not create new precedences"
    );
    Ok(Broken {
        generators: g.clone(),
        relations,
        step: RemovalStep {
            kind: StepKind::Cycle,
            qubits: cycle.to_vec(),
            flag_qubit: last,
            flag_z,
            flag_r,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovalTrace {
    pub steps: Vec<RemovalStep>,
    pub generators: GeneratorMatrix,
    pub relations: ProcessingRelations,
}

impl RemovalTrace {
    /// Qubits whose plane was flipped; their angles map by
    /// [`crate::transforms::FLIP_ANGLE_MAP`].
    pub fn flipped(&self) -> Vec<Qubit> {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::SelfLoop)
            .map(|s| s.flag_qubit)
            .collect()
    }

    /// Zero-based output-bit indices (rows of the final `Z`) that are flags.
    pub fn flag_bits(&self) -> Vec<usize> {
        self.steps
            .iter()
            .map(|s| {
                self.relations
                    .ocomp
                    .iter()
                    .position(|&q| q == s.flag_qubit)
                    .expect("flag qubit stays a computational output")
            })
            .collect()
    }
}

/// Removes self-loops (smallest qubit first), then minimal cycles (least
/// smallest member first), until the relation is a strict partial order.
pub fn remove_all(g: &GeneratorMatrix, p: &ProcessingRelations) -> Result<RemovalTrace, CtcError> {
    let mut g = g.clone();
    let mut p = p.clone();
    let mut steps = Vec::new();
    loop {
        let report = find_ctcs(&p.t);
        let broken = if let Some(&i) = report.self_loops.first() {
            break_self_loop(&g, &p, i)?
        } else if let Some(cycle) = report.cycles.first() {
            break_cycle(&g, &p, cycle)?
        } else {
            break;
        };
        assert!(steps.len() < g.n(), "each step enlarges the gauge input set");
        g = broken.generators;
        p = broken.relations;
        steps.push(broken.step);
    }
    Ok(RemovalTrace {
        steps,
        generators: g,
        relations: p,
    })
}
