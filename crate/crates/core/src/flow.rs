//! Classical processing relations `q = Ts + Hg`, `o = Zs + Rg` derived from
//! the stabilizer normal form, their cones and temporal relations, extremal
//! pairs, matroid-basis enumeration and reconstruction of the stabilizer.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::gf2::{BitMatrix, BitVec};
use crate::stabilizer::{
    complement_indices, indices, set_from_indices, GeneratorMatrix, MeasurementPlane, PauliWord, Qubit,
    QubitSet,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowError {
    /// The `Φ` columns on the proposed gauge set are dependent.
    InvalidGaugeSet,
    /// Some outcome outside the proposed output set cannot be corrected,
    /// or the two sets differ in size.
    InvalidOutputSet,
    /// A qubit outside the input set can be gauged on its own.
    GaugeableOutsideInput(Qubit),
    /// The input/output sets admit no split of the generators into
    /// correction operators and the rest.
    NoValidSplit,
    RankMismatch {
        h: usize,
        z: usize,
    },
    NotCommutingReconstruction,
    NotOptimalOutput,
    QubitOutOfRange(Qubit),
}

impl fmt::Display for FlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowError::InvalidGaugeSet => f.write_str("invalid gauge input set"),
            FlowError::InvalidOutputSet => f.write_str("invalid computational output set"),
            FlowError::GaugeableOutsideInput(q) => {
                write!(f, "qubit {q} outside the input set can be gauged individually")
            }
            FlowError::NoValidSplit => f.write_str("input and output sets admit no valid split"),
            FlowError::RankMismatch { h, z } => {
                write!(f, "rank of H ({h}) does not match rank of Z ({z})")
            }
            FlowError::NotCommutingReconstruction => f.write_str("reconstructed operators do not commute"),
            FlowError::NotOptimalOutput => f.write_str("Z is not an optimal classical output"),
            FlowError::QubitOutOfRange(q) => write!(f, "qubit {q} out of range"),
        }
    }
}

impl core::error::Error for FlowError {}

/// Influence, gauge and output matrices for one extremal pair.
///
/// `h` is `n × |igauge|` with identity rows on `igauge`; `z` is
/// `|ocomp| × n` with identity columns on `ocomp`. Columns of `h` / `r` and
/// rows of `z` / `r` follow ascending qubit order of the sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessingRelations {
    pub t: BitMatrix,
    pub h: BitMatrix,
    pub z: BitMatrix,
    pub r: BitMatrix,
    pub igauge: QubitSet,
    pub ocomp: QubitSet,
}

impl ProcessingRelations {
    pub fn n(&self) -> usize {
        self.t.rows()
    }

    /// `𝐓`: rows `igauge^c`, columns `ocomp^c`.
    pub fn t_block(&self) -> BitMatrix {
        let n = self.n();
        self.t.submatrix(
            &complement_indices(&self.igauge, n),
            &complement_indices(&self.ocomp, n),
        )
    }

    /// `𝐇`: rows `igauge^c`.
    pub fn h_block(&self) -> BitMatrix {
        self.h.select_rows(&complement_indices(&self.igauge, self.n()))
    }

    /// `𝐙`: columns `ocomp^c`.
    pub fn z_block(&self) -> BitMatrix {
        self.z.select_cols(&complement_indices(&self.ocomp, self.n()))
    }

    pub fn cones(&self) -> Cones {
        cones(&self.t)
    }

    pub fn temporal_relation(&self) -> TemporalRelation {
        temporal_relation(&self.t)
    }

    /// Whether the normal-form zero and identity blocks are in place.
    pub fn is_normal_form(&self) -> bool {
        let n = self.n();
        let ig = indices(&self.igauge);
        let oc = indices(&self.ocomp);
        let k = ig.len();
        if ig.len() != oc.len()
            || self.h.rows() != n
            || self.h.cols() != k
            || self.z.rows() != k
            || self.z.cols() != n
            || self.r.rows() != k
            || self.r.cols() != k
        {
            return false;
        }
        ig.iter().all(|&i| self.t.row_is_zero(i))
            && oc.iter().all(|&a| self.t.column_is_zero(a))
            && self.h.select_rows(&ig) == BitMatrix::identity(k)
            && self.z.select_cols(&oc) == BitMatrix::identity(k)
    }
}

/// Relations together with the operators that realize them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub relations: ProcessingRelations,
    /// `K̄(i)` for `i ∈ igauge`, ascending.
    pub gauge_ops: Vec<PauliWord>,
    /// `K(a)` for `a ∈ ocomp^c`, ascending.
    pub correction_ops: Vec<PauliWord>,
}

fn check_range(set: &QubitSet, n: usize) -> Result<(), FlowError> {
    match set.iter().find(|q| q.label() > n) {
        Some(&q) => Err(FlowError::QubitOutOfRange(q)),
        None => Ok(()),
    }
}

fn word_of(row: &BitVec, n: usize) -> PauliWord {
    let w = BitVec::from_indices(n, (0..n).filter(|&a| row.get(a)));
    let v = BitVec::from_indices(n, (0..n).filter(|&a| row.get(n + a)));
    PauliWord::new(w, v)
}

/// Brings `G` into the normal form for `(igauge, ocomp)` and reads off
/// `T, H, Z, R` together with the gauge and correction operators.
pub fn normal_form(
    g: &GeneratorMatrix,
    igauge: &QubitSet,
    ocomp: &QubitSet,
) -> Result<NormalForm, FlowError> {
    let n = g.n();
    check_range(igauge, n)?;
    check_range(ocomp, n)?;
    let ig = indices(igauge);
    let oc = indices(ocomp);
    let k = ig.len();

    // generator-basis change so that Φ restricted to igauge reads (I; 0)
    let rref = g.phi().select_cols(&ig).rref();
    if rref.rank() < k {
        return Err(FlowError::InvalidGaugeSet);
    }
    if oc.len() != k {
        return Err(FlowError::InvalidOutputSet);
    }
    let basis = rref.transform.mul(&g.combined());
    let ig_c = complement_indices(igauge, n);
    let oc_c = complement_indices(ocomp, n);
    let first: Vec<usize> = (0..k).collect();
    let rest: Vec<usize> = (k..n).collect();
    let s_cols: Vec<usize> = oc_c.iter().map(|&a| n + a).collect();

    let phi1 = basis.submatrix(&first, &ig_c).transpose();
    let phi2 = basis.submatrix(&rest, &ig_c).transpose();
    let s1t = basis.submatrix(&first, &s_cols);
    let s2t = basis.submatrix(&rest, &s_cols);
    let s2t_inv = s2t.invert().map_err(|_| FlowError::InvalidOutputSet)?;
    let s2_inv = s2t_inv.transpose();

    let t_block = phi2.mul(&s2_inv);
    let h_block = phi1.add(&t_block.mul(&s1t.transpose()));

    let corrections = s2t_inv.mul(&basis.select_rows(&rest));
    let gauges = basis.select_rows(&first).add(&s1t.mul(&corrections));

    let mut t = BitMatrix::zeros(n, n);
    for (bi, &b) in ig_c.iter().enumerate() {
        for (ai, &a) in oc_c.iter().enumerate() {
            t.set(b, a, t_block.get(bi, ai));
        }
    }
    let mut h = BitMatrix::zeros(n, k);
    for (c, &i) in ig.iter().enumerate() {
        h.set(i, c, true);
    }
    for (bi, &b) in ig_c.iter().enumerate() {
        for c in 0..k {
            h.set(b, c, h_block.get(bi, c));
        }
    }
    let mut z = BitMatrix::zeros(k, n);
    let mut r = BitMatrix::zeros(k, k);
    for (j, &o) in oc.iter().enumerate() {
        z.set(j, o, true);
        for (ai, &a) in oc_c.iter().enumerate() {
            z.set(j, a, corrections.get(ai, n + o));
        }
        for c in 0..k {
            r.set(j, c, gauges.get(c, n + o));
        }
    }

    Ok(NormalForm {
        relations: ProcessingRelations {
            t,
            h,
            z,
            r,
            igauge: igauge.clone(),
            ocomp: ocomp.clone(),
        },
        gauge_ops: (0..k).map(|c| word_of(&gauges.row(c), n)).collect(),
        correction_ops: (0..n - k).map(|j| word_of(&corrections.row(j), n)).collect(),
    })
}

/// The unique processing relations for an extremal pair.
pub fn derive_processing(
    g: &GeneratorMatrix,
    igauge: &QubitSet,
    ocomp: &QubitSet,
) -> Result<ProcessingRelations, FlowError> {
    normal_form(g, igauge, ocomp).map(|nf| nf.relations)
}

/// Forward and backward cones; `b ∈ fc(a)` iff `T_ba = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cones {
    pub fc: Vec<QubitSet>,
    pub bc: Vec<QubitSet>,
    pub inputs: QubitSet,
    pub outputs: QubitSet,
}

impl Cones {
    pub fn forward(&self, a: Qubit) -> &QubitSet {
        &self.fc[a.index()]
    }

    pub fn backward(&self, b: Qubit) -> &QubitSet {
        &self.bc[b.index()]
    }
}

pub fn cones(t: &BitMatrix) -> Cones {
    assert!(t.is_square(), "influence matrix must be square");
    let n = t.rows();
    let fc: Vec<QubitSet> = (0..n)
        .map(|a| set_from_indices((0..n).filter(|&b| t.get(b, a))))
        .collect();
    let bc: Vec<QubitSet> = (0..n)
        .map(|b| set_from_indices((0..n).filter(|&a| t.get(b, a))))
        .collect();
    let inputs = set_from_indices((0..n).filter(|&b| bc[b].is_empty()));
    let outputs = set_from_indices((0..n).filter(|&a| fc[a].is_empty()));
    Cones {
        fc,
        bc,
        inputs,
        outputs,
    }
}

/// Transitive closure of `a → b` for `T_ba = 1`, with its classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalRelation {
    /// `closure[a][b]` is `a ≺ b`.
    pub closure: BitMatrix,
    pub is_strict_partial_order: bool,
    pub self_loops: Vec<Qubit>,
    /// Strongly connected components that contain a cycle, ordered by
    /// smallest member.
    pub sccs: Vec<QubitSet>,
}

impl TemporalRelation {
    pub fn precedes(&self, a: Qubit, b: Qubit) -> bool {
        self.closure.get(a.index(), b.index())
    }

    /// All pairs `a ≺ b`, row-major.
    pub fn pairs(&self) -> Vec<(Qubit, Qubit)> {
        let n = self.closure.rows();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.closure.get(a, b) {
                    out.push((Qubit::from_index(a), Qubit::from_index(b)));
                }
            }
        }
        out
    }

    /// A measurement order consistent with the relation, preferring the
    /// smallest available qubit. `None` when the relation has a cycle.
    pub fn linear_extension(&self) -> Option<Vec<Qubit>> {
        if !self.is_strict_partial_order {
            return None;
        }
        let n = self.closure.rows();
        let mut placed = alloc::vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next =
                (0..n).find(|&b| !placed[b] && (0..n).all(|a| placed[a] || !self.closure.get(a, b)))?;
            placed[next] = true;
            order.push(Qubit::from_index(next));
        }
        Some(order)
    }

    /// Whether `order` lists every qubit once with `a` before `b` whenever
    /// `a ≺ b`.
    pub fn is_consistent_order(&self, order: &[Qubit]) -> bool {
        let n = self.closure.rows();
        if order.len() != n {
            return false;
        }
        let mut position = alloc::vec![usize::MAX; n];
        for (p, q) in order.iter().enumerate() {
            if q.index() >= n || position[q.index()] != usize::MAX {
                return false;
            }
            position[q.index()] = p;
        }
        (0..n).all(|a| (0..n).all(|b| !self.closure.get(a, b) || position[a] < position[b]))
    }
}

/// Warshall closure of the edge relation `a → b` iff `T_ba = 1`.
pub fn transitive_closure(t: &BitMatrix) -> BitMatrix {
    assert!(t.is_square(), "influence matrix must be square");
    let mut c = t.transpose();
    let n = c.rows();
    for k in 0..n {
        let row_k = c.row(k);
        for a in 0..n {
            if c.get(a, k) {
                let mut row_a = c.row(a);
                row_a.or_assign(&row_k);
                c.set_row(a, &row_a);
            }
        }
    }
    c
}

pub fn temporal_relation(t: &BitMatrix) -> TemporalRelation {
    let closure = transitive_closure(t);
    let n = closure.rows();
    let self_loops = (0..n).filter(|&a| t.get(a, a)).map(Qubit::from_index).collect();
    let mut assigned = alloc::vec![false; n];
    let mut sccs = Vec::new();
    for a in 0..n {
        if assigned[a] || !closure.get(a, a) {
            continue;
        }
        let members: Vec<usize> = (0..n)
            .filter(|&b| b == a || (closure.get(a, b) && closure.get(b, a)))
            .collect();
        for &b in &members {
            assigned[b] = true;
        }
        sccs.push(set_from_indices(members));
    }
    TemporalRelation {
        is_strict_partial_order: closure.diagonal().is_zero(),
        closure,
        self_loops,
        sccs,
    }
}

/// Whether a stabilizer element exists that gauges `a` alone relative to the
/// context sets: `σ_φ` at `a`, identity on `(I ∩ O^c)∖a`, no `σ_s` part on
/// `(I^c ∩ O^c)∖a` and no `σ_φ` part on `(I ∩ O)∖a`.
pub fn can_gauge_individually(g: &GeneratorMatrix, a: Qubit, inputs: &QubitSet, outputs: &QubitSet) -> bool {
    let n = g.n();
    let ai = a.index();
    assert!(ai < n, "qubit {a} out of range");
    let combined = g.combined();
    // (column of (Φ|S), required value)
    let mut constraints: Vec<(usize, bool)> = alloc::vec![(ai, true), (n + ai, false)];
    for j in 0..n {
        if j == ai {
            continue;
        }
        let q = Qubit::from_index(j);
        match (inputs.contains(&q), outputs.contains(&q)) {
            (true, false) => {
                constraints.push((j, false));
                constraints.push((n + j, false));
            }
            (false, false) => constraints.push((n + j, false)),
            (true, true) => constraints.push((j, false)),
            (false, true) => {}
        }
    }
    let cols: Vec<usize> = constraints.iter().map(|&(c, _)| c).collect();
    let system = combined.select_cols(&cols).transpose();
    let rhs = BitMatrix::from_fn(constraints.len(), 1, |r, _| constraints[r].1);
    system.solve(&rhs).is_ok()
}

/// An extremal pair inside the given input/output sets whose influence
/// matrix equals the one those sets induce.
pub fn extremalize(
    g: &GeneratorMatrix,
    inputs: &QubitSet,
    outputs: &QubitSet,
) -> Result<ProcessingRelations, FlowError> {
    let n = g.n();
    check_range(inputs, n)?;
    check_range(outputs, n)?;
    for a in complement_indices(inputs, n) {
        let q = Qubit::from_index(a);
        if can_gauge_individually(g, q, inputs, outputs) {
            return Err(FlowError::GaugeableOutsideInput(q));
        }
    }

    let i_in = indices(inputs);
    let i_out = complement_indices(inputs, n);
    let o_in = indices(outputs);
    let o_out = complement_indices(outputs, n);

    // column order: s on O^c | φ on I | φ on I^c | s on O
    let mut order: Vec<usize> = o_out.iter().map(|&a| n + a).collect();
    order.extend(i_in.iter().copied());
    order.extend(i_out.iter().copied());
    order.extend(o_in.iter().map(|&a| n + a));
    let permuted = g.combined().select_cols(&order);
    let rref = permuted.rref();
    let m = o_out.len();
    if rref.pivots.len() < m || (m > 0 && rref.pivots[m - 1] >= m) {
        return Err(FlowError::NoValidSplit);
    }
    let reduced = &rref.reduced;

    // correction rows must not touch φ on I
    let phi_i = m..m + i_in.len();
    if (0..m).any(|r| phi_i.clone().any(|c| reduced.get(r, c))) {
        return Err(FlowError::NoValidSplit);
    }
    let mut t_expected = BitMatrix::zeros(n, n);
    for (r, &a) in o_out.iter().enumerate() {
        for (ci, &b) in i_out.iter().enumerate() {
            t_expected.set(b, a, reduced.get(r, m + i_in.len() + ci));
        }
    }

    let phi_end = m + i_in.len() + i_out.len();
    let mut igauge = QubitSet::new();
    let mut delta_o = BTreeSet::new();
    for &p in &rref.pivots[m..] {
        if phi_i.contains(&p) {
            igauge.insert(Qubit::from_index(i_in[p - m]));
        } else if p < phi_end {
            // a remaining generator acts like a gauge on a non-input qubit
            return Err(FlowError::NoValidSplit);
        } else {
            delta_o.insert(Qubit::from_index(o_in[p - phi_end]));
        }
    }
    let ocomp: QubitSet = outputs.difference(&delta_o).copied().collect();

    let p = derive_processing(g, &igauge, &ocomp)?;
    assert_eq!(
        p.t, t_expected,
        "extremal pair must reproduce the influence matrix"
    );
    Ok(p)
}

/// Decodes a basis of the column matroid of `(Φ|S)` into its pair.
pub fn pair_from_basis(basis: &[usize], n: usize) -> (QubitSet, QubitSet) {
    let igauge = set_from_indices(basis.iter().copied().filter(|&c| c < n));
    let s_in: BTreeSet<usize> = basis.iter().filter(|&&c| c >= n).map(|&c| c - n).collect();
    let ocomp = set_from_indices((0..n).filter(|a| !s_in.contains(a)));
    (igauge, ocomp)
}

/// Column indices of `(Φ|S)` forming the basis for a pair.
pub fn basis_from_pair(igauge: &QubitSet, ocomp: &QubitSet, n: usize) -> Vec<usize> {
    let mut basis = indices(igauge);
    basis.extend(complement_indices(ocomp, n).into_iter().map(|a| n + a));
    basis
}

/// Above this size the bases are found by walking the basis-exchange graph
/// instead of testing every `n`-subset.
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// All bases of the column matroid of `(Φ|S)`, each as ascending column
/// indices, in lexicographic order.
pub fn matroid_bases(g: &GeneratorMatrix) -> Vec<Vec<usize>> {
    if g.n() <= BRUTE_FORCE_LIMIT {
        matroid_bases_brute_force(g)
    } else {
        matroid_bases_exchange(g)
    }
}

pub fn matroid_bases_brute_force(g: &GeneratorMatrix) -> Vec<Vec<usize>> {
    let n = g.n();
    let combined = g.combined();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn recurse(
        start: usize,
        n: usize,
        combined: &BitMatrix,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == n {
            if combined.select_cols(current).rank() == n {
                out.push(current.clone());
            }
            return;
        }
        let remaining = n - current.len();
        for c in start..=2 * n - remaining {
            current.push(c);
            recurse(c + 1, n, combined, current, out);
            current.pop();
        }
    }
    recurse(0, n, &combined, &mut current, &mut out);
    out
}

/// Depth-first search over the basis-exchange graph: `B - e + f` is a basis
/// iff the entry of `M_B⁻¹ (Φ|S)` at `e`'s row and column `f` is one.
pub fn matroid_bases_exchange(g: &GeneratorMatrix) -> Vec<Vec<usize>> {
    let n = g.n();
    let combined = g.combined();
    let start = combined.rref().pivots;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack = alloc::vec![start.clone()];
    seen.insert(start);
    while let Some(basis) = stack.pop() {
        let inv = combined
            .select_cols(&basis)
            .invert()
            .expect("basis columns are independent");
        let rep = inv.mul(&combined);
        for (row, &e) in basis.iter().enumerate() {
            for f in 0..2 * n {
                if basis.contains(&f) || !rep.get(row, f) {
                    continue;
                }
                let mut next: Vec<usize> = basis.iter().copied().filter(|&c| c != e).collect();
                next.push(f);
                next.sort_unstable();
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Every extremal processing relation, sorted by `(igauge, ocomp)`.
pub fn enumerate_relations(g: &GeneratorMatrix) -> Vec<ProcessingRelations> {
    let n = g.n();
    let mut out: Vec<ProcessingRelations> = matroid_bases(g)
        .iter()
        .map(|basis| {
            let (ig, oc) = pair_from_basis(basis, n);
            derive_processing(g, &ig, &oc).expect("every matroid basis yields a relation")
        })
        .collect();
    out.sort_by(|a, b| (&a.igauge, &a.ocomp).cmp(&(&b.igauge, &b.ocomp)));
    out
}

/// Rebuilds the normal-form generator matrix from `T, H, Z, R`, with
/// planes `[X,Y]` everywhere.
pub fn reconstruct(
    t: &BitMatrix,
    h: &BitMatrix,
    z: &BitMatrix,
    r: &BitMatrix,
) -> Result<GeneratorMatrix, FlowError> {
    let n = t.rows();
    assert!(t.is_square(), "influence matrix must be square");
    assert!(
        h.rows() == n && z.cols() == n && r.rows() == z.rows() && r.cols() == h.cols(),
        "processing matrices have inconsistent shapes"
    );
    let c = cones(t);
    let inputs = indices(&c.inputs);
    let outputs = indices(&c.outputs);

    let rank_h = h.rank();
    let rank_z = z.rank();
    if rank_h != rank_z || rank_h != h.cols() {
        return Err(FlowError::RankMismatch { h: rank_h, z: rank_z });
    }
    if rank_z != z.rows() {
        return Err(FlowError::NotOptimalOutput);
    }

    // H → HΛ with identity rows on the chosen gauge inputs
    let h_rref = h.select_rows(&inputs).transpose().rref();
    if h_rref.rank() != h.cols() {
        return Err(FlowError::RankMismatch {
            h: h_rref.rank(),
            z: rank_z,
        });
    }
    let lambda = h_rref.transform.transpose();
    let h_norm = h.mul(&lambda);
    let r_lambda = r.mul(&lambda);
    let ig: Vec<usize> = h_rref.pivots.iter().map(|&p| inputs[p]).collect();

    // Z → LZ with identity columns on the chosen computational outputs
    let z_rref = z.select_cols(&outputs).rref();
    if z_rref.rank() != z.rows() {
        return Err(FlowError::NotOptimalOutput);
    }
    let z_norm = z_rref.transform.mul(z);
    let r_norm = z_rref.transform.mul(&r_lambda);
    let oc: Vec<usize> = z_rref.pivots.iter().map(|&p| outputs[p]).collect();

    let ocomp = set_from_indices(oc.iter().copied());
    let mut rows: Vec<PauliWord> = Vec::with_capacity(n);
    for a in complement_indices(&ocomp, n) {
        let w = t.column(a);
        let mut v = BitVec::zeros(n);
        v.set(a, true);
        for (j, &o) in oc.iter().enumerate() {
            v.set(o, z_norm.get(j, a));
        }
        rows.push(PauliWord::new(w, v));
    }
    for col in 0..ig.len() {
        let w = h_norm.column(col);
        let mut v = BitVec::zeros(n);
        for (j, &o) in oc.iter().enumerate() {
            v.set(o, r_norm.get(j, col));
        }
        rows.push(PauliWord::new(w, v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !rows[a].commutes_with(&rows[b]) {
                return Err(FlowError::NotCommutingReconstruction);
            }
        }
    }
    GeneratorMatrix::from_words(&rows, alloc::vec![MeasurementPlane::XY; n])
        .map_err(|_| FlowError::NotCommutingReconstruction)
}

/// The square matrix over `I′ | Ω | O′` that folds `g` and `o` into one
/// influence relation: rows `Ω` read `[H T 0]`, rows `O′` read `[R Z 0]`,
/// rows `I′` are zero.
pub fn extended_influence(p: &ProcessingRelations) -> BitMatrix {
    let n = p.n();
    let k = p.igauge.len();
    let m = p.ocomp.len();
    let size = k + n + m;
    let mut ext = BitMatrix::zeros(size, size);
    for b in 0..n {
        for c in 0..k {
            ext.set(k + b, c, p.h.get(b, c));
        }
        for a in 0..n {
            ext.set(k + b, k + a, p.t.get(b, a));
        }
    }
    for j in 0..m {
        for c in 0..k {
            ext.set(k + n + j, c, p.r.get(j, c));
        }
        for a in 0..n {
            ext.set(k + n + j, k + a, p.z.get(j, a));
        }
    }
    ext
}

/// Whether `(z, r)` is the optimal classical output for the pair of `p`:
/// after left-multiplying so that `z` is the identity on `ocomp`, it must
/// match the `σ_s` parts of the correction and gauge operators on `ocomp`.
pub fn check_optimal_output(
    z: &BitMatrix,
    r: &BitMatrix,
    p: &ProcessingRelations,
    g: &GeneratorMatrix,
) -> bool {
    let n = g.n();
    let m = p.ocomp.len();
    if z.rows() != m || z.cols() != n || r.rows() != m || r.cols() != p.igauge.len() {
        return false;
    }
    let Ok(inv) = z.select_cols(&indices(&p.ocomp)).invert() else {
        return false;
    };
    let Ok(nf) = normal_form(g, &p.igauge, &p.ocomp) else {
        return false;
    };
    inv.mul(z) == nf.relations.z && inv.mul(r) == nf.relations.r
}
