//! Gauge transformations acting on `(s, q, g)`, plane flips and the modified
//! local complementation acting on influence matrices, and orbits under the
//! latter.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::flow::{transitive_closure, ProcessingRelations};
use crate::gf2::{BitMatrix, BitVec};
use crate::stabilizer::{indices, set_from_indices, GeneratorMatrix, PauliWord, Qubit, QubitSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformError {
    NotInStabilizer,
    /// `T_aa = 1`; the plane flip cannot be solved for `q`.
    SelfLoopAtQubit(Qubit),
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::NotInStabilizer => {
                f.write_str("operator is not an element of the stabilizer group")
            }
            TransformError::SelfLoopAtQubit(q) => {
                write!(f, "qubit {q} has a self-loop; break it before flipping its plane")
            }
        }
    }
}

impl core::error::Error for TransformError {}

/// The shifts a stabilizer element `K` induces on outcomes, basis
/// parameters and gauge bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeAction {
    pub delta_s: BitVec,
    pub delta_q: BitVec,
    pub delta_g: BitVec,
}

pub fn gauge_action(
    g: &GeneratorMatrix,
    k: &PauliWord,
    igauge: &QubitSet,
) -> Result<GaugeAction, TransformError> {
    if !g.contains(k) {
        return Err(TransformError::NotInStabilizer);
    }
    Ok(GaugeAction {
        delta_s: k.v.clone(),
        delta_q: k.w.clone(),
        delta_g: k.w.restrict(&indices(igauge)),
    })
}

/// Outcome of checking one stabilizer element against the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementCheck {
    /// `w == T v + H w|_igauge`.
    pub adaptation: bool,
    /// Per output bit: `(Z v + R w|_igauge)_j == 0`.
    pub outputs: Vec<bool>,
}

impl ElementCheck {
    pub fn passes(&self) -> bool {
        self.adaptation && self.outputs.iter().all(|&ok| ok)
    }
}

/// Per-generator invariance of the adaptation and output relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub generators: Vec<ElementCheck>,
}

impl InvarianceReport {
    pub fn all_pass(&self) -> bool {
        self.generators.iter().all(ElementCheck::passes)
    }

    /// 1-based generator indices that fail.
    pub fn failing(&self) -> Vec<usize> {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.passes())
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Whether output bit `j` (zero-based) survives every generator.
    pub fn output_invariant(&self, j: usize) -> bool {
        self.generators.iter().all(|c| c.outputs[j])
    }
}

pub fn check_element(p: &ProcessingRelations, k: &PauliWord) -> ElementCheck {
    let wg = k.w.restrict(&indices(&p.igauge));
    let predicted = p.t.mul_vec(&k.v).xor(&p.h.mul_vec(&wg));
    let out = p.z.mul_vec(&k.v).xor(&p.r.mul_vec(&wg));
    ElementCheck {
        adaptation: predicted == k.w,
        outputs: (0..out.len()).map(|j| !out.get(j)).collect(),
    }
}

pub fn check_invariance(p: &ProcessingRelations, g: &GeneratorMatrix) -> InvarianceReport {
    InvarianceReport {
        generators: g.generators().iter().map(|k| check_element(p, k)).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputClass {
    DeterministicCapable,
    GuaranteedRandom,
}

impl OutputClass {
    pub fn keyword(self) -> &'static str {
        match self {
            OutputClass::DeterministicCapable => "deterministic-capable",
            OutputClass::GuaranteedRandom => "guaranteed-random",
        }
    }
}

/// Classifies the output bit `o = z·s + r·g`: it is uniformly random
/// whenever some generator flips it. If every flipping element also moves
/// `g`, the uniformity holds for a uniformly random gauge choice.
pub fn classify_output_bit(
    z: &BitVec,
    r: &BitVec,
    p: &ProcessingRelations,
    g: &GeneratorMatrix,
) -> OutputClass {
    let ig = indices(&p.igauge);
    let flipped = g
        .generators()
        .iter()
        .any(|k| z.dot(&k.v) != r.dot(&k.w.restrict(&ig)));
    if flipped {
        OutputClass::GuaranteedRandom
    } else {
        OutputClass::DeterministicCapable
    }
}

/// `M + col · rowᵀ`.
fn rank_one_update(m: &BitMatrix, col: &BitVec, row: &BitVec) -> BitMatrix {
    let mut out = m.clone();
    for r in col.ones() {
        let mut updated = out.row(r);
        updated.xor_assign(row);
        out.set_row(r, &updated);
    }
    out
}

/// Relations after exchanging `σ_φ ↔ σ_sφ` at `a`.
pub fn flip_plane(p: &ProcessingRelations, a: Qubit) -> Result<ProcessingRelations, TransformError> {
    let ai = a.index();
    if p.t.get(ai, ai) {
        return Err(TransformError::SelfLoopAtQubit(a));
    }
    let t_col = p.t.column(ai);
    let z_col = p.z.column(ai);
    let t_row = p.t.row(ai);
    let h_row = p.h.row(ai);
    Ok(ProcessingRelations {
        t: rank_one_update(&p.t, &t_col, &t_row),
        h: rank_one_update(&p.h, &t_col, &h_row),
        z: rank_one_update(&p.z, &z_col, &t_row),
        r: rank_one_update(&p.r, &z_col, &h_row),
        igauge: p.igauge.clone(),
        ocomp: p.ocomp.clone(),
    })
}

/// The flip rule applied directly to an extended influence matrix;
/// `index` is zero-based into its rows.
pub fn flip_ext(t_ext: &BitMatrix, index: usize) -> Result<BitMatrix, TransformError> {
    if t_ext.get(index, index) {
        return Err(TransformError::SelfLoopAtQubit(Qubit::from_index(index)));
    }
    Ok(rank_one_update(t_ext, &t_ext.column(index), &t_ext.row(index)))
}

/// Measurement angle after a plane flip: `offset + sign·φ`.
///
/// With the flipped plane the new observable is `(−1)^q` times the old one,
/// which is exactly what the outcome relabeling `s = s′ + q` assumes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleMap {
    pub sign: f64,
    pub offset: f64,
}

pub const FLIP_ANGLE_MAP: AngleMap = AngleMap {
    sign: -1.0,
    offset: core::f64::consts::FRAC_PI_2,
};

impl AngleMap {
    pub fn apply(self, phi: f64) -> f64 {
        self.offset + self.sign * phi
    }
}

/// Modified local complementation at `i`: the flip update with the diagonal
/// cancelled. Returns the new matrix and the qubits `fc(i) ∩ bc(i)` whose
/// `σ_s ↔ σ_sφ` exchange realizes the cancellation.
pub fn local_comp(t: &BitMatrix, i: Qubit) -> Result<(BitMatrix, QubitSet), TransformError> {
    let n = t.rows();
    if let Some(d) = (0..n).find(|&d| t.get(d, d)) {
        return Err(TransformError::SelfLoopAtQubit(Qubit::from_index(d)));
    }
    let ii = i.index();
    let col = t.column(ii);
    let row = t.row(ii);
    let mut out = rank_one_update(t, &col, &row);
    let mut replanted = QubitSet::new();
    for b in 0..n {
        if out.get(b, b) {
            out.set(b, b, false);
            replanted.insert(Qubit::from_index(b));
        }
    }
    Ok((out, replanted))
}

/// Orbit of an influence matrix under local complementation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted by row-major bit string.
    pub elements: Vec<BitMatrix>,
    /// `generators[i][e]` is the index of `τ̃[i+1]` applied to element `e`.
    pub generators: Vec<Vec<usize>>,
    /// The transitive closure all elements share.
    pub closure: BitMatrix,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `P[i]` as a permutation matrix with `P[f][e] = 1` iff `τ̃[i] e = f`.
    pub fn permutation_matrix(&self, i: Qubit) -> BitMatrix {
        let perm = &self.generators[i.index()];
        BitMatrix::from_fn(self.len(), self.len(), |f, e| perm[e] == f)
    }
}

fn row_major_key(m: &BitMatrix) -> Vec<bool> {
    let mut key = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            key.push(m.get(r, c));
        }
    }
    key
}

pub fn orbit(t: &BitMatrix) -> Result<Orbit, TransformError> {
    let n = t.rows();
    let mut seen: BTreeMap<Vec<bool>, BitMatrix> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(row_major_key(t), t.clone());
    queue.push_back(t.clone());
    while let Some(m) = queue.pop_front() {
        for i in 0..n {
            let (next, _) = local_comp(&m, Qubit::from_index(i))?;
            let key = row_major_key(&next);
            if let Entry::Vacant(slot) = seen.entry(key) {
                slot.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let position: BTreeMap<&Vec<bool>, usize> = seen.keys().enumerate().map(|(p, k)| (k, p)).collect();
    let elements: Vec<BitMatrix> = seen.values().cloned().collect();
    let generators = (0..n)
        .map(|i| {
            elements
                .iter()
                .map(|m| {
                    let (next, _) = local_comp(m, Qubit::from_index(i)).expect("zero diagonal");
                    position[&row_major_key(&next)]
                })
                .collect()
        })
        .collect();
    let closure = transitive_closure(t);
    assert!(
        elements.iter().all(|m| transitive_closure(m) == closure),
        "local complementation must preserve the temporal relation"
    );
    Ok(Orbit {
        elements,
        generators,
        closure,
    })
}

/// Qubits whose plane a local complementation at `i` replants, as a set.
pub fn replanted_set(t: &BitMatrix, i: Qubit) -> QubitSet {
    let ii = i.index();
    set_from_indices((0..t.rows()).filter(|&b| b != ii && t.get(b, ii) && t.get(ii, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{derive_processing, extended_influence};
    use crate::stabilizer::{qubits, MeasurementPlane};
    use alloc::vec;

    fn cluster() -> GeneratorMatrix {
        GeneratorMatrix::from_letters(&["XZI", "ZXZ", "IZX"], &[MeasurementPlane::XY; 3]).unwrap()
    }

    fn cluster_relations() -> ProcessingRelations {
        derive_processing(&cluster(), &qubits(&[1]), &qubits(&[3])).unwrap()
    }

    fn cluster_t() -> BitMatrix {
        BitMatrix::from_rows(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    }

    #[test]
    fn gauge_actions() {
        let g = cluster();
        let ig = qubits(&[1]);
        let a1 = gauge_action(&g, &g.generator(0), &ig).unwrap();
        assert_eq!(a1.delta_q, BitVec::from_bools(&[true, false, false]));
        assert_eq!(a1.delta_s, BitVec::from_bools(&[false, true, false]));
        assert_eq!(a1.delta_g, BitVec::from_bools(&[true]));
        let a2 = gauge_action(&g, &g.generator(1), &ig).unwrap();
        assert_eq!(a2.delta_q, BitVec::from_bools(&[false, true, false]));
        assert_eq!(a2.delta_s, BitVec::from_bools(&[true, false, true]));
        assert_eq!(a2.delta_g, BitVec::from_bools(&[false]));
        let id = gauge_action(&g, &PauliWord::identity(3), &ig).unwrap();
        assert!(id.delta_q.is_zero() && id.delta_s.is_zero() && id.delta_g.is_zero());

        let stray = PauliWord::from_letters("XII", g.planes()).unwrap();
        assert_eq!(
            gauge_action(&g, &stray, &ig),
            Err(TransformError::NotInStabilizer)
        );
    }

    #[test]
    fn invariance_cluster() {
        let g = cluster();
        let p = cluster_relations();
        assert!(check_invariance(&p, &g).all_pass());

        let mut no_h = p.clone();
        no_h.h = BitMatrix::zeros(3, 1);
        let report = check_invariance(&no_h, &g);
        assert_eq!(report.failing(), vec![1]);

        let mut single = p.clone();
        single.z = BitMatrix::from_rows(&[[0, 1, 0]]);
        let report = check_invariance(&single, &g);
        assert!(!report.generators[0].outputs[0]);
    }

    #[test]
    fn output_classes() {
        let g = cluster();
        let p = cluster_relations();
        let r = BitVec::zeros(1);
        let s13 = BitVec::from_bools(&[true, false, true]);
        let s2 = BitVec::from_bools(&[false, true, false]);
        assert_eq!(
            classify_output_bit(&s13, &r, &p, &g),
            OutputClass::DeterministicCapable
        );
        assert_eq!(
            classify_output_bit(&s2, &r, &p, &g),
            OutputClass::GuaranteedRandom
        );
        assert_eq!(
            classify_output_bit(&BitVec::zeros(3), &r, &p, &g),
            OutputClass::DeterministicCapable
        );
    }

    #[test]
    fn flip_examples() {
        let p = cluster_relations();
        let f2 = flip_plane(&p, Qubit::new(2)).unwrap();
        let mut expected = cluster_t();
        expected.set(2, 0, true);
        assert_eq!(f2.t, expected);
        assert_eq!(flip_plane(&f2, Qubit::new(2)).unwrap(), p);

        // T e_3 = 0 leaves T and H alone; the output picks up q_3 = s_2 + g
        let f3 = flip_plane(&p, Qubit::new(3)).unwrap();
        assert_eq!((&f3.t, &f3.h), (&p.t, &p.h));
        assert_eq!(f3.z, BitMatrix::from_rows(&[[1, 1, 1]]));
        assert_eq!(f3.r, BitMatrix::from_rows(&[[1]]));

        let mut looped = p.clone();
        looped.t.set(1, 1, true);
        assert_eq!(
            flip_plane(&looped, Qubit::new(2)),
            Err(TransformError::SelfLoopAtQubit(Qubit::new(2)))
        );
    }

    #[test]
    fn flip_agrees_with_rederivation() {
        let g = cluster();
        let p = cluster_relations();
        for a in 1..=3 {
            let q = Qubit::new(a);
            let flipped = flip_plane(&p, q).unwrap();
            let rederived = derive_processing(&g.flip_plane(q), &p.igauge, &p.ocomp).unwrap();
            assert_eq!(flipped, rederived);
        }
    }

    #[test]
    fn flip_ext_matches() {
        let p = cluster_relations();
        let ext = extended_influence(&p);
        let k = p.igauge.len();
        let f = flip_ext(&ext, k + 1).unwrap();
        assert_eq!(f, extended_influence(&flip_plane(&p, Qubit::new(2)).unwrap()));
        assert_eq!(flip_ext(&f, k + 1).unwrap(), ext);
        let last = ext.rows() - 1;
        assert_eq!(flip_ext(&ext, last).unwrap(), ext);
    }

    #[test]
    fn local_comp_examples() {
        let two = BitMatrix::from_rows(&[[0, 1], [1, 0]]);
        let (t, rep) = local_comp(&two, Qubit::new(1)).unwrap();
        assert_eq!(t, two);
        assert_eq!(rep, qubits(&[2]));

        let (t, rep) = local_comp(&cluster_t(), Qubit::new(2)).unwrap();
        let mut expected = cluster_t();
        expected.set(2, 0, true);
        assert_eq!(t, expected);
        assert!(rep.is_empty());

        let (t, _) = local_comp(&BitMatrix::zeros(3, 3), Qubit::new(2)).unwrap();
        assert!(t.is_zero());
        assert_eq!(replanted_set(&two, Qubit::new(1)), qubits(&[2]));
    }

    #[test]
    fn orbit_examples() {
        let o = orbit(&cluster_t()).unwrap();
        assert_eq!(o.len(), 2);
        let mut plus = cluster_t();
        plus.set(2, 0, true);
        assert_eq!(o.elements, vec![cluster_t(), plus]);
        assert_eq!(o.generators[0], vec![0, 1]);
        assert_eq!(o.generators[1], vec![1, 0]);
        assert_eq!(o.generators[2], vec![0, 1]);

        let zero = orbit(&BitMatrix::zeros(3, 3)).unwrap();
        assert_eq!(zero.len(), 1);
        let two = orbit(&BitMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap();
        assert_eq!(two.len(), 1);
    }

    #[test]
    fn angle_map() {
        assert!((FLIP_ANGLE_MAP.apply(0.3) - (core::f64::consts::FRAC_PI_2 - 0.3)).abs() < 1e-15);
    }
}
