//! Pauli operators in the per-qubit `σ_φ / σ_s` binary basis, measurement
//! planes, stabilizer generator matrices and the pattern description.
//!
//! A site letter is encoded relative to the measurement plane at that site:
//! `σ_φ ↦ (1,0)`, `σ_s ↦ (0,1)`, `σ_sφ ↦ (1,1)`, `I ↦ (0,0)`, where the pair
//! is `(w, v)`. All encodings here are phase free.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::gf2::{BitMatrix, BitVec};

/// A 1-based qubit label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Qubit(usize);

/// Qubit sets iterate in ascending label order.
pub type QubitSet = BTreeSet<Qubit>;

impl Qubit {
    /// Panics on label 0.
    pub fn new(label: usize) -> Self {
        assert!(label >= 1, "qubit labels start at 1");
        Qubit(label)
    }

    pub fn from_index(index: usize) -> Self {
        Qubit(index + 1)
    }

    pub fn label(self) -> usize {
        self.0
    }

    /// Zero-based position used by the matrix layer.
    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Builds a qubit set from 1-based labels.
pub fn qubits(labels: &[usize]) -> QubitSet {
    labels.iter().map(|&l| Qubit::new(l)).collect()
}

/// Zero-based indices of a set, ascending.
pub fn indices(set: &QubitSet) -> Vec<usize> {
    set.iter().map(|q| q.index()).collect()
}

/// Zero-based indices of the complement of `set` in `0..n`, ascending.
pub fn complement_indices(set: &QubitSet, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| !set.contains(&Qubit::from_index(i))).collect()
}

pub fn set_from_indices(indices: impl IntoIterator<Item = usize>) -> QubitSet {
    indices.into_iter().map(Qubit::from_index).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Axis> {
        match c {
            'X' => Some(Axis::X),
            'Y' => Some(Axis::Y),
            'Z' => Some(Axis::Z),
            _ => None,
        }
    }

    /// The axis different from both `a` and `b` (which must differ).
    pub fn third(a: Axis, b: Axis) -> Axis {
        debug_assert_ne!(a, b);
        Axis::ALL
            .into_iter()
            .find(|&x| x != a && x != b)
            .expect("three axes")
    }
}

/// A single-site Pauli letter including the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    P(Axis),
}

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' => Some(Letter::I),
            c => Axis::from_letter(c).map(Letter::P),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::P(a) => a.letter(),
        }
    }
}

/// The ordered pair `[σ_φ, σ_sφ]` at one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MeasurementPlane {
    phi: Axis,
    sphi: Axis,
}

impl Default for MeasurementPlane {
    fn default() -> Self {
        MeasurementPlane::XY
    }
}

impl MeasurementPlane {
    pub const XY: MeasurementPlane = MeasurementPlane {
        phi: Axis::X,
        sphi: Axis::Y,
    };

    pub fn new(phi: Axis, sphi: Axis) -> Result<Self, StabilizerError> {
        if phi == sphi {
            return Err(StabilizerError::DegeneratePlane(phi));
        }
        Ok(MeasurementPlane { phi, sphi })
    }

    pub fn phi_axis(self) -> Axis {
        self.phi
    }

    pub fn sphi_axis(self) -> Axis {
        self.sphi
    }

    /// The remaining axis, `σ_s = i σ_sφ σ_φ` up to sign.
    pub fn s_axis(self) -> Axis {
        Axis::third(self.phi, self.sphi)
    }

    /// `(w, v)` of a letter in this plane's basis.
    pub fn encode(self, letter: Letter) -> (bool, bool) {
        match letter {
            Letter::I => (false, false),
            Letter::P(a) if a == self.phi => (true, false),
            Letter::P(a) if a == self.sphi => (true, true),
            Letter::P(_) => (false, true),
        }
    }

    pub fn decode(self, w: bool, v: bool) -> Letter {
        match (w, v) {
            (false, false) => Letter::I,
            (true, false) => Letter::P(self.phi),
            (true, true) => Letter::P(self.sphi),
            (false, true) => Letter::P(self.s_axis()),
        }
    }

    /// `σ_φ ↔ σ_sφ`.
    pub fn flipped(self) -> Self {
        MeasurementPlane {
            phi: self.sphi,
            sphi: self.phi,
        }
    }

    /// `σ_s ↔ σ_sφ`, keeping `σ_φ`.
    pub fn replanted(self) -> Self {
        MeasurementPlane {
            phi: self.phi,
            sphi: self.s_axis(),
        }
    }
}

impl fmt::Display for MeasurementPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.phi.letter(), self.sphi.letter())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StabilizerError {
    /// Generators `a` and `b` (1-based) anticommute.
    NotCommuting(usize, usize),
    NotFullRank {
        rank: usize,
        n: usize,
    },
    DegeneratePlane(Axis),
    /// Expected `expected` generator words, got `found`.
    WrongWordCount {
        expected: usize,
        found: usize,
    },
    /// Generator `index` (1-based) has the wrong length.
    WrongWordLength {
        index: usize,
        len: usize,
        n: usize,
    },
    InvalidLetter {
        index: usize,
        letter: char,
    },
    QubitOutOfRange {
        label: usize,
        n: usize,
    },
    SelfEdge(usize),
    PlaneCount {
        expected: usize,
        found: usize,
    },
    AngleOutOfRange {
        qubit: usize,
        angle: f64,
    },
    NotInStabilizer,
}

impl fmt::Display for StabilizerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilizerError::NotCommuting(a, b) => {
                write!(f, "generators {a} and {b} do not commute")
            }
            StabilizerError::NotFullRank { rank, n } => {
                write!(f, "generators have rank {rank}, expected {n}")
            }
            StabilizerError::DegeneratePlane(a) => {
                write!(
                    f,
                    "measurement plane needs two distinct axes, got {}{}",
                    a.letter(),
                    a.letter()
                )
            }
            StabilizerError::WrongWordCount { expected, found } => {
                write!(f, "expected {expected} generator words, found {found}")
            }
            StabilizerError::WrongWordLength { index, len, n } => {
                write!(f, "generator {index} has length {len}, expected {n}")
            }
            StabilizerError::InvalidLetter { index, letter } => {
                write!(f, "generator {index} contains invalid letter {letter:?}")
            }
            StabilizerError::QubitOutOfRange { label, n } => {
                write!(f, "qubit {label} outside 1..={n}")
            }
            StabilizerError::SelfEdge(a) => write!(f, "self edge at qubit {a}"),
            StabilizerError::PlaneCount { expected, found } => {
                write!(f, "expected {expected} measurement planes, found {found}")
            }
            StabilizerError::AngleOutOfRange { qubit, angle } => {
                write!(f, "angle {angle} at qubit {qubit} outside [-pi/2, pi/2)")
            }
            StabilizerError::NotInStabilizer => {
                f.write_str("operator is not an element of the stabilizer group")
            }
        }
    }
}

impl core::error::Error for StabilizerError {}

/// A phase-free Pauli operator `⊗ (σ_s)^{v_a} (σ_φ)^{w_a}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliWord {
    pub w: BitVec,
    pub v: BitVec,
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        PauliWord {
            w: BitVec::zeros(n),
            v: BitVec::zeros(n),
        }
    }

    pub fn new(w: BitVec, v: BitVec) -> Self {
        assert_eq!(w.len(), v.len(), "w and v lengths differ");
        PauliWord { w, v }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_zero() && self.v.is_zero()
    }

    pub fn site(&self, index: usize) -> (bool, bool) {
        (self.w.get(index), self.v.get(index))
    }

    /// Product up to phase.
    pub fn multiply(&self, other: &PauliWord) -> PauliWord {
        assert_eq!(self.len(), other.len(), "word lengths differ");
        PauliWord {
            w: self.w.xor(&other.w),
            v: self.v.xor(&other.v),
        }
    }

    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        self.w.dot(&other.v) == self.v.dot(&other.w)
    }

    /// Concrete letters given per-site planes.
    pub fn to_letters(&self, planes: &[MeasurementPlane]) -> String {
        (0..self.len())
            .map(|a| planes[a].decode(self.w.get(a), self.v.get(a)).to_char())
            .collect()
    }

    pub fn from_letters(word: &str, planes: &[MeasurementPlane]) -> Result<Self, StabilizerError> {
        let n = planes.len();
        let chars: Vec<char> = word.chars().collect();
        if chars.len() != n {
            return Err(StabilizerError::WrongWordLength {
                index: 1,
                len: chars.len(),
                n,
            });
        }
        let mut out = PauliWord::identity(n);
        for (a, &c) in chars.iter().enumerate() {
            let letter =
                Letter::from_char(c).ok_or(StabilizerError::InvalidLetter { index: 1, letter: c })?;
            let (w, v) = planes[a].encode(letter);
            out.w.set(a, w);
            out.v.set(a, v);
        }
        Ok(out)
    }
}

/// The stabilizer generator matrix `(Φ | S)` in the `σ_φ/σ_s` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    phi: BitMatrix,
    s: BitMatrix,
    planes: Vec<MeasurementPlane>,
}

impl GeneratorMatrix {
    /// Wraps the two blocks and validates the stabilizer axioms.
    pub fn new(phi: BitMatrix, s: BitMatrix, planes: Vec<MeasurementPlane>) -> Result<Self, StabilizerError> {
        let g = GeneratorMatrix::new_unchecked(phi, s, planes)?;
        g.check_valid()?;
        Ok(g)
    }

    /// Wraps the blocks, only checking shapes.
    pub fn new_unchecked(
        phi: BitMatrix,
        s: BitMatrix,
        planes: Vec<MeasurementPlane>,
    ) -> Result<Self, StabilizerError> {
        let n = planes.len();
        assert!(
            phi.rows() == n && phi.cols() == n && s.rows() == n && s.cols() == n,
            "generator blocks must be {n}x{n}"
        );
        Ok(GeneratorMatrix { phi, s, planes })
    }

    pub fn from_words(words: &[PauliWord], planes: Vec<MeasurementPlane>) -> Result<Self, StabilizerError> {
        let n = planes.len();
        if words.len() != n {
            return Err(StabilizerError::WrongWordCount {
                expected: n,
                found: words.len(),
            });
        }
        let mut phi = BitMatrix::zeros(n, n);
        let mut s = BitMatrix::zeros(n, n);
        for (r, word) in words.iter().enumerate() {
            phi.set_row(r, &word.w);
            s.set_row(r, &word.v);
        }
        GeneratorMatrix::new(phi, s, planes)
    }

    /// Generators given as letter strings over `{I,X,Y,Z}`.
    pub fn from_letters<S: AsRef<str>>(
        words: &[S],
        planes: &[MeasurementPlane],
    ) -> Result<Self, StabilizerError> {
        let n = planes.len();
        if words.len() != n {
            return Err(StabilizerError::WrongWordCount {
                expected: n,
                found: words.len(),
            });
        }
        let mut phi = BitMatrix::zeros(n, n);
        let mut s = BitMatrix::zeros(n, n);
        for (r, word) in words.iter().enumerate() {
            let chars: Vec<char> = word.as_ref().chars().collect();
            if chars.len() != n {
                return Err(StabilizerError::WrongWordLength {
                    index: r + 1,
                    len: chars.len(),
                    n,
                });
            }
            for (a, &c) in chars.iter().enumerate() {
                let letter = Letter::from_char(c).ok_or(StabilizerError::InvalidLetter {
                    index: r + 1,
                    letter: c,
                })?;
                let (w, v) = planes[a].encode(letter);
                phi.set(r, a, w);
                s.set(r, a, v);
            }
        }
        GeneratorMatrix::new(phi, s, planes.to_vec())
    }

    /// Graph state generators `K_a = X_a ⊗ Z_{N(a)}` on qubits `1..=n`.
    pub fn graph_state(
        edges: &[(Qubit, Qubit)],
        n: usize,
        planes: &[MeasurementPlane],
    ) -> Result<Self, StabilizerError> {
        if planes.len() != n {
            return Err(StabilizerError::PlaneCount {
                expected: n,
                found: planes.len(),
            });
        }
        let mut adjacency = BitMatrix::zeros(n, n);
        for &(a, b) in edges {
            for q in [a, b] {
                if q.label() > n {
                    return Err(StabilizerError::QubitOutOfRange { label: q.label(), n });
                }
            }
            if a == b {
                return Err(StabilizerError::SelfEdge(a.label()));
            }
            adjacency.set(a.index(), b.index(), true);
            adjacency.set(b.index(), a.index(), true);
        }
        let mut phi = BitMatrix::zeros(n, n);
        let mut s = BitMatrix::zeros(n, n);
        for r in 0..n {
            for a in 0..n {
                let letter = if a == r {
                    Letter::P(Axis::X)
                } else if adjacency.get(r, a) {
                    Letter::P(Axis::Z)
                } else {
                    Letter::I
                };
                let (w, v) = planes[a].encode(letter);
                phi.set(r, a, w);
                s.set(r, a, v);
            }
        }
        GeneratorMatrix::new(phi, s, planes.to_vec())
    }

    pub fn n(&self) -> usize {
        self.planes.len()
    }

    pub fn phi(&self) -> &BitMatrix {
        &self.phi
    }

    pub fn s(&self) -> &BitMatrix {
        &self.s
    }

    pub fn planes(&self) -> &[MeasurementPlane] {
        &self.planes
    }

    /// `(Φ | S)` as one `n × 2n` matrix.
    pub fn combined(&self) -> BitMatrix {
        self.phi.hstack(&self.s)
    }

    /// Generator `row` (zero-based).
    pub fn generator(&self, row: usize) -> PauliWord {
        PauliWord::new(self.phi.row(row), self.s.row(row))
    }

    pub fn generators(&self) -> Vec<PauliWord> {
        (0..self.n()).map(|r| self.generator(r)).collect()
    }

    /// Symplectic commutation and full rank.
    pub fn check_valid(&self) -> Result<(), StabilizerError> {
        let n = self.n();
        let gens = self.generators();
        for a in 0..n {
            for b in a + 1..n {
                if !gens[a].commutes_with(&gens[b]) {
                    return Err(StabilizerError::NotCommuting(a + 1, b + 1));
                }
            }
        }
        let rank = self.combined().rank();
        if rank != n {
            return Err(StabilizerError::NotFullRank { rank, n });
        }
        Ok(())
    }

    /// Generator rows as letter strings.
    pub fn to_letters(&self) -> Vec<String> {
        self.generators()
            .iter()
            .map(|g| g.to_letters(&self.planes))
            .collect()
    }

    /// Whether `word` is in the stabilizer group (up to phase).
    pub fn contains(&self, word: &PauliWord) -> bool {
        self.combination_of(word).is_some()
    }

    /// Coefficients over the generator rows that produce `word`, if any.
    pub fn combination_of(&self, word: &PauliWord) -> Option<BitVec> {
        let n = self.n();
        let mut target = BitVec::zeros(2 * n);
        for a in 0..n {
            target.set(a, word.w.get(a));
            target.set(n + a, word.v.get(a));
        }
        self.combined().row_combination(&target)
    }

    /// Product of the generators selected by `coefficients`.
    pub fn element(&self, coefficients: &BitVec) -> PauliWord {
        let mut out = PauliWord::identity(self.n());
        for r in coefficients.ones() {
            out = out.multiply(&self.generator(r));
        }
        out
    }

    /// Every one of the `2^n` group elements, indexed by generator subset mask.
    pub fn elements(&self) -> Vec<PauliWord> {
        let n = self.n();
        assert!(n < 24, "group enumeration is exponential");
        (0u32..1 << n)
            .map(|mask| self.element(&BitVec::from_indices(n, (0..n).filter(|r| mask >> r & 1 == 1))))
            .collect()
    }

    /// Same row space, i.e. same stabilizer group for the same planes.
    pub fn same_group(&self, other: &GeneratorMatrix) -> bool {
        self.combined().same_row_space(&other.combined())
    }

    /// Re-expresses the generators after swapping `σ_φ ↔ σ_sφ` at `q`.
    /// The concrete Pauli group is unchanged; only the encoding moves.
    pub fn flip_plane(&self, q: Qubit) -> GeneratorMatrix {
        let a = q.index();
        let mut out = self.clone();
        // φ (1,0) ↔ sφ (1,1): v ^= w
        for r in 0..self.n() {
            if self.phi.get(r, a) {
                out.s.toggle(r, a);
            }
        }
        out.planes[a] = self.planes[a].flipped();
        out
    }

    /// Re-expresses the generators after swapping `σ_s ↔ σ_sφ` at `q`.
    pub fn replant(&self, q: Qubit) -> GeneratorMatrix {
        let a = q.index();
        let mut out = self.clone();
        // s (0,1) ↔ sφ (1,1): w ^= v
        for r in 0..self.n() {
            if self.s.get(r, a) {
                out.phi.toggle(r, a);
            }
        }
        out.planes[a] = self.planes[a].replanted();
        out
    }

    /// Generators replaced by `transform · (Φ|S)` (a change of basis).
    pub fn with_rows(&self, transform: &BitMatrix) -> GeneratorMatrix {
        GeneratorMatrix {
            phi: transform.mul(&self.phi),
            s: transform.mul(&self.s),
            planes: self.planes.clone(),
        }
    }
}

/// Where the resource stabilizer comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Graph(Vec<(Qubit, Qubit)>),
    Words(Vec<String>),
}

/// A measurement pattern: resource state, planes, angles and optional
/// declared boundary sets.
#[derive(Clone, Debug, PartialEq)]
pub struct Pattern {
    pub n: usize,
    pub source: Source,
    pub planes: Vec<MeasurementPlane>,
    pub angles: Vec<f64>,
    pub declared_igauge: Option<QubitSet>,
    pub declared_ocomp: Option<QubitSet>,
}

/// Lower end of the angle range, inclusive.
pub const ANGLE_MIN: f64 = -core::f64::consts::FRAC_PI_2;
/// Upper end of the angle range, exclusive.
pub const ANGLE_MAX: f64 = core::f64::consts::FRAC_PI_2;

impl Pattern {
    /// Graph pattern with default planes and zero angles.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Self {
        Pattern {
            n,
            source: Source::Graph(
                edges
                    .iter()
                    .map(|&(a, b)| (Qubit::new(a), Qubit::new(b)))
                    .collect(),
            ),
            planes: alloc::vec![MeasurementPlane::XY; n],
            angles: alloc::vec![0.0; n],
            declared_igauge: None,
            declared_ocomp: None,
        }
    }

    /// Pattern from generator letter strings with default planes.
    pub fn words<S: AsRef<str>>(words: &[S]) -> Self {
        let n = words.len();
        Pattern {
            n,
            source: Source::Words(words.iter().map(|w| String::from(w.as_ref())).collect()),
            planes: alloc::vec![MeasurementPlane::XY; n],
            angles: alloc::vec![0.0; n],
            declared_igauge: None,
            declared_ocomp: None,
        }
    }

    pub fn validate_angles(&self) -> Result<(), StabilizerError> {
        for (a, &angle) in self.angles.iter().enumerate() {
            if !(ANGLE_MIN..ANGLE_MAX).contains(&angle) {
                return Err(StabilizerError::AngleOutOfRange { qubit: a + 1, angle });
            }
        }
        Ok(())
    }

    pub fn generator_matrix(&self) -> Result<GeneratorMatrix, StabilizerError> {
        if self.planes.len() != self.n {
            return Err(StabilizerError::PlaneCount {
                expected: self.n,
                found: self.planes.len(),
            });
        }
        match &self.source {
            Source::Graph(edges) => GeneratorMatrix::graph_state(edges, self.n, &self.planes),
            Source::Words(words) => GeneratorMatrix::from_letters(words, &self.planes),
        }
    }
}
