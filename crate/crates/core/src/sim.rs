//! Exact state-vector simulation of adaptive measurement patterns.
//!
//! Qubit `a` is bit `a-1` of the basis-state index. Every branch of
//! outcomes is enumerated, so distributions are exact up to floating point.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::flow::{temporal_relation, ProcessingRelations};
use crate::gf2::BitVec;
use crate::stabilizer::{Axis, GeneratorMatrix, Letter, MeasurementPlane, PauliWord, Qubit};

/// Largest resource state the simulator accepts.
pub const MAX_QUBITS: usize = 14;
/// Branches below this probability are dropped.
pub const PRUNE: f64 = 1e-14;
/// Tolerance for comparing distributions.
pub const TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub enum SimError {
    SizeGuard {
        n: usize,
    },
    /// The influence relation has a cycle.
    NotRunnable,
    OrderInconsistent,
    ZeroSuccessProbability,
    AngleCount {
        expected: usize,
        found: usize,
    },
    GaugeLength {
        expected: usize,
        found: usize,
    },
    PostselectOutOfRange(usize),
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::SizeGuard { n } => {
                write!(f, "{n} qubits exceed the simulator limit of {MAX_QUBITS}")
            }
            SimError::NotRunnable => f.write_str("relation has a closed time-like curve"),
            SimError::OrderInconsistent => {
                f.write_str("measurement order is inconsistent with the temporal relation")
            }
            SimError::ZeroSuccessProbability => f.write_str("post-selected event has probability 0"),
            SimError::AngleCount { expected, found } => {
                write!(f, "expected {expected} angles, found {found}")
            }
            SimError::GaugeLength { expected, found } => {
                write!(f, "expected {expected} gauge bits, found {found}")
            }
            SimError::PostselectOutOfRange(j) => write!(f, "output bit {} out of range", j + 1),
        }
    }
}

impl core::error::Error for SimError {}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub n: usize,
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn scale(&mut self, factor: f64) {
        for a in &mut self.amplitudes {
            *a *= factor;
        }
    }

    fn normalize(&mut self) {
        let norm = libm::sqrt(self.norm_sqr());
        self.scale(1.0 / norm);
    }

    /// `|⟨self|other⟩|`.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        modulus(
            self.amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a.conj() * b)
                .sum(),
        )
    }
}

fn modulus(z: Complex64) -> f64 {
    libm::sqrt(z.norm_sqr())
}

fn axis_of(letter: Letter) -> Option<Axis> {
    match letter {
        Letter::I => None,
        Letter::P(a) => Some(a),
    }
}

/// `K|ψ⟩` for a Hermitian Pauli word with sign `+1`.
pub fn apply_pauli(state: &StateVector, word: &PauliWord, planes: &[MeasurementPlane]) -> StateVector {
    let n = state.n;
    let mut xmask = 0usize;
    let mut zmask = 0usize;
    let mut ys = 0u32;
    for (a, plane) in planes.iter().enumerate().take(n) {
        let (w, v) = word.site(a);
        match axis_of(plane.decode(w, v)) {
            Some(Axis::X) => xmask |= 1 << a,
            Some(Axis::Y) => {
                xmask |= 1 << a;
                zmask |= 1 << a;
                ys += 1;
            }
            Some(Axis::Z) => zmask |= 1 << a,
            None => {}
        }
    }
    // Y = i X Z
    let global = match ys % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); state.amplitudes.len()];
    for (x, amp) in state.amplitudes.iter().enumerate() {
        let sign = if (x & zmask).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        out[x ^ xmask] += *amp * global * sign;
    }
    StateVector { n, amplitudes: out }
}

/// The `+1` joint eigenstate of the generators.
pub fn resource_state(g: &GeneratorMatrix) -> Result<StateVector, SimError> {
    let n = g.n();
    if n > MAX_QUBITS {
        return Err(SimError::SizeGuard { n });
    }
    let gens = g.generators();
    for reference in 0..1usize << n {
        let mut amplitudes = alloc::vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[reference] = Complex64::new(1.0, 0.0);
        let mut state = StateVector { n, amplitudes };
        for k in &gens {
            let image = apply_pauli(&state, k, g.planes());
            for (a, b) in state.amplitudes.iter_mut().zip(&image.amplitudes) {
                *a = (*a + b) * 0.5;
            }
        }
        if state.norm_sqr() > 1e-9 {
            state.normalize();
            return Ok(state);
        }
    }
    unreachable!("a valid stabilizer group has a nonzero joint eigenstate")
}

/// Exact probabilities of output bit strings, written `o_1 o_2 …`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDistribution {
    pub bits: usize,
    pub probabilities: BTreeMap<String, f64>,
}

fn bit_string(v: &BitVec) -> String {
    (0..v.len()).map(|i| if v.get(i) { '1' } else { '0' }).collect()
}

impl ExactDistribution {
    pub fn total(&self) -> f64 {
        self.probabilities.values().sum()
    }

    pub fn probability(&self, outcome: &str) -> f64 {
        self.probabilities.get(outcome).copied().unwrap_or(0.0)
    }

    /// Largest absolute difference over the union of supports.
    pub fn max_difference(&self, other: &ExactDistribution) -> f64 {
        self.probabilities
            .keys()
            .chain(other.probabilities.keys())
            .map(|k| libm::fabs(self.probability(k) - other.probability(k)))
            .fold(0.0, f64::max)
    }

    pub fn agrees_with(&self, other: &ExactDistribution) -> bool {
        self.bits == other.bits && self.max_difference(other) <= TOLERANCE
    }

    /// Distribution of the bits at `keep` (zero-based, in that order).
    pub fn marginal(&self, keep: &[usize]) -> ExactDistribution {
        let mut probabilities = BTreeMap::new();
        for (k, p) in &self.probabilities {
            let bytes = k.as_bytes();
            let key: String = keep.iter().map(|&j| bytes[j] as char).collect();
            *probabilities.entry(key).or_insert(0.0) += p;
        }
        ExactDistribution {
            bits: keep.len(),
            probabilities,
        }
    }

    /// The mass where each listed bit has its required value, and the
    /// distribution conditioned on that event.
    pub fn condition(&self, required: &[(usize, bool)]) -> (ExactDistribution, f64) {
        let hits: Vec<(&String, f64)> = self
            .probabilities
            .iter()
            .filter(|(k, _)| {
                let bytes = k.as_bytes();
                required.iter().all(|&(j, value)| (bytes[j] == b'1') == value)
            })
            .map(|(k, &p)| (k, p))
            .collect();
        let mass: f64 = hits.iter().map(|(_, p)| p).sum();
        let probabilities = if mass > 0.0 {
            hits.into_iter().map(|(k, p)| (k.clone(), p / mass)).collect()
        } else {
            BTreeMap::new()
        };
        (
            ExactDistribution {
                bits: self.bits,
                probabilities,
            },
            mass,
        )
    }
}

/// Angles, gauge choice, measurement order and post-selection for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub angles: Vec<f64>,
    /// Gauge bits in ascending order of the gauge input set.
    pub gauge: BitVec,
    /// A linear extension of the temporal relation; the smallest-first one
    /// when absent.
    pub order: Option<Vec<Qubit>>,
    /// `(output bit, required value)`, zero-based.
    pub postselect: Vec<(usize, bool)>,
}

impl RunConfig {
    pub fn new(angles: Vec<f64>, gauge_bits: usize) -> Self {
        RunConfig {
            angles,
            gauge: BitVec::zeros(gauge_bits),
            order: None,
            postselect: Vec::new(),
        }
    }
}

/// A resource state together with its measurement planes.
#[derive(Clone, Debug)]
pub struct Simulator {
    pub state: StateVector,
    pub planes: Vec<MeasurementPlane>,
}

type Matrix2 = [[Complex64; 2]; 2];

fn pauli_matrix(axis: Axis) -> Matrix2 {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match axis {
        Axis::X => [[z, one], [one, z]],
        Axis::Y => [[z, -i], [i, z]],
        Axis::Z => [[one, z], [z, -one]],
    }
}

/// `(I + (−1)^s O)/2` with `O = cos φ σ_φ + (−1)^q sin φ σ_sφ`.
pub fn projector(plane: MeasurementPlane, angle: f64, q: bool, s: bool) -> Matrix2 {
    let phi = pauli_matrix(plane.phi_axis());
    let sphi = pauli_matrix(plane.sphi_axis());
    let c = libm::cos(angle);
    let sn = if q { -libm::sin(angle) } else { libm::sin(angle) };
    let sign = if s { -1.0 } else { 1.0 };
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for col in 0..2 {
            let o = phi[r][col] * c + sphi[r][col] * sn;
            let id = if r == col { 1.0 } else { 0.0 };
            out[r][col] = (o * sign + id) * 0.5;
        }
    }
    out
}

fn apply_single(state: &mut StateVector, qubit: usize, m: &Matrix2) {
    let bit = 1usize << qubit;
    for x in 0..state.amplitudes.len() {
        if x & bit != 0 {
            continue;
        }
        let a0 = state.amplitudes[x];
        let a1 = state.amplitudes[x | bit];
        state.amplitudes[x] = m[0][0] * a0 + m[0][1] * a1;
        state.amplitudes[x | bit] = m[1][0] * a0 + m[1][1] * a1;
    }
}

impl Simulator {
    pub fn new(g: &GeneratorMatrix) -> Result<Self, SimError> {
        Ok(Simulator {
            state: resource_state(g)?,
            planes: g.planes().to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.state.n
    }

    /// Output distribution of `o = Zs + Rg` over all measurement branches.
    pub fn run_exact(&self, p: &ProcessingRelations, cfg: &RunConfig) -> Result<ExactDistribution, SimError> {
        let n = self.n();
        if cfg.angles.len() != n {
            return Err(SimError::AngleCount {
                expected: n,
                found: cfg.angles.len(),
            });
        }
        if cfg.gauge.len() != p.igauge.len() {
            return Err(SimError::GaugeLength {
                expected: p.igauge.len(),
                found: cfg.gauge.len(),
            });
        }
        let rel = temporal_relation(&p.t);
        if !rel.is_strict_partial_order {
            return Err(SimError::NotRunnable);
        }
        let order = match &cfg.order {
            Some(o) if rel.is_consistent_order(o) => o.clone(),
            Some(_) => return Err(SimError::OrderInconsistent),
            None => rel.linear_extension().ok_or(SimError::NotRunnable)?,
        };
        let order: Vec<usize> = order.iter().map(|q| q.index()).collect();
        let offsets = p.h.mul_vec(&cfg.gauge);
        let gauge_out = p.r.mul_vec(&cfg.gauge);
        let mut probabilities = BTreeMap::new();
        let mut s = BitVec::zeros(n);
        self.branch(
            p,
            cfg,
            &order,
            &offsets,
            &gauge_out,
            self.state.clone(),
            0,
            1.0,
            &mut s,
            &mut probabilities,
        );
        Ok(ExactDistribution {
            bits: p.z.rows(),
            probabilities,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn branch(
        &self,
        p: &ProcessingRelations,
        cfg: &RunConfig,
        order: &[usize],
        offsets: &BitVec,
        gauge_out: &BitVec,
        state: StateVector,
        depth: usize,
        weight: f64,
        s: &mut BitVec,
        out: &mut BTreeMap<String, f64>,
    ) {
        if depth == order.len() {
            let o = p.z.mul_vec(s).xor(gauge_out);
            *out.entry(bit_string(&o)).or_insert(0.0) += weight;
            return;
        }
        let a = order[depth];
        let q = p.t.row(a).dot(s) ^ offsets.get(a);
        for outcome in [false, true] {
            let mut next = state.clone();
            apply_single(
                &mut next,
                a,
                &projector(self.planes[a], cfg.angles[a], q, outcome),
            );
            let prob = next.norm_sqr();
            if prob <= PRUNE {
                continue;
            }
            next.scale(1.0 / libm::sqrt(prob));
            s.set(a, outcome);
            self.branch(
                p,
                cfg,
                order,
                offsets,
                gauge_out,
                next,
                depth + 1,
                weight * prob,
                s,
                out,
            );
            s.set(a, false);
        }
    }

    /// The distribution conditioned on `cfg.postselect`, and the probability
    /// of that event.
    pub fn run_postselected(
        &self,
        p: &ProcessingRelations,
        cfg: &RunConfig,
    ) -> Result<(ExactDistribution, f64), SimError> {
        if let Some(&(j, _)) = cfg.postselect.iter().find(|(j, _)| *j >= p.z.rows()) {
            return Err(SimError::PostselectOutOfRange(j));
        }
        let dist = self.run_exact(p, cfg)?;
        let (conditioned, mass) = dist.condition(&cfg.postselect);
        if mass <= PRUNE {
            return Err(SimError::ZeroSuccessProbability);
        }
        Ok((conditioned, mass))
    }

    /// Distributions for every gauge vector; all must agree.
    pub fn gauge_distributions(
        &self,
        p: &ProcessingRelations,
        angles: &[f64],
    ) -> Result<Vec<(BitVec, ExactDistribution)>, SimError> {
        let k = p.igauge.len();
        assert!(k < 20, "too many gauge bits to enumerate");
        (0u32..1 << k)
            .map(|mask| {
                let gauge = BitVec::from_indices(k, (0..k).filter(|j| mask >> j & 1 == 1));
                let cfg = RunConfig {
                    angles: angles.to_vec(),
                    gauge: gauge.clone(),
                    order: None,
                    postselect: Vec::new(),
                };
                self.run_exact(p, &cfg).map(|d| (gauge, d))
            })
            .collect()
    }

    pub fn verify_gauge_independence(
        &self,
        p: &ProcessingRelations,
        angles: &[f64],
    ) -> Result<bool, SimError> {
        let runs = self.gauge_distributions(p, angles)?;
        let reference = &runs[0].1;
        Ok(runs.iter().all(|(_, d)| d.agrees_with(reference)))
    }
}
