//! Structured reports. Every report serializes to JSON with a fixed key
//! order and renders to a byte-stable human-readable text.

use std::fmt::Write;

use mbqc_core::ctc::find_ctcs;
use mbqc_core::flow::{cones, temporal_relation, ProcessingRelations};
use mbqc_core::gf2::{BitMatrix, BitVec};
use mbqc_core::stabilizer::{GeneratorMatrix, MeasurementPlane, QubitSet};
use serde::Serialize;

pub const STRICT_PARTIAL_ORDER: &str = "strict-partial-order";
pub const CTC: &str = "ctc";

/// `x` with at most 12 significant digits, trailing zeros removed.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let s = if !(-5..=15).contains(&magnitude) {
        let s = format!("{:.11e}", x);
        let (mantissa, exp) = s.split_once('e').expect("scientific notation");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exp}");
    } else {
        let decimals = (11 - magnitude).max(0) as usize;
        format!("{:.*}", decimals, x)
    };
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn labels(set: &QubitSet) -> Vec<usize> {
    set.iter().map(|q| q.label()).collect()
}

fn dash(s: String) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s
    }
}

fn brace(items: &[usize]) -> String {
    let inner: Vec<String> = items.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

/// `o = …` right-hand side: outcome terms `s<a>`, gauge terms `g<i>` named
/// by the gauge input qubit.
pub fn expression(z: &BitVec, r: &BitVec, igauge: &QubitSet) -> String {
    let gauge = labels(igauge);
    let mut terms: Vec<String> = z.ones().map(|a| format!("s{}", a + 1)).collect();
    terms.extend(r.ones().map(|c| format!("g{}", gauge[c])));
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixReport {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<String>,
}

impl From<&BitMatrix> for MatrixReport {
    fn from(m: &BitMatrix) -> Self {
        MatrixReport {
            rows: m.rows(),
            cols: m.cols(),
            data: m.row_strings(),
        }
    }
}

impl MatrixReport {
    fn render(&self, name: &str, out: &mut String) {
        let _ = writeln!(out, "{name} {}x{}", self.rows, self.cols);
        if self.cols > 0 {
            for row in &self.data {
                let _ = writeln!(out, "  {row}");
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PatternSummary {
    pub qubits: usize,
    pub planes: Vec<String>,
    pub angles: Vec<f64>,
    pub generators: Vec<String>,
}

impl PatternSummary {
    pub fn new(g: &GeneratorMatrix, angles: &[f64]) -> Self {
        PatternSummary {
            qubits: g.n(),
            planes: g.planes().iter().map(MeasurementPlane::to_string).collect(),
            angles: angles.to_vec(),
            generators: g.to_letters(),
        }
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "qubits: {}", self.qubits);
        let _ = writeln!(out, "planes: {}", self.planes.join(" "));
        let angles: Vec<String> = self.angles.iter().map(|&a| format_real(a)).collect();
        let _ = writeln!(out, "angles: {}", angles.join(" "));
        let _ = writeln!(out, "generators: {}", self.generators.join(" "));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationsReport {
    pub igauge: Vec<usize>,
    pub ocomp: Vec<usize>,
    pub t: MatrixReport,
    pub h: MatrixReport,
    pub z: MatrixReport,
    pub r: MatrixReport,
}

impl From<&ProcessingRelations> for RelationsReport {
    fn from(p: &ProcessingRelations) -> Self {
        RelationsReport {
            igauge: labels(&p.igauge),
            ocomp: labels(&p.ocomp),
            t: (&p.t).into(),
            h: (&p.h).into(),
            z: (&p.z).into(),
            r: (&p.r).into(),
        }
    }
}

impl RelationsReport {
    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "igauge: {}", brace(&self.igauge));
        let _ = writeln!(out, "ocomp: {}", brace(&self.ocomp));
        self.t.render("T", out);
        self.h.render("H", out);
        self.z.render("Z", out);
        self.r.render("R", out);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub qubit: usize,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

/// Temporal relation with either a linear extension or CTC witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: &'static str,
    pub precedes: Vec<[usize; 2]>,
    pub order: Option<Vec<usize>>,
    pub self_loops: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
}

impl Classification {
    pub fn new(t: &BitMatrix) -> Self {
        let rel = temporal_relation(t);
        let ctcs = find_ctcs(t);
        Classification {
            kind: if rel.is_strict_partial_order {
                STRICT_PARTIAL_ORDER
            } else {
                CTC
            },
            precedes: rel.pairs().iter().map(|(a, b)| [a.label(), b.label()]).collect(),
            order: rel
                .linear_extension()
                .map(|o| o.iter().map(|q| q.label()).collect()),
            self_loops: ctcs.self_loops.iter().map(|q| q.label()).collect(),
            cycles: ctcs
                .cycles
                .iter()
                .map(|c| c.iter().map(|q| q.label()).collect())
                .collect(),
        }
    }

    pub fn is_strict_partial_order(&self) -> bool {
        self.kind == STRICT_PARTIAL_ORDER
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "relation: {}", self.kind);
        let pairs: Vec<String> = self.precedes.iter().map(|[a, b]| format!("{a}<{b}")).collect();
        let _ = writeln!(out, "precedes: {}", dash(pairs.join(", ")));
        if let Some(order) = &self.order {
            let order: Vec<String> = order.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "order: {}", order.join(" "));
        } else {
            let _ = writeln!(out, "self-loops: {}", brace(&self.self_loops));
            let cycles: Vec<String> = self
                .cycles
                .iter()
                .map(|c| {
                    let c: Vec<String> = c.iter().map(usize::to_string).collect();
                    format!("({})", c.join(","))
                })
                .collect();
            let _ = writeln!(out, "cycles: {}", dash(cycles.join(" ")));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutputBitReport {
    pub bit: usize,
    pub expression: String,
    pub class: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceSummary {
    pub gauge_invariant: bool,
    pub failing_generators: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub command: &'static str,
    pub pattern: PatternSummary,
    pub relations: RelationsReport,
    pub cones: Vec<ConeReport>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub igauge_is_inputs: bool,
    pub ocomp_is_outputs: bool,
    pub relation: Classification,
    pub output_bits: Vec<OutputBitReport>,
    pub invariance: InvarianceSummary,
    pub warnings: Vec<String>,
}

impl AnalyzeReport {
    pub fn cones_of(p: &ProcessingRelations) -> (Vec<ConeReport>, Vec<usize>, Vec<usize>) {
        let c = cones(&p.t);
        let per_qubit =
            c.fc.iter()
                .zip(&c.bc)
                .enumerate()
                .map(|(a, (f, b))| ConeReport {
                    qubit: a + 1,
                    forward: labels(f),
                    backward: labels(b),
                })
                .collect();
        (per_qubit, labels(&c.inputs), labels(&c.outputs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumeratedRelation {
    pub igauge: Vec<usize>,
    pub ocomp: Vec<usize>,
    pub t: MatrixReport,
    pub relation: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerateReport {
    pub command: &'static str,
    pub count: usize,
    pub relations: Vec<EnumeratedRelation>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlipReport {
    pub command: &'static str,
    pub qubit: usize,
    pub pattern: PatternSummary,
    pub before: RelationsReport,
    pub after: RelationsReport,
    pub relation: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCompReport {
    pub command: &'static str,
    pub qubit: usize,
    pub replanted: Vec<usize>,
    pub planes: Vec<String>,
    pub before: MatrixReport,
    pub after: MatrixReport,
    pub relation: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub command: &'static str,
    pub size: usize,
    pub elements: Vec<MatrixReport>,
    /// `generators[i][e]`: 1-based element reached from element `e + 1`
    /// by local complementation at qubit `i + 1`.
    pub generators: Vec<Vec<usize>>,
    pub relation: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub kind: &'static str,
    pub qubits: Vec<usize>,
    pub flag_qubit: usize,
    pub flag: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RemoveCtcReport {
    pub command: &'static str,
    pub steps: Vec<StepReport>,
    pub pattern: PatternSummary,
    pub relations: RelationsReport,
    /// 1-based output bits that are flags.
    pub flag_bits: Vec<usize>,
    pub output_bits: Vec<OutputBitReport>,
    pub relation: Classification,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeReport {
    pub output: String,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub bit: usize,
    pub value: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PostselectReport {
    pub conditions: Vec<Condition>,
    pub success_probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulateReport {
    pub command: &'static str,
    pub igauge: Vec<usize>,
    pub ocomp: Vec<usize>,
    pub gauge: String,
    pub angles: Vec<f64>,
    pub order: Vec<usize>,
    pub distribution: Vec<OutcomeReport>,
    pub postselect: Option<PostselectReport>,
    pub gauge_independent: Option<bool>,
}

pub trait Render {
    fn human(&self) -> String;
}

fn render_outputs(bits: &[OutputBitReport], out: &mut String) {
    let _ = writeln!(out, "output bits:");
    for b in bits {
        let _ = writeln!(out, "  o{} = {}: {}", b.bit, b.expression, b.class);
    }
}

impl Render for AnalyzeReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        self.pattern.render(&mut out);
        self.relations.render(&mut out);
        let _ = writeln!(out, "cones:");
        for c in &self.cones {
            let _ = writeln!(
                out,
                "  {}: fc {} bc {}",
                c.qubit,
                brace(&c.forward),
                brace(&c.backward)
            );
        }
        let _ = writeln!(out, "I: {}", brace(&self.inputs));
        let _ = writeln!(out, "O: {}", brace(&self.outputs));
        let _ = writeln!(out, "igauge = I: {}", self.igauge_is_inputs);
        let _ = writeln!(out, "ocomp = O: {}", self.ocomp_is_outputs);
        self.relation.render(&mut out);
        render_outputs(&self.output_bits, &mut out);
        let _ = writeln!(out, "gauge-invariant: {}", self.invariance.gauge_invariant);
        if !self.invariance.gauge_invariant {
            let _ = writeln!(
                out,
                "failing generators: {}",
                brace(&self.invariance.failing_generators)
            );
        }
        out
    }
}

impl Render for EnumerateReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for (k, rel) in self.relations.iter().enumerate() {
            let _ = writeln!(
                out,
                "#{} igauge {} ocomp {} {}",
                k + 1,
                brace(&rel.igauge),
                brace(&rel.ocomp),
                rel.relation
            );
            for row in &rel.t.data {
                let _ = writeln!(out, "  {row}");
            }
        }
        let _ = writeln!(out, "count: {}", self.count);
        out
    }
}

impl Render for FlipReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "flip at qubit {}", self.qubit);
        self.pattern.render(&mut out);
        let _ = writeln!(out, "before:");
        self.before.render(&mut out);
        let _ = writeln!(out, "after:");
        self.after.render(&mut out);
        self.relation.render(&mut out);
        out
    }
}

impl Render for LocalCompReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "local complementation at qubit {}", self.qubit);
        let _ = writeln!(out, "replanted: {}", brace(&self.replanted));
        let _ = writeln!(out, "planes: {}", self.planes.join(" "));
        self.before.render("T", &mut out);
        self.after.render("T'", &mut out);
        self.relation.render(&mut out);
        out
    }
}

impl Render for OrbitReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "orbit size: {}", self.size);
        for (k, m) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "#{}", k + 1);
            for row in &m.data {
                let _ = writeln!(out, "  {row}");
            }
        }
        for (i, perm) in self.generators.iter().enumerate() {
            let images: Vec<String> = perm.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "lc {}: {}", i + 1, images.join(" "));
        }
        self.relation.render(&mut out);
        out
    }
}

impl Render for RemoveCtcReport {
    fn human(&self) -> String {
        let mut out = String::new();
        if self.steps.is_empty() {
            let _ = writeln!(out, "no closed time-like curves");
        }
        for (k, step) in self.steps.iter().enumerate() {
            let qubits: Vec<String> = step.qubits.iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "step {}: {} ({}) flag o[{}] = {}",
                k + 1,
                step.kind,
                qubits.join(","),
                step.flag_qubit,
                step.flag
            );
        }
        self.pattern.render(&mut out);
        self.relations.render(&mut out);
        let _ = writeln!(out, "flag bits: {}", brace(&self.flag_bits));
        render_outputs(&self.output_bits, &mut out);
        self.relation.render(&mut out);
        out
    }
}

impl Render for SimulateReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "igauge: {}", brace(&self.igauge));
        let _ = writeln!(out, "ocomp: {}", brace(&self.ocomp));
        let _ = writeln!(
            out,
            "gauge: {}",
            if self.gauge.is_empty() { "-" } else { &self.gauge }
        );
        let angles: Vec<String> = self.angles.iter().map(|&a| format_real(a)).collect();
        let _ = writeln!(out, "angles: {}", angles.join(" "));
        let order: Vec<String> = self.order.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "order: {}", order.join(" "));
        if let Some(ps) = &self.postselect {
            let conds: Vec<String> = ps
                .conditions
                .iter()
                .map(|c| format!("o{}={}", c.bit, c.value))
                .collect();
            let _ = writeln!(out, "postselect: {}", conds.join(","));
            let _ = writeln!(
                out,
                "success probability: {}",
                format_real(ps.success_probability)
            );
        }
        let _ = writeln!(out, "distribution:");
        for o in &self.distribution {
            let label = if o.output.is_empty() { "-" } else { &o.output };
            let _ = writeln!(out, "  {label}: {}", format_real(o.probability));
        }
        if let Some(ind) = self.gauge_independent {
            let _ = writeln!(out, "gauge-independent: {ind}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mbqc_core::stabilizer::qubits;

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(-0.0), "0");
        assert_eq!(format_real(0.3), "0.3");
        assert_eq!(format_real(-0.7), "-0.7");
        assert_eq!(format_real(0.5), "0.5");
        assert_eq!(format_real(std::f64::consts::FRAC_PI_2), "1.57079632679");
        assert_eq!(format_real(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_real(12.0), "12");
        assert_eq!(format_real(1e-7), "1e-7");
    }

    #[test]
    fn expressions() {
        let ig = qubits(&[1]);
        let z = BitVec::from_bit_str("101").unwrap();
        let r = BitVec::from_bit_str("1").unwrap();
        assert_eq!(expression(&z, &r, &ig), "s1 + s3 + g1");
        assert_eq!(expression(&BitVec::zeros(3), &BitVec::zeros(1), &ig), "0");
    }

    #[test]
    fn classification_of_cycle() {
        let t = BitMatrix::from_rows(&[[0, 1], [1, 0]]);
        let c = Classification::new(&t);
        assert_eq!(c.kind, CTC);
        assert_eq!(c.cycles, vec![vec![1, 2]]);
        assert!(c.order.is_none());
    }
}
