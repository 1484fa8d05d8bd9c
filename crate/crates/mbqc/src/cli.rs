//! Command-line front end. [`run`] does all the work and returns what to
//! print, so the binary is a thin shell around it.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mbqc_core::ctc::{remove_all, StepKind};
use mbqc_core::flow::{
    derive_processing, enumerate_relations, extremalize, temporal_relation, ProcessingRelations,
};
use mbqc_core::gf2::BitVec;
use mbqc_core::sim::{RunConfig, SimError, Simulator};
use mbqc_core::stabilizer::{GeneratorMatrix, Qubit, QubitSet};
use mbqc_core::transforms::{
    check_invariance, classify_output_bit, flip_plane, local_comp, orbit, FLIP_ANGLE_MAP,
};
use serde::Serialize;
use thiserror::Error;

use crate::dot;
use crate::pattern_file::{ParseError, PatternFile};
use crate::report::{
    expression, labels, AnalyzeReport, Classification, Condition, EnumerateReport, EnumeratedRelation,
    FlipReport, InvarianceSummary, LocalCompReport, MatrixReport, OrbitReport, OutcomeReport,
    OutputBitReport, PatternSummary, PostselectReport, RemoveCtcReport, Render, SimulateReport, StepReport,
    CTC, STRICT_PARTIAL_ORDER,
};

#[derive(Parser, Debug)]
#[command(
    name = "mbqc",
    version,
    about = "Temporal-order analysis of measurement patterns"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Overrides for the pair declared in the file, as comma-separated 1-based
/// qubit lists; an empty string is the empty set.
#[derive(Args, Debug, Clone, Default)]
pub struct PairArgs {
    #[arg(long, value_name = "QUBITS")]
    pub igauge: Option<String>,
    #[arg(long, value_name = "QUBITS")]
    pub ocomp: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Processing relations, cones and temporal relation for one pair.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        /// Exit with status 3 when the relation has closed time-like curves.
        #[arg(long)]
        require_order: bool,
    },
    /// Every extremal pair with its influence matrix.
    Enumerate { file: PathBuf },
    /// Exchange the two in-plane axes at one qubit.
    Flip {
        file: PathBuf,
        #[arg(long)]
        qubit: usize,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Modified local complementation of the influence matrix.
    Lc {
        file: PathBuf,
        #[arg(long)]
        qubit: usize,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Orbit of the influence matrix under local complementation.
    Orbit {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Break all closed time-like curves, adding flag output bits.
    RemoveCtc {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Exact output distribution by state-vector simulation.
    Simulate {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
        /// Gauge bits in ascending order of the gauge inputs, e.g. "01".
        #[arg(long)]
        gauge: Option<String>,
        /// Required output values, 1-based, e.g. "2=0,3=1".
        #[arg(long)]
        postselect: Option<String>,
        /// Check that every gauge choice gives the same distribution.
        #[arg(long)]
        compare_gauges: bool,
    },
    /// Influence graph in DOT.
    ExportDot {
        file: PathBuf,
        #[command(flatten)]
        pair: PairArgs,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("closed time-like curve: {0}")]
    Ctc(String),
    #[error("simulator: {0}")]
    Simulator(SimError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::InvalidPair(_) | CliError::InvalidArgument(_) => 2,
            CliError::Ctc(_) => 3,
            CliError::Simulator(_) => 4,
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::NotRunnable | SimError::OrderInconsistent => CliError::Ctc(e.to_string()),
            SimError::GaugeLength { .. } | SimError::PostselectOutOfRange(_) => {
                CliError::InvalidArgument(e.to_string())
            }
            other => CliError::Simulator(other),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

fn parse_set(text: &str, n: usize, what: &str) -> Result<QubitSet, CliError> {
    let mut set = QubitSet::new();
    for token in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let label: usize = token
            .parse()
            .map_err(|_| CliError::InvalidPair(format!("{what}: {token:?} is not a qubit index")))?;
        if label == 0 || label > n {
            return Err(CliError::InvalidPair(format!(
                "{what}: qubit {label} outside 1..={n}"
            )));
        }
        set.insert(Qubit::new(label));
    }
    Ok(set)
}

fn braces(set: &QubitSet) -> String {
    let items: Vec<String> = labels(set).iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// The relations a command works on: the command-line pair, else the one
/// declared in the file, else the first enumerated pair whose relation is a
/// strict partial order (the first pair if none is).
pub fn select_relations(
    file: &PatternFile,
    pair: &PairArgs,
    warnings: &mut Vec<String>,
) -> Result<ProcessingRelations, CliError> {
    let g = &file.generators;
    let n = g.n();
    let igauge = match &pair.igauge {
        Some(text) => Some(parse_set(text, n, "igauge")?),
        None => file.pattern.declared_igauge.clone(),
    };
    let ocomp = match &pair.ocomp {
        Some(text) => Some(parse_set(text, n, "ocomp")?),
        None => file.pattern.declared_ocomp.clone(),
    };
    match (igauge, ocomp) {
        (None, None) => {
            let all = enumerate_relations(g);
            let chosen = all
                .iter()
                .find(|p| temporal_relation(&p.t).is_strict_partial_order)
                .or(all.first())
                .cloned()
                .expect("every stabilizer state has an extremal pair");
            Ok(chosen)
        }
        (Some(ig), Some(oc)) => match derive_processing(g, &ig, &oc) {
            Ok(p) => Ok(p),
            Err(e) => match extremalize(g, &ig, &oc) {
                Ok(p) => {
                    warnings.push(format!(
                        "igauge {} ocomp {} is not an extremal pair ({e}); using igauge {} ocomp {}",
                        braces(&ig),
                        braces(&oc),
                        braces(&p.igauge),
                        braces(&p.ocomp)
                    ));
                    Ok(p)
                }
                Err(_) => Err(CliError::InvalidPair(format!(
                    "igauge {} ocomp {}: {e}",
                    braces(&ig),
                    braces(&oc)
                ))),
            },
        },
        _ => Err(CliError::InvalidPair(
            "igauge and ocomp must be given together".to_string(),
        )),
    }
}

fn qubit_arg(label: usize, n: usize) -> Result<Qubit, CliError> {
    if label == 0 || label > n {
        return Err(CliError::InvalidArgument(format!(
            "qubit {label} outside 1..={n}"
        )));
    }
    Ok(Qubit::new(label))
}

fn output_bits(p: &ProcessingRelations, g: &GeneratorMatrix) -> Vec<OutputBitReport> {
    (0..p.z.rows())
        .map(|j| OutputBitReport {
            bit: j + 1,
            expression: expression(&p.z.row(j), &p.r.row(j), &p.igauge),
            class: classify_output_bit(&p.z.row(j), &p.r.row(j), p, g).keyword(),
        })
        .collect()
}

fn emit<R: Render + Serialize>(report: &R, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        report.human()
    }
}

fn analyze(
    file: &PatternFile,
    pair: &PairArgs,
    warnings: &mut Vec<String>,
    require_order: bool,
    json: bool,
) -> Result<Outcome, CliError> {
    let p = select_relations(file, pair, warnings)?;
    let g = &file.generators;
    let (cones, inputs, outputs) = AnalyzeReport::cones_of(&p);
    let invariance = check_invariance(&p, g);
    let report = AnalyzeReport {
        command: "analyze",
        pattern: PatternSummary::new(g, &file.pattern.angles),
        relations: (&p).into(),
        cones,
        igauge_is_inputs: inputs == labels(&p.igauge),
        ocomp_is_outputs: outputs == labels(&p.ocomp),
        inputs,
        outputs,
        relation: Classification::new(&p.t),
        output_bits: output_bits(&p, g),
        invariance: InvarianceSummary {
            gauge_invariant: invariance.all_pass(),
            failing_generators: invariance.failing(),
        },
        warnings: warnings.clone(),
    };
    let mut out = Outcome {
        stdout: emit(&report, json),
        ..Outcome::default()
    };
    if require_order && !report.relation.is_strict_partial_order() {
        let e = CliError::Ctc("the temporal relation is not a strict partial order".to_string());
        out.stderr.push_str(&format!("error: {e}\n"));
        out.code = e.exit_code();
    }
    Ok(out)
}

fn enumerate(file: &PatternFile, json: bool) -> String {
    let relations: Vec<EnumeratedRelation> = enumerate_relations(&file.generators)
        .iter()
        .map(|p| EnumeratedRelation {
            igauge: labels(&p.igauge),
            ocomp: labels(&p.ocomp),
            t: (&p.t).into(),
            relation: if temporal_relation(&p.t).is_strict_partial_order {
                STRICT_PARTIAL_ORDER
            } else {
                CTC
            },
        })
        .collect();
    emit(
        &EnumerateReport {
            command: "enumerate",
            count: relations.len(),
            relations,
        },
        json,
    )
}

fn flip(
    file: &PatternFile,
    pair: &PairArgs,
    warnings: &mut Vec<String>,
    qubit: usize,
    json: bool,
) -> Result<String, CliError> {
    let p = select_relations(file, pair, warnings)?;
    let a = qubit_arg(qubit, p.n())?;
    let flipped = flip_plane(&p, a).map_err(|e| CliError::InvalidArgument(e.to_string()))?;
    let g = file.generators.flip_plane(a);
    let mut angles = file.pattern.angles.clone();
    angles[a.index()] = FLIP_ANGLE_MAP.apply(angles[a.index()]);
    Ok(emit(
        &FlipReport {
            command: "flip",
            qubit,
            pattern: PatternSummary::new(&g, &angles),
            before: (&p).into(),
            after: (&flipped).into(),
            relation: Classification::new(&flipped.t),
        },
        json,
    ))
}

fn lc(
    file: &PatternFile,
    pair: &PairArgs,
    warnings: &mut Vec<String>,
    qubit: usize,
    json: bool,
) -> Result<String, CliError> {
    let p = select_relations(file, pair, warnings)?;
    let i = qubit_arg(qubit, p.n())?;
    let (t, replanted) = local_comp(&p.t, i).map_err(|e| CliError::InvalidArgument(e.to_string()))?;
    let mut planes = file.generators.planes().to_vec();
    planes[i.index()] = planes[i.index()].flipped();
    for b in &replanted {
        planes[b.index()] = planes[b.index()].replanted();
    }
    Ok(emit(
        &LocalCompReport {
            command: "lc",
            qubit,
            replanted: labels(&replanted),
            planes: planes.iter().map(|p| p.to_string()).collect(),
            before: (&p.t).into(),
            after: (&t).into(),
            relation: Classification::new(&t),
        },
        json,
    ))
}

fn orbit_cmd(
    file: &PatternFile,
    pair: &PairArgs,
    warnings: &mut Vec<String>,
    json: bool,
) -> Result<String, CliError> {
    let p = select_relations(file, pair, warnings)?;
    let orb = orbit(&p.t).map_err(|e| CliError::InvalidArgument(e.to_string()))?;
    Ok(emit(
        &OrbitReport {
            command: "orbit",
            size: orb.len(),
            elements: orb.elements.iter().map(MatrixReport::from).collect(),
            generators: orb
                .generators
                .iter()
                .map(|perm| perm.iter().map(|e| e + 1).collect())
                .collect(),
            relation: Classification::new(&p.t),
        },
        json,
    ))
}

fn remove_ctc(
    file: &PatternFile,
    pair: &PairArgs,
    warnings: &mut Vec<String>,
    json: bool,
) -> Result<String, CliError> {
    let p = select_relations(file, pair, warnings)?;
    let trace = remove_all(&file.generators, &p).map_err(|e| CliError::InvalidPair(e.to_string()))?;
    let mut igauge = p.igauge.clone();
    let steps = trace
        .steps
        .iter()
        .map(|s| {
            igauge.insert(s.qubits[0]);
            StepReport {
                kind: s.kind.keyword(),
                qubits: s.qubits.iter().map(|q| q.label()).collect(),
                flag_qubit: s.flag_qubit.label(),
                flag: expression(&s.flag_z, &s.flag_r, &igauge),
            }
        })
        .collect();
    let mut angles = file.pattern.angles.clone();
    for s in trace.steps.iter().filter(|s| s.kind == StepKind::SelfLoop) {
        let a = s.flag_qubit.index();
        angles[a] = FLIP_ANGLE_MAP.apply(angles[a]);
    }
    let q = &trace.relations;
    Ok(emit(
        &RemoveCtcReport {
            command: "remove-ctc",
            steps,
            pattern: PatternSummary::new(&trace.generators, &angles),
            relations: q.into(),
            flag_bits: trace.flag_bits().iter().map(|j| j + 1).collect(),
            output_bits: output_bits(q, &trace.generators),
            relation: Classification::new(&q.t),
        },
        json,
    ))
}

fn parse_gauge(text: &str, k: usize) -> Result<BitVec, CliError> {
    let bits = BitVec::from_bit_str(text)
        .ok_or_else(|| CliError::InvalidArgument(format!("gauge {text:?} is not a bit string")))?;
    if bits.len() != k {
        return Err(CliError::InvalidArgument(format!(
            "gauge has {} bits, expected {k}",
            bits.len()
        )));
    }
    Ok(bits)
}

fn parse_postselect(text: &str, m: usize) -> Result<Vec<(usize, bool)>, CliError> {
    let bad = || CliError::InvalidArgument(format!("postselect {text:?}: expected bit=value pairs"));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (bit, value) = item.split_once('=').ok_or_else(bad)?;
        let bit: usize = bit.trim().parse().map_err(|_| bad())?;
        let value = match value.trim() {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        if bit == 0 || bit > m {
            return Err(CliError::InvalidArgument(format!(
                "output bit {bit} outside 1..={m}"
            )));
        }
        out.push((bit - 1, value));
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn simulate(
    file: &PatternFile,
    pair: &PairArgs,
    warnings: &mut Vec<String>,
    gauge: Option<&str>,
    postselect: Option<&str>,
    compare_gauges: bool,
    json: bool,
) -> Result<String, CliError> {
    let p = select_relations(file, pair, warnings)?;
    let rel = temporal_relation(&p.t);
    let order = rel
        .linear_extension()
        .ok_or_else(|| CliError::Ctc("the temporal relation is not a strict partial order".to_string()))?;
    let sim = Simulator::new(&file.generators)?;
    let k = p.igauge.len();
    let mut cfg = RunConfig::new(file.pattern.angles.clone(), k);
    if let Some(text) = gauge {
        cfg.gauge = parse_gauge(text, k)?;
    }
    let (dist, postselect) = match postselect {
        Some(text) => {
            cfg.postselect = parse_postselect(text, p.z.rows())?;
            let (dist, success) = sim.run_postselected(&p, &cfg)?;
            let conditions = cfg
                .postselect
                .iter()
                .map(|&(j, v)| Condition {
                    bit: j + 1,
                    value: v as u8,
                })
                .collect();
            (
                dist,
                Some(PostselectReport {
                    conditions,
                    success_probability: success,
                }),
            )
        }
        None => (sim.run_exact(&p, &cfg)?, None),
    };
    let gauge_independent = if compare_gauges {
        Some(sim.verify_gauge_independence(&p, &cfg.angles)?)
    } else {
        None
    };
    Ok(emit(
        &SimulateReport {
            command: "simulate",
            igauge: labels(&p.igauge),
            ocomp: labels(&p.ocomp),
            gauge: cfg.gauge.to_string(),
            angles: cfg.angles.clone(),
            order: order.iter().map(|q| q.label()).collect(),
            distribution: dist
                .probabilities
                .iter()
                .map(|(output, &probability)| OutcomeReport {
                    output: output.clone(),
                    probability,
                })
                .collect(),
            postselect,
            gauge_independent,
        },
        json,
    ))
}

fn export_dot(file: &PatternFile, pair: &PairArgs, warnings: &mut Vec<String>) -> Result<String, CliError> {
    let p = select_relations(file, pair, warnings)?;
    Ok(dot::render(&p))
}

fn dispatch(cli: &Cli, warnings: &mut Vec<String>) -> Result<Outcome, CliError> {
    let json = cli.json;
    let ok = |stdout: String| Outcome {
        stdout,
        ..Outcome::default()
    };
    match &cli.command {
        Command::Analyze {
            file,
            pair,
            require_order,
        } => analyze(&PatternFile::read(file)?, pair, warnings, *require_order, json),
        Command::Enumerate { file } => Ok(ok(enumerate(&PatternFile::read(file)?, json))),
        Command::Flip { file, qubit, pair } => {
            flip(&PatternFile::read(file)?, pair, warnings, *qubit, json).map(ok)
        }
        Command::Lc { file, qubit, pair } => {
            lc(&PatternFile::read(file)?, pair, warnings, *qubit, json).map(ok)
        }
        Command::Orbit { file, pair } => orbit_cmd(&PatternFile::read(file)?, pair, warnings, json).map(ok),
        Command::RemoveCtc { file, pair } => {
            remove_ctc(&PatternFile::read(file)?, pair, warnings, json).map(ok)
        }
        Command::Simulate {
            file,
            pair,
            gauge,
            postselect,
            compare_gauges,
        } => simulate(
            &PatternFile::read(file)?,
            pair,
            warnings,
            gauge.as_deref(),
            postselect.as_deref(),
            *compare_gauges,
            json,
        )
        .map(ok),
        Command::ExportDot { file, pair } => export_dot(&PatternFile::read(file)?, pair, warnings).map(ok),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let mut warnings = Vec::new();
    let mut out = match dispatch(cli, &mut warnings) {
        Ok(out) => out,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    };
    let prefix: String = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    out.stderr.insert_str(0, &prefix);
    out
}
