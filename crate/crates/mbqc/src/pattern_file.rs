//! Line-oriented pattern files.
//!
//! ```text
//! # 3-qubit path cluster
//! qubits 3
//! edge 1 2
//! edge 2 3
//! angle 2 0.25
//! igauge 1
//! ocomp 3
//! ```

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use mbqc_core::stabilizer::{
    Axis, GeneratorMatrix, MeasurementPlane, Pattern, Qubit, QubitSet, Source, StabilizerError, ANGLE_MAX,
    ANGLE_MIN,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: edge and stab lines cannot be mixed")]
    MixedSource { line: usize },
    #[error("line {line}: qubit {index} outside 1..={n}")]
    IndexOutOfRange { line: usize, index: usize, n: usize },
    #[error("expected {expected} stab lines, found {found}")]
    WrongStabCount { expected: usize, found: usize },
    #[error("line {line}: angle {angle} outside [-pi/2, pi/2)")]
    AngleOutOfRange { line: usize, angle: f64 },
    #[error("invalid resource state: {0}")]
    Resource(#[from] StabilizerError),
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

/// A parsed pattern together with its validated generator matrix.
#[derive(Clone, Debug)]
pub struct PatternFile {
    pub path: PathBuf,
    pub pattern: Pattern,
    pub generators: GeneratorMatrix,
}

impl PatternFile {
    pub fn read(path: &Path) -> Result<Self, ParseError> {
        let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let pattern = parse(&text)?;
        let generators = pattern.generator_matrix()?;
        Ok(PatternFile {
            path: path.to_path_buf(),
            pattern,
            generators,
        })
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

struct Builder {
    n: usize,
    planes: Vec<Option<MeasurementPlane>>,
    angles: Vec<Option<f64>>,
    edges: Vec<(Qubit, Qubit)>,
    edge_set: BTreeSet<(usize, usize)>,
    stabs: Vec<String>,
    igauge: Option<QubitSet>,
    ocomp: Option<QubitSet>,
}

impl Builder {
    fn qubit(&self, line: usize, token: &str) -> Result<Qubit, ParseError> {
        let index: usize = token
            .parse()
            .map_err(|_| syntax(line, format!("expected a qubit index, found {token:?}")))?;
        if index == 0 || index > self.n {
            return Err(ParseError::IndexOutOfRange {
                line,
                index,
                n: self.n,
            });
        }
        Ok(Qubit::new(index))
    }

    fn set(&self, line: usize, tokens: &[&str]) -> Result<QubitSet, ParseError> {
        let mut set = QubitSet::new();
        for t in tokens {
            if !set.insert(self.qubit(line, t)?) {
                return Err(syntax(line, format!("qubit {t} listed twice")));
            }
        }
        Ok(set)
    }
}

fn axis(line: usize, token: &str) -> Result<Axis, ParseError> {
    let mut chars = token.chars();
    match (chars.next().and_then(Axis::from_letter), chars.next()) {
        (Some(a), None) => Ok(a),
        _ => Err(syntax(line, format!("expected one of X, Y, Z, found {token:?}"))),
    }
}

fn arity(line: usize, keyword: &str, args: &[&str], expected: usize) -> Result<(), ParseError> {
    if args.len() != expected {
        return Err(syntax(
            line,
            format!("{keyword} takes {expected} arguments, found {}", args.len()),
        ));
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<Pattern, ParseError> {
    let mut builder: Option<Builder> = None;
    let mut first_stab_line = None;
    let mut first_edge_line = None;

    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, args)) = tokens.split_first() else {
            continue;
        };

        if keyword == "qubits" {
            if builder.is_some() {
                return Err(syntax(line, "qubits given twice"));
            }
            arity(line, keyword, args, 1)?;
            let n: usize = args[0]
                .parse()
                .map_err(|_| syntax(line, format!("expected a qubit count, found {:?}", args[0])))?;
            if n == 0 {
                return Err(syntax(line, "a pattern needs at least one qubit"));
            }
            builder = Some(Builder {
                n,
                planes: vec![None; n],
                angles: vec![None; n],
                edges: Vec::new(),
                edge_set: BTreeSet::new(),
                stabs: Vec::new(),
                igauge: None,
                ocomp: None,
            });
            continue;
        }
        let b = builder
            .as_mut()
            .ok_or_else(|| syntax(line, "the qubits line must come first"))?;

        match keyword {
            "plane" => {
                arity(line, keyword, args, 3)?;
                let q = b.qubit(line, args[0])?;
                let plane = MeasurementPlane::new(axis(line, args[1])?, axis(line, args[2])?)
                    .map_err(|_| syntax(line, "plane axes must differ"))?;
                if b.planes[q.index()].replace(plane).is_some() {
                    return Err(syntax(line, format!("plane for qubit {q} given twice")));
                }
            }
            "edge" => {
                arity(line, keyword, args, 2)?;
                if first_stab_line.is_some() {
                    return Err(ParseError::MixedSource { line });
                }
                first_edge_line.get_or_insert(line);
                let x = b.qubit(line, args[0])?;
                let y = b.qubit(line, args[1])?;
                if x == y {
                    return Err(syntax(line, format!("self edge at qubit {x}")));
                }
                let key = (x.min(y).label(), x.max(y).label());
                if !b.edge_set.insert(key) {
                    return Err(syntax(line, format!("edge {} {} given twice", key.0, key.1)));
                }
                b.edges.push((x, y));
            }
            "stab" => {
                arity(line, keyword, args, 1)?;
                if first_edge_line.is_some() {
                    return Err(ParseError::MixedSource { line });
                }
                first_stab_line.get_or_insert(line);
                let word = args[0];
                if word.chars().count() != b.n {
                    return Err(syntax(
                        line,
                        format!("stab word has {} letters, expected {}", word.chars().count(), b.n),
                    ));
                }
                if let Some(bad) = word.chars().find(|c| !matches!(c, 'I' | 'X' | 'Y' | 'Z')) {
                    return Err(syntax(line, format!("invalid letter {bad:?}")));
                }
                b.stabs.push(word.to_string());
            }
            "angle" => {
                arity(line, keyword, args, 2)?;
                let q = b.qubit(line, args[0])?;
                let angle: f64 = args[1]
                    .parse()
                    .map_err(|_| syntax(line, format!("expected a real angle, found {:?}", args[1])))?;
                if !(ANGLE_MIN..ANGLE_MAX).contains(&angle) {
                    return Err(ParseError::AngleOutOfRange { line, angle });
                }
                if b.angles[q.index()].replace(angle).is_some() {
                    return Err(syntax(line, format!("angle for qubit {q} given twice")));
                }
            }
            "igauge" => {
                let set = b.set(line, args)?;
                if b.igauge.replace(set).is_some() {
                    return Err(syntax(line, "igauge given twice"));
                }
            }
            "ocomp" => {
                let set = b.set(line, args)?;
                if b.ocomp.replace(set).is_some() {
                    return Err(syntax(line, "ocomp given twice"));
                }
            }
            other => return Err(syntax(line, format!("unknown keyword {other:?}"))),
        }
    }

    let b = builder.ok_or_else(|| syntax(text.lines().count().max(1), "missing qubits line"))?;
    if first_stab_line.is_some() && b.stabs.len() != b.n {
        return Err(ParseError::WrongStabCount {
            expected: b.n,
            found: b.stabs.len(),
        });
    }
    let source = if first_stab_line.is_some() {
        Source::Words(b.stabs)
    } else {
        Source::Graph(b.edges)
    };
    Ok(Pattern {
        n: b.n,
        source,
        planes: b.planes.into_iter().map(Option::unwrap_or_default).collect(),
        angles: b.angles.into_iter().map(|a| a.unwrap_or(0.0)).collect(),
        declared_igauge: b.igauge,
        declared_ocomp: b.ocomp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use mbqc_core::stabilizer::qubits;

    #[test]
    fn cluster_file() {
        let p = parse("qubits 3\nedge 1 2\nedge 2 3\n").unwrap();
        assert_eq!(p, Pattern::graph(3, &[(1, 2), (2, 3)]));
        let g = p.generator_matrix().unwrap();
        assert_eq!(g.to_letters(), ["XZI", "ZXZ", "IZX"]);
    }

    #[test]
    fn single_stab() {
        let p = parse("qubits 1\nstab X\n").unwrap();
        assert_eq!(p, Pattern::words(&["X"]));
    }

    #[test]
    fn comments_planes_angles_and_sets() {
        let text =
            "# header\n\nqubits 2 # two\nplane 2 Y Z\nstab XZ\nstab ZX\nangle 1 -0.5\nigauge 1\nocomp 2\n";
        let p = parse(text).unwrap();
        assert_eq!(p.planes[1], MeasurementPlane::new(Axis::Y, Axis::Z).unwrap());
        assert_eq!(p.planes[0], MeasurementPlane::XY);
        assert_eq!(p.angles, vec![-0.5, 0.0]);
        assert_eq!(p.declared_igauge, Some(qubits(&[1])));
        assert_eq!(p.declared_ocomp, Some(qubits(&[2])));
        assert_eq!(
            parse("qubits 1\nigauge\n").unwrap().declared_igauge,
            Some(QubitSet::new())
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse("qubits 2\nedge 1 2\nstab XX\n"),
            Err(ParseError::MixedSource { line: 3 })
        ));
        assert!(matches!(
            parse("qubits 2\nstab XX\nedge 1 2\n"),
            Err(ParseError::MixedSource { line: 3 })
        ));
        assert!(matches!(
            parse("qubits 2\nedge 1 3\n"),
            Err(ParseError::IndexOutOfRange {
                line: 2,
                index: 3,
                n: 2
            })
        ));
        assert!(matches!(
            parse("qubits 2\nstab XZ\n"),
            Err(ParseError::WrongStabCount {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse("edge 1 2\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse("qubits 2\nplane 1 X X\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse("qubits 2\nfoo\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse("qubits 2\nstab XQ\nstab XX\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse("qubits 1\nangle 1 1.6\n"),
            Err(ParseError::AngleOutOfRange { line: 2, .. })
        ));
        assert!(parse("qubits 1\nangle 1 -1.5707963267948966\n").is_ok());
        assert!(matches!(parse("# nothing\n"), Err(ParseError::Syntax { .. })));
    }
}
