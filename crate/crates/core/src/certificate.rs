//! The `mct 1` certificate format.
//!
//! ```text
//! mct 1
//! # comment
//! n 5
//! cycle 0 1 2 3 4
//! cycle 0 2 4 1 3
//! part 0 1
//! ```
//!
//! The header comes first, then a single `n` line, then any number of `cycle`
//! lines (one per color class, in color order) and optional `part <v> <i>`
//! lines with `i` in `1..=5`. When `part` lines are present they must cover
//! every vertex exactly once. Blank lines and lines starting with `#` are
//! ignored; anything else is an error.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{ColoredGraph, Cycle, GraphError};
use crate::partition::{BlowupPartition, PARTS};

pub const HEADER: &str = "mct 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid decomposition: {0}")]
    Validation(#[from] GraphError),
}

fn parse_err(line: usize, reason: impl Into<String>) -> CertificateError {
    CertificateError::Parse {
        line,
        reason: reason.into(),
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub graph: ColoredGraph,
    pub partition: Option<BlowupPartition>,
}

fn parse_number(token: &str, line: usize) -> Result<usize, CertificateError> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(
            line,
            format!("expected a non-negative integer, got {token:?}"),
        ));
    }
    token
        .parse()
        .map_err(|_| parse_err(line, format!("integer {token:?} out of range")))
}

pub fn parse(text: &str) -> Result<Certificate, CertificateError> {
    let mut seen_header = false;
    let mut n: Option<usize> = None;
    let mut classes: Vec<Cycle> = Vec::new();
    let mut parts: Vec<Option<usize>> = Vec::new();
    let mut any_part = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let (directive, args) = tokens.split_first().expect("non-empty line");

        if !seen_header {
            if trimmed == HEADER || *directive == "mct" && args == ["1"] {
                seen_header = true;
                continue;
            }
            if *directive == "mct" {
                return Err(parse_err(
                    line,
                    format!("unsupported format version {:?}", args.join(" ")),
                ));
            }
            return Err(parse_err(line, format!("expected header {HEADER:?}")));
        }

        match *directive {
            "mct" => return Err(parse_err(line, "repeated header")),
            "n" => {
                if n.is_some() {
                    return Err(parse_err(line, "repeated n line"));
                }
                let [count] = args else {
                    return Err(parse_err(line, format!("n takes 1 value, got {}", args.len())));
                };
                let count = parse_number(count, line)?;
                n = Some(count);
                parts = vec![None; count];
            }
            "cycle" => {
                if n.is_none() {
                    return Err(parse_err(line, "cycle before n"));
                }
                if args.len() != 5 {
                    return Err(parse_err(
                        line,
                        format!("wrong arity: cycle takes 5 vertices, got {}", args.len()),
                    ));
                }
                let mut cycle = [0; 5];
                for (slot, token) in cycle.iter_mut().zip(args) {
                    *slot = parse_number(token, line)?;
                }
                classes.push(cycle);
            }
            "part" => {
                let count = n.ok_or_else(|| parse_err(line, "part before n"))?;
                let [v, i] = args else {
                    return Err(parse_err(
                        line,
                        format!("wrong arity: part takes 2 values, got {}", args.len()),
                    ));
                };
                let (v, i) = (parse_number(v, line)?, parse_number(i, line)?);
                if v >= count {
                    return Err(parse_err(line, format!("vertex {v} out of range for n = {count}")));
                }
                if !(1..=PARTS).contains(&i) {
                    return Err(parse_err(line, format!("part {i} out of range 1..=5")));
                }
                if parts[v].is_some() {
                    return Err(parse_err(line, format!("vertex {v} assigned twice")));
                }
                parts[v] = Some(i - 1);
                any_part = true;
            }
            other => return Err(parse_err(line, format!("unknown directive {other:?}"))),
        }
    }

    if !seen_header {
        return Err(parse_err(last_line.max(1), format!("missing header {HEADER:?}")));
    }
    let n = n.ok_or_else(|| parse_err(last_line, "missing n line"))?;
    let graph = ColoredGraph::new(n, classes)?;
    let partition = if any_part {
        let assignment = parts
            .iter()
            .enumerate()
            .map(|(v, p)| p.ok_or_else(|| parse_err(last_line, format!("vertex {v} has no part"))))
            .collect::<Result<Vec<_>, _>>()?;
        Some(BlowupPartition::new(assignment).expect("parts checked above"))
    } else {
        None
    };
    Ok(Certificate { graph, partition })
}

pub fn render(graph: &ColoredGraph, partition: Option<&BlowupPartition>) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "n {}", graph.n()).unwrap();
    for c in graph.classes() {
        writeln!(out, "cycle {} {} {} {} {}", c[0], c[1], c[2], c[3], c[4]).unwrap();
    }
    if let Some(p) = partition {
        for v in 0..p.len() {
            writeln!(out, "part {v} {}", p.part(v) + 1).unwrap();
        }
    }
    out
}

/// Graphviz rendering with the color index as edge label.
pub fn render_dot(graph: &ColoredGraph) -> String {
    let mut out = String::from("graph mct {\n");
    for v in 0..graph.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v, c) in graph.edges() {
        writeln!(out, "  {u} -- {v} [label=\"{c}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}
