//! Line-oriented rotation-system documents.
//!
//! ```text
//! # comment
//! n 4
//! outer 0 1 2
//! 0: 1 3 2
//! 1: 0 2 3
//! 2: 0 3 1
//! 3: 0 1 2
//! ```
//!
//! Rotations are clockwise. Serialization is canonical: vertices ascending,
//! each rotation starting at its smallest neighbour.

use std::fmt::Write as _;

use thiserror::Error;

use super::graph::{PlanarTriangulation, RotationSystem, VertexId};
use super::validate::ValidationReport;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("not a valid triangulation: {}", summarize(.0))]
    Invalid(Box<ValidationReport>),
}

fn summarize(r: &ValidationReport) -> String {
    r.violations.iter().map(|v| format!("{}: {}", v.rule, v.detail)).collect::<Vec<_>>().join("; ")
}

fn syntax(line: usize, message: impl Into<String>) -> DocumentError {
    DocumentError::Syntax { line, message: message.into() }
}

fn parse_id(tok: &str, line: usize) -> Result<VertexId, DocumentError> {
    tok.parse::<u32>().map(VertexId).map_err(|_| syntax(line, format!("expected a vertex id, found `{tok}`")))
}

/// Parses a document without checking any graph invariant.
pub fn parse_rotation_system(text: &str) -> Result<RotationSystem, DocumentError> {
    let mut n: Option<(usize, usize)> = None;
    let mut outer: Option<[VertexId; 3]> = None;
    let mut rotations: Vec<Option<Vec<VertexId>>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap();
        match head {
            "n" => {
                if n.is_some() {
                    return Err(syntax(line, "duplicate `n` line"));
                }
                let count = toks
                    .next()
                    .ok_or_else(|| syntax(line, "`n` needs a count"))?
                    .parse::<usize>()
                    .map_err(|_| syntax(line, "`n` count is not a non-negative integer"))?;
                if toks.next().is_some() {
                    return Err(syntax(line, "trailing tokens after `n <count>`"));
                }
                n = Some((count, line));
                rotations = vec![None; count];
            }
            "outer" => {
                if n.is_none() {
                    return Err(syntax(line, "`outer` before `n`"));
                }
                if outer.is_some() {
                    return Err(syntax(line, "duplicate `outer` line"));
                }
                let ids = toks.map(|t| parse_id(t, line)).collect::<Result<Vec<_>, _>>()?;
                if ids.len() != 3 {
                    return Err(syntax(line, format!("`outer` needs 3 vertices, found {}", ids.len())));
                }
                outer = Some([ids[0], ids[1], ids[2]]);
            }
            _ => {
                let Some(label) = head.strip_suffix(':') else {
                    return Err(syntax(line, format!("unrecognised line starting with `{head}`")));
                };
                let (count, _) = n.ok_or_else(|| syntax(line, "rotation line before `n`"))?;
                let v = parse_id(label, line)?;
                if v.index() >= count {
                    return Err(syntax(line, format!("vertex {v} outside [0, {count})")));
                }
                if rotations[v.index()].is_some() {
                    return Err(syntax(line, format!("vertex {v} listed twice")));
                }
                let nbrs = toks.map(|t| parse_id(t, line)).collect::<Result<Vec<_>, _>>()?;
                rotations[v.index()] = Some(nbrs);
            }
        }
    }

    let (count, n_line) = n.ok_or_else(|| syntax(text.lines().count().max(1), "missing `n` line"))?;
    let outer = outer.ok_or_else(|| syntax(n_line, "missing `outer` line"))?;
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(n_line, format!("no rotation line for vertex {v}"))))
        .collect::<Result<Vec<_>, _>>()?;
    debug_assert_eq!(rotations.len(), count);
    Ok(RotationSystem { rotations, outer })
}

/// Parses and validates a document.
pub fn load_rotation_system(text: &str) -> Result<PlanarTriangulation, DocumentError> {
    let rs = parse_rotation_system(text)?;
    PlanarTriangulation::from_rotation_system(rs).map_err(|r| DocumentError::Invalid(Box::new(r)))
}

/// Canonical document for `g`.
pub fn serialize(g: &PlanarTriangulation) -> String {
    let mut out = String::with_capacity(g.dart_count() * 4 + 32);
    let [a, b, c] = g.outer();
    writeln!(out, "n {}", g.n()).unwrap();
    writeln!(out, "outer {a} {b} {c}").unwrap();
    for v in g.vertices() {
        write!(out, "{v}:").unwrap();
        for w in g.rotation(v) {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genlab::corpus_document;

    #[test]
    fn k4_loads() {
        let g = load_rotation_system(corpus_document("k4").unwrap()).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 6));
    }

    #[test]
    fn errera_loads_with_45_edges() {
        let g = load_rotation_system(corpus_document("errera").unwrap()).unwrap();
        assert_eq!(g.n(), 17);
        assert_eq!(g.edge_count(), 45);
        assert_eq!(g.edge_count(), 3 * 17 - 6);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = "n 4\nouter 0 1 2\n0: 1 3 2\n1: 0 x 3\n";
        match parse_rotation_system(text) {
            Err(DocumentError::Syntax { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn missing_vertex_line_is_rejected() {
        let text = "n 4\nouter 0 1 2\n0: 1 3 2\n1: 0 2 3\n2: 0 3 1\n";
        assert!(matches!(parse_rotation_system(text), Err(DocumentError::Syntax { .. })));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# tetra\n\nn 4   # count\nouter 0 1 2\n0: 1 3 2\n\n1: 0 2 3\n2: 0 3 1\n3: 0 1 2\n";
        let g = load_rotation_system(text).unwrap();
        assert_eq!(g.n(), 4);
    }

    #[test]
    fn invalid_graph_embeds_report() {
        let text = "n 4\nouter 0 1 2\n0: 1 2\n1: 0 2 3\n2: 0 3 1\n3: 1 2\n";
        match load_rotation_system(text) {
            Err(DocumentError::Invalid(r)) => assert!(r.has_rule("edge-count")),
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn serialization_is_a_fixpoint() {
        let once = serialize(&load_rotation_system(corpus_document("errera").unwrap()).unwrap());
        let twice = serialize(&load_rotation_system(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn rotation_start_does_not_matter() {
        let a = "n 4\nouter 0 1 2\n0: 1 3 2\n1: 0 2 3\n2: 0 3 1\n3: 0 1 2\n";
        let b = "n 4\nouter 0 1 2\n0: 3 2 1\n1: 2 3 0\n2: 1 0 3\n3: 2 0 1\n";
        assert_eq!(load_rotation_system(a).unwrap(), load_rotation_system(b).unwrap());
    }
}
