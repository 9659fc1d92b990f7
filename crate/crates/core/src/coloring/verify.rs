use serde::{Deserialize, Serialize};

use crate::planar::{PlanarTriangulation, VertexId};

use super::color::{Color, Coloring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ColoringViolation {
    WrongLength { expected: usize, got: usize },
    Uncolored { vertex: VertexId },
    OutOfRange { vertex: VertexId, value: u8 },
    Monochromatic { u: VertexId, v: VertexId, color: Color },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub violations: Vec<ColoringViolation>,
}

/// Checks that `coloring` is total, uses only colors 1 to 4, and has no
/// monochromatic edge. Every offending vertex and edge is listed.
pub fn verify_coloring(g: &PlanarTriangulation, coloring: &Coloring) -> VerificationReport {
    let mut violations = Vec::new();
    if coloring.len() != g.n() {
        violations.push(ColoringViolation::WrongLength { expected: g.n(), got: coloring.len() });
        return VerificationReport { ok: false, violations };
    }
    for v in g.vertices() {
        match coloring.raw(v) {
            0 => violations.push(ColoringViolation::Uncolored { vertex: v }),
            x if x > 4 => violations.push(ColoringViolation::OutOfRange { vertex: v, value: x }),
            _ => {}
        }
    }
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (coloring.get(u), coloring.get(v)) {
            if a == b {
                violations.push(ColoringViolation::Monochromatic { u, v, color: a });
            }
        }
    }
    VerificationReport { ok: violations.is_empty(), violations }
}

/// True when no edge between two colored vertices is monochromatic.
pub fn is_proper_partial(g: &PlanarTriangulation, coloring: &Coloring) -> bool {
    g.edges().all(|(u, v)| {
        let a = coloring.raw(u);
        a == 0 || a != coloring.raw(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genlab::corpus_entry;

    #[test]
    fn k4_rainbow_is_ok() {
        let g = corpus_entry("k4").unwrap().graph();
        let r = verify_coloring(&g, &Coloring::from_raw(vec![1, 2, 3, 4]));
        assert!(r.ok);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn k4_one_clash() {
        let g = corpus_entry("k4").unwrap().graph();
        let r = verify_coloring(&g, &Coloring::from_raw(vec![1, 1, 2, 3]));
        assert!(!r.ok);
        assert_eq!(
            r.violations,
            vec![ColoringViolation::Monochromatic { u: VertexId(0), v: VertexId(1), color: Color::new(1).unwrap() }]
        );
    }

    #[test]
    fn partial_and_out_of_range() {
        let g = corpus_entry("k4").unwrap().graph();
        let r = verify_coloring(&g, &Coloring::from_raw(vec![0, 7, 2, 3]));
        assert_eq!(r.violations.len(), 2);
        let r = verify_coloring(&g, &Coloring::from_raw(vec![1, 2]));
        assert!(matches!(r.violations[0], ColoringViolation::WrongLength { .. }));
    }
}
