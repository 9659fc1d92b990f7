use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::graph::{RotationSystem, VertexId};

/// One broken rule, with the first offending vertices (edges are given as
/// consecutive pairs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
    pub vertices: Vec<VertexId>,
    /// Source line, when the violation can be pinned to a document line.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
}

/// Structural facts that do not make a graph invalid but matter when judging
/// results: the algorithms assume internally 5-connected inputs, which is not
/// enforced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Advisory {
    pub min_degree: usize,
    pub degree_three: usize,
    pub degree_four: usize,
    /// Triangles that are not faces (3-cuts).
    pub separating_triangles: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub n: usize,
    pub edges: usize,
    pub faces: usize,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub advisory: Option<Advisory>,
}

impl ValidationReport {
    fn push(&mut self, rule: &str, detail: String, vertices: Vec<VertexId>) {
        if self.violations.iter().any(|v| v.rule == rule) {
            return;
        }
        self.violations.push(Violation { rule: rule.to_string(), detail, vertices, line: None });
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

/// Checks every maximal-planar invariant of a candidate rotation system.
///
/// Reports at most one violation per rule (the first offender found). Face
/// rules are only evaluated once the rotations are simple and symmetric,
/// since face tracing is undefined otherwise.
pub fn validate_triangulation(rs: &RotationSystem) -> ValidationReport {
    let n = rs.n();
    let mut report = ValidationReport { n, ..Default::default() };

    if n < 4 {
        report.push("min-vertices", format!("n = {n}, need at least 4"), vec![]);
    }

    let mut range_ok = true;
    for (v, rot) in rs.rotations.iter().enumerate() {
        if let Some(w) = rot.iter().find(|w| w.index() >= n) {
            report.push(
                "vertex-range",
                format!("vertex {v} lists neighbour {w} outside [0, {n})"),
                vec![VertexId::from(v), *w],
            );
            range_ok = false;
        }
    }
    if let Some(w) = rs.outer.iter().find(|w| w.index() >= n) {
        report.push("vertex-range", format!("outer vertex {w} outside [0, {n})"), vec![*w]);
        range_ok = false;
    }
    if !range_ok {
        report.ok = false;
        return report;
    }

    let mut simple = true;
    for (v, rot) in rs.rotations.iter().enumerate() {
        let vid = VertexId::from(v);
        if rot.contains(&vid) {
            report.push("self-loop", format!("vertex {v} lists itself"), vec![vid]);
            simple = false;
        }
        let mut seen = HashSet::with_capacity(rot.len());
        for &w in rot {
            if !seen.insert(w) {
                report.push("duplicate-neighbor", format!("vertex {v} lists {w} twice"), vec![vid, w]);
                simple = false;
            }
        }
    }

    let mut symmetric = true;
    let sets: Vec<HashSet<VertexId>> = rs.rotations.iter().map(|r| r.iter().copied().collect()).collect();
    'outer: for (v, rot) in rs.rotations.iter().enumerate() {
        for &w in rot {
            if !sets[w.index()].contains(&VertexId::from(v)) {
                report.push(
                    "asymmetric",
                    format!("{w} is in the rotation of {v} but not vice versa"),
                    vec![VertexId::from(v), w],
                );
                symmetric = false;
                break 'outer;
            }
        }
    }

    let total: usize = rs.rotations.iter().map(Vec::len).sum();
    let edges = total / 2;
    report.edges = edges;
    if n >= 4 && (total % 2 != 0 || edges != 3 * n - 6) {
        report.push("edge-count", format!("e = {edges}, expected 3n - 6 = {}", 3 * n - 6), vec![]);
    }

    if let Some(v) = (0..n).find(|&v| rs.rotations[v].is_empty()) {
        report.push("connectivity", format!("vertex {v} is isolated"), vec![VertexId::from(v)]);
    } else if n > 0 {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in &rs.rotations[v] {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    stack.push(w.index());
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            report.push("connectivity", format!("vertex {v} unreachable from vertex 0"), vec![VertexId::from(v)]);
        }
    }

    let o = rs.outer;
    if o[0] == o[1] || o[1] == o[2] || o[0] == o[2] {
        report.push("outer-face", "outer triple repeats a vertex".into(), o.to_vec());
    }

    if simple && symmetric {
        let walks = face_walks(rs);
        report.faces = walks.len();
        if let Some(w) = walks.iter().find(|w| w.len() != 3) {
            report.push("face-size", format!("traced a face of size {}", w.len()), w.clone());
        }
        if n >= 4 && walks.len() != 2 * n - 4 {
            report.push("face-count", format!("traced {} faces, expected 2n - 4 = {}", walks.len(), 2 * n - 4), vec![]);
        }
        let outer_traced = walks.iter().any(|w| w.len() == 3 && same_cycle(w, &o));
        if !outer_traced {
            report.push(
                "outer-face",
                format!("outer {} {} {} is not a traced face in clockwise order", o[0], o[1], o[2]),
                o.to_vec(),
            );
        }
        if report.violations.is_empty() {
            report.advisory = Some(advisory(rs, &walks));
        }
    }

    report.ok = report.violations.is_empty();
    report
}

fn same_cycle(walk: &[VertexId], tri: &[VertexId; 3]) -> bool {
    (0..3).any(|k| (0..3).all(|i| walk[i] == tri[(i + k) % 3]))
}

/// Traces face boundaries of a simple, symmetric rotation system. The walk
/// after dart `u -> v` continues with `v -> w`, `w` following `u` clockwise
/// around `v`.
pub fn face_walks(rs: &RotationSystem) -> Vec<Vec<VertexId>> {
    let mut succ: HashMap<(VertexId, VertexId), VertexId> = HashMap::new();
    for (v, rot) in rs.rotations.iter().enumerate() {
        for (i, &u) in rot.iter().enumerate() {
            succ.insert((VertexId::from(v), u), rot[(i + 1) % rot.len()]);
        }
    }
    let mut used: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut walks = Vec::new();
    for (v, rot) in rs.rotations.iter().enumerate() {
        for &u in rot {
            let start = (VertexId::from(v), u);
            if used.contains(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = start;
            while used.insert((a, b)) {
                walk.push(a);
                let c = succ[&(b, a)];
                a = b;
                b = c;
            }
            walks.push(walk);
        }
    }
    walks
}

fn advisory(rs: &RotationSystem, walks: &[Vec<VertexId>]) -> Advisory {
    let n = rs.n();
    let degrees: Vec<usize> = rs.rotations.iter().map(Vec::len).collect();
    let faces: HashSet<[VertexId; 3]> = walks
        .iter()
        .map(|w| {
            let mut t = [w[0], w[1], w[2]];
            t.sort();
            t
        })
        .collect();
    let sets: Vec<HashSet<VertexId>> = rs.rotations.iter().map(|r| r.iter().copied().collect()).collect();
    let mut separating = 0;
    for u in 0..n {
        let uid = VertexId::from(u);
        for &v in &rs.rotations[u] {
            if v <= uid {
                continue;
            }
            for &w in &rs.rotations[v.index()] {
                if w <= v || !sets[u].contains(&w) {
                    continue;
                }
                if !faces.contains(&[uid, v, w]) {
                    separating += 1;
                }
            }
        }
    }
    Advisory {
        min_degree: degrees.iter().copied().min().unwrap_or(0),
        degree_three: degrees.iter().filter(|&&d| d == 3).count(),
        degree_four: degrees.iter().filter(|&&d| d == 4).count(),
        separating_triangles: separating,
    }
}
