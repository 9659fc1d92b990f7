use serde::Serialize;

use crate::planar::{load_rotation_system, PlanarTriangulation};

/// A bundled triangulation with its expected size.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub document: &'static str,
    pub n: usize,
    pub e: usize,
    pub note: &'static str,
}

impl CorpusEntry {
    pub fn graph(&self) -> PlanarTriangulation {
        load_rotation_system(self.document).expect("bundled corpus documents are valid")
    }
}

const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "errera",
        document: include_str!("../../corpus/errera.txt"),
        n: 17,
        e: 45,
        note: "Errera (1921): a graph on which Kempe's degree-five interchange argument breaks down",
    },
    CorpusEntry {
        name: "kittell",
        document: include_str!("../../corpus/kittell.txt"),
        n: 23,
        e: 63,
        note: "Kittell (1935): another Kempe-chain failure configuration",
    },
    CorpusEntry {
        name: "heawood",
        document: include_str!("../../corpus/heawood.txt"),
        n: 25,
        e: 69,
        note: "Stand-in with the size of Heawood's 1890 counterexample (n=25, e=69, min degree 5); \
               the historical adjacency is not bundled",
    },
    CorpusEntry { name: "k4", document: include_str!("../../corpus/k4.txt"), n: 4, e: 6, note: "tetrahedron" },
    CorpusEntry {
        name: "octahedron",
        document: include_str!("../../corpus/octahedron.txt"),
        n: 6,
        e: 12,
        note: "octahedron, 3-chromatic",
    },
    CorpusEntry {
        name: "icosahedron",
        document: include_str!("../../corpus/icosahedron.txt"),
        n: 12,
        e: 30,
        note: "icosahedron, 5-regular",
    },
];

/// All bundled graphs: the three classical Kempe-failure graphs first, then
/// the small regular solids used as fixtures.
pub fn corpus() -> Vec<CorpusEntry> {
    ENTRIES.to_vec()
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name).cloned()
}

pub fn corpus_document(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|e| e.name == name).map(|e| e.document)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{parse_rotation_system, trace_faces, validate_triangulation};

    #[test]
    fn entries_validate_and_match_stats() {
        for entry in corpus() {
            let rs = parse_rotation_system(entry.document).unwrap();
            let report = validate_triangulation(&rs);
            assert!(report.ok, "{}: {:?}", entry.name, report.violations);
            assert_eq!(report.n, entry.n, "{}", entry.name);
            assert_eq!(report.edges, entry.e, "{}", entry.name);
            assert_eq!(entry.e, 3 * entry.n - 6);
            let g = entry.graph();
            assert_eq!(trace_faces(&g).len(), 2 * entry.n - 4);
        }
    }

    #[test]
    fn historical_graphs_present() {
        let names: Vec<_> = corpus().iter().map(|e| e.name).collect();
        for want in ["errera", "kittell", "heawood"] {
            assert!(names.contains(&want));
        }
        assert_eq!(corpus_entry("kittell").unwrap().n, 23);
        assert_eq!(corpus_entry("heawood").unwrap().e, 69);
    }

    #[test]
    fn errera_degrees_are_five_or_six() {
        let g = corpus_entry("errera").unwrap().graph();
        assert!(g.vertices().all(|v| matches!(g.degree(v), 5 | 6)));
    }
}
