use std::fmt;

use serde::{Deserialize, Serialize};

use super::validate::{validate_triangulation, ValidationReport};

/// Dense vertex index in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An unvalidated rotation system: whatever a document or a caller handed us.
///
/// `rotations[v]` lists the neighbours of `v` in clockwise order. Nothing here
/// is guaranteed; [`validate_triangulation`] decides whether it describes a
/// maximal planar graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub rotations: Vec<Vec<VertexId>>,
    pub outer: [VertexId; 3],
}

impl RotationSystem {
    pub fn new(rotations: Vec<Vec<VertexId>>, outer: [VertexId; 3]) -> Self {
        RotationSystem { rotations, outer }
    }

    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    /// Half the total rotation length. Only meaningful when rotations are symmetric.
    pub fn edge_count(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// A face of the embedding as traced: `[u, v, w]` means the darts
/// `u->v`, `v->w`, `w->u` bound it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub vertices: [VertexId; 3],
}

impl Face {
    /// Rotated so the smallest id comes first, keeping the cyclic order.
    pub fn normalized(&self) -> Face {
        let v = self.vertices;
        let k = (0..3).min_by_key(|&i| v[i]).unwrap();
        Face { vertices: [v[k], v[(k + 1) % 3], v[(k + 2) % 3]] }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

/// A validated maximal planar graph with a clockwise rotation system and a
/// declared outer triangle.
///
/// Storage is compressed: the darts leaving `v` occupy
/// `offsets[v]..offsets[v + 1]` in clockwise order, each rotation starting at
/// its smallest neighbour. `twin[d]` is the reverse dart of `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarTriangulation {
    offsets: Vec<u32>,
    heads: Vec<VertexId>,
    tails: Vec<VertexId>,
    twin: Vec<u32>,
    outer: [VertexId; 3],
}

impl PlanarTriangulation {
    /// Validates `rs` and builds the compressed representation.
    pub fn from_rotation_system(rs: RotationSystem) -> Result<Self, ValidationReport> {
        let report = validate_triangulation(&rs);
        if !report.ok {
            return Err(report);
        }
        Ok(Self::build_unchecked(rs))
    }

    /// Builds without validation. Callers must already know the system is valid.
    pub(crate) fn build_unchecked(rs: RotationSystem) -> Self {
        let n = rs.n();
        let mut offsets = Vec::with_capacity(n + 1);
        let total: usize = rs.rotations.iter().map(Vec::len).sum();
        let mut heads = Vec::with_capacity(total);
        let mut tails = Vec::with_capacity(total);
        offsets.push(0u32);
        for (v, rot) in rs.rotations.iter().enumerate() {
            let start = rot.iter().enumerate().min_by_key(|(_, w)| **w).map(|(i, _)| i).unwrap_or(0);
            for k in 0..rot.len() {
                heads.push(rot[(start + k) % rot.len()]);
                tails.push(VertexId(v as u32));
            }
            offsets.push(heads.len() as u32);
        }

        // pair darts u->v with v->u by sorting on the unordered endpoint pair
        let mut keyed: Vec<(u64, u32)> = (0..heads.len())
            .map(|d| {
                let (a, b) = (tails[d].0, heads[d].0);
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                (((lo as u64) << 32) | hi as u64, d as u32)
            })
            .collect();
        keyed.sort_unstable();
        let mut twin = vec![0u32; heads.len()];
        for pair in keyed.chunks_exact(2) {
            twin[pair[0].1 as usize] = pair[1].1;
            twin[pair[1].1 as usize] = pair[0].1;
        }

        PlanarTriangulation { offsets, heads, tails, twin, outer: rs.outer }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.heads.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.heads.len()
    }

    /// Outer triangle `(a, b, c)`, clockwise.
    pub fn outer(&self) -> [VertexId; 3] {
        self.outer
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).map(VertexId::from)
    }

    /// Clockwise neighbour order of `v`, starting at its smallest neighbour.
    #[inline]
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        let (s, e) = self.dart_range(v);
        &self.heads[s..e]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let (s, e) = self.dart_range(v);
        e - s
    }

    #[inline]
    pub fn dart_range(&self, v: VertexId) -> (usize, usize) {
        (self.offsets[v.index()] as usize, self.offsets[v.index() + 1] as usize)
    }

    #[inline]
    pub fn head(&self, dart: usize) -> VertexId {
        self.heads[dart]
    }

    #[inline]
    pub fn tail(&self, dart: usize) -> VertexId {
        self.tails[dart]
    }

    #[inline]
    pub fn twin(&self, dart: usize) -> usize {
        self.twin[dart] as usize
    }

    /// Position of `dart` within its tail's rotation.
    #[inline]
    pub fn dart_position(&self, dart: usize) -> usize {
        dart - self.offsets[self.tails[dart].index()] as usize
    }

    /// The dart following `dart` clockwise around its tail.
    #[inline]
    pub fn next_clockwise(&self, dart: usize) -> usize {
        let (s, e) = self.dart_range(self.tails[dart]);
        if dart + 1 == e {
            s
        } else {
            dart + 1
        }
    }

    /// The dart `u -> v`, if the edge exists.
    pub fn find_dart(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let (s, e) = self.dart_range(u);
        (s..e).find(|&d| self.heads[d] == v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.rotation(a).contains(&b)
    }

    /// Neighbour following `u` clockwise around `v`.
    pub fn succ(&self, v: VertexId, u: VertexId) -> Option<VertexId> {
        let d = self.find_dart(v, u)?;
        Some(self.heads[self.next_clockwise(d)])
    }

    /// Every undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.heads.len()).filter_map(move |d| {
            let (u, v) = (self.tails[d], self.heads[d]);
            (u < v).then_some((u, v))
        })
    }

    /// The face to the left of `dart` when walking it: `[u, v, succ_v(u)]`.
    pub fn face_of_dart(&self, dart: usize) -> Face {
        let u = self.tails[dart];
        let v = self.heads[dart];
        let w = self.heads[self.next_clockwise(self.twin(dart))];
        Face { vertices: [u, v, w] }
    }

    /// True when `face` is the declared outer triangle (same cyclic order).
    pub fn is_outer_face(&self, face: &Face) -> bool {
        face.normalized() == (Face { vertices: self.outer }).normalized()
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Back to the loose form, e.g. for editing.
    pub fn to_rotation_system(&self) -> RotationSystem {
        RotationSystem { rotations: self.vertices().map(|v| self.rotation(v).to_vec()).collect(), outer: self.outer }
    }

    /// Approximate heap footprint in bytes.
    pub fn heap_bytes(&self) -> usize {
        self.offsets.capacity() * 4 + self.heads.capacity() * 4 + self.tails.capacity() * 4 + self.twin.capacity() * 4
    }
}

/// Traces every face of `g`. Each dart bounds exactly one face; on a valid
/// triangulation the result has `2n - 4` entries, all triangles.
pub fn trace_faces(g: &PlanarTriangulation) -> Vec<Face> {
    let mut used = vec![false; g.dart_count()];
    let mut faces = Vec::with_capacity(2 * g.n());
    for d in 0..g.dart_count() {
        if used[d] {
            continue;
        }
        let face = g.face_of_dart(d);
        // the three darts of this face
        let mut cur = d;
        for _ in 0..3 {
            used[cur] = true;
            cur = g.next_clockwise(g.twin(cur));
        }
        faces.push(face);
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genlab::corpus_document;
    use crate::planar::load_rotation_system;

    #[test]
    fn k4_has_four_faces_and_outer_is_traced() {
        let g = load_rotation_system(corpus_document("k4").unwrap()).unwrap();
        let faces = trace_faces(&g);
        assert_eq!(faces.len(), 4);
        assert_eq!(faces.iter().filter(|f| g.is_outer_face(f)).count(), 1);
    }

    #[test]
    fn octahedron_faces() {
        let g = load_rotation_system(corpus_document("octahedron").unwrap()).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(trace_faces(&g).len(), 8);
    }

    #[test]
    fn kittell_has_42_faces() {
        let g = load_rotation_system(corpus_document("kittell").unwrap()).unwrap();
        assert_eq!(g.n(), 23);
        assert_eq!(trace_faces(&g).len(), 2 * 23 - 4);
    }

    #[test]
    fn twins_are_reverse_darts() {
        let g = load_rotation_system(corpus_document("errera").unwrap()).unwrap();
        for d in 0..g.dart_count() {
            let t = g.twin(d);
            assert_eq!(g.tail(t), g.head(d));
            assert_eq!(g.head(t), g.tail(d));
            assert_eq!(g.twin(t), d);
        }
    }

    #[test]
    fn every_dart_used_once() {
        let g = load_rotation_system(corpus_document("icosahedron").unwrap()).unwrap();
        let faces = trace_faces(&g);
        let mut seen = std::collections::HashSet::new();
        for f in &faces {
            let v = f.vertices;
            for i in 0..3 {
                assert!(seen.insert((v[i], v[(i + 1) % 3])), "dart used twice");
            }
        }
        assert_eq!(seen.len(), g.dart_count());
    }
}
