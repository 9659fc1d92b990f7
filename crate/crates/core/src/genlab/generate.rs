use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::{PlanarTriangulation, RotationSystem, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n: usize,
    pub seed: u64,
    /// Number of diagonal-flip attempts after the insertion phase. Illegal
    /// picks are skipped, so this is an upper bound on performed flips.
    pub flips: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlipRefusal {
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("{0}-{1} lies on the outer triangle")]
    OuterEdge(VertexId, VertexId),
    #[error("flipping {0}-{1} would duplicate edge {2}-{3}")]
    WouldDuplicate(VertexId, VertexId, VertexId, VertexId),
}

/// Mutable clockwise rotations, used while building or editing.
#[derive(Debug, Clone)]
pub(crate) struct RotationBuilder {
    rot: Vec<Vec<VertexId>>,
    outer: [VertexId; 3],
}

fn pos(list: &[VertexId], v: VertexId) -> Option<usize> {
    list.iter().position(|&w| w == v)
}

impl RotationBuilder {
    /// K4 on vertices 0..4 with outer triangle (0, 1, 2) and 3 inside.
    pub(crate) fn tetrahedron() -> Self {
        let v = |i: u32| VertexId(i);
        RotationBuilder {
            rot: vec![vec![v(1), v(3), v(2)], vec![v(2), v(3), v(0)], vec![v(0), v(3), v(1)], vec![v(0), v(1), v(2)]],
            outer: [v(0), v(1), v(2)],
        }
    }

    pub(crate) fn from_graph(g: &PlanarTriangulation) -> Self {
        let rs = g.to_rotation_system();
        RotationBuilder { rot: rs.rotations, outer: rs.outer }
    }

    fn succ(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = &self.rot[v.index()];
        let i = pos(r, u).expect("neighbour present");
        r[(i + 1) % r.len()]
    }

    fn insert_after(&mut self, v: VertexId, after: VertexId, new: VertexId) {
        let r = &mut self.rot[v.index()];
        let i = pos(r, after).expect("neighbour present");
        r.insert(i + 1, new);
    }

    /// Adds a vertex inside the traced face `[u, v, w]`.
    pub(crate) fn split_face(&mut self, face: [VertexId; 3]) -> VertexId {
        let [u, v, w] = face;
        let x = VertexId(self.rot.len() as u32);
        self.insert_after(v, u, x);
        self.insert_after(w, v, x);
        self.insert_after(u, w, x);
        self.rot.push(vec![u, w, v]);
        x
    }

    fn is_outer_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.outer.contains(&u) && self.outer.contains(&v)
    }

    /// Exchanges the diagonal `u-v` of its quadrilateral for the other one.
    /// Returns the new edge.
    pub(crate) fn flip(&mut self, u: VertexId, v: VertexId) -> Result<(VertexId, VertexId), FlipRefusal> {
        if u == v || u.index() >= self.rot.len() || pos(&self.rot[u.index()], v).is_none() {
            return Err(FlipRefusal::NotAnEdge(u, v));
        }
        if self.is_outer_edge(u, v) {
            return Err(FlipRefusal::OuterEdge(u, v));
        }
        let w = self.succ(v, u);
        let z = self.succ(u, v);
        if pos(&self.rot[w.index()], z).is_some() {
            return Err(FlipRefusal::WouldDuplicate(u, v, w, z));
        }
        let iu = pos(&self.rot[u.index()], v).unwrap();
        self.rot[u.index()].remove(iu);
        let iv = pos(&self.rot[v.index()], u).unwrap();
        self.rot[v.index()].remove(iv);
        self.insert_after(w, v, z);
        self.insert_after(z, u, w);
        Ok((w, z))
    }

    pub(crate) fn into_rotation_system(self) -> RotationSystem {
        RotationSystem { rotations: self.rot, outer: self.outer }
    }
}

/// Random triangulation: K4, then `n - 4` insertions into uniformly chosen
/// interior faces, then `flips` random diagonal-flip attempts on interior
/// edges. Deterministic per seed.
pub fn generate_triangulation(config: &GenConfig) -> PlanarTriangulation {
    assert!(config.n >= 4, "a triangulation needs at least 4 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut b = RotationBuilder::tetrahedron();
    let v = |i: u32| VertexId(i);
    let mut faces: Vec<[VertexId; 3]> = vec![[v(3), v(0), v(2)], [v(3), v(2), v(1)], [v(3), v(1), v(0)]];
    faces.reserve(2 * config.n);
    while b.rot.len() < config.n {
        let f = rng.gen_range(0..faces.len());
        let [p, q, r] = faces[f];
        let x = b.split_face([p, q, r]);
        faces[f] = [p, q, x];
        faces.push([q, r, x]);
        faces.push([r, p, x]);
    }
    drop(faces);

    if config.flips > 0 {
        let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(3 * config.n);
        for (u, rot) in b.rot.iter().enumerate() {
            for &w in rot {
                if VertexId::from(u) < w {
                    edges.push((VertexId::from(u), w));
                }
            }
        }
        for _ in 0..config.flips {
            let i = rng.gen_range(0..edges.len());
            let (p, q) = edges[i];
            if let Ok(e) = b.flip(p, q) {
                edges[i] = e;
            }
        }
    }

    PlanarTriangulation::build_unchecked(b.into_rotation_system())
}

/// Flips one interior edge of `g`, returning the modified graph.
pub fn flip_edge(g: &PlanarTriangulation, edge: (VertexId, VertexId)) -> Result<PlanarTriangulation, FlipRefusal> {
    let mut b = RotationBuilder::from_graph(g);
    b.flip(edge.0, edge.1)?;
    Ok(PlanarTriangulation::build_unchecked(b.into_rotation_system()))
}
