use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::coloring::{exact_color_adjacency, ExactOutcome};
use crate::planar::{trace_faces, Face, PlanarTriangulation, VertexId};

use super::{Schedule, SpiralDecomposition, SpiralSegment};

/// Where a fan's apex sits relative to the two lines of its ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FanSide {
    /// Apex on the upper (later colored) line, rim on the lower line.
    Upper,
    /// Apex on the lower line, rim on the upper line.
    Lower,
    /// All three vertices on the upper line.
    Corner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FanTriangle {
    pub face: Face,
    pub apex: VertexId,
    pub side: FanSide,
}

/// A maximal run of consecutive triangles sharing one apex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub apex: VertexId,
    pub side: FanSide,
    /// The other vertices of the fan's triangles, in first-seen order.
    pub rim: Vec<VertexId>,
    /// Indices into the ladder's triangle list.
    pub triangles: Vec<usize>,
    pub ctype: bool,
}

/// Triangles between an upper line (a segment) and the lower vertices they
/// reach, grouped into fans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderFan {
    /// Upper-line vertices in chain order.
    pub upper: Vec<VertexId>,
    /// Lower-line vertices in coloring order.
    pub lower: Vec<VertexId>,
    pub triangles: Vec<FanTriangle>,
    pub fans: Vec<Fan>,
    /// The subgraph induced by `upper ∪ lower`, with the inherited rotations,
    /// has every vertex of each component on one face.
    pub induced_outerplanar: bool,
    /// The triangles glue into a disk with every vertex on its boundary.
    pub strip_outerplanar: bool,
}

impl LadderFan {
    pub fn ctype_count(&self) -> usize {
        self.fans.iter().filter(|f| f.ctype).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.upper.iter().chain(self.lower.iter()).copied()
    }
}

/// Every face except the declared outer triangle.
pub fn interior_faces(g: &PlanarTriangulation) -> Vec<Face> {
    trace_faces(g).into_iter().filter(|f| !g.is_outer_face(f)).collect()
}

fn build_ladder(
    g: &PlanarTriangulation,
    upper: Vec<VertexId>,
    faces: Vec<Face>,
    rank: impl Fn(VertexId) -> usize,
) -> LadderFan {
    let in_upper: HashSet<VertexId> = upper.iter().copied().collect();
    let mut triangles: Vec<FanTriangle> = faces
        .into_iter()
        .map(|face| {
            let ups: Vec<VertexId> = face.vertices.iter().copied().filter(|v| in_upper.contains(v)).collect();
            let (apex, side) = match ups.len() {
                3 => (*face.vertices.iter().max_by_key(|v| rank(**v)).unwrap(), FanSide::Corner),
                2 => (*face.vertices.iter().find(|v| !in_upper.contains(v)).unwrap(), FanSide::Lower),
                _ => (ups[0], FanSide::Upper),
            };
            FanTriangle { face, apex, side }
        })
        .collect();
    let upper_span = |t: &FanTriangle| {
        let r = t.face.vertices.iter().filter(|v| in_upper.contains(v)).map(|v| rank(*v));
        let (lo, hi) = r.fold((usize::MAX, 0), |(lo, hi), x| (lo.min(x), hi.max(x)));
        (lo, hi, rank(t.apex), t.face.normalized().vertices)
    };
    triangles.sort_by_key(upper_span);

    let mut fans: Vec<Fan> = Vec::new();
    for (i, t) in triangles.iter().enumerate() {
        let extend = t.side != FanSide::Corner && fans.last().is_some_and(|f| f.apex == t.apex && f.side == t.side);
        if !extend {
            fans.push(Fan {
                apex: t.apex,
                side: t.side,
                rim: Vec::new(),
                triangles: Vec::new(),
                ctype: t.side == FanSide::Corner,
            });
        }
        let fan = fans.last_mut().unwrap();
        fan.triangles.push(i);
        for &v in &t.face.vertices {
            if v != t.apex && !fan.rim.contains(&v) {
                fan.rim.push(v);
            }
        }
    }

    let mut lower: Vec<VertexId> = triangles
        .iter()
        .flat_map(|t| t.face.vertices)
        .filter(|v| !in_upper.contains(v))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    lower.sort_by_key(|v| rank(*v));

    let mut all = upper.clone();
    all.extend(lower.iter().copied());
    let induced_outerplanar = induced_is_outerplanar(g, &all);
    let strip_outerplanar = strip_is_outerplanar(&triangles);
    LadderFan { upper, lower, triangles, fans, induced_outerplanar, strip_outerplanar }
}

/// The ladder-fan between two segments: interior faces whose vertices all lie
/// in `inner ∪ outer` and which touch `outer`. The outer segment is the upper
/// line.
pub fn ladder_fan_between(
    g: &PlanarTriangulation,
    d: &SpiralDecomposition,
    inner: &SpiralSegment,
    outer: &SpiralSegment,
) -> LadderFan {
    let upper: Vec<VertexId> = d.segment_vertices(outer).to_vec();
    let inner_set: HashSet<VertexId> = d.segment_vertices(inner).iter().copied().collect();
    let outer_set: HashSet<VertexId> = upper.iter().copied().collect();
    let mut seen = HashSet::new();
    let mut faces = Vec::new();
    for &v in &upper {
        let (s, e) = g.dart_range(v);
        for dart in s..e {
            let f = g.face_of_dart(dart);
            let inside = f.vertices.iter().all(|w| inner_set.contains(w) || outer_set.contains(w));
            if inside && !g.is_outer_face(&f) && seen.insert(f.normalized()) {
                faces.push(f.normalized());
            }
        }
    }
    // chain order within one chain, inner chains before outer ones otherwise
    let k = d.chain_count();
    let key = |v: VertexId| {
        let (c, p) = d.locate(v);
        (k - 1 - c) * g.n() + p
    };
    build_ladder(g, upper, faces, key)
}

/// Interior faces of `g` split into one ladder-fan per segment, in coloring
/// order. A face belongs to the segment of its last-colored vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDecomposition {
    pub ladders: Vec<LadderFan>,
    /// Interior faces no ladder holds.
    pub uncovered: Vec<Face>,
    /// Faces held more than once.
    pub duplicated: Vec<Face>,
}

impl FanDecomposition {
    pub fn is_exact_cover(&self) -> bool {
        self.uncovered.is_empty() && self.duplicated.is_empty()
    }

    pub fn ctype_count(&self) -> usize {
        self.ladders.iter().map(LadderFan::ctype_count).sum()
    }
}

pub fn fan_decomposition(g: &PlanarTriangulation, d: &SpiralDecomposition) -> FanDecomposition {
    let sched = Schedule::new(d, g.n());
    let faces = interior_faces(g);
    let mut per_segment: Vec<Vec<Face>> = vec![Vec::new(); sched.len()];
    for f in &faces {
        let closing = *f.vertices.iter().max_by_key(|v| sched.rank(**v)).unwrap();
        per_segment[sched.segment_of(closing)].push(f.normalized());
    }
    let ladders: Vec<LadderFan> = sched
        .segments
        .iter()
        .zip(per_segment)
        .map(|(seg, fs)| build_ladder(g, d.segment_vertices(seg).to_vec(), fs, |v| sched.rank(v)))
        .collect();

    let mut count: HashMap<Face, usize> = faces.iter().map(|f| (f.normalized(), 0)).collect();
    let mut duplicated = Vec::new();
    for t in ladders.iter().flat_map(|l| &l.triangles) {
        match count.get_mut(&t.face.normalized()) {
            Some(c) => {
                *c += 1;
                if *c == 2 {
                    duplicated.push(t.face);
                }
            }
            None => duplicated.push(t.face),
        }
    }
    let mut uncovered: Vec<Face> = count.into_iter().filter(|(_, c)| *c == 0).map(|(f, _)| f).collect();
    uncovered.sort_by_key(|f| f.vertices);
    FanDecomposition { ladders, uncovered, duplicated }
}

/// Restricts the rotations of `g` to `verts` and checks that every
/// connected component has a traced face containing all of its vertices.
pub fn induced_is_outerplanar(g: &PlanarTriangulation, verts: &[VertexId]) -> bool {
    let local: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let rot: Vec<Vec<usize>> =
        verts.iter().map(|v| g.rotation(*v).iter().filter_map(|w| local.get(w).copied()).collect()).collect();
    let k = verts.len();

    // components
    let mut comp = vec![usize::MAX; k];
    let mut sizes = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut stack = vec![s];
        comp[s] = id;
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in &rot[u] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    let mut covered = vec![false; sizes.len()];
    for (c, &size) in sizes.iter().enumerate() {
        if size <= 2 {
            covered[c] = true;
        }
    }

    let mut used: HashSet<(usize, usize)> = HashSet::new();
    for u in 0..k {
        for &v in &rot[u] {
            if used.contains(&(u, v)) {
                continue;
            }
            let mut on_face = HashSet::new();
            let (mut a, mut b) = (u, v);
            while used.insert((a, b)) {
                on_face.insert(a);
                let r = &rot[b];
                let i = r.iter().position(|&x| x == a).unwrap();
                let next = r[(i + 1) % r.len()];
                (a, b) = (b, next);
            }
            if on_face.len() == sizes[comp[u]] {
                covered[comp[u]] = true;
            }
        }
    }
    covered.iter().all(|&c| c)
}

/// True when the triangles form a triangulated disk whose boundary cycle
/// passes through every vertex, i.e. a maximal outerplanar graph drawn
/// as a strip.
pub fn strip_is_outerplanar(triangles: &[FanTriangle]) -> bool {
    if triangles.is_empty() {
        return true;
    }
    let key = |a: VertexId, b: VertexId| if a < b { (a, b) } else { (b, a) };
    let mut edge_use: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
    for (i, t) in triangles.iter().enumerate() {
        let [a, b, c] = t.face.vertices;
        for (x, y) in [(a, b), (b, c), (c, a)] {
            edge_use.entry(key(x, y)).or_default().push(i);
        }
    }
    if edge_use.values().any(|u| u.len() > 2) {
        return false;
    }
    let verts: HashSet<VertexId> = triangles.iter().flat_map(|t| t.face.vertices).collect();
    // V - E + F = 1 for a disk
    if verts.len() + triangles.len() != edge_use.len() + 1 {
        return false;
    }
    // dual connectivity
    let mut seen = vec![false; triangles.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(t) = stack.pop() {
        let [a, b, c] = triangles[t].face.vertices;
        for (x, y) in [(a, b), (b, c), (c, a)] {
            for &o in &edge_use[&key(x, y)] {
                if !seen[o] {
                    seen[o] = true;
                    stack.push(o);
                }
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return false;
    }
    // boundary: one cycle through every vertex
    let mut bdeg: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for (&(x, y), uses) in &edge_use {
        if uses.len() == 1 {
            bdeg.entry(x).or_default().push(y);
            bdeg.entry(y).or_default().push(x);
        }
    }
    if bdeg.len() != verts.len() || bdeg.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = *bdeg.keys().min().unwrap();
    let (mut prev, mut cur, mut steps) = (start, bdeg[&start][0], 1);
    while cur != start {
        let n = &bdeg[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        (prev, cur) = (cur, next);
        steps += 1;
    }
    steps == verts.len()
}

/// Outcome of the brute-force 3-coloring check on a ladder-fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeColorCheck {
    /// Subgraph of `G` induced by the ladder's vertices.
    pub induced: Option<bool>,
    /// Graph formed by the ladder's own triangles.
    pub strip: Option<bool>,
}

const LADDER_NODE_LIMIT: u64 = 2_000_000;

fn three_colorable(adj: &[Vec<usize>]) -> Option<bool> {
    exact_color_adjacency(adj, 3, Some(LADDER_NODE_LIMIT)).ok().map(|o| matches!(o, ExactOutcome::Colored { .. }))
}

/// Exhaustive 3-colorability of the ladder, both as an induced subgraph and
/// as the union of its triangles. `None` means the search limit was hit.
pub fn ladder_three_colorable(g: &PlanarTriangulation, ladder: &LadderFan) -> ThreeColorCheck {
    let verts: Vec<VertexId> = ladder.vertices().collect();
    let local: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let induced: Vec<Vec<usize>> =
        verts.iter().map(|v| g.rotation(*v).iter().filter_map(|w| local.get(w).copied()).collect()).collect();
    let mut strip: Vec<HashSet<usize>> = vec![HashSet::new(); verts.len()];
    for t in &ladder.triangles {
        let [a, b, c] = t.face.vertices.map(|v| local[&v]);
        for (x, y) in [(a, b), (b, c), (c, a)] {
            strip[x].insert(y);
            strip[y].insert(x);
        }
    }
    let strip: Vec<Vec<usize>> = strip
        .into_iter()
        .map(|s| {
            let mut v: Vec<usize> = s.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect();
    ThreeColorCheck { induced: three_colorable(&induced), strip: three_colorable(&strip) }
}
