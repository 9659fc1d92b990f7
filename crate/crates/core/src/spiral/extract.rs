use serde::{Deserialize, Serialize};

use crate::planar::{PlanarTriangulation, VertexId};

use super::segment::{segment_chain, SpiralSegment};

/// One spiral chain: a simple path of the graph, in walk order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiralChain {
    pub vertices: Vec<VertexId>,
    /// Earlier-visited vertex the chain was started from; `None` for the first chain.
    pub anchor: Option<VertexId>,
}

impl SpiralChain {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Vertex-disjoint spiral chains covering the graph (outermost first), each
/// cut into full-revolution segments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "DecompositionRepr")]
pub struct SpiralDecomposition {
    pub chains: Vec<SpiralChain>,
    /// `segments[c]` partitions `chains[c]`, in chain order.
    pub segments: Vec<Vec<SpiralSegment>>,
    /// Rotation entries inspected during extraction.
    pub rotation_steps: u64,
    #[serde(skip)]
    chain_of: Vec<u32>,
    #[serde(skip)]
    pos_of: Vec<u32>,
}

#[derive(Deserialize)]
struct DecompositionRepr {
    chains: Vec<SpiralChain>,
    segments: Vec<Vec<SpiralSegment>>,
    rotation_steps: u64,
}

impl From<DecompositionRepr> for SpiralDecomposition {
    fn from(r: DecompositionRepr) -> Self {
        let n = r.chains.iter().map(SpiralChain::len).sum();
        let mut d = SpiralDecomposition {
            chains: r.chains,
            segments: r.segments,
            rotation_steps: r.rotation_steps,
            chain_of: Vec::new(),
            pos_of: Vec::new(),
        };
        d.reindex(n);
        d
    }
}

impl SpiralDecomposition {
    pub(crate) fn from_chains(g: &PlanarTriangulation, chains: Vec<SpiralChain>, rotation_steps: u64) -> Self {
        let mut chain_of = vec![u32::MAX; g.n()];
        let mut pos_of = vec![u32::MAX; g.n()];
        for (c, chain) in chains.iter().enumerate() {
            for (i, v) in chain.vertices.iter().enumerate() {
                chain_of[v.index()] = c as u32;
                pos_of[v.index()] = i as u32;
            }
        }
        let mut d = SpiralDecomposition { chains, segments: Vec::new(), rotation_steps, chain_of, pos_of };
        d.segments = (0..d.chains.len()).map(|c| segment_chain(g, &d, c)).collect();
        d
    }

    fn reindex(&mut self, n: usize) {
        self.chain_of = vec![u32::MAX; n];
        self.pos_of = vec![u32::MAX; n];
        for (c, chain) in self.chains.iter().enumerate() {
            for (i, v) in chain.vertices.iter().enumerate() {
                self.chain_of[v.index()] = c as u32;
                self.pos_of[v.index()] = i as u32;
            }
        }
    }

    /// `(chain, position)` of `v`.
    #[inline]
    pub fn locate(&self, v: VertexId) -> (usize, usize) {
        (self.chain_of[v.index()] as usize, self.pos_of[v.index()] as usize)
    }

    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    pub fn vertex(&self, chain: usize, pos: usize) -> VertexId {
        self.chains[chain].vertices[pos]
    }

    pub fn segment_vertices(&self, seg: &SpiralSegment) -> &[VertexId] {
        &self.chains[seg.chain].vertices[seg.start..=seg.end]
    }

    /// All segments, outermost first: chain by chain, in chain order.
    pub fn segments_outer_first(&self) -> impl DoubleEndedIterator<Item = &SpiralSegment> {
        self.segments.iter().flatten()
    }

    pub fn segment_count(&self) -> usize {
        self.segments.iter().map(Vec::len).sum()
    }

    pub fn heap_bytes(&self) -> usize {
        self.chains.iter().map(|c| c.vertices.capacity() * 4 + 16).sum::<usize>()
            + self.segments.iter().map(|s| s.capacity() * std::mem::size_of::<SpiralSegment>()).sum::<usize>()
            + self.chain_of.capacity() * 4
            + self.pos_of.capacity() * 4
    }
}

/// Per-vertex clockwise scan state. A vertex entered from `p` scans its
/// rotation starting just after `p`; the cursor only moves forward because
/// visited flags never reset.
struct Cursor {
    base: u32,
    steps: u32,
}

struct Walker<'g> {
    g: &'g PlanarTriangulation,
    visited: Vec<bool>,
    cursor: Vec<Cursor>,
    steps: u64,
}

impl<'g> Walker<'g> {
    /// Marks `v` visited, entered through `dart` (`p -> v`).
    fn visit(&mut self, v: VertexId, entry_dart: usize) {
        self.visited[v.index()] = true;
        let back = self.g.twin(entry_dart);
        self.cursor[v.index()] = Cursor { base: self.g.dart_position(back) as u32, steps: 0 };
    }

    /// First unvisited neighbour of `v` clockwise after its entry neighbour,
    /// with the dart leading to it.
    fn next_unvisited(&mut self, v: VertexId) -> Option<(VertexId, usize)> {
        let (start, end) = self.g.dart_range(v);
        let deg = (end - start) as u32;
        let cur = &mut self.cursor[v.index()];
        while cur.steps < deg {
            cur.steps += 1;
            self.steps += 1;
            let dart = start + ((cur.base + cur.steps) % deg) as usize;
            let w = self.g.head(dart);
            if !self.visited[w.index()] {
                return Some((w, dart));
            }
        }
        None
    }
}

/// Walks the spiral chains of `g`.
///
/// The first chain starts `a, c, b` around the outer triangle `(a, b, c)`.
/// From then on, standing at `u` having arrived from `p`, the next vertex is
/// the first unvisited neighbour met scanning `u`'s clockwise rotation just
/// after `p`. A chain ends when `u` has no unvisited neighbour; the next one
/// starts from the most recently visited vertex that still has one, at the
/// neighbour that same scan yields. Runs in `O(n + e)`.
pub fn extract_spiral_chains(g: &PlanarTriangulation) -> SpiralDecomposition {
    let n = g.n();
    let [a, b, c] = g.outer();
    let mut w =
        Walker { g, visited: vec![false; n], cursor: (0..n).map(|_| Cursor { base: 0, steps: 0 }).collect(), steps: 0 };

    // a is treated as entered from b, closing the outer walk a -> c -> b -> a
    let dart = |u: VertexId, v: VertexId| g.find_dart(u, v).expect("outer triangle edge");
    w.visit(a, dart(b, a));
    w.visit(c, dart(a, c));
    w.visit(b, dart(c, b));

    let mut chains = vec![SpiralChain { vertices: vec![a, c, b], anchor: None }];
    // visited vertices that may still have unvisited neighbours
    let mut frontier: Vec<VertexId> = vec![a, c, b];
    let mut current = b;

    loop {
        if let Some((next, d)) = w.next_unvisited(current) {
            w.visit(next, d);
            chains.last_mut().unwrap().vertices.push(next);
            frontier.push(next);
            current = next;
            continue;
        }
        let mut restarted = false;
        while let Some(&top) = frontier.last() {
            if let Some((next, d)) = w.next_unvisited(top) {
                w.visit(next, d);
                chains.push(SpiralChain { vertices: vec![next], anchor: Some(top) });
                frontier.push(next);
                current = next;
                restarted = true;
                break;
            }
            frontier.pop();
        }
        if !restarted {
            break;
        }
    }

    SpiralDecomposition::from_chains(g, chains, w.steps)
}
