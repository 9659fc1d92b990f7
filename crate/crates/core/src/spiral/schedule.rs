use crate::planar::VertexId;

use super::{SpiralDecomposition, SpiralSegment};

/// Coloring order of a decomposition: segments from the innermost outwards
/// (last chain first, last segment of a chain first), vertices of a segment
/// in chain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub segments: Vec<SpiralSegment>,
    seg_of: Vec<u32>,
    rank: Vec<u32>,
}

impl Schedule {
    pub fn new(d: &SpiralDecomposition, n: usize) -> Self {
        let segments: Vec<SpiralSegment> = d.segments_outer_first().rev().copied().collect();
        let mut seg_of = vec![u32::MAX; n];
        let mut rank = vec![u32::MAX; n];
        let mut r = 0u32;
        for (s, seg) in segments.iter().enumerate() {
            for &v in d.segment_vertices(seg) {
                seg_of[v.index()] = s as u32;
                rank[v.index()] = r;
                r += 1;
            }
        }
        Schedule { segments, seg_of, rank }
    }

    /// Index into `segments` of the segment holding `v`.
    #[inline]
    pub fn segment_of(&self, v: VertexId) -> usize {
        self.seg_of[v.index()] as usize
    }

    /// Position of `v` in the global coloring order.
    #[inline]
    pub fn rank(&self, v: VertexId) -> usize {
        self.rank[v.index()] as usize
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Vertices in coloring order.
    pub fn order<'a>(&'a self, d: &'a SpiralDecomposition) -> impl Iterator<Item = VertexId> + 'a {
        self.segments.iter().flat_map(move |s| d.segment_vertices(s).iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genlab::{generate_triangulation, GenConfig};
    use crate::spiral::extract_spiral_chains;

    #[test]
    fn order_is_a_permutation_and_ranks_agree() {
        let g = generate_triangulation(&GenConfig { n: 120, seed: 2, flips: 300 });
        let d = extract_spiral_chains(&g);
        let s = Schedule::new(&d, g.n());
        let order: Vec<_> = s.order(&d).collect();
        assert_eq!(order.len(), g.n());
        for (i, v) in order.iter().enumerate() {
            assert_eq!(s.rank(*v), i);
        }
        let last_chain = d.chain_count() - 1;
        assert_eq!(s.segments[0].chain, last_chain);
        assert_eq!(*s.segments.last().unwrap(), d.segments[0][0]);
    }
}
