use serde::{Deserialize, Serialize};

use crate::planar::PlanarTriangulation;

use super::extract::SpiralDecomposition;

/// Positions `start..=end` of one chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpiralSegment {
    pub chain: usize,
    pub start: usize,
    pub end: usize,
}

impl SpiralSegment {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_position(&self, pos: usize) -> bool {
        (self.start..=self.end).contains(&pos)
    }
}

/// Cuts chain `chain` into full-revolution segments.
///
/// A segment starting at position `i` ends at the last position `j >= i + 2`
/// whose vertex is adjacent to `v_i` but not to `v_{i+1}`. When no such `j`
/// exists the rest of the chain is one closing segment.
pub fn segment_chain(g: &PlanarTriangulation, d: &SpiralDecomposition, chain: usize) -> Vec<SpiralSegment> {
    let path = &d.chains[chain].vertices;
    let m = path.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < m {
        if i + 1 >= m {
            out.push(SpiralSegment { chain, start: i, end: m - 1 });
            break;
        }
        let next = path[i + 1];
        let mut end = None;
        for &w in g.rotation(path[i]) {
            let (wc, wp) = d.locate(w);
            if wc != chain || wp < i + 2 || end.is_some_and(|e| wp <= e) {
                continue;
            }
            if !g.has_edge(w, next) {
                end = Some(wp);
            }
        }
        let j = end.unwrap_or(m - 1);
        out.push(SpiralSegment { chain, start: i, end: j });
        i = j + 1;
    }
    out
}
