use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::{PlanarTriangulation, VertexId};

use super::color::{Color, Coloring};

/// A maximal connected component of the subgraph induced by two colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeChain {
    pub pair: (Color, Color),
    /// Breadth-first order from the start vertex.
    pub vertices: Vec<VertexId>,
}

impl KempeChain {
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KempeError {
    #[error("{vertex} is not colored {a} or {b}")]
    StartNotInPair { vertex: VertexId, a: Color, b: Color },
    #[error("pair colors must differ")]
    DegeneratePair,
    #[error("chain is not a maximal connected ({a},{b}) component")]
    NotMaximal { a: Color, b: Color },
}

/// Reusable breadth-first scratch space for repeated chain queries.
#[derive(Debug, Clone)]
pub(crate) struct ChainScratch {
    mark: Vec<u32>,
    epoch: u32,
    pub(crate) queue: Vec<VertexId>,
}

impl ChainScratch {
    pub(crate) fn new(n: usize) -> Self {
        ChainScratch { mark: vec![0; n], epoch: 0, queue: Vec::new() }
    }

    fn reset(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        self.queue.clear();
    }

    #[inline]
    pub(crate) fn marked(&self, v: VertexId) -> bool {
        self.mark[v.index()] == self.epoch
    }

    /// Collects the union of the `(a, b)` components of `starts` into
    /// `self.queue`.
    pub(crate) fn collect(&mut self, g: &PlanarTriangulation, c: &Coloring, starts: &[VertexId], a: Color, b: Color) {
        self.reset();
        for &s in starts {
            if self.mark[s.index()] != self.epoch {
                self.mark[s.index()] = self.epoch;
                self.queue.push(s);
            }
        }
        let (ra, rb) = (a.value(), b.value());
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for &w in g.rotation(u) {
                let cw = c.raw(w);
                if (cw == ra || cw == rb) && self.mark[w.index()] != self.epoch {
                    self.mark[w.index()] = self.epoch;
                    self.queue.push(w);
                }
            }
        }
    }

    /// Swaps `a` and `b` on the collected component.
    pub(crate) fn swap(&self, c: &mut Coloring, a: Color, b: Color) {
        for &v in &self.queue {
            let now = c.get(v).expect("chain vertices are colored");
            c.set(v, if now == a { b } else { a });
        }
    }
}

/// The `(a, b)` Kempe chain through `start`.
pub fn kempe_chain(
    g: &PlanarTriangulation,
    coloring: &Coloring,
    start: VertexId,
    pair: (Color, Color),
) -> Result<KempeChain, KempeError> {
    let (a, b) = pair;
    if a == b {
        return Err(KempeError::DegeneratePair);
    }
    match coloring.get(start) {
        Some(c) if c == a || c == b => {}
        _ => return Err(KempeError::StartNotInPair { vertex: start, a, b }),
    }
    let mut s = ChainScratch::new(g.n());
    s.collect(g, coloring, &[start], a, b);
    Ok(KempeChain { pair, vertices: s.queue })
}

/// Exchanges the chain's two colors on its vertices. The chain must be a
/// maximal connected component of its color pair in `coloring`.
pub fn kempe_switch(g: &PlanarTriangulation, coloring: &Coloring, chain: &KempeChain) -> Result<Coloring, KempeError> {
    let (a, b) = chain.pair;
    let not_maximal = KempeError::NotMaximal { a, b };
    let Some(&start) = chain.vertices.first() else { return Err(not_maximal) };
    let fresh = kempe_chain(g, coloring, start, chain.pair).map_err(|_| not_maximal.clone())?;
    let mut want = fresh.vertices;
    let mut got = chain.vertices.clone();
    want.sort_unstable();
    got.sort_unstable();
    if want != got {
        return Err(not_maximal);
    }
    let mut out = coloring.clone();
    for &v in &chain.vertices {
        let now = coloring.get(v).unwrap();
        out.set(v, if now == a { b } else { a });
    }
    Ok(out)
}
