use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::PlanarTriangulation;

use super::color::Coloring;

/// Largest instance the backtracking solver accepts by default.
pub const DEFAULT_EXACT_BOUND: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactConfig {
    pub max_vertices: usize,
    /// Search nodes before giving up; `None` searches to exhaustion.
    pub node_limit: Option<u64>,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig { max_vertices: DEFAULT_EXACT_BOUND, node_limit: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("instance has {n} vertices, exact solver bound is {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("search abandoned after {0} nodes")]
    NodeLimit(u64),
    #[error("color count must be between 1 and 4, got {0}")]
    BadColorCount(u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum ExactOutcome {
    Colored {
        colors: Vec<u8>,
        nodes: u64,
    },
    /// The whole search tree was explored without finding a coloring.
    Exhausted {
        nodes: u64,
    },
}

impl ExactOutcome {
    pub fn is_colorable(&self) -> bool {
        matches!(self, ExactOutcome::Colored { .. })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            ExactOutcome::Colored { nodes, .. } | ExactOutcome::Exhausted { nodes } => *nodes,
        }
    }

    pub fn coloring(&self) -> Option<Coloring> {
        match self {
            ExactOutcome::Colored { colors, .. } => Some(Coloring::from_raw(colors.clone())),
            ExactOutcome::Exhausted { .. } => None,
        }
    }
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    k: u8,
    color: Vec<u8>,
    /// `blocked[v][c]` counts colored neighbours of `v` with color `c + 1`.
    blocked: Vec<[u16; 4]>,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    fn available(&self, v: usize) -> u8 {
        (0..self.k).filter(|&c| self.blocked[v][c as usize] == 0).count() as u8
    }

    /// Uncolored vertex with fewest available colors, ties by degree then id.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(u8, usize, usize)> = None;
        for v in 0..self.adj.len() {
            if self.color[v] != 0 {
                continue;
            }
            let key = (self.available(v), usize::MAX - self.adj[v].len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        best.map(|b| b.2)
    }

    fn assign(&mut self, v: usize, c: u8) {
        self.color[v] = c;
        for &w in &self.adj[v] {
            self.blocked[w][(c - 1) as usize] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = 0;
        for &w in &self.adj[v] {
            self.blocked[w][(c - 1) as usize] -= 1;
        }
    }

    /// Every uncolored neighbour of `v` still has a color left.
    fn forward_ok(&self, v: usize) -> bool {
        self.adj[v].iter().all(|&w| self.color[w] != 0 || self.available(w) > 0)
    }

    fn run(&mut self, max_used: u8) -> Result<bool, u64> {
        let Some(v) = self.pick() else { return Ok(true) };
        // colors above max_used + 1 are interchangeable with max_used + 1
        let top = self.k.min(max_used + 1);
        for c in 1..=top {
            if self.blocked[v][(c - 1) as usize] != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(self.nodes);
            }
            self.assign(v, c);
            if self.forward_ok(v) && self.run(max_used.max(c))? {
                return Ok(true);
            }
            self.unassign(v);
        }
        Ok(false)
    }
}

/// Exact `k`-coloring of an arbitrary simple graph given as adjacency lists.
/// DSATUR branching with forward checking and first-use symmetry breaking.
pub fn exact_color_adjacency(adj: &[Vec<usize>], k: u8, node_limit: Option<u64>) -> Result<ExactOutcome, ExactError> {
    if !(1..=4).contains(&k) {
        return Err(ExactError::BadColorCount(k));
    }
    let n = adj.len();
    let mut s =
        Search { adj, k, color: vec![0; n], blocked: vec![[0; 4]; n], nodes: 0, limit: node_limit.unwrap_or(u64::MAX) };
    match s.run(0) {
        Ok(true) => Ok(ExactOutcome::Colored { colors: s.color, nodes: s.nodes }),
        Ok(false) => Ok(ExactOutcome::Exhausted { nodes: s.nodes }),
        Err(nodes) => Err(ExactError::NodeLimit(nodes)),
    }
}

pub(crate) fn adjacency(g: &PlanarTriangulation) -> Vec<Vec<usize>> {
    g.vertices().map(|v| g.rotation(v).iter().map(|w| w.index()).collect()).collect()
}

/// Exact coloring of `g` with `k` colors (3 or 4 in practice).
pub fn exact_color(g: &PlanarTriangulation, k: u8, config: &ExactConfig) -> Result<ExactOutcome, ExactError> {
    if g.n() > config.max_vertices {
        return Err(ExactError::TooLarge { n: g.n(), bound: config.max_vertices });
    }
    exact_color_adjacency(&adjacency(g), k, config.node_limit)
}

pub fn exact_four_color(g: &PlanarTriangulation, config: &ExactConfig) -> Result<ExactOutcome, ExactError> {
    exact_color(g, 4, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_coloring;
    use crate::genlab::corpus_entry;

    fn cfg() -> ExactConfig {
        ExactConfig::default()
    }

    /// Plain enumeration of all k^n assignments.
    fn brute_colorable(adj: &[Vec<usize>], k: u8) -> bool {
        let n = adj.len();
        let total = (k as u64).pow(n as u32);
        (0..total).any(|mut code| {
            let mut col = vec![0u8; n];
            for c in col.iter_mut() {
                *c = (code % k as u64) as u8;
                code /= k as u64;
            }
            (0..n).all(|v| adj[v].iter().all(|&w| col[v] != col[w]))
        })
    }

    #[test]
    fn k4() {
        let g = corpus_entry("k4").unwrap().graph();
        let four = exact_four_color(&g, &cfg()).unwrap();
        let c = four.coloring().unwrap();
        assert!(verify_coloring(&g, &c).ok);
        assert_eq!(c.colors_used().len(), 4);
        assert!(!exact_color(&g, 3, &cfg()).unwrap().is_colorable());
    }

    #[test]
    fn octahedron_three_colorable() {
        let g = corpus_entry("octahedron").unwrap().graph();
        let out = exact_color(&g, 3, &cfg()).unwrap();
        assert!(verify_coloring(&g, &out.coloring().unwrap()).ok);
        assert!(brute_colorable(&adjacency(&g), 3));
    }

    #[test]
    fn errera_needs_four() {
        let g = corpus_entry("errera").unwrap().graph();
        assert!(matches!(exact_color(&g, 3, &cfg()).unwrap(), ExactOutcome::Exhausted { .. }));
        assert!(verify_coloring(&g, &exact_four_color(&g, &cfg()).unwrap().coloring().unwrap()).ok);
    }

    #[test]
    fn agrees_with_enumeration_on_small_graphs() {
        // all graphs on 5 vertices given by a 10-bit edge mask
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        for mask in 0u32..1024 {
            let mut adj = vec![Vec::new(); 5];
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
            for k in 2..=4 {
                let got = exact_color_adjacency(&adj, k, None).unwrap();
                assert_eq!(got.is_colorable(), brute_colorable(&adj, k), "mask {mask} k {k}");
                if let ExactOutcome::Colored { colors, .. } = got {
                    assert!((0..5).all(|v| adj[v].iter().all(|&w| colors[v] != colors[w])));
                    assert!(colors.iter().all(|&c| (1..=k).contains(&c)));
                }
            }
        }
    }

    #[test]
    fn refusals() {
        let g = corpus_entry("errera").unwrap().graph();
        let small = ExactConfig { max_vertices: 10, node_limit: None };
        assert!(matches!(exact_four_color(&g, &small), Err(ExactError::TooLarge { .. })));
        let tight = ExactConfig { max_vertices: 60, node_limit: Some(3) };
        assert!(matches!(exact_color(&g, 3, &tight), Err(ExactError::NodeLimit(_))));
        assert!(exact_color_adjacency(&[], 5, None).is_err());
    }
}
