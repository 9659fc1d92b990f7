use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::graph::{PlanarTriangulation, VertexId};

/// Outcome of repeatedly deleting low-degree vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reducibility {
    /// Removal order; each vertex had degree `<= bound` when removed.
    Reducible { order: Vec<VertexId> },
    /// No vertex of degree `<= bound` remains in a non-empty residual graph.
    Stuck { residual: Vec<VertexId>, residual_min_degree: usize },
}

impl Reducibility {
    pub fn is_reducible(&self) -> bool {
        matches!(self, Reducibility::Reducible { .. })
    }
}

/// Greedy elimination: among vertices whose current degree is at most
/// `bound`, always remove the one with the smallest `key`. Stops when
/// `keep` vertices remain or nothing is removable.
pub(crate) fn eliminate<K: Ord + Copy>(
    g: &PlanarTriangulation,
    bound: usize,
    keep: usize,
    key: impl Fn(VertexId) -> K,
) -> Result<Vec<VertexId>, Vec<usize>> {
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut heap = BinaryHeap::new();
    for v in g.vertices() {
        if degree[v.index()] <= bound {
            heap.push(Reverse((key(v), v)));
        }
    }
    let mut order = Vec::with_capacity(n);
    while order.len() + keep < n {
        let Some(Reverse((_, v))) = heap.pop() else {
            return Err(degree.iter().enumerate().filter(|(i, _)| !removed[*i]).map(|(_, d)| *d).collect());
        };
        if removed[v.index()] {
            continue;
        }
        removed[v.index()] = true;
        order.push(v);
        for &w in g.rotation(v) {
            if removed[w.index()] {
                continue;
            }
            let before = degree[w.index()];
            degree[w.index()] -= 1;
            if before == bound + 1 {
                heap.push(Reverse((key(w), w)));
            }
        }
    }
    Ok(order)
}

/// Decides whether `g` empties under repeated removal of vertices of degree
/// at most `bound`, taking the lowest id first.
pub fn reducibility_check(g: &PlanarTriangulation, bound: usize) -> Reducibility {
    match eliminate(g, bound, 0, |v| v) {
        Ok(order) => Reducibility::Reducible { order },
        Err(_) => {
            // recompute the residual explicitly so it can be reported
            let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
            let mut alive = vec![true; g.n()];
            let mut changed = true;
            while changed {
                changed = false;
                for v in g.vertices() {
                    if alive[v.index()] && degree[v.index()] <= bound {
                        alive[v.index()] = false;
                        changed = true;
                        for &w in g.rotation(v) {
                            if alive[w.index()] {
                                degree[w.index()] -= 1;
                            }
                        }
                    }
                }
            }
            let residual: Vec<VertexId> = g.vertices().filter(|v| alive[v.index()]).collect();
            let residual_min_degree = residual.iter().map(|v| degree[v.index()]).min().unwrap_or(0);
            Reducibility::Stuck { residual, residual_min_degree }
        }
    }
}
