use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::planar::{PlanarTriangulation, VertexId};

use super::extract::SpiralDecomposition;

/// Three internally disjoint paths between two branch vertices that wall a
/// later chain off from an earlier one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSeparator {
    pub branch: (VertexId, VertexId),
    /// Each path runs from `branch.0` to `branch.1`. The first two are arcs of
    /// a cycle of earlier-chain vertices; the third crosses the walled-off
    /// region.
    pub paths: [Vec<VertexId>; 3],
    /// Last vertex of the earlier chain and first vertex of the next one.
    pub blocked: (VertexId, VertexId),
}

impl ThetaSeparator {
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.paths.iter().flatten().copied()
    }
}

/// Why chain `chain_index` stopped before reaching chain `chain_index + 1`.
///
/// The region is the component of the next chain's first vertex among the
/// vertices of all later chains. Its boundary is a closed walk over earlier
/// vertices; loop-erasing that walk from the restart anchor gives a cycle
/// through the anchor, which is split into two arcs at a far vertex `t`. The
/// third path goes anchor, into the region, and out to `t`. Returns `None`
/// when there is no next chain.
pub fn detect_theta_separator(
    g: &PlanarTriangulation,
    d: &SpiralDecomposition,
    chain_index: usize,
) -> Option<ThetaSeparator> {
    let next = d.chains.get(chain_index + 1)?;
    let x = *d.chains[chain_index].vertices.last()?;
    let y = *next.vertices.first()?;
    let s = next.anchor?;

    let n = g.n();
    let later: Vec<bool> = (0..n).map(|v| d.locate(VertexId(v as u32)).0 > chain_index).collect();
    let mut in_region = vec![false; n];
    let mut parent = vec![None; n];
    let mut queue = VecDeque::from([y]);
    in_region[y.index()] = true;
    let mut region = Vec::new();
    while let Some(u) = queue.pop_front() {
        region.push(u);
        for &w in g.rotation(u) {
            if later[w.index()] && !in_region[w.index()] {
                in_region[w.index()] = true;
                parent[w.index()] = Some(u);
                queue.push_back(w);
            }
        }
    }

    // Directed boundary edges: consecutive outside neighbours of a region vertex.
    let mut out: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for &u in &region {
        let rot = g.rotation(u);
        for k in 0..rot.len() {
            let (a, b) = (rot[k], rot[(k + 1) % rot.len()]);
            if !in_region[a.index()] && !in_region[b.index()] {
                out.entry(a).or_default().push(b);
            }
        }
    }
    for list in out.values_mut() {
        list.sort_unstable();
    }

    let cycle = (0..out.get(&s).map_or(0, Vec::len)).find_map(|first| boundary_cycle(&out, s, first))?;

    let len = cycle.len();
    let ti = if len >= 4 { len / 2 } else { 1 };
    let t = cycle[ti];
    let arc_a = cycle[..=ti].to_vec();
    let mut arc_b: Vec<VertexId> = cycle[ti..].iter().rev().copied().collect();
    arc_b.insert(0, s);

    // Region vertex next to t, reached from y through the BFS tree.
    let r = g.rotation(t).iter().copied().find(|w| in_region[w.index()])?;
    let mut through = vec![t, r];
    let mut cur = r;
    while let Some(p) = parent[cur.index()] {
        through.push(p);
        cur = p;
    }
    through.push(s);
    through.reverse();

    Some(ThetaSeparator { branch: (s, t), paths: [arc_a, arc_b, through], blocked: (x, y) })
}

/// Walks unused boundary edges from `s`, starting with its `first` out-edge,
/// until the walk closes, then loop-erases it. `None` if the erased walk is
/// shorter than a triangle.
fn boundary_cycle(out: &HashMap<VertexId, Vec<VertexId>>, s: VertexId, first: usize) -> Option<Vec<VertexId>> {
    let mut used: HashMap<VertexId, usize> = HashMap::new();
    let mut walk = vec![s];
    let mut cur = out.get(&s)?[first];
    while cur != s {
        walk.push(cur);
        let edges = out.get(&cur)?;
        let k = used.entry(cur).or_insert(0);
        let nxt = *edges.get(*k)?;
        *k += 1;
        cur = nxt;
    }
    let mut stack: Vec<VertexId> = Vec::new();
    for &w in &walk {
        if let Some(p) = stack.iter().position(|&q| q == w) {
            stack.truncate(p + 1);
        } else {
            stack.push(w);
        }
    }
    (stack.len() >= 3).then_some(stack)
}
