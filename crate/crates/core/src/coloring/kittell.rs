use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::planar::{eliminate, serialize, PlanarTriangulation, VertexId};

use super::color::{Color, ColorSet, Coloring};
use super::kempe::ChainScratch;
use super::witness::{Algorithm, FailureWitness, WitnessParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KittellCaps {
    /// Fresh random labelings tried after the first one.
    pub max_restarts: u32,
    /// Random chain switches allowed per labeling.
    pub max_switches: u64,
}

impl Default for KittellCaps {
    fn default() -> Self {
        KittellCaps { max_restarts: 50, max_switches: 100_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttemptTrace {
    pub attempt: u32,
    pub stuck_vertex: VertexId,
    /// Vertices colored when the attempt gave up.
    pub colored: usize,
    pub random_switches: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KittellTrace {
    pub attempts: Vec<AttemptTrace>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KittellStats {
    pub restarts: u32,
    pub single_switches: u64,
    pub double_switches: u64,
    pub random_switches: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KittellColoring {
    pub coloring: Coloring,
    pub seed: u64,
    pub stats: KittellStats,
}

/// Colored neighbours of `v` in clockwise order.
fn ring(g: &PlanarTriangulation, c: &Coloring, v: VertexId) -> Vec<VertexId> {
    g.rotation(v).iter().copied().filter(|w| c.is_colored(*w)).collect()
}

fn free_colors(g: &PlanarTriangulation, c: &Coloring, v: VertexId) -> ColorSet {
    ColorSet::from_colors(g.rotation(v).iter().filter_map(|w| c.get(*w))).complement()
}

/// Swaps the `(a, b)` chain of `start`, logging old colors into `undo`.
fn switch(
    g: &PlanarTriangulation,
    c: &mut Coloring,
    scratch: &mut ChainScratch,
    start: VertexId,
    a: Color,
    b: Color,
    undo: &mut Vec<(VertexId, Color)>,
) {
    scratch.collect(g, c, &[start], a, b);
    for &v in &scratch.queue {
        undo.push((v, c.get(v).unwrap()));
    }
    scratch.swap(c, a, b);
}

fn rollback(c: &mut Coloring, undo: &mut Vec<(VertexId, Color)>) {
    while let Some((v, col)) = undo.pop() {
        c.set(v, col);
    }
}

/// Kempe single switches on non-consecutive neighbour pairs.
fn try_single(g: &PlanarTriangulation, c: &mut Coloring, s: &mut ChainScratch, v: VertexId) -> bool {
    let r = ring(g, c, v);
    let k = r.len();
    let mut undo = Vec::new();
    for i in 0..k {
        for j in i + 2..k {
            if i == 0 && j == k - 1 {
                continue;
            }
            let (a, b) = (c.get(r[i]).unwrap(), c.get(r[j]).unwrap());
            if a == b {
                continue;
            }
            s.collect(g, c, &[r[i]], a, b);
            if s.marked(r[j]) {
                continue;
            }
            undo.clear();
            switch(g, c, s, r[i], a, b, &mut undo);
            if let Some(f) = free_colors(g, c, v).lowest() {
                c.set(v, f);
                return true;
            }
            rollback(c, &mut undo);
        }
    }
    false
}

/// Kempe's double interchange at a five-neighbour vertex whose ring repeats
/// one color at two non-adjacent positions `p` and `q`: swap the chain of
/// `w_q` for the pair (repeated, color of `w_{p-1}`), then the chain of `w_p`
/// for (repeated, color of `w_{q+1}`).
fn try_double(g: &PlanarTriangulation, c: &mut Coloring, s: &mut ChainScratch, v: VertexId) -> bool {
    let r = ring(g, c, v);
    if r.len() != 5 {
        return false;
    }
    let col: Vec<Color> = r.iter().map(|w| c.get(*w).unwrap()).collect();
    let Some((p, q)) = (0..5).flat_map(|p| (p + 1..5).map(move |q| (p, q))).find(|&(p, q)| col[p] == col[q]) else {
        return false;
    };
    let rep = col[p];
    let before_p = col[(p + 4) % 5];
    let after_q = col[(q + 1) % 5];
    let mut undo = Vec::new();
    switch(g, c, s, r[q], rep, before_p, &mut undo);
    if c.get(r[p]) == Some(rep) && after_q != rep {
        switch(g, c, s, r[p], rep, after_q, &mut undo);
    }
    if let Some(f) = free_colors(g, c, v).lowest() {
        c.set(v, f);
        return true;
    }
    rollback(c, &mut undo);
    false
}

enum Attempt {
    Done(Coloring),
    Stuck { coloring: Coloring, vertex: VertexId, switches: u64 },
}

fn attempt(
    g: &PlanarTriangulation,
    rng: &mut ChaCha8Rng,
    caps: &KittellCaps,
    scratch: &mut ChainScratch,
    stats: &mut KittellStats,
) -> Attempt {
    let n = g.n();
    let mut labels: Vec<u32> = (0..n as u32).collect();
    labels.shuffle(rng);
    let order =
        eliminate(g, 5, 1, |v| labels[v.index()]).expect("planar graphs always have a vertex of degree at most 5");
    let mut removed = vec![false; n];
    for v in &order {
        removed[v.index()] = true;
    }
    let last = g.vertices().find(|v| !removed[v.index()]).unwrap();

    let mut c = Coloring::empty(n);
    c.set(last, Color::ALL[0]);
    let mut switches = 0u64;
    for &v in order.iter().rev() {
        if let Some(f) = free_colors(g, &c, v).lowest() {
            c.set(v, f);
            continue;
        }
        if try_single(g, &mut c, scratch, v) {
            stats.single_switches += 1;
            continue;
        }
        if try_double(g, &mut c, scratch, v) {
            stats.double_switches += 1;
            continue;
        }
        loop {
            if switches >= caps.max_switches {
                return Attempt::Stuck { coloring: c, vertex: v, switches };
            }
            let r = ring(g, &c, v);
            let w = r[rng.gen_range(0..r.len())];
            let a = c.get(w).unwrap();
            let others: Vec<Color> = Color::ALL.into_iter().filter(|&x| x != a).collect();
            let b = others[rng.gen_range(0..3)];
            scratch.collect(g, &c, &[w], a, b);
            scratch.swap(&mut c, a, b);
            switches += 1;
            stats.random_switches += 1;
            if let Some(f) = free_colors(g, &c, v).lowest() {
                c.set(v, f);
                break;
            }
        }
    }
    Attempt::Done(c)
}

/// Kempe's insertion coloring with Kittell's random chain switches.
///
/// Vertices get random labels; the elimination order repeatedly removes the
/// lowest-labelled vertex of degree at most five until one remains, which is
/// colored 1. Vertices are then put back in reverse. A vertex with a free
/// color takes the lowest one; otherwise Kempe single switches, Kempe's
/// double switch, and finally random switches on chains through its
/// neighbours are tried. A labeling that exhausts `max_switches` is replaced
/// by a fresh one, up to `max_restarts` times.
pub fn kempe_kittell_color(
    g: &PlanarTriangulation,
    seed: u64,
    caps: &KittellCaps,
) -> Result<KittellColoring, Box<FailureWitness>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scratch = ChainScratch::new(g.n());
    let mut stats = KittellStats::default();
    let mut trace = KittellTrace { attempts: Vec::new() };
    let mut last = None;
    for a in 0..=caps.max_restarts {
        stats.restarts = a;
        match attempt(g, &mut rng, caps, &mut scratch, &mut stats) {
            Attempt::Done(coloring) => return Ok(KittellColoring { coloring, seed, stats }),
            Attempt::Stuck { coloring, vertex, switches } => {
                trace.attempts.push(AttemptTrace {
                    attempt: a,
                    stuck_vertex: vertex,
                    colored: coloring.colored_count(),
                    random_switches: switches,
                });
                last = Some((coloring, vertex));
            }
        }
    }
    let (partial, stuck_vertex) = last.expect("at least one attempt ran");
    let blocking = ColorSet::from_colors(g.rotation(stuck_vertex).iter().filter_map(|w| partial.get(*w))).to_vec();
    Err(Box::new(FailureWitness {
        algorithm: Algorithm::KempeKittell,
        params: WitnessParams { spiral: None, seed: Some(seed), caps: Some(*caps) },
        graph: serialize(g),
        decomposition: None,
        schedule: Vec::new(),
        partial,
        stuck_vertex,
        blocking,
        stages_tried: Vec::new(),
        trace: Some(trace),
    }))
}
