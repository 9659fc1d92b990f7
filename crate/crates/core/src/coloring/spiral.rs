use serde::{Deserialize, Serialize};

use crate::planar::{serialize, PlanarTriangulation, VertexId};
use crate::spiral::{extract_spiral_chains, Fan, FanSide, Schedule, SpiralDecomposition, SpiralSegment};

use super::color::{choose_palette, Color, ColorSet, Coloring, Palette};
use super::kempe::ChainScratch;
use super::witness::{Algorithm, FailureWitness, WitnessParams};

/// Escalation stages of the spiral colorer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Greedy,
    CtypeSwitch,
    KempeRepair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiralOptions {
    /// Allow the corner-fan palette switch.
    pub ctype_switch: bool,
    /// Allow one Kempe exchange among colored vertices at an impasse.
    pub kempe_repair: bool,
}

impl Default for SpiralOptions {
    fn default() -> Self {
        SpiralOptions { ctype_switch: true, kempe_repair: false }
    }
}

impl SpiralOptions {
    /// Palette greedy only.
    pub const STRICT: SpiralOptions = SpiralOptions { ctype_switch: false, kempe_repair: false };
    pub const PURE: SpiralOptions = SpiralOptions { ctype_switch: true, kempe_repair: false };
    pub const REPAIR: SpiralOptions = SpiralOptions { ctype_switch: true, kempe_repair: true };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaletteSwitch {
    pub vertex: VertexId,
    /// Chain position of `vertex`; the new palette holds from here on.
    pub position: usize,
    pub from: Palette,
    pub to: Palette,
}

/// Palette assignment of one segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentPlan {
    pub segment: SpiralSegment,
    pub palette: Palette,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub switches: Vec<PaletteSwitch>,
}

impl SegmentPlan {
    pub fn final_palette(&self) -> Palette {
        self.switches.last().map_or(self.palette, |s| s.to)
    }

    /// Palette in force at chain position `pos`.
    pub fn palette_at(&self, pos: usize) -> Palette {
        self.switches.iter().rev().find(|s| s.position <= pos).map_or(self.palette, |s| s.to)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeRepair {
    pub vertex: VertexId,
    /// `(freed, other)`: the stuck vertex takes `freed`.
    pub pair: (Color, Color),
    pub recolored: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiralStats {
    pub segments: usize,
    pub greedy: usize,
    pub ctype_switches: usize,
    pub kempe_repairs: usize,
    /// Segments with an edge between two non-consecutive vertices.
    pub chorded_segments: usize,
    /// Positions `p` where `p, p+2, p+4` form a triangle and `p+1 ~ p+3`,
    /// the configuration that would reshape the chains.
    pub recolor_patterns: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiralColoring {
    pub coloring: Coloring,
    pub decomposition: SpiralDecomposition,
    pub schedule: Vec<SegmentPlan>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub repairs: Vec<KempeRepair>,
    pub stats: SpiralStats,
}

impl SpiralColoring {
    /// Vertices whose color a Kempe repair changed after they were colored.
    pub fn repaired_vertices(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.repairs.iter().flat_map(|r| r.recolored.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Record of a corner-fan palette switch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CtypeSwitch {
    pub from: Palette,
    pub to: Palette,
    /// Fan vertices still uncolored, now scheduled under `to`.
    pub rescheduled: Vec<VertexId>,
}

/// Moves the uncolored vertices of a corner fan from palette `old` to `new`.
/// Colored vertices keep their colors. Returns `None` unless the fan is
/// c-type and the palettes differ.
pub fn ctype_switch(partial: &Coloring, fan: &Fan, old: Palette, new: Palette) -> Option<CtypeSwitch> {
    if !fan.ctype || old == new {
        return None;
    }
    let rescheduled =
        std::iter::once(fan.apex).chain(fan.rim.iter().copied()).filter(|v| !partial.is_colored(*v)).collect();
    Some(CtypeSwitch { from: old, to: new, rescheduled })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentConflict {
    Stuck { vertex: VertexId, position: usize, blocking: ColorSet },
}

#[inline]
fn neighbour_colors(g: &PlanarTriangulation, c: &Coloring, v: VertexId) -> ColorSet {
    let mut m = 0u8;
    for &w in g.rotation(v) {
        let x = c.raw(w);
        if x != 0 {
            m |= 1 << (x - 1);
        }
    }
    ColorSet(m)
}

/// Greedily colors `segment` from `palette`, each vertex taking the lowest
/// palette color missing from its colored neighbourhood. Stops at the first
/// vertex whose neighbourhood covers the palette.
pub fn color_segment(
    g: &PlanarTriangulation,
    d: &SpiralDecomposition,
    segment: &SpiralSegment,
    palette: Palette,
    partial: &Coloring,
) -> Result<Coloring, SegmentConflict> {
    let mut out = partial.clone();
    for (k, &v) in d.segment_vertices(segment).iter().enumerate() {
        let blocked = neighbour_colors(g, &out, v);
        match palette.colors().intersect(blocked.complement()).lowest() {
            Some(c) => out.set(v, c),
            None => return Err(SegmentConflict::Stuck { vertex: v, position: segment.start + k, blocking: blocked }),
        }
    }
    Ok(out)
}

/// Corner triangle: two colored neighbours of `v` in `v`'s own segment that
/// are adjacent to each other.
fn closes_corner(g: &PlanarTriangulation, sched: &Schedule, c: &Coloring, v: VertexId) -> Option<(VertexId, VertexId)> {
    let seg = sched.segment_of(v);
    let same: Vec<VertexId> =
        g.rotation(v).iter().copied().filter(|w| c.is_colored(*w) && sched.segment_of(*w) == seg).collect();
    for (i, &a) in same.iter().enumerate() {
        for &b in &same[i + 1..] {
            if g.has_edge(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// One Kempe exchange freeing a palette color at `x`: for a pair `(c, d)`,
/// swap every `(c, d)` component that meets a `c`-neighbour of `x`, provided
/// none of them meets a `d`-neighbour.
fn kempe_repair(
    g: &PlanarTriangulation,
    coloring: &mut Coloring,
    scratch: &mut ChainScratch,
    x: VertexId,
    palette: Palette,
) -> Option<KempeRepair> {
    for c in palette.colors().iter() {
        let starts: Vec<VertexId> = g.rotation(x).iter().copied().filter(|w| coloring.get(*w) == Some(c)).collect();
        for d in Color::ALL.into_iter().filter(|&d| d != c) {
            scratch.collect(g, coloring, &starts, c, d);
            let clash = g.rotation(x).iter().any(|w| coloring.get(*w) == Some(d) && scratch.marked(*w));
            if clash {
                continue;
            }
            scratch.swap(coloring, c, d);
            coloring.set(x, c);
            return Some(KempeRepair { vertex: x, pair: (c, d), recolored: scratch.queue.clone() });
        }
    }
    None
}

fn chord_stats(g: &PlanarTriangulation, d: &SpiralDecomposition, stats: &mut SpiralStats) {
    for seg in d.segments_outer_first() {
        let verts = d.segment_vertices(seg);
        let chorded = verts.iter().any(|&v| {
            let (_, p) = d.locate(v);
            g.rotation(v).iter().any(|&w| {
                let (wc, wp) = d.locate(w);
                wc == seg.chain && seg.contains_position(wp) && wp.abs_diff(p) >= 2
            })
        });
        stats.chorded_segments += chorded as usize;
        for w in verts.windows(5) {
            if g.has_edge(w[0], w[2]) && g.has_edge(w[2], w[4]) && g.has_edge(w[0], w[4]) && g.has_edge(w[1], w[3]) {
                stats.recolor_patterns += 1;
            }
        }
    }
}

/// Colors `g` segment by segment from the innermost outwards.
///
/// Each segment gets a palette distinct from its predecessor's final one.
/// Within a segment vertices are colored in chain order with the lowest free
/// palette color. At a vertex whose neighbourhood covers the palette the
/// enabled stages are tried in order: a corner-fan palette switch to a
/// palette holding the free missing color, then one Kempe exchange among
/// colored vertices. If none applies the impasse is returned.
pub fn spiral_color(g: &PlanarTriangulation, opts: &SpiralOptions) -> Result<SpiralColoring, Box<FailureWitness>> {
    let d = extract_spiral_chains(g);
    color_decomposition(g, d, opts)
}

pub(crate) fn color_decomposition(
    g: &PlanarTriangulation,
    d: SpiralDecomposition,
    opts: &SpiralOptions,
) -> Result<SpiralColoring, Box<FailureWitness>> {
    let sched = Schedule::new(&d, g.n());
    let mut coloring = Coloring::empty(g.n());
    let mut stats = SpiralStats { segments: sched.len(), ..SpiralStats::default() };
    chord_stats(g, &d, &mut stats);
    let mut plans: Vec<SegmentPlan> = Vec::with_capacity(sched.len());
    let mut repairs = Vec::new();
    let mut scratch = opts.kempe_repair.then(|| ChainScratch::new(g.n()));
    let mut prev: Option<Palette> = None;

    for seg in &sched.segments {
        let verts = d.segment_vertices(seg);
        let default = choose_palette(prev, ColorSet::EMPTY).expect("unconstrained palette exists");
        let free_first = neighbour_colors(g, &coloring, verts[0]).complement();
        let palette = match free_first.lowest() {
            Some(c) if free_first.intersect(default.colors()).is_empty() => {
                choose_palette(prev, ColorSet::from_colors([c])).expect("one constraint always fits")
            }
            _ => default,
        };
        plans.push(SegmentPlan { segment: *seg, palette, switches: Vec::new() });
        let mut current = palette;

        for (k, &x) in verts.iter().enumerate() {
            let blocked = neighbour_colors(g, &coloring, x);
            if let Some(c) = current.colors().intersect(blocked.complement()).lowest() {
                coloring.set(x, c);
                stats.greedy += 1;
                continue;
            }
            let mut tried = vec![Stage::Greedy];

            let missing = current.missing();
            if opts.ctype_switch {
                tried.push(Stage::CtypeSwitch);
                if !blocked.contains(missing) {
                    if let Some((a, b)) = closes_corner(g, &sched, &coloring, x) {
                        let to = choose_palette(Some(current), ColorSet::from_colors([missing]))
                            .expect("adding the missing color always fits");
                        let fan =
                            Fan { apex: x, side: FanSide::Corner, rim: vec![a, b], triangles: Vec::new(), ctype: true };
                        let sw = ctype_switch(&coloring, &fan, current, to).expect("corner fan, distinct palettes");
                        debug_assert_eq!(sw.rescheduled, vec![x]);
                        plans.last_mut().unwrap().switches.push(PaletteSwitch {
                            vertex: x,
                            position: seg.start + k,
                            from: current,
                            to,
                        });
                        current = to;
                        coloring.set(x, missing);
                        stats.ctype_switches += 1;
                        continue;
                    }
                }
            }

            if let Some(scratch) = scratch.as_mut() {
                tried.push(Stage::KempeRepair);
                if let Some(rep) = kempe_repair(g, &mut coloring, scratch, x, current) {
                    repairs.push(rep);
                    stats.kempe_repairs += 1;
                    continue;
                }
            }

            return Err(Box::new(FailureWitness {
                algorithm: Algorithm::Spiral,
                params: WitnessParams { spiral: Some(*opts), seed: None, caps: None },
                graph: serialize(g),
                decomposition: Some(d),
                schedule: plans,
                partial: coloring,
                stuck_vertex: x,
                blocking: blocked.to_vec(),
                stages_tried: tried,
                trace: None,
            }));
        }
        prev = Some(current);
    }

    Ok(SpiralColoring { coloring, decomposition: d, schedule: plans, repairs, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{exact_color, verify_coloring, ExactConfig};
    use crate::genlab::{corpus_entry, generate_triangulation, GenConfig};

    fn c(v: u8) -> Color {
        Color::new(v).unwrap()
    }

    fn pal(v: [u8; 3]) -> Palette {
        Palette::new(ColorSet::from_colors(v.map(c))).unwrap()
    }

    #[test]
    fn k4_uses_all_four_colors() {
        let g = corpus_entry("k4").unwrap().graph();
        let out = spiral_color(&g, &SpiralOptions::default()).unwrap();
        assert!(verify_coloring(&g, &out.coloring).ok);
        assert_eq!(out.coloring.colors_used().len(), 4);
        // the centre closes a corner triangle and forces the switch
        assert_eq!(out.stats.ctype_switches, 1);
    }

    #[test]
    fn k4_strict_palette_is_stuck_at_the_centre() {
        let g = corpus_entry("k4").unwrap().graph();
        let w = spiral_color(&g, &SpiralOptions::STRICT).unwrap_err();
        assert_eq!(w.stuck_vertex, VertexId(3));
        assert_eq!(w.blocking, vec![c(1), c(2), c(3)]);
        assert_eq!(w.stages_tried, vec![Stage::Greedy]);
    }

    #[test]
    fn octahedron() {
        let g = corpus_entry("octahedron").unwrap().graph();
        let out = spiral_color(&g, &SpiralOptions::default()).unwrap();
        assert!(verify_coloring(&g, &out.coloring).ok);
        assert!(out.coloring.colors_used().len() <= 4);
        assert!(exact_color(&g, 3, &ExactConfig::default()).unwrap().is_colorable());
    }

    #[test]
    fn color_segment_stuck_by_pigeonhole() {
        let g = corpus_entry("k4").unwrap().graph();
        let d = extract_spiral_chains(&g);
        let seg = d.segments[0][0];
        let err = color_segment(&g, &d, &seg, pal([1, 2, 3]), &Coloring::empty(4)).unwrap_err();
        let SegmentConflict::Stuck { vertex, blocking, .. } = err;
        assert_eq!(vertex, VertexId(3));
        assert_eq!(blocking, ColorSet::from_colors([c(1), c(2), c(3)]));
    }

    #[test]
    fn color_segment_first_three() {
        let g = corpus_entry("k4").unwrap().graph();
        let d = extract_spiral_chains(&g);
        let first = SpiralSegment { chain: 0, start: 0, end: 2 };
        let out = color_segment(&g, &d, &first, pal([1, 2, 3]), &Coloring::empty(4)).unwrap();
        assert_eq!(out.raw_values(), &[1, 3, 2, 0]);
    }

    #[test]
    fn ctype_switch_identity_without_uncolored() {
        let fan = Fan {
            apex: VertexId(0),
            side: FanSide::Corner,
            rim: vec![VertexId(1), VertexId(2)],
            triangles: vec![],
            ctype: true,
        };
        let col = Coloring::from_raw(vec![1, 2, 3, 0]);
        let sw = ctype_switch(&col, &fan, pal([1, 2, 3]), pal([2, 3, 4])).unwrap();
        assert!(sw.rescheduled.is_empty());
        let open = Coloring::from_raw(vec![0, 2, 3, 0]);
        let sw = ctype_switch(&open, &fan, pal([1, 2, 3]), pal([2, 3, 4])).unwrap();
        assert_eq!(sw.rescheduled, vec![VertexId(0)]);
        assert!(ctype_switch(&open, &fan, pal([1, 2, 3]), pal([1, 2, 3])).is_none());
    }

    #[test]
    fn palette_discipline_and_safety() {
        for seed in 0..200 {
            let n = 4 + (seed as usize % 40);
            let g = generate_triangulation(&GenConfig { n, seed, flips: seed as usize % (2 * n) });
            let Ok(out) = spiral_color(&g, &SpiralOptions::default()) else { continue };
            assert!(verify_coloring(&g, &out.coloring).ok);
            let mut prev: Option<Palette> = None;
            for plan in &out.schedule {
                if let Some(p) = prev {
                    assert_ne!(plan.palette, p);
                    assert_eq!(plan.palette.colors().intersect(p.colors()).len(), 2);
                }
                for (k, v) in out.decomposition.segment_vertices(&plan.segment).iter().enumerate() {
                    let col = out.coloring.get(*v).unwrap();
                    assert!(plan.palette_at(plan.segment.start + k).contains(col));
                }
                prev = Some(plan.final_palette());
            }
        }
    }

    // Vertex 6 is its own inner segment; the outer chain 0 2 1 5 3 4 cuts the
    // wheel around 4 through two spokes.
    const WHEEL: &str =
        "n 7\nouter 0 1 2\n0: 1 6 3 4 2\n1: 0 2 5 6\n2: 0 4 3 5 1\n3: 0 6 5 2 4\n4: 0 3 2\n5: 1 2 3 6\n6: 0 1 5 3\n";

    #[test]
    fn wheel_cut_by_two_spokes_needs_the_switch() {
        let g = crate::planar::load_rotation_system(WHEEL).unwrap();
        let w = spiral_color(&g, &SpiralOptions::STRICT).unwrap_err();
        let out = spiral_color(&g, &SpiralOptions::PURE).unwrap();
        assert!(verify_coloring(&g, &out.coloring).ok);
        assert_eq!(out.stats.ctype_switches, 1);
        assert_eq!(out.stats.kempe_repairs, 0);

        // Exhaustive: with the inner segment colored as in the strict run, no
        // single palette completes the stuck segment.
        let d = &out.decomposition;
        let stuck_seg = w.schedule.last().unwrap().segment;
        let verts = d.segment_vertices(&stuck_seg).to_vec();
        assert!(verts.contains(&w.stuck_vertex));
        let mut fixed = w.partial.clone();
        for &v in &verts {
            fixed.clear(v);
        }
        for p in Palette::all() {
            let cols = p.colors().to_vec();
            let total = 3usize.pow(verts.len() as u32);
            for code in 0..total {
                let mut trial = fixed.clone();
                let mut k = code;
                for &v in &verts {
                    trial.set(v, cols[k % 3]);
                    k /= 3;
                }
                assert!(!verify_coloring(&g, &trial).ok, "palette {:?} completes", cols);
            }
        }
    }

    #[test]
    fn deterministic() {
        let g = generate_triangulation(&GenConfig { n: 300, seed: 1, flips: 600 });
        let opts = SpiralOptions::REPAIR;
        assert_eq!(spiral_color(&g, &opts), spiral_color(&g, &opts));
    }
}
