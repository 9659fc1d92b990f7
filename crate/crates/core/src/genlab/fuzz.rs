use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{
    exact_four_color, kempe_kittell_color, replay_witness, spiral_color, verify_coloring, Algorithm, Coloring,
    ExactConfig, ExactOutcome, FailureWitness, KittellCaps, ReplayOutcome, SpiralOptions, SpiralStats,
};
use crate::planar::{validate_triangulation, PlanarTriangulation, VertexId};
use crate::spiral::{extract_spiral_chains, fan_decomposition, ladder_three_colorable, SpiralDecomposition};

use super::generate::{generate_triangulation, GenConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub count: usize,
    pub nmin: usize,
    pub nmax: usize,
    pub seed: u64,
    /// Instances up to this size are cross-checked by the exact solver.
    pub exact_bound: usize,
    pub algorithms: Vec<Algorithm>,
    pub caps: KittellCaps,
    /// Run the structural checks (chains, segments, fan cover, ladder 3-coloring).
    pub structure: bool,
    #[serde(skip)]
    pub witness_dir: Option<PathBuf>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            count: 10_000,
            nmin: 4,
            nmax: 64,
            seed: 0,
            exact_bound: 12,
            algorithms: vec![Algorithm::Spiral, Algorithm::KempeKittell, Algorithm::Exact],
            caps: KittellCaps::default(),
            structure: true,
            witness_dir: None,
        }
    }
}

/// Instance `index` draws its parameters from its own ChaCha stream of the
/// campaign seed.
fn instance_config(cfg: &FuzzConfig, index: usize) -> (GenConfig, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(cfg.nmin..=cfg.nmax);
    let flips = rng.gen_range(0..=3 * n);
    (GenConfig { n, seed: rng.gen(), flips }, rng.gen())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub ok: usize,
    pub witness: usize,
    /// Colorings that failed verification.
    pub improper: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub greedy: usize,
    pub ctype_switch: usize,
    pub kempe_repair: usize,
    /// Runs that needed at least one switch or repair.
    pub runs_with_ctype_switch: usize,
    pub runs_with_kempe_repair: usize,
}

impl StageCounts {
    fn add(&mut self, s: &SpiralStats) {
        self.greedy += s.greedy;
        self.ctype_switch += s.ctype_switches;
        self.kempe_repair += s.kempe_repairs;
        self.runs_with_ctype_switch += usize::from(s.ctype_switches > 0);
        self.runs_with_kempe_repair += usize::from(s.kempe_repairs > 0);
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactTally {
    pub checked: usize,
    pub four_colorable: usize,
    pub not_four_colorable: usize,
    pub limit_hit: usize,
    pub improper: usize,
}

/// Failure counts of the structural checks. Ladder counts refer to the
/// ladder-fans of the fan decomposition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTally {
    pub invalid_graphs: usize,
    pub partition_failures: usize,
    pub segment_failures: usize,
    pub single_chain: usize,
    pub hamiltonian_failures: usize,
    pub cover_failures: usize,
    pub ladders: usize,
    pub ladders_not_outerplanar: usize,
    pub ladders_not_three_colorable: usize,
    pub ladder_strips_not_three_colorable: usize,
    pub ladder_checks_undecided: usize,
    pub instances_with_uncolorable_ladder: usize,
    pub ctype_fans: usize,
    pub theta_failures: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub instances: usize,
    pub spiral_pure_ok: usize,
    pub spiral_repair_ok: usize,
    pub kempe_kittell_ok: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub instances: usize,
    pub spiral_pure: Tally,
    pub spiral_repair: Tally,
    pub kempe_kittell: Tally,
    pub exact: ExactTally,
    pub stages_pure: StageCounts,
    pub stages_repair: StageCounts,
    /// Chord patterns seen in spiral runs, summed.
    pub chorded_segments: usize,
    pub recolor_patterns: usize,
    pub structure: StructureTally,
    /// Keyed by minimum degree.
    pub by_min_degree: BTreeMap<usize, Stratum>,
    pub witnesses: Vec<String>,
    pub replay_mismatches: usize,
    /// First instances whose ladders fail the 3-coloring check.
    pub uncolorable_ladder_examples: Vec<usize>,
}

impl FuzzReport {
    pub fn improper_colorings(&self) -> usize {
        self.spiral_pure.improper + self.spiral_repair.improper + self.kempe_kittell.improper + self.exact.improper
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Default)]
struct Outcome {
    n: usize,
    min_degree: usize,
    spiral_pure: Option<Tally>,
    spiral_repair: Option<Tally>,
    kempe_kittell: Option<Tally>,
    exact: Option<ExactTally>,
    stages_pure: StageCounts,
    stages_repair: StageCounts,
    chorded_segments: usize,
    recolor_patterns: usize,
    structure: StructureTally,
    witnesses: Vec<FailureWitness>,
    replay_mismatches: usize,
}

fn tally(ok: bool, proper: bool) -> Tally {
    match (ok, proper) {
        (true, true) => Tally { ok: 1, ..Tally::default() },
        (true, false) => Tally { ok: 1, improper: 1, ..Tally::default() },
        (false, _) => Tally { witness: 1, ..Tally::default() },
    }
}

fn run_instance(cfg: &FuzzConfig, index: usize) -> Outcome {
    let (gen, kseed) = instance_config(cfg, index);
    let g = generate_triangulation(&gen);
    let mut out = Outcome { n: g.n(), min_degree: g.min_degree(), ..Outcome::default() };

    if cfg.algorithms.contains(&Algorithm::Spiral) {
        for (opts, slot) in [(SpiralOptions::PURE, 0), (SpiralOptions::REPAIR, 1)] {
            let t = match spiral_color(&g, &opts) {
                Ok(c) => {
                    let stages = if slot == 0 { &mut out.stages_pure } else { &mut out.stages_repair };
                    stages.add(&c.stats);
                    if slot == 0 {
                        out.chorded_segments += c.stats.chorded_segments;
                        out.recolor_patterns += c.stats.recolor_patterns;
                    }
                    tally(true, verify_coloring(&g, &c.coloring).ok)
                }
                Err(w) => {
                    out.witnesses.push(*w);
                    tally(false, true)
                }
            };
            if slot == 0 {
                out.spiral_pure = Some(t);
            } else {
                out.spiral_repair = Some(t);
            }
        }
    }
    if cfg.algorithms.contains(&Algorithm::KempeKittell) {
        out.kempe_kittell = Some(match kempe_kittell_color(&g, kseed, &cfg.caps) {
            Ok(c) => tally(true, verify_coloring(&g, &c.coloring).ok),
            Err(w) => {
                out.witnesses.push(*w);
                tally(false, true)
            }
        });
    }
    if cfg.algorithms.contains(&Algorithm::Exact) && g.n() <= cfg.exact_bound {
        let mut e = ExactTally { checked: 1, ..ExactTally::default() };
        match exact_four_color(&g, &ExactConfig::default()) {
            Ok(ExactOutcome::Colored { colors, .. }) => {
                e.four_colorable = 1;
                e.improper = usize::from(!verify_coloring(&g, &Coloring::from_raw(colors)).ok);
            }
            Ok(ExactOutcome::Exhausted { .. }) => e.not_four_colorable = 1,
            Err(_) => e.limit_hit = 1,
        }
        out.exact = Some(e);
    }
    for w in &out.witnesses {
        if !matches!(replay_witness(w), Ok(ReplayOutcome::Reproduced { .. })) {
            out.replay_mismatches += 1;
        }
    }
    if cfg.structure {
        out.structure = check_structure(&g);
    }
    out
}

/// Every structural invariant of one instance, each checked independently
/// of the code that built the structure.
pub fn check_structure(g: &PlanarTriangulation) -> StructureTally {
    let mut s = StructureTally {
        invalid_graphs: usize::from(!validate_triangulation(&g.to_rotation_system()).ok),
        ..StructureTally::default()
    };
    let d = extract_spiral_chains(g);
    s.partition_failures = usize::from(!chains_partition(g, &d));
    s.segment_failures = usize::from(!segments_rescan(g, &d));
    if d.chain_count() == 1 {
        s.single_chain = 1;
        let p = &d.chains[0].vertices;
        s.hamiltonian_failures = usize::from(p.len() != g.n() || p.windows(2).any(|w| !g.has_edge(w[0], w[1])));
    }
    for i in 0..d.chain_count().saturating_sub(1) {
        if crate::spiral::detect_theta_separator(g, &d, i).is_none() {
            s.theta_failures += 1;
        }
    }
    let fd = fan_decomposition(g, &d);
    s.cover_failures = usize::from(!fd.is_exact_cover());
    s.ctype_fans = fd.ctype_count();
    for l in &fd.ladders {
        s.ladders += 1;
        s.ladders_not_outerplanar += usize::from(!l.induced_outerplanar);
        let chk = ladder_three_colorable(g, l);
        match (chk.induced, chk.strip) {
            (Some(a), Some(b)) => {
                s.ladders_not_three_colorable += usize::from(!a);
                s.ladder_strips_not_three_colorable += usize::from(!b);
            }
            _ => s.ladder_checks_undecided += 1,
        }
    }
    s.instances_with_uncolorable_ladder = usize::from(s.ladders_not_three_colorable > 0);
    s
}

/// Chains are simple paths, pairwise disjoint, covering every vertex.
pub fn chains_partition(g: &PlanarTriangulation, d: &SpiralDecomposition) -> bool {
    let mut seen = HashSet::new();
    for c in &d.chains {
        if c.vertices.is_empty() || c.vertices.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return false;
        }
        if !c.vertices.iter().all(|v| seen.insert(*v)) {
            return false;
        }
    }
    seen.len() == g.n()
}

/// Quadratic re-scan of every chain: segments tile the chain, each
/// non-final one ends at the last `j >= i + 2` adjacent to `v_i` and not to
/// `v_{i+1}`, and no such `j` exists for the final one.
pub fn segments_rescan(g: &PlanarTriangulation, d: &SpiralDecomposition) -> bool {
    let qualifies = |path: &[VertexId], i: usize, j: usize| {
        j >= i + 2 && g.has_edge(path[j], path[i]) && !g.has_edge(path[j], path[i + 1])
    };
    for (c, chain) in d.chains.iter().enumerate() {
        let path = &chain.vertices;
        let segs = &d.segments[c];
        let mut next = 0;
        for (k, s) in segs.iter().enumerate() {
            if s.chain != c || s.start != next || s.end < s.start || s.end >= path.len() {
                return false;
            }
            let last = (s.start..path.len()).filter(|&j| qualifies(path, s.start, j)).max();
            let want = if k + 1 == segs.len() { last.is_none() || last == Some(s.end) } else { last == Some(s.end) };
            if !want {
                return false;
            }
            next = s.end + 1;
        }
        if next != path.len() {
            return false;
        }
    }
    true
}

fn add_tally(into: &mut Tally, t: Option<Tally>) {
    if let Some(t) = t {
        into.ok += t.ok;
        into.witness += t.witness;
        into.improper += t.improper;
    }
}

fn add_stages(into: &mut StageCounts, s: &StageCounts) {
    into.greedy += s.greedy;
    into.ctype_switch += s.ctype_switch;
    into.kempe_repair += s.kempe_repair;
    into.runs_with_ctype_switch += s.runs_with_ctype_switch;
    into.runs_with_kempe_repair += s.runs_with_kempe_repair;
}

fn add_structure(into: &mut StructureTally, s: &StructureTally) {
    into.invalid_graphs += s.invalid_graphs;
    into.partition_failures += s.partition_failures;
    into.segment_failures += s.segment_failures;
    into.single_chain += s.single_chain;
    into.hamiltonian_failures += s.hamiltonian_failures;
    into.cover_failures += s.cover_failures;
    into.ladders += s.ladders;
    into.ladders_not_outerplanar += s.ladders_not_outerplanar;
    into.ladders_not_three_colorable += s.ladders_not_three_colorable;
    into.ladder_strips_not_three_colorable += s.ladder_strips_not_three_colorable;
    into.ladder_checks_undecided += s.ladder_checks_undecided;
    into.instances_with_uncolorable_ladder += s.instances_with_uncolorable_ladder;
    into.ctype_fans += s.ctype_fans;
    into.theta_failures += s.theta_failures;
}

const LADDER_EXAMPLES: usize = 10;

/// Runs a campaign. Instances run in parallel; each draws its parameters from
/// its own stream of the campaign seed and results are folded in index
/// order, so the report does not depend on scheduling. Witnesses are written
/// to `witness_dir` when set.
pub fn fuzz(cfg: &FuzzConfig) -> std::io::Result<FuzzReport> {
    assert!(cfg.count >= 1 && cfg.nmin >= 4 && cfg.nmin <= cfg.nmax, "invalid fuzz config");
    let outcomes: Vec<Outcome> = (0..cfg.count).into_par_iter().map(|i| run_instance(cfg, i)).collect();

    let mut r = FuzzReport { config: cfg.clone(), instances: cfg.count, ..FuzzReport::default() };
    let mut names = Vec::new();
    for (i, o) in outcomes.iter().enumerate() {
        add_tally(&mut r.spiral_pure, o.spiral_pure);
        add_tally(&mut r.spiral_repair, o.spiral_repair);
        add_tally(&mut r.kempe_kittell, o.kempe_kittell);
        if let Some(e) = o.exact {
            r.exact.checked += e.checked;
            r.exact.four_colorable += e.four_colorable;
            r.exact.not_four_colorable += e.not_four_colorable;
            r.exact.limit_hit += e.limit_hit;
            r.exact.improper += e.improper;
        }
        add_stages(&mut r.stages_pure, &o.stages_pure);
        add_stages(&mut r.stages_repair, &o.stages_repair);
        r.chorded_segments += o.chorded_segments;
        r.recolor_patterns += o.recolor_patterns;
        add_structure(&mut r.structure, &o.structure);
        if o.structure.instances_with_uncolorable_ladder > 0 && r.uncolorable_ladder_examples.len() < LADDER_EXAMPLES {
            r.uncolorable_ladder_examples.push(i);
        }
        r.replay_mismatches += o.replay_mismatches;

        let st = r.by_min_degree.entry(o.min_degree).or_default();
        st.instances += 1;
        st.spiral_pure_ok += o.spiral_pure.map_or(0, |t| t.ok);
        st.spiral_repair_ok += o.spiral_repair.map_or(0, |t| t.ok);
        st.kempe_kittell_ok += o.kempe_kittell.map_or(0, |t| t.ok);
        debug_assert!(o.n >= cfg.nmin && o.n <= cfg.nmax);

        for w in &o.witnesses {
            let name = w.file_name();
            if let Some(dir) = &cfg.witness_dir {
                std::fs::create_dir_all(dir)?;
                let path = dir.join(&name);
                if !path.exists() {
                    std::fs::write(&path, w.to_json())?;
                }
            }
            names.push(name);
        }
    }
    names.sort();
    names.dedup();
    r.witnesses = names;
    Ok(r)
}

/// The graph of instance `index` of a campaign.
pub fn fuzz_instance(cfg: &FuzzConfig, index: usize) -> PlanarTriangulation {
    generate_triangulation(&instance_config(cfg, index).0)
}
