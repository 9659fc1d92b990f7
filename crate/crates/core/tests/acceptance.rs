//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::alloc::{GlobalAlloc, Layout, System};
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spiralcolor::coloring::{
    exact_color, kempe_chain, kempe_kittell_color, kempe_switch, replay_witness, spiral_color, verify_coloring, Color,
    ColoringDocument, ExactConfig, FailureWitness, KittellCaps, ReplayOutcome, SpiralOptions,
};
use spiralcolor::genlab::{
    corpus_entry, fuzz, fuzz_instance, generate_triangulation, FuzzConfig, FuzzReport, GenConfig,
};
use spiralcolor::planar::VertexId;
use spiralcolor::spiral::extract_spiral_chains;

struct Counting;

static CURRENT: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);

unsafe impl GlobalAlloc for Counting {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc(layout);
        if !p.is_null() {
            let now = CURRENT.fetch_add(layout.size(), Ordering::Relaxed) + layout.size();
            PEAK.fetch_max(now, Ordering::Relaxed);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        CURRENT.fetch_sub(layout.size(), Ordering::Relaxed);
    }
}

#[global_allocator]
static ALLOC: Counting = Counting;

const CAMPAIGN_SEED: u64 = 2024;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spiralcolor"))
}

fn corpus_coloring() -> Verdict {
    let mut pass = true;
    let mut notes = Vec::new();
    for name in ["errera", "kittell", "heawood"] {
        let g = corpus_entry(name).unwrap().graph();
        let t = Instant::now();
        let out = bin().args(["color", "--algo", "spiral", &format!("corpus/{name}")]).output().unwrap();
        let pure_time = t.elapsed();
        match out.status.code() {
            Some(0) => {
                let doc: ColoringDocument = serde_json::from_slice(&out.stdout).unwrap();
                let ok = verify_coloring(&g, &doc.colors).ok && pure_time < Duration::from_secs(1);
                pass &= ok;
                notes.push(format!("{name}: pure verified in {:.3}s", pure_time.as_secs_f64()));
            }
            Some(1) => {
                let w = FailureWitness::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
                let replayable = matches!(replay_witness(&w), Ok(ReplayOutcome::Reproduced { stuck_vertex, .. }) if stuck_vertex == w.stuck_vertex);
                let t = Instant::now();
                let rep = bin()
                    .args(["color", "--algo", "spiral", "--kempe-repair", &format!("corpus/{name}")])
                    .output()
                    .unwrap();
                let rep_time = t.elapsed();
                let rep_ok = rep.status.code() == Some(0) && {
                    let doc: ColoringDocument = serde_json::from_slice(&rep.stdout).unwrap();
                    verify_coloring(&g, &doc.colors).ok
                };
                let ok =
                    replayable && rep_ok && pure_time < Duration::from_secs(1) && rep_time < Duration::from_secs(1);
                pass &= ok;
                notes.push(format!(
                    "{name}: pure witness at vertex {} (replay {}), with repair {} in {:.3}s",
                    w.stuck_vertex,
                    if replayable { "reproduced" } else { "MISMATCH" },
                    if rep_ok { "verified" } else { "FAILED" },
                    rep_time.as_secs_f64()
                ));
            }
            other => {
                pass = false;
                notes.push(format!("{name}: unexpected exit {other:?}"));
            }
        }
    }
    verdict(pass, notes.join("; "))
}

fn soundness(r: &FuzzReport, elapsed: Duration) -> Verdict {
    let improper = r.improper_colorings();
    verdict(
        improper == 0 && elapsed < Duration::from_secs(600),
        format!(
            "{} instances in {:.1}s, {improper} improper; spiral ok {} pure / {} with repair, kempe-kittell ok {}",
            r.instances,
            elapsed.as_secs_f64(),
            r.spiral_pure.ok,
            r.spiral_repair.ok,
            r.kempe_kittell.ok
        ),
    )
}

fn oracle_agreement(r: &FuzzReport) -> Verdict {
    let e = r.exact;
    let small_ok = e.checked > 0 && e.four_colorable == e.checked && e.improper == 0;
    let three = |name: &str| {
        exact_color(&corpus_entry(name).unwrap().graph(), 3, &ExactConfig::default()).unwrap().is_colorable()
    };
    let (k4, errera, octa) = (three("k4"), three("errera"), three("octahedron"));
    verdict(
        small_ok && !k4 && !errera && octa,
        format!(
            "{} instances with n <= 12, {} 4-colored and verified; 3 colors: k4 {}, errera {}, octahedron {}",
            e.checked,
            e.four_colorable,
            if k4 { "colorable" } else { "none" },
            if errera { "colorable" } else { "none" },
            if octa { "colorable" } else { "none" }
        ),
    )
}

fn structure(r: &FuzzReport) -> Verdict {
    let s = r.structure;
    let shape_ok = s.invalid_graphs == 0
        && s.partition_failures == 0
        && s.segment_failures == 0
        && s.hamiltonian_failures == 0
        && s.cover_failures == 0;
    let ladders_ok = s.ladders_not_three_colorable == 0 && s.ladder_checks_undecided == 0;
    let example = r.uncolorable_ladder_examples.first().map(|&i| {
        let g = fuzz_instance(&r.config, i);
        format!(" (first: instance {i}, n = {})", g.n())
    });
    verdict(
        shape_ok && ladders_ok,
        format!(
            "partition {} / segment rescan {} / hamiltonian {} of {} single-chain / cover {} failures; \
             ladder 3-coloring: {} of {} induced ladders not 3-colorable, {} strips, {} undecided, in {} instances{}",
            s.partition_failures,
            s.segment_failures,
            s.hamiltonian_failures,
            s.single_chain,
            s.cover_failures,
            s.ladders_not_three_colorable,
            s.ladders,
            s.ladder_strips_not_three_colorable,
            s.ladder_checks_undecided,
            s.instances_with_uncolorable_ladder,
            example.unwrap_or_default()
        ),
    )
}

fn kempe_machinery() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(CAMPAIGN_SEED);
    let mut bad_trials = 0;
    for trial in 0..1000u64 {
        let n = rng.gen_range(4..=60);
        let g = generate_triangulation(&GenConfig { n, seed: trial, flips: rng.gen_range(0..=3 * n) });
        let col = kempe_kittell_color(&g, trial, &KittellCaps::default()).unwrap().coloring;
        let v = VertexId(rng.gen_range(0..n as u32));
        let cv = col.get(v).unwrap();
        let others: Vec<Color> = Color::ALL.into_iter().filter(|&c| c != cv).collect();
        let pair = (cv, others[rng.gen_range(0..3)]);
        let chain = kempe_chain(&g, &col, v, pair).unwrap();
        let once = kempe_switch(&g, &col, &chain).unwrap();
        let back = kempe_switch(&g, &once, &kempe_chain(&g, &once, v, pair).unwrap()).unwrap();
        if !verify_coloring(&g, &once).ok || back != col {
            bad_trials += 1;
        }
    }
    let mut kk_fail = 0;
    for name in ["errera", "kittell", "heawood"] {
        let g = corpus_entry(name).unwrap().graph();
        for seed in 0..100 {
            match kempe_kittell_color(&g, seed, &KittellCaps { max_restarts: 50, max_switches: 100_000 }) {
                Ok(c) if verify_coloring(&g, &c.coloring).ok => {}
                _ => kk_fail += 1,
            }
        }
    }
    verdict(
        bad_trials == 0 && kk_fail == 0,
        format!("{bad_trials} of 1000 switch trials broke properness or involution; kempe-kittell failed {kk_fail} of 300 corpus runs"),
    )
}

/// Peak heap growth while extracting and coloring an n-vertex graph.
fn pipeline(n: usize) -> (Duration, usize, Result<usize, (VertexId, usize)>, u64, usize) {
    let g = generate_triangulation(&GenConfig { n, seed: 1, flips: 4 * n });
    let bound = 2 * (g.n() + g.edge_count());
    let base = CURRENT.load(Ordering::Relaxed);
    PEAK.store(base, Ordering::Relaxed);
    let t = Instant::now();
    let d = extract_spiral_chains(&g);
    let steps = d.rotation_steps;
    let res = spiral_color(&g, &SpiralOptions::default());
    let elapsed = t.elapsed();
    let peak = PEAK.load(Ordering::Relaxed) - base;
    let outcome = match res {
        Ok(c) => Ok(c.coloring.colored_count()),
        Err(w) => Err((w.stuck_vertex, w.partial.colored_count())),
    };
    drop(d);
    (elapsed, peak, outcome, steps, bound)
}

fn performance() -> Verdict {
    let (_, small_peak, _, _, _) = pipeline(25_000);
    let (elapsed, peak, outcome, steps, bound) = pipeline(100_000);
    let per_small = small_peak as f64 / 25_000.0;
    let per_big = peak as f64 / 100_000.0;
    let linear = per_big <= 1.5 * per_small;
    let fast = elapsed < Duration::from_secs(5);
    let steps_ok = steps as usize <= bound;
    let colored = outcome.is_ok();
    let outcome_text = match outcome {
        Ok(k) => format!("colored all {k} vertices"),
        Err((v, k)) => format!("coloring did not complete: stuck at vertex {v} after {k} of 100000 vertices"),
    };
    verdict(
        fast && linear && steps_ok && colored,
        format!(
            "{:.3}s; peak heap {:.0} B/vertex at n=100000 vs {:.0} at n=25000; rotation steps {steps} <= {bound}: {}; {outcome_text}",
            elapsed.as_secs_f64(),
            per_big,
            per_small,
            steps_ok
        ),
    )
}

fn reproducibility(r: &FuzzReport) -> Verdict {
    let cfg = FuzzConfig { count: 300, nmax: 40, seed: CAMPAIGN_SEED, ..FuzzConfig::default() };
    let same_campaign = fuzz(&cfg).unwrap().to_json() == fuzz(&cfg).unwrap().to_json();

    let run = |args: &[&str]| bin().args(args).output().unwrap().stdout;
    let cli_args: [&[&str]; 3] = [
        &["color", "--algo", "kempe-kittell", "--seed", "7", "corpus/kittell"],
        &["color", "--algo", "spiral", "corpus/heawood"],
        &["fuzz", "--count", "100", "--nmax", "12", "--seed", "1"],
    ];
    let same_cli = cli_args.iter().all(|a| run(a) == run(a));

    let dir = tempfile::tempdir().unwrap();
    let persisted = fuzz(&FuzzConfig { witness_dir: Some(dir.path().to_path_buf()), ..cfg }).unwrap();
    let mut replayed = 0;
    let mut mismatched = 0;
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let w = FailureWitness::from_json(&text).unwrap();
        replayed += 1;
        match replay_witness(&w) {
            Ok(ReplayOutcome::Reproduced { stuck_vertex, .. }) if stuck_vertex == w.stuck_vertex => {}
            _ => mismatched += 1,
        }
    }
    let files_ok = replayed == persisted.witnesses.len();
    verdict(
        same_campaign && same_cli && files_ok && mismatched == 0 && r.replay_mismatches == 0,
        format!(
            "campaign JSON identical: {same_campaign}; CLI output identical: {same_cli}; \
             {replayed} persisted witnesses replayed, {mismatched} mismatched; {} in-campaign replay mismatches",
            r.replay_mismatches
        ),
    )
}

fn main() {
    let t = Instant::now();
    let campaign = fuzz(&FuzzConfig { seed: CAMPAIGN_SEED, ..FuzzConfig::default() }).unwrap();
    let campaign_time = t.elapsed();

    let results = [
        ("1 corpus coloring", corpus_coloring()),
        ("2 soundness sweep", soundness(&campaign, campaign_time)),
        ("3 oracle agreement", oracle_agreement(&campaign)),
        ("4 structural invariants", structure(&campaign)),
        ("5 kempe machinery", kempe_machinery()),
        ("6 performance", performance()),
        ("7 reproducibility", reproducibility(&campaign)),
    ];
    let mut failed = 0;
    for (name, v) in &results {
        println!("criterion {name}: {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
