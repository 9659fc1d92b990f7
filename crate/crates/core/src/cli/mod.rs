//! The `spiralcolor` command line. JSON goes to stdout (or `--output`),
//! human summaries to stderr.

mod render;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coloring::{
    exact_four_color, kempe_kittell_color, replay_witness, spiral_color, verify_coloring, Algorithm, Coloring,
    ColoringDocument, ExactConfig, ExactOutcome, FailureWitness, KittellCaps, ReplayOutcome, SpiralOptions,
};
use crate::genlab::{corpus_document, fuzz, generate_triangulation, FuzzConfig, GenConfig};
use crate::planar::{
    load_rotation_system, parse_rotation_system, serialize, validate_triangulation, DocumentError, PlanarTriangulation,
    ValidationReport, VertexId, Violation,
};
use crate::spiral::{detect_theta_separator, extract_spiral_chains, SpiralSegment, ThetaSeparator};

pub use render::{to_dot, to_svg, tutte_layout};

pub const DEFAULT_SEED: u64 = 0;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "spiralcolor", version, about = "Spiral-chain four-coloring of planar triangulations")]
struct Cli {
    /// Write the main output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Rotation-system document, `-` for stdin, or `corpus/<name>`.
    input: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    Spiral,
    KempeKittell,
    Exact,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Spiral => Algorithm::Spiral,
            Algo::KempeKittell => Algorithm::KempeKittell,
            Algo::Exact => Algorithm::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

#[derive(Debug, Args)]
struct SpiralFlags {
    /// Allow one local Kempe exchange when a vertex is stuck.
    #[arg(long)]
    kempe_repair: bool,
    /// Disable the corner-fan palette switch.
    #[arg(long)]
    no_ctype_switch: bool,
}

impl SpiralFlags {
    fn options(&self) -> SpiralOptions {
        SpiralOptions { ctype_switch: !self.no_ctype_switch, kempe_repair: self.kempe_repair }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a document describes a maximal planar graph.
    Validate(Input),
    /// Spiral chains, segments and theta separators.
    Chains(Input),
    /// Color a graph.
    Color {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "spiral")]
        algo: Algo,
        #[command(flatten)]
        spiral: SpiralFlags,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = KittellCaps::default().max_restarts)]
        max_restarts: u32,
        #[arg(long, default_value_t = KittellCaps::default().max_switches)]
        max_switches: u64,
        /// Also write any failure witness into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Check a coloring (a coloring document or a bare color array) against a graph.
    Verify {
        #[command(flatten)]
        input: Input,
        coloring: PathBuf,
    },
    /// Generate a random triangulation.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        flips: usize,
    },
    /// Run a fuzz campaign.
    Fuzz {
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        nmin: usize,
        #[arg(long, default_value_t = 64)]
        nmax: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Engines to run; repeatable. Defaults to all.
        #[arg(long, value_enum)]
        algo: Vec<Algo>,
        #[arg(long, default_value_t = 12)]
        exact_bound: usize,
        /// Skip the chain, segment and ladder checks.
        #[arg(long)]
        no_structure: bool,
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Rerun the engine recorded in a witness.
    Replay { witness: PathBuf },
    /// Draw the chains and a coloring.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        /// Coloring to draw; by default the spiral engine's result (or its
        /// partial coloring at the impasse).
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        spiral: SpiralFlags,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Document(#[from] DocumentError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

fn read_text(spec: &str) -> Result<String, CliError> {
    if let Some(name) = spec.strip_prefix("corpus/") {
        return corpus_document(name)
            .map(str::to_string)
            .ok_or_else(|| CliError::Input(format!("no corpus graph named '{name}'")));
    }
    if spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err(Path::new("<stdin>")))?;
        return Ok(s);
    }
    std::fs::read_to_string(spec).map_err(io_err(Path::new(spec)))
}

fn load(spec: &str) -> Result<PlanarTriangulation, CliError> {
    Ok(load_rotation_system(&read_text(spec)?)?)
}

struct Emit {
    output: Option<PathBuf>,
}

impl Emit {
    fn text(&self, s: &str) -> Result<(), CliError> {
        match &self.output {
            Some(p) => std::fs::write(p, s).map_err(io_err(p)),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(s.as_bytes()).map_err(io_err(Path::new("<stdout>")))
            }
        }
    }

    fn json<T: Serialize>(&self, value: &T) -> Result<(), CliError> {
        let mut s = serde_json::to_string_pretty(value).expect("output serializes");
        s.push('\n');
        self.text(&s)
    }
}

fn seed_or_default(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        eprintln!("seed: {DEFAULT_SEED} (default)");
        DEFAULT_SEED
    })
}

#[derive(Debug, Serialize)]
struct ChainsDocument {
    n: usize,
    chains: Vec<Vec<VertexId>>,
    /// Restart vertex of each chain after the first.
    anchors: Vec<Option<VertexId>>,
    segments: Vec<SpiralSegment>,
    rotation_steps: u64,
    theta_separators: Vec<ThetaSeparator>,
}

fn persist_witness(dir: &Path, w: &FailureWitness) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let path = dir.join(w.file_name());
    std::fs::write(&path, w.to_json()).map_err(io_err(&path))?;
    Ok(path)
}

fn read_coloring(path: &Path, n: usize) -> Result<Coloring, CliError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    if let Ok(doc) = serde_json::from_str::<ColoringDocument>(&text) {
        return Ok(doc.colors);
    }
    if let Ok(w) = FailureWitness::from_json(&text) {
        return Ok(w.partial);
    }
    let raw: Vec<u8> = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: not a coloring document or color array: {e}", path.display())))?;
    if raw.len() != n {
        eprintln!("warning: coloring has {} entries for {n} vertices", raw.len());
    }
    Ok(Coloring::from_raw(raw))
}

fn exec(cli: Cli) -> Result<i32, CliError> {
    let emit = Emit { output: cli.output };
    match cli.command {
        Command::Validate(inp) => {
            let text = read_text(&inp.input)?;
            let report = match parse_rotation_system(&text) {
                Ok(rs) => validate_triangulation(&rs),
                Err(DocumentError::Syntax { line, message }) => ValidationReport {
                    ok: false,
                    violations: vec![Violation {
                        rule: "syntax".into(),
                        detail: message,
                        vertices: vec![],
                        line: Some(line),
                    }],
                    ..ValidationReport::default()
                },
                Err(e) => return Err(e.into()),
            };
            emit.json(&report)?;
            eprintln!("{}: {}", inp.input, if report.ok { "valid" } else { "invalid" });
            Ok(if report.ok { EXIT_OK } else { EXIT_INPUT })
        }
        Command::Chains(inp) => {
            let g = load(&inp.input)?;
            let d = extract_spiral_chains(&g);
            let doc = ChainsDocument {
                n: g.n(),
                chains: d.chains.iter().map(|c| c.vertices.clone()).collect(),
                anchors: d.chains.iter().map(|c| c.anchor).collect(),
                segments: d.segments.iter().flatten().copied().collect(),
                rotation_steps: d.rotation_steps,
                theta_separators: (0..d.chain_count().saturating_sub(1))
                    .filter_map(|i| detect_theta_separator(&g, &d, i))
                    .collect(),
            };
            emit.json(&doc)?;
            eprintln!("{} chains, {} segments", d.chain_count(), d.segment_count());
            Ok(EXIT_OK)
        }
        Command::Color { input, algo, spiral, seed, max_restarts, max_switches, witness_dir } => {
            let g = load(&input.input)?;
            let started = Instant::now();
            let result = match algo {
                Algo::Spiral => {
                    let opts = spiral.options();
                    spiral_color(&g, &opts).map(|c| ColoringDocument::from_spiral(&g, &c, opts))
                }
                Algo::KempeKittell => {
                    let seed = seed_or_default(seed);
                    let caps = KittellCaps { max_restarts, max_switches };
                    kempe_kittell_color(&g, seed, &caps).map(|c| ColoringDocument::from_kittell(&g, &c))
                }
                Algo::Exact => match exact_four_color(&g, &ExactConfig::default()) {
                    Ok(ExactOutcome::Colored { colors, .. }) => {
                        Ok(ColoringDocument::from_exact(&g, Coloring::from_raw(colors)))
                    }
                    Ok(ExactOutcome::Exhausted { .. }) => {
                        eprintln!("exact search found no 4-coloring");
                        return Ok(EXIT_FAILURE);
                    }
                    Err(e) => return Err(CliError::Input(e.to_string())),
                },
            };
            match result {
                Ok(doc) => {
                    emit.json(&doc)?;
                    eprintln!(
                        "{}: {} in {:.3}s",
                        Algorithm::from(algo),
                        if doc.verification.ok { "verified" } else { "VERIFICATION FAILED" },
                        started.elapsed().as_secs_f64()
                    );
                    Ok(if doc.verification.ok { EXIT_OK } else { EXIT_FAILURE })
                }
                Err(w) => {
                    emit.text(&(w.to_json() + "\n"))?;
                    eprintln!(
                        "{}: stuck at vertex {} (blocking {:?}) after {} of {} vertices",
                        w.algorithm,
                        w.stuck_vertex,
                        w.blocking.iter().map(|c| c.value()).collect::<Vec<_>>(),
                        w.partial.colored_count(),
                        g.n()
                    );
                    if let Some(dir) = witness_dir {
                        eprintln!("witness written to {}", persist_witness(&dir, &w)?.display());
                    }
                    Ok(EXIT_FAILURE)
                }
            }
        }
        Command::Verify { input, coloring } => {
            let g = load(&input.input)?;
            let c = read_coloring(&coloring, g.n())?;
            let report = verify_coloring(&g, &c);
            emit.json(&report)?;
            Ok(if report.ok { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Gen { n, seed, flips } => {
            if n < 4 {
                return Err(CliError::Input("n must be at least 4".into()));
            }
            let seed = seed_or_default(seed);
            let g = generate_triangulation(&GenConfig { n, seed, flips });
            emit.text(&serialize(&g))?;
            Ok(EXIT_OK)
        }
        Command::Fuzz { count, nmin, nmax, seed, algo, exact_bound, no_structure, witness_dir } => {
            if count == 0 || nmin < 4 || nmin > nmax {
                return Err(CliError::Input("need count >= 1 and 4 <= nmin <= nmax".into()));
            }
            let seed = seed_or_default(seed);
            let mut algorithms: Vec<Algorithm> = algo.into_iter().map(Algorithm::from).collect();
            if algorithms.is_empty() {
                algorithms = FuzzConfig::default().algorithms;
            }
            algorithms.sort_by_key(|a| a.name());
            algorithms.dedup();
            let cfg = FuzzConfig {
                count,
                nmin,
                nmax,
                seed,
                exact_bound,
                algorithms,
                structure: !no_structure,
                witness_dir,
                ..FuzzConfig::default()
            };
            let started = Instant::now();
            let report = fuzz(&cfg).map_err(|e| CliError::Io { path: "witness directory".into(), source: e })?;
            emit.json(&report)?;
            eprintln!(
                "{count} instances in {:.2}s: spiral {}/{} pure, {}/{} with repair; kempe-kittell {}/{}; {} improper colorings",
                started.elapsed().as_secs_f64(),
                report.spiral_pure.ok,
                count,
                report.spiral_repair.ok,
                count,
                report.kempe_kittell.ok,
                count,
                report.improper_colorings()
            );
            let sound = report.improper_colorings() == 0 && report.replay_mismatches == 0;
            Ok(if sound { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Replay { witness } => {
            let text = std::fs::read_to_string(&witness).map_err(io_err(&witness))?;
            let w = FailureWitness::from_json(&text)
                .map_err(|e| CliError::Input(format!("{}: not a witness: {e}", witness.display())))?;
            let outcome = replay_witness(&w).map_err(|e| CliError::Input(e.to_string()))?;
            emit.json(&outcome)?;
            Ok(match outcome {
                ReplayOutcome::Reproduced { stuck_vertex, .. } => {
                    eprintln!("reproduced: stuck at vertex {stuck_vertex}");
                    EXIT_FAILURE
                }
                other => {
                    eprintln!("replay does not match the witness: {other:?}");
                    EXIT_INPUT
                }
            })
        }
        Command::Export { input, format, coloring, spiral } => {
            let g = load(&input.input)?;
            let d = extract_spiral_chains(&g);
            let colors = match coloring {
                Some(p) => read_coloring(&p, g.n())?,
                None => match spiral_color(&g, &spiral.options()) {
                    Ok(c) => c.coloring,
                    Err(w) => w.partial,
                },
            };
            let body = match format {
                Format::Dot => to_dot(&g, &d, Some(&colors)),
                Format::Svg => to_svg(&g, &d, Some(&colors)),
            };
            emit.text(&body)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `argv` (including the program name) and runs one verb. Returns
/// the exit status: 0 success, 1 failed verification or an impasse, 2 bad
/// input or usage.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match exec(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
