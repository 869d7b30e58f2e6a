//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::complexity::{complexity, level_indices};
use crate::dot::{complex_dot, graph_dot};
use crate::error::{Error, Result};
use crate::gen::{gen_complex, GenConfig};
use crate::model::Complex;
use crate::moves::{apply, Move};
use crate::search::{self, ExhaustiveProposer, Policy, ScriptedProposer};
use crate::validate::validate;

#[derive(Debug, Parser)]
#[command(name = "widthcalc", version, about = "Index and oriented complexity of multiple bridge surfaces")]
pub struct Args {
    /// RNG seed; WIDTHCALC_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of moves for `thin`.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = PolicyArg::First)]
    policy: PolicyArg,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Suppress everything except the primary output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    First,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an instance and list its violations.
    Validate { path: PathBuf },
    /// Per-level index table and the complexity vector.
    Complexity { path: PathBuf },
    /// Apply moves in order and print the resulting instance.
    Apply {
        path: PathBuf,
        /// Move JSON, inline or as a file path. Repeatable. Moves embedded
        /// in the instance run first.
        #[arg(long = "move")]
        moves: Vec<String>,
    },
    /// Apply moves until none applies; prints the trace as JSON lines.
    Thin {
        path: PathBuf,
        /// Only try the moves embedded in the instance.
        #[arg(long)]
        scripted: bool,
    },
    /// Expand every rewrite from an instance and print the graph.
    Explore {
        path: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 200)]
        budget: usize,
    },
    /// Print a random valid instance.
    Gen {
        #[arg(long, default_value_t = 4)]
        max_thick: usize,
        #[arg(long, default_value_t = 2)]
        max_genus: i64,
        #[arg(long, default_value_t = 4)]
        max_punctures: i64,
        #[arg(long)]
        no_boundary: bool,
    },
    /// Run a reduced version of the acceptance suite.
    Selftest {
        /// Instances per criterion.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Deserialize)]
struct EmbeddedMoves {
    #[serde(default)]
    moves: Vec<Move>,
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn load(path: &Path) -> Result<(Complex, Vec<Move>)> {
    let text = read(path)?;
    let c = Complex::from_json(&text)?;
    let embedded: EmbeddedMoves = serde_json::from_str(&text)?;
    Ok((c, embedded.moves))
}

fn load_valid(path: &Path) -> Result<(Complex, Vec<Move>)> {
    let (c, m) = load(path)?;
    let report = validate(&c);
    if !report.is_valid() {
        return Err(Error::Invalid(report));
    }
    Ok((c, m))
}

fn parse_moves(arg: &str) -> Result<Vec<Move>> {
    let text = if arg.trim_start().starts_with(['{', '[']) { arg.to_owned() } else { read(Path::new(arg))? };
    if text.trim_start().starts_with('[') {
        Ok(serde_json::from_str(&text)?)
    } else {
        Ok(vec![serde_json::from_str(&text)?])
    }
}

fn seed(args: &Args) -> u64 {
    std::env::var("WIDTHCALC_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(args.seed)
}

/// Parses `argv` (program name first) and runs the command. Returns the
/// exit code: 0 on success, 1 when the engine rejects the input, 2 on I/O
/// or parse errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&args, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let policy = match args.policy {
        PolicyArg::First => Policy::First,
        PolicyArg::Greedy => Policy::Greedy,
    };
    match &args.command {
        Command::Validate { path } => {
            let (c, _) = load(path)?;
            let report = validate(&c);
            if report.is_valid() {
                if !args.quiet {
                    writeln!(out, "valid")?;
                }
                Ok(0)
            } else {
                write!(out, "invalid:\n{report}")?;
                Ok(1)
            }
        }
        Command::Complexity { path } => {
            let (c, _) = load_valid(path)?;
            if args.format == Some(Format::Dot) {
                write!(out, "{}", complex_dot(&c)?)?;
                return Ok(0);
            }
            let v = complexity(&c)?;
            if !args.quiet && args.format != Some(Format::Json) {
                writeln!(out, "{:<12} {:>6} {:>6} {:>6} {:>6} {:>6}", "level", "mu_up", "mu_dn", "I_up", "I_dn", "I")?;
                for l in level_indices(&c)? {
                    writeln!(
                        out,
                        "{:<12} {:>6} {:>6} {:>6} {:>6} {:>6}",
                        l.id, l.mu_up, l.mu_down, l.index_up, l.index_down, l.index
                    )?;
                }
            }
            writeln!(out, "{}", serde_json::to_string(&v)?)?;
            Ok(0)
        }
        Command::Apply { path, moves } => {
            let (mut c, mut all) = load_valid(path)?;
            for arg in moves {
                all.extend(parse_moves(arg)?);
            }
            for m in &all {
                let before = complexity(&c)?;
                let applied = apply(&c, m)?;
                let after = complexity(&applied.complex)?;
                if !args.quiet {
                    let names: Vec<&str> = applied.checks.iter().map(|k| k.name()).collect();
                    writeln!(err, "{m}: {before} -> {after}; passed {}", names.join(", "))?;
                }
                c = applied.complex;
            }
            match args.format {
                Some(Format::Dot) => write!(out, "{}", complex_dot(&c)?)?,
                _ => writeln!(out, "{}", c.to_json())?,
            }
            Ok(0)
        }
        Command::Thin { path, scripted } => {
            let (c, embedded) = load_valid(path)?;
            let cap = args.cap.unwrap_or(search::DEFAULT_CAP);
            let (end, trace) = if *scripted {
                search::thin(&c, &ScriptedProposer::new(embedded), policy, cap)?
            } else {
                search::thin(&c, &ExhaustiveProposer::default(), policy, cap)?
            };
            if args.format == Some(Format::Dot) {
                write!(out, "{}", complex_dot(&end)?)?;
                return Ok(0);
            }
            for step in &trace.steps {
                writeln!(out, "{}", serde_json::to_string(step)?)?;
            }
            let summary = serde_json::json!({
                "initial": trace.initial,
                "terminal": trace.terminal,
                "steps": trace.steps.len(),
                "skipped": trace.skipped,
                "result": end,
            });
            writeln!(out, "{summary}")?;
            Ok(0)
        }
        Command::Explore { path, depth, budget } => {
            let (c, _) = load_valid(path)?;
            let g = search::rewrite_graph(&c, &ExhaustiveProposer::default(), *depth, *budget)?;
            if args.format == Some(Format::Json) {
                writeln!(out, "{}", serde_json::to_string(&g)?)?;
            } else {
                write!(out, "{}", graph_dot(&g))?;
            }
            if !args.quiet {
                writeln!(
                    err,
                    "{} nodes, {} edges, {} sinks{}",
                    g.nodes.len(),
                    g.edges.len(),
                    g.sinks().len(),
                    if g.incomplete { ", incomplete" } else { "" }
                )?;
            }
            Ok(0)
        }
        Command::Gen { max_thick, max_genus, max_punctures, no_boundary } => {
            let seed = seed(args);
            let cfg = GenConfig {
                max_thick: *max_thick,
                max_genus: *max_genus,
                max_punctures: *max_punctures,
                allow_boundary: !no_boundary,
                seed,
                ..GenConfig::default()
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = gen_complex(&cfg, &mut rng);
            if !args.quiet {
                writeln!(err, "seed: {seed}")?;
            }
            match args.format {
                Some(Format::Dot) => write!(out, "{}", complex_dot(&c)?)?,
                _ => writeln!(out, "{}", c.to_json())?,
            }
            Ok(0)
        }
        Command::Selftest { samples } => {
            let outcomes = crate::selftest::run(seed(args), *samples);
            let mut ok = true;
            for o in &outcomes {
                ok &= o.passed;
                if !args.quiet || !o.passed {
                    writeln!(out, "{o}")?;
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}
