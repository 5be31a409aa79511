use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use mantel4::hypercore::{parse_text, to_text};
use mantel4::randgen::{sample_with, Generator};
use mantel4::TrialSeed;
use mantel4_cli::config::Tier;
use mantel4_cli::{run, run_solve, with_threads, ExperimentConfig, Kind, Report, THREADS_ENV};

/// Experiments on random 4-uniform hypergraphs and generalized triangles.
///
/// Exit status: 0 clean, 2 partial (some trials skipped), 1 failed.
#[derive(Debug, Parser)]
#[command(name = "mantel4", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// TOML experiment config.
    config: PathBuf,
    /// Override the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (stdout if absent); JSON and timing files go next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample one G^k(n, p) and write it in the text format.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial index under the master seed.
        #[arg(long, default_value_t = 0)]
        index: u64,
        #[arg(long, value_enum, default_value = "skip")]
        generator: GeneratorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best cut and best T-free subhypergraph of a hypergraph file.
    Solve {
        input: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        tier: Option<TierArg>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase sweep: best T-free value against the best cut.
    Phase(RunArgs),
    /// Degree-statistic concentration bands.
    Concentration(RunArgs),
    /// Decomposition, Lemma 13 audit and Lemma 14 gap.
    Audit(RunArgs),
    /// ex(n, T_k) on complete hosts against the Turán hypergraph.
    TuranTable(RunArgs),
    /// Parse a hypergraph file and check that canonical output is a fixed point.
    FmtRoundtrip {
        input: PathBuf,
        /// Write the canonical form here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum GeneratorArg {
    Skip,
    Bernoulli,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum TierArg {
    Exact,
    Heuristic,
}

fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ExperimentConfig::from_toml(&text)?)
}

fn experiment(kind: Kind, args: RunArgs, threads: Option<usize>) -> Result<Report> {
    let mut cfg = load_config(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if args.out.is_some() {
        cfg.out = args.out;
    }
    if threads.is_some() {
        cfg.threads = threads;
    }
    cfg.validate(kind)?;
    log::info!("{}: {} cells x {} trials", kind.name(), cfg.n.len() * cfg.p.len().max(1), cfg.trials);
    let report = with_threads(cfg.threads, || run(kind, &cfg))??;
    report.write(cfg.out.as_deref())?;
    Ok(report)
}

fn execute(cli: Cli) -> Result<Report> {
    let threads = cli.threads;
    match cli.command {
        Command::Generate { n, k, p, seed, index, generator, out } => {
            let generator = match generator {
                GeneratorArg::Skip => Generator::Skip,
                GeneratorArg::Bernoulli => Generator::Bernoulli,
            };
            let g = sample_with(generator, n, k, p, TrialSeed::derive(seed, index))?;
            write_text(out.as_deref(), &to_text(&g))?;
            Ok(empty_report())
        }
        Command::Solve { input, config, tier, seed, out } => {
            let mut cfg = match config {
                Some(path) => load_config(&path)?,
                None => ExperimentConfig::default(),
            };
            if let Some(t) = tier {
                cfg.tier = match t {
                    TierArg::Exact => Tier::Exact,
                    TierArg::Heuristic => Tier::Heuristic,
                };
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let h = parse_text(&text)?;
            let report = with_threads(threads, || run_solve(&cfg, &h))??;
            report.write(out.as_deref())?;
            Ok(report)
        }
        Command::Phase(args) => experiment(Kind::Phase, args, threads),
        Command::Concentration(args) => experiment(Kind::Concentration, args, threads),
        Command::Audit(args) => experiment(Kind::Audit, args, threads),
        Command::TuranTable(args) => experiment(Kind::TuranTable, args, threads),
        Command::FmtRoundtrip { input, out } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let canonical = to_text(&parse_text(&text)?);
            let again = to_text(&parse_text(&canonical)?);
            anyhow::ensure!(again == canonical, "canonical form is not a fixed point");
            if text != canonical {
                log::info!("{} is not in canonical form", input.display());
            }
            write_text(out.as_deref(), &canonical)?;
            Ok(empty_report())
        }
    }
}

fn write_text(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn empty_report() -> Report {
    Report { csv: String::new(), json: None, timing: Vec::new(), skipped: Vec::new() }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match execute(Cli::parse()) {
        Ok(report) if report.skipped.is_empty() => ExitCode::SUCCESS,
        Ok(report) => {
            for reason in &report.skipped {
                log::warn!("skipped {reason}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            log::error!("{e:#}");
            ExitCode::FAILURE
        }
    }
}
