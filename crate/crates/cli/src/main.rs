//! Command-line front end for the consecutive pattern poset library.
//!
//! Exit codes: 0 success, 1 internal error, 2 bad input, 3 `σ` not contained
//! in `τ`, 4 a size cap was exceeded (a partial report is still written).

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use consec_poset::config::DEFAULT_SEED;
use consec_poset::ranks::DEFAULT_ORACLE_CAP;
use consec_poset::stats::DEFAULT_MAX_EXHAUSTIVE_N;
use consec_poset::topology::DEFAULT_MAX_CL_CHAINS;
use consec_poset::{Error, OutputFormat, Permutation, RunConfig, Statistic};

use commands::{CensusArgs, ExportKind};
use output::Payload;

const EXIT_INTERNAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_COMPARABLE: u8 = 3;
const EXIT_CAPPED: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "consec-poset",
    version,
    about = "Intervals, Möbius values and exterior statistics of the consecutive pattern poset"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format; CSV applies to tables, censuses and samples.
    #[arg(long, global = true, env = "CONSEC_POSET_FORMAT", default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Master seed for randomized commands.
    #[arg(long, global = true, env = "CONSEC_POSET_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "CONSEC_POSET_THREADS", default_value_t = 0)]
    threads: usize,
    /// Cap on maximal chains for labeling and shelling checks.
    #[arg(long, global = true, env = "CONSEC_POSET_MAX_CHAINS", default_value_t = DEFAULT_MAX_CL_CHAINS)]
    max_chains: usize,
    /// Largest interval given to the exhaustive k-family oracle.
    #[arg(long, global = true, env = "CONSEC_POSET_MAX_ORACLE", default_value_t = DEFAULT_ORACLE_CAP)]
    max_oracle: usize,
    /// Largest n enumerated exhaustively.
    #[arg(long, global = true, env = "CONSEC_POSET_MAX_EXHAUSTIVE_N", default_value_t = DEFAULT_MAX_EXHAUSTIVE_N)]
    max_exhaustive_n: usize,
    /// Print permutations of length at most 9 as digit strings.
    #[arg(long, global = true, env = "CONSEC_POSET_COMPACT")]
    compact: bool,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, short, global = true, env = "CONSEC_POSET_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every structural check on [sigma, tau].
    Classify {
        sigma: Permutation,
        tau: Permutation,
    },
    /// Möbius value of [sigma, tau].
    Mobius {
        sigma: Permutation,
        tau: Permutation,
        /// Include the pairs visited by the recursion.
        #[arg(long)]
        trace: bool,
        /// Cross-check against the direct computation.
        #[arg(long)]
        oracle: bool,
    },
    /// Rank sizes, unimodality, Sperner and lattice properties.
    Ranks {
        sigma: Permutation,
        tau: Permutation,
        /// Emit disjoint chains through the i largest rank levels.
        #[arg(long, value_name = "I")]
        chains: Option<usize>,
    },
    /// Exhaustive distribution tables.
    Table {
        #[arg(value_enum)]
        which: TableKind,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Integer sequences computed exhaustively.
    Sequence {
        #[arg(value_enum)]
        which: SequenceKind,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
    },
    /// Evaluate a statistic on every permutation of length n, or on a sample.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        n: u64,
        #[command(flatten)]
        stat: StatArgs,
        /// Emit one record per permutation, in lexicographic order.
        #[arg(long, conflicts_with = "sample")]
        records: bool,
        /// Sample this many permutations instead of enumerating.
        #[arg(long, value_name = "SIZE")]
        sample: Option<u64>,
    },
    /// Monte Carlo estimate of a statistic's mean.
    Sample {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        n: u64,
        #[arg(long, default_value_t = 100_000)]
        size: u64,
        #[command(flatten)]
        stat: StatArgs,
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
    },
    /// Hasse diagram as DOT, CL-labeled DOT, or JSON.
    Export {
        sigma: Permutation,
        tau: Permutation,
        #[arg(long, group = "kind")]
        dot: bool,
        #[arg(long, group = "kind")]
        dot_labeled: bool,
        #[arg(long, group = "kind")]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct StatArgs {
    /// One of: exterior-length, has-carrier, mu-zero, disconnected-subinterval,
    /// contains-sigma, lattice.
    #[arg(long)]
    stat: String,
    /// Bottom element for statistics that need one.
    #[arg(long)]
    sigma: Option<Permutation>,
}

impl StatArgs {
    fn statistic(&self) -> consec_poset::Result<Statistic> {
        Statistic::from_name(&self.stat, self.sigma)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableKind {
    Exterior,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SequenceKind {
    NoCarrier,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotComparable { .. } => EXIT_NOT_COMPARABLE,
        Error::TooLarge { .. } => EXIT_CAPPED,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// The payload and the exit code to report after writing it.
fn run(cli: &Cli, config: &RunConfig) -> consec_poset::Result<(Payload, u8)> {
    let ok = |p| Ok((p, 0));
    match &cli.command {
        Command::Classify { sigma, tau } => {
            let (p, partial) = commands::classify_cmd(sigma, tau, config)?;
            Ok((p, if partial { EXIT_CAPPED } else { 0 }))
        }
        Command::Mobius {
            sigma,
            tau,
            trace,
            oracle,
        } => ok(commands::mobius_cmd(sigma, tau, *trace, *oracle)?),
        Command::Ranks { sigma, tau, chains } => {
            ok(commands::ranks_cmd(sigma, tau, *chains, config)?)
        }
        Command::Table {
            which: TableKind::Exterior,
            n_max,
        } => ok(commands::table_exterior(*n_max, config)?),
        Command::Sequence {
            which: SequenceKind::NoCarrier,
            n_max,
        } => ok(commands::sequence_no_carrier(*n_max, config)?),
        Command::Census {
            n,
            stat,
            records,
            sample,
        } => {
            let args = CensusArgs {
                n: *n as usize,
                statistic: stat.statistic()?,
                records: *records,
                sample: *sample,
            };
            ok(commands::census(&args, config)?)
        }
        Command::Sample { n, size, stat, .. } => ok(commands::sample(
            *n as usize,
            *size,
            &stat.statistic()?,
            config,
        )?),
        Command::Export {
            sigma,
            tau,
            dot_labeled,
            json,
            ..
        } => {
            let kind = match (dot_labeled, json) {
                (true, _) => ExportKind::DotLabeled,
                (_, true) => ExportKind::Json,
                _ => ExportKind::Dot,
            };
            ok(commands::export(
                sigma,
                tau,
                kind,
                cli.global.compact,
                config,
            )?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let format = match cli.command {
        Command::Sample { json: true, .. } => OutputFormat::Json,
        _ => g.format,
    };
    let config = RunConfig {
        seed: g.seed,
        max_chains: g.max_chains,
        max_oracle: g.max_oracle,
        max_exhaustive_n: g.max_exhaustive_n,
        threads: g.threads,
        format,
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli, &config) {
        Ok((payload, code)) => {
            let text = output::render(payload, format, g.compact);
            if let Err(e) = output::emit(&text, g.output.as_deref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_INTERNAL);
            }
            if code == EXIT_CAPPED {
                eprintln!("warning: a chain cap was exceeded; the report is partial");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
