//! Command-line surface for the exact lattice tree and animal series
//! engine. Every subcommand prints one deterministic report embedding the
//! run configuration; exit codes distinguish verification failures (1),
//! usage errors (2), and enumeration ceilings (3).

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use latan_core::cache::default_cache_dir;
use latan_core::cluster::Model;
use latan_core::enumerate::EnumOptions;
use latan_core::error::{Error, Result};
use latan_core::verify::Suite;

use commands::Ctx;
use output::{OutputFormat, Report, RunConfig, Table};

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    /// Acyclic bond clusters.
    Tree,
    /// Arbitrary connected bond clusters.
    Animal,
}

impl From<ModelArg> for Model {
    fn from(arg: ModelArg) -> Model {
        match arg {
            ModelArg::Tree => Model::Tree,
            ModelArg::Animal => Model::Animal,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "latan",
    version = latan_core::ENGINE_VERSION,
    about = "Exact series engine for lattice trees and bond animals",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Cluster family.
    #[arg(long, global = true, value_enum, default_value = "tree")]
    model: ModelArg,
    /// Lattice dimension.
    #[arg(long, global = true, default_value_t = 2)]
    dim: usize,
    /// Series truncation order (maximum number of bonds).
    #[arg(long, global = true, default_value_t = 4)]
    order: usize,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Count-cache directory (default: $LATAN_CACHE_DIR, else the system
    /// temporary directory).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Abort any enumeration predicted to visit more clusters than this.
    #[arg(long, global = true, default_value_t = EnumOptions::default().ceiling)]
    ceiling: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count clusters through the requested size.
    Count,
    /// Print the headline generating functions.
    Series,
    /// Print the intersecting-pair quantity at a unit vector.
    Q,
    /// Print the two-point correction and its direct configuration sums.
    Pi,
    /// Print the one-point inclusion-exclusion pieces.
    Gamma,
    /// Print cluster-count polynomials in the dimension.
    Polyd,
    /// Print the critical-point and one-point expansion tables.
    ExpansionTable {
        /// Dimensions at which to evaluate float partial sums.
        #[arg(long, value_delimiter = ',', default_value = "3")]
        dims: Vec<usize>,
    },
    /// Print successive count ratios against the growth prediction.
    Ratio,
    /// Run named identity suites (all of them when none are given).
    Verify {
        /// Suite names: onept, gams, rgG, lace, qdecomp, smn, polyd, chi,
        /// dkernel.
        suites: Vec<String>,
    },
    /// Inspect or clean the count cache.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    /// List cache entries.
    Ls,
    /// Remove invalid entries.
    Gc,
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Count => "count",
            Cmd::Series => "series",
            Cmd::Q => "q",
            Cmd::Pi => "pi",
            Cmd::Gamma => "gamma",
            Cmd::Polyd => "polyd",
            Cmd::ExpansionTable { .. } => "expansion-table",
            Cmd::Ratio => "ratio",
            Cmd::Verify { .. } => "verify",
            Cmd::Cache {
                action: CacheCmd::Ls,
            } => "cache ls",
            Cmd::Cache {
                action: CacheCmd::Gc,
            } => "cache gc",
        }
    }
}

/// Runs the parsed invocation; the flag is false when a verification
/// suite reported a failing identity.
fn run(cli: &Cli) -> Result<bool> {
    if let Some(n) = cli.workers {
        // A second pool registration in the same process is harmless; the
        // first one wins and reductions are deterministic either way.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let ctx = Ctx {
        model: cli.model.into(),
        d: cli.dim,
        order: cli.order,
        options: EnumOptions {
            ceiling: cli.ceiling,
        },
        cache_dir: cli.cache_dir.clone().unwrap_or_else(default_cache_dir),
    };
    let mut config = RunConfig {
        command: cli.command.name().to_string(),
        model: ctx.model.name().to_string(),
        dim: ctx.d,
        order: ctx.order,
        workers: cli.workers,
        cache_dir: ctx.cache_dir.display().to_string(),
        format: cli.format.name().to_string(),
        ceiling: cli.ceiling,
        dims: None,
        suites: None,
    };
    let mut passed = true;
    let tables: Vec<Table> = match &cli.command {
        Cmd::Count => commands::count_tables(&ctx)?,
        Cmd::Series => commands::series_tables(&ctx)?,
        Cmd::Q => commands::q_tables(&ctx)?,
        Cmd::Pi => commands::pi_tables(&ctx)?,
        Cmd::Gamma => commands::gamma_tables(&ctx)?,
        Cmd::Polyd => commands::polyd_tables(&ctx)?,
        Cmd::ExpansionTable { dims } => {
            config.dims = Some(dims.clone());
            commands::expansion_tables(ctx.model, ctx.order, dims)?
        }
        Cmd::Ratio => commands::ratio_tables(&ctx)?,
        Cmd::Verify { suites } => {
            let selection: Vec<Suite> = if suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suites
                    .iter()
                    .map(|s| s.parse::<Suite>())
                    .collect::<Result<_>>()?
            };
            config.suites = Some(selection.iter().map(|s| s.name().to_string()).collect());
            let (tables, all_passed) = commands::verify_tables(&ctx, &selection)?;
            passed = all_passed;
            tables
        }
        Cmd::Cache { action } => match action {
            CacheCmd::Ls => commands::cache_ls_tables(&ctx)?,
            CacheCmd::Gc => commands::cache_gc_tables(&ctx)?,
        },
    };
    print!("{}", Report::new(config, tables).render(cli.format));
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceCeiling { .. } => ExitCode::from(3),
                Error::VerificationFailed { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
