use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use slowcolor::exact::DEFAULT_CAP;
use slowcolor::isc::exact::DEFAULT_ISC_CAP;
use slowcolor_cli::commands;
use slowcolor_cli::service::{serve, Store};

#[derive(Parser)]
#[command(name = "slowcolor", version, about = "Slow-coloring and interactive sum choice games")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GameVariant {
    Slow,
    Isc,
}

#[derive(Subcommand)]
enum Cmd {
    /// Game values of a forest by the linear-time formula.
    Compute {
        path: PathBuf,
        /// Print the peel steps.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exact game value of a small graph by exhaustive search.
    Exact {
        path: PathBuf,
        /// Largest vertex count accepted (default 12 for slow, 6 for isc).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value = "slow")]
        variant: GameVariant,
        /// Also list optimal first moves.
        #[arg(long)]
        moves: bool,
    },
    /// Checks the extremal characterizations on every tree with n vertices.
    Census {
        #[arg(long)]
        n: usize,
        /// Write the per-tree JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Times the forest formula on random forests of doubling size.
    Bench {
        #[arg(long, default_value_t = 10_000_000)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Runs the HTTP game service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Append-only JSON-lines session log, replayed on start.
        #[arg(long)]
        persist: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Compute { path, trace, json } => print!("{}", commands::compute(&path, trace, json)?),
        Cmd::Exact { path, cap, variant, moves } => {
            let isc = matches!(variant, GameVariant::Isc);
            let cap = cap.unwrap_or(if isc { DEFAULT_ISC_CAP } else { DEFAULT_CAP });
            print!("{}", commands::exact(&path, cap, isc, moves)?);
        }
        Cmd::Census { n, out } => {
            let (text, ok) = commands::run_census(n, out.as_deref())?;
            print!("{text}");
            return Ok(ok);
        }
        Cmd::Bench { max_n, seed } => {
            let (text, ok) = commands::bench(max_n, seed)?;
            print!("{text}");
            return Ok(ok);
        }
        Cmd::Serve { port, persist } => {
            let store = match persist {
                Some(p) => Store::persistent(&p).map_err(anyhow::Error::msg)?,
                None => Store::in_memory(),
            };
            tokio::runtime::Runtime::new()?.block_on(serve(port, Arc::new(store)))?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
