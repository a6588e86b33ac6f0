//! Command-line front end: one subcommand per capability, JSON parameter
//! documents in, CSV and JSON artifacts out.
//!
//! | command  | artifacts |
//! |----------|-----------|
//! | `symbol` | `det_curve.csv` (`u,edge,re_det,im_det`), `symbol_report.json`, optionally `kernel_symbol.csv` |
//! | `scan`   | `region_map.csv` (`p,r,verdict,winding,min_abs_det_gamma1`), `region_summary.json`, optionally `bvp_criterion.csv` (`p,s,r,verdict`) |
//! | `index`  | `index_report.json` |
//! | `solve`  | `phi_<method>.csv`, `psi_<method>.csv` (`t,re,im`), `solve_report.json` |
//! | `bvp`    | `probes.csv` (`x1,x2,u_reconstructed,u_exact,abs_err`), `case_spec.json`, `bvp_summary.json` |
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical error, 4 I/O error.

mod commands;
pub mod config;

pub use config::{
    load_params, parse_params, BvpParams, CompositeDoc, CompositeTerm, CriterionParams, IndexParams, KernelParams,
    ScanParams, SolveData, SolveParams, SymbolParams,
};

use crate::error::{Error, ErrorKind, Result};
use clap::{Parser, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Symbol,
    Scan,
    Index,
    Solve,
    Bvp,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "mellin-bie",
    version,
    about = "Mellin symbols, Fredholm scans and boundary integral solves"
)]
pub struct RunConfig {
    pub command: Command,
    /// JSON parameter document for the command.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Seed for randomized inputs.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

pub fn exit_code(err: &Error) -> i32 {
    match err.kind() {
        ErrorKind::Validation => 2,
        ErrorKind::Numerical => 3,
        ErrorKind::Io => 4,
    }
}

/// Runs one command and returns the paths written, in write order.
pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        if n == 0 {
            return Err(Error::Config("--threads must be positive".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    pool.install(|| {
        let path = cfg.config.as_deref();
        let artifacts = match cfg.command {
            Command::Symbol => commands::symbol(&load_params(path)?)?,
            Command::Scan => commands::scan(&load_params(path)?)?,
            Command::Index => commands::index(&load_params(path)?)?,
            Command::Solve => commands::solve(&load_params(path)?, cfg.seed)?,
            Command::Bvp => commands::bvp(&load_params(path)?)?,
        };
        std::fs::create_dir_all(&cfg.out)?;
        let mut written = Vec::with_capacity(artifacts.len());
        for (name, bytes) in artifacts {
            let p = cfg.out.join(name);
            std::fs::write(&p, bytes)?;
            written.push(p);
        }
        Ok(written)
    })
}

/// Parses `args` (program name first), runs, reports, and returns the exit
/// code.
pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cfg) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
