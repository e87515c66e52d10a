//! Command-line driver for `triality-core`: built-in tables, gradings,
//! lattice evidence, the conformal search and character checks.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 truncation (the cutoff is too small for the requested computation).

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::Report;
use crate::config::{Format, Overrides, RunConfig, CONFIG_ENV};
use crate::error::CliResult;

#[derive(Debug, Parser)]
#[command(name = "triality", version, about = "Exact fusion-ring and lattice VOA computations")]
pub struct Cli {
    /// Degree cutoff for Fock spaces and q-series, e.g. `3` or `5/3`.
    #[arg(long, global = true)]
    pub cutoff: Option<String>,
    /// Exponent denominator for q-series.
    #[arg(long, global = true)]
    pub scale: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Config file; flags override its values.
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a built-in fusion table.
    Tables {
        /// C_full, A_sub, B_ext or sigma_fixed_sub.
        name: String,
        /// Also check the fusion-ring axioms.
        #[arg(long)]
        verify: bool,
    },
    /// Derive the extension ring from lattice evidence and compare with B_ext.
    DeriveTableB {
        /// Leave out an evidence item (repeatable), e.g. `E7`.
        #[arg(long = "drop-evidence", value_name = "ID")]
        drop: Vec<String>,
        /// Also propagate single-unknown associativity equations.
        #[arg(long)]
        associativity: bool,
    },
    /// Enumerate the gradings of a built-in table.
    Gradings {
        name: String,
        #[arg(long, default_value_t = 6)]
        max_order: u64,
    },
    /// Compute u_n v in the lattice Fock space.
    FockMode {
        /// `vacuum`, `omega`, or a vector file.
        #[arg(long)]
        u: String,
        /// Mode index, e.g. `1` or `-1/3`.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long)]
        v: String,
    },
    /// Find the conformal vectors of charges 1/2, 7/10, 4/5.
    Conformal,
    /// Theta series, graded dimensions and branching of the cosets.
    Characters {
        #[arg(long)]
        coset: Option<String>,
        #[arg(long, default_value = "6")]
        branching_cutoff: String,
    },
    /// Run every check; exit 0 only if all pass.
    VerifyAll {
        /// Cutoff for the branching check.
        #[arg(long, default_value = "6")]
        branching_cutoff: String,
    },
}

/// Runs a parsed command and returns the rendered output with its exit
/// code.
pub fn run(cli: &Cli) -> CliResult<(String, i32)> {
    let overrides = Overrides { cutoff: cli.cutoff.clone(), scale: cli.scale, format: cli.format };
    let cfg = RunConfig::load(cli.config.as_deref(), &overrides)?;
    let report: Report = match &cli.command {
        Command::Tables { name, verify } => commands::tables(name, *verify)?,
        Command::DeriveTableB { drop, associativity } => commands::derive_table_b(&cfg, drop, *associativity)?,
        Command::Gradings { name, max_order } => commands::gradings(name, *max_order)?,
        Command::FockMode { u, n, v } => commands::fock_mode(&cfg, u, n, v)?,
        Command::Conformal => commands::conformal(&cfg)?,
        Command::Characters { coset, branching_cutoff } => {
            let c = triality_core::scalar::parse_scalar(branching_cutoff)?;
            commands::characters(&cfg, coset.as_deref(), &c)?
        }
        Command::VerifyAll { branching_cutoff } => {
            let c = triality_core::scalar::parse_scalar(branching_cutoff)?;
            commands::verify_all(&cfg, &c)?
        }
    };
    Ok((report.render(cfg.format), report.exit))
}
