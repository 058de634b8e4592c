use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "longres",
    version,
    about = "Schur-complement pencil realizations of positive real functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a PSD pencil whose Schur complement is the input function.
    Synthesize {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Feasibility tolerance of the Gram search, in (0, 1e-3].
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        /// Seed for verification points.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Wronskian positivity test.
    Check {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// SOS certificate search for a symmetric matrix form.
    Sos {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
    },
    /// Product polarization of a function's numerator and denominator.
    Polarize {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Make the coefficient of this variable (1-based) a PSD Gram matrix.
        #[arg(long)]
        psd_slot: Option<usize>,
    },
    /// Degree reduction of one variable.
    Reduce {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Variable to reduce (1-based).
        #[arg(long)]
        var: usize,
        /// Number of fresh variables.
        #[arg(long)]
        bound: u32,
    },
}
