use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable naming the directory of the default zeta cache.
pub const CACHE_DIR_VAR: &str = "FAMZV_CACHE_DIR";
pub const CACHE_FILE: &str = "zeta-cache.jsonl";

#[derive(Debug, Parser)]
#[command(
    name = "famzv",
    version,
    about = "Finite alternating multiple zeta values mod p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print zeta(index) mod p for every odd prime in a range.
    Zeta(ZetaArgs),
    /// Verify an identity over a prime range.
    Verify {
        #[command(subcommand)]
        target: Target,
    },
    /// Compare quadrature of the iterated integrals with the series.
    Quadcheck(QuadArgs),
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// Comma-separated entries; negative entries are alternating, e.g. `1,-2`.
    #[arg(allow_hyphen_values = true)]
    pub index: String,
    /// Inclusive range `LO..HI`.
    #[arg(long)]
    pub primes: String,
    /// Write the values as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a CSV report here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Zeta cache file (line-delimited JSON). Defaults to
    /// `$FAMZV_CACHE_DIR/zeta-cache.jsonl` when that variable is set.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Record `elapsed_ms` as 0 so repeated runs are byte-identical.
    #[arg(long)]
    pub stable_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct Sweep {
    /// Inclusive range `LO..HI`; only odd primes are used.
    #[arg(long)]
    pub primes: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Evaluate,
}

#[derive(Debug, Clone, Args)]
pub struct Checking {
    /// `symbolic` builds the polynomial; `evaluate` probes random points.
    #[arg(long, value_enum, default_value = "symbolic")]
    pub mode: Mode,
    /// Seed for `--mode evaluate`.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassicForm {
    /// Head factor `l1^i1 u1^j1 + l2^i1 u2^j1`.
    Corrected,
    /// Head factor `l1^i1 u1^j1 + l2^i2 u2^j2`.
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorForm {
    Derived,
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Corrected,
    Printed,
}

#[derive(Debug, Subcommand)]
pub enum Target {
    /// The alternating four-parameter sum formula.
    Main {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        checking: Checking,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// The same formula over positive indices.
    Kamano {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "corrected")]
        form: ClassicForm,
        #[command(flatten)]
        checking: Checking,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// The two-chain formula.
    General {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "corrected")]
        convention: Convention,
        #[command(flatten)]
        checking: Checking,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Run both sign conventions of the two-chain formula and report which holds.
    Convention {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Substitution (1, 0, 0, 1).
    Cor1 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "derived")]
        form: CorForm,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Substitution (1, 1, -1, 1).
    Cor2 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "derived")]
        form: CorForm,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Reversal of indices.
    Reversal {
        #[arg(long)]
        weight: u32,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// The product congruence for one pair, or every pair up to `--weight`.
    Lemma2 {
        #[arg(long, allow_hyphen_values = true, requires = "beta")]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "alpha")]
        beta: Option<String>,
        #[arg(long, conflicts_with_all = ["alpha", "beta"], required_unless_present = "alpha")]
        weight: Option<u32>,
        #[command(flatten)]
        sweep: Sweep,
    },
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    /// Largest weight (at most 3).
    #[arg(long)]
    pub weight: u32,
    #[arg(long, default_value_t = 0.5)]
    pub z: f64,
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
    #[command(flatten)]
    pub output: Output,
}
