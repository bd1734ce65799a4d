use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "envelope",
    version,
    about = "Centers of enveloping algebras of small nilpotent Lie algebras in characteristic p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the catalog with its center, class and rank columns.
    List {
        /// Only algebras of this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Check the center and invariant claims for one algebra.
    Verify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Check every catalog algebra at its two smallest admissible primes.
    VerifyAll {
        /// Only the algebras with listed center generators.
        #[arg(long)]
        only_table3: bool,
        /// Use this prime for every algebra instead of the default pair.
        #[arg(long)]
        p: Option<u32>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Check the published integral closure generators of g_5_5.
    #[command(name = "macaulay2-check")]
    Macaulay2Check {
        #[arg(long)]
        p: u32,
    },
    /// Basis of the invariants of S(g) up to a degree.
    Invariants {
        #[command(flatten)]
        target: Target,
        /// Largest degree to compute.
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "algebra")]
pub struct TargetName {
    /// Catalog name, e.g. g_6_19.
    pub name: Option<String>,
    /// Custom algebra in the `dim n` / `i j -> k:c` text format.
    #[arg(long, value_name = "PATH")]
    pub algebra_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Target {
    #[command(flatten)]
    pub which: TargetName,
    /// Characteristic. Defaults to the least prime at least the class.
    #[arg(long)]
    pub p: Option<u32>,
    /// Parameter of the eps families. Defaults to 1.
    #[arg(long, allow_negative_numbers = true)]
    pub eps: Option<i64>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Bounds {
    /// Degree bound of the centrality sweep.
    #[arg(long, default_value_t = 4)]
    pub sweep_bound: usize,
    /// Degree bound of the invariant comparison.
    #[arg(long, default_value_t = 3)]
    pub invariant_bound: usize,
    /// Degree bound of the subalgebra membership search.
    #[arg(long)]
    pub membership_bound: Option<usize>,
}

impl Bounds {
    pub fn options(self) -> envelope_core::VerifyOptions {
        envelope_core::VerifyOptions {
            sweep_bound: self.sweep_bound,
            membership_bound: self.membership_bound,
            invariant_bound: self.invariant_bound,
        }
    }
}
