//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "grplab", version, about = "Experiments on finite groups: product sets, equation counts, quasirandomness and colorings")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Experiment config (TOML); its seed and format apply unless overridden.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// json or csv.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time (makes output differ between runs).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Refuse groups larger than this.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub order_cap: usize,
}

#[derive(Debug, Args)]
pub struct GroupArg {
    /// `Z/n`, `A x B`, `PSL2(q)`, `perm:(1 2 3);(1 2)` or `table:PATH`.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Args)]
pub struct SetsArg {
    /// Set specs: `interval:lo,len`, `gap:base;step,len;...`, `random:density,seed`,
    /// `subgroup:g1,g2`, `explicit:i1,i2,...`.
    #[arg(long = "set", alias = "sets", num_args = 1.., required = true)]
    pub sets: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, generators, classes and element orders of a group.
    Group {
        #[command(flatten)]
        group: GroupArg,
        /// Also verify the group axioms.
        #[arg(long)]
        check: bool,
    },
    /// Size, doubling, tripling and growth of a set.
    Stats {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 4)]
        powers: usize,
    },
    /// Exact solution counts.
    Count {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        sets: SetsArg,
        /// `xyz`, `ap3`, `power:n1,n2,n3` or `mixing:n`.
        #[arg(long, default_value = "xyz")]
        equation: String,
        /// auto, brute, cayley or fft.
        #[arg(long, default_value = "auto")]
        engine: String,
    },
    /// Tuples whose ordered subproducts lie in prescribed sets.
    Mixing {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        sets: SetsArg,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Character degrees and quasirandomness degree.
    Quasirandom {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Monochromatic Schur pairs of a coloring, or an adversarial search.
    Schur {
        #[command(flatten)]
        group: GroupArg,
        /// JSON file `{k, colors}` or `random:k,seed`.
        #[arg(long, conflicts_with = "k")]
        coloring: Option<String>,
        /// Search for a coloring with this many colors instead.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        iterations: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Monochromatic product tuples.
    Hindman {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, required_unless_present = "set")]
        coloring: Option<String>,
        /// Run the greedy on one set instead of a coloring.
        #[arg(long, conflicts_with = "coloring")]
        set: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        nontrivial: bool,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Density of monochromatic tuples under random colorings.
    Cip {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// auto, exact or sampled.
        #[arg(long, default_value = "auto")]
        mode: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// ε-regular position of three sets.
    Regular {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        sets: SetsArg,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        /// Use sampled descent with this many trials instead of exact enumeration.
        #[arg(long)]
        sampled: Option<usize>,
    },
    /// Product-richness of a set.
    Rich {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[arg(long)]
        sampled: Option<usize>,
    },
    /// Run the config's recipe over its grid.
    Sweep,
    /// Run the config's recipe (a sweep when it has a grid).
    Run,
}
