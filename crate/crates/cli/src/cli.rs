use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "dm", version, about = "Delta-matroid counting, checking, construction and encoding")]
pub struct Cli {
    /// Directory holding the enumerated levels.
    #[arg(long, global = true, env = "DM_CACHE_DIR", default_value = ".dm-cache")]
    pub cache_dir: PathBuf,

    /// Worker threads for enumeration.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    /// Seed for randomized constructions.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test the symmetric exchange axiom and evenness of a set system file.
    Check { path: PathBuf },

    /// Count labelled delta-matroids on [1], ..., [max-n].
    Count {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(1..=16))]
        max_n: u8,
        /// Also count even delta-matroids.
        #[arg(long)]
        with_even: bool,
        /// Admit n = 6 through class representatives of level 5.
        #[arg(long)]
        allow_n6: bool,
    },

    /// Count even delta-matroids on [n].
    CountEven {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=16))]
        n: u8,
        #[arg(long)]
        allow_n6: bool,
    },

    /// Build a delta-matroid from one of the lower-bound constructions.
    Construct {
        #[command(subcommand)]
        kind: Construction,
    },

    /// Encode an even delta-matroid.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Rebuild a set system from an encoding record.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
    },

    /// Encode then decode a system and compare.
    Roundtrip { path: PathBuf },

    /// Spectrum of the distance-two graph of the n-cube.
    Spectrum {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=16))]
        n: u8,
    },

    /// Evaluate the encoding bound on the number of even delta-matroids.
    Bound {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=24))]
        n: u8,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// Complement of a random stable set of the n-cube.
    StableComplement {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complement of a random degree-at-most-one set along one edge cut.
    CutSample {
        #[arg(long)]
        n: u8,
        /// Cut coordinate, 1-based.
        #[arg(long, default_value_t = 1)]
        cut: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union of random sparse paving layers at every even rank.
    StackedEven {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest residue class of r-sets, a stable set of J(n, r).
    GsStable {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        r: u8,
    },
}
