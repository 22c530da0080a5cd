use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sdpke", version, about = "Semidirect product key exchange experiments and attacks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run seeded key exchanges and check that both parties agree.
    Exchange(ExchangeArgs),
    /// Attack transcripts read from a file or generated on the fly.
    Attack(AttackArgs),
    /// Time key generation and key derivation.
    Bench(CommonArgs),
    /// Count solutions of the MOBS telescoping equation by enumeration.
    Count(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// groupring, gl, tropical, make or mobs.
    #[arg(long)]
    pub platform: Option<String>,

    /// JSON parameter file; its "kind" must agree with --platform if both are given.
    #[arg(long)]
    pub params: Option<PathBuf>,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub exponent_bits: u32,

    /// Include the shared key in written transcripts.
    #[arg(long)]
    pub test_mode: bool,

    /// Report destination (standard output by default).
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Report format; json by default, csv for bench.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone)]
pub struct ExchangeArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Write the transcripts to this file.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct AttackArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    #[arg(long, value_enum)]
    pub method: Method,

    /// Attack these transcripts instead of generating fresh exchanges.
    #[arg(long)]
    pub transcript: Option<PathBuf>,

    /// Search bound for tropical-binsearch (default 2^exponent-bits).
    #[arg(long)]
    pub x_max: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Dimension,
    Telescope,
    TropicalBinsearch,
    MobsCount,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Dimension => "dimension",
            Method::Telescope => "telescope",
            Method::TropicalBinsearch => "tropical-binsearch",
            Method::MobsCount => "mobs-count",
        }
    }
}
