mod commands;
mod hosts;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{emit, Status};

#[derive(Parser, Debug)]
#[command(name = "cubehom", version, about = "Hypercube homomorphism counts, reflection certificates and rainbow-cycle bounds")]
pub struct Cli {
    /// Seed for random hosts and greedy colourings.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search budget: BFS states for certification, DFS nodes for cycle search.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Write the report (or generated graph) here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph file (and a colouring file for direction cubes).
    Gen(GenArgs),
    /// Search for reflectivity certificates.
    Certify(CertifyArgs),
    /// Check an inequality suite on concrete inputs.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Seeded batch experiments.
    Experiment {
        #[command(subcommand)]
        name: ExperimentName,
    },
    /// Count (constrained or injective) homomorphisms.
    Homcount(HomcountArgs),
    /// Weighted homomorphic cycle count h_2k, exact and spectral.
    H2k(H2kArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<String>,
    /// Colouring file for coloured kinds; defaults to `<out>.colouring`.
    #[arg(long)]
    pub colouring_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Hypercube,
    Setgraph,
    Random,
    #[value(alias = "direction-coloured-cube")]
    DirectionCube,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Pattern graph: generator description or edge-list file.
    #[arg(long)]
    pub graph: String,
    /// Starting pair `u,v`.
    #[arg(long, conflicts_with = "all_pairs", required_unless_present = "all_pairs")]
    pub pair: Option<String>,
    #[arg(long)]
    pub all_pairs: bool,
    /// Directory receiving one JSON certificate per certified pair.
    #[arg(long)]
    pub cert_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum VerifySuite {
    /// Sidorenko, reflection-step and final inequalities for a pattern on a host.
    Section2 {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
    },
    /// The weighted cycle inequality chain at one half-length.
    Section3 {
        #[arg(long)]
        host: String,
        #[arg(long)]
        colouring: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        /// Check the almost-rainbow variant with this ε in (0, 1/2).
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Re-check a certificate file against its pattern.
    Certificate {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExperimentName {
    /// Injective Q_d copies in seeded random hosts.
    Supersaturation {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// h_2k bounds for k = 1..=k-max, with witness search on violation.
    RainbowBounds {
        #[arg(long)]
        host: String,
        #[arg(long)]
        colouring: Option<PathBuf>,
        #[arg(long)]
        k_max: usize,
    },
    /// The ε-variant of rainbow-bounds.
    AlmostRainbowBounds {
        #[arg(long)]
        host: String,
        #[arg(long)]
        colouring: Option<PathBuf>,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        epsilon: String,
    },
}

#[derive(Args, Debug)]
pub struct HomcountArgs {
    #[arg(long)]
    pub pattern: String,
    #[arg(long)]
    pub host: String,
    /// Pattern vertices `u,v,...` that must share one image.
    #[arg(long)]
    pub constraint: Option<String>,
    #[arg(long)]
    pub injective: bool,
}

#[derive(Args, Debug)]
pub struct H2kArgs {
    #[arg(long)]
    pub host: String,
    #[arg(long)]
    pub k: usize,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let started = Instant::now();
    let status = match commands::run(&cli) {
        Ok(outcome) => match emit(&cli, &argv, &outcome) {
            Ok(()) => outcome.status,
            Err(e) => {
                eprintln!("error: {e}");
                Status::from_error(&e)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            Status::from_error(&e)
        }
    };
    eprintln!("elapsed: {} ms", started.elapsed().as_millis());
    ExitCode::from(status.code())
}
