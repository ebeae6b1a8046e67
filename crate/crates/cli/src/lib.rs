//! `zukgap` command-line front end.
//!
//! Exit codes: 0 pass, 1 input error, 2 Żuk condition fails, 3 certification
//! or lemma check fails, 4 vacuous certificate.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod groups;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    InputError = 1,
    ZukFails = 2,
    Failed = 3,
    Vacuous = 4,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> Self {
        ExitCode::from(e as u8)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "zukgap", version, about = "Spectral gap certificates for almost representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generating-set file for a permutation group.
    Genset(GensetArgs),
    /// Write a representation file: genuine, perturbed or random.
    Synth(SynthArgs),
    /// Link graph spectrum and Żuk condition.
    Analyze(AnalyzeArgs),
    /// Spectral gap certificate for the averaged operator.
    Certify(RepArgs),
    /// Split off the almost-invariant part and unitarize the rest.
    Decompose(DecomposeArgs),
    /// Run the cochain identity and inequality checks.
    Lemmas(LemmasArgs),
    /// Certify perturbations over a grid of scales.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    /// Built-in group: `s3` or `z<n>`.
    #[arg(long)]
    pub group: Option<String>,
    /// Rotation amounts generating `S` inside `z<n>`.
    #[arg(long, value_delimiter = ',')]
    pub rotations: Vec<usize>,
    /// Generator given by its images, e.g. `1,2,0`. Repeatable.
    #[arg(long = "perm")]
    pub perms: Vec<String>,
    /// Use the generators and their inverses as `S` instead of every
    /// non-identity element.
    #[arg(long)]
    pub given: bool,
}

impl GroupArgs {
    pub fn spec(&self) -> groups::GroupSpec {
        groups::GroupSpec {
            group: self.group.clone(),
            rotations: self.rotations.clone(),
            perms: self.perms.clone(),
            given: self.given,
        }
    }
}

#[derive(Debug, Args)]
pub struct GensetArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RepKind {
    Trivial,
    Regular,
    Permutation,
    Standard,
    Sign,
    Character,
    Random,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Existing generating set (for kinds that need no permutations).
    #[arg(long, conflicts_with_all = ["group", "perms"])]
    pub genset: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: RepKind,
    /// Character index for `--kind character`.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Dimension for `--kind random`.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Perturbation scale applied after construction.
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the generating set the representation is defined on.
    #[arg(long)]
    pub genset_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub genset: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    #[arg(long)]
    pub genset: PathBuf,
    #[arg(long)]
    pub rep: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = zukgap_core::almostrep::TOL_UNITARY)]
    pub tol_unitary: f64,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: RepArgs,
    /// Where to write the corrected matrices `π′`, in the input basis.
    #[arg(long)]
    pub pi_prime: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    #[command(flatten)]
    pub input: RepArgs,
    #[arg(long, default_value_t = 16)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: RepArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, default_value_t = 1e-12)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub t_max: f64,
    #[arg(long, default_value_t = 13)]
    pub points: usize,
    /// Evenly spaced grid instead of log-spaced.
    #[arg(long)]
    pub linear: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Runs one invocation and maps the outcome to an exit code, printing
/// diagnostics to stderr.
pub fn run(cli: Cli) -> Exit {
    let result = match cli.command {
        Command::Genset(a) => commands::genset(&a),
        Command::Synth(a) => commands::synth(&a),
        Command::Analyze(a) => commands::analyze(&a),
        Command::Certify(a) => commands::certify(&a),
        Command::Decompose(a) => commands::decompose(&a),
        Command::Lemmas(a) => commands::lemmas(&a),
        Command::Sweep(a) => commands::sweep(&a),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            commands::classify(&err)
        }
    }
}
