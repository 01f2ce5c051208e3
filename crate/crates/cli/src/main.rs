//! `omega-nerve`: exact verification of the oriental constructions and
//! nerve computations of the `omega-nerve` library.
//!
//! Exit codes: 0 pass, 1 check failed (witness printed), 2 usage or schema
//! error, 3 size guard tripped.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{CliError, Report, Status};

#[derive(Parser, Debug)]
#[command(
    name = "omega-nerve",
    version,
    about = "Orientals, Street nerves and their exact checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for independent checks.
    #[arg(long, global = true, env = "OMEGA_NERVE_JOBS")]
    pub jobs: Option<usize>,

    /// Seed for randomized instances.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Lift the default size guards.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact checks of the chain-level constructions.
    #[command(subcommand)]
    Verify(Verify),
    /// Build a nerve, report counts and optionally homology.
    #[command(subcommand)]
    Nerve(Nerve),
    /// Compare a nerve against an independent construction.
    Compare(CompareArgs),
    /// Homology of a simplicial set read from an sset/v1 file.
    Homology(HomologyArgs),
    /// Describe the JSON schemas.
    Schema {
        /// One of adc/v1, sset/v1, smap/v1, monoid/v1, report/v1.
        name: Option<String>,
    },
    /// Orientals and their atoms.
    #[command(subcommand)]
    Oriental(Oriental),
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Contraction homotopy and the contraction square.
    Appendix(AppendixArgs),
    /// The contraction homotopy of cn(Δ^m) alone.
    Contraction {
        #[arg(long)]
        m: usize,
    },
    /// The contraction square for every simplex of Δ^1 × Δ^m up to degree P.
    Square {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Fiber products of strong deformation retracts.
    Sdr(SdrArgs),
}

#[derive(Args, Debug)]
pub struct AppendixArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// Corrupt the homotopy before checking it.
    #[arg(long, hide = true)]
    pub tamper_homotopy: bool,
}

#[derive(Args, Debug)]
pub struct SdrArgs {
    /// Number of random instances on top of the fixed one.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 3)]
    pub max_m: usize,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
}

#[derive(Args, Debug, Clone)]
pub struct NerveArgs {
    /// z2, z3, …, trivial, window:lo:hi.
    #[arg(long, conflicts_with_all = ["monoid_file", "group"])]
    pub monoid: Option<String>,
    /// A monoid/v1 JSON file.
    #[arg(long)]
    pub monoid_file: Option<PathBuf>,
    /// Ordered group to take a window of; only `z` is supported.
    #[arg(long, requires = "window")]
    pub group: Option<String>,
    /// Window lo:hi of the ordered group.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// Report homology up to this degree.
    #[arg(long)]
    pub homology: Option<usize>,
    /// Write the nerve as sset/v1 JSON.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Nerve {
    /// N(K(M, n)).
    Kmn(NerveArgs),
    /// The slice at level n − 1 of an ordered monoid.
    Slice(NerveArgs),
    /// The cylinder nerve with its two end projections.
    Cylinder(NerveArgs),
    /// The comma u↓v of two maps into N(K(M, n)).
    Comma(CommaArgs),
}

#[derive(Args, Debug)]
pub struct CommaArgs {
    #[command(flatten)]
    pub nerve: NerveArgs,
    /// point, id, or hom:v0,v1,… (images of the elements in order).
    #[arg(long, default_value = "point")]
    pub left: String,
    #[arg(long, default_value = "id")]
    pub right: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Comparison {
    KmnVsClassical,
    KmnVsDoldkan,
    KmnVsPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Against {
    Classical,
    DoldKan,
    Point,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(value_enum, required_unless_present = "against")]
    pub kind: Option<Comparison>,
    /// Alternative spelling of the comparison.
    #[arg(long, value_enum, conflicts_with = "kind")]
    pub against: Option<Against>,
    #[arg(long, default_value = "z2")]
    pub monoid: String,
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// Highest homology degree compared.
    #[arg(long, default_value_t = 2)]
    pub hdeg: usize,
}

impl CompareArgs {
    pub fn comparison(&self) -> Comparison {
        match (self.kind, self.against) {
            (Some(k), _) => k,
            (None, Some(Against::Classical)) => Comparison::KmnVsClassical,
            (None, Some(Against::DoldKan)) => Comparison::KmnVsDoldkan,
            (None, Some(Against::Point)) | (None, None) => Comparison::KmnVsPoint,
        }
    }
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    /// An sset/v1 file.
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to one below the truncation.
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Oriental {
    /// Atom table of O_n.
    Atoms {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        emit: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                Status::Usage.into()
            } else {
                Status::Pass.into()
            };
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return Status::Usage.into();
        }
        // a second initialisation only happens in-process, never from main
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global();
    }
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(Outcome::Report(mut report)) => {
            report.timing_ms = start.elapsed().as_millis();
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            if let Err(e) = write_out(&cli, &text) {
                eprintln!("error: {}", e.message());
                return e.status().into();
            }
            report.status().into()
        }
        Ok(Outcome::Raw(text)) => match write_out(&cli, &text) {
            Ok(()) => Status::Pass.into(),
            Err(e) => {
                eprintln!("error: {}", e.message());
                e.status().into()
            }
        },
        Err(e) => {
            let kind = match e {
                CliError::Guard(_) => "size guard",
                CliError::Usage(_) => "error",
            };
            eprintln!("{kind}: {}", e.message());
            e.status().into()
        }
    }
}

pub enum Outcome {
    Report(Report),
    /// Output passed through verbatim (schemas, emitted JSON).
    Raw(String),
}

fn write_out(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
