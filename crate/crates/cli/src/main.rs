mod commands;
mod input;
mod report;
mod selftest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "posetrep", version, about = "Representation type and g-vector fans of poset incidence algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

/// Options shared by every subcommand; all of them are recorded in the report.
#[derive(Args, Debug, Clone, Serialize)]
pub struct Options {
    /// Knitting window (number of τ⁻ shifts).
    #[arg(long, global = true, default_value_t = 6)]
    pub window: usize,
    /// Search budget (fan mutations, wall submodules, concealed candidates).
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Box bound for lattice searches.
    #[arg(long = "cone-box", global = true, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
    pub cone_box: i64,
    /// Size cap for exhaustive reduction search; also the orientation cap.
    #[arg(long, global = true, default_value_t = 14, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "dot")]
    pub json: bool,
    /// Emit Graphviz where supported.
    #[arg(long, global = true)]
    pub dot: bool,
}

impl Options {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.dot {
            Format::Dot
        } else {
            Format::Text
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Full verdict bundle for one or more posets (`-` reads standard input).
    Analyze {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Reduction certificate onto a frame, with a minimality check.
    Reduce { input: String },
    /// Knit the preprojective component of a quiver.
    Knit { input: String },
    /// Quiver type, hyperbolic reduction or negative-cone witness.
    Quiver {
        #[arg(value_enum)]
        action: QuiverAction,
        input: String,
    },
    /// Enumerate the g-vector fan by mutation.
    Gfan { input: String },
    /// Search for a tilting module over a quiver whose endomorphism algebra is the input.
    ConcealedCheck {
        input: String,
        #[arg(long, value_enum, default_value_t = TypeSet::All)]
        types: TypeSet,
    },
    /// Negative-cone, transfer and wall checks over a hyperbolic quiver.
    NotgtameCheck {
        input: String,
        /// Tilting summands as `vertex:shift` pairs; defaults to the free module.
        #[arg(long, value_delimiter = ',')]
        tilting: Vec<String>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Print a poset or quiver of a named family.
    Generate {
        family: String,
        params: Vec<String>,
    },
    /// Replay the built-in examples.
    Selftest {
        /// Validate this frames directory instead of only the built-in copies.
        #[arg(long)]
        frames_dir: Option<std::path::PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuiverAction {
    Classify,
    Reduce,
    Witness,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeSet {
    Dynkin,
    Euclidean,
    Wild,
    All,
}

/// Rendered output of a subcommand with its exit code: 0 definitive, 2 when some
/// verdict is unknown, 1 on failure.
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

impl Outcome {
    pub fn new(output: String, unknown: bool) -> Self {
        Outcome { output, code: if unknown { 2 } else { 0 } }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command, &cli.opts) {
        Ok(out) => {
            print!("{}", out.output);
            if !out.output.ends_with('\n') {
                println!();
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
