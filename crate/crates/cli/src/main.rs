use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod commands;
mod demo;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "homeo-order", version, about = "Exact left orderings of piecewise-linear homeomorphisms of the line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for commands that sample.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sign of a map against the identity.
    Sign {
        /// Ordering spec; the canonical standard ordering when omitted.
        #[arg(long)]
        ordering: Option<PathBuf>,
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Compare two maps.
    Compare {
        #[arg(long)]
        ordering: Option<PathBuf>,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// Above and below sets of a map.
    Absets {
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Build g and h from a family with matching above/below unions.
    Anb {
        #[arg(long)]
        inputs: PathBuf,
        #[arg(long, default_value_t = 20)]
        max_rounds: usize,
    },
    /// A standard ordering making every input positive.
    Approximate {
        #[arg(long)]
        inputs: PathBuf,
        /// Invert inputs that are negative under this ordering first.
        #[arg(long)]
        ordering: Option<PathBuf>,
    },
    /// Dynamical realization of a ball in a left-ordered group.
    Realize(RealizeArgs),
    /// Convergence of sequences of standard orderings.
    Limits {
        #[command(subcommand)]
        command: LimitsCommand,
    },
    /// Worked examples separating the classes of orderings.
    HierarchyDemo {
        /// Number of sampled points for the germ section.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
struct RealizeArgs {
    #[arg(long, value_enum)]
    group: Group,
    #[arg(long)]
    radius: usize,
    /// JSON list of maps (for `--group pl`).
    #[arg(long, required_if_eq("group", "pl"))]
    generators: Option<PathBuf>,
    /// Standard ordering spec (for `--group pl`); canonical when omitted.
    #[arg(long)]
    ordering: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    /// ℤ with its usual order.
    Z,
    /// ℤ² ordered lexicographically.
    Z2lex,
    /// A subgroup generated by PL maps.
    Pl,
}

#[derive(Subcommand, Debug)]
enum LimitsCommand {
    /// Sign traces of test maps along a sequence, and its limit prefix.
    Probe {
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long)]
        tests: PathBuf,
        #[arg(long)]
        budget: usize,
        /// Number of limit positions to report.
        #[arg(long, default_value_t = 0)]
        prefix: usize,
    },
}

/// A finished command: machine-readable payload and a short human summary.
pub struct Report {
    pub json: Value,
    pub text: String,
}

#[derive(Debug)]
pub enum CliError {
    /// Input could not be read or did not match its schema.
    Input(String),
    Operation(homeo_order::Error),
    /// A demonstration or check ran but did not come out as expected.
    Failed(String),
}

impl From<homeo_order::Error> for CliError {
    fn from(e: homeo_order::Error) -> Self {
        CliError::Operation(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            _ => 1,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Input(m) => ("input", m.clone()),
            CliError::Operation(e) => (e.kind(), e.to_string()),
            CliError::Failed(m) => ("check_failed", m.clone()),
        };
        json!({ "schema_version": SCHEMA_VERSION, "error": { "kind": kind, "message": message } })
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Sign { ordering, function } => commands::sign(ordering.as_deref(), function),
        Command::Compare { ordering, f, g } => commands::compare(ordering.as_deref(), f, g),
        Command::Absets { function } => commands::absets(function),
        Command::Anb { inputs, max_rounds } => commands::anb(inputs, *max_rounds),
        Command::Approximate { inputs, ordering } => commands::approximate(inputs, ordering.as_deref()),
        Command::Realize(a) => commands::realize(a.group, a.radius, a.generators.as_deref(), a.ordering.as_deref()),
        Command::Limits { command: LimitsCommand::Probe { sequence, tests, budget, prefix } } => {
            commands::limits_probe(sequence, tests, *budget, *prefix)
        }
        Command::HierarchyDemo { samples } => demo::hierarchy(cli.seed, *samples),
    }
}

fn emit(cli: &Cli, body: &str) -> io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, body),
        None => io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => {
                    let mut json = report.json;
                    json["schema_version"] = json!(SCHEMA_VERSION);
                    format!("{}\n", serde_json::to_string_pretty(&json).expect("JSON values serialize"))
                }
                Format::Text => report.text,
            };
            (body, 0)
        }
        Err(e) => {
            eprintln!("error: {}", e.to_json()["error"]["message"].as_str().unwrap_or_default());
            let body = match cli.format {
                Format::Json => format!("{}\n", e.to_json()),
                Format::Text => String::new(),
            };
            (body, e.exit_code())
        }
    };
    if let Err(e) = emit(&cli, &body) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
