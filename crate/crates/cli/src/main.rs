mod input;
mod report;

use branchdisc::classifier::VerifyConfig;
use branchdisc::{verify, Error, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use input::{parse_input, parse_trunc, read_text, Input};
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "branchdisc", version, about = "Discriminants of plane branches")]
struct Cli {
    /// Starting precision in bits.
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..))]
    precision: u32,
    /// Puiseux truncation order: `auto` or a positive rational.
    #[arg(long, global = true, default_value = "auto", allow_hyphen_values = true)]
    trunc_order: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for coefficients drawn for unspecified parameters.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants, type and Puiseux roots of a curve.
    Analyze { input: Option<String> },
    /// Discriminant of the morphism (x, f).
    Discriminant { input: Option<String> },
    /// Predicted discriminant type of a branch descriptor.
    Classify { input: Option<String> },
    /// Prediction against computation for a branch descriptor.
    Verify { input: Option<String> },
    /// Verify every row of a table.
    Table { n: u32 },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::InvalidDescriptor(_) => 3,
        Error::PrecisionExhausted { .. } => 4,
        Error::InsufficientTruncation(_) => 5,
        _ => 1,
    }
}

fn error_json(e: &Error) -> Value {
    let mut o = json!({"kind": e.kind(), "message": e.to_string()});
    if let Error::Parse { position, .. } = e {
        o["position"] = json!(position);
    }
    json!({ "error": o })
}

fn descriptor(i: Input) -> Result<branchdisc::BranchDescriptor> {
    match i {
        Input::Descriptor(d) => Ok(d),
        other => Err(Error::InvalidInput(format!("expected a branch descriptor, found {} input", other.kind()))),
    }
}

fn run(cli: &Cli) -> Result<Value> {
    let trunc = parse_trunc(&cli.trunc_order)?;
    let cfg = VerifyConfig { precision: cli.precision, seed: cli.seed };
    match &cli.command {
        Command::Analyze { input } => match parse_input(&read_text(input.clone())?)? {
            Input::Parametrization(p) => report::analyze(&branchdisc::puiseux::implicitize(&p)?, Some(&p), trunc, cli.precision),
            Input::Equation(f) => report::analyze(&f, None, trunc, cli.precision),
            Input::Descriptor(d) => {
                let (f, p) = report::build_curve(&d, cli.seed)?;
                report::analyze(&f, p.as_ref(), trunc, cli.precision)
            }
        },
        Command::Discriminant { input } => {
            let f = match parse_input(&read_text(input.clone())?)? {
                Input::Parametrization(p) => branchdisc::puiseux::implicitize(&p)?,
                Input::Equation(f) => f,
                Input::Descriptor(d) => report::build_curve(&d, cli.seed)?.0,
            };
            report::discriminant(&f, trunc, cli.precision)
        }
        Command::Classify { input } => report::classify_json(&descriptor(parse_input(&read_text(input.clone())?)?)?),
        Command::Verify { input } => {
            let d = descriptor(parse_input(&read_text(input.clone())?)?)?;
            Ok(report::verify_json(&verify(&d, &cfg)?))
        }
        Command::Table { n } => report::table(*n, &cfg),
    }
}

fn emit(v: &Value, format: Format) {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not an error of ours
    let _ = match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json")),
        Format::Text => write!(out, "{}", report::to_text(v)),
    };
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            println!("{}", json!({"error": {"kind": "usage", "message": first}}));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(v) => {
            emit(&v, cli.format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&error_json(&e), cli.format);
            ExitCode::from(exit_code(&e))
        }
    }
}
