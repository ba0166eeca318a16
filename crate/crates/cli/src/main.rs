mod bench;
mod commands;
mod error;
mod input;
mod report;

use bernfit::Method;
use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{load_nodes, run_cond, run_fit, Basis, FitOptions};
use error::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

/// Accurate least-squares fitting in the Bernstein basis.
#[derive(Parser)]
#[command(name = "bernfit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a polynomial of given degree to `x,f` samples.
    Fit(FitArgs),
    /// Reproduce the accuracy and conditioning tables on built-in examples.
    Bench(BenchArgs),
    /// Report 2-norm condition numbers of the collocation matrices.
    Cond(CondArgs),
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    degree: usize,
    #[arg(long, value_enum, default_value = "structured")]
    method: MethodArg,
    /// Map abscissas from [A, B] onto [0, 1] before fitting.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    interval: Option<Vec<f64>>,
    /// Compare against the exact rational solution and report ec, er and kappa_bv.
    #[arg(long)]
    oracle: bool,
    #[arg(long, conflicts_with = "table")]
    json: bool,
    #[arg(long)]
    table: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Structured,
    Qr,
    Normal,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Structured => Method::Structured,
            MethodArg::Qr => Method::GenericQr,
            MethodArg::Normal => Method::NormalEquations,
        }
    }
}

#[derive(Args)]
struct BenchArgs {
    /// Example id (5.1 or 5.2); repeat for several.
    #[arg(long = "example")]
    examples: Vec<String>,
    #[arg(long)]
    json: bool,
    /// Include wall-clock runtimes, which makes the output nondeterministic.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct CondArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    degree: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "v,tv,bv")]
    bases: Vec<Basis>,
    #[arg(long)]
    json: bool,
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Fit(args) => {
            let interval = args.interval.map(|v| (v[0], v[1]));
            let (nodes, data) = load_nodes(&args.input, interval)?;
            let opts = FitOptions {
                degree: args.degree,
                method: args.method.into(),
                oracle: args.oracle,
            };
            let report = run_fit(&nodes, &data, &opts)?;
            Ok(if args.json {
                report.to_json() + "\n"
            } else {
                report.to_table(nodes.as_slice(), &data)
            })
        }
        Command::Bench(args) => {
            let report = bench::run_bench(&args.examples, args.timing)?;
            let text = if args.json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                report.to_table()
            };
            let failures = report.failures();
            if failures.is_empty() {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::Band(failures.join(", ")))
            }
        }
        Command::Cond(args) => {
            let (nodes, _) = load_nodes(&args.input, None)?;
            run_cond(&nodes, args.degree, &args.bases, args.json)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
