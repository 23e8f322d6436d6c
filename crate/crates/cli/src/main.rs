use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wreathcc_cli::commands::{DEFAULT_FAMILY_MEMBERS, EXIT_USAGE};
use wreathcc_cli::{cmd_class, cmd_decide, cmd_verify, cmd_witness, load_instance, Outcome};

/// Infinite conjugacy classes in restricted wreath products.
#[derive(Parser)]
#[command(name = "wreathcc", version)]
struct Cli {
    /// Print one JSON record per command instead of the human report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the instance is icc.
    Decide {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Produce a certificate for the verdict.
    Witness {
        #[arg(short, long)]
        input: PathBuf,
        /// Element to certify, e.g. `{0:1}@0`; defaults to every generator.
        #[arg(short = 'g', long)]
        element: Option<String>,
        /// Family members to list for icc certificates.
        #[arg(long, default_value_t = DEFAULT_FAMILY_MEMBERS)]
        members: usize,
    },
    /// Explore the conjugacy class of an element by brute force.
    Class {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short = 'g', long)]
        element: String,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Decide, certify, verify the certificates and cross-check with the oracle.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

fn run(cli: Cli) -> Outcome {
    let (name, path) = match &cli.command {
        Command::Decide { input } => ("decide", input),
        Command::Witness { input, .. } => ("witness", input),
        Command::Class { input, .. } => ("class", input),
        Command::Verify { input, .. } => ("verify", input),
    };
    let spec = match load_instance(path) {
        Ok(s) => s,
        Err(e) => return Outcome::error(name, None, &e),
    };
    match cli.command {
        Command::Decide { .. } => cmd_decide(&spec),
        Command::Witness { element, members, .. } => cmd_witness(&spec, element.as_deref(), members),
        Command::Class {
            element,
            radius,
            max_size,
            ..
        } => cmd_class(
            &spec,
            &element,
            radius.unwrap_or(spec.budgets.radius),
            max_size.unwrap_or(spec.budgets.max_size),
        ),
        Command::Verify { seed, samples, .. } => cmd_verify(
            &spec,
            seed.unwrap_or(spec.budgets.seed),
            samples.unwrap_or(spec.budgets.samples),
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let json = cli.json;
    let outcome = run(cli);
    if json {
        println!("{}", outcome.json());
    } else if outcome.record.error.is_some() {
        eprint!("{}", outcome.human());
    } else {
        print!("{}", outcome.human());
    }
    ExitCode::from(outcome.exit_code)
}
