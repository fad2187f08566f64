use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use crlab::{run, CliError, Command, Flags};
use crlab_core::BaseOrder;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sub {
    Segre,
    Essvar,
    Ftype,
    Mapfinite,
    Mapcheck,
    PreimageCheck,
    Criterion,
    Verdict,
    Gb,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Command {
        match s {
            Sub::Segre => Command::Segre,
            Sub::Essvar => Command::Essvar,
            Sub::Ftype => Command::Ftype,
            Sub::Mapfinite => Command::Mapfinite,
            Sub::Mapcheck => Command::Mapcheck,
            Sub::PreimageCheck => Command::PreimageCheck,
            Sub::Criterion => Command::Criterion,
            Sub::Verdict => Command::Verdict,
            Sub::Gb => Command::Gb,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Lex,
    Degrevlex,
}

/// Exact Segre-variety, finite-type and formal-map computations.
///
/// Exit status: 0 definite result, 2 inconclusive, 1 error.
#[derive(Debug, Parser)]
#[command(name = "crlab", version)]
struct Cli {
    command: Sub,
    /// Problem file
    file: String,
    /// Emit the JSON report instead of text
    #[arg(long)]
    json: bool,
    /// Longest bracket word for the finite type test
    #[arg(long, value_name = "K")]
    max_length: Option<u32>,
    /// Jet order cap for finiteness and witness checks
    #[arg(long, value_name = "K")]
    cap: Option<u32>,
    #[arg(long, value_enum)]
    order: Option<Order>,
    /// Run verdict sub-analyses on one thread
    #[arg(long)]
    sequential: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let flags = Flags {
        max_length: cli.max_length,
        cap: cli.cap,
        order: cli.order.map(|o| match o {
            Order::Lex => BaseOrder::Lex,
            Order::Degrevlex => BaseOrder::DegRevLex,
        }),
        sequential: cli.sequential,
    };
    let outcome = std::fs::read_to_string(&cli.file)
        .map_err(|source| CliError::Io {
            path: cli.file.clone(),
            source,
        })
        .and_then(|text| run(cli.command.into(), &text, &flags));
    match outcome {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
