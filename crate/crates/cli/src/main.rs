use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use sullivan_cli::{emit, run, Command, Denominator, Format, Options};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

/// Analyses of minimal Sullivan algebras given as model files.
#[derive(Debug, Parser)]
#[command(name = "sullivan", version)]
struct Args {
    /// cohomology | hilbert | presentation | classify | standard-form | unravel |
    /// loop-homology | duality | hochschild-predict | verify
    command: Command,
    /// Model file; `-` reads standard input.
    model: PathBuf,
    #[arg(long, default_value_t = 24)]
    max_codegree: u32,
    /// Loop-space degree bound.
    #[arg(long, default_value_t = 24)]
    max_degree: u32,
    /// Comma-separated denominator degrees, or `auto`.
    #[arg(long, default_value = "auto")]
    denominator: Denominator,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Seed for the randomized self-tests of `verify`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let text = if args.model.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&args.model)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", args.model.display());
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        max_codegree: args.max_codegree,
        max_degree: args.max_degree,
        denominator: args.denominator,
        seed: args.seed,
    };
    match run(args.command, &text, &opts) {
        Ok(report) => {
            let format = match args.format {
                FormatArg::Text => Format::Text,
                FormatArg::Machine => Format::Machine,
            };
            print!("{}", emit(&report, format));
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {}: {e}", args.model.display());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
