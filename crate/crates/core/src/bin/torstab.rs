use std::process::ExitCode;

use clap::Parser;
use torstab::cli::{dispatch, render, Flags};

/// Exact valuative-stability invariants of polarised toric varieties.
#[derive(Parser)]
#[command(name = "torstab", version)]
struct Args {
    /// invariants, beta, futaki, delta, destabilize, criterion, oracle or examples
    command: String,
    /// Input JSON file, or a gallery name ("list" for all) with `examples`
    target: String,
    /// Valuation vector, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    nu: Option<Vec<i64>>,
    /// Search radius for `delta` and `destabilize`
    #[arg(long)]
    radius: Option<i64>,
    /// Largest dilation sampled by `oracle`
    #[arg(long)]
    kmax: Option<u64>,
    #[arg(long)]
    verbose: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let flags = Flags {
        nu: args.nu,
        radius: args.radius,
        kmax: args.kmax,
        verbose: args.verbose,
    };
    match dispatch(&args.command, &args.target, &flags) {
        Ok(report) => {
            println!("{}", render(&report));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("torstab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
