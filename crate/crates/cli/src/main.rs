use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use congruence_core::harness::{self, PrimeRange, RunOptions, Summary};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Check congruences for prime powers against brute-force left-hand sides.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Args {
    /// Family to run, or `all`.
    #[arg(long, default_value = "all")]
    family: String,

    /// Inclusive range of primes, `lo:hi`.
    #[arg(long, default_value = "5:100")]
    primes: String,

    /// Modulus exponent override; caps fixed-modulus statements.
    #[arg(long)]
    precision: Option<u32>,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// List the registered families and exit.
    #[arg(long)]
    list: bool,
}

fn run(args: &Args) -> congruence_core::Result<Summary> {
    let range: PrimeRange = args.primes.parse()?;
    let opts = RunOptions { jobs: args.jobs };
    if args.family == "all" {
        harness::run_all(range, args.precision, opts)
    } else {
        harness::run_family(&args.family, range, args.precision, opts)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list {
        for f in harness::registry() {
            println!("{:<14} {}", f.name, f.summary);
        }
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let summary = match run(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match args.format {
        Format::Json => summary.to_json() + "\n",
        Format::Table => summary.to_table(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("verify: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    let t = summary.total();
    eprintln!(
        "{} passed, {} failed, {} errors, {} skipped in {:.2?}",
        t.pass,
        t.fail,
        t.error,
        t.skip,
        start.elapsed()
    );
    if summary.success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
