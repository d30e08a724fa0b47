use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use midring::cli::{self, Family, Outcome, Settings};
use midring::ring::DEFAULT_ORDER_CAP;

#[derive(Parser, Debug)]
#[command(name = "midring", version, about = "Zero-divisor ideals and R/z(R) for finite commutative rings")]
struct Args {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest ring order to construct.
    #[arg(long, global = true, env = "MIDRING_MAX_ORDER", default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,

    /// Skip the exhaustive integral-domain check in analyze/mid.
    #[arg(long, global = true)]
    no_certify: bool,

    /// Print full tables only up to this order.
    #[arg(long, global = true, default_value_t = 32)]
    table_limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zero-divisors, gate, z(R) and mid(R) for one ring.
    Analyze { spec: String },
    /// Print mid(R) with its operation tables.
    Mid { spec: String },
    /// Analyze every member of a family up to a size.
    Scan {
        #[arg(long, value_enum, default_value_t = FamilyArg::Zn)]
        family: FamilyArg,
        #[arg(long)]
        max: u64,
    },
    /// Certify mid(R) is a domain for every gate-passing ring in a corpus.
    Verify {
        /// Corpus file (one spec per line) or "builtin".
        #[arg(long, default_value = "builtin")]
        corpus: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Zn,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { cli::EXIT_INPUT } else { cli::EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let settings = Settings {
        json: args.json,
        max_order: args.max_order,
        certify: !args.no_certify,
        table_limit: args.table_limit,
        ..Settings::default()
    };
    let Outcome { stdout, stderr, code } = match &args.command {
        Command::Analyze { spec } => cli::cmd_analyze(spec, &settings),
        Command::Mid { spec } => cli::cmd_mid(spec, &settings),
        Command::Scan { family: FamilyArg::Zn, max } => cli::cmd_scan(Family::Zn, *max, &settings),
        Command::Verify { corpus } => cli::cmd_verify(corpus, &settings),
    };
    let _ = std::io::stdout().write_all(stdout.as_bytes());
    let _ = std::io::stderr().write_all(stderr.as_bytes());
    ExitCode::from(code as u8)
}
