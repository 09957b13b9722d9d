use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use hilbsq::report::{self, Format};
use hilbsq::verdict::{density_verdict_with, VerdictOptions};
use hilbsq::Error;

#[derive(Parser)]
#[command(name = "hilbsq", version, about = "Exact lattice certificates for Hilbert squares of quartic K3 surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Box size for the exhaustive zero search on q.
    #[arg(long, default_value_t = 200)]
    search_bound: u32,
    /// |y| bound when listing sample nodal classes.
    #[arg(long, default_value_t = 100)]
    y_bound: u64,
}

impl Common {
    fn options(&self) -> VerdictOptions {
        VerdictOptions { search_bound: self.search_bound, y_bound: BigInt::from(self.y_bound) }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the full certificate chain for one parameter.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate the verdict for every a in [from, to].
    Scan {
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Print the Gram matrix, involutions, their product and its spectrum.
    Matrix {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Verify { a, common } => {
            let r = density_verdict_with(a, &common.options())?;
            Ok(match common.format.into() {
                Format::Text => report::report_text(&r),
                Format::Json => report::report_json(&r) + "\n",
            })
        }
        Command::Scan { from, to, common } => {
            let rows = report::scan(from, to, &common.options())?;
            Ok(match common.format.into() {
                Format::Text => report::scan_text(&rows),
                Format::Json => report::scan_json(&rows) + "\n",
            })
        }
        Command::Matrix { a, format } => match format.into() {
            Format::Text => report::matrix_text(&a),
            Format::Json => Ok(report::to_pretty(&report::matrix_value(&a)?) + "\n"),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e @ (Error::InvalidParameter(_) | Error::InvalidRange { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("internal error: {e}");
            ExitCode::from(1)
        }
    }
}
