use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::Parser;

use a5k3::driver::{render_report, run_suite, Format, Selector};

/// Recompute the pinned values and report pass/fail per check.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// Which group of checks to run.
    #[arg(value_parser = PossibleValuesParser::new(Selector::names()))]
    selector: String,

    #[arg(long, default_value = "text", value_parser = ["text", "structured"])]
    format: String,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    let selector: Selector = cli.selector.parse().expect("validated by clap");
    let format: Format = cli.format.parse().expect("validated by clap");

    let report = run_suite(selector);
    let bytes = render_report(&report, format);
    let written = match &cli.out {
        Some(path) => fs::write(path, &bytes),
        None => io::stdout().lock().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("verify: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.is_success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
