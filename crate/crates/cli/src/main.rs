mod verbs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "pfree",
    version,
    about = "Exact experiments on intersecting and P-free set families"
)]
pub struct Cli {
    /// Seed for every randomized sweep.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker thread cap.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Emit H0, Hx or a block of middle levels as family JSON.
    Construct(verbs::ConstructArgs),
    /// Exact search for a largest family under the given constraints.
    Solve(verbs::SolveArgs),
    /// Cycle-method checks.
    Cycle(verbs::CycleArgs),
    /// Double-chain checks.
    Dchain(verbs::DchainArgs),
    /// LYM-type sums on one family or a seeded sweep.
    Ineq(verbs::IneqArgs),
}

/// What a verb hands back: the JSON report, a table rendering, and whether
/// the property it checked held.
pub struct Report {
    pub json: serde_json::Value,
    pub table: String,
    pub holds: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    let report = match verbs::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.format {
        Format::Json => {
            serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n"
        }
        Format::Table => report.table,
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(anyhow::Error::from),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(anyhow::Error::from),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
