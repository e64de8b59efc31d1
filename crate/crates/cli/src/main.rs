use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use vosa_cli::{characters_csv, error_report, run, CliError, CliResult, Job, Outcome};
use vosa_core::kernel::Weight;

/// Build a truncated vertex operator superalgebra from a JSON job and verify it.
#[derive(Parser, Debug)]
#[command(name = "vosa", version)]
struct Args {
    /// Job file; reads standard input when absent or `-`.
    job: Option<PathBuf>,
    /// Negate Gram entry (0, 0) at this weight before checking.
    #[arg(long, value_name = "WEIGHT", num_args = 0..=1, default_missing_value = "2")]
    corrupt_form: Option<String>,
    /// Worker threads for independent checks.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Print the character table as CSV instead of the JSON report.
    #[arg(long)]
    csv: bool,
}

fn read_job(path: Option<&PathBuf>) -> CliResult<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => text = std::fs::read_to_string(p)?,
        _ => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn cutoff_limit() -> CliResult<Option<Weight>> {
    match std::env::var("VOSA_CUTOFF_LIMIT") {
        Ok(s) => Weight::parse(s.trim())
            .map(Some)
            .map_err(|e| CliError::Job(format!("VOSA_CUTOFF_LIMIT: {e}"))),
        Err(_) => Ok(None),
    }
}

fn execute(args: &Args) -> CliResult<Outcome> {
    let mut job = Job::from_json(&read_job(args.job.as_ref())?)?;
    job.enforce_limit(cutoff_limit()?)?;
    if let Some(w) = &args.corrupt_form {
        job.options.corrupt =
            Some(Weight::parse(w).map_err(|e| CliError::Job(format!("--corrupt-form: {e}")))?);
    }
    if args.csv && !job.checks.contains(&vosa_cli::Check::Characters) {
        return Err(CliError::Job("--csv needs the characters check".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| CliError::Job(format!("--jobs: {e}")))?;
    pool.install(|| run(&job))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(out) => {
            match (&out.characters, args.csv) {
                (Some(table), true) => print!("{}", characters_csv(table)),
                _ => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.report).expect("report serializes")
                ),
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("vosa: {e}");
            println!(
                "{}",
                serde_json::to_string_pretty(&error_report(&e)).expect("report serializes")
            );
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
