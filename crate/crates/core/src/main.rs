use std::path::PathBuf;

use clap::Parser;

use kolmoreg::cli::{run, Command, RunConfig, RunOptions};
use kolmoreg::error::{Error, Result};

/// Verification laboratory for degenerate Kolmogorov operators.
#[derive(Parser)]
#[command(name = "kolmoreg", version, about)]
struct Cli {
    /// One of: check-structure, verify-transport, verify-maximal, scaling,
    /// refine, toy. Must match the `command` field of the configuration.
    command: String,

    /// Path to the JSON run configuration.
    #[arg(long)]
    config: PathBuf,

    /// Output path prefix (overrides the configuration's `output`).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Cap on total lattice points.
    #[arg(long)]
    budget: Option<u64>,

    /// Worker threads (falls back to KOLMOREG_THREADS, then all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn thread_count(cli: &Cli) -> Option<usize> {
    cli.threads.or_else(|| {
        std::env::var("KOLMOREG_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn real_main(cli: &Cli) -> Result<String> {
    let command = Command::parse(&cli.command)?;
    let text = std::fs::read_to_string(&cli.config)?;
    let config = RunConfig::from_json(&text)?;
    if config.command != command {
        return Err(Error::Config(format!(
            "command: CLI asked for {:?} but the configuration says {:?}",
            command.name(),
            config.command.name()
        )));
    }
    let opts = RunOptions {
        out_override: cli.out.clone(),
        budget_override: cli.budget,
    };
    let summary = run(&config, &opts)?;
    Ok(format!(
        "{}\nwrote {} and {}",
        summary.message,
        summary.csv_path.display(),
        summary.json_path.display()
    ))
}

fn main() {
    let cli = Cli::parse();
    if let Some(k) = thread_count(&cli) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    match real_main(&cli) {
        Ok(msg) => println!("{msg}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
