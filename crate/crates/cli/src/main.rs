//! Command-line front end: lists the experiment catalog and runs one
//! experiment from a JSON configuration, emitting a CSV or JSON table.
//!
//! Exit codes: 0 on success, 1 for usage or configuration errors, 2 when an
//! experiment runs but its verification gate fails.

mod config;
mod experiments;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::ExperimentConfig;
use table::Table;

#[derive(Parser)]
#[command(name = "modspace", version, about = "Discrete time-frequency analysis toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every runnable experiment identifier.
    List,
    /// Run the experiment described by a JSON configuration file.
    Run {
        /// Path to a JSON file; `{"id": "verify:transforms"}` is a minimal one.
        config: PathBuf,
        /// Write the table into this directory instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Cap the worker thread pool at this many threads.
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else is a
            // usage error.
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Command::List => {
            for entry in config::catalog() {
                println!("{:<28} {}", entry.id, entry.summary);
            }
            ExitCode::SUCCESS
        }
        Command::Run { config, out, format, threads } => run(config, out, format, threads),
    }
}

fn run(path: PathBuf, out: Option<PathBuf>, format: Format, threads: Option<usize>) -> ExitCode {
    if let Some(k) = threads {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        if let Err(err) = pool {
            eprintln!("error: {err}");
            return ExitCode::from(1);
        }
    }
    let text = match std::fs::read_to_string(&path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", path.display());
            return ExitCode::from(1);
        }
    };
    let user: ExperimentConfig = match serde_json::from_str(&text) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: invalid configuration: {err}");
            return ExitCode::from(1);
        }
    };
    let outcome = match experiments::run(&user) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(1);
        }
    };

    let version = format!("modspace {}", env!("CARGO_PKG_VERSION"));
    let config_json =
        serde_json::to_string(&outcome.resolved).expect("resolved configuration serializes");
    let rendered = match format {
        Format::Csv => outcome
            .table
            .to_csv(&[version, format!("config {config_json}")]),
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Document<'a> {
                version: &'a str,
                config: &'a ExperimentConfig,
                #[serde(flatten)]
                table: &'a Table,
            }
            let doc = Document {
                version: env!("CARGO_PKG_VERSION"),
                config: &outcome.resolved,
                table: &outcome.table,
            };
            let mut body = serde_json::to_string_pretty(&doc).expect("table serializes");
            body.push('\n');
            body
        }
    };

    if let Some(dir) = out {
        if let Err(err) = std::fs::create_dir_all(&dir) {
            eprintln!("error: cannot create {}: {err}", dir.display());
            return ExitCode::from(1);
        }
        let ext = match format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let file = dir.join(format!("{}.{ext}", outcome.resolved.id.replace(':', "-")));
        if let Err(err) = std::fs::write(&file, rendered) {
            eprintln!("error: cannot write {}: {err}", file.display());
            return ExitCode::from(1);
        }
        println!("wrote {}", file.display());
    } else {
        print!("{rendered}");
    }

    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed for '{}'", outcome.resolved.id);
        ExitCode::from(2)
    }
}
