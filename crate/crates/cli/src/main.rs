use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rootcite::{DedupConfig, DedupMode, Parallelism, SourceFormat};
use rootcite_cli::{cmd_create, cmd_ingest, cmd_run, CliError, ProjectLayout, RunOptions};

#[derive(Parser)]
#[command(name = "rootcite", version, about = "Reference publication year spectroscopy for CSSCI and WoS exports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Cssci,
    Wos,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Minhash,
    Jaccard,
    Levenshtein,
}

#[derive(Subcommand)]
enum Command {
    /// Create the project directories.
    Create { dir: PathBuf },
    /// Parse the exports under data_<format>/ into the record store.
    Ingest {
        #[arg(long, value_enum)]
        format: FormatArg,
        dir: PathBuf,
    },
    /// Deduplicate references, compute the spectrum and write the reports.
    Run {
        #[arg(long, value_enum, default_value = "minhash")]
        dedup_mode: ModeArg,
        /// Similarity threshold in (0, 1]; defaults to the mode's own.
        #[arg(long, value_parser = parse_threshold)]
        threshold: Option<f64>,
        #[arg(long, default_value_t = DedupConfig::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        from: Option<i32>,
        #[arg(long)]
        to: Option<i32>,
        #[arg(long, default_value_t = rootcite::peaks::DEFAULT_MIN_DEV, value_parser = clap::value_parser!(i64).range(1..))]
        min_dev: i64,
        #[arg(long, default_value_t = rootcite_cli::commands::DEFAULT_TOP_K)]
        top_k: usize,
        dir: PathBuf,
    },
}

fn parse_threshold(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t <= 1.0 {
        Ok(t)
    } else {
        Err(format!("{t} is outside (0, 1]"))
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    let parallelism = Parallelism::default();
    match command {
        Command::Create { dir } => {
            cmd_create(&dir)?;
        }
        Command::Ingest { format, dir } => {
            let format = match format {
                FormatArg::Cssci => SourceFormat::Cssci,
                FormatArg::Wos => SourceFormat::Wos,
            };
            let summary = cmd_ingest(&ProjectLayout::open(&dir)?, format, parallelism)?;
            for line in &summary.diagnostics {
                eprintln!("{line}");
            }
            println!("{summary}");
        }
        Command::Run { dedup_mode, threshold, seed, from, to, min_dev, top_k, dir } => {
            let mode = match dedup_mode {
                ModeArg::Minhash => DedupMode::MinhashLsh,
                ModeArg::Jaccard => DedupMode::ExactJaccard,
                ModeArg::Levenshtein => DedupMode::Levenshtein,
            };
            let mut dedup = DedupConfig::new(mode).with_seed(seed).with_parallelism(parallelism);
            if let Some(t) = threshold {
                dedup = dedup.with_threshold(t);
            }
            let options = RunOptions { dedup, from, to, min_dev, top_k };
            for report in cmd_run(&ProjectLayout::open(&dir)?, &options)? {
                println!("{report}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
