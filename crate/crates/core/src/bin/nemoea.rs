use clap::{Parser, Subcommand};
use nemoea::harness::{
    build_report, generate_instance, read_results, render_csv, render_svg, render_text, run_experiment_with_progress,
    write_instance, ExperimentConfig, Family, Preset, Series,
};
use nemoea::pareto::parse_dump;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nemoea", version, about = "Multi-objective evolutionary experiments on knapsack and NK problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded problem instance file.
    GenInstance {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Epistasis (NK only).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        seed: u64,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run an experiment grid and write results.csv plus dumps.
    Run {
        /// TOML experiment file; overrides --preset.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "desk")]
        preset: Preset,
        /// Override the master seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Summarize a results.csv into text and CSV tables.
    Report {
        results: PathBuf,
        /// Directory for report.txt and report.csv; prints to stdout only if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scatter plot of up to four dumps, each given as LABEL=PATH.
    Plot {
        #[arg(long = "input", required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn execute(command: Command) -> nemoea::Result<()> {
    match command {
        Command::GenInstance { family, n, k, m, seed, out } => {
            let instance = generate_instance(family, n, k, m, seed)?;
            let (path, digest) = write_instance(&instance, seed, &out)?;
            println!("{}", path.display());
            println!("sha256 {digest}");
        }
        Command::Run { config, preset, seed, out, workers } => {
            let mut cfg = match config {
                Some(path) => ExperimentConfig::from_file(&path)?,
                None => ExperimentConfig::preset(preset),
            };
            if let Some(seed) = seed {
                cfg.experiment.master_seed = seed;
            }
            std::fs::create_dir_all(&out)?;
            let records = run_experiment_with_progress(&cfg, &out, workers, |line| eprintln!("{line}"))?;
            println!("{} runs written to {}", records.len(), out.join(nemoea::harness::RESULTS_FILE).display());
        }
        Command::Report { results, out } => {
            let report = build_report(&read_results(&results)?);
            let text = render_text(&report);
            print!("{text}");
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                std::fs::write(dir.join("report.txt"), &text)?;
                std::fs::write(dir.join("report.csv"), render_csv(&report))?;
            }
        }
        Command::Plot { inputs, out } => {
            let mut series = Vec::new();
            for spec in &inputs {
                let (label, path) = spec
                    .split_once('=')
                    .ok_or_else(|| nemoea::Error::InvalidParameter(format!("expected LABEL=PATH, got {spec:?}")))?;
                let (_, points) = parse_dump(&std::fs::read_to_string(path)?)?;
                series.push(Series { label: label.to_string(), points });
            }
            let plot = render_svg(&series)?;
            for w in &plot.warnings {
                eprintln!("warning: {w}");
            }
            std::fs::write(&out, plot.svg)?;
            println!("{}", out.display());
        }
    }
    Ok(())
}
