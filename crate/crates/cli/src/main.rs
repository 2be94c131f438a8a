use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vesiflow_cli::{
    cmd_simulate, cmd_snapshot_fields, cmd_verify, configure_threads, parse_planes, CliResult,
    Suite,
};

#[derive(Parser)]
#[command(name = "vesiflow", version, about = "Relaxational membrane dynamics between two Stokes fluids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation described by a configuration file.
    Simulate { config: PathBuf },
    /// Run a verification suite: symbols, stokes, gradient, dispersion or sector.
    Verify {
        suite: String,
        config: Option<PathBuf>,
        /// Report destination.
        #[arg(long, default_value = "report.csv")]
        report: PathBuf,
    },
    /// Write bulk velocity and pressure planes for a height snapshot.
    SnapshotFields {
        file: PathBuf,
        /// Comma-separated heights; `0+` and `0-` pick a side of the interface.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Configuration supplying the [material] section.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Simulate { config } => {
            let s = cmd_simulate(&config)?;
            println!(
                "{} steps, {} diagnostics rows, t = {} -> {}",
                s.steps,
                s.rows,
                s.final_time,
                s.output.display()
            );
            if s.resolution_warning {
                eprintln!("warning: spectral tail fraction reached 0.1; the run may be under-resolved");
            }
        }
        Command::Verify {
            suite,
            config,
            report,
        } => {
            let suite: Suite = suite.parse().map_err(vesiflow_cli::CliError::Config)?;
            let rows = cmd_verify(suite, config.as_deref(), &report)?;
            println!("{suite}: {} checks passed -> {}", rows.len(), report.display());
        }
        Command::SnapshotFields { file, y, config, out } => {
            let planes = parse_planes(&y)?;
            for p in cmd_snapshot_fields(&file, &planes, config.as_deref(), &out)? {
                println!("{}", p.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vesiflow: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
