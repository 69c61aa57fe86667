use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use icobr_cli::config::{Command, Format, RunConfig};
use icobr_cli::eval::Status;
use icobr_cli::output::{outcome_csv, outcome_json, table_csv, table_json, DEFAULT_PRECISION};
use icobr_cli::{evaluate_config, figures, CliError};

#[derive(Parser, Debug)]
#[command(name = "icobr", version, about = "Rate regions and sum-rate bounds for the interference channel with an out-of-band relay")]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Significant digits in the output.
    #[arg(long)]
    precision: Option<usize>,
    /// Figure preset, e.g. fig2.
    #[arg(long)]
    name: Option<String>,
}

fn read_config(path: &Option<PathBuf>) -> Result<RunConfig, CliError> {
    let path = path.as_ref().ok_or_else(|| CliError::Usage("--config <path> is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    RunConfig::from_json(&text)
}

fn run(args: &Args) -> Result<(String, bool), CliError> {
    if args.command == Command::Figure {
        let name = args.name.as_deref().ok_or_else(|| CliError::Usage(format!("figure needs --name, one of {}", figures::NAMES.join(", "))))?;
        let digits = args.precision.unwrap_or(DEFAULT_PRECISION);
        let t = figures::figure(name)?;
        let text = match args.format.unwrap_or_default() {
            Format::Csv => table_csv(&t, digits),
            Format::Json => table_json(&t, digits)?,
        };
        return Ok((text, true));
    }
    let cfg = read_config(&args.config)?;
    let digits = args.precision.or(cfg.precision).unwrap_or(DEFAULT_PRECISION);
    let format = args.format.or(cfg.output).unwrap_or_default();
    let outcome = evaluate_config(&cfg, Some(args.command))?;
    let text = match format {
        Format::Csv => outcome_csv(&outcome, digits),
        Format::Json => outcome_json(&outcome, digits)?,
    };
    Ok((text, outcome.status == Status::Ok))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok((text, ok)) => {
            let written = match &args.out {
                Some(p) => std::fs::write(p, &text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
                Ok(()) if ok => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
