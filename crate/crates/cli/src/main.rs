use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use casimir_cli::{evaluate, presets, write_csv, CliError, Overrides, RunConfig};
use casimir_core::MethodChoice;
use clap::{ArgGroup, Parser};

/// Casimir energies of parallel plate stacks, written as CSV.
#[derive(Parser, Debug)]
#[command(name = "casimir", version)]
#[command(group(ArgGroup::new("source").args(["config", "preset", "list_presets"]).required(true)))]
struct Args {
    /// Run configuration file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Built-in scenario (see --list-presets).
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,

    /// CSV destination; stdout when absent.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Evaluation method: auto, polylog, quadrature or ideal.
    #[arg(long)]
    method: Option<MethodChoice>,

    /// Relative tolerance of the numerical integrals.
    #[arg(long, value_name = "X")]
    rel_tol: Option<f64>,

    /// Print the preset names and exit.
    #[arg(long)]
    list_presets: bool,
}

fn load(args: &Args) -> Result<Vec<RunConfig>, CliError> {
    if let Some(name) = &args.preset {
        return presets::find(name)
            .map(|p| p.stacks)
            .ok_or_else(|| CliError::Config(format!("unknown preset '{name}' (try --list-presets)")));
    }
    let path = args.config.as_ref().expect("clap enforces a source");
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let config = RunConfig::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok(vec![config])
}

fn run(args: &Args) -> Result<(), CliError> {
    if args.list_presets {
        print!("{}", presets::listing());
        return Ok(());
    }
    if let Some(tol) = args.rel_tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Config(format!("--rel-tol must be positive, got {tol}")));
        }
    }
    let overrides = Overrides {
        method: args.method,
        rel_tol: args.rel_tol,
        output: args.output.clone(),
    };
    let mut configs = load(args)?;
    for c in &mut configs {
        overrides.apply(c);
    }
    let mut reports = Vec::with_capacity(configs.len());
    for c in &configs {
        let report = evaluate(c)?;
        eprintln!("{}", report.summary());
        reports.push(report);
    }

    let io_err = |e: io::Error| CliError::Io(e.to_string());
    match configs.first().and_then(|c| c.output.clone()) {
        Some(path) => {
            let file = fs::File::create(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let mut out = BufWriter::new(file);
            write_csv(&reports, &mut out).and_then(|_| out.flush()).map_err(io_err)
        }
        None => {
            let mut out = io::stdout().lock();
            write_csv(&reports, &mut out).and_then(|_| out.flush()).map_err(io_err)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("casimir: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
