use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use casimir_core::{energy_ratio, sweep, EnergyResult, MethodChoice};

use crate::config::{Job, RunConfig};

pub const CSV_HEADER: &str = "sigma,ratio,per_plate,err_estimate,method";

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Command-line settings that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub method: Option<MethodChoice>,
    pub rel_tol: Option<f64>,
    pub output: Option<PathBuf>,
}

impl Overrides {
    pub fn apply(&self, config: &mut RunConfig) {
        if let Some(m) = self.method {
            config.method = m;
        }
        if let Some(t) = self.rel_tol {
            config.rel_tol = Some(t);
        }
        if let Some(p) = &self.output {
            config.output = Some(p.clone());
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub sigma: Option<f64>,
    pub result: EnergyResult,
}

#[derive(Debug, Clone)]
pub struct StackReport {
    pub label: String,
    pub plates: usize,
    pub rows: Vec<Row>,
}

impl StackReport {
    pub fn summary(&self) -> String {
        let method = self.rows.first().map(|r| r.result.method.to_string()).unwrap_or_default();
        match self.rows.as_slice() {
            [Row { sigma: None, result }] => format!(
                "{}: {} plates, ratio {:.6e}, per plate {:.6e}, error {:.1e} ({method})",
                self.label, self.plates, result.ratio, result.per_plate, result.error_estimate
            ),
            rows => {
                let first = rows.first().unwrap();
                let last = rows.last().unwrap();
                format!(
                    "{}: {} plates, {} points, sigma {:.3e}..{:.3e}, per plate {:.6e}..{:.6e} ({method})",
                    self.label,
                    self.plates,
                    rows.len(),
                    first.sigma.unwrap_or(f64::NAN),
                    last.sigma.unwrap_or(f64::NAN),
                    first.result.per_plate,
                    last.result.per_plate
                )
            }
        }
    }
}

pub fn evaluate(config: &RunConfig) -> Result<StackReport, CliError> {
    let label = config.label();
    let job = config.job().map_err(|e| CliError::Config(format!("{label}: {e}")))?;
    let spec = config.quadrature_spec().map_err(|e| CliError::Config(e.to_string()))?;
    let numerical = |e: casimir_core::Error| CliError::Numerical(format!("{label}: {e}"));
    let rows = match job {
        Job::Single(stack) => vec![Row {
            sigma: None,
            result: energy_ratio(&stack, config.method, &spec).map_err(numerical)?,
        }],
        Job::Sweep { template, grid } => sweep(&template, &grid, config.method, &spec)
            .map_err(numerical)?
            .into_iter()
            .map(|r| Row {
                sigma: Some(r.sigma),
                result: r.result,
            })
            .collect(),
    };
    Ok(StackReport {
        label,
        plates: config.plates.len(),
        rows,
    })
}

fn sci(x: f64) -> String {
    format!("{x:.9e}")
}

/// Header, then the rows of every stack in order. With more than one stack,
/// each block is introduced by a `# <label>` line.
pub fn write_csv<W: Write>(reports: &[StackReport], out: &mut W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for report in reports {
        if reports.len() > 1 {
            writeln!(out, "# {}", report.label)?;
        }
        for row in &report.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                row.sigma.map(sci).unwrap_or_default(),
                sci(row.result.ratio),
                sci(row.result.per_plate),
                sci(row.result.error_estimate),
                row.result.method
            )?;
        }
    }
    Ok(())
}
