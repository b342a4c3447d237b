//! Library side of the `casimir` command: config files, presets and CSV output.

pub mod config;
pub mod presets;
pub mod run;

pub use config::{ConfigError, GridKind, Job, PlateSpec, RunConfig, SweepSpec};
pub use presets::Preset;
pub use run::{evaluate, write_csv, CliError, Overrides, Row, StackReport, CSV_HEADER};
