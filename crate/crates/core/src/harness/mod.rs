//! Fixture ingestion, experiment orchestration and report emission.

pub mod fixture;
pub mod report;
pub mod run;

pub use fixture::{fixture_paths, load_fixture, Fixture, FixtureFile, OracleSpec};
pub use report::{emit_report, Format, CSV_HEADER};
pub use run::{exit_code, resolve_window, run_experiment, run_with_window, Check, CheckStatus, Command, Report, RunOptions, Window};
