//! The GL(2) character-table oracle, the verification suites, configs and
//! reports.

pub mod config;
pub mod gl2;
pub mod report;
pub mod suites;

pub use config::{Caps, Config, DEFAULT_ENUMERATION_CAP, DEFAULT_SEED};
pub use gl2::{oracle_phi, vanishing_sweep_gl2, ClassKind, Convention, CosetRecord, Family, Gl2Table, Oracle};
pub use report::{CheckRecord, Parameters, Report, Status, SuiteReport};
pub use suites::{run, run_suite, tally, tower_level, Suite};
