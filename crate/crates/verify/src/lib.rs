//! Identity checks for the `carlitz` crate, a registry that names them, and
//! the report formats used by the `verify` binary.

pub mod checks;
pub mod config;
pub mod context;
pub mod error;
pub mod registry;
pub mod report;

pub use config::{CheckConfig, Format};
pub use error::{VerifyError, VerifyResult};
pub use registry::{entries, find, run, run_all, run_check, Entry};
pub use report::{emit, CheckReport, Outcome, Residual, Sample, Status};
