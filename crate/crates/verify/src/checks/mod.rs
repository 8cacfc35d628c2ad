pub mod cyclo;
pub mod norms;
pub mod series;

use crate::report::Sample;

/// Samples and an optional note for the report.
pub type Run = (Vec<Sample>, Option<String>);
