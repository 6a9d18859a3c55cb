//! File formats, reporting, reproduction of the published experiments and
//! the `pbdrr` command line, on top of [`pbdrr_core`].

pub mod cases;
pub mod cli;
pub mod error;
pub mod report;
pub mod repro;
pub mod workload_io;

pub use error::{LabError, Result};
pub use report::{build_comparison, render_gantt_svg, render_gantt_text, ComparisonReport, OutputFormat};
pub use repro::{repro, ReproReport, Verdict};
pub use workload_io::{generate_workload, parse_workload, serialize_workload, WorkloadFormat};
