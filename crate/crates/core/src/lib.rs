//! Deterministic CPU scheduling simulation for round-robin variants that
//! compute a per-process *intelligent time slice* (ITS).
//!
//! Three policies are provided:
//!
//! - **PBDRR**: each process starts from its ITS and grows its quantum every
//!   round (doubling for short processes, 1.5x otherwise), running to
//!   completion whenever two ticks or fewer would be left over.
//! - **MRR**: plain round robin using each process's static ITS as quantum.
//! - **RR**: classic round robin with one fixed quantum.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact integer
//! arithmetic over dimensionless ticks; all processes arrive at tick 0.
//!
//! ```
//! use pbdrr_core::{simulate, compute_metrics, Policy, ProcessSpec, Workload};
//!
//! let workload = Workload::new(vec![
//!     ProcessSpec::new("P1", 5, 2).unwrap(),
//!     ProcessSpec::new("P2", 12, 3).unwrap(),
//! ])
//! .unwrap();
//! let trace = simulate(&workload, Policy::pbdrr(4).unwrap()).unwrap();
//! let metrics = compute_metrics(&trace, &workload).unwrap();
//! assert_eq!(metrics.context_switches, trace.slices.len() - 1);
//! ```

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod engine;
pub mod error;
pub mod metrics;
pub mod policies;
pub mod timeslice;
pub mod workload;

pub use engine::{naive_reference_simulate, simulate, ExecutionTrace, Slice};
pub use error::{Error, Result};
pub use metrics::{compute_metrics, count_context_switches, Mean, ProcessMetrics, ScheduleMetrics};
pub use policies::{Policy, PolicyKind, DEFAULT_OTS};
pub use timeslice::{compute_its, TimeSliceBreakdown};
pub use workload::{ProcessSpec, Ticks, Workload};
