//! Turnaround, waiting and context-switch metrics for a finished trace.
//!
//! Averages are kept as exact fractions ([`Mean`]) and only rounded when
//! rendered, half-up to one decimal with a trailing `.0` dropped, so 232/5
//! renders as `46.4` and 155/5 as `31`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::engine::ExecutionTrace;
use crate::error::{Error, Result};
use crate::workload::{Ticks, Workload};

/// Exact arithmetic mean `total / count`.
#[derive(Debug, Clone, Copy, Eq)]
pub struct Mean {
    total: u64,
    count: u64,
}

impl Mean {
    /// Mean of `total` spread over `count` samples; `count` must be non-zero.
    pub fn new(total: u64, count: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidArgument("mean over zero samples"));
        }
        Ok(Mean { total, count })
    }

    /// Numerator.
    pub fn total(self) -> u64 {
        self.total
    }

    /// Denominator.
    pub fn count(self) -> u64 {
        self.count
    }

    /// Value rounded half-up to tenths, as an integer number of tenths.
    pub fn tenths(self) -> u64 {
        (20 * self.total + self.count) / (2 * self.count)
    }

    /// Rounded value as a float, e.g. `46.4`.
    pub fn rounded(self) -> f64 {
        self.tenths() as f64 / 10.0
    }

    /// Unrounded value as a float.
    pub fn as_f64(self) -> f64 {
        self.total as f64 / self.count as f64
    }
}

impl PartialEq for Mean {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl PartialOrd for Mean {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mean {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.total) * u128::from(other.count)).cmp(&(u128::from(other.total) * u128::from(self.count)))
    }
}

impl fmt::Display for Mean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.tenths();
        if t.is_multiple_of(10) {
            f.pad(&alloc::format!("{}", t / 10))
        } else {
            f.pad(&alloc::format!("{}.{}", t / 10, t % 10))
        }
    }
}

/// Per-process outcome. Arrival is 0, so turnaround equals completion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProcessMetrics {
    /// Process id.
    pub id: String,
    /// Burst in ticks.
    pub burst: Ticks,
    /// End of the process's last slice.
    pub completion: Ticks,
    /// `completion - arrival`.
    pub turnaround: Ticks,
    /// `turnaround - burst`.
    pub waiting: Ticks,
    /// Start of the process's first slice.
    pub response: Ticks,
}

/// Per-process rows plus the aggregate columns of a comparison table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleMetrics {
    /// One row per process, in workload order.
    pub per_process: Vec<ProcessMetrics>,
    /// Mean turnaround time.
    pub avg_turnaround: Mean,
    /// Mean waiting time.
    pub avg_waiting: Mean,
    /// Mean response time.
    pub avg_response: Mean,
    /// Boundaries between consecutive slices.
    pub context_switches: usize,
}

/// Every boundary between two consecutive slices counts as one switch.
pub fn count_context_switches(trace: &ExecutionTrace) -> Result<usize> {
    trace
        .slices
        .len()
        .checked_sub(1)
        .ok_or(Error::InvalidArgument("trace has no slices"))
}

/// Derives all metrics of `trace`, after checking it really schedules
/// `workload`.
pub fn compute_metrics(trace: &ExecutionTrace, workload: &Workload) -> Result<ScheduleMetrics> {
    trace.verify(workload)?;
    let context_switches = count_context_switches(trace)?;

    let n = workload.len();
    let mut first_start: Vec<Option<Ticks>> = alloc::vec![None; n];
    let mut last_end: Vec<Ticks> = alloc::vec![0; n];
    for s in &trace.slices {
        // verify() guarantees the id resolves
        let idx = workload.index_of(&s.process_id).unwrap_or_default();
        first_start[idx].get_or_insert(s.start);
        last_end[idx] = s.end;
    }

    let per_process: Vec<ProcessMetrics> = workload
        .processes()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let completion = last_end[i];
            ProcessMetrics {
                id: p.id.clone(),
                burst: p.burst,
                completion,
                turnaround: completion,
                waiting: completion - p.burst,
                response: first_start[i].unwrap_or_default(),
            }
        })
        .collect();

    let count = n as u64;
    let sum = |f: fn(&ProcessMetrics) -> Ticks| per_process.iter().map(f).sum::<Ticks>();
    Ok(ScheduleMetrics {
        avg_turnaround: Mean::new(sum(|m| m.turnaround), count)?,
        avg_waiting: Mean::new(sum(|m| m.waiting), count)?,
        avg_response: Mean::new(sum(|m| m.response), count)?,
        per_process,
        context_switches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::simulate;
    use crate::policies::Policy;
    use crate::workload::ProcessSpec;
    use alloc::format;
    use alloc::string::ToString;

    fn workload(bursts: &[Ticks], prios: &[u32]) -> Workload {
        Workload::new(
            bursts
                .iter()
                .zip(prios)
                .enumerate()
                .map(|(i, (&b, &p))| ProcessSpec::new(format!("P{}", i + 1), b, p).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn run(bursts: &[Ticks], prios: &[u32], policy: Policy) -> ScheduleMetrics {
        let w = workload(bursts, prios);
        compute_metrics(&simulate(&w, policy).unwrap(), &w).unwrap()
    }

    #[test]
    fn mean_rendering() {
        assert_eq!(Mean::new(232, 5).unwrap().to_string(), "46.4");
        assert_eq!(Mean::new(155, 5).unwrap().to_string(), "31");
        assert_eq!(Mean::new(1, 20).unwrap().to_string(), "0.1"); // 0.05 rounds up
        assert_eq!(Mean::new(1, 3).unwrap().to_string(), "0.3");
        assert_eq!(Mean::new(2, 4).unwrap(), Mean::new(1, 2).unwrap());
        assert_eq!(format!("{:>5}", Mean::new(155, 5).unwrap()), "   31");
        assert!(Mean::new(1, 3).unwrap() < Mean::new(1, 2).unwrap());
        assert!(Mean::new(1, 0).is_err());
    }

    #[test]
    fn case1_pbdrr() {
        let m = run(&[5, 12, 16, 21, 23], &[2, 3, 1, 4, 5], Policy::pbdrr(4).unwrap());
        assert_eq!(m.avg_turnaround.to_string(), "46.4");
        assert_eq!(m.avg_waiting.to_string(), "31");
        assert_eq!(m.context_switches, 16);
    }

    #[test]
    fn case2_mrr() {
        let m = run(&[31, 23, 16, 9, 1], &[2, 1, 4, 5, 3], Policy::mrr(4).unwrap());
        assert_eq!(m.avg_turnaround.to_string(), "54");
        assert_eq!(m.avg_waiting.to_string(), "38");
        assert_eq!(m.context_switches, 18);
    }

    #[test]
    fn single_process_has_no_waiting() {
        for policy in [
            Policy::pbdrr(4).unwrap(),
            Policy::mrr(3).unwrap(),
            Policy::round_robin(2).unwrap(),
        ] {
            let m = run(&[17], &[4], policy);
            assert_eq!(m.per_process[0].turnaround, 17);
            assert_eq!(m.per_process[0].waiting, 0);
        }
    }

    #[test]
    fn context_switch_counting() {
        let w = workload(&[5, 12, 16, 21, 23], &[2, 3, 1, 4, 5]);
        let mut t = simulate(&w, Policy::mrr(4).unwrap()).unwrap();
        assert_eq!(t.slices.len(), 20);
        assert_eq!(count_context_switches(&t), Ok(19));
        t.slices.pop();
        assert_eq!(count_context_switches(&t), Ok(18));
        t.slices.truncate(1);
        assert_eq!(count_context_switches(&t), Ok(0));
        t.slices.clear();
        assert!(count_context_switches(&t).is_err());
    }

    #[test]
    fn mismatched_workload_is_an_integrity_error() {
        let w = workload(&[5, 12], &[2, 3]);
        let other = workload(&[5, 13], &[2, 3]);
        let t = simulate(&w, Policy::mrr(4).unwrap()).unwrap();
        assert!(matches!(compute_metrics(&t, &other), Err(Error::Integrity(_))));
    }
}
