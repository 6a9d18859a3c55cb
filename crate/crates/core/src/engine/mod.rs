//! Round-based execution of a workload under a policy.
//!
//! Every round visits each unfinished process once, in queue order, and
//! grants it one slice. A process whose remaining burst reaches zero leaves
//! the queue at the end of the round. Consecutive visits of the same process
//! are kept as separate slices, so the number of context switches is always
//! `slices.len() - 1`.

mod reference;

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::policies::{clamp_quantum, pbdrr_first_quantum, pbdrr_next_quantum, static_quantum, Policy};
use crate::timeslice::{compute_its, TimeSliceBreakdown};
use crate::workload::{Ticks, Workload};

pub use reference::naive_reference_simulate;

/// One uninterrupted run of a process on the CPU.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Slice {
    /// Id of the process that ran.
    #[cfg_attr(feature = "serde", serde(rename = "pid"))]
    pub process_id: String,
    /// First tick of the slice.
    pub start: Ticks,
    /// Tick at which the slice ended (exclusive).
    pub end: Ticks,
    /// 1-based global round index.
    pub round: u32,
}

impl Slice {
    /// Length in ticks.
    pub fn len(&self) -> Ticks {
        self.end - self.start
    }

    /// `true` only for a degenerate slice, which the engine never emits.
    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }
}

/// The full schedule: a Gantt chart as data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ExecutionTrace {
    /// Policy that produced the trace.
    pub policy: Policy,
    /// ITS breakdowns used; empty for classic round robin.
    pub breakdowns: Vec<TimeSliceBreakdown>,
    /// Slices in execution order.
    pub slices: Vec<Slice>,
}

impl ExecutionTrace {
    /// Tick at which the last slice ends.
    pub fn makespan(&self) -> Ticks {
        self.slices.last().map_or(0, |s| s.end)
    }

    /// Number of rounds executed.
    pub fn rounds(&self) -> u32 {
        self.slices.last().map_or(0, |s| s.round)
    }

    /// Slice lengths of one process, in order.
    pub fn quanta_of(&self, id: &str) -> Vec<Ticks> {
        self.slices
            .iter()
            .filter(|s| s.process_id == id)
            .map(Slice::len)
            .collect()
    }

    /// Checks that the trace tiles `[0, total burst)` without gaps and gives
    /// every process of `workload` exactly its burst.
    pub fn verify(&self, workload: &Workload) -> Result<()> {
        let mut clock = 0;
        let mut served = alloc::vec![0 as Ticks; workload.len()];
        for s in &self.slices {
            if s.start != clock {
                return Err(Error::Integrity(alloc::format!(
                    "slice of {} starts at {} but the previous slice ended at {clock}",
                    s.process_id,
                    s.start
                )));
            }
            if s.is_empty() {
                return Err(Error::Integrity(alloc::format!("empty slice for {}", s.process_id)));
            }
            let idx = workload
                .index_of(&s.process_id)
                .ok_or_else(|| Error::Integrity(alloc::format!("unknown process {}", s.process_id)))?;
            served[idx] += s.len();
            clock = s.end;
        }
        for (p, got) in workload.processes().iter().zip(served) {
            if got != p.burst {
                return Err(Error::Integrity(alloc::format!(
                    "process {} received {got} ticks but needs {}",
                    p.id,
                    p.burst
                )));
            }
        }
        Ok(())
    }
}

struct Runnable {
    index: usize,
    remaining: Ticks,
    // last pre-clamp quantum, PBDRR only
    last_quantum: Option<Ticks>,
}

impl Runnable {
    fn grant(&mut self, policy: Policy, breakdown: Option<&TimeSliceBreakdown>) -> Ticks {
        match (policy, breakdown) {
            (Policy::Pbdrr { .. }, Some(b)) => {
                let raw = match self.last_quantum {
                    None => pbdrr_first_quantum(b.its, b.sc),
                    Some(prev) => pbdrr_next_quantum(prev, b.sc),
                };
                self.last_quantum = Some(raw);
                clamp_quantum(raw, self.remaining)
            }
            (Policy::Mrr { .. }, Some(b)) => static_quantum(b.its, self.remaining),
            (Policy::RoundRobin { quantum }, _) => static_quantum(quantum, self.remaining),
            (_, None) => unreachable!("ITS-based policy without breakdown"),
        }
    }
}

/// Runs `workload` under `policy` and records every slice.
pub fn simulate(workload: &Workload, policy: Policy) -> Result<ExecutionTrace> {
    policy.validate()?;
    let breakdowns = match policy.ots() {
        Some(ots) => compute_its(workload, ots)?,
        None => Vec::new(),
    };

    let mut ready: Vec<Runnable> = workload
        .processes()
        .iter()
        .enumerate()
        .map(|(index, p)| Runnable {
            index,
            remaining: p.burst,
            last_quantum: None,
        })
        .collect();
    let mut slices = Vec::new();
    let mut clock: Ticks = 0;
    let mut round = 0u32;

    while !ready.is_empty() {
        round += 1;
        for proc in ready.iter_mut() {
            let granted = proc.grant(policy, breakdowns.get(proc.index));
            debug_assert!(granted >= 1 && granted <= proc.remaining);
            slices.push(Slice {
                process_id: workload.processes()[proc.index].id.clone(),
                start: clock,
                end: clock + granted,
                round,
            });
            clock += granted;
            proc.remaining -= granted;
        }
        ready.retain(|p| p.remaining > 0);
    }

    debug_assert_eq!(clock, workload.total_burst());
    Ok(ExecutionTrace {
        policy,
        breakdowns,
        slices,
    })
}
