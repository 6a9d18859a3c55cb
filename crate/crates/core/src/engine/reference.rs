//! A deliberately literal, step-by-step interpreter of the PBDRR rules, extended
//! to the two static policies. It recomputes every ITS from the closed form
//! and applies the quantum rules inline so that it shares nothing with
//! [`simulate`](super::simulate) beyond the input and output types. Used as a
//! differential oracle.

use alloc::vec;
use alloc::vec::Vec;

use super::{ExecutionTrace, Slice};
use crate::error::{Error, Result};
use crate::policies::Policy;
use crate::timeslice::TimeSliceBreakdown;
use crate::workload::Workload;

/// Straightforward interpreter; must always agree with `simulate`.
pub fn naive_reference_simulate(workload: &Workload, policy: Policy) -> Result<ExecutionTrace> {
    let procs = workload.processes();
    let n = procs.len();

    // 1. calculate ITS for all processes in the ready queue
    let mut breakdowns = Vec::new();
    if let Policy::Pbdrr { ots } | Policy::Mrr { ots } = policy {
        if ots == 0 {
            return Err(Error::InvalidArgument("ots must be at least 1"));
        }
        let best = procs.iter().map(|p| p.priority).min().unwrap();
        for k in 0..n {
            let pc: i64 = if procs[k].priority == best { 1 } else { 0 };
            let sc: i64 = if k > 0 && (procs[k].burst as i64) - (procs[k - 1].burst as i64) < 0 {
                1
            } else {
                0
            };
            let base = ots as i64 + pc + sc;
            let burst = procs[k].burst as i64;
            let its = if burst - base < ots as i64 { burst } else { base };
            breakdowns.push(TimeSliceBreakdown {
                ots,
                pc: pc as u8,
                sc: sc as u8,
                csc: its - base,
                its: its as u64,
            });
        }
    }
    if let Policy::RoundRobin { quantum: 0 } = policy {
        return Err(Error::InvalidArgument("quantum must be at least 1"));
    }

    // 2. while the ready queue is not empty, run round i
    let mut remaining: Vec<i64> = procs.iter().map(|p| p.burst as i64).collect();
    let mut tq: Vec<i64> = vec![0; n];
    let mut queue: Vec<usize> = (0..n).collect();
    let mut slices = Vec::new();
    let mut now: i64 = 0;
    let mut i: u32 = 0;
    while !queue.is_empty() {
        i += 1;
        for &k in &queue {
            let run = match policy {
                Policy::Pbdrr { .. } => {
                    let its = breakdowns[k].its as i64;
                    let sc = breakdowns[k].sc;
                    if i == 1 {
                        tq[k] = if sc == 0 { (its + 1) / 2 } else { its };
                    } else {
                        tq[k] = if sc == 0 { tq[k] + (tq[k] + 1) / 2 } else { 2 * tq[k] };
                    }
                    if remaining[k] - tq[k] <= 2 {
                        remaining[k]
                    } else {
                        tq[k]
                    }
                }
                Policy::Mrr { .. } => {
                    let its = breakdowns[k].its as i64;
                    if remaining[k] < its {
                        remaining[k]
                    } else {
                        its
                    }
                }
                Policy::RoundRobin { quantum } => {
                    let q = quantum as i64;
                    if remaining[k] < q {
                        remaining[k]
                    } else {
                        q
                    }
                }
            };
            slices.push(Slice {
                process_id: procs[k].id.clone(),
                start: now as u64,
                end: (now + run) as u64,
                round: i,
            });
            now += run;
            remaining[k] -= run;
        }
        queue.retain(|&k| remaining[k] > 0);
    }

    Ok(ExecutionTrace {
        policy,
        breakdowns,
        slices,
    })
}
