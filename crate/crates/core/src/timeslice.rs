//! Intelligent time slice (ITS) computation.
//!
//! For every process the ITS is the sum of four components:
//!
//! - `ots`: the original time slice, the quantum a process gets when it
//!   deserves no special consideration;
//! - `pc`: priority component, 1 for the process(es) holding the smallest
//!   priority number, 0 otherwise;
//! - `sc`: shortness component, 1 when the burst is smaller than the
//!   predecessor's burst in queue order, 0 otherwise (and 0 for the head);
//! - `csc`: context switch component. With `r = burst - (ots + pc + sc)`,
//!   `csc = r` when `r < ots`, else 0. `r` may be zero or negative, in which
//!   case the ITS collapses to exactly the burst.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::workload::{Ticks, Workload};

/// Per-process ITS components, in the column order of the classic tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TimeSliceBreakdown {
    /// Original time slice.
    pub ots: Ticks,
    /// Priority component, 0 or 1.
    pub pc: u8,
    /// Shortness component, 0 or 1.
    pub sc: u8,
    /// Context switch component, possibly negative.
    pub csc: i64,
    /// Intelligent time slice, `ots + pc + sc + csc`, always at least 1.
    pub its: Ticks,
}

/// `1` for every entry equal to the minimum priority number, `0` otherwise.
pub fn priority_components(priorities: &[u32]) -> Result<Vec<u8>> {
    let highest = priorities
        .iter()
        .copied()
        .min()
        .ok_or(Error::InvalidArgument("priority list is empty"))?;
    Ok(priorities.iter().map(|&p| u8::from(p == highest)).collect())
}

/// `1` where a burst is strictly smaller than the one before it.
pub fn shortness_components(bursts: &[Ticks]) -> Result<Vec<u8>> {
    if bursts.is_empty() {
        return Err(Error::InvalidArgument("burst list is empty"));
    }
    let mut out = Vec::with_capacity(bursts.len());
    out.push(0);
    out.extend(bursts.windows(2).map(|w| u8::from(w[1] < w[0])));
    Ok(out)
}

/// Context switch component for a single process.
pub fn context_switch_component(burst: Ticks, ots: Ticks, pc: u8, sc: u8) -> i64 {
    let ots = ots as i64;
    let rest = burst as i64 - (ots + i64::from(pc) + i64::from(sc));
    if rest < ots {
        rest
    } else {
        0
    }
}

/// Breakdown for every process of `workload`, in queue order.
pub fn compute_its(workload: &Workload, ots: Ticks) -> Result<Vec<TimeSliceBreakdown>> {
    if ots < 1 {
        return Err(Error::InvalidArgument("ots must be at least 1"));
    }
    let pcs = priority_components(&workload.priorities())?;
    let scs = shortness_components(&workload.bursts())?;
    Ok(workload
        .processes()
        .iter()
        .zip(pcs.into_iter().zip(scs))
        .map(|(p, (pc, sc))| {
            let csc = context_switch_component(p.burst, ots, pc, sc);
            let its = ots as i64 + i64::from(pc) + i64::from(sc) + csc;
            debug_assert!(its >= 1);
            TimeSliceBreakdown {
                ots,
                pc,
                sc,
                csc,
                its: its as Ticks,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workload::ProcessSpec;
    use alloc::format;
    use alloc::vec;
    use proptest::prelude::*;

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

    fn its_column(bursts: &[Ticks], prios: &[u32]) -> Vec<Ticks> {
        compute_its(&workload(bursts, prios), 4)
            .unwrap()
            .iter()
            .map(|b| b.its)
            .collect()
    }

    #[test]
    fn priority_component_examples() {
        assert_eq!(priority_components(&[2, 3, 1, 4, 5]).unwrap(), vec![0, 0, 1, 0, 0]);
        assert_eq!(priority_components(&[1, 2, 1, 3, 4]).unwrap(), vec![1, 0, 1, 0, 0]);
        assert_eq!(priority_components(&[7]).unwrap(), vec![1]);
        assert!(priority_components(&[]).is_err());
    }

    #[test]
    fn shortness_component_examples() {
        assert_eq!(shortness_components(&[50, 27, 12, 55, 5]).unwrap(), vec![0, 1, 1, 0, 1]);
        assert_eq!(shortness_components(&[5, 12, 16, 21, 23]).unwrap(), vec![0, 0, 0, 0, 0]);
        assert_eq!(shortness_components(&[31, 23, 16, 9, 1]).unwrap(), vec![0, 1, 1, 1, 1]);
        assert!(shortness_components(&[]).is_err());
    }

    #[test]
    fn context_switch_component_examples() {
        assert_eq!(context_switch_component(5, 4, 0, 0), 1);
        assert_eq!(context_switch_component(8, 4, 0, 1), 3);
        assert_eq!(context_switch_component(16, 4, 1, 0), 0);
        // burst 1 must yield ITS 1, which forces a negative component
        assert_eq!(context_switch_component(1, 4, 0, 1), -4);
    }

    #[test]
    fn its_columns() {
        assert_eq!(its_column(&[5, 12, 16, 21, 23], &[2, 3, 1, 4, 5]), vec![5, 4, 5, 4, 4]);
        assert_eq!(its_column(&[31, 23, 16, 9, 1], &[2, 1, 4, 5, 3]), vec![4, 6, 5, 5, 1]);
        assert_eq!(its_column(&[11, 53, 8, 41, 20], &[3, 1, 2, 4, 5]), vec![4, 5, 8, 4, 5]);
        assert_eq!(its_column(&[50, 27, 12, 55, 5], &[1, 2, 1, 3, 4]), vec![5, 5, 6, 4, 5]);
    }

    #[test]
    fn rejects_zero_ots() {
        assert!(compute_its(&workload(&[3], &[1]), 0).is_err());
    }

    proptest! {
        #[test]
        fn closed_form_matches_components(
            rows in prop::collection::vec((1u64..=200, 1u32..=9), 1..12),
            ots in 1u64..=20,
        ) {
            let (bursts, prios): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
            let w = workload(&bursts, &prios);
            let table = compute_its(&w, ots).unwrap();
            let min = *prios.iter().min().unwrap();
            prop_assert!(table.iter().any(|b| b.pc == 1));
            for (i, b) in table.iter().enumerate() {
                let base = ots + u64::from(b.pc) + u64::from(b.sc);
                let expected = if (bursts[i] as i64) - (base as i64) < ots as i64 { bursts[i] } else { base };
                prop_assert_eq!(b.its, expected);
                prop_assert_eq!(b.its as i64, ots as i64 + i64::from(b.pc) + i64::from(b.sc) + b.csc);
                prop_assert!(b.its >= 1);
                prop_assert_eq!(b.pc == 1, prios[i] == min);
                if b.csc != 0 {
                    prop_assert_eq!(b.its, bursts[i]);
                }
            }
        }
    }
}
