//! The reference workloads and every value published for them.
//!
//! Each case stores the workload, the published ITS breakdown table, the
//! published PBDRR per-round allocations and the published comparison rows.
//! Published cells that are known to be wrong are listed as
//! [`KnownDiscrepancy`] entries together with the value this crate computes
//! instead; they are reported as FLAG rather than failures.

use std::fmt;
use std::str::FromStr;

use pbdrr_core::{PolicyKind, ProcessSpec, Ticks, Workload};

use crate::error::LabError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    /// Increasing bursts.
    Case1,
    /// Decreasing bursts.
    Case2,
    /// Random bursts.
    Case3,
    /// Worked example (ITS and round-1 quanta only).
    Illustration,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [CaseId::Case1, CaseId::Case2, CaseId::Case3, CaseId::Illustration];

    pub fn case(self) -> &'static ReferenceCase {
        match self {
            CaseId::Case1 => &CASE_1,
            CaseId::Case2 => &CASE_2,
            CaseId::Case3 => &CASE_3,
            CaseId::Illustration => &ILLUSTRATION,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseId::Case1 => "1",
            CaseId::Case2 => "2",
            CaseId::Case3 => "3",
            CaseId::Illustration => "illustration",
        })
    }
}

impl FromStr for CaseId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "case1" => Ok(CaseId::Case1),
            "2" | "case2" => Ok(CaseId::Case2),
            "3" | "case3" => Ok(CaseId::Case3),
            "illustration" | "i" => Ok(CaseId::Illustration),
            _ => Err(LabError::argument(format!(
                "unknown case `{s}` (expected 1, 2, 3 or illustration)"
            ))),
        }
    }
}

/// One published breakdown row: `pc, sc, csc, its` (OTS is always 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedRow {
    pub pc: u8,
    pub sc: u8,
    pub csc: i64,
    pub its: Ticks,
}

const fn row(pc: u8, sc: u8, csc: i64, its: Ticks) -> PublishedRow {
    PublishedRow { pc, sc, csc, its }
}

/// A published comparison row; averages in tenths of a tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedMetrics {
    pub policy: PolicyKind,
    pub avg_tat_tenths: u64,
    pub avg_wt_tenths: u64,
    pub context_switches: usize,
}

/// Where a known-wrong published cell lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscrepancyCell {
    /// CSC column of the breakdown table, 0-based process index.
    Csc(usize),
    /// PBDRR round allocations of one process.
    Rounds(usize),
    /// Context switch count of a comparison row.
    ContextSwitches(PolicyKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownDiscrepancy {
    pub cell: DiscrepancyCell,
    /// What this crate computes (and is required to keep computing).
    pub computed: &'static str,
    pub note: &'static str,
}

#[derive(Debug)]
pub struct ReferenceCase {
    pub id: CaseId,
    pub title: &'static str,
    pub bursts: &'static [Ticks],
    pub priorities: &'static [u32],
    pub ots: Ticks,
    pub breakdown: &'static [PublishedRow],
    pub pbdrr_rounds: &'static [&'static [Ticks]],
    pub round_one: &'static [Ticks],
    pub metrics: &'static [PublishedMetrics],
    pub discrepancies: &'static [KnownDiscrepancy],
}

impl ReferenceCase {
    pub fn workload(&self) -> Workload {
        Workload::new(
            self.bursts
                .iter()
                .zip(self.priorities)
                .enumerate()
                .map(|(i, (&b, &p))| ProcessSpec::new(format!("P{}", i + 1), b, p).expect("built-in case is valid"))
                .collect(),
        )
        .expect("built-in case is valid")
    }

    pub fn discrepancy(&self, cell: DiscrepancyCell) -> Option<&'static KnownDiscrepancy> {
        self.discrepancies.iter().find(|d| d.cell == cell)
    }
}

pub static CASE_1: ReferenceCase = ReferenceCase {
    id: CaseId::Case1,
    title: "Case 1 (increasing bursts)",
    bursts: &[5, 12, 16, 21, 23],
    priorities: &[2, 3, 1, 4, 5],
    ots: 4,
    breakdown: &[
        row(0, 0, 1, 5),
        row(0, 0, 0, 4),
        row(1, 0, 0, 5),
        row(0, 0, 0, 4),
        row(0, 0, 0, 4),
    ],
    pbdrr_rounds: &[&[5], &[2, 3, 7], &[3, 5, 8], &[2, 3, 5, 8, 3], &[2, 3, 5, 8, 5]],
    round_one: &[5, 2, 3, 2, 2],
    metrics: &[
        PublishedMetrics {
            policy: PolicyKind::Mrr,
            avg_tat_tenths: 512,
            avg_wt_tenths: 358,
            context_switches: 19,
        },
        PublishedMetrics {
            policy: PolicyKind::Pbdrr,
            avg_tat_tenths: 464,
            avg_wt_tenths: 310,
            context_switches: 17,
        },
    ],
    discrepancies: &[KnownDiscrepancy {
        cell: DiscrepancyCell::ContextSwitches(PolicyKind::Pbdrr),
        computed: "16",
        note: "the published round table admits only 17 slices, hence at most 16 switches; printed 17 is an off-by-one",
    }],
};

pub static CASE_2: ReferenceCase = ReferenceCase {
    id: CaseId::Case2,
    title: "Case 2 (decreasing bursts)",
    bursts: &[31, 23, 16, 9, 1],
    priorities: &[2, 1, 4, 5, 3],
    ots: 4,
    breakdown: &[
        row(0, 0, 0, 4),
        row(1, 1, 0, 6),
        row(0, 1, 0, 5),
        row(0, 1, 0, 5),
        row(0, 1, 0, 1),
    ],
    pbdrr_rounds: &[&[2, 3, 5, 21], &[6, 12, 5], &[5, 11], &[5, 4], &[1]],
    round_one: &[2, 6, 5, 5, 1],
    metrics: &[
        PublishedMetrics {
            policy: PolicyKind::Mrr,
            avg_tat_tenths: 540,
            avg_wt_tenths: 380,
            context_switches: 18,
        },
        PublishedMetrics {
            policy: PolicyKind::Pbdrr,
            avg_tat_tenths: 504,
            avg_wt_tenths: 344,
            context_switches: 12,
        },
    ],
    discrepancies: &[
        KnownDiscrepancy {
            cell: DiscrepancyCell::Csc(4),
            computed: "-4",
            note: "printed CSC 0 contradicts the printed ITS 1; ITS = OTS+PC+SC+CSC forces -4",
        },
        KnownDiscrepancy {
            cell: DiscrepancyCell::Rounds(0),
            computed: "2,3,5,8,13",
            note: "printed 21 merges the last two rounds; the published switch count 12 needs them separate",
        },
    ],
};

pub static CASE_3: ReferenceCase = ReferenceCase {
    id: CaseId::Case3,
    title: "Case 3 (random bursts)",
    bursts: &[11, 53, 8, 41, 20],
    priorities: &[3, 1, 2, 4, 5],
    ots: 4,
    breakdown: &[
        row(0, 0, 0, 4),
        row(1, 0, 0, 5),
        row(0, 1, 3, 8),
        row(0, 0, 0, 4),
        row(0, 1, 0, 5),
    ],
    pbdrr_rounds: &[
        &[2, 3, 6],
        &[3, 5, 8, 12, 18, 7],
        &[8],
        &[2, 3, 5, 8, 12, 11],
        &[5, 10, 5],
    ],
    round_one: &[2, 3, 8, 2, 5],
    metrics: &[
        PublishedMetrics {
            policy: PolicyKind::Mrr,
            avg_tat_tenths: 808,
            avg_wt_tenths: 542,
            context_switches: 29,
        },
        PublishedMetrics {
            policy: PolicyKind::Pbdrr,
            avg_tat_tenths: 760,
            avg_wt_tenths: 494,
            context_switches: 18,
        },
    ],
    discrepancies: &[],
};

/// The worked example publishes PC, SC, ITS and round-1 quanta only; CSC is
/// not printed, so the rows carry the CSC implied by the printed ITS.
pub static ILLUSTRATION: ReferenceCase = ReferenceCase {
    id: CaseId::Illustration,
    title: "Illustration (bursts 50 27 12 55 5)",
    bursts: &[50, 27, 12, 55, 5],
    priorities: &[1, 2, 1, 3, 4],
    ots: 4,
    breakdown: &[
        row(1, 0, 0, 5),
        row(0, 1, 0, 5),
        row(1, 1, 0, 6),
        row(0, 0, 0, 4),
        row(0, 1, 0, 5),
    ],
    pbdrr_rounds: &[],
    round_one: &[3, 5, 6, 2, 5],
    metrics: &[],
    discrepancies: &[],
};

/// The built-in case whose bursts and priorities equal `workload`'s, if any.
pub fn identify(workload: &Workload) -> Option<&'static ReferenceCase> {
    CaseId::ALL
        .iter()
        .map(|id| id.case())
        .find(|c| workload.bursts() == c.bursts && workload.priorities() == c.priorities)
}
