//! Quantum rules for the three supported policies.
//!
//! All functions here are pure. The PBDRR rules return the *pre-clamp*
//! quantum; [`clamp_quantum`] then widens it to the whole remainder when two
//! ticks or fewer would be left behind.

use core::fmt;

use crate::error::{Error, Result};
use crate::workload::Ticks;

/// Original time slice used throughout the reference experiments.
pub const DEFAULT_OTS: Ticks = 4;

/// Leftover threshold under which a PBDRR process runs to completion.
pub const RUN_TO_COMPLETION_THRESHOLD: Ticks = 2;

/// Which algorithm a [`Policy`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum PolicyKind {
    /// Dynamic quantum growing every round.
    Pbdrr,
    /// Static ITS as quantum.
    Mrr,
    /// Fixed quantum.
    Rr,
}

impl PolicyKind {
    /// Lowercase short name (`pbdrr`, `mrr`, `rr`).
    pub fn as_str(self) -> &'static str {
        match self {
            PolicyKind::Pbdrr => "pbdrr",
            PolicyKind::Mrr => "mrr",
            PolicyKind::Rr => "rr",
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolicyKind::Pbdrr => "PBDRR",
            PolicyKind::Mrr => "MRR",
            PolicyKind::Rr => "RR",
        })
    }
}

/// A scheduling policy together with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "lowercase"))]
pub enum Policy {
    /// Dynamic ITS round robin with original time slice `ots`.
    Pbdrr {
        /// Original time slice.
        ots: Ticks,
    },
    /// Static ITS round robin with original time slice `ots`.
    Mrr {
        /// Original time slice.
        ots: Ticks,
    },
    /// Classic round robin.
    #[cfg_attr(feature = "serde", serde(rename = "rr"))]
    RoundRobin {
        /// Fixed quantum.
        quantum: Ticks,
    },
}

impl Policy {
    /// PBDRR with the given original time slice.
    pub fn pbdrr(ots: Ticks) -> Result<Self> {
        check_positive(ots, "ots must be at least 1").map(|ots| Policy::Pbdrr { ots })
    }

    /// MRR with the given original time slice.
    pub fn mrr(ots: Ticks) -> Result<Self> {
        check_positive(ots, "ots must be at least 1").map(|ots| Policy::Mrr { ots })
    }

    /// Classic round robin with a fixed quantum.
    pub fn round_robin(quantum: Ticks) -> Result<Self> {
        check_positive(quantum, "quantum must be at least 1").map(|quantum| Policy::RoundRobin { quantum })
    }

    /// The algorithm, without parameters.
    pub fn kind(self) -> PolicyKind {
        match self {
            Policy::Pbdrr { .. } => PolicyKind::Pbdrr,
            Policy::Mrr { .. } => PolicyKind::Mrr,
            Policy::RoundRobin { .. } => PolicyKind::Rr,
        }
    }

    /// Original time slice, for the ITS-based policies.
    pub fn ots(self) -> Option<Ticks> {
        match self {
            Policy::Pbdrr { ots } | Policy::Mrr { ots } => Some(ots),
            Policy::RoundRobin { .. } => None,
        }
    }

    /// Checks the parameter of a policy built without the constructors.
    pub fn validate(self) -> Result<()> {
        match self {
            Policy::Pbdrr { ots } | Policy::Mrr { ots } => check_positive(ots, "ots must be at least 1").map(drop),
            Policy::RoundRobin { quantum } => check_positive(quantum, "quantum must be at least 1").map(drop),
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Pbdrr { ots } => write!(f, "PBDRR(ots={ots})"),
            Policy::Mrr { ots } => write!(f, "MRR(ots={ots})"),
            Policy::RoundRobin { quantum } => write!(f, "RR(q={quantum})"),
        }
    }
}

fn check_positive(value: Ticks, what: &'static str) -> Result<Ticks> {
    if value >= 1 {
        Ok(value)
    } else {
        Err(Error::InvalidArgument(what))
    }
}

/// Round-1 PBDRR quantum: half the ITS (rounded up) for `sc = 0`, the full
/// ITS otherwise.
pub fn pbdrr_first_quantum(its: Ticks, sc: u8) -> Ticks {
    if sc == 0 {
        its.div_ceil(2)
    } else {
        its
    }
}

/// Growth between rounds: `prev + ceil(prev / 2)` for `sc = 0`, `2 * prev`
/// otherwise.
pub fn pbdrr_next_quantum(prev: Ticks, sc: u8) -> Ticks {
    if sc == 0 {
        prev + prev.div_ceil(2)
    } else {
        2 * prev
    }
}

/// Grants the whole remainder when `remaining - raw <= 2`.
pub fn clamp_quantum(raw: Ticks, remaining: Ticks) -> Ticks {
    if remaining.saturating_sub(raw) <= RUN_TO_COMPLETION_THRESHOLD {
        remaining
    } else {
        raw
    }
}

/// Static round-robin slice, truncated to what is left.
pub fn static_quantum(per_slot: Ticks, remaining: Ticks) -> Ticks {
    per_slot.min(remaining)
}
