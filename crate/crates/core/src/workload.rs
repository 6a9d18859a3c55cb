//! Process and workload definitions.
//!
//! A [`Workload`] is an ordered, non-empty list of processes that all arrive
//! at tick 0. The order is the ready-queue order: it decides which process is
//! each process's predecessor for the shortness component and the order in
//! which every round visits the queue.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Dimensionless integer time unit.
pub type Ticks = u64;

/// One CPU-bound process: its label, total CPU burst and user priority.
///
/// Lower priority numbers mean higher priority.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProcessSpec {
    /// Short label, unique within a workload.
    pub id: String,
    /// CPU burst in ticks, at least 1.
    pub burst: Ticks,
    /// User priority, at least 1.
    pub priority: u32,
}

impl ProcessSpec {
    /// Builds a validated process.
    pub fn new(id: impl Into<String>, burst: Ticks, priority: u32) -> Result<Self> {
        let spec = ProcessSpec {
            id: id.into(),
            burst,
            priority,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the field invariants of a process built by hand or deserialized.
    pub fn validate(&self) -> Result<()> {
        let reason = if self.id.trim().is_empty() {
            "id must not be empty"
        } else if self.burst < 1 {
            "burst must be at least 1"
        } else if self.priority < 1 {
            "priority must be at least 1"
        } else {
            return Ok(());
        };
        Err(Error::InvalidProcess {
            id: self.id.clone(),
            reason,
        })
    }
}

/// Ordered, validated list of processes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Workload {
    processes: Vec<ProcessSpec>,
}

impl Workload {
    /// Validates every process, id uniqueness and non-emptiness.
    pub fn new(processes: Vec<ProcessSpec>) -> Result<Self> {
        if processes.is_empty() {
            return Err(Error::EmptyWorkload);
        }
        let mut seen = BTreeSet::new();
        for p in &processes {
            p.validate()?;
            if !seen.insert(p.id.as_str()) {
                return Err(Error::DuplicateId(p.id.clone()));
            }
        }
        Ok(Workload { processes })
    }

    /// Processes in queue order.
    pub fn processes(&self) -> &[ProcessSpec] {
        &self.processes
    }

    /// Number of processes; never zero.
    pub fn len(&self) -> usize {
        self.processes.len()
    }

    /// Always `false`; present for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.processes.is_empty()
    }

    /// Bursts in queue order.
    pub fn bursts(&self) -> Vec<Ticks> {
        self.processes.iter().map(|p| p.burst).collect()
    }

    /// Priorities in queue order.
    pub fn priorities(&self) -> Vec<u32> {
        self.processes.iter().map(|p| p.priority).collect()
    }

    /// Sum of all bursts, i.e. the span of any complete schedule.
    pub fn total_burst(&self) -> Ticks {
        self.processes.iter().map(|p| p.burst).sum()
    }

    /// Position of the process with the given id.
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.processes.iter().position(|p| p.id == id)
    }

    /// Consumes the workload, returning its processes.
    pub fn into_processes(self) -> Vec<ProcessSpec> {
        self.processes
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Workload {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            processes: Vec<ProcessSpec>,
        }
        let raw = Raw::deserialize(d)?;
        Workload::new(raw.processes).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_zero_burst() {
        let err = ProcessSpec::new("P1", 0, 2).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidProcess {
                id: "P1".into(),
                reason: "burst must be at least 1"
            }
        );
    }

    #[test]
    fn rejects_zero_priority() {
        assert!(matches!(
            ProcessSpec::new("P3", 4, 0),
            Err(Error::InvalidProcess { .. })
        ));
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        let a = ProcessSpec::new("P1", 5, 2).unwrap();
        let b = ProcessSpec::new("P1", 9, 1).unwrap();
        assert_eq!(Workload::new(vec![a, b]), Err(Error::DuplicateId("P1".into())));
        assert_eq!(Workload::new(vec![]), Err(Error::EmptyWorkload));
    }

    #[test]
    fn preserves_order() {
        let w = Workload::new(vec![
            ProcessSpec::new("B", 3, 1).unwrap(),
            ProcessSpec::new("A", 7, 2).unwrap(),
        ])
        .unwrap();
        assert_eq!(w.bursts(), vec![3, 7]);
        assert_eq!(w.index_of("A"), Some(1));
        assert_eq!(w.total_burst(), 10);
    }
}
