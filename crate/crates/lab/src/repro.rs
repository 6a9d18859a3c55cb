//! Reproduction of the published tables for the built-in cases.
//!
//! Every published cell is compared with the computed value and classified:
//! `PASS` when equal, `FLAG` when the cell is a documented discrepancy and the
//! computed value is the documented replacement, `FAIL` otherwise.

use std::fmt::{self, Write as _};

use pbdrr_core::{compute_its, compute_metrics, simulate, Policy, PolicyKind, Slice};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cases::{CaseId, DiscrepancyCell, ReferenceCase};
use crate::error::Result;
use crate::report::join;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Flag,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Flag => "FLAG",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub cell: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproReport {
    pub case: String,
    pub title: String,
    pub cells: Vec<Cell>,
}

impl ReproReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.cells.iter().filter(|c| c.verdict == verdict).count()
    }

    /// `true` when nothing failed; flagged cells do not count as failures.
    pub fn passed(&self) -> bool {
        self.count(Verdict::Fail) == 0
    }

    pub fn cell(&self, name: &str) -> Option<&Cell> {
        self.cells.iter().find(|c| c.cell == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("case {}: {}\n", self.case, self.title);
        for c in &self.cells {
            let _ = write!(
                out,
                "{}\t{}\texpected={}\tcomputed={}",
                c.verdict, c.cell, c.expected, c.computed
            );
            if let Some(note) = &c.note {
                let _ = write!(out, "\t# {note}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "summary: {} pass, {} flag, {} fail",
            self.count(Verdict::Pass),
            self.count(Verdict::Flag),
            self.count(Verdict::Fail)
        );
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "title": self.title,
            "cells": self.cells,
            "pass": self.count(Verdict::Pass),
            "flag": self.count(Verdict::Flag),
            "fail": self.count(Verdict::Fail),
        })
    }
}

struct Builder<'a> {
    case: &'a ReferenceCase,
    cells: Vec<Cell>,
}

impl Builder<'_> {
    fn check(&mut self, cell: String, expected: String, computed: String, discrepancy: Option<DiscrepancyCell>) {
        let known = discrepancy.and_then(|d| self.case.discrepancy(d));
        let (verdict, note) = if expected == computed {
            (Verdict::Pass, None)
        } else {
            match known {
                Some(d) if d.computed == computed => (Verdict::Flag, Some(d.note.to_string())),
                _ => (Verdict::Fail, None),
            }
        };
        self.cells.push(Cell {
            cell,
            expected,
            computed,
            verdict,
            note,
        });
    }
}

fn tenths(t: u64) -> String {
    if t.is_multiple_of(10) {
        (t / 10).to_string()
    } else {
        format!("{}.{}", t / 10, t % 10)
    }
}

pub fn repro(id: CaseId) -> Result<ReproReport> {
    let case = id.case();
    let workload = case.workload();
    let breakdown = compute_its(&workload, case.ots)?;
    let pbdrr = simulate(&workload, Policy::pbdrr(case.ots)?)?;
    let mut b = Builder {
        case,
        cells: Vec::new(),
    };

    if id == CaseId::Illustration {
        let column =
            |f: fn(&crate::cases::PublishedRow) -> String| case.breakdown.iter().map(f).collect::<Vec<_>>().join(",");
        b.check(
            "its.pc".into(),
            column(|r| r.pc.to_string()),
            join(&breakdown.iter().map(|r| r.pc).collect::<Vec<_>>()),
            None,
        );
        b.check(
            "its.sc".into(),
            column(|r| r.sc.to_string()),
            join(&breakdown.iter().map(|r| r.sc).collect::<Vec<_>>()),
            None,
        );
        b.check(
            "its.its".into(),
            column(|r| r.its.to_string()),
            join(&breakdown.iter().map(|r| r.its).collect::<Vec<_>>()),
            None,
        );
        let first: Vec<u64> = pbdrr.slices.iter().filter(|s| s.round == 1).map(Slice::len).collect();
        b.check("PBDRR.round1".into(), join(case.round_one), join(&first), None);
    } else {
        for (i, (published, computed)) in case.breakdown.iter().zip(&breakdown).enumerate() {
            let p = i + 1;
            b.check(
                format!("its.P{p}.pc"),
                published.pc.to_string(),
                computed.pc.to_string(),
                None,
            );
            b.check(
                format!("its.P{p}.sc"),
                published.sc.to_string(),
                computed.sc.to_string(),
                None,
            );
            b.check(
                format!("its.P{p}.csc"),
                published.csc.to_string(),
                computed.csc.to_string(),
                Some(DiscrepancyCell::Csc(i)),
            );
            b.check(
                format!("its.P{p}.its"),
                published.its.to_string(),
                computed.its.to_string(),
                None,
            );
        }
        for (i, (published, spec)) in case.pbdrr_rounds.iter().zip(workload.processes()).enumerate() {
            b.check(
                format!("PBDRR.rounds.P{}", i + 1),
                join(published),
                join(&pbdrr.quanta_of(&spec.id)),
                Some(DiscrepancyCell::Rounds(i)),
            );
        }
        for published in case.metrics {
            let policy = match published.policy {
                PolicyKind::Pbdrr => Policy::pbdrr(case.ots)?,
                PolicyKind::Mrr => Policy::mrr(case.ots)?,
                PolicyKind::Rr => continue,
            };
            let trace = simulate(&workload, policy)?;
            let m = compute_metrics(&trace, &workload)?;
            let kind = published.policy;
            b.check(
                format!("{kind}.avg_tat"),
                tenths(published.avg_tat_tenths),
                m.avg_turnaround.to_string(),
                None,
            );
            b.check(
                format!("{kind}.avg_wt"),
                tenths(published.avg_wt_tenths),
                m.avg_waiting.to_string(),
                None,
            );
            b.check(
                format!("{kind}.cs"),
                published.context_switches.to_string(),
                m.context_switches.to_string(),
                Some(DiscrepancyCell::ContextSwitches(kind)),
            );
        }
    }

    Ok(ReproReport {
        case: id.to_string(),
        title: case.title.to_string(),
        cells: b.cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case1_flags_only_the_switch_count() {
        let r = repro(CaseId::Case1).unwrap();
        assert!(r.passed());
        let cs = r.cell("PBDRR.cs").unwrap();
        assert_eq!(
            (cs.expected.as_str(), cs.computed.as_str(), cs.verdict),
            ("17", "16", Verdict::Flag)
        );
        assert_eq!(r.cell("PBDRR.avg_tat").unwrap().verdict, Verdict::Pass);
        assert_eq!(r.cell("PBDRR.avg_wt").unwrap().computed, "31");
        assert_eq!(r.count(Verdict::Flag), 1);
    }

    #[test]
    fn case2_flags_two_cells() {
        let r = repro(CaseId::Case2).unwrap();
        assert!(r.passed());
        assert_eq!(r.cell("its.P5.csc").unwrap().verdict, Verdict::Flag);
        assert_eq!(r.cell("PBDRR.rounds.P1").unwrap().computed, "2,3,5,8,13");
        assert_eq!(r.count(Verdict::Flag), 2);
    }

    #[test]
    fn case3_and_illustration_pass_everything() {
        for id in [CaseId::Case3, CaseId::Illustration] {
            let r = repro(id).unwrap();
            assert_eq!(r.count(Verdict::Pass), r.cells.len(), "{}", r.to_text());
        }
        let r = repro(CaseId::Illustration).unwrap();
        assert_eq!(r.cell("its.its").unwrap().computed, "5,5,6,4,5");
        assert_eq!(r.cell("PBDRR.round1").unwrap().computed, "3,5,6,2,5");
    }

    #[test]
    fn a_wrong_replacement_still_fails() {
        let case = CaseId::Case1.case();
        let mut b = Builder {
            case,
            cells: Vec::new(),
        };
        b.check(
            "PBDRR.cs".into(),
            "17".into(),
            "15".into(),
            Some(DiscrepancyCell::ContextSwitches(PolicyKind::Pbdrr)),
        );
        assert_eq!(b.cells[0].verdict, Verdict::Fail);
    }
}
