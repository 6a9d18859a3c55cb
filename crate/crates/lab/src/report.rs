//! Gantt charts, tables and machine-readable renderings of traces, ITS
//! breakdowns, metrics and policy comparisons.
//!
//! Every renderer is a pure function of its input, so outputs are
//! byte-identical across runs.

use std::fmt::Write as _;

use pbdrr_core::{
    compute_metrics, simulate, ExecutionTrace, Mean, Policy, PolicyKind, ScheduleMetrics, TimeSliceBreakdown, Workload,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cases::{self, DiscrepancyCell};
use crate::error::Result;
use crate::workload_io::csv_field;

/// Output selector shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
    Svg,
}

/// Interval-notation Gantt chart on a single line:
/// `P1[0–5] P2[5–7] P3[7–10] ...`, one segment per slice in trace order.
pub fn render_gantt_text(trace: &ExecutionTrace) -> String {
    let mut out = String::new();
    for (i, s) in trace.slices.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{}[{}\u{2013}{}]", s.process_id, s.start, s.end);
    }
    out.push('\n');
    out
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];
const TICK_PX: u64 = 8;
const LANE_PX: u64 = 24;
const LEFT_PX: u64 = 60;
const TOP_PX: u64 = 30;

/// To-scale Gantt chart: one lane per process (first-appearance order), one
/// `<rect>` per slice, x proportional to ticks.
pub fn render_gantt_svg(trace: &ExecutionTrace) -> String {
    let mut lanes: Vec<&str> = Vec::new();
    for s in &trace.slices {
        if !lanes.contains(&s.process_id.as_str()) {
            lanes.push(&s.process_id);
        }
    }
    let span = trace.makespan();
    let width = LEFT_PX + span * TICK_PX + 20;
    let height = TOP_PX + lanes.len() as u64 * LANE_PX + 30;
    let axis_y = TOP_PX + lanes.len() as u64 * LANE_PX;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">"#
    );
    let _ = writeln!(
        out,
        r#"<title>{} schedule, {} slices, {} ticks</title>"#,
        xml_escape(&trace.policy.to_string()),
        trace.slices.len(),
        span
    );
    for (lane, id) in lanes.iter().enumerate() {
        let y = TOP_PX + lane as u64 * LANE_PX;
        let _ = writeln!(out, r#"<text x="4" y="{}">{}</text>"#, y + 16, xml_escape(id));
    }
    for s in &trace.slices {
        let lane = lanes.iter().position(|id| *id == s.process_id).unwrap_or(0);
        let y = TOP_PX + lane as u64 * LANE_PX + 2;
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{y}" width="{}" height="{}" fill="{}" stroke="black" stroke-width="0.5"><title>{} [{}, {}) round {}</title></rect>"#,
            LEFT_PX + s.start * TICK_PX,
            s.len() * TICK_PX,
            LANE_PX - 4,
            PALETTE[lane % PALETTE.len()],
            xml_escape(&s.process_id),
            s.start,
            s.end,
            s.round
        );
    }
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT_PX}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#,
        LEFT_PX + span * TICK_PX
    );
    let mut marks: Vec<u64> = trace.slices.iter().map(|s| s.start).collect();
    marks.push(span);
    for m in marks {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="8">{m}</text>"#,
            LEFT_PX + m * TICK_PX,
            axis_y + 12
        );
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn trace_json(trace: &ExecutionTrace) -> Value {
    serde_json::to_value(&trace.slices).expect("slices serialize")
}

pub fn trace_csv(trace: &ExecutionTrace) -> String {
    let mut out = String::from("pid,start,end,round\n");
    for s in &trace.slices {
        let _ = writeln!(out, "{},{},{},{}", csv_field(&s.process_id), s.start, s.end, s.round);
    }
    out
}

/// Breakdown table in the classic column order.
pub fn breakdown_text(workload: &Workload, rows: &[TimeSliceBreakdown]) -> String {
    let mut out = format!(
        "{:<8} {:>6} {:>8} {:>4} {:>3} {:>3} {:>4} {:>4}\n",
        "id", "burst", "priority", "OTS", "PC", "SC", "CSC", "ITS"
    );
    for (p, b) in workload.processes().iter().zip(rows) {
        let _ = writeln!(
            out,
            "{:<8} {:>6} {:>8} {:>4} {:>3} {:>3} {:>4} {:>4}",
            p.id, p.burst, p.priority, b.ots, b.pc, b.sc, b.csc, b.its
        );
    }
    out
}

pub fn breakdown_csv(workload: &Workload, rows: &[TimeSliceBreakdown]) -> String {
    let mut out = String::from("id,burst,priority,ots,pc,sc,csc,its\n");
    for (p, b) in workload.processes().iter().zip(rows) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            csv_field(&p.id),
            p.burst,
            p.priority,
            b.ots,
            b.pc,
            b.sc,
            b.csc,
            b.its
        );
    }
    out
}

pub fn breakdown_json(workload: &Workload, rows: &[TimeSliceBreakdown]) -> Value {
    Value::Array(
        workload
            .processes()
            .iter()
            .zip(rows)
            .map(|(p, b)| {
                json!({
                    "id": p.id, "burst": p.burst, "priority": p.priority,
                    "ots": b.ots, "pc": b.pc, "sc": b.sc, "csc": b.csc, "its": b.its,
                })
            })
            .collect(),
    )
}

fn mean_json(m: Mean) -> Value {
    json!(m.rounded())
}

fn exact(m: Mean) -> String {
    format!("{}/{}", m.total(), m.count())
}

pub fn metrics_json(policy: Policy, m: &ScheduleMetrics) -> Value {
    json!({
        "algorithm": policy.kind().to_string(),
        "policy": policy,
        "avg_tat": mean_json(m.avg_turnaround),
        "avg_wt": mean_json(m.avg_waiting),
        "cs": m.context_switches,
        "avg_response": mean_json(m.avg_response),
        "avg_tat_exact": exact(m.avg_turnaround),
        "avg_wt_exact": exact(m.avg_waiting),
        "per_process": m.per_process,
    })
}

pub const METRICS_CSV_HEADER: &str = "algorithm,avg_tat,avg_wt,cs\n";

pub fn metrics_csv_row(policy: Policy, m: &ScheduleMetrics) -> String {
    format!(
        "{},{},{},{}\n",
        policy.kind(),
        m.avg_turnaround,
        m.avg_waiting,
        m.context_switches
    )
}

pub fn metrics_text(m: &ScheduleMetrics) -> String {
    let mut out = format!(
        "{:<8} {:>6} {:>10} {:>10} {:>7} {:>8}\n",
        "id", "burst", "completion", "turnaround", "waiting", "response"
    );
    for r in &m.per_process {
        let _ = writeln!(
            out,
            "{:<8} {:>6} {:>10} {:>10} {:>7} {:>8}",
            r.id, r.burst, r.completion, r.turnaround, r.waiting, r.response
        );
    }
    let _ = writeln!(out, "average turnaround: {}", m.avg_turnaround);
    let _ = writeln!(out, "average waiting:    {}", m.avg_waiting);
    let _ = writeln!(out, "average response:   {}", m.avg_response);
    let _ = writeln!(out, "context switches:   {}", m.context_switches);
    out
}

/// A published value that is known to differ from what is computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Annotation {
    pub case: String,
    pub cell: String,
    pub published: String,
    pub computed: String,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct PolicyRun {
    pub policy: Policy,
    pub trace: ExecutionTrace,
    pub metrics: ScheduleMetrics,
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub workload: Workload,
    /// Name of the built-in case the workload matches, if any.
    pub case: Option<String>,
    pub runs: Vec<PolicyRun>,
    pub annotations: Vec<Annotation>,
}

/// Runs every policy against the same workload, each on its own thread.
pub fn build_comparison(workload: &Workload, policies: &[Policy]) -> Result<ComparisonReport> {
    if policies.is_empty() {
        return Err(crate::error::LabError::argument("at least one policy is required"));
    }
    let runs = std::thread::scope(|scope| {
        let handles: Vec<_> = policies
            .iter()
            .map(|&policy| {
                scope.spawn(move || -> Result<PolicyRun> {
                    let trace = simulate(workload, policy)?;
                    let metrics = compute_metrics(&trace, workload)?;
                    Ok(PolicyRun { policy, trace, metrics })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect::<Result<Vec<_>>>()
    })?;

    let known = cases::identify(workload);
    let mut annotations = Vec::new();
    if let Some(case) = known {
        for run in &runs {
            if run.policy.ots() != Some(case.ots) {
                continue;
            }
            let kind = run.policy.kind();
            for d in case.discrepancies {
                let (cell, published) = match d.cell {
                    DiscrepancyCell::ContextSwitches(k) if k == kind => {
                        let p = case.metrics.iter().find(|m| m.policy == k).map(|m| m.context_switches);
                        (format!("{kind}.cs"), p.map(|v| v.to_string()).unwrap_or_default())
                    }
                    DiscrepancyCell::Rounds(i) if kind == PolicyKind::Pbdrr => {
                        (format!("PBDRR.rounds.P{}", i + 1), join(case.pbdrr_rounds[i]))
                    }
                    DiscrepancyCell::Csc(i) if kind == PolicyKind::Mrr || kind == PolicyKind::Pbdrr => {
                        (format!("its.P{}.csc", i + 1), case.breakdown[i].csc.to_string())
                    }
                    _ => continue,
                };
                let a = Annotation {
                    case: case.id.to_string(),
                    cell,
                    published,
                    computed: d.computed.to_string(),
                    note: d.note.to_string(),
                };
                if !annotations.contains(&a) {
                    annotations.push(a);
                }
            }
        }
    }

    Ok(ComparisonReport {
        workload: workload.clone(),
        case: known.map(|c| c.id.to_string()),
        runs,
        annotations,
    })
}

pub(crate) fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl ComparisonReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(case) = &self.case {
            let _ = writeln!(out, "workload: built-in case {case}");
        }
        let _ = writeln!(
            out,
            "workload: {} processes, total burst {}",
            self.workload.len(),
            self.workload.total_burst()
        );
        let _ = writeln!(
            out,
            "{:<16} {:>10} {:>10} {:>5}",
            "algorithm", "avg TAT", "avg WT", "CS"
        );
        for r in &self.runs {
            let _ = writeln!(
                out,
                "{:<16} {:>10} {:>10} {:>5}",
                r.policy.to_string(),
                r.metrics.avg_turnaround,
                r.metrics.avg_waiting,
                r.metrics.context_switches
            );
        }
        for a in &self.annotations {
            let _ = writeln!(
                out,
                "note: {} published {} computed {}: {}",
                a.cell, a.published, a.computed, a.note
            );
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "workload": self.workload,
            "rows": self.runs.iter().map(|r| metrics_json(r.policy, &r.metrics)).collect::<Vec<_>>(),
            "annotations": self.annotations,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(METRICS_CSV_HEADER);
        for r in &self.runs {
            out.push_str(&metrics_csv_row(r.policy, &r.metrics));
        }
        out
    }
}
