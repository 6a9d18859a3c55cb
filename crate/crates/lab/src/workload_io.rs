//! Workload files and the seeded workload generator.
//!
//! CSV: one process per row, columns `id,burst,priority`, optional header,
//! LF or CRLF line endings. JSON: `{"processes":[{"id":..,"burst":..,"priority":..}]}`.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;

use pbdrr_core::{ProcessSpec, Ticks, Workload};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{LabError, Result};

/// On-disk workload encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum WorkloadFormat {
    Csv,
    Json,
}

impl WorkloadFormat {
    /// `.json` files are JSON, anything else is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => WorkloadFormat::Json,
            _ => WorkloadFormat::Csv,
        }
    }
}

pub fn parse_workload(text: &str, format: WorkloadFormat) -> Result<Workload> {
    if text.trim().is_empty() {
        return Err(LabError::Parse {
            line: 1,
            message: "input is empty".into(),
        });
    }
    match format {
        WorkloadFormat::Csv => parse_csv(text),
        WorkloadFormat::Json => parse_json(text),
    }
}

fn parse_csv(text: &str) -> Result<Workload> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    // the reader's own line counter ignores blank lines; a record's byte
    // offset may also point at blank lines preceding it
    let line_at = |pos: Option<&csv::Position>| {
        let bytes = text.as_bytes();
        let mut at = pos.map_or(0, |p| p.byte() as usize);
        while at < bytes.len() && matches!(bytes[at], b'\n' | b'\r') {
            at += 1;
        }
        bytes[..at].iter().filter(|&&b| b == b'\n').count() as u64 + 1
    };
    let mut processes = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| LabError::Parse {
            line: line_at(e.position()),
            message: e.to_string(),
        })?;
        let line = line_at(record.position());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if row == 0 && is_header(&record) {
            continue;
        }
        if record.len() != 3 {
            return Err(LabError::Parse {
                line,
                message: format!("expected 3 fields (id,burst,priority), found {}", record.len()),
            });
        }
        let burst = field::<Ticks>(&record[1], "burst", line)?;
        let priority = field::<u32>(&record[2], "priority", line)?;
        processes.push(ProcessSpec {
            id: record[0].to_string(),
            burst,
            priority,
        });
    }
    Ok(Workload::new(processes)?)
}

fn is_header(record: &csv::StringRecord) -> bool {
    let cols: Vec<String> = record.iter().map(str::to_ascii_lowercase).collect();
    cols == ["id", "burst", "priority"]
}

fn field<T: FromStr>(raw: &str, name: &str, line: u64) -> Result<T> {
    raw.parse().map_err(|_| LabError::Parse {
        line,
        message: format!("{name} `{raw}` is not a non-negative integer"),
    })
}

fn parse_json(text: &str) -> Result<Workload> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Document {
        processes: Vec<ProcessSpec>,
    }
    let doc: Document = serde_json::from_str(text).map_err(|e| LabError::Parse {
        line: e.line() as u64,
        message: e.to_string(),
    })?;
    Ok(Workload::new(doc.processes)?)
}

pub fn serialize_workload(workload: &Workload, format: WorkloadFormat) -> String {
    match format {
        WorkloadFormat::Csv => {
            let mut out = String::from("id,burst,priority\n");
            for p in workload.processes() {
                let _ = writeln!(out, "{},{},{}", csv_field(&p.id), p.burst, p.priority);
            }
            out
        }
        WorkloadFormat::Json => {
            let mut out = serde_json::to_string_pretty(workload).expect("workload serializes");
            out.push('\n');
            out
        }
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) || s.trim() != s {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `n` processes `P1..Pn` with uniform bursts and priorities, fully
/// determined by the arguments.
pub fn generate_workload(
    n: usize,
    bursts: RangeInclusive<Ticks>,
    priorities: RangeInclusive<u32>,
    seed: u64,
) -> Result<Workload> {
    if n == 0 {
        return Err(LabError::argument("process count must be at least 1"));
    }
    check_range(&bursts, "burst")?;
    check_range(&priorities, "priority")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let processes = (1..=n)
        .map(|i| {
            let burst = rng.gen_range(bursts.clone());
            let priority = rng.gen_range(priorities.clone());
            ProcessSpec::new(format!("P{i}"), burst, priority)
        })
        .collect::<pbdrr_core::Result<Vec<_>>>()?;
    Ok(Workload::new(processes)?)
}

fn check_range<T: PartialOrd + From<u8> + std::fmt::Display>(r: &RangeInclusive<T>, name: &str) -> Result<()> {
    if r.start() < &T::from(1) || r.is_empty() {
        return Err(LabError::argument(format!(
            "{name} range {}..{} must be non-empty with a lower bound of at least 1",
            r.start(),
            r.end()
        )));
    }
    Ok(())
}

/// Parses `a..b` or `a..=b` (both inclusive) or a bare `a`.
pub fn parse_range<T: FromStr + Copy>(s: &str) -> Result<RangeInclusive<T>> {
    let bad = || LabError::argument(format!("invalid range `{s}`, expected LO..HI"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok(lo..=hi)
}
