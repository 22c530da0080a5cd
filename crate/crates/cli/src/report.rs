use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use sdpke::attacks::{AttackOutcome, WorkCounters};
use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

pub const CSV_HEADER: [&str; 6] = ["platform", "trial", "operation", "success", "micros", "counters"];

/// One operation of one trial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub platform: String,
    pub trial: u64,
    pub operation: String,
    #[serde(serialize_with = "as_digit")]
    pub success: bool,
    pub micros: u64,
    pub counters: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovered_exponent: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_found: Option<bool>,
}

fn as_digit<S: serde::Serializer>(b: &bool, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u8(u8::from(*b))
}

impl ReportRow {
    pub fn new(platform: &str, trial: u64, operation: &str, success: bool, micros: u64) -> Self {
        ReportRow {
            platform: platform.to_string(),
            trial,
            operation: operation.to_string(),
            success,
            micros,
            counters: BTreeMap::new(),
            failure: None,
            recovered_exponent: None,
            reference_found: None,
        }
    }

    pub fn from_outcome<E>(platform: &str, trial: u64, operation: &str, o: &AttackOutcome<E>, micros: u64) -> Self {
        let mut row = ReportRow::new(platform, trial, operation, o.success, micros);
        row.counters = counters(&o.work);
        row.failure = o.failure.clone();
        row.recovered_exponent = o.recovered_exponent;
        row.reference_found = o.reference_found;
        row
    }

    pub fn counters_kv(&self) -> String {
        self.counters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }
}

pub fn counters(w: &WorkCounters) -> BTreeMap<String, u64> {
    match serde_json::to_value(w) {
        Ok(Value::Object(m)) => m.into_iter().filter_map(|(k, v)| Some((k, v.as_u64()?))).collect(),
        _ => BTreeMap::new(),
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub rows: Vec<ReportRow>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub summary: Value,
}

impl Report {
    pub fn all_succeeded(&self) -> bool {
        self.rows.iter().all(|r| r.success)
    }

    pub fn write(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let mut sink: Box<dyn Write> = match out {
            Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
            None => Box::new(io::stdout().lock()),
        };
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut sink, self)?;
                writeln!(sink)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(sink);
                w.write_record(CSV_HEADER)?;
                for r in &self.rows {
                    w.write_record([
                        r.platform.clone(),
                        r.trial.to_string(),
                        r.operation.clone(),
                        u8::from(r.success).to_string(),
                        r.micros.to_string(),
                        r.counters_kv(),
                    ])?;
                }
                w.flush()?;
                return Ok(());
            }
        }
        sink.flush()?;
        Ok(())
    }

    /// Failure reasons, which CSV has no column for, go to standard error.
    pub fn log_failures(&self) {
        for r in self.rows.iter().filter(|r| !r.success) {
            eprintln!(
                "trial {} {}: {}",
                r.trial,
                r.operation,
                r.failure.as_deref().unwrap_or("failed")
            );
        }
    }
}

/// Nearest-rank percentile of an unsorted sample.
pub fn percentile(values: &[u64], pct: f64) -> Option<u64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_unstable();
    let rank = ((pct / 100.0) * v.len() as f64).ceil() as usize;
    Some(v[rank.clamp(1, v.len()) - 1])
}
