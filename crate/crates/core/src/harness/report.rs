//! CSV rows emitted by every mode.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{MtoaError, Result};
use crate::sim::Scheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowSource {
    Sim,
    Analysis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    /// A single replication or analytical cell.
    Ok,
    /// Average over replications.
    Mean,
    /// The cell could not be evaluated; `note` holds the reason.
    Failed,
}

/// One line of output. Columns appear in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub scheme: Option<Scheme>,
    pub n: usize,
    #[serde(rename = "T")]
    pub horizon: u64,
    pub seed: Option<u64>,
    #[serde(rename = "L")]
    pub null_actions: Option<usize>,
    pub alpha: Option<f64>,
    pub q_th: Option<f64>,
    /// Reset window, or the batch size `M` for analytical rows.
    pub m_window: Option<String>,
    pub n_capture: Option<u32>,
    pub q_noncapture: Option<f64>,
    pub lambda_out: Option<f64>,
    pub jain: Option<f64>,
    pub source: RowSource,
    /// Relative throughput error against the matching analytical row.
    pub rel_error: Option<f64>,
    pub rel_error_jain: Option<f64>,
    pub status: RowStatus,
    /// Standard errors across replications (mean rows only).
    pub lambda_se: Option<f64>,
    pub jain_se: Option<f64>,
    pub note: String,
}

impl ReportRow {
    pub fn is_failed(&self) -> bool {
        self.status == RowStatus::Failed
    }

    /// Parameter tuple used to pair simulated and analytical rows.
    pub fn join_key(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(ToString::to_string).unwrap_or_default()
        }
        format!(
            "scheme={} n={} T={} L={} alpha={} q_th={} m_window={} n_capture={} q={}",
            opt(&self.scheme),
            self.n,
            self.horizon,
            opt(&self.null_actions),
            opt(&self.alpha),
            opt(&self.q_th),
            opt(&self.m_window),
            opt(&self.n_capture),
            opt(&self.q_noncapture)
        )
    }
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_HEADER).map_err(csv_err)?;
    }
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ReportRow>> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(csv_err)).collect()
}

pub fn to_csv_string(rows: &[ReportRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| MtoaError::Internal(e.to_string()))
}

pub const CSV_HEADER: [&str; 19] = [
    "scheme",
    "n",
    "T",
    "seed",
    "L",
    "alpha",
    "q_th",
    "m_window",
    "n_capture",
    "q_noncapture",
    "lambda_out",
    "jain",
    "source",
    "rel_error",
    "rel_error_jain",
    "status",
    "lambda_se",
    "jain_se",
    "note",
];

fn csv_err(e: csv::Error) -> MtoaError {
    MtoaError::Io(format!("csv: {e}"))
}

#[cfg(test)]
pub(crate) fn sample_row() -> ReportRow {
    ReportRow {
        scheme: Some(Scheme::MtoaL),
        n: 100,
        horizon: 1_000_000,
        seed: Some(1),
        null_actions: Some(99),
        alpha: Some(0.9),
        q_th: Some(0.95),
        m_window: None,
        n_capture: Some(0),
        q_noncapture: Some(0.01),
        lambda_out: Some(0.36),
        jain: Some(0.999),
        source: RowSource::Sim,
        rel_error: None,
        rel_error_jain: None,
        status: RowStatus::Ok,
        lambda_se: None,
        jain_se: None,
        note: String::new(),
    }
}
