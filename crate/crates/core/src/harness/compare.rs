//! Pairs simulated rows with analytical rows of the same parameters.

use std::collections::BTreeMap;

use serde::Serialize;

use super::report::{ReportRow, RowStatus};

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Comparison {
    /// Simulated rows annotated with relative errors.
    pub rows: Vec<ReportRow>,
    /// Keys present on only one side.
    pub diagnostics: Vec<String>,
}

fn rel(sim: Option<f64>, analysis: Option<f64>) -> Option<f64> {
    match (sim, analysis) {
        (Some(s), Some(a)) if a != 0.0 => Some((s - a).abs() / a.abs()),
        (Some(0.0), Some(_)) => Some(0.0),
        _ => None,
    }
}

/// Joins on [`ReportRow::join_key`]. Failed cells never receive an error value.
pub fn compare_sim_analysis(sim_rows: &[ReportRow], analysis_rows: &[ReportRow]) -> Comparison {
    let mut by_key: BTreeMap<String, &ReportRow> = BTreeMap::new();
    for a in analysis_rows {
        by_key.entry(a.join_key()).or_insert(a);
    }
    let mut used = std::collections::BTreeSet::new();
    let mut out = Comparison::default();
    for s in sim_rows {
        let key = s.join_key();
        let Some(a) = by_key.get(&key) else {
            out.diagnostics.push(format!("no analytical row for simulated {key}"));
            continue;
        };
        used.insert(key);
        let mut row = s.clone();
        if s.is_failed() || a.is_failed() {
            row.status = RowStatus::Failed;
            row.rel_error = None;
            row.rel_error_jain = None;
            let why = if a.is_failed() { &a.note } else { &s.note };
            row.note = format!("not comparable: {why}");
        } else {
            row.rel_error = rel(s.lambda_out, a.lambda_out);
            row.rel_error_jain = rel(s.jain, a.jain);
        }
        out.rows.push(row);
    }
    for (key, _) in by_key {
        if !used.contains(&key) {
            out.diagnostics.push(format!("no simulated row for analytical {key}"));
        }
    }
    out
}
