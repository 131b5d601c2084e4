//! Mode dispatch and replication orchestration.

use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use serde_json::{json, Value};

use super::compare::compare_sim_analysis;
use super::config::{ExperimentSpec, Mode};
use super::report::{write_csv, ReportRow, RowSource, RowStatus};
use crate::analysis::analyze_strategy;
use crate::error::{MtoaError, Result};
use crate::sim::{run_replication, RunMetrics, Scheme};
use crate::tradeoff::{
    max_throughput_under_fairness, pareto_frontier, recommend_mtoa_g, recommend_mtoa_l, refine_at_fairness,
    sweep_tradeoff, PointSource, SweepGrid, TradeoffPoint,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub rows: Vec<ReportRow>,
    pub summary: Value,
}

impl ExperimentOutput {
    pub fn has_failures(&self) -> bool {
        self.rows.iter().any(ReportRow::is_failed)
    }

    /// Writes the CSV and, if requested, the JSON summary.
    pub fn write(&self, csv_path: &Path, summary_path: Option<&Path>) -> Result<()> {
        let file = fs::File::create(csv_path).map_err(|e| MtoaError::Io(format!("{}: {e}", csv_path.display())))?;
        write_csv(&self.rows, std::io::BufWriter::new(file))?;
        if let Some(p) = summary_path {
            let mut text =
                serde_json::to_string_pretty(&self.summary).map_err(|e| MtoaError::Internal(e.to_string()))?;
            text.push('\n');
            fs::write(p, text).map_err(|e| MtoaError::Io(format!("{}: {e}", p.display())))?;
        }
        Ok(())
    }
}

fn default_workers() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Runs every replication seed on up to `workers` threads; results come back in seed order.
pub fn run_replications(spec: &ExperimentSpec, workers: usize) -> Vec<(u64, Result<RunMetrics>)> {
    let seeds = spec.replication_seeds();
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    thread::scope(|s| {
        for _ in 0..workers.clamp(1, seeds.len().max(1)) {
            let tx = tx.clone();
            let (next, seeds) = (&next, &seeds);
            s.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&seed) = seeds.get(i) else { break };
                let result = spec.network_config(seed).and_then(|c| run_replication(&c));
                if tx.send((i, seed, result)).is_err() {
                    break;
                }
            });
        }
    });
    drop(tx);
    let mut out: Vec<_> = rx.into_iter().collect();
    out.sort_by_key(|(i, _, _)| *i);
    out.into_iter().map(|(_, seed, r)| (seed, r)).collect()
}

/// Row with the parameter columns shared by simulated and analytical output.
fn parameter_row(spec: &ExperimentSpec, source: RowSource) -> ReportRow {
    let strategy = spec.access_strategy().ok();
    let explicit = spec.strategy.is_some();
    let scheme = if explicit { None } else { spec.scheme };
    ReportRow {
        scheme,
        n: spec.nodes,
        horizon: spec.horizon,
        seed: None,
        null_actions: if explicit { None } else { spec.null_actions },
        alpha: if explicit { None } else { Some(spec.alpha) },
        q_th: if scheme == Some(Scheme::MtoaL) { spec.q_threshold } else { None },
        m_window: if explicit {
            strategy.as_ref().map(|s| s.m_batch.to_string())
        } else if scheme == Some(Scheme::MtoaG) {
            spec.reset_window.map(|w| w.to_string())
        } else {
            None
        },
        n_capture: strategy.as_ref().map(|s| s.n_capture),
        q_noncapture: strategy.as_ref().map(|s| s.q_noncapture()),
        lambda_out: None,
        jain: None,
        source,
        rel_error: None,
        rel_error_jain: None,
        status: RowStatus::Ok,
        lambda_se: None,
        jain_se: None,
        note: String::new(),
    }
}

fn failed(mut row: ReportRow, e: &MtoaError) -> ReportRow {
    row.status = RowStatus::Failed;
    row.note = e.to_string();
    row
}

fn mean_se(values: &[f64]) -> (f64, Option<f64>) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    if values.len() < 2 {
        return (mean, None);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
    (mean, Some((var / k).sqrt()))
}

fn simulation_rows(spec: &ExperimentSpec, workers: usize) -> Vec<ReportRow> {
    let base = parameter_row(spec, RowSource::Sim);
    let mut rows = Vec::new();
    let (mut lambdas, mut jains) = (Vec::new(), Vec::new());
    for (seed, result) in run_replications(spec, workers) {
        let row = ReportRow { seed: Some(seed), ..base.clone() };
        match result {
            Ok(m) => {
                lambdas.push(m.lambda_out_hat);
                if let Some(j) = m.jain {
                    jains.push(j);
                }
                rows.push(ReportRow { lambda_out: Some(m.lambda_out_hat), jain: m.jain, ..row });
            }
            Err(e) => rows.push(failed(row, &e)),
        }
    }
    let mut mean = ReportRow { status: RowStatus::Mean, ..base };
    if lambdas.is_empty() {
        mean.status = RowStatus::Failed;
        mean.note = "no replication completed".into();
    } else {
        let (l, l_se) = mean_se(&lambdas);
        mean.lambda_out = Some(l);
        mean.lambda_se = l_se;
        if jains.len() == lambdas.len() {
            let (j, j_se) = mean_se(&jains);
            mean.jain = Some(j);
            mean.jain_se = j_se;
        }
        mean.note = format!("{} replications", lambdas.len());
    }
    rows.push(mean);
    rows
}

fn analysis_row(spec: &ExperimentSpec) -> (ReportRow, Value) {
    let base = parameter_row(spec, RowSource::Analysis);
    let result =
        spec.access_strategy().and_then(|s| analyze_strategy(&s, spec.nodes, spec.horizon as f64).map(|a| (s, a)));
    match result {
        Ok((s, a)) => {
            let summary = json!({ "strategy": s, "analysis": a });
            (ReportRow { lambda_out: Some(a.throughput), jain: Some(a.fairness), ..base }, summary)
        }
        Err(e) => {
            let summary = json!({ "error": e.to_string() });
            (failed(base, &e), summary)
        }
    }
}

/// Grid for sweep mode: the scheme's family with any configured overrides.
pub fn sweep_grid(spec: &ExperimentSpec) -> Result<SweepGrid> {
    let scheme = spec.scheme.ok_or_else(|| MtoaError::Config("sweep mode requires `scheme`".into()))?;
    let horizon = spec.horizon as f64;
    let mut grid = match scheme {
        Scheme::MtoaL => SweepGrid::connection_free(spec.nodes, horizon, vec![2]),
        Scheme::MtoaG => {
            let l = spec.null_actions.unwrap_or(spec.nodes.saturating_sub(1).max(1));
            SweepGrid::connection_based(spec.nodes, horizon, 1.0 / (l as f64 + 1.0), vec![0])
        }
    };
    if let Some(g) = &spec.grid {
        if let Some(q) = &g.q_values {
            grid.q_values = q.clone();
        }
        if let Some(m) = &g.m_values {
            grid.m_values = m.clone();
        }
        if let Some(c) = &g.n_c_values {
            grid.n_c_values = c.clone();
        }
    }
    grid.validate()?;
    Ok(grid)
}

fn point_row(spec: &ExperimentSpec, p: &TradeoffPoint) -> ReportRow {
    let scheme = spec.scheme;
    let l = match scheme {
        Some(Scheme::MtoaG) => Some(((1.0 / p.params.q_noncapture) - 1.0).round() as usize),
        _ => None,
    };
    ReportRow {
        scheme,
        n: spec.nodes,
        horizon: spec.horizon,
        seed: None,
        null_actions: l,
        alpha: None,
        q_th: None,
        m_window: Some(p.params.m_batch.to_string()),
        n_capture: Some(p.params.n_capture),
        q_noncapture: Some(p.params.q_noncapture),
        lambda_out: Some(p.throughput),
        jain: Some(p.fairness),
        source: RowSource::Analysis,
        rel_error: None,
        rel_error_jain: None,
        status: RowStatus::Ok,
        lambda_se: None,
        jain_se: None,
        note: if p.refined { "refined".into() } else { String::new() },
    }
}

fn run_sweep(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    let grid = sweep_grid(spec)?;
    let mut result = sweep_tradeoff(&grid)?;
    let cells = result.points.len();
    if let Some(j) = spec.j_min {
        let refined = refine_at_fairness(&grid, &result, j);
        result.points.extend(refined);
    }
    let frontier = pareto_frontier(&result.points);
    let mut rows: Vec<ReportRow> = frontier.iter().map(|p| point_row(spec, p)).collect();
    for f in &result.failures {
        let cell = TradeoffPoint {
            throughput: 0.0,
            fairness: 0.0,
            params: f.params,
            source: PointSource::Analysis,
            refined: false,
        };
        rows.push(ReportRow {
            lambda_out: None,
            jain: None,
            status: RowStatus::Failed,
            note: f.error.clone(),
            ..point_row(spec, &cell)
        });
    }
    let best = spec.j_min.map(|j| match max_throughput_under_fairness(&frontier, j) {
        Ok(p) => json!({ "j_min": j, "point": p }),
        Err(e) => json!({ "j_min": j, "error": e.to_string() }),
    });
    let summary = json!({
        "mode": "sweep",
        "grid_cells": grid.len(),
        "evaluated": cells,
        "failures": result.failures.len(),
        "frontier_points": frontier.len(),
        "best_under_fairness": best,
    });
    Ok(ExperimentOutput { rows, summary })
}

fn run_recommend(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    let j_min = spec.j_min.ok_or_else(|| MtoaError::Config("recommend mode requires `j_min`".into()))?;
    let horizon = spec.horizon as f64;
    let mut row = ReportRow {
        seed: None,
        ..parameter_row(&ExperimentSpec { strategy: None, ..spec.clone() }, RowSource::Analysis)
    };
    let summary = match spec.scheme {
        Some(Scheme::MtoaL) => {
            let r = recommend_mtoa_l(spec.nodes, horizon, j_min)?;
            row.null_actions = Some(r.null_actions);
            row.alpha = Some(r.alpha);
            row.q_th = Some(r.q_threshold);
            row.m_window = None;
            row.n_capture = Some(crate::tradeoff::recommend::RECOMMENDED_CAPTURE);
            row.q_noncapture = Some(1.0 / (r.null_actions as f64 + 1.0));
            row.lambda_out = Some(r.throughput);
            row.jain = Some(r.fairness);
            json!({ "mode": "recommend", "scheme": "mtoa-l", "j_min": j_min, "recommendation": r })
        }
        Some(Scheme::MtoaG) => {
            let r = recommend_mtoa_g(spec.nodes, horizon, j_min)?;
            row.null_actions = Some(r.null_actions);
            row.alpha = Some(spec.alpha);
            row.q_th = None;
            row.m_window = Some(r.m_window.to_string());
            row.n_capture = Some(0);
            row.q_noncapture = Some(1.0 / (r.null_actions as f64 + 1.0));
            row.lambda_out = Some(r.throughput);
            row.jain = Some(r.fairness);
            json!({ "mode": "recommend", "scheme": "mtoa-g", "j_min": j_min, "recommendation": r })
        }
        None => return Err(MtoaError::Config("recommend mode requires `scheme`".into())),
    };
    Ok(ExperimentOutput { rows: vec![row], summary })
}

/// Executes the spec. `workers` overrides the configured worker count.
pub fn run_experiment(spec: &ExperimentSpec, workers: Option<usize>) -> Result<ExperimentOutput> {
    let workers = workers.or(spec.workers).unwrap_or_else(default_workers);
    match spec.mode {
        Mode::Simulate => {
            let rows = simulation_rows(spec, workers);
            let mean = rows.last().cloned();
            let summary = json!({ "mode": "simulate", "replications": spec.replications, "mean": mean });
            Ok(ExperimentOutput { rows, summary })
        }
        Mode::Analyze => {
            let (row, detail) = analysis_row(spec);
            Ok(ExperimentOutput { rows: vec![row], summary: json!({ "mode": "analyze", "result": detail }) })
        }
        Mode::Compare => {
            let (analysis, detail) = analysis_row(spec);
            let sim = simulation_rows(spec, workers);
            let cmp = compare_sim_analysis(&sim, std::slice::from_ref(&analysis));
            let mean = cmp.rows.iter().find(|r| r.status == RowStatus::Mean).cloned();
            let summary = json!({
                "mode": "compare",
                "analysis": detail,
                "mean": mean,
                "diagnostics": cmp.diagnostics,
            });
            let mut rows = vec![analysis];
            rows.extend(cmp.rows);
            Ok(ExperimentOutput { rows, summary })
        }
        Mode::Sweep => run_sweep(spec),
        Mode::Recommend => run_recommend(spec),
    }
}
