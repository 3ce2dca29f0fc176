//! Batch experiments: generate graphs over a parameter grid, compute bounds,
//! extract witnesses, verify them, and compare with exact optima where the
//! oracle is affordable. One CSV row per `(model, n, p, d, trial)`.

use std::io::Write;

use rayon::prelude::*;

use crate::bounds::{average_degree_bound, floor_bound, strengthened_bound};
use crate::error::{Error, Result};
use crate::extract::{check_trace, find_bihole, find_degenerate};
use crate::graph::{BipartiteGraph, GraphModel};
use crate::oracle::{
    is_bihole, max_bihole_exact, max_degenerate_exact, verify_degenerate_witness, OracleLimits,
};
use crate::rational::{format_sig12, Rational};

pub const CSV_HEADER: &str =
    "model,n,p,seed,d,floor_bound,ceil_strengthened,avg_deg_bound,extracted,exact,verified";

/// Model names accepted by the experiment grid; `gnp` is expanded over the
/// probability grid, the rest ignore it.
pub const MODEL_NAMES: [&str; 6] = ["gnp", "complete", "edgeless", "matching", "cycle", "crown"];

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub models: Vec<String>,
    pub n_values: Vec<usize>,
    pub p_grid: Vec<f64>,
    pub d_set: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Extra cap on `n` for running the exact oracle.
    pub oracle_max: Option<usize>,
    pub limits: OracleLimits,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub model: &'static str,
    pub n: usize,
    pub p: Option<f64>,
    pub seed: u64,
    pub d: usize,
    pub floor_bound: usize,
    pub ceil_strengthened: i64,
    pub average_degree_bound: Rational,
    pub extracted: usize,
    pub exact: Option<usize>,
    pub verified: bool,
}

impl ExperimentRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.model,
            self.n,
            self.p.map(|p| p.to_string()).unwrap_or_default(),
            self.seed,
            self.d,
            self.floor_bound,
            self.ceil_strengthened,
            self.average_degree_bound.to_decimal_12(),
            self.extracted,
            self.exact.map(|e| e.to_string()).unwrap_or_default(),
            self.verified,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub rows: usize,
    pub violations: usize,
    pub min_gap: Option<i64>,
    pub mean_gap: Option<f64>,
}

impl ExperimentSummary {
    pub fn line(&self) -> String {
        let min = self.min_gap.map(|g| g.to_string()).unwrap_or_else(|| "n/a".into());
        let mean = self.mean_gap.map(format_sig12).unwrap_or_else(|| "n/a".into());
        format!(
            "rows={} violations={} min_gap={} mean_gap={}",
            self.rows, self.violations, min, mean
        )
    }
}

/// Seed for one graph, mixing the base seed with its grid coordinates
/// (splitmix64 finalizer over each component in turn).
pub fn derive_seed(base: u64, model: &str, n: usize, p_index: usize, trial: usize) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    let model_tag = model.bytes().fold(0u64, |h, b| mix(h ^ b as u64));
    [model_tag, n as u64, p_index as u64, trial as u64]
        .into_iter()
        .fold(mix(base), |h, x| mix(h ^ x))
}

struct Job {
    model: &'static str,
    n: usize,
    p: Option<f64>,
    p_index: usize,
    d: usize,
    trial: usize,
}

fn jobs(cfg: &ExperimentConfig) -> std::result::Result<Vec<Job>, String> {
    let mut out = Vec::new();
    for name in &cfg.models {
        let model = MODEL_NAMES
            .iter()
            .copied()
            .find(|m| m == name)
            .ok_or_else(|| format!("unknown model {name:?}"))?;
        for &n in &cfg.n_values {
            let ps: Vec<(usize, Option<f64>)> = if model == "gnp" {
                cfg.p_grid.iter().copied().map(Some).enumerate().collect()
            } else {
                vec![(0, None)]
            };
            for &(p_index, p) in &ps {
                for &d in &cfg.d_set {
                    for trial in 0..cfg.trials {
                        out.push(Job { model, n, p, p_index, d, trial });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn run_job(cfg: &ExperimentConfig, job: &Job) -> Result<ExperimentRow> {
    let seed = derive_seed(cfg.seed, job.model, job.n, job.p_index, job.trial);
    let model = GraphModel::from_name(job.model, job.p).map_err(Error::InvalidSize)?;
    let g = BipartiteGraph::generate(model, job.n, seed)?;
    let d = job.d;

    let floor = floor_bound(&g, d)?;
    let strengthened = strengthened_bound(&g, d)?;
    let (extracted, witness_ok, trace) = if d == 0 {
        let (w, t) = find_bihole(&g)?;
        (w.size(), is_bihole(&g, &w)?, t)
    } else {
        let (w, t) = find_degenerate(&g, d)?;
        (w.size(), verify_degenerate_witness(&g, &w, d)?, t)
    };
    let trace_ok = check_trace(&g, &trace, d).unwrap_or(false);

    let cap = cfg.oracle_max.unwrap_or(usize::MAX);
    let exact = if d == 0 && job.n <= cap.min(cfg.limits.max_side_bihole) {
        Some(max_bihole_exact(&g, &cfg.limits)?)
    } else if d > 0 && job.n <= cap.min(cfg.limits.max_side_degenerate) {
        Some(max_degenerate_exact(&g, d, &cfg.limits)?)
    } else {
        None
    };

    let verified = witness_ok
        && trace_ok
        && floor <= extracted
        && exact.is_none_or(|e| extracted <= e);
    Ok(ExperimentRow {
        model: job.model,
        n: job.n,
        p: job.p,
        seed,
        d,
        floor_bound: floor,
        ceil_strengthened: num_traits::ToPrimitive::to_i64(&strengthened.ceil())
            .expect("bounded by n + 1"),
        average_degree_bound: average_degree_bound(&g)?,
        extracted,
        exact,
        verified,
    })
}

const BATCH: usize = 256;

/// Runs the grid, writing the header and then each row (flushed) in grid
/// order. Rows are computed in parallel batches; output order is fixed.
pub fn run_experiment<W: Write + ?Sized>(
    cfg: &ExperimentConfig,
    out: &mut W,
) -> std::result::Result<ExperimentSummary, ExperimentError> {
    let jobs = jobs(cfg).map_err(ExperimentError::Config)?;
    writeln!(out, "{CSV_HEADER}")?;
    out.flush()?;

    let mut summary = ExperimentSummary {
        rows: 0,
        violations: 0,
        min_gap: None,
        mean_gap: None,
    };
    let mut gap_total = 0i64;
    for batch in jobs.chunks(BATCH) {
        let rows: Vec<Result<ExperimentRow>> =
            batch.par_iter().map(|job| run_job(cfg, job)).collect();
        for row in rows {
            let row = row?;
            writeln!(out, "{}", row.to_csv())?;
            out.flush()?;
            let gap = row.extracted as i64 - row.floor_bound as i64;
            summary.rows += 1;
            summary.violations += usize::from(!row.verified);
            summary.min_gap = Some(summary.min_gap.map_or(gap, |m| m.min(gap)));
            gap_total += gap;
        }
    }
    if summary.rows > 0 {
        summary.mean_gap = Some(gap_total as f64 / summary.rows as f64);
    }
    Ok(summary)
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Graph(#[from] Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
