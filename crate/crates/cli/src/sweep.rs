use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::config::{GroupArgs, Job, LmodJob, Mode};
use crate::error::CliError;
use crate::jobs::execute;
use crate::render::{cell, Table};

/// Grid of `lmod` jobs. `rs = None` means `r = m`.
#[derive(Clone, Debug)]
pub struct Grid {
    pub ms: Vec<u32>,
    pub rs: Option<Vec<u32>>,
    pub ns: Vec<usize>,
    pub ps: Vec<u64>,
    pub taus: Vec<String>,
    pub hbar: u8,
    pub mode: Mode,
    pub seeds: Vec<u64>,
    pub cap: Option<u32>,
}

impl Grid {
    pub fn jobs(&self) -> Vec<LmodJob> {
        let mut out = Vec::new();
        for &m in &self.ms {
            let rs = self.rs.clone().unwrap_or_else(|| vec![m]);
            for &r in &rs {
                for &n in &self.ns {
                    for &p in &self.ps {
                        for tau in &self.taus {
                            out.push(LmodJob {
                                group: GroupArgs { m, r, n },
                                p,
                                tau: tau.clone(),
                                hbar: self.hbar,
                                mode: self.mode,
                                seeds: self.seeds.clone(),
                                cap: self.cap,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Expected series supplied by the user, overriding built-in closed forms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Expectation {
    pub m: u32,
    pub r: u32,
    pub n: usize,
    pub p: u64,
    pub tau: String,
    pub hilbert: Vec<i64>,
}

pub fn load_expectations(path: &Path) -> Result<Vec<Expectation>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

type Key = (u32, u32, usize, u64, String);

fn key(j: &LmodJob) -> Key {
    (j.group.m, j.group.r, j.group.n, j.p, j.tau.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    Mismatch,
    /// Grid point outside the valid parameter range; skipped.
    Invalid,
    Error,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Row {
    pub job: LmodJob,
    pub status: RowStatus,
    pub hilbert: Option<Value>,
    pub top_degree: Option<Value>,
    pub certified: Option<Value>,
    pub oracle_match: Option<bool>,
    pub message: Option<String>,
    pub seconds: f64,
}

pub struct Summary {
    pub rows: Vec<Row>,
}

impl Summary {
    /// 3 if any row mismatches, else 2 if any job failed, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.rows.iter().any(|r| r.status == RowStatus::Mismatch) {
            3
        } else if self.rows.iter().any(|r| r.status == RowStatus::Error) {
            2
        } else {
            0
        }
    }

    pub fn table(&self) -> Table {
        let header = [
            "m",
            "r",
            "n",
            "p",
            "tau",
            "status",
            "hilbert",
            "top",
            "socleTop",
            "socleIrred",
            "betaNonzero",
            "oracleMatch",
            "seconds",
        ]
        .map(String::from)
        .to_vec();
        let flag = |r: &Row, k: &str| r.certified.as_ref().and_then(|c| c.get(k)).map_or("-".to_string(), cell);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.job.group.m.to_string(),
                    r.job.group.r.to_string(),
                    r.job.group.n.to_string(),
                    r.job.p.to_string(),
                    r.job.tau.clone(),
                    serde_json::to_value(r.status).map(|v| cell(&v)).unwrap_or_default(),
                    r.hilbert.as_ref().map_or("-".into(), cell),
                    r.top_degree.as_ref().map_or("-".into(), cell),
                    flag(r, "socleTop"),
                    flag(r, "socleIrred"),
                    flag(r, "betaNonzero"),
                    r.oracle_match.map_or("-".into(), |b| b.to_string()),
                    format!("{:.3}", r.seconds),
                ]
            })
            .collect();
        Table { header, rows }
    }

    pub fn json(&self) -> Value {
        json!({ "rows": self.rows })
    }
}

/// Runs every grid point on a pool of `jobs` workers; row order follows the grid.
pub fn run(grid: &Grid, expectations: &[Expectation], cache: &Cache, fresh: bool, jobs: usize) -> Result<Summary, CliError> {
    let expected: BTreeMap<Key, Vec<i64>> = expectations
        .iter()
        .map(|e| ((e.m, e.r, e.n, e.p, e.tau.clone()), e.hilbert.clone()))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::invalid(format!("worker pool: {e}")))?;
    let grid_jobs = grid.jobs();
    let rows = pool.install(|| {
        grid_jobs
            .into_par_iter()
            .map(|job| run_one(job, &expected, cache, fresh))
            .collect()
    });
    Ok(Summary { rows })
}

fn run_one(job: LmodJob, expected: &BTreeMap<Key, Vec<i64>>, cache: &Cache, fresh: bool) -> Row {
    let start = Instant::now();
    let outcome = execute(&Job::Lmod(job.clone()), cache, fresh);
    let seconds = start.elapsed().as_secs_f64();
    let mut row = Row {
        job,
        status: RowStatus::Ok,
        hilbert: None,
        top_degree: None,
        certified: None,
        oracle_match: None,
        message: None,
        seconds,
    };
    match outcome {
        Ok(a) => {
            let r = &a.result;
            row.hilbert = r.get("hilbert").cloned();
            row.top_degree = r.get("topDegree").cloned();
            row.certified = r.get("certified").cloned();
            row.oracle_match = match expected.get(&key(&row.job)) {
                Some(want) => Some(row.hilbert.as_ref() == Some(&json!(want))),
                None => r.get("match").and_then(Value::as_bool),
            };
            if row.oracle_match == Some(false) {
                row.status = RowStatus::Mismatch;
                row.message = Some("computed series differs from the expected series".into());
            }
        }
        Err(e) => {
            row.status = match e {
                CliError::Validation { .. } => RowStatus::Invalid,
                CliError::Mismatch(_) => RowStatus::Mismatch,
                CliError::Computation { .. } => RowStatus::Error,
            };
            row.message = Some(e.to_string());
        }
    }
    row
}
