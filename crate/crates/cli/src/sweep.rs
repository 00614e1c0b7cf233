// Copyright 2026 The qtri Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Parallel sweeps over an `(n, seed)` grid and their CSV form.

use std::io::{Read, Write};

use anyhow::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::RunReport;
use crate::runner::{run_algorithm, Algorithm, InstanceSpec, RunParams};

/// Environment variable bounding sweep parallelism.
pub const THREADS_ENV: &str = "QTRI_THREADS";

/// One CSV row; the column set is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub algorithm: String,
    pub n: usize,
    pub seed: u64,
    pub charged_total: u64,
    pub exact_queries: u64,
    pub outcome: String,
}

impl From<&RunReport> for SweepRow {
    fn from(r: &RunReport) -> Self {
        SweepRow {
            algorithm: r.algorithm.clone(),
            n: r.n,
            seed: r.seed,
            charged_total: r.ledger.total,
            exact_queries: r.exact_queries,
            outcome: r.outcome.result.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub algorithm: Algorithm,
    pub instances: InstanceSpec,
    pub ns: Vec<usize>,
    pub seeds: Vec<u64>,
    pub params: RunParams,
}

/// Thread pool honouring [`THREADS_ENV`]; an unset or invalid value leaves rayon's default.
pub fn pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&t| t > 0) {
        builder = builder.num_threads(t);
    }
    Ok(builder.build()?)
}

/// Runs every `(n, seed)` cell; instance and algorithm share the cell's seed
/// through their separate streams. Reports come back sorted by `(n, seed)`.
pub fn sweep_reports(spec: &SweepSpec) -> Result<Vec<RunReport>> {
    let cells: Vec<(usize, u64)> = spec.ns.iter().flat_map(|&n| spec.seeds.iter().map(move |&s| (n, s))).collect();
    let mut reports = pool()?.install(|| {
        cells
            .par_iter()
            .map(|&(n, seed)| {
                let inst = spec.instances.generate(n, seed)?;
                run_algorithm(spec.algorithm, &inst, seed, &spec.params)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    reports.sort_by_key(|r| (r.n, r.seed));
    Ok(reports)
}

pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    Ok(sweep_reports(spec)?.iter().map(SweepRow::from).collect())
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<Vec<SweepRow>, _>>()?)
}
