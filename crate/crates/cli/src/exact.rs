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

//! Exact walk sweeps for the `exact` subcommand.

use anyhow::{bail, Result};
use qtri_core::walk::{ExactCollisionInstance, GenericExact};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactRow {
    pub t1: u32,
    pub t2: u32,
    pub success_probability: f64,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactSweep {
    pub n: u32,
    pub r: u32,
    pub collisions: usize,
    /// Success probability at `t1 = t2 = 0`.
    pub baseline: f64,
    pub rows: Vec<ExactRow>,
    pub best: ExactRow,
}

/// Values with a single colliding pair: `0, 1, …, n−2, 0`.
pub fn unique_pair_values(n: usize) -> Vec<u64> {
    let mut v: Vec<u64> = (0..n as u64).collect();
    if n >= 2 {
        v[n - 1] = 0;
    }
    v
}

/// Sweeps `t1 ∈ 1..=t1_max`, `t2 ∈ 1..=t2_max` of the generic algorithm for
/// element distinctness on `values`, one `t2` column per task.
pub fn exact_sweep(values: &[u64], r: u32, t1_max: u32, t2_max: u32) -> Result<ExactSweep> {
    if t1_max == 0 || t2_max == 0 {
        bail!("sweep bounds must be positive");
    }
    let inst = ExactCollisionInstance::element_distinctness(values)?;
    let engine = GenericExact::new(&inst, r)?;
    let baseline = engine.run(0, 0)?.success_probability;
    let columns: Vec<Vec<ExactRow>> = crate::sweep::pool()?.install(|| {
        (1..=t2_max)
            .into_par_iter()
            .map(|t2| {
                Ok(engine
                    .trajectory(t1_max, t2)?
                    .into_iter()
                    .enumerate()
                    .map(|(i, o)| ExactRow { t1: i as u32 + 1, t2, success_probability: o.success_probability, norm: o.final_norm })
                    .collect())
            })
            .collect::<Result<_>>()
    })?;
    let mut rows: Vec<ExactRow> = columns.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.t1, r.t2));
    let best = rows
        .iter()
        .max_by(|a, b| a.success_probability.total_cmp(&b.success_probability))
        .cloned()
        .expect("nonempty grid");
    Ok(ExactSweep { n: values.len() as u32, r, collisions: inst.collisions().len(), baseline, rows, best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep() {
        let s = exact_sweep(&unique_pair_values(6), 2, 3, 2).unwrap();
        assert_eq!(s.rows.len(), 6);
        assert_eq!(s.collisions, 1);
        assert!((s.baseline - 1.0 / 15.0).abs() < 1e-12);
        assert!(s.rows.iter().all(|r| (r.norm - 1.0).abs() < 1e-10));
    }
}
