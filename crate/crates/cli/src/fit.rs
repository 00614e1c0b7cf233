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

//! Least-squares scaling fits on `(log₂ n, log₂ cost)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sweep::SweepRow;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("a slope fit needs at least 3 distinct n values, got {0}")]
    TooFewSizes(usize),
    #[error("costs and sizes must be positive, got n={n}, cost={cost}")]
    NonPositive { n: f64, cost: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log₂ units.
    pub residual: f64,
}

pub fn fit_slope(points: &[(f64, f64)]) -> Result<ScalingFit, FitError> {
    for &(n, cost) in points {
        if !(n > 0.0 && cost > 0.0) {
            return Err(FitError::NonPositive { n, cost });
        }
    }
    let mut sizes: Vec<f64> = points.iter().map(|p| p.0).collect();
    sizes.sort_by(f64::total_cmp);
    sizes.dedup();
    if sizes.len() < 3 {
        return Err(FitError::TooFewSizes(sizes.len()));
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|&(n, c)| (n.log2(), c.log2())).collect();
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xy.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / m).sqrt();
    Ok(ScalingFit { points: points.to_vec(), slope, intercept, residual })
}

/// Fit over sweep rows, optionally restricted to one algorithm.
pub fn fit_rows(rows: &[SweepRow], algorithm: Option<&str>) -> Result<ScalingFit, FitError> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| algorithm.is_none_or(|a| r.algorithm == a))
        .map(|r| (r.n as f64, r.charged_total as f64))
        .collect();
    fit_slope(&points)
}
