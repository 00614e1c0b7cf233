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

//! Monte Carlo and numeric checks of the probabilistic facts the algorithms rely on.

use anyhow::Result;
use qtri_core::combinatorial::{build_gprime, degree_hypothesis, hypergeom_disjoint, sample_size, sample_vertices, within_threshold, Degree};
use qtri_core::generate::{gen_graph, Family};
use qtri_core::rng::{seeded, STREAM_VALIDATION};
use qtri_core::{Graph, OracleSession};
use rayon::prelude::*;
use serde::Serialize;

/// Slack constant applied to the `n·(p³ + q³ + 1/n)` envelope.
pub const ENVELOPE_SLACK: f64 = 2.0;

pub const USEFUL_PQ: [f64; 5] = [0.01, 0.02, 0.05, 0.1, 0.2];
pub const USEFUL_N: [u64; 4] = [100, 500, 1000, 2000];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UsefulRow {
    pub n: u64,
    pub p: f64,
    pub q: f64,
    pub exact: f64,
    /// `(1 − pq)^n`.
    pub approx: f64,
    /// `|ln exact − n·ln(1 − pq)|`.
    pub log_gap: f64,
    /// `slack·n·(p³ + q³ + 1/n)`.
    pub envelope: f64,
    pub within: bool,
}

pub fn useful_row(n: u64, p: f64, q: f64) -> Result<UsefulRow> {
    let exact = hypergeom_disjoint(n, p, q)?;
    let log_approx = n as f64 * (1.0 - p * q).ln();
    let log_gap = (exact.ln() - log_approx).abs();
    let envelope = ENVELOPE_SLACK * n as f64 * (p.powi(3) + q.powi(3) + 1.0 / n as f64);
    Ok(UsefulRow { n, p, q, exact, approx: log_approx.exp(), log_gap, envelope, within: log_gap <= envelope })
}

/// Disjointness probabilities over the default `p, q, n` grid.
pub fn useful_grid() -> Result<Vec<UsefulRow>> {
    let mut rows = Vec::new();
    for &n in &USEFUL_N {
        for &p in &USEFUL_PQ {
            for &q in &USEFUL_PQ {
                rows.push(useful_row(n, p, q)?);
            }
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverTrial {
    pub seed: u64,
    pub sample_size: usize,
    pub gprime_pairs: usize,
    /// Whether every pair left uncovered has at most `n^{1−ε}` common neighbours.
    pub holds: bool,
}

/// One trial of the covering fact on `erdos_renyi(1/2)`: sample
/// `⌈4n^ε log₂ n⌉` vertices, form `G′`, check `G′ ⊆ G^⟨n^{1−ε}⟩`.
pub fn cover_trial(n: usize, epsilon: f64, seed: u64) -> Result<CoverTrial> {
    let g = gen_graph(Family::ErdosRenyi { p: 0.5 }, n, seed)?;
    let k = sample_size(n, epsilon);
    let sample = sample_vertices(&mut seeded(seed, STREAM_VALIDATION), n, k);
    let gprime = build_gprime(&g, &sample);
    let holds = within_threshold(&g, &gprime, (n as f64).powf(1.0 - epsilon));
    Ok(CoverTrial { seed, sample_size: k, gprime_pairs: gprime.edge_count(), holds })
}

pub fn cover_trials(n: usize, epsilon: f64, seeds: &[u64]) -> Result<Vec<CoverTrial>> {
    seeds.par_iter().map(|&s| cover_trial(n, epsilon, s)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeTestRow {
    pub case: String,
    pub degree: usize,
    pub trials: usize,
    pub answered_high: usize,
    /// Fraction of trials giving the answer excluded for this degree; `None` in the boundary region.
    pub error_rate: Option<f64>,
}

/// Graph in which vertex 1 has exactly `degree` neighbours and nothing else is present.
pub fn star(n: usize, degree: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (2..=degree + 1).map(|w| (1, w)).collect();
    Graph::from_edges(n, &edges).expect("star edges are valid")
}

/// Degree-test answers for vertex 1 at degree `n − 1`, well below `n^{1−δ}/10`, and at the boundary `n^{1−δ}`.
pub fn degree_test_rates(n: usize, delta: f64, c0: f64, seeds: &[u64]) -> Result<Vec<DegreeTestRow>> {
    let boundary = (n as f64).powf(1.0 - delta);
    let low = ((boundary / 10.0).floor() as usize).saturating_sub(1).max(1);
    let cases = [("complete", Graph::complete(n), Some(Degree::High)), ("sparse", star(n, low), Some(Degree::Low)), ("boundary", star(n, boundary.round() as usize), None)];
    let mut rows = Vec::new();
    for (name, g, expected) in cases {
        let answers: Vec<Degree> = seeds
            .par_iter()
            .map(|&s| degree_hypothesis(&mut OracleSession::new(&g, s), 1, delta, c0))
            .collect::<Result<_, _>>()?;
        let high = answers.iter().filter(|&&a| a == Degree::High).count();
        let error_rate = expected.map(|e| answers.iter().filter(|&&a| a != e).count() as f64 / seeds.len() as f64);
        rows.push(DegreeTestRow { case: name.into(), degree: g.degree(1), trials: seeds.len(), answered_high: high, error_rate });
    }
    Ok(rows)
}
