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

//! Combinatorial triangle finding: cover most pairs by sampled neighbourhood
//! squares, classify the rest, then search the two parts.

mod classify;
mod lemmas;
mod steps;

pub use classify::{classify, Classification, Classified, ClassifyStats, Partition};
pub use lemmas::{build_gprime, hypergeom_disjoint, sample_size, sample_vertices, within_threshold};
pub use steps::{
    degree_hypothesis, hypothesis_probes, hypothesis_rounds, neighborhood, scan_vertex, search_e,
    search_e_charge, search_square, search_t, verify_triangle, Degree, Scan, LEMMA_TRIVI,
};

use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::graph::{check_size, Graph, Triangle, VertexSet};
use crate::math::{ceil_sqrt, ceil_u64, pow};
use crate::session::OracleSession;
use crate::statevector::{grover_charge, log_factor};

/// Parameters of [`combinatorial_triangle`].
#[derive(Clone, Debug, PartialEq)]
pub struct ComboParams {
    /// Sampling exponent `ε`: `⌈4n^ε log₂ n⌉` neighbourhoods are read.
    pub epsilon: f64,
    /// Degree-test exponent `δ`.
    pub delta: f64,
    /// Drain exponent `ε′`: pairs with fewer than `n^{1−ε′}` common `G′`-neighbours go to `T`.
    pub epsilon_prime: f64,
    /// Repetition constant of the degree test, `K = ⌈c₀·log₂ n⌉`.
    pub c0: f64,
    /// Safe Grover safety `c`; a search over `N` items misses with probability `N^{−c}`.
    pub grover_safety: f64,
    /// Charged-query bound after which the run rejects. `None` uses [`threshold_cap`].
    pub threshold_cap: Option<u64>,
}

impl Default for ComboParams {
    fn default() -> Self {
        ComboParams {
            epsilon: 3.0 / 7.0,
            delta: 1.0 / 7.0,
            epsilon_prime: 1.0 / 7.0,
            c0: 4.0,
            grover_safety: 3.0,
            threshold_cap: None,
        }
    }
}

impl ComboParams {
    pub fn validate(&self) -> Result<()> {
        for (name, x) in [("epsilon", self.epsilon), ("delta", self.delta), ("epsilon_prime", self.epsilon_prime)] {
            if !(x > 0.0 && x < 1.0) {
                return Err(domain(alloc::format!("{name} must lie in (0, 1)")));
            }
        }
        if self.c0.is_nan() || self.c0 <= 0.0 || self.grover_safety.is_nan() || self.grover_safety <= 0.0 {
            return Err(domain("c0 and grover_safety must be positive"));
        }
        Ok(())
    }
}

/// Worst charged total over correct executions, times four.
///
/// Sums the symbolic maxima of every stage: `k` neighbourhood scans with their
/// searches over `C(n,2)` pairs; at most `n + H` degree tests with
/// `H = C(n,2) / (n^{1−δ}/10 · n^{1−ε′}/2)` high-degree steps, each a full
/// scan; the `T` search over `C(n,2)·n^{1−ε′}` triangles; and the `E` search
/// with `|E| = |G ∩ E| = C(n,2)`.
pub fn threshold_cap(n: usize, params: &ComboParams) -> u64 {
    let nn = n as u64;
    let pairs = nn * nn.saturating_sub(1) / 2;
    let k = sample_size(n, params.epsilon) as u64;
    let scan = (nn - 1) + grover_charge(pairs.max(1), params.grover_safety);
    let tau = pow(n as f64, 1.0 - params.epsilon_prime);
    let high = ceil_u64(pairs as f64 / (pow(n as f64, 1.0 - params.delta) / 10.0 * tau / 2.0));
    let test = hypothesis_rounds(n, params.c0) * hypothesis_probes(n, params.delta);
    let t_search = grover_charge(ceil_u64(pairs as f64 * tau).max(1), params.grover_safety);
    let e_search = (ceil_sqrt(pairs) + ceil_sqrt(nn * pairs)) * log_factor(nn);
    let worst = k * scan + (nn + high) * test + high * scan + t_search + e_search + 3;
    worst.saturating_mul(4)
}

/// Where a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Neighborhoods,
    Classification,
    SearchT,
    SearchE,
    Rejected,
    /// The charged total passed the threshold cap.
    Aborted,
}

impl Stage {
    pub fn name(&self) -> &'static str {
        match self {
            Stage::Neighborhoods => "neighborhoods",
            Stage::Classification => "classification",
            Stage::SearchT => "search-T",
            Stage::SearchE => "search-E",
            Stage::Rejected => "rejected",
            Stage::Aborted => "aborted",
        }
    }
}

/// Result and diagnostics of one [`combinatorial_triangle`] run.
#[derive(Clone, Debug, PartialEq)]
pub struct ComboRun {
    pub triangle: Option<Triangle>,
    pub stage: Stage,
    /// Number of sampled vertices `k`.
    pub sample_size: usize,
    pub cap: u64,
    /// `|G′|`, when the run got that far.
    pub gprime_pairs: Option<usize>,
    pub classification: Option<ClassifyStats>,
    /// `t(T)`, when classification produced a partition.
    pub triangles_in_t: Option<u64>,
    /// `(|E|, |G ∩ E|)` for the pair set handed to the last search.
    pub e_pairs: Option<(u64, u64)>,
}

/// Triangle finding with `Õ(n^{1+ε} + n^{1+δ+ε′} + √(n^{3−ε′}) + √(n^{3−min(δ, ε−δ−ε′)}))` charged queries.
///
/// Every emitted triple is re-verified with three probes, so a triangle-free
/// graph is always rejected.
pub fn combinatorial_triangle(session: &mut OracleSession<'_, Graph>, params: &ComboParams) -> Result<ComboRun> {
    params.validate()?;
    let n = session.graph().n();
    check_size(n, 3)?;
    let cap = params.threshold_cap.unwrap_or_else(|| threshold_cap(n, params));
    let k = sample_size(n, params.epsilon);
    let mut run = ComboRun {
        triangle: None,
        stage: Stage::Rejected,
        sample_size: k,
        cap,
        gprime_pairs: None,
        classification: None,
        triangles_in_t: None,
        e_pairs: None,
    };
    let over = |s: &OracleSession<'_, Graph>| s.ledger().total() > cap;

    let sample = sample_vertices(session.rng(), n, k);
    let mut hoods: Vec<VertexSet> = Vec::with_capacity(k);
    for &v in &sample {
        hoods.push(neighborhood(session, v)?);
    }
    for (&v, nbhd) in sample.iter().zip(&hoods) {
        if let Some(t) = search_square(session, v, nbhd, params.grover_safety)? {
            return finish(session, run, t, Stage::Neighborhoods);
        }
        if over(session) {
            run.stage = Stage::Aborted;
            return Ok(run);
        }
    }

    let gprime = build_gprime(session.graph(), &sample);
    run.gprime_pairs = Some(gprime.edge_count());
    let classification = classify(session, &gprime, params, cap)?;
    run.classification = Some(classification.stats);
    let partition = match classification.result {
        Classified::Triangle(t) => return finish(session, run, t, Stage::Classification),
        Classified::Aborted => {
            run.stage = Stage::Aborted;
            return Ok(run);
        }
        Classified::Partition(p) => p,
    };
    run.triangles_in_t = Some(partition.t.triangle_count());

    if let Some(t) = search_t(session, &partition.t, params.grover_safety)? {
        return finish(session, run, t, Stage::SearchT);
    }
    if over(session) {
        run.stage = Stage::Aborted;
        return Ok(run);
    }
    let g = session.graph();
    let overlap = partition.e.edges().filter(|&(a, b)| g.contains(a, b)).count() as u64;
    run.e_pairs = Some((partition.e.edge_count() as u64, overlap));
    if let Some(t) = search_e(session, &partition.e)? {
        return finish(session, run, t, Stage::SearchE);
    }
    run.stage = if over(session) { Stage::Aborted } else { Stage::Rejected };
    Ok(run)
}

fn finish(session: &mut OracleSession<'_, Graph>, mut run: ComboRun, t: Triangle, stage: Stage) -> Result<ComboRun> {
    if verify_triangle(session, t)? {
        run.triangle = Some(t);
        run.stage = stage;
    } else {
        run.stage = Stage::Rejected;
    }
    Ok(run)
}
