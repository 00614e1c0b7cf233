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

//! Sampling helpers and the probabilistic facts behind them, as checkable functions.

use alloc::vec::Vec;
use rand::seq::index;

use crate::error::{domain, Result};
use crate::graph::{and_popcount, Graph, Vertex};
use crate::math::{ceil_u64, log2, pow};
use crate::rng::Rng;

/// Number of sampled vertices, `min(n, ⌈4n^ε log₂ n⌉)`.
pub fn sample_size(n: usize, epsilon: f64) -> usize {
    (ceil_u64(4.0 * pow(n as f64, epsilon) * log2(n.max(2) as f64)) as usize).min(n)
}

/// `k` distinct uniform vertices of `[n]`.
pub fn sample_vertices(rng: &mut Rng, n: usize, k: usize) -> Vec<Vertex> {
    index::sample(rng, n, k.min(n)).into_iter().map(|i| i + 1).collect()
}

/// `G′ = [n]² ∖ ∪ᵢ ν_G(vᵢ)²` as a pair set.
///
/// Row `a` of the union is the OR of `ν_G(vᵢ)` over the sampled neighbours `vᵢ` of `a`.
pub fn build_gprime(g: &Graph, sample: &[Vertex]) -> Graph {
    let n = g.n();
    let mut is_sampled = alloc::vec![false; n + 1];
    for &v in sample {
        is_sampled[v] = true;
    }
    let words = g.row_words();
    let mut out = Graph::complete(n);
    let mut covered = alloc::vec![0u64; words];
    for a in 1..=n {
        covered.iter_mut().for_each(|w| *w = 0);
        for v in g.neighbors(a).filter(|&v| is_sampled[v]) {
            for (c, r) in covered.iter_mut().zip(g.row(v)) {
                *c |= r;
            }
        }
        for (o, c) in out.row_mut(a).iter_mut().zip(&covered) {
            *o &= !c;
        }
    }
    out
}

/// Whether every pair of `gprime` has at most `k` common neighbours in `g`,
/// i.e. `G′ ⊆ G^⟨k⟩`.
pub fn within_threshold(g: &Graph, gprime: &Graph, k: f64) -> bool {
    gprime.edges().all(|(a, b)| and_popcount(g.row(a), g.row(b)) as f64 <= k)
}

/// Probability that a fixed `|X| = round(pn)` subset of `[n]` misses a uniform
/// `|Y| = round(qn)` subset: `C(n − |X|, |Y|) / C(n, |Y|)`, evaluated as a
/// product of ratios in log space.
pub fn hypergeom_disjoint(n: u64, p: f64, q: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) || !(0.0..1.0).contains(&q) {
        return Err(domain("p and q must lie in [0, 1)"));
    }
    if p + q >= 1.0 {
        return Err(domain("hypergeometric disjointness needs p + q < 1"));
    }
    let x = libm::round(p * n as f64) as u64;
    let y = libm::round(q * n as f64) as u64;
    if x + y > n {
        return Ok(0.0);
    }
    let mut log = 0.0;
    for i in 0..y {
        log += libm::log((n - x - i) as f64 / (n - i) as f64);
    }
    Ok(libm::exp(log))
}
