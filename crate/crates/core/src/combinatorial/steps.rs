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

//! Charged subroutines of the combinatorial triangle algorithm.

use alloc::format;
use alloc::vec::Vec;
use rand::Rng as _;

use crate::error::Result;
use crate::graph::{count_above, edges_within, nth_edge_within, triangle_of, Graph, Triangle, Vertex, VertexSet};
use crate::math::{ceil_sqrt, ceil_u64, log2, pow};
use crate::session::OracleSession;
use crate::statevector::{log_factor, safe_grover_charged};

/// Ledger category of the neighbourhood-scan subroutine.
pub const LEMMA_TRIVI: &str = "lemma-trivi";

/// Outcome of [`scan_vertex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scan {
    Triangle(Triangle),
    /// No edge of `G` inside `ν_G(v)²`; carries `ν_G(v)`.
    Absent(VertexSet),
}

/// Degree hypothesis chosen by [`degree_hypothesis`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Low,
    High,
}

/// Reads `ν_G(v)` with `n − 1` classical probes, charged under `lemma-trivi(v)`.
pub fn neighborhood(session: &mut OracleSession<'_, Graph>, v: Vertex) -> Result<VertexSet> {
    let g = session.graph();
    g.check_vertex(v)?;
    let n = g.n() as u64;
    let set = VertexSet::from_row(g.row(v));
    session.add_exact_queries(n - 1);
    session.charge(format!("{LEMMA_TRIVI}({v})"), n - 1);
    Ok(set)
}

/// Safe Grover Search for an edge of `G` inside `ν_G(v)²`, returning the
/// triangle it induces with `v`.
pub fn search_square(
    session: &mut OracleSession<'_, Graph>,
    v: Vertex,
    nbhd: &VertexSet,
    safety: f64,
) -> Result<Option<Triangle>> {
    let g = session.graph();
    let d = nbhd.len() as u64;
    let pairs = (d * d.saturating_sub(1) / 2).max(1);
    let marked = edges_within(g, nbhd);
    let hit = safe_grover_charged(session, format!("{LEMMA_TRIVI}-search({v})"), pairs, marked, safety)?;
    Ok(hit.map(|rank| {
        let (a, b) = nth_edge_within(g, nbhd, rank).expect("rank below the marked count");
        triangle_of(v, a, b)
    }))
}

/// Either a triangle through `v`, or a certificate that `G` has no edge inside `ν_G(v)²`.
///
/// Charges `n − 1` for the neighbourhood and a Safe Grover Search over the
/// pairs of `ν_G(v)` (one pair when the neighbourhood is too small to have any).
pub fn scan_vertex(session: &mut OracleSession<'_, Graph>, v: Vertex, safety: f64) -> Result<Scan> {
    let nbhd = neighborhood(session, v)?;
    Ok(match search_square(session, v, &nbhd, safety)? {
        Some(t) => Scan::Triangle(t),
        None => Scan::Absent(nbhd),
    })
}

/// Number of sampling rounds, `⌈c₀·log₂ n⌉`.
pub fn hypothesis_rounds(n: usize, c0: f64) -> u64 {
    ceil_u64(c0 * log2(n.max(2) as f64)).max(1)
}

/// Probes per sampling round, `⌈n^δ⌉`.
pub fn hypothesis_probes(n: usize, delta: f64) -> u64 {
    ceil_u64(pow(n as f64, delta)).max(1)
}

/// Sampling test between `deg(v) ≤ 10·n^{1−δ}` and `deg(v) ≥ n^{1−δ}/10`.
///
/// Each of `K` rounds probes `⌈n^δ⌉` uniform partners of `v` and scores one if
/// any of them is a neighbour. The answer is low iff fewer than `K/2` rounds scored.
pub fn degree_hypothesis(
    session: &mut OracleSession<'_, Graph>,
    v: Vertex,
    delta: f64,
    c0: f64,
) -> Result<Degree> {
    let n = session.graph().n();
    session.graph().check_vertex(v)?;
    let rounds = hypothesis_rounds(n, c0);
    let probes = hypothesis_probes(n, delta);
    let mut score = 0u64;
    for _ in 0..rounds {
        let mut hit = false;
        for _ in 0..probes {
            let mut w = session.rng().gen_range(1..n);
            if w >= v {
                w += 1;
            }
            hit |= session.query_edge(v, w)?;
        }
        score += hit as u64;
    }
    session.charge(format!("degree-test({v})"), rounds * probes);
    Ok(if 2 * score < rounds { Degree::Low } else { Degree::High })
}

/// Triangles of `G` among the triangles of the known pair set `T`.
///
/// Enumerating `T`'s triangles is free; Safe Grover Search runs over all
/// `max(1, t(T))` of them, marking those whose three pairs are edges of `G`.
pub fn search_t(session: &mut OracleSession<'_, Graph>, t: &Graph, safety: f64) -> Result<Option<Triangle>> {
    let g = session.graph();
    let mut total = 0u64;
    let mut marked: Vec<Triangle> = Vec::new();
    let mut scratch = alloc::vec![0u64; t.row_words()];
    for (a, b) in t.edges() {
        total += count_above(t.row(a), t.row(b), b) as u64;
        if g.contains(a, b) {
            for (i, w) in scratch.iter_mut().enumerate() {
                *w = t.row(a)[i] & t.row(b)[i] & g.row(a)[i];
            }
            for c in crate::graph::BitIter::new(&scratch).filter(|&c| c > b && g.contains(b, c)) {
                marked.push((a, b, c));
            }
        }
    }
    let hit = safe_grover_charged(session, "search-T", total.max(1), marked.len() as u64, safety)?;
    Ok(hit.map(|rank| marked[rank as usize]))
}

/// Charge of the amplitude-amplification search for a triangle with an edge in `E`:
/// `⌈√|E|⌉·⌈log₂ n⌉ + ⌈√(n·max(1, |G ∩ E|))⌉·⌈log₂ n⌉`, or zero for `E = ∅`.
pub fn search_e_charge(n: u64, e_size: u64, g_cap_e: u64) -> u64 {
    if e_size == 0 {
        return 0;
    }
    let log = log_factor(n);
    ceil_sqrt(e_size) * log + ceil_sqrt(n * g_cap_e.max(1)) * log
}

/// A triangle of `G` with at least one edge in the known pair set `E`.
///
/// Charged by [`search_e_charge`] and resolved through the reference graph;
/// an existing triangle is reported with probability `1 − 1/n`.
pub fn search_e(session: &mut OracleSession<'_, Graph>, e: &Graph) -> Result<Option<Triangle>> {
    let g = session.graph();
    let n = g.n() as u64;
    let mut overlap = 0u64;
    let mut found = None;
    for (a, b) in e.edges() {
        if g.contains(a, b) {
            overlap += 1;
            if found.is_none() {
                found = g.first_common_neighbor(a, b).map(|c| triangle_of(a, b, c));
            }
        }
    }
    let size = e.edge_count() as u64;
    if size == 0 {
        return Ok(None);
    }
    session.charge("lemma-many", search_e_charge(n, size, overlap));
    if found.is_some() && session.rng().gen_bool(1.0 - 1.0 / n as f64) {
        Ok(found)
    } else {
        Ok(None)
    }
}

/// Re-checks a triple with three direct probes, charged under `verify`.
pub fn verify_triangle(session: &mut OracleSession<'_, Graph>, t: Triangle) -> Result<bool> {
    let (a, b, c) = t;
    let ok = session.query_edge(a, b)? & session.query_edge(a, c)? & session.query_edge(b, c)?;
    session.charge("verify", 3);
    Ok(ok)
}
