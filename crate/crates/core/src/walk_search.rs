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

//! Walk-based searches in the cost model: graph collision, triangle finding,
//! copies of small patterns, and monotone properties given by their certificates.

use alloc::format;
use alloc::vec::Vec;
use rand::Rng as _;

use crate::collision::{pair_of, solve_collision, CollisionSet, DatabaseModel};
use crate::error::{domain, Error, Result};
use crate::graph::{check_size, triangle_of, Graph, SparseGraph, Triangle, Vertex, MAX_PATTERN_VERTICES};
use crate::math::{ceil_sqrt, ceil_u64, pow};
use crate::rng::mix64;
use crate::session::OracleSession;
use crate::statevector::log_factor;

/// `⌈n^e⌉` clamped to a legal set size `1 ≤ r < n`.
pub fn set_size(n: usize, e: f64) -> u64 {
    ceil_u64(pow(n as f64, e)).clamp(1, n as u64 - 1)
}

/// Charge of a Grover search over the `n` vertices, `⌈√n⌉·⌈log₂ n⌉`.
pub fn vertex_search_charge(n: usize) -> u64 {
    ceil_sqrt(n as u64) * log_factor(n as u64)
}

/// Failure probability of the amplified inner search, `n^{-3}`.
pub fn inner_failure(n: usize) -> f64 {
    pow(n as f64, -3.0)
}

/// Outcome of a walk-based search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRun<W> {
    pub witness: Option<W>,
    /// Set size `r` of the walk.
    pub r: u64,
    /// Restricted collision rounds executed.
    pub rounds: usize,
}

/// Finds an edge of the known graph whose endpoints both have `f = 1`.
///
/// The session's input is `f`, indexed by vertex with slot 0 unused. Runs the
/// collision framework with `r = ⌈n^{2/3}⌉` and `s = r`, `u = 1`, `c = 0`; the
/// returned pair is re-checked with two probes of `f`.
pub fn graph_collision(
    session: &mut OracleSession<'_, [bool]>,
    known: &SparseGraph,
) -> Result<WalkRun<(Vertex, Vertex)>> {
    let n = known.n();
    if session.input().len() != n + 1 {
        return Err(domain("f must have one entry per vertex plus the unused slot 0"));
    }
    check_size(n, 2)?;
    let r = set_size(n, 2.0 / 3.0);
    let set = CollisionSet::graph_collision(known, session.input());
    let seed = session.rng().gen();
    let out = solve_collision(session, &set, &DatabaseModel::graph_collision(), r, seed)?;
    let mut witness = None;
    if let Some(t) = out.witness {
        let (a, b) = pair_of(&t);
        let ok = session.query_bit(a)? & session.query_bit(b)? && known.contains(a, b);
        session.charge("verify", 2);
        if ok {
            witness = Some((a, b));
        }
    }
    Ok(WalkRun { witness, r, rounds: out.rounds })
}

/// Triangle finding through the collision framework on pairs of vertices.
///
/// A pair collides when it is an edge lying in some triangle. The database on
/// `U` is `G|_U` with `s = r²`, `u = r`, and the checking procedure (a Grover
/// search over the outside vertex wrapped around a graph collision on `G|_U`)
/// is charged `⌈√n⌉·⌈r^{2/3}⌉·⌈log₂ n⌉` and resolved classically. The small
/// error of that inner search is a single Bernoulli draw with failure [`inner_failure`].
/// After the edge is known, the third vertex costs one more vertex search.
pub fn walk_triangle(session: &mut OracleSession<'_, Graph>) -> Result<WalkRun<Triangle>> {
    let g = session.graph();
    let n = g.n();
    check_size(n, 3)?;
    let r = set_size(n, 3.0 / 5.0);
    let set = CollisionSet::triangle_edges(g);
    let seed = session.rng().gen();
    let out = solve_collision(session, &set, &DatabaseModel::walk_triangle(), r, seed)?;
    let inner_ok = session.rng().gen_bool(1.0 - inner_failure(n));
    let mut witness = None;
    if let (Some(t), true) = (out.witness, inner_ok) {
        let (a, b) = pair_of(&t);
        session.charge("third-vertex", vertex_search_charge(n));
        if let Some(c) = g.first_common_neighbor(a, b) {
            let tri = triangle_of(a, b, c);
            if crate::combinatorial::verify_triangle(session, tri)? {
                witness = Some(tri);
            }
        }
    }
    Ok(WalkRun { witness, r, rounds: out.rounds })
}

/// A pattern graph `H` on `k` vertices with a distinguished vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPattern {
    h: Graph,
    root: Vertex,
}

impl HPattern {
    /// Requires `3 < k ≤ 8` and a distinguished vertex of degree at least one.
    pub fn new(h: Graph, root: Vertex) -> Result<Self> {
        let k = h.n();
        if k > MAX_PATTERN_VERTICES {
            return Err(Error::PatternTooLarge { k, max: MAX_PATTERN_VERTICES });
        }
        if k <= 3 {
            return Err(domain("patterns need more than three vertices"));
        }
        h.check_vertex(root)?;
        if h.degree(root) == 0 {
            return Err(domain("the distinguished vertex must have an edge"));
        }
        Ok(HPattern { h, root })
    }

    pub fn graph(&self) -> &Graph {
        &self.h
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn k(&self) -> usize {
        self.h.n()
    }

    /// Degree `d` of the distinguished vertex.
    pub fn d(&self) -> usize {
        self.h.degree(self.root)
    }
}

/// `H`-candidates of `g`: the `(k−1)`-sets `K` onto which `H` minus its root
/// maps so that some outside vertex completes a copy with the root on it.
pub fn h_candidates(g: &Graph, pattern: &HPattern) -> Result<CollisionSet> {
    let mut tuples = Vec::new();
    for v in 1..=g.n() {
        g.for_each_copy(&pattern.h, Some((pattern.root, v)), None, |m| {
            let others: Vec<u32> =
                m.iter().enumerate().filter(|&(i, _)| i + 1 != pattern.root).map(|(_, &w)| w as u32).collect();
            tuples.push(others);
            true
        })?;
    }
    CollisionSet::from_tuples(g.n() as u64, pattern.k() - 1, tuples)
}

/// A copy of `H` in `G` as the image of each pattern vertex, found by a
/// `(k−1)`-collision over `H`-candidates.
///
/// `r = ⌈n^{1−1/k}⌉`, `s = r²`, `u = r`, checking charged
/// `⌈√n⌉·⌈r^{d/(d+1)}⌉·⌈log₂ n⌉`. The completing vertex costs one vertex
/// search, and the copy is re-checked with one probe per pattern edge.
pub fn h_copy(session: &mut OracleSession<'_, Graph>, pattern: &HPattern) -> Result<WalkRun<Vec<Vertex>>> {
    let g = session.graph();
    let n = g.n();
    let k = pattern.k();
    if n < k {
        return Err(domain("the input graph is smaller than the pattern"));
    }
    let r = set_size(n, 1.0 - 1.0 / k as f64);
    let set = h_candidates(g, pattern)?;
    let seed = session.rng().gen();
    let db = DatabaseModel::h_copy(pattern.d() as u32);
    let out = solve_collision(session, &set, &db, r, seed)?;
    let inner_ok = session.rng().gen_bool(1.0 - inner_failure(n));
    let mut witness = None;
    if let (Some(cand), true) = (out.witness, inner_ok) {
        session.charge("extension", vertex_search_charge(n));
        let mut allowed: Vec<Vertex> = cand.iter().map(|&x| x as Vertex).collect();
        let outside: Vec<Vertex> = (1..=n).filter(|v| !allowed.contains(v)).collect();
        let mut mapping = None;
        for v in outside {
            allowed.push(v);
            mapping = g.find_copy(&pattern.h, Some((pattern.root, v)), Some(&allowed))?;
            allowed.pop();
            if mapping.is_some() {
                break;
            }
        }
        if let Some(m) = mapping {
            if verify_copy(session, &pattern.h, &m)? {
                witness = Some(m);
            }
        }
    }
    Ok(WalkRun { witness, r, rounds: out.rounds })
}

/// Probes every image of a pattern edge, charged under `verify`.
pub fn verify_copy(session: &mut OracleSession<'_, Graph>, h: &Graph, mapping: &[Vertex]) -> Result<bool> {
    let mut ok = mapping.len() == h.n();
    let mut probes = 0;
    if ok {
        for (a, b) in h.edges() {
            ok &= session.query_edge(mapping[a - 1], mapping[b - 1])?;
            probes += 1;
        }
    }
    session.charge("verify", probes);
    Ok(ok)
}

/// Seed of the sub-run for certificate `index` in [`monotone_property`].
pub fn certificate_seed(seed: u64, index: usize) -> u64 {
    mix64(seed ^ mix64(index as u64 + 1))
}

/// Result of [`monotone_property`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneRun {
    /// Index of the certificate found and its copy.
    pub witness: Option<(usize, Vec<Vertex>)>,
    /// Charged total of each certificate run attempted, in order.
    pub per_certificate: Vec<u64>,
}

/// Tests a monotone property through its 1-certificates: runs [`h_copy`] for
/// each in turn, stopping at the first copy.
///
/// Certificate `i` runs on its own session seeded by [`certificate_seed`], and
/// its ledger entries are copied into `session` under the prefix `cert{i}/`.
pub fn monotone_property(session: &mut OracleSession<'_, Graph>, certificates: &[HPattern]) -> Result<MonotoneRun> {
    if certificates.is_empty() {
        return Err(domain("a monotone property needs at least one certificate"));
    }
    let mut per_certificate = Vec::new();
    for (i, cert) in certificates.iter().enumerate() {
        let mut sub = OracleSession::new(session.graph(), certificate_seed(session.seed(), i));
        let out = h_copy(&mut sub, cert)?;
        for entry in sub.ledger().entries() {
            session.charge(format!("cert{i}/{}", entry.label), entry.amount);
        }
        session.add_exact_queries(sub.exact_queries());
        per_certificate.push(sub.ledger().total());
        if let Some(m) = out.witness {
            return Ok(MonotoneRun { witness: Some((i, m)), per_certificate });
        }
    }
    Ok(MonotoneRun { witness: None, per_certificate })
}
