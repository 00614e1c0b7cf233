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

//! Classification of the residual pair set `G′` into `T` (few triangles) and `E`.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::graph::{and_popcount, BitIter, Graph, Triangle, Vertex};
use crate::math::pow;
use crate::session::OracleSession;

use super::steps::{degree_hypothesis, scan_vertex, Degree, Scan};
use super::ComboParams;

/// Output pair sets of a completed classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub t: Graph,
    pub e: Graph,
}

/// How a classification ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classified {
    Partition(Partition),
    /// A high-degree vertex exposed a triangle.
    Triangle(Triangle),
    /// The charged total passed the cap, or a high-degree step made no progress.
    Aborted,
}

/// Step counts of one classification.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ClassifyStats {
    /// `n^{1−ε′}`.
    pub tau: f64,
    pub drained: usize,
    pub low_branches: usize,
    pub high_branches: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub result: Classified,
    pub stats: ClassifyStats,
}

/// `G′` with `t(G′, a, b)` cached for its pairs and a queue of pairs below the threshold.
struct Residual {
    g: Graph,
    n: usize,
    counts: Vec<u16>,
    threshold: u16,
    queue: VecDeque<(u32, u32)>,
    remaining: usize,
}

impl Residual {
    fn new(g: Graph, threshold: u16) -> Self {
        let n = g.n();
        let mut counts = alloc::vec![0u16; n * n];
        let mut queue = VecDeque::new();
        for (a, b) in g.edges() {
            let c = and_popcount(g.row(a), g.row(b)) as u16;
            counts[(a - 1) * n + b - 1] = c;
            if c < threshold {
                queue.push_back((a as u32, b as u32));
            }
        }
        let remaining = g.edge_count();
        Residual { g, n, counts, threshold, queue, remaining }
    }

    fn slot(&self, a: Vertex, b: Vertex) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        (a - 1) * self.n + b - 1
    }

    fn decrement(&mut self, a: Vertex, b: Vertex) {
        let s = self.slot(a, b);
        let old = self.counts[s];
        self.counts[s] = old - 1;
        if old == self.threshold {
            self.queue.push_back((a.min(b) as u32, a.max(b) as u32));
        }
    }

    /// Removes `{a, b}` from `G′`, updating the cached counts of the pairs it closed triangles with.
    fn delete(&mut self, a: Vertex, b: Vertex) -> bool {
        if !self.g.contains(a, b) {
            return false;
        }
        self.g.remove(a, b);
        self.remaining -= 1;
        let common: Vec<Vertex> = {
            let (ra, rb) = (self.g.row(a), self.g.row(b));
            let words: Vec<u64> = ra.iter().zip(rb).map(|(x, y)| x & y).collect();
            BitIter::new(&words).collect()
        };
        for x in common {
            self.decrement(a, x);
            self.decrement(b, x);
        }
        true
    }

    /// Step (a): moves every pair with `t(G′, ·, ·)` below the threshold into `t`.
    fn drain(&mut self, t: &mut Graph) -> usize {
        let mut moved = 0;
        while let Some((a, b)) = self.queue.pop_front() {
            let (a, b) = (a as Vertex, b as Vertex);
            if self.g.contains(a, b) && self.counts[self.slot(a, b)] < self.threshold && self.delete(a, b) {
                t.insert(a, b);
                moved += 1;
            }
        }
        moved
    }
}

/// Splits `G′` into `T` and `E`, or exposes a triangle on the way.
///
/// Repeats until `G′` is empty: drain pairs with `t(G′, v, w) < n^{1−ε′}` into
/// `T`; pick the smallest vertex `v` of nonzero `G′`-degree and test its
/// degree. Low moves all `G′` pairs at `v` into `E`. High reads `ν_G(v)`,
/// stops on an edge of `G` inside it, and otherwise moves
/// `G′(ν_G(v), ν_{G′}(v))` into `E`. The run aborts once the session's
/// charged total exceeds `cap`.
pub fn classify(
    session: &mut OracleSession<'_, Graph>,
    gprime: &Graph,
    params: &ComboParams,
    cap: u64,
) -> Result<Classification> {
    let n = gprime.n();
    if n != session.graph().n() {
        return Err(domain("G′ and G live on different vertex sets"));
    }
    if n > u16::MAX as usize {
        return Err(domain("classification counts are limited to n ≤ 65535"));
    }
    let tau = pow(n as f64, 1.0 - params.epsilon_prime);
    let threshold = libm::ceil(tau).min(u16::MAX as f64) as u16;
    let mut stats = ClassifyStats { tau, ..Default::default() };
    let mut t = Graph::empty(n);
    let mut e = Graph::empty(n);
    let mut res = Residual::new(gprime.clone(), threshold);
    let mut cursor = 1;
    let finish = |result, stats| Ok(Classification { result, stats });
    loop {
        stats.drained += res.drain(&mut t);
        if res.remaining == 0 {
            break;
        }
        while res.g.degree(cursor) == 0 {
            cursor += 1;
        }
        let v = cursor;
        let degree = degree_hypothesis(session, v, params.delta, params.c0)?;
        if degree == Degree::Low {
            stats.low_branches += 1;
            let partners: Vec<Vertex> = res.g.neighbors(v).collect();
            for w in partners {
                res.delete(v, w);
                e.insert(v, w);
            }
        } else {
            stats.high_branches += 1;
            match scan_vertex(session, v, params.grover_safety)? {
                Scan::Triangle(tri) => return finish(Classified::Triangle(tri), stats),
                Scan::Absent(nbhd) => {
                    let residual_nbhd: Vec<u64> = res.g.row(v).to_vec();
                    let mut pairs = Vec::new();
                    for x in nbhd.iter() {
                        let words: Vec<u64> = res.g.row(x).iter().zip(&residual_nbhd).map(|(p, q)| p & q).collect();
                        pairs.extend(BitIter::new(&words).map(|y| (x, y)));
                    }
                    let mut moved = 0;
                    for (x, y) in pairs {
                        if res.delete(x, y) {
                            e.insert(x, y);
                            moved += 1;
                        }
                    }
                    if moved == 0 {
                        return finish(Classified::Aborted, stats);
                    }
                }
            }
        }
        if session.ledger().total() > cap {
            return finish(Classified::Aborted, stats);
        }
    }
    finish(Classified::Partition(Partition { t, e }), stats)
}
