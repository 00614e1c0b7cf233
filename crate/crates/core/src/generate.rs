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

//! Seeded benchmark instance generators.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{domain, Result};
use crate::graph::{check_size, Graph, SparseGraph, Vertex};
use crate::rng::{seeded, Rng, STREAM_INSTANCE};

/// Instance families. Every family is a pure function of `(family, n, seed)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// Each pair is an edge independently with probability `p`.
    ErdosRenyi { p: f64 },
    /// `ErdosRenyi { p }` with one uniformly random triple forced to be a triangle.
    PlantedTriangle { p: f64 },
    /// Random balanced bipartition, cross pairs kept with probability `p`.
    TriangleFreeBipartite { p: f64 },
    /// Random balanced split into five classes arranged on a 5-cycle; pairs in
    /// cyclically adjacent classes kept with probability `p`. Triangle-free and,
    /// for dense enough `p`, not bipartite.
    CycleBlowup { p: f64 },
    Complete,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ErdosRenyi { .. } => "erdos_renyi",
            Family::PlantedTriangle { .. } => "planted_triangle",
            Family::TriangleFreeBipartite { .. } => "triangle_free_bipartite",
            Family::CycleBlowup { .. } => "cycle_blowup",
            Family::Complete => "complete",
        }
    }

    pub fn density(&self) -> Option<f64> {
        match *self {
            Family::ErdosRenyi { p }
            | Family::PlantedTriangle { p }
            | Family::TriangleFreeBipartite { p }
            | Family::CycleBlowup { p } => Some(p),
            Family::Complete => None,
        }
    }

    /// Families that can never contain a triangle.
    pub fn is_triangle_free(&self) -> bool {
        matches!(self, Family::TriangleFreeBipartite { .. } | Family::CycleBlowup { .. })
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(domain(alloc::format!("edge probability {p} outside [0, 1]")))
    }
}

pub fn gen_graph(family: Family, n: usize, seed: u64) -> Result<Graph> {
    check_size(n, 3)?;
    if let Some(p) = family.density() {
        check_p(p)?;
    }
    let mut rng = seeded(seed, STREAM_INSTANCE);
    let g = match family {
        Family::Complete => Graph::complete(n),
        Family::ErdosRenyi { p } => erdos_renyi(n, p, &mut rng),
        Family::PlantedTriangle { p } => {
            let mut g = erdos_renyi(n, p, &mut rng);
            let triple = rand::seq::index::sample(&mut rng, n, 3);
            let (a, b, c) = (triple.index(0) + 1, triple.index(1) + 1, triple.index(2) + 1);
            g.insert(a, b);
            g.insert(b, c);
            g.insert(a, c);
            g
        }
        Family::TriangleFreeBipartite { p } => {
            let class = balanced_classes(n, 2, &mut rng);
            class_graph(n, p, &class, |x, y| x != y, &mut rng)
        }
        Family::CycleBlowup { p } => {
            let class = balanced_classes(n, 5, &mut rng);
            class_graph(n, p, &class, |x, y| (x + 1) % 5 == y || (y + 1) % 5 == x, &mut rng)
        }
    };
    Ok(g)
}

fn erdos_renyi(n: usize, p: f64, rng: &mut Rng) -> Graph {
    let mut g = Graph::empty(n);
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.gen_bool(p) {
                g.insert(a, b);
            }
        }
    }
    g
}

/// `class[v]` for `v ∈ [n]` (index 0 unused), sizes differing by at most one.
fn balanced_classes(n: usize, classes: usize, rng: &mut Rng) -> Vec<usize> {
    let mut order: Vec<Vertex> = (1..=n).collect();
    order.shuffle(rng);
    let mut class = vec![0; n + 1];
    for (i, v) in order.into_iter().enumerate() {
        class[v] = i % classes;
    }
    class
}

fn class_graph(
    n: usize,
    p: f64,
    class: &[usize],
    joined: impl Fn(usize, usize) -> bool,
    rng: &mut Rng,
) -> Graph {
    let mut g = Graph::empty(n);
    for a in 1..=n {
        for b in a + 1..=n {
            if joined(class[a], class[b]) && rng.gen_bool(p) {
                g.insert(a, b);
            }
        }
    }
    g
}

/// A Graph Collision instance: a sparse known graph plus the oracle bits `f`.
#[derive(Clone, Debug)]
pub struct GraphCollisionInstance {
    pub known: SparseGraph,
    /// `f[v]` for `v ∈ [n]`; index 0 is unused and always `false`.
    pub f: Vec<bool>,
}

/// Random sparse known graph with about `avg_degree · n / 2` edges and an oracle
/// `f` whose 1-vertices span exactly one edge of it (`|𝒞| = 1`), or none when
/// `with_collision` is false. Roughly a `ones_fraction` share of vertices get `f = 1`.
pub fn graph_collision_instance(
    n: usize,
    avg_degree: f64,
    ones_fraction: f64,
    with_collision: bool,
    seed: u64,
) -> Result<GraphCollisionInstance> {
    check_size(n, 3)?;
    check_p(ones_fraction)?;
    if avg_degree.is_nan() || avg_degree <= 0.0 {
        return Err(domain("average degree must be positive"));
    }
    let mut rng = seeded(seed, STREAM_INSTANCE);
    let mut known = SparseGraph::empty(n);
    let target = libm::round(avg_degree * n as f64 / 2.0) as usize;
    let max_edges = n * (n - 1) / 2;
    while known.edge_count() < target.min(max_edges).max(1) {
        let a = rng.gen_range(1..=n);
        let b = rng.gen_range(1..=n);
        if a != b {
            known.add_edge(a, b)?;
        }
    }
    let mut f = vec![false; n + 1];
    let mut order: Vec<Vertex> = (1..=n).collect();
    order.shuffle(&mut rng);
    if with_collision {
        let edges: Vec<(Vertex, Vertex)> = known.edges().collect();
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        f[a] = true;
        f[b] = true;
    }
    let quota = libm::round(ones_fraction * n as f64) as usize;
    let mut ones = f.iter().filter(|&&x| x).count();
    for v in order {
        if ones >= quota {
            break;
        }
        if f[v] || known.neighbors(v).iter().any(|&w| f[w]) {
            continue;
        }
        f[v] = true;
        ones += 1;
    }
    Ok(GraphCollisionInstance { known, f })
}

/// The collisions of a Graph Collision instance: known edges with both ends at `f = 1`.
pub fn graph_collisions(known: &SparseGraph, f: &[bool]) -> Vec<(Vertex, Vertex)> {
    known.edges().filter(|&(a, b)| f[a] && f[b]).collect()
}
