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

//! Instances and the algorithm dispatcher shared by `run` and `sweep`.

use std::collections::BTreeMap;
use std::fmt;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use qtri_core::combinatorial::{combinatorial_triangle, ComboParams};
use qtri_core::generate::{gen_graph, graph_collision_instance, Family, GraphCollisionInstance};
use qtri_core::walk_search::{graph_collision, h_copy, monotone_property, walk_triangle, HPattern};
use qtri_core::{Graph, OracleSession};
use serde_json::{json, Value};

use crate::edgelist::{write_gc_instance, write_graph};
use crate::report::{run_id, sha256_hex, InstanceInfo, LedgerReport, Outcome, RunReport, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum)]
pub enum Algorithm {
    /// Combinatorial triangle finding.
    Combo,
    /// Walk-based triangle finding.
    Walk,
    /// Graph Collision on a known sparse graph.
    Gc,
    /// Copy of a pattern graph.
    Hcopy,
    /// Monotone property given by certificate patterns.
    Monotone,
    /// Classical reference triangle search (no charges).
    Brute,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Combo => "combo",
            Algorithm::Walk => "walk",
            Algorithm::Gc => "gc",
            Algorithm::Hcopy => "hcopy",
            Algorithm::Monotone => "monotone",
            Algorithm::Brute => "brute",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        <Self as ValueEnum>::from_str(s, true).ok()
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How to generate an instance of a given size and seed.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSpec {
    Graph(Family),
    GraphCollision { avg_degree: f64, ones_fraction: f64, with_collision: bool },
}

impl InstanceSpec {
    /// Parses a family name (`er`, `planted`, `bipartite`, `c5`, `complete`, `gc`, `gc-none`)
    /// with its density `p`.
    pub fn parse(name: &str, p: f64) -> Result<Self> {
        Ok(match name {
            "er" | "erdos-renyi" => InstanceSpec::Graph(Family::ErdosRenyi { p }),
            "planted" | "planted-triangle" => InstanceSpec::Graph(Family::PlantedTriangle { p }),
            "bipartite" => InstanceSpec::Graph(Family::TriangleFreeBipartite { p }),
            "c5" | "cycle-blowup" => InstanceSpec::Graph(Family::CycleBlowup { p }),
            "complete" => InstanceSpec::Graph(Family::Complete),
            "gc" => InstanceSpec::GraphCollision { avg_degree: 3.0, ones_fraction: p, with_collision: true },
            "gc-none" => InstanceSpec::GraphCollision { avg_degree: 3.0, ones_fraction: p, with_collision: false },
            other => bail!("unknown family `{other}`"),
        })
    }

    pub fn generate(&self, n: usize, seed: u64) -> Result<Instance> {
        Ok(match self {
            InstanceSpec::Graph(family) => Instance::graph(gen_graph(*family, n, seed)?, family.name()),
            InstanceSpec::GraphCollision { avg_degree, ones_fraction, with_collision } => {
                let inst = graph_collision_instance(n, *avg_degree, *ones_fraction, *with_collision, seed)?;
                let label = if *with_collision { "graph-collision" } else { "graph-collision-none" };
                Instance::collision(inst, label)
            }
        })
    }
}

/// A concrete input together with a family label and fingerprint.
#[derive(Clone, Debug)]
pub enum Instance {
    Graph { graph: Graph, info: InstanceInfo },
    Collision { inst: GraphCollisionInstance, info: InstanceInfo },
}

impl Instance {
    pub fn graph(graph: Graph, family: &str) -> Self {
        let fingerprint = sha256_hex(write_graph(&graph).as_bytes());
        Instance::Graph { graph, info: InstanceInfo { family: family.into(), fingerprint } }
    }

    pub fn collision(inst: GraphCollisionInstance, family: &str) -> Self {
        let fingerprint = sha256_hex(write_gc_instance(&inst).as_bytes());
        Instance::Collision { inst, info: InstanceInfo { family: family.into(), fingerprint } }
    }

    pub fn n(&self) -> usize {
        match self {
            Instance::Graph { graph, .. } => graph.n(),
            Instance::Collision { inst, .. } => inst.known.n(),
        }
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            Instance::Graph { graph, .. } => Some(graph),
            Instance::Collision { .. } => None,
        }
    }

    pub fn info(&self) -> &InstanceInfo {
        match self {
            Instance::Graph { info, .. } | Instance::Collision { info, .. } => info,
        }
    }
}

/// Algorithm knobs that are not part of the instance.
#[derive(Clone, Debug, Default)]
pub struct RunParams {
    pub combo: ComboParams,
    /// Pattern for `hcopy`, certificates for `monotone`.
    pub patterns: Vec<HPattern>,
}

fn triangle_witness(t: (usize, usize, usize)) -> Outcome {
    Outcome::witness(vec![t.0, t.1, t.2])
}

/// Runs one algorithm on one instance with a fresh session seeded by `seed`.
pub fn run_algorithm(alg: Algorithm, instance: &Instance, seed: u64, params: &RunParams) -> Result<RunReport> {
    let mut p: BTreeMap<String, Value> = BTreeMap::new();
    let mut diag: BTreeMap<String, Value> = BTreeMap::new();
    let (outcome, ledger, exact_queries) = match (alg, instance) {
        (Algorithm::Gc, Instance::Collision { inst, .. }) => {
            let mut s = OracleSession::new(&inst.f[..], seed);
            let run = graph_collision(&mut s, &inst.known)?;
            p.insert("r".into(), json!(run.r));
            diag.insert("rounds".into(), json!(run.rounds));
            let outcome = run.witness.map_or_else(Outcome::reject, |(a, b)| Outcome::witness(vec![a, b]));
            (outcome, LedgerReport::from(s.ledger()), s.exact_queries())
        }
        (Algorithm::Gc, Instance::Graph { .. }) => bail!("gc needs a graph-collision instance"),
        (_, Instance::Collision { .. }) => bail!("{alg} needs a graph instance"),
        (_, Instance::Graph { graph, .. }) => {
            let mut s = OracleSession::new(graph, seed);
            let outcome = match alg {
                Algorithm::Combo => {
                    let c = &params.combo;
                    let run = combinatorial_triangle(&mut s, c)?;
                    p.insert("epsilon".into(), json!(c.epsilon));
                    p.insert("delta".into(), json!(c.delta));
                    p.insert("epsilon_prime".into(), json!(c.epsilon_prime));
                    p.insert("c0".into(), json!(c.c0));
                    p.insert("grover_safety".into(), json!(c.grover_safety));
                    p.insert("threshold_cap".into(), json!(run.cap));
                    diag.insert("stage".into(), json!(run.stage.name()));
                    diag.insert("sample_size".into(), json!(run.sample_size));
                    diag.insert("gprime_pairs".into(), json!(run.gprime_pairs));
                    diag.insert("triangles_in_t".into(), json!(run.triangles_in_t));
                    diag.insert("e_pairs".into(), json!(run.e_pairs));
                    if let Some(cs) = &run.classification {
                        diag.insert("tau".into(), json!(cs.tau));
                        diag.insert("drained".into(), json!(cs.drained));
                        diag.insert("low_branches".into(), json!(cs.low_branches));
                        diag.insert("high_branches".into(), json!(cs.high_branches));
                    }
                    run.triangle.map_or_else(Outcome::reject, triangle_witness)
                }
                Algorithm::Walk => {
                    let run = walk_triangle(&mut s)?;
                    p.insert("r".into(), json!(run.r));
                    diag.insert("rounds".into(), json!(run.rounds));
                    run.witness.map_or_else(Outcome::reject, triangle_witness)
                }
                Algorithm::Hcopy => {
                    let [pattern] = &params.patterns[..] else {
                        bail!("hcopy needs exactly one pattern");
                    };
                    let run = h_copy(&mut s, pattern)?;
                    p.insert("r".into(), json!(run.r));
                    p.insert("k".into(), json!(pattern.k()));
                    p.insert("d".into(), json!(pattern.d()));
                    diag.insert("rounds".into(), json!(run.rounds));
                    run.witness.map_or_else(Outcome::reject, Outcome::witness)
                }
                Algorithm::Monotone => {
                    let run = monotone_property(&mut s, &params.patterns).context("monotone property")?;
                    p.insert("certificates".into(), json!(params.patterns.len()));
                    diag.insert("per_certificate".into(), json!(run.per_certificate));
                    if let Some((i, _)) = &run.witness {
                        diag.insert("certificate".into(), json!(i));
                    }
                    run.witness.map_or_else(Outcome::reject, |(_, m)| Outcome::witness(m))
                }
                Algorithm::Brute => graph.brute_find_triangle().map_or_else(Outcome::reject, triangle_witness),
                Algorithm::Gc => unreachable!(),
            };
            (outcome, LedgerReport::from(s.ledger()), s.exact_queries())
        }
    };
    let info = instance.info().clone();
    let n = instance.n();
    Ok(RunReport {
        schema: SCHEMA_VERSION,
        run_id: run_id(alg.name(), n, seed, &info.fingerprint),
        algorithm: alg.name().into(),
        n,
        seed,
        instance: info,
        params: p,
        outcome,
        ledger,
        exact_queries,
        wall_time_ms: None,
        diagnostics: diag,
    })
}
