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

//! Closed-form recomputation of run ledgers, shared by the integration tests.

#![allow(dead_code)]

use qtri::report::RunReport;
use qtri::runner::Instance;
use qtri_core::collision::{generic_round_charge, generic_rounds, DatabaseModel};
use qtri_core::combinatorial::{hypothesis_probes, hypothesis_rounds, search_e_charge, ComboParams, LEMMA_TRIVI};
use qtri_core::statevector::grover_charge;
use qtri_core::subsets::binomial;
use qtri_core::walk_search::vertex_search_charge;

fn vertex_arg(label: &str, prefix: &str) -> Option<usize> {
    label.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.parse().ok()
}

/// `(r, t)` from `name-rounds(r=R,t=T)`, or `(r, None)` from `name-setup(r=R)`.
fn walk_args(label: &str, db: &str) -> Option<(bool, u64, Option<u64>)> {
    if let Some(rest) = label.strip_prefix(db).and_then(|s| s.strip_prefix("-setup(r=")) {
        return Some((true, rest.strip_suffix(')')?.parse().ok()?, None));
    }
    let rest = label.strip_prefix(db)?.strip_prefix("-rounds(r=")?.strip_suffix(')')?;
    let (r, t) = rest.split_once(",t=")?;
    Some((false, r.parse().ok()?, Some(t.parse().ok()?)))
}

fn diag_u64(report: &RunReport, key: &str) -> Option<u64> {
    report.diagnostics.get(key)?.as_u64()
}

/// Checks every ledger entry of a `combo`, `walk` or `gc` report against the
/// charge formula its label names, and the totals against the entries.
pub fn audit(report: &RunReport, instance: Option<&Instance>, params: &ComboParams) -> Result<(), String> {
    let entries = &report.ledger.entries;
    let sum: u64 = entries.iter().map(|e| e.amount).sum();
    if sum != report.ledger.total || report.ledger.recomputed_total() != report.ledger.total {
        return Err(format!("total {} but entries sum to {sum}", report.ledger.total));
    }
    let cat_sum: u64 = report.ledger.breakdown.iter().map(|c| c.amount).sum();
    if cat_sum != sum {
        return Err(format!("breakdown sums to {cat_sum}, entries to {sum}"));
    }
    let n = report.n as u64;
    let c = params.grover_safety;
    let walk_db = match report.algorithm.as_str() {
        "walk" => Some((DatabaseModel::walk_triangle(), 2)),
        "gc" => Some((DatabaseModel::graph_collision(), 2)),
        _ => None,
    };
    let mut setups = 0u64;
    for e in entries {
        let label = e.label.as_str();
        let expected = if vertex_arg(label, LEMMA_TRIVI).is_some() {
            n - 1
        } else if let Some(v) = vertex_arg(label, &format!("{LEMMA_TRIVI}-search")) {
            let g = instance.and_then(Instance::as_graph).ok_or("combo on a non-graph instance")?;
            let d = g.degree(v) as u64;
            grover_charge(binomial(d, 2).max(1), c)
        } else if vertex_arg(label, "degree-test").is_some() {
            hypothesis_rounds(report.n, params.c0) * hypothesis_probes(report.n, params.delta)
        } else if label == "verify" {
            if report.algorithm == "gc" { 2 } else { 3 }
        } else if label == "search-T" {
            grover_charge(diag_u64(report, "triangles_in_t").ok_or("search-T without t(T)")?.max(1), c)
        } else if label == "lemma-many" {
            let pair = report.diagnostics.get("e_pairs").and_then(|v| v.as_array()).ok_or("lemma-many without e_pairs")?;
            let (size, overlap) = (pair[0].as_u64().unwrap_or(0), pair[1].as_u64().unwrap_or(0));
            search_e_charge(n, size, overlap)
        } else if label == "third-vertex" {
            vertex_search_charge(report.n)
        } else if let Some((db, k)) = &walk_db {
            let (setup, r, t) = walk_args(label, db.name).ok_or_else(|| format!("unknown label {label}"))?;
            if Some(r) != report.params.get("r").and_then(|v| v.as_u64()) {
                return Err(format!("{label}: r differs from the reported r"));
            }
            if setup {
                setups += 1;
                db.setup.charge(n, r)
            } else {
                let t = t.unwrap_or(0);
                if t != generic_rounds(n, *k, r) {
                    return Err(format!("{label}: t should be {}", generic_rounds(n, *k, r)));
                }
                t * generic_round_charge(n, r, db)
            }
        } else {
            return Err(format!("unknown label {label}"));
        };
        if e.amount != expected {
            return Err(format!("{label}: charged {} but the formula gives {expected}", e.amount));
        }
    }
    if walk_db.is_some() && Some(setups) != diag_u64(report, "rounds") {
        return Err(format!("{setups} setup entries for {:?} rounds", diag_u64(report, "rounds")));
    }
    Ok(())
}
