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

//! Oracle access with query accounting.
//!
//! An [`OracleSession`] owns two meters. `exact_queries` counts adjacency
//! probes made in exact mode (one per probe, no exceptions). The
//! [`CostLedger`] records the charged-query cost of quantum subroutines that
//! the cost-model layer resolves classically.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::rng::{seeded, Rng, STREAM_ALGORITHM};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub label: String,
    pub amount: u64,
}

/// Ordered list of charged amounts. Every charge formula is ceilinged, so
/// amounts are integral and totals are exact.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CostLedger {
    entries: Vec<LedgerEntry>,
    total: u64,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, label: impl Into<String>, amount: u64) {
        self.total += amount;
        self.entries.push(LedgerEntry { label: label.into(), amount });
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Totals grouped by label category (the label up to its first `(`),
    /// in order of first appearance: `(category, amount, count)`.
    pub fn breakdown(&self) -> Vec<(String, u64, usize)> {
        let mut out: Vec<(String, u64, usize)> = Vec::new();
        for e in &self.entries {
            let cat = e.label.split('(').next().unwrap_or("");
            match out.iter_mut().find(|(c, _, _)| c == cat) {
                Some(slot) => {
                    slot.1 += e.amount;
                    slot.2 += 1;
                }
                None => out.push((String::from(cat), e.amount, 1)),
            }
        }
        out
    }

    /// Sum of amounts recomputed from the entries.
    pub fn recomputed_total(&self) -> u64 {
        self.entries.iter().map(|e| e.amount).sum()
    }
}

/// A single run's view of the oracle input `I` (a [`Graph`] or a boolean
/// function `[bool]`), its meters and its seeded coin source.
pub struct OracleSession<'a, I: ?Sized = Graph> {
    input: &'a I,
    exact_queries: u64,
    ledger: CostLedger,
    seed: u64,
    rng: Rng,
}

impl<'a, I: ?Sized> OracleSession<'a, I> {
    pub fn new(input: &'a I, seed: u64) -> Self {
        OracleSession {
            input,
            exact_queries: 0,
            ledger: CostLedger::new(),
            seed,
            rng: seeded(seed, STREAM_ALGORITHM),
        }
    }

    /// Reference access to the input. Reading through this never charges.
    pub fn input(&self) -> &'a I {
        self.input
    }

    pub fn exact_queries(&self) -> u64 {
        self.exact_queries
    }

    pub fn ledger(&self) -> &CostLedger {
        &self.ledger
    }

    pub fn into_ledger(self) -> CostLedger {
        self.ledger
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng(&mut self) -> &mut Rng {
        &mut self.rng
    }

    pub fn charge(&mut self, label: impl Into<String>, amount: u64) {
        self.ledger.charge(label, amount);
    }

    /// Fresh meters over the same input, for probing without affecting this session.
    pub fn scratch(&self) -> OracleSession<'a, I> {
        OracleSession::new(self.input, self.seed)
    }

    pub(crate) fn add_exact_queries(&mut self, q: u64) {
        self.exact_queries += q;
    }
}

impl<'a> OracleSession<'a, Graph> {
    pub fn graph(&self) -> &'a Graph {
        self.input
    }

    /// One oracle probe of the pair `{a, b}`.
    pub fn query_edge(&mut self, a: Vertex, b: Vertex) -> Result<bool> {
        self.input.check_pair(a, b)?;
        self.exact_queries += 1;
        Ok(self.input.contains(a, b))
    }
}

impl OracleSession<'_, [bool]> {
    /// One oracle probe of `f(v)` for a boolean input indexed by vertex (index 0 unused).
    pub fn query_bit(&mut self, v: Vertex) -> Result<bool> {
        let n = self.input.len().saturating_sub(1);
        if v == 0 || v > n {
            return Err(crate::Error::VertexOutOfRange { vertex: v, n });
        }
        self.exact_queries += 1;
        Ok(self.input[v])
    }
}
