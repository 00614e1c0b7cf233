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

//! Machine-readable run reports.

use std::collections::BTreeMap;

use qtri_core::CostLedger;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Version of the JSON layout below.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub run_id: String,
    pub algorithm: String,
    pub n: usize,
    pub seed: u64,
    pub instance: InstanceInfo,
    pub params: BTreeMap<String, Value>,
    pub outcome: Outcome,
    pub ledger: LedgerReport,
    pub exact_queries: u64,
    /// Only filled in when timing is requested, so that reports stay byte-identical.
    pub wall_time_ms: Option<u64>,
    pub diagnostics: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceInfo {
    pub family: String,
    /// SHA-256 of the instance in its file format, hex encoded.
    pub fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    /// `"witness"` or `"reject"`.
    pub result: String,
    pub witness: Option<Vec<usize>>,
}

impl Outcome {
    pub fn witness(w: Vec<usize>) -> Self {
        Outcome { result: "witness".into(), witness: Some(w) }
    }

    pub fn reject() -> Self {
        Outcome { result: "reject".into(), witness: None }
    }

    pub fn is_witness(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerReport {
    pub entries: Vec<Entry>,
    pub breakdown: Vec<Category>,
    pub total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub label: String,
    pub amount: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Category {
    pub category: String,
    pub amount: u64,
    pub count: usize,
}

impl From<&CostLedger> for LedgerReport {
    fn from(ledger: &CostLedger) -> Self {
        LedgerReport {
            entries: ledger.entries().iter().map(|e| Entry { label: e.label.clone(), amount: e.amount }).collect(),
            breakdown: ledger
                .breakdown()
                .into_iter()
                .map(|(category, amount, count)| Category { category, amount, count })
                .collect(),
            total: ledger.total(),
        }
    }
}

impl LedgerReport {
    /// Sum of the entries, to compare against `total`.
    pub fn recomputed_total(&self) -> u64 {
        self.entries.iter().map(|e| e.amount).sum()
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Stable identifier of a run: a hash of algorithm, size, seed and instance fingerprint.
pub fn run_id(algorithm: &str, n: usize, seed: u64, fingerprint: &str) -> String {
    sha256_hex(format!("{algorithm}\n{n}\n{seed}\n{fingerprint}").as_bytes())[..16].to_string()
}

/// Pretty JSON with a trailing newline.
pub fn to_json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hashing_is_stable() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(run_id("walk", 8, 1, "x"), run_id("walk", 8, 1, "x"));
        assert_ne!(run_id("walk", 8, 1, "x"), run_id("walk", 8, 2, "x"));
    }

    #[test]
    fn ledger_conversion() {
        let mut l = CostLedger::new();
        l.charge("a(1)", 3);
        l.charge("a(2)", 4);
        l.charge("b", 1);
        let r = LedgerReport::from(&l);
        assert_eq!(r.total, 8);
        assert_eq!(r.recomputed_total(), 8);
        assert_eq!(r.breakdown[0], Category { category: "a".into(), amount: 7, count: 2 });
    }
}
