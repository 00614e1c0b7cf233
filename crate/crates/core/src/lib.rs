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

//! Quantum triangle-finding laboratory core.
//!
//! Two layers live here. The *exact* layer simulates amplitudes: diffusion,
//! Grover iterations, Safe Grover Search and the set walk over `(A, x)` pairs
//! with the generic collision algorithm on top of it. The *cost-model* layer
//! runs the full combinatorial and walk-based triangle algorithms on large
//! graphs, resolving every quantum subroutine classically and charging its
//! query cost to a ledger.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and the
//! command-line harness live in the companion `qtri` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod collision;
pub mod combinatorial;
mod error;
pub mod generate;
pub mod graph;
pub mod math;
pub mod rng;
pub mod session;
pub mod statevector;
pub mod subsets;
pub mod walk;
pub mod walk_search;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use session::{CostLedger, LedgerEntry, OracleSession};
