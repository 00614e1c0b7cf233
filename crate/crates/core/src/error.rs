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

use alloc::string::String;

/// Errors raised by the simulators and the cost-model algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} is outside [1, {n}]")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}; graphs are simple")]
    SelfLoop(usize),
    #[error("index {index} is outside a basis of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("{0}")]
    Domain(String),
    #[error("pattern has {k} vertices, at most {max} are supported")]
    PatternTooLarge { k: usize, max: usize },
    #[error("unique-collision promise violated: {count} collisions in the effective relation")]
    PromiseViolated { count: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
