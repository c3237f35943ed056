// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Analysed failures (a colouring that could not be found, a search that ran
/// out of budget) are returned as values by the operations that produce
/// them; this type covers malformed input and violated preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices (edge {edge})")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },

    #[error("edge {0} is empty")]
    EmptyEdge(usize),

    #[error("edge {edge} lists vertex {vertex} more than once")]
    RepeatedVertex { edge: usize, vertex: usize },

    #[error("hypergraph too large: {0}")]
    TooLarge(String),

    #[error("vertex {0} has degree 0, so the dual would contain an empty edge")]
    IsolatedVertex(usize),

    #[error("edge {0} misses the restriction set")]
    RestrictionMisses(usize),

    #[error("colouring covers {got} edges but the hypergraph has {expected}")]
    ColouringSize { expected: usize, got: usize },

    #[error("list assignment covers {got} edges but the hypergraph has {expected}")]
    ListSize { expected: usize, got: usize },

    #[error("invalid edge ordering: {0}")]
    InvalidOrdering(String),

    #[error("edge id {0} out of range")]
    EdgeOutOfRange(usize),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported plane order {q}; supported orders are {supported:?}")]
    UnsupportedOrder { q: u32, supported: &'static [u32] },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
