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

/// Every failure the library can report.
///
/// Node and edge positions carried by the variants are 0-based; the `Display`
/// impl prints them 1-based to match the I/O convention.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree sequence is empty")]
    EmptySequence,
    #[error("node {} has degree 0; hypergraph degrees must be positive", .node + 1)]
    ZeroDegree { node: usize },
    #[error("total degree {total} is not divisible by edge size {k}")]
    IndivisibleTotal { total: u64, k: u64 },
    #[error("maximum degree {d_max} exceeds the number of edges {m}")]
    DegreeExceedsEdges { d_max: u64, m: u64 },
    #[error("edge size {k} is below the minimum of 2")]
    EdgeSizeTooSmall { k: u64 },
    #[error("left degrees sum to {left} but right degrees sum to {right}")]
    DegreeSumMismatch { left: u64, right: u64 },

    #[error("edge {} has {found} nodes, expected {expected}", .edge + 1)]
    WrongEdgeSize {
        edge: usize,
        found: usize,
        expected: usize,
    },
    #[error("edge {} contains node {} more than once", .edge + 1, .node + 1)]
    RepeatedNodeInEdge { edge: usize, node: usize },
    #[error("edges {} and {} are identical", .first + 1, .second + 1)]
    DuplicateEdge { first: usize, second: usize },
    #[error("node {} is out of range for {n} nodes", .node + 1)]
    NodeOutOfRange { node: usize, n: usize },
    #[error("neighbourhood of right node {} is not strictly increasing", .right + 1)]
    UnsortedNeighbourhood { right: usize },
    #[error("graph degrees do not match the declared degree sequence")]
    DegreeMismatch,

    #[error("no bipartite graph realises the degree sequence")]
    NonGraphical,
    #[error("the set of bipartite graphs with these degrees is empty")]
    EmptySpace,
    #[error("enumeration exceeded the limit of {limit} search nodes")]
    TooLarge { limit: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parameters outside the valid region: {0}")]
    InvalidRegion(String),

    #[error("no H-simple sample after {iterations} iterations")]
    Fail { iterations: u64 },
    #[error("no simple configuration after {trials} trials")]
    Exhausted { trials: u64 },

    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
