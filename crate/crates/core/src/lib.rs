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

//! Uniform and near-uniform sampling of simple `k`-uniform hypergraphs with
//! a given degree sequence.
//!
//! A hypergraph is sampled by drawing a bipartite graph with left degrees
//! `d` and right degrees `k` (nodes on the left, edges on the right) and
//! rejecting it unless all right-node neighbourhoods are distinct. Three
//! bipartite samplers are provided: the configuration model, the switch
//! chain, and an exact enumeration-backed sampler for tiny instances.

pub mod bounds;
pub mod config_model;
pub mod error;
pub mod io;
pub mod oracle;
pub mod rejection;
pub mod simplicity;
pub mod stats;
pub mod switch_chain;
pub mod types;
pub mod verify;

pub use error::{Error, Result};
pub use rejection::{hypergraph_sampling, BipartiteSampler, RejectionStats};
pub use simplicity::{is_h_simple, phi};
pub use types::{
    canonicalize, BipartiteDegreeSequence, BipartiteGraph, CanonicalEncoding, Hypergraph,
    HypergraphInstance, RngSeed,
};
