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

//! Text formats. Everything here is 1-based.
//!
//! Degree-sequence files are either JSON, `{"d": [2, 2, 2], "k": 3}`, or
//! plain text with `k` on the first line and the whitespace-separated degrees
//! on the second. Hypergraphs are written one edge per line.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{canonicalize, BipartiteGraph, Hypergraph, HypergraphInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeFile {
    pub d: Vec<usize>,
    pub k: usize,
}

impl DegreeFile {
    pub fn into_instance(self) -> Result<HypergraphInstance> {
        HypergraphInstance::new(self.d, self.k)
    }
}

pub fn parse_degree_file(text: &str) -> Result<DegreeFile> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()));
    }
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let k_line = lines
        .next()
        .ok_or_else(|| Error::Parse("missing edge size line".into()))?;
    let k = k_line
        .parse()
        .map_err(|_| Error::Parse(format!("bad edge size {k_line:?}")))?;
    let d_line = lines
        .next()
        .ok_or_else(|| Error::Parse("missing degree line".into()))?;
    let d = d_line
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad degree {t:?}")))
        })
        .collect::<Result<Vec<usize>>>()?;
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after degree line".into()));
    }
    Ok(DegreeFile { d, k })
}

pub fn read_instance(path: &Path) -> Result<HypergraphInstance> {
    let text = std::fs::read_to_string(path)?;
    parse_degree_file(&text)?.into_instance()
}

/// Inverse of the `Display` impl of [`Hypergraph`].
pub fn parse_hypergraph(n: usize, k: usize, text: &str) -> Result<Hypergraph> {
    let mut raw = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let edge = line
            .split_whitespace()
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::Parse(format!("bad node id {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        raw.push(edge);
    }
    canonicalize(n, k, raw)
}

#[derive(Serialize)]
struct HypergraphJson<'a> {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<&'a u64>,
}

/// One JSON object per hypergraph: `{"n":..,"k":..,"edges":[[1,2,3],..]}`.
pub fn hypergraph_json(h: &Hypergraph, iterations: Option<&u64>) -> String {
    let edges = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|v| v + 1).collect())
        .collect();
    serde_json::to_string(&HypergraphJson {
        n: h.n(),
        k: h.k(),
        edges,
        iterations,
    })
    .expect("plain data serialises")
}

/// `--list` line: right-node neighbourhoods as id groups separated by `|`.
pub fn bipartite_list_line(g: &BipartiteGraph) -> String {
    use crate::types::CanonicalEncoding;
    g.encoding()
}
