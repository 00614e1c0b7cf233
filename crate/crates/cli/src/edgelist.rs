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

//! Edge-list files.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! n m
//! a b        (m lines, 1 ≤ a < b ≤ n)
//! ```
//!
//! Pattern files add one `root v` line naming the distinguished vertex.
//! Graph Collision instances add one `ones v1 v2 …` line listing the vertices with `f = 1`.

use std::fmt::Write as _;

use qtri_core::generate::GraphCollisionInstance;
use qtri_core::graph::SparseGraph;
use qtri_core::walk_search::HPattern;
use qtri_core::{Graph, Vertex};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Header, edges and any trailing keyword lines of an edge-list file.
struct Parsed {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    extras: Vec<(usize, String, Vec<String>)>,
}

fn parse(text: &str, keywords: &[&str]) -> Result<Parsed, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `n m` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(err(hline, "header must be `n m`"));
    }
    let number = |s: &str, line: usize| s.parse::<usize>().map_err(|_| err(line, format!("`{s}` is not a count")));
    let n = number(fields[0], hline)?;
    let m = number(fields[1], hline)?;
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut extras = Vec::new();
    for (line, body) in lines {
        let fields: Vec<&str> = body.split_whitespace().collect();
        if keywords.contains(&fields[0]) {
            extras.push((line, fields[0].to_string(), fields[1..].iter().map(|s| s.to_string()).collect()));
            continue;
        }
        if !extras.is_empty() {
            return Err(err(line, "edge after keyword lines"));
        }
        if fields.len() != 2 {
            return Err(err(line, "edge lines hold exactly two vertices"));
        }
        let a = number(fields[0], line)?;
        let b = number(fields[1], line)?;
        if a == b {
            return Err(err(line, format!("self-loop at vertex {a}")));
        }
        if a == 0 || b == 0 || a > n || b > n {
            return Err(err(line, format!("vertex out of range 1..={n}")));
        }
        if a > b {
            return Err(err(line, "edges must be written with a < b"));
        }
        if !seen.insert((a, b)) {
            return Err(err(line, format!("duplicate edge {a} {b}")));
        }
        edges.push((a, b));
    }
    if edges.len() != m {
        return Err(err(hline, format!("header announces {m} edges, found {}", edges.len())));
    }
    Ok(Parsed { n, edges, extras })
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let p = parse(text, &[])?;
    Ok(Graph::from_edges(p.n, &p.edges).expect("edges validated"))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (a, b) in g.edges() {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

pub fn parse_pattern(text: &str) -> Result<HPattern, ParseError> {
    let p = parse(text, &["root"])?;
    let last = p.extras.last().map_or(text.lines().count().max(1), |e| e.0);
    let [(line, _, args)] = &p.extras[..] else {
        return Err(err(last, "pattern files need exactly one `root v` line"));
    };
    let [v] = &args[..] else {
        return Err(err(*line, "`root` takes one vertex"));
    };
    let root = v.parse::<usize>().map_err(|_| err(*line, format!("`{v}` is not a vertex")))?;
    let h = Graph::from_edges(p.n, &p.edges).expect("edges validated");
    HPattern::new(h, root).map_err(|e| err(*line, e.to_string()))
}

pub fn write_pattern(p: &HPattern) -> String {
    let mut out = write_graph(p.graph());
    writeln!(out, "root {}", p.root()).unwrap();
    out
}

pub fn parse_gc_instance(text: &str) -> Result<GraphCollisionInstance, ParseError> {
    let p = parse(text, &["ones"])?;
    let known = SparseGraph::from_edges(p.n, &p.edges).expect("edges validated");
    let mut f = vec![false; p.n + 1];
    for (line, _, args) in &p.extras {
        for s in args {
            let v = s.parse::<usize>().map_err(|_| err(*line, format!("`{s}` is not a vertex")))?;
            if v == 0 || v > p.n {
                return Err(err(*line, format!("vertex out of range 1..={}", p.n)));
            }
            f[v] = true;
        }
    }
    Ok(GraphCollisionInstance { known, f })
}

pub fn write_gc_instance(inst: &GraphCollisionInstance) -> String {
    let edges: Vec<(Vertex, Vertex)> = inst.known.edges().collect();
    let mut out = format!("{} {}\n", inst.known.n(), edges.len());
    for (a, b) in edges {
        writeln!(out, "{a} {b}").unwrap();
    }
    out.push_str("ones");
    for v in (1..inst.f.len()).filter(|&v| inst.f[v]) {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    out
}
