//! Immutable undirected graphs with optional vertex labels, plus the `vtg`
//! text format.
//!
//! ```text
//! vtg 1 <num_vertices>
//! # transitive
//! e <u> <v>          (0-based, u < v, one line per undirected edge)
//! l <v> <label>
//! ```

use std::collections::VecDeque;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use thiserror::Error;

use crate::groups::GroupElement;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph declared transitive but degrees differ ({min} vs {max})")]
    NotRegular { min: usize, max: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Vertex label: a group element, a coset id, or free text read from a file.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Element(GroupElement),
    Coset(usize),
    Text(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Element(g) => write!(f, "{g}"),
            Label::Coset(c) => write!(f, "c:{c}"),
            Label::Text(s) => f.write_str(s),
        }
    }
}

impl FromStr for Label {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("c:") {
            if let Ok(c) = rest.parse() {
                return Ok(Label::Coset(c));
            }
        }
        match s.parse::<GroupElement>() {
            Ok(g) => Ok(Label::Element(g)),
            Err(_) => Ok(Label::Text(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    adj: Vec<Vec<u32>>,
    labels: Option<Vec<Label>>,
    transitive: bool,
}

impl LabeledGraph {
    /// Builds a graph from an edge list. Self-loops and repeated edges are
    /// dropped.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                continue;
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Ok(LabeledGraph { adj, labels: None, transitive: false })
    }

    /// Builds a graph from per-vertex neighbour lists, symmetrizing them.
    pub fn from_adjacency(lists: Vec<Vec<u32>>) -> Result<Self, GraphError> {
        let n = lists.len();
        let edges: Vec<(usize, usize)> = lists
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().map(move |&v| (u, v as usize)))
            .collect();
        Self::from_edges(n, edges)
    }

    pub fn with_labels(mut self, labels: Vec<Label>) -> Self {
        assert_eq!(labels.len(), self.adj.len(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    /// Sets the vertex-transitive flag; rejected when degrees differ.
    pub fn declare_transitive(mut self) -> Result<Self, GraphError> {
        let min = self.adj.iter().map(Vec::len).min().unwrap_or(0);
        let max = self.adj.iter().map(Vec::len).max().unwrap_or(0);
        if min != max {
            return Err(GraphError::NotRegular { min, max });
        }
        self.transitive = true;
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Undirected edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, l)| {
            l.iter().filter(move |&&v| (v as usize) > u).map(move |&v| (u, v as usize))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.adj.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    queue.push_back(v as usize);
                }
            }
        }
        count == n
    }

    pub fn write_vtg<W: Write>(&self, mut out: W) -> Result<(), GraphError> {
        writeln!(out, "vtg 1 {}", self.num_vertices())?;
        if self.transitive {
            writeln!(out, "# transitive")?;
        }
        for (u, v) in self.edges() {
            writeln!(out, "e {u} {v}")?;
        }
        if let Some(labels) = &self.labels {
            for (v, l) in labels.iter().enumerate() {
                writeln!(out, "l {v} {l}")?;
            }
        }
        Ok(())
    }

    pub fn to_vtg_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_vtg(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("vtg output is utf-8")
    }

    pub fn read_vtg<R: BufRead>(input: R) -> Result<Self, GraphError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut labels: Vec<(usize, Label)> = Vec::new();
        let mut transitive = false;
        for (idx, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let err = |msg: &str| GraphError::Parse { line: lineno, msg: msg.to_string() };
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                if comment.trim() == "transitive" {
                    transitive = true;
                }
                continue;
            }
            let mut parts = trimmed.splitn(3, char::is_whitespace);
            let tag = parts.next().unwrap_or_default();
            match (tag, n) {
                ("vtg", None) => {
                    let version = parts.next().ok_or_else(|| err("missing version"))?;
                    if version != "1" {
                        return Err(err("unsupported vtg version"));
                    }
                    let count = parts
                        .next()
                        .and_then(|s| s.trim().parse().ok())
                        .ok_or_else(|| err("bad vertex count"))?;
                    n = Some(count);
                }
                (_, None) => return Err(err("expected `vtg 1 <n>` header")),
                ("e", Some(_)) => {
                    let u: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err("bad edge endpoint"))?;
                    let v: usize = parts
                        .next()
                        .and_then(|s| s.trim().parse().ok())
                        .ok_or_else(|| err("bad edge endpoint"))?;
                    edges.push((u, v));
                }
                ("l", Some(_)) => {
                    let v: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err("bad label vertex"))?;
                    let text = parts.next().unwrap_or("").to_string();
                    labels.push((v, text.parse().expect("label parsing is infallible")));
                }
                _ => return Err(err("unknown record")),
            }
        }
        let n = n.ok_or(GraphError::Parse { line: 0, msg: "empty input".into() })?;
        let mut g = Self::from_edges(n, edges)?;
        if !labels.is_empty() {
            let mut slots: Vec<Option<Label>> = vec![None; n];
            for (v, l) in labels {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                slots[v] = Some(l);
            }
            let filled = slots
                .into_iter()
                .enumerate()
                .map(|(v, l)| l.unwrap_or_else(|| Label::Text(v.to_string())))
                .collect();
            g = g.with_labels(filled);
        }
        if transitive {
            g = g.declare_transitive()?;
        }
        Ok(g)
    }
}
