//! Simple undirected graphs with a canonical edge order.
//!
//! Edges are stored as `(lo, hi)` pairs with `lo < hi`, sorted ascending.
//! Every edge-indexed vector in the crate (rigidity-matrix rows, stresses)
//! uses this order.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// An undirected edge `(lo, hi)` with `lo < hi`.
pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Graph on `vertex_count` vertices with no edges.
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Builds a graph from arbitrary endpoint pairs. Pairs are normalized and
    /// sorted; duplicates (in either orientation) are merged.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = Vec::new();
        for (a, b) in edges {
            if a == b {
                return invalid(format!("self-loop at vertex {a}"));
            }
            if a >= vertex_count || b >= vertex_count {
                return invalid(format!("edge ({a}, {b}) out of range for {vertex_count} vertices"));
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Graph {
            vertex_count,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Position of edge `{a, b}` in canonical order.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edge_index(a, b).is_some()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn is_complete(&self) -> bool {
        let v = self.vertex_count;
        self.edges.len() == v * v.saturating_sub(1) / 2
    }

    /// Connected in the usual sense; the graphs on 0 and 1 vertices count as
    /// connected.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Copy of the graph without edge `{a, b}`. Missing edges are an error.
    pub fn without_edge(&self, a: usize, b: usize) -> Result<Graph> {
        let Some(idx) = self.edge_index(a, b) else {
            return invalid(format!("edge ({a}, {b}) not present"));
        };
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Ok(Graph {
            vertex_count: self.vertex_count,
            edges,
        })
    }

    pub fn with_edge(&self, a: usize, b: usize) -> Result<Graph> {
        Graph::from_edges(self.vertex_count, self.edges.iter().copied().chain([(a, b)]))
    }

    /// Applies a vertex relabeling `perm[old] = new` onto `vertex_count`
    /// vertices. Used to compare constructions up to an explicit bijection.
    pub fn relabel(&self, perm: &[usize], vertex_count: usize) -> Result<Graph> {
        if perm.len() != self.vertex_count {
            return invalid("relabeling length does not match vertex count");
        }
        Graph::from_edges(vertex_count, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    /// Line format: `v <count>` followed by `e <i> <j>` per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("v {}\n", self.vertex_count);
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "e {a} {b}");
        }
        out
    }

    /// Parses the line format. Blank lines and lines starting with `#` are
    /// skipped. Line numbers in errors are 1-based.
    pub fn from_text(text: &str) -> Result<Graph> {
        let mut vertex_count = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap_or_default();
            let nums: Vec<usize> = parts
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| err(format!("expected a nonnegative integer, found {t:?}")))
                })
                .collect::<Result<_>>()?;
            match (tag, vertex_count, nums.as_slice()) {
                ("v", None, &[n]) => vertex_count = Some(n),
                ("v", Some(_), _) => return Err(err("duplicate vertex-count line".into())),
                ("v", None, _) => return Err(err("expected `v <count>`".into())),
                ("e", None, _) => {
                    return Err(err("edge line before `v <count>` line".into()));
                }
                ("e", Some(n), &[a, b]) => {
                    if a == b {
                        return Err(err(format!("self-loop at vertex {a}")));
                    }
                    if a >= n || b >= n {
                        return Err(err(format!("edge ({a}, {b}) out of range for {n} vertices")));
                    }
                    edges.push((a, b));
                }
                ("e", Some(_), _) => return Err(err("expected `e <i> <j>`".into())),
                _ => return Err(err(format!("unknown line tag {tag:?}"))),
            }
        }
        let Some(n) = vertex_count else {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "missing `v <count>` line".into(),
            });
        };
        Graph::from_edges(n, edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let parsed: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Graph::from_edges(parsed.v, parsed.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

/// Wire form `{"v": n, "edges": [[i, j], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub v: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            v: g.vertex_count,
            edges: g.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_canonical() {
        let g = Graph::from_edges(4, [(3, 1), (0, 2), (1, 3), (2, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2), (1, 3)]);
        assert_eq!(g.edge_index(3, 1), Some(2));
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "v 4\ne 0 1\ne 0 3\ne 1 2\ne 2 3\n");
        assert_eq!(Graph::from_text(&text).unwrap(), g);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(g.to_json(), r#"{"v":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Graph::from_text("v 3\ne 0 1\n\ne 0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = Graph::from_text("e 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Graph::from_text("v 2\ne 0 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(Graph::from_text("# nothing\n").is_err());
    }

    #[test]
    fn connectivity_basics() {
        assert!(Graph::empty(1).is_connected());
        assert!(!Graph::empty(2).is_connected());
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(path.is_connected());
        assert!(!path.is_complete());
    }
}
