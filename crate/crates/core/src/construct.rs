//! Graph families and operations: complete and complete bipartite graphs,
//! k-chains and k-rings, coning, chain attachment, subgraph replacement and
//! the Hennenberg edge split.
//!
//! All constructors label vertices block by block, first block first.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::Graph;

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return invalid("complete graph needs at least one vertex");
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Graph::from_edges(n, edges)
}

/// `K_{a,b}`: vertices `0..a` form one side, `a..a+b` the other.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return invalid("complete bipartite graph needs both sides nonempty");
    }
    let edges = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)));
    Graph::from_edges(a + b, edges)
}

/// Block sizes `(a_1, ..., a_k)` of a k-chain, `k >= 2`, all sizes positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ChainSpec {
    sizes: Vec<usize>,
}

impl ChainSpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.len() < 2 {
            return invalid(format!("a chain needs at least 2 blocks, got {}", sizes.len()));
        }
        if sizes.contains(&0) {
            return invalid("chain block sizes must be positive");
        }
        Ok(ChainSpec { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of blocks `k`.
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex_count(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        self.sizes.windows(2).map(|w| w[0] * w[1]).sum()
    }

    pub fn reversed(&self) -> ChainSpec {
        let mut sizes = self.sizes.clone();
        sizes.reverse();
        ChainSpec { sizes }
    }

    /// Lexicographic minimum of the spec and its reversal. Reversal is a
    /// graph isomorphism, so equal canonical forms mean isomorphic chains.
    pub fn canonical(&self) -> ChainSpec {
        let rev = self.reversed();
        if rev.sizes < self.sizes {
            rev
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.sizes.iter().le(self.sizes.iter().rev())
    }

    /// Start offset of every block, plus the total vertex count at the end.
    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.sizes.len() + 1);
        let mut acc = 0;
        out.push(0);
        for &s in &self.sizes {
            acc += s;
            out.push(acc);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for ChainSpec {
    type Error = crate::error::Error;

    fn try_from(sizes: Vec<usize>) -> Result<Self> {
        ChainSpec::new(sizes)
    }
}

impl From<ChainSpec> for Vec<usize> {
    fn from(spec: ChainSpec) -> Self {
        spec.sizes
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sizes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

fn block_pairs(blocks: &[Vec<usize>], closing: bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut link = |x: &[usize], y: &[usize]| {
        for &a in x {
            for &b in y {
                edges.push((a, b));
            }
        }
    };
    for w in blocks.windows(2) {
        link(&w[0], &w[1]);
    }
    if closing {
        link(&blocks[0], &blocks[blocks.len() - 1]);
    }
    edges
}

fn chain_blocks(spec: &ChainSpec) -> Vec<Vec<usize>> {
    spec.offsets().windows(2).map(|w| (w[0]..w[1]).collect()).collect()
}

/// `C_{a_1,...,a_k}`: consecutive blocks completely joined, nothing else.
pub fn k_chain(spec: &ChainSpec) -> Graph {
    let edges = block_pairs(&chain_blocks(spec), false);
    Graph::from_edges(spec.vertex_count(), edges).expect("chain edges are in range")
}

/// A k-chain plus every edge between the first and last block. Needs `k >= 3`.
pub fn k_ring(spec: &ChainSpec) -> Result<Graph> {
    if spec.len() < 3 {
        return invalid("a ring needs at least 3 blocks");
    }
    let edges = block_pairs(&chain_blocks(spec), true);
    Graph::from_edges(spec.vertex_count(), edges)
}

/// Adds vertex `v` adjacent to every existing vertex.
pub fn cone(g: &Graph) -> Graph {
    let apex = g.vertex_count();
    let edges = g.edges().iter().copied().chain((0..apex).map(|i| (i, apex)));
    Graph::from_edges(apex + 1, edges).expect("cone edges are in range")
}

/// A chain glued onto a host graph: the first block is identified with
/// `left_anchor`, the last with `right_anchor`, and the interior blocks are
/// fresh vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachmentSpec {
    pub host: Graph,
    pub left_anchor: Vec<usize>,
    pub right_anchor: Vec<usize>,
    pub interior_sizes: Vec<usize>,
}

impl AttachmentSpec {
    /// The chain being attached, `(|left|, interior..., |right|)`.
    pub fn chain(&self) -> Result<ChainSpec> {
        let mut sizes = vec![self.left_anchor.len()];
        sizes.extend(&self.interior_sizes);
        sizes.push(self.right_anchor.len());
        ChainSpec::new(sizes)
    }

    fn validate(&self) -> Result<()> {
        let v = self.host.vertex_count();
        let mut seen = BTreeSet::new();
        for &x in self.left_anchor.iter().chain(&self.right_anchor) {
            if x >= v {
                return invalid(format!("anchor vertex {x} out of range for host on {v} vertices"));
            }
            if !seen.insert(x) {
                return invalid(format!("anchor vertex {x} repeated or shared between anchors"));
            }
        }
        self.chain().map(|_| ())
    }
}

/// Host edges together with the chain edges, interior blocks labeled from
/// `host.vertex_count()` onward in block order.
pub fn attach(spec: &AttachmentSpec) -> Result<Graph> {
    spec.validate()?;
    let mut next = spec.host.vertex_count();
    let mut blocks = vec![spec.left_anchor.clone()];
    for &size in &spec.interior_sizes {
        blocks.push((next..next + size).collect());
        next += size;
    }
    blocks.push(spec.right_anchor.clone());
    let edges = spec.host.edges().iter().copied().chain(block_pairs(&blocks, false));
    Graph::from_edges(next, edges)
}

/// Replaces the subgraph on `h_vertices` by `h_prime`.
///
/// `mapping[i]` is the `h_prime` vertex that takes over `h_vertices[i]`.
/// Labels: vertices outside H keep their labels, `mapping[i]` inherits the
/// label of `h_vertices[i]`, and unmapped `h_prime` vertices are appended
/// after `g`'s vertices in ascending order. Edges with both ends in H are
/// dropped, edges leaving H are rerouted, and all `h_prime` edges are added.
pub fn replace(g: &Graph, h_vertices: &[usize], h_prime: &Graph, mapping: &[usize]) -> Result<Graph> {
    let v = g.vertex_count();
    if mapping.len() != h_vertices.len() {
        return invalid("mapping must assign one image per replaced vertex");
    }
    let mut in_h = vec![false; v];
    for &h in h_vertices {
        if h >= v {
            return invalid(format!("vertex {h} not in graph"));
        }
        if in_h[h] {
            return invalid(format!("vertex {h} listed twice"));
        }
        in_h[h] = true;
    }
    let mut label: Vec<Option<usize>> = vec![None; h_prime.vertex_count()];
    for (&h, &img) in h_vertices.iter().zip(mapping) {
        if img >= h_prime.vertex_count() {
            return invalid(format!("image {img} not in replacement graph"));
        }
        if label[img].is_some() {
            return invalid("mapping is not injective");
        }
        label[img] = Some(h);
    }
    let mut next = v;
    let label: Vec<usize> = label
        .into_iter()
        .map(|l| {
            l.unwrap_or_else(|| {
                next += 1;
                next - 1
            })
        })
        .collect();
    let kept = g.edges().iter().copied().filter(|&(a, b)| !(in_h[a] && in_h[b]));
    let added = h_prime.edges().iter().map(|&(a, b)| (label[a], label[b]));
    Graph::from_edges(next, kept.chain(added))
}

/// Removes edge `{i, j}` and adds a new vertex joined to `i`, `j` and the
/// `d - 1` vertices in `others`.
pub fn hennenberg(g: &Graph, d: usize, i: usize, j: usize, others: &[usize]) -> Result<Graph> {
    if d == 0 {
        return invalid("dimension must be positive");
    }
    if others.len() != d - 1 {
        return invalid(format!("expected {} extra neighbors, got {}", d - 1, others.len()));
    }
    let base = g.without_edge(i, j)?;
    let distinct: BTreeSet<_> = others.iter().copied().collect();
    if distinct.len() != others.len() || distinct.contains(&i) || distinct.contains(&j) {
        return invalid("extra neighbors must be distinct and avoid the split edge");
    }
    if let Some(&bad) = others.iter().find(|&&x| x >= g.vertex_count()) {
        return invalid(format!("vertex {bad} not in graph"));
    }
    let new = g.vertex_count();
    let edges = base
        .edges()
        .iter()
        .copied()
        .chain([i, j].into_iter().chain(others.iter().copied()).map(|x| (x, new)));
    Graph::from_edges(new + 1, edges)
}
