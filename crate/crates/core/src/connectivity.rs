//! Vertex connectivity by Menger's theorem: the minimum vertex cut between
//! two non-adjacent vertices equals the number of internally disjoint paths,
//! computed as a unit-capacity max flow on the vertex-split digraph.

use std::collections::VecDeque;

use crate::graph::Graph;

struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNetwork {
    fn with_nodes(n: usize) -> Self {
        FlowNetwork {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.head[from].push(self.to.len());
        self.to.push(to);
        self.cap.push(cap);
        self.head[to].push(self.to.len());
        self.to.push(from);
        self.cap.push(0);
    }

    /// Augments along shortest paths until `limit` units flow or no path is left.
    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let n = self.head.len();
        let mut flow = 0;
        let mut parent_arc = vec![usize::MAX; n];
        while flow < limit {
            parent_arc.iter_mut().for_each(|p| *p = usize::MAX);
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &arc in &self.head[u] {
                    let w = self.to[arc];
                    if self.cap[arc] > 0 && w != source && parent_arc[w] == usize::MAX {
                        parent_arc[w] = arc;
                        if w == sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut node = sink;
            while node != source {
                let arc = parent_arc[node];
                self.cap[arc] -= 1;
                self.cap[arc ^ 1] += 1;
                node = self.to[arc ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Number of internally vertex-disjoint paths between non-adjacent `s` and
/// `t`, capped at `limit`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    debug_assert!(s != t && !g.has_edge(s, t));
    let n = g.vertex_count();
    // vertex x splits into in = 2x and out = 2x + 1
    let mut net = FlowNetwork::with_nodes(2 * n);
    for x in 0..n {
        net.add_arc(2 * x, 2 * x + 1, if x == s || x == t { n as u32 } else { 1 });
    }
    for &(a, b) in g.edges() {
        net.add_arc(2 * a + 1, 2 * b, 1);
        net.add_arc(2 * b + 1, 2 * a, 1);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Smallest local connectivity found, stopping early once it drops below
/// `floor`. Even's scan: some vertex among the first `kappa + 1` avoids a
/// minimum cut, so sources beyond the running bound are unnecessary.
fn scan(g: &Graph, floor: usize) -> usize {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut best = adj.iter().map(Vec::len).min().unwrap_or(0);
    if best < floor {
        return best;
    }
    let mut i = 0;
    while i <= best && i < n {
        let mut is_nbr = vec![false; n];
        for &w in &adj[i] {
            is_nbr[w] = true;
        }
        for j in (0..n).filter(|&j| j != i && !is_nbr[j]) {
            best = best.min(local_connectivity(g, i, j, best));
            if best < floor {
                return best;
            }
        }
        i += 1;
    }
    best
}

/// Size of a minimum vertex cut. Complete graphs give `v - 1`, disconnected
/// graphs (and the empty graph) give 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return 0;
    }
    if g.is_complete() {
        return n - 1;
    }
    scan(g, 0)
}

/// True when the graph has more than `k` vertices and no vertex cut of size
/// below `k`.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if g.vertex_count() <= k || !g.is_connected() {
        return false;
    }
    if g.is_complete() {
        return true;
    }
    scan(g, k) >= k
}
