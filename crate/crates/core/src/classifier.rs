//! Closed-form predictions for chains and complete bipartite graphs, and
//! enumeration of chains up to reversal.

use serde::{Deserialize, Serialize};

use crate::analysis::RigidityReport;
use crate::construct::ChainSpec;
use crate::error::{Error, Result};
use crate::rigidity::binomial2;

/// `C(d+2, 2)`, the vertex count at which the chain and bipartite families
/// are characterized.
pub fn critical_vertex_count(d: usize) -> usize {
    binomial2(d + 2)
}

/// `K_{a,b}` is partially rigid in dimension `d` exactly when
/// `a + b = C(d+2, 2)` and both sides have at least `d + 2` vertices.
pub fn bipartite_gpr_predicate(a: usize, b: usize, d: usize) -> bool {
    a + b == critical_vertex_count(d) && a >= d + 2 && b >= d + 2
}

/// Prediction for one chain, with the individual conditions that fed it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainVerdict {
    pub spec: ChainSpec,
    pub d: usize,
    pub predicted_gpr: bool,
    /// Every interior block has at least `d + 1` vertices.
    pub cond1: bool,
    /// The second and second-to-last blocks have at least `d + 2` vertices.
    pub cond2: bool,
    /// No two consecutive blocks both have exactly `d + 1` vertices.
    pub cond3: bool,
    pub vertex_count_ok: bool,
    pub experimental: Option<RigidityReport>,
}

impl ChainVerdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

/// Predicts partial rigidity of `C_{a_1..a_k}` in dimension `d`. Chains
/// with `k >= 4` use the three block conditions plus the vertex count; 2- and
/// 3-chains are complete bipartite graphs (`K_{a_1+a_3, a_2}` for `k = 3`) and
/// go through [`bipartite_gpr_predicate`].
pub fn kchain_gpr_predicate(spec: &ChainSpec, d: usize) -> ChainVerdict {
    let a = spec.sizes();
    let k = a.len();
    let interior = &a[1..k - 1];
    let cond1 = interior.iter().all(|&x| x >= d + 1);
    let cond2 = a[1] >= d + 2 && a[k - 2] >= d + 2;
    let cond3 = !a.windows(2).any(|w| w[0] == d + 1 && w[1] == d + 1);
    let vertex_count_ok = spec.vertex_count() == critical_vertex_count(d);
    let predicted_gpr = match k {
        2 => bipartite_gpr_predicate(a[0], a[1], d),
        3 => bipartite_gpr_predicate(a[0] + a[2], a[1], d),
        _ => cond1 && cond2 && cond3 && vertex_count_ok,
    };
    ChainVerdict {
        spec: spec.clone(),
        d,
        predicted_gpr,
        cond1,
        cond2,
        cond3,
        vertex_count_ok,
        experimental: None,
    }
}

/// Generic stress dimension of `K_{a,b}` in dimension `d` for
/// `a + b <= C(d+2, 2)`: `(a - d - 1)(b - d - 1)`, or 0 when a side has at
/// most `d + 1` vertices.
pub fn bolker_roth_dim(a: usize, b: usize, d: usize) -> Result<usize> {
    if a + b > critical_vertex_count(d) {
        return Err(Error::OutOfRange(format!(
            "a + b = {} exceeds C(d+2, 2) = {}",
            a + b,
            critical_vertex_count(d)
        )));
    }
    if a < d + 1 || b < d + 1 {
        return Ok(0);
    }
    Ok((a - d - 1) * (b - d - 1))
}

/// Sides of the bipartite graph a chain embeds in: odd blocks and even blocks.
pub fn bipartite_sides(spec: &ChainSpec) -> (usize, usize) {
    spec.sizes().iter().enumerate().fold(
        (0, 0),
        |(odd, even), (i, &s)| if i % 2 == 0 { (odd + s, even) } else { (odd, even + s) },
    )
}

/// Stress dimension of a `(d+1)`-connected chain on `C(d+2, 2)` vertices,
/// assembled from its cover by consecutive 3-chains:
/// `e - v(d+1) + (d+1)^2`.
pub fn chain_cover_stress_dim(spec: &ChainSpec, d: usize) -> Result<usize> {
    let a = spec.sizes();
    let k = a.len();
    let connected_enough = match k {
        2 => a[0] >= d + 1 && a[1] >= d + 1,
        3 => a[1] >= d + 1 && a[0] + a[2] >= d + 1,
        _ => a[1..k - 1].iter().all(|&x| x >= d + 1),
    };
    if !connected_enough {
        return Err(Error::OutOfRange(format!("chain {spec} is not ({})-connected", d + 1)));
    }
    if spec.vertex_count() != critical_vertex_count(d) {
        return Err(Error::OutOfRange(format!(
            "chain {spec} has {} vertices, expected C(d+2, 2) = {}",
            spec.vertex_count(),
            critical_vertex_count(d)
        )));
    }
    let e = spec.edge_count() as i64;
    let v = spec.vertex_count() as i64;
    let dp1 = d as i64 + 1;
    let dim = e - v * dp1 + dp1 * dp1;
    usize::try_from(dim).map_err(|_| Error::OutOfRange(format!("negative cover dimension {dim}")))
}

/// Compositions of `total` into exactly `parts` positive parts, in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    total: usize,
    current: Option<Vec<usize>>,
}

impl Compositions {
    pub fn new(total: usize, parts: usize) -> Self {
        let current = (parts >= 1 && parts <= total).then(|| {
            let mut c = vec![1; parts];
            c[parts - 1] = total - (parts - 1);
            c
        });
        Compositions { total, current }
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        // bump the rightmost non-final part whose tail can give up a unit
        let mut prefix: usize = out[..k - 1].iter().sum();
        let mut next = None;
        for i in (0..k.saturating_sub(1)).rev() {
            let tail = self.total - prefix;
            if tail > k - 1 - i {
                let mut c = out[..=i].to_vec();
                c[i] += 1;
                let used: usize = c.iter().sum();
                c.resize(k - 1, 1);
                let rest = self.total - used - (k - 2 - i);
                c.push(rest);
                next = Some(c);
                break;
            }
            prefix -= out[i];
        }
        self.current = next;
        Some(out)
    }
}

/// Every chain on `vertices` vertices with `k_min..=k_max` blocks, one per
/// reversal class, ordered by block count then lexicographically.
pub fn enumerate_kchains(vertices: usize, k_min: usize, k_max: usize) -> impl Iterator<Item = ChainSpec> {
    let k_lo = k_min.max(2);
    let k_hi = k_max.min(vertices);
    (k_lo..=k_hi).flat_map(move |k| {
        Compositions::new(vertices, k)
            .map(|sizes| ChainSpec::new(sizes).expect("compositions have positive parts"))
            .filter(ChainSpec::is_canonical)
    })
}
