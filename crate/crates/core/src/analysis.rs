//! Randomized generic rigidity tests.
//!
//! Each trial draws a fresh realization over the configured prime field.
//! Rank can only drop at special points, so one trial reaching the target
//! certifies a positive answer; negative answers after all trials are
//! reported as `ProbablyNo`.

use serde::{Deserialize, Serialize};

use crate::audit;
use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graph::{Edge, Graph};
use crate::rigidity::{
    combine_stresses, max_rigidity_rank, random_realization, rigidity_matrix, stress_matrix, Realization, Stress,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    ProbablyNo,
    ProbablyYes,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        matches!(self, Verdict::Yes | Verdict::ProbablyYes)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::ProbablyNo => "probably_no",
            Verdict::ProbablyYes => "probably_yes",
        }
    }
}

/// How redundant edges are identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RedundancyMethod {
    /// An edge is redundant iff some stress is nonzero on it.
    #[default]
    StressSupport,
    /// Remove the edge and rerun the local rigidity test.
    RemoveAndRetest,
    /// Run both and fail on disagreement.
    CrossCheck,
}

#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    pub trials: usize,
    pub seed: u64,
    pub field: PrimeField,
    pub redundancy: RedundancyMethod,
    /// Verify rank bounds, equilibrium residuals and stress-matrix kernels on
    /// every trial; violations surface as [`Error::InvariantViolation`].
    pub audit: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            trials: 3,
            seed: 0,
            field: PrimeField::default(),
            redundancy: RedundancyMethod::default(),
            audit: false,
        }
    }
}

impl AnalysisConfig {
    pub fn with_seed(seed: u64) -> Self {
        AnalysisConfig {
            seed,
            ..Default::default()
        }
    }
}

const STREAM_REALIZATION: u64 = 1;
const STREAM_STRESS: u64 = 2;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for trial `trial`, independent per purpose.
pub fn trial_seed(base: u64, trial: usize, stream: u64) -> u64 {
    splitmix(splitmix(base ^ stream.wrapping_mul(0xA24B_AED4_963E_E407)) ^ trial as u64)
}

/// Everything one realization tells us about a graph.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub realization: Realization,
    pub rank: usize,
    pub stress_basis: Vec<Stress>,
    /// Per edge: some basis stress is nonzero there.
    pub supported: Vec<bool>,
    pub stress: Stress,
    pub stress_matrix_nullity: usize,
}

/// Runs a single trial: realization, rigidity rank, stress basis, one random
/// stress and its stress matrix.
pub fn run_trial(g: &Graph, d: usize, config: &AnalysisConfig, trial: usize) -> Result<TrialOutcome> {
    let field = config.field;
    let realization = random_realization(g, d, trial_seed(config.seed, trial, STREAM_REALIZATION), field)?;
    let rmat = rigidity_matrix(g, &realization)?;
    let rt = rmat.transpose();
    let rank = rt.rank();
    let stress_basis: Vec<Stress> = rt.kernel_basis().into_iter().map(|values| Stress { values }).collect();
    let mut supported = vec![false; g.edge_count()];
    for s in &stress_basis {
        for (flag, &x) in supported.iter_mut().zip(&s.values) {
            *flag |= x != 0;
        }
    }
    let stress = combine_stresses(
        &stress_basis,
        g.edge_count(),
        field,
        trial_seed(config.seed, trial, STREAM_STRESS),
    );
    let omega = stress_matrix(g, &stress, field)?;
    let stress_matrix_nullity = omega.nullity();
    if config.audit {
        audit::check_trial(
            g,
            &realization,
            rank,
            &stress_basis,
            &stress,
            &omega,
            stress_matrix_nullity,
        )?;
    }
    Ok(TrialOutcome {
        realization,
        rank,
        stress_basis,
        supported,
        stress,
        stress_matrix_nullity,
    })
}

/// Result of the local rigidity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlrOutcome {
    pub verdict: Verdict,
    pub best_rank: usize,
    pub target_rank: usize,
    /// Trial that reached the target rank.
    pub witness_trial: Option<usize>,
}

/// Generic local rigidity by the rank of a random rigidity matrix. Needs at
/// least `d + 1` vertices.
pub fn glr(g: &Graph, d: usize, config: &AnalysisConfig) -> Result<GlrOutcome> {
    let v = g.vertex_count();
    if v < d + 1 {
        return Err(Error::Unsupported(format!(
            "local rigidity test needs at least d + 1 = {} vertices, graph has {v}",
            d + 1
        )));
    }
    let target = max_rigidity_rank(v, d);
    let mut best = 0;
    for t in 0..config.trials.max(1) {
        let realization = random_realization(g, d, trial_seed(config.seed, t, STREAM_REALIZATION), config.field)?;
        let rank = rigidity_matrix(g, &realization)?.rank();
        if config.audit && rank > target {
            return Err(Error::InvariantViolation(format!(
                "rigidity rank {rank} exceeds bound {target}"
            )));
        }
        best = best.max(rank);
        if rank == target {
            return Ok(GlrOutcome {
                verdict: Verdict::Yes,
                best_rank: rank,
                target_rank: target,
                witness_trial: Some(t),
            });
        }
    }
    Ok(GlrOutcome {
        verdict: Verdict::ProbablyNo,
        best_rank: best,
        target_rank: target,
        witness_trial: None,
    })
}

/// Stress dimension `e - rank`, using the best rank over the configured
/// trials.
pub fn generic_stress_dim(g: &Graph, d: usize, config: &AnalysisConfig) -> Result<usize> {
    let mut best = 0;
    let target = max_rigidity_rank(g.vertex_count(), d).min(g.edge_count());
    for t in 0..config.trials.max(1) {
        let rank = if config.audit {
            run_trial(g, d, config, t)?.rank
        } else {
            let realization = random_realization(g, d, trial_seed(config.seed, t, STREAM_REALIZATION), config.field)?;
            rigidity_matrix(g, &realization)?.rank()
        };
        best = best.max(rank);
        if best == target {
            break;
        }
    }
    Ok(g.edge_count() - best)
}

/// Global rigidity by the nullity of a random stress matrix. Complete graphs
/// are globally rigid; other graphs on at most `d + 1` vertices are not.
pub fn ggr(g: &Graph, d: usize, config: &AnalysisConfig) -> Result<Verdict> {
    let v = g.vertex_count();
    if g.is_complete() {
        return Ok(Verdict::Yes);
    }
    if v <= d + 1 {
        return Ok(Verdict::No);
    }
    for t in 0..config.trials.max(1) {
        if run_trial(g, d, config, t)?.stress_matrix_nullity == d + 1 {
            return Ok(Verdict::Yes);
        }
    }
    Ok(Verdict::ProbablyNo)
}

/// Edges split by redundancy.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgePartition {
    pub redundant: Vec<Edge>,
    pub non_redundant: Vec<Edge>,
}

/// Redundant edges of `g`. With the stress-support method an edge counts as
/// redundant when some trial that certified local rigidity has a stress
/// nonzero on it; graphs that are not locally rigid fall back to removing
/// each edge and retesting.
pub fn redundant_edges(g: &Graph, d: usize, config: &AnalysisConfig) -> Result<EdgePartition> {
    let by_support = || -> Result<Option<EdgePartition>> {
        let v = g.vertex_count();
        if v < d + 1 {
            return Ok(None);
        }
        let target = max_rigidity_rank(v, d);
        let mut covered = vec![false; g.edge_count()];
        let mut certified = false;
        for t in 0..config.trials.max(1) {
            let out = run_trial(g, d, config, t)?;
            if out.rank != target {
                continue;
            }
            certified = true;
            for (c, s) in covered.iter_mut().zip(&out.supported) {
                *c |= *s;
            }
            if covered.iter().all(|&c| c) {
                break;
            }
        }
        Ok(certified.then(|| partition(g, &covered)))
    };
    match config.redundancy {
        RedundancyMethod::StressSupport => match by_support()? {
            Some(p) => Ok(p),
            None => by_removal(g, d, config),
        },
        RedundancyMethod::RemoveAndRetest => by_removal(g, d, config),
        RedundancyMethod::CrossCheck => {
            let slow = by_removal(g, d, config)?;
            if let Some(fast) = by_support()? {
                if fast != slow {
                    return Err(Error::InvariantViolation(format!(
                        "stress support and edge removal disagree: {:?} vs {:?}",
                        fast.non_redundant, slow.non_redundant
                    )));
                }
            }
            Ok(slow)
        }
    }
}

fn partition(g: &Graph, redundant: &[bool]) -> EdgePartition {
    let mut out = EdgePartition::default();
    for (&e, &r) in g.edges().iter().zip(redundant) {
        if r {
            out.redundant.push(e);
        } else {
            out.non_redundant.push(e);
        }
    }
    out
}

fn glr_with_convention(g: &Graph, d: usize, config: &AnalysisConfig) -> Result<Verdict> {
    if g.vertex_count() < d + 1 {
        return Ok(if g.is_complete() { Verdict::Yes } else { Verdict::No });
    }
    Ok(glr(g, d, config)?.verdict)
}

fn by_removal(g: &Graph, d: usize, config: &AnalysisConfig) -> Result<EdgePartition> {
    let mut flags = Vec::with_capacity(g.edge_count());
    for &(a, b) in g.edges() {
        let h = g.without_edge(a, b)?;
        flags.push(glr_with_convention(&h, d, config)?.is_yes());
    }
    Ok(partition(g, &flags))
}

/// Generic redundant rigidity: locally rigid with every edge redundant.
pub fn grr(g: &Graph, d: usize, config: &AnalysisConfig) -> Result<Verdict> {
    let local = glr_with_convention(g, d, config)?;
    if !local.is_yes() {
        return Ok(local);
    }
    let parts = redundant_edges(g, d, config)?;
    Ok(if parts.non_redundant.is_empty() {
        Verdict::Yes
    } else if g.vertex_count() < d + 1 {
        Verdict::No
    } else {
        Verdict::ProbablyNo
    })
}

/// Full per-graph report. Field order is the JSON contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub v: usize,
    pub e: usize,
    pub d: usize,
    pub glr: Verdict,
    pub grr: Verdict,
    pub ggr: Verdict,
    pub gpr: Verdict,
    pub connectivity: usize,
    pub rigidity_rank: usize,
    pub stress_dim: usize,
    pub stress_matrix_nullity: usize,
    pub non_redundant_edges: Vec<[usize; 2]>,
    pub trials: usize,
    pub seed: u64,
    pub modulus: u64,
    /// Trials whose invariants were checked; not part of the wire format.
    #[serde(skip)]
    pub audited_trials: usize,
}

impl RigidityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// The (local, redundant, global) verdicts collapsed to booleans.
    pub fn rigidity_triple(&self) -> (bool, bool, bool) {
        (self.glr.is_yes(), self.grr.is_yes(), self.ggr.is_yes())
    }
}

/// Runs every test on `g` in dimension `d` and assembles the report.
///
/// The partial-rigidity verdict is `Yes` when local and redundant rigidity
/// are certified, the graph is `(d+1)`-connected on at least `d + 2` vertices
/// and no trial found a stress matrix of nullity `d + 1`.
pub fn analyze(g: &Graph, d: usize, config: &AnalysisConfig) -> Result<RigidityReport> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let v = g.vertex_count();
    let e = g.edge_count();
    let target = max_rigidity_rank(v, d);
    let trials = config.trials.max(1);
    let complete = g.is_complete();

    let mut best_rank = 0;
    let mut min_nullity = usize::MAX;
    let mut covered = vec![false; e];
    let mut certified_local = false;
    let mut nullity_hit = false;
    let mut audited = 0;
    for t in 0..trials {
        let out = run_trial(g, d, config, t)?;
        if config.audit {
            audited += 1;
        }
        best_rank = best_rank.max(out.rank);
        min_nullity = min_nullity.min(out.stress_matrix_nullity);
        nullity_hit |= out.stress_matrix_nullity == d + 1;
        if out.rank == target {
            certified_local = true;
            for (c, s) in covered.iter_mut().zip(&out.supported) {
                *c |= *s;
            }
        }
    }

    let glr_v = if v < d + 1 {
        if complete {
            Verdict::Yes
        } else {
            Verdict::No
        }
    } else if certified_local {
        Verdict::Yes
    } else {
        Verdict::ProbablyNo
    };

    let redundancy = if config.redundancy == RedundancyMethod::StressSupport && v >= d + 1 {
        if certified_local {
            partition(g, &covered)
        } else {
            // not locally rigid on any trial: no edge removal can help
            partition(g, &vec![false; e])
        }
    } else {
        redundant_edges(g, d, config)?
    };

    let grr_v = if !glr_v.is_yes() {
        glr_v
    } else if redundancy.non_redundant.is_empty() {
        Verdict::Yes
    } else if v < d + 1 {
        Verdict::No
    } else {
        Verdict::ProbablyNo
    };

    let ggr_v = if complete {
        Verdict::Yes
    } else if v <= d + 1 {
        Verdict::No
    } else if nullity_hit {
        Verdict::Yes
    } else {
        Verdict::ProbablyNo
    };

    let connectivity = vertex_connectivity(g);
    let excluded = v < d + 2 || connectivity < d + 1 || ggr_v == Verdict::Yes;
    let gpr_v = if excluded || glr_v == Verdict::No || grr_v == Verdict::No {
        Verdict::No
    } else if glr_v.is_yes() && grr_v.is_yes() {
        Verdict::Yes
    } else {
        Verdict::ProbablyNo
    };

    Ok(RigidityReport {
        v,
        e,
        d,
        glr: glr_v,
        grr: grr_v,
        ggr: ggr_v,
        gpr: gpr_v,
        connectivity,
        rigidity_rank: best_rank,
        stress_dim: e - best_rank,
        stress_matrix_nullity: min_nullity,
        non_redundant_edges: redundancy.non_redundant.iter().map(|&(a, b)| [a, b]).collect(),
        trials,
        seed: config.seed,
        modulus: config.field.modulus(),
        audited_trials: audited,
    })
}

/// Alias for [`analyze`]; the report's `gpr` field carries the verdict.
pub fn is_gpr(g: &Graph, d: usize, config: &AnalysisConfig) -> Result<RigidityReport> {
    analyze(g, d, config)
}
