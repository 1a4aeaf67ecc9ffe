//! Verification sweeps comparing closed-form predictions and structural
//! theorems against the randomized engine.
//!
//! Every instance records the seed and modulus it ran with so a mismatch can
//! be replayed. A randomized negative that contradicts a prediction is rerun
//! with [`REPLAY_EXTRA_TRIALS`] more trials before it counts as a mismatch.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{analyze, generic_stress_dim, trial_seed, AnalysisConfig, RigidityReport, Verdict};
use crate::classifier::{
    bolker_roth_dim, critical_vertex_count, enumerate_kchains, kchain_gpr_predicate, ChainVerdict,
};
use crate::connectivity::is_k_connected;
use crate::construct::{complete_bipartite, cone, k_chain, ChainSpec};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphJson};

pub const REPLAY_EXTRA_TRIALS: usize = 5;

/// Largest dimension the chain sweep accepts by default (`C(7, 2) = 21`
/// vertices).
pub const DEFAULT_MAX_SWEEP_DIM: usize = 5;

const STREAM_INSTANCE: u64 = 17;
const STREAM_SAMPLE: u64 = 23;

fn instance_seed(base: u64, key: &[usize]) -> u64 {
    key.iter()
        .fold(trial_seed(base, key.len(), STREAM_INSTANCE), |acc, &x| {
            trial_seed(acc, x, STREAM_INSTANCE)
        })
}

fn with_seed(config: &AnalysisConfig, seed: u64, extra_trials: usize) -> AnalysisConfig {
    AnalysisConfig {
        seed,
        trials: config.trials + extra_trials,
        ..config.clone()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremMainReport {
    pub d: usize,
    pub vertex_count: usize,
    pub chains_checked: usize,
    /// Chains analyzed in full (the `(d+1)`-connected ones), with reports.
    pub analyzed: Vec<ChainVerdict>,
    pub predicted_gpr: Vec<ChainSpec>,
    pub experimental_gpr: Vec<ChainSpec>,
    pub mismatches: Vec<ChainVerdict>,
    pub passed: bool,
}

/// Runs every chain with `k >= 4` blocks on `C(d+2, 2)` vertices through the
/// engine and compares the partial-rigidity verdict with the prediction.
/// Chains that are not `(d+1)`-connected are settled by the connectivity
/// computation alone.
pub fn verify_theorem_main(d: usize, config: &AnalysisConfig, max_dim: usize) -> Result<TheoremMainReport> {
    if d == 0 || d > max_dim {
        return Err(Error::OutOfRange(format!(
            "dimension {d} outside the sweep budget 1..={max_dim}"
        )));
    }
    let n = critical_vertex_count(d);
    let chains: Vec<ChainSpec> = enumerate_kchains(n, 4, n).collect();
    let outcomes: Vec<(ChainVerdict, bool)> = chains
        .par_iter()
        .map(|spec| -> Result<(ChainVerdict, bool)> {
            let mut verdict = kchain_gpr_predicate(spec, d);
            let g = k_chain(spec);
            if !is_k_connected(&g, d + 1) {
                return Ok((verdict, false));
            }
            let seed = instance_seed(config.seed, spec.sizes());
            let mut report = analyze(&g, d, &with_seed(config, seed, 0))?;
            if verdict.predicted_gpr != (report.gpr == Verdict::Yes) && report.gpr == Verdict::ProbablyNo {
                report = analyze(&g, d, &with_seed(config, seed, REPLAY_EXTRA_TRIALS))?;
            }
            verdict.experimental = Some(report);
            Ok((verdict, true))
        })
        .collect::<Result<_>>()?;

    let mut out = TheoremMainReport {
        d,
        vertex_count: n,
        chains_checked: chains.len(),
        analyzed: Vec::new(),
        predicted_gpr: Vec::new(),
        experimental_gpr: Vec::new(),
        mismatches: Vec::new(),
        passed: true,
    };
    for (verdict, analyzed) in outcomes {
        let experimental = verdict.experimental.as_ref().is_some_and(|r| r.gpr == Verdict::Yes);
        if verdict.predicted_gpr {
            out.predicted_gpr.push(verdict.spec.clone());
        }
        if experimental {
            out.experimental_gpr.push(verdict.spec.clone());
        }
        if experimental != verdict.predicted_gpr {
            out.mismatches.push(verdict.clone());
        }
        if analyzed {
            out.analyzed.push(verdict);
        }
    }
    out.passed = out.mismatches.is_empty();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct BolkerRothCase {
    pub a: usize,
    pub b: usize,
    pub formula: usize,
    pub computed: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BolkerRothReport {
    pub d: usize,
    pub modulus: u64,
    pub cases: Vec<BolkerRothCase>,
    pub mismatches: Vec<BolkerRothCase>,
    pub passed: bool,
}

/// Stress dimension of `K_{a,b}` against the closed form for every
/// `a, b >= d + 1` with `a + b <= C(d+2, 2)`.
pub fn verify_bolker_roth(d: usize, config: &AnalysisConfig) -> Result<BolkerRothReport> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let n = critical_vertex_count(d);
    let pairs: Vec<(usize, usize)> = (d + 1..=n)
        .flat_map(|a| (d + 1..=n).map(move |b| (a, b)))
        .filter(|&(a, b)| a + b <= n)
        .collect();
    let cases: Vec<BolkerRothCase> = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<BolkerRothCase> {
            let seed = instance_seed(config.seed, &[a, b, d]);
            let g = complete_bipartite(a, b)?;
            Ok(BolkerRothCase {
                a,
                b,
                formula: bolker_roth_dim(a, b, d)?,
                computed: generic_stress_dim(&g, d, &with_seed(config, seed, 0))?,
                seed,
            })
        })
        .collect::<Result<_>>()?;
    let mismatches: Vec<_> = cases.iter().filter(|c| c.formula != c.computed).cloned().collect();
    Ok(BolkerRothReport {
        d,
        modulus: config.field.modulus(),
        passed: mismatches.is_empty(),
        cases,
        mismatches,
    })
}

/// Random graph on `v` vertices, each pair kept with probability `density`.
pub fn random_graph<R: Rng + ?Sized>(v: usize, density: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(v, edges).expect("pairs are in range")
}

/// A sampled graph with its replay seed.
#[derive(Debug, Clone, Serialize)]
pub struct SampledGraph {
    pub graph: GraphJson,
    pub seed: u64,
}

fn sample_graphs(seed: u64, samples: usize, min_v: usize, max_v: usize) -> Vec<(Graph, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, 0, STREAM_SAMPLE));
    (0..samples)
        .map(|i| {
            let v = rng.gen_range(min_v..=max_v);
            let density = rng.gen_range(0.35..=1.0);
            (random_graph(v, density, &mut rng), trial_seed(seed, i, STREAM_INSTANCE))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct HendricksonCase {
    pub sample: SampledGraph,
    pub report: RigidityReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct HendricksonReport {
    pub d: usize,
    pub samples: usize,
    pub globally_rigid: usize,
    pub cases: Vec<HendricksonCase>,
    pub violations: Vec<HendricksonCase>,
    pub passed: bool,
}

fn hendrickson_ok(r: &RigidityReport) -> bool {
    r.ggr != Verdict::Yes || r.v < r.d + 2 || (r.connectivity >= r.d + 1 && r.grr == Verdict::Yes)
}

/// Samples random graphs on `d + 2 ..= max_v` vertices and checks that every
/// generically globally rigid one is `(d+1)`-connected and redundantly rigid.
pub fn verify_hendrickson(
    d: usize,
    samples: usize,
    max_v: usize,
    config: &AnalysisConfig,
) -> Result<HendricksonReport> {
    if d == 0 || max_v < d + 2 {
        return Err(Error::InvalidArgument(format!(
            "need d >= 1 and at least d + 2 = {} vertices",
            d + 2
        )));
    }
    let graphs = sample_graphs(config.seed ^ d as u64, samples, d + 2, max_v);
    let cases: Vec<HendricksonCase> = graphs
        .par_iter()
        .map(|(g, seed)| -> Result<HendricksonCase> {
            let mut report = analyze(g, d, &with_seed(config, *seed, 0))?;
            if !hendrickson_ok(&report) {
                report = analyze(g, d, &with_seed(config, *seed, REPLAY_EXTRA_TRIALS))?;
            }
            Ok(HendricksonCase {
                sample: SampledGraph {
                    graph: GraphJson::from(g),
                    seed: *seed,
                },
                report,
            })
        })
        .collect::<Result<_>>()?;
    let violations: Vec<_> = cases.iter().filter(|c| !hendrickson_ok(&c.report)).cloned().collect();
    Ok(HendricksonReport {
        d,
        samples,
        globally_rigid: cases.iter().filter(|c| c.report.ggr == Verdict::Yes).count(),
        passed: violations.is_empty(),
        cases,
        violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConingCase {
    pub sample: SampledGraph,
    pub base: RigidityReport,
    pub coned: RigidityReport,
}

impl ConingCase {
    pub fn agrees(&self) -> bool {
        self.base.rigidity_triple() == self.coned.rigidity_triple()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConingReport {
    pub d: usize,
    pub samples: usize,
    pub cases: Vec<ConingCase>,
    pub disagreements: Vec<ConingCase>,
    pub passed: bool,
}

/// Compares (local, redundant, global) verdicts of random graphs in
/// dimension `d` with those of their cones in dimension `d + 1`.
pub fn verify_coning(d: usize, samples: usize, max_v: usize, config: &AnalysisConfig) -> Result<ConingReport> {
    if d == 0 || max_v < 3 {
        return Err(Error::InvalidArgument(
            "need d >= 1 and graphs on at least 3 vertices".into(),
        ));
    }
    let graphs = sample_graphs(config.seed ^ (d as u64) << 8, samples, 3, max_v);
    let cases: Vec<ConingCase> = graphs
        .par_iter()
        .map(|(g, seed)| -> Result<ConingCase> {
            let coned = cone(g);
            let mut case = ConingCase {
                sample: SampledGraph {
                    graph: GraphJson::from(g),
                    seed: *seed,
                },
                base: analyze(g, d, &with_seed(config, *seed, 0))?,
                coned: analyze(&coned, d + 1, &with_seed(config, *seed, 0))?,
            };
            if !case.agrees() {
                case.base = analyze(g, d, &with_seed(config, *seed, REPLAY_EXTRA_TRIALS))?;
                case.coned = analyze(&coned, d + 1, &with_seed(config, *seed, REPLAY_EXTRA_TRIALS))?;
            }
            Ok(case)
        })
        .collect::<Result<_>>()?;
    let disagreements: Vec<_> = cases.iter().filter(|c| !c.agrees()).cloned().collect();
    Ok(ConingReport {
        d,
        samples,
        passed: disagreements.is_empty(),
        cases,
        disagreements,
    })
}
