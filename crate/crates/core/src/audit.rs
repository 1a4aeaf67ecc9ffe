//! Per-trial consistency checks, run when `AnalysisConfig::audit` is set.
//!
//! The checks recompute each property from its definition rather than from
//! the matrices the engine used.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::FieldMatrix;
use crate::rigidity::{max_rigidity_rank, Realization, Stress, StressMatrix};

static TRIALS_CHECKED: AtomicUsize = AtomicUsize::new(0);

/// Trials that passed [`check_trial`] in this process.
pub fn trials_checked() -> usize {
    TRIALS_CHECKED.load(Ordering::Relaxed)
}

fn violation<T>(message: String) -> Result<T> {
    Err(Error::InvariantViolation(message))
}

pub fn check_trial(
    g: &Graph,
    r: &Realization,
    rank: usize,
    basis: &[Stress],
    stress: &Stress,
    omega: &StressMatrix,
    nullity: usize,
) -> Result<()> {
    let v = g.vertex_count();
    let e = g.edge_count();
    let d = r.dimension();
    let bound = max_rigidity_rank(v, d);
    if rank > bound {
        return violation(format!("rigidity rank {rank} exceeds bound {bound}"));
    }
    if rank + basis.len() != e {
        return violation(format!(
            "rank {rank} plus stress dimension {} differs from edge count {e}",
            basis.len()
        ));
    }
    for (idx, s) in basis.iter().chain([stress]).enumerate() {
        if !s.is_equilibrium(g, r)? {
            return violation(format!("stress #{idx} is not in equilibrium"));
        }
    }
    check_stress_matrix(g, stress, omega, r)?;
    // the all-ones vector and the projections span a space of this rank
    let mut affine = FieldMatrix::zeros(r.field(), v, d + 1);
    for i in 0..v {
        affine.set(i, 0, 1);
        for k in 0..d {
            affine.set(i, k + 1, r.point(i)[k]);
        }
    }
    let affine_rank = affine.rank();
    if nullity < affine_rank {
        return violation(format!(
            "stress matrix nullity {nullity} below affine span dimension {affine_rank}"
        ));
    }
    TRIALS_CHECKED.fetch_add(1, Ordering::Relaxed);
    Ok(())
}

/// Symmetry, the zero pattern off the edge set, zero row sums and the affine
/// kernel.
pub fn check_stress_matrix(g: &Graph, s: &Stress, omega: &StressMatrix, r: &Realization) -> Result<()> {
    let m = &omega.entries;
    let v = g.vertex_count();
    if m.rows() != v || m.cols() != v {
        return violation("stress matrix has the wrong shape".into());
    }
    if !omega.is_symmetric() {
        return violation("stress matrix is not symmetric".into());
    }
    let f = m.field();
    for i in 0..v {
        let mut row_sum = 0;
        for j in 0..v {
            row_sum = f.add(row_sum, m.get(i, j));
            if i == j {
                continue;
            }
            let expected = g.edge_index(i, j).map_or(0, |idx| s.values[idx]);
            if m.get(i, j) != expected {
                return violation(format!("stress matrix entry ({i}, {j}) does not match the stress"));
            }
        }
        if row_sum != 0 {
            return violation(format!("stress matrix row {i} does not sum to zero"));
        }
    }
    if !omega.kernel_contains_affine_span(r)? {
        return violation("stress matrix kernel misses the all-ones vector or a coordinate projection".into());
    }
    Ok(())
}
