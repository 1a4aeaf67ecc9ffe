//! Realizations over a prime field, the rigidity matrix, equilibrium stresses
//! and stress matrices.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::field::PrimeField;
use crate::graph::Graph;
use crate::matrix::FieldMatrix;

pub fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Largest possible rigidity-matrix rank for `v` points in dimension `d`:
/// `vd - C(d+1, 2)` once the points can affinely span, `C(v, 2)` below that.
pub fn max_rigidity_rank(v: usize, d: usize) -> usize {
    if v >= d + 1 {
        v * d - binomial2(d + 1)
    } else {
        binomial2(v)
    }
}

/// Coordinates `p_1, ..., p_v` in `F_p^d`, reproducible from the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    dimension: usize,
    coords: Vec<Vec<u64>>,
    seed: u64,
    field: PrimeField,
}

impl Realization {
    /// Explicit coordinates, reduced into the field.
    pub fn from_coords(field: PrimeField, coords: Vec<Vec<u64>>, seed: u64) -> Result<Self> {
        let dimension = coords.first().map_or(0, Vec::len);
        if dimension == 0 && !coords.is_empty() {
            return invalid("dimension must be positive");
        }
        if coords.iter().any(|c| c.len() != dimension) {
            return invalid("all points need the same dimension");
        }
        let p = field.modulus();
        let coords = coords
            .into_iter()
            .map(|c| c.into_iter().map(|x| x % p).collect())
            .collect();
        Ok(Realization {
            dimension,
            coords,
            seed,
            field,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn point(&self, i: usize) -> &[u64] {
        &self.coords[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Values of coordinate `k` across all points.
    pub fn projection(&self, k: usize) -> Vec<u64> {
        self.coords.iter().map(|c| c[k]).collect()
    }

    fn check_matches(&self, g: &Graph) -> Result<()> {
        if self.coords.len() != g.vertex_count() {
            return invalid(format!(
                "realization has {} points but graph has {} vertices",
                self.coords.len(),
                g.vertex_count()
            ));
        }
        Ok(())
    }
}

/// Uniform random coordinates for every vertex.
pub fn random_realization(g: &Graph, d: usize, seed: u64, field: PrimeField) -> Result<Realization> {
    if d == 0 {
        return invalid("dimension must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..g.vertex_count())
        .map(|_| field.random_vector(d, &mut rng))
        .collect();
    Ok(Realization {
        dimension: d,
        coords,
        seed,
        field,
    })
}

/// The `e x vd` rigidity matrix. The row of edge `{i, j}` holds `p_j - p_i`
/// in vertex `i`'s columns and `p_i - p_j` in vertex `j`'s.
pub fn rigidity_matrix(g: &Graph, r: &Realization) -> Result<FieldMatrix> {
    r.check_matches(g)?;
    let f = r.field;
    let d = r.dimension;
    let mut m = FieldMatrix::zeros(f, g.edge_count(), g.vertex_count() * d);
    for (row, &(i, j)) in g.edges().iter().enumerate() {
        for k in 0..d {
            let diff = f.sub(r.coords[j][k], r.coords[i][k]);
            m.set(row, i * d + k, diff);
            m.set(row, j * d + k, f.neg(diff));
        }
    }
    Ok(m)
}

/// Edge weights in canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stress {
    pub values: Vec<u64>,
}

impl Stress {
    pub fn zero(edge_count: usize) -> Self {
        Stress {
            values: vec![0; edge_count],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    /// `sum_j w_ij (p_j - p_i)` at every vertex, computed straight from the
    /// definition.
    pub fn equilibrium_residual(&self, g: &Graph, r: &Realization) -> Result<Vec<Vec<u64>>> {
        r.check_matches(g)?;
        if self.values.len() != g.edge_count() {
            return invalid("stress length does not match edge count");
        }
        let f = r.field;
        let d = r.dimension;
        let mut res = vec![vec![0; d]; g.vertex_count()];
        for (&w, &(i, j)) in self.values.iter().zip(g.edges()) {
            for k in 0..d {
                let diff = f.sub(r.coords[j][k], r.coords[i][k]);
                let t = f.mul(w, diff);
                res[i][k] = f.add(res[i][k], t);
                res[j][k] = f.sub(res[j][k], t);
            }
        }
        Ok(res)
    }

    pub fn is_equilibrium(&self, g: &Graph, r: &Realization) -> Result<bool> {
        Ok(self.equilibrium_residual(g, r)?.iter().flatten().all(|&x| x == 0))
    }
}

/// Basis of the stress space `ker(R^T)`.
pub fn stress_basis(g: &Graph, r: &Realization) -> Result<Vec<Stress>> {
    let rt = rigidity_matrix(g, r)?.transpose();
    Ok(rt.kernel_basis().into_iter().map(|values| Stress { values }).collect())
}

/// `e - rank R`.
pub fn stress_dim(g: &Graph, r: &Realization) -> Result<usize> {
    Ok(g.edge_count() - rigidity_matrix(g, r)?.rank())
}

/// Random combination of the given basis; the zero stress when it is empty.
pub fn combine_stresses(basis: &[Stress], edge_count: usize, field: PrimeField, seed: u64) -> Stress {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = field.random_vector(basis.len(), &mut rng);
    let mut values = vec![0; edge_count];
    for (c, s) in coeffs.iter().zip(basis) {
        for (acc, &x) in values.iter_mut().zip(&s.values) {
            *acc = field.add(*acc, field.mul(*c, x));
        }
    }
    Stress { values }
}

pub fn random_stress(g: &Graph, r: &Realization, seed: u64) -> Result<Stress> {
    let basis = stress_basis(g, r)?;
    Ok(combine_stresses(&basis, g.edge_count(), r.field, seed))
}

/// Symmetric `v x v` lift of a stress: `w_ij` on edges, zero on non-edges,
/// diagonal chosen so every row sums to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StressMatrix {
    pub entries: FieldMatrix,
}

pub fn stress_matrix(g: &Graph, s: &Stress, field: PrimeField) -> Result<StressMatrix> {
    if s.values.len() != g.edge_count() {
        return invalid("stress length does not match edge count");
    }
    let n = g.vertex_count();
    let mut m = FieldMatrix::zeros(field, n, n);
    for (&w, &(i, j)) in s.values.iter().zip(g.edges()) {
        m.set(i, j, w);
        m.set(j, i, w);
        m.set(i, i, field.sub(m.get(i, i), w));
        m.set(j, j, field.sub(m.get(j, j), w));
    }
    Ok(StressMatrix { entries: m })
}

impl StressMatrix {
    pub fn nullity(&self) -> usize {
        self.entries.nullity()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries == self.entries.transpose()
    }

    /// True when the all-ones vector and every coordinate projection of `r`
    /// are annihilated.
    pub fn kernel_contains_affine_span(&self, r: &Realization) -> Result<bool> {
        let ones = vec![1; self.entries.cols()];
        if !self.entries.mul_vec(&ones)?.iter().all(|&x| x == 0) {
            return Ok(false);
        }
        for k in 0..r.dimension() {
            if !self.entries.mul_vec(&r.projection(k))?.iter().all(|&x| x == 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
