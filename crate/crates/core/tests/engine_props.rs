#![allow(clippy::int_plus_one, clippy::needless_range_loop)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rigidlab::analysis::{analyze, generic_stress_dim, redundant_edges, AnalysisConfig, RedundancyMethod, Verdict};
use rigidlab::classifier::{chain_cover_stress_dim, critical_vertex_count, enumerate_kchains};
use rigidlab::construct::{complete, complete_bipartite, k_chain, ChainSpec};
use rigidlab::rigidity::{
    max_rigidity_rank, random_realization, random_stress, rigidity_matrix, stress_dim, stress_matrix, Realization,
};
use rigidlab::verify::random_graph;
use rigidlab::{FieldMatrix, Graph, PrimeField};

/// Rank over the rationals by fraction-free elimination on integers.
fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
    }
    rank
}

fn integer_rigidity_matrix(g: &Graph, coords: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let d = coords[0].len();
    g.edges()
        .iter()
        .map(|&(i, j)| {
            let mut row = vec![0; g.vertex_count() * d];
            for k in 0..d {
                row[i * d + k] = coords[j][k] - coords[i][k];
                row[j * d + k] = coords[i][k] - coords[j][k];
            }
            row
        })
        .collect()
}

fn cfg(seed: u64) -> AnalysisConfig {
    AnalysisConfig::with_seed(seed)
}

fn spec(s: &[usize]) -> ChainSpec {
    ChainSpec::new(s.to_vec()).unwrap()
}

#[test]
fn field_rank_matches_integer_rank() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for round in 0..200 {
        let v = rng.gen_range(2..=6);
        let d = 1 + round % 2;
        let g = random_graph(v, rng.gen_range(0.3..=1.0), &mut rng);
        // small coordinates, sometimes with deliberate coincidences
        let coords: Vec<Vec<i128>> = (0..v).map(|_| (0..d).map(|_| rng.gen_range(0..6)).collect()).collect();
        let r = Realization::from_coords(
            f,
            coords.iter().map(|c| c.iter().map(|&x| x as u64).collect()).collect(),
            0,
        )
        .unwrap();
        let ours = rigidity_matrix(&g, &r).unwrap().rank();
        assert_eq!(
            ours,
            bareiss_rank(integer_rigidity_matrix(&g, &coords)),
            "{g:?} at {coords:?}"
        );
        if v >= d + 1 {
            assert!(ours <= max_rigidity_rank(v, d));
        }
    }
}

#[test]
fn k4_plane_rank_by_integer_oracle() {
    let g = complete(4).unwrap();
    let coords = vec![vec![0, 0], vec![7, 1], vec![2, 9], vec![5, 4]];
    assert_eq!(bareiss_rank(integer_rigidity_matrix(&g, &coords)), 5);
    assert_eq!(generic_stress_dim(&g, 2, &cfg(1)).unwrap(), 1);
}

#[test]
fn random_square_matrices_are_invertible() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=12 {
        for _ in 0..10 {
            let rows: Vec<Vec<u64>> = (0..n).map(|_| f.random_vector(n, &mut rng)).collect();
            assert_eq!(FieldMatrix::from_rows(f, &rows).unwrap().rank(), n);
        }
    }
}

#[test]
fn low_rank_products_have_exact_rank() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for r in 0..=10 {
        let a: Vec<Vec<u64>> = (0..10).map(|_| f.random_vector(r, &mut rng)).collect();
        let b: Vec<Vec<u64>> = (0..r).map(|_| f.random_vector(10, &mut rng)).collect();
        let a = FieldMatrix::from_rows(f, &a).unwrap_or_else(|_| FieldMatrix::zeros(f, 10, 0));
        let b = FieldMatrix::from_rows(f, &b).unwrap_or_else(|_| FieldMatrix::zeros(f, 0, 10));
        let m = a.mul(&b).unwrap();
        assert_eq!(m.rank(), r);
        for x in m.kernel_basis() {
            assert!(m.mul_vec(&x).unwrap().iter().all(|&y| y == 0));
        }
    }
}

#[test]
fn random_vectors_differ_across_seeds() {
    let f = PrimeField::default();
    for s in 0..100u64 {
        let a = f.random_vector(4, &mut ChaCha8Rng::seed_from_u64(s));
        let b = f.random_vector(4, &mut ChaCha8Rng::seed_from_u64(s + 1000));
        assert_ne!(a, b);
        assert_eq!(a, f.random_vector(4, &mut ChaCha8Rng::seed_from_u64(s)));
    }
    assert!(f.random_vector(0, &mut ChaCha8Rng::seed_from_u64(0)).is_empty());
}

#[test]
fn stress_dimension_examples() {
    assert_eq!(
        generic_stress_dim(&complete_bipartite(7, 7).unwrap(), 5, &cfg(2)).unwrap(),
        1
    );
    assert_eq!(generic_stress_dim(&complete(4).unwrap(), 2, &cfg(2)).unwrap(), 1);
    let s = spec(&[1, 6, 6, 2]);
    let g = k_chain(&s);
    assert_eq!(g.edge_count(), 54);
    assert_eq!(generic_stress_dim(&g, 4, &cfg(2)).unwrap(), 4);
    assert_eq!(chain_cover_stress_dim(&s, 4).unwrap(), 4);
}

#[test]
fn bipartite_77_stress_touches_every_edge() {
    let f = PrimeField::default();
    let g = complete_bipartite(7, 7).unwrap();
    for seed in 0..5 {
        let r = random_realization(&g, 5, seed, f).unwrap();
        let s = random_stress(&g, &r, seed + 100).unwrap();
        assert!(s.values.iter().all(|&w| w != 0), "seed {seed}");
        assert!(s.is_equilibrium(&g, &r).unwrap());
    }
}

#[test]
fn chain_cover_formula_on_sampled_d5_chains() {
    let d = 5;
    let n = critical_vertex_count(d);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let eligible: Vec<ChainSpec> = enumerate_kchains(n, 4, n)
        .filter(|s| s.sizes()[1..s.len() - 1].iter().all(|&x| x >= d + 1))
        .collect();
    assert!(!eligible.is_empty());
    for _ in 0..12 {
        let s = &eligible[rng.gen_range(0..eligible.len())];
        let computed = generic_stress_dim(&k_chain(s), d, &cfg(rng.gen())).unwrap();
        assert_eq!(computed, chain_cover_stress_dim(s, d).unwrap(), "{s}");
    }
}

#[test]
fn stress_matrix_kernel_and_nullity_bound() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let d = rng.gen_range(1..=3);
        let v = rng.gen_range(d + 2..=9);
        let g = random_graph(v, rng.gen_range(0.5..=1.0), &mut rng);
        let r = random_realization(&g, d, rng.gen(), f).unwrap();
        let s = random_stress(&g, &r, rng.gen()).unwrap();
        assert!(s.is_equilibrium(&g, &r).unwrap());
        let omega = stress_matrix(&g, &s, f).unwrap();
        assert!(omega.is_symmetric());
        assert!(omega.kernel_contains_affine_span(&r).unwrap());
        assert!(omega.nullity() >= d + 1);
        assert_eq!(
            stress_dim(&g, &r).unwrap() + rigidity_matrix(&g, &r).unwrap().rank(),
            g.edge_count()
        );
    }
}

#[test]
fn hendrickson_conditions_hold_for_globally_rigid_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut rigid = 0;
    for _ in 0..60 {
        let d = rng.gen_range(1..=4);
        let v = rng.gen_range(d + 2..=12);
        let g = random_graph(v, rng.gen_range(0.4..=1.0), &mut rng);
        let report = analyze(&g, d, &cfg(rng.gen())).unwrap();
        if report.ggr == Verdict::Yes {
            rigid += 1;
            assert_eq!(report.glr, Verdict::Yes);
            assert_eq!(report.grr, Verdict::Yes);
            assert!(report.connectivity >= d + 1);
        }
    }
    assert!(rigid > 0);
}

#[test]
fn redundancy_methods_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20 {
        let d = rng.gen_range(1..=3);
        let v = rng.gen_range(d + 2..=8);
        let g = random_graph(v, rng.gen_range(0.5..=1.0), &mut rng);
        let config = AnalysisConfig {
            redundancy: RedundancyMethod::CrossCheck,
            ..cfg(rng.gen())
        };
        if analyze(&g, d, &cfg(config.seed)).unwrap().glr != Verdict::Yes {
            continue;
        }
        let fast = redundant_edges(&g, d, &cfg(config.seed)).unwrap();
        let checked = redundant_edges(&g, d, &config).unwrap();
        assert_eq!(fast, checked);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_transpose(seed in any::<u64>(), rows in 0usize..9, cols in 0usize..9, small in any::<bool>()) {
        // a tiny prime makes dependent rows common
        let f = if small { PrimeField::new(5).unwrap() } else { PrimeField::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = FieldMatrix::zeros(f, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f.random_element(&mut rng));
            }
        }
        let rank = m.rank();
        prop_assert!(rank <= rows.min(cols));
        prop_assert_eq!(rank + m.kernel_basis().len(), cols);
        prop_assert_eq!(m.transpose().rank(), rank);
    }

    #[test]
    fn single_edge_changes_rank_by_at_most_one(seed in any::<u64>(), v in 3usize..9, d in 1usize..4) {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(v, 0.5, &mut rng);
        let r = random_realization(&g, d, seed, f).unwrap();
        let base = rigidity_matrix(&g, &r).unwrap().rank();
        let a = rng.gen_range(0..v);
        let b = (a + rng.gen_range(1..v)) % v;
        let other = if g.has_edge(a, b) { g.without_edge(a, b).unwrap() } else { g.with_edge(a, b).unwrap() };
        let changed = rigidity_matrix(&other, &r).unwrap().rank();
        if g.has_edge(a, b) {
            prop_assert!(changed <= base && base <= changed + 1);
        } else {
            prop_assert!(base <= changed && changed <= base + 1);
        }
    }
}
