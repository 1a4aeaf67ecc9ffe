#![allow(clippy::int_plus_one, clippy::needless_range_loop)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rigidlab::classifier::enumerate_kchains;
use rigidlab::connectivity::{is_k_connected, vertex_connectivity};
use rigidlab::construct::{attach, complete, complete_bipartite, cone, k_chain, replace, AttachmentSpec, ChainSpec};
use rigidlab::verify::random_graph;
use rigidlab::Graph;

/// Smallest vertex set whose removal leaves a disconnected graph, by
/// exhaustive search over subsets in order of size.
fn brute_force_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return 0;
    }
    let adj = g.adjacency();
    for size in 0..n.saturating_sub(1) {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let alive: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) == 0).collect();
            let mut seen = vec![false; n];
            let mut stack = vec![alive[0]];
            seen[alive[0]] = true;
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if mask & (1 << w) == 0 && !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            if count < alive.len() {
                return size;
            }
        }
    }
    n - 1
}

fn spec(s: &[usize]) -> ChainSpec {
    ChainSpec::new(s.to_vec()).unwrap()
}

#[test]
fn chain_connectivity_matches_brute_force() {
    let g = k_chain(&spec(&[1, 6, 6, 2]));
    assert_eq!(brute_force_connectivity(&g), 6);
    assert_eq!(vertex_connectivity(&g), 6);

    let g = k_chain(&spec(&[3, 4, 3]));
    assert!(vertex_connectivity(&g) <= 4);
    assert!(!is_k_connected(&g, 5));
}

#[test]
fn attachments_are_six_connected() {
    let attach_to = |n: usize| {
        attach(&AttachmentSpec {
            host: complete(n).unwrap(),
            left_anchor: vec![0, 1],
            right_anchor: vec![2, 3, 4, 5],
            interior_sizes: vec![3, 5],
        })
        .unwrap()
    };
    let g = attach_to(6);
    assert_eq!((g.vertex_count(), g.edge_count()), (14, 56));
    // every host vertex is an anchor, so the 6 anchors cut nothing off;
    // the bound is the interior degree 7
    assert_eq!(vertex_connectivity(&g), 7);
    assert_eq!(brute_force_connectivity(&g), 7);
    assert!(is_k_connected(&g, 6));

    let g = attach_to(7);
    assert_eq!(vertex_connectivity(&g), 6);
    assert_eq!(brute_force_connectivity(&g), 6);
}

#[test]
fn chain_connectivity_follows_block_sizes() {
    // k >= 4: (d+1)-connected iff every interior block has >= d+1 vertices.
    // k <= 3 chains are K_{a,b} with connectivity min(a, b).
    for v in 2..=15 {
        for s in enumerate_kchains(v, 2, v) {
            let g = k_chain(&s);
            let kappa = vertex_connectivity(&g);
            let a = s.sizes();
            let k = a.len();
            for d in 1..=4 {
                let expected = match k {
                    2 => a[0].min(a[1]) >= d + 1,
                    3 => (a[0] + a[2]).min(a[1]) >= d + 1,
                    _ => a[1..k - 1].iter().all(|&x| x >= d + 1),
                };
                assert_eq!(kappa >= d + 1, expected, "chain {s}, d = {d}, kappa = {kappa}");
                assert_eq!(is_k_connected(&g, d + 1), expected, "chain {s}, d = {d}");
            }
        }
    }
}

#[test]
fn three_chain_is_merged_bipartite() {
    for s in enumerate_kchains(12, 3, 3) {
        let a = s.sizes();
        let g = k_chain(&s);
        let bip = complete_bipartite(a[0] + a[2], a[1]).unwrap();
        // chain blocks A1 | A2 | A3 -> bipartite sides A1 ∪ A3 | A2
        let mut perm = vec![0; g.vertex_count()];
        for x in 0..a[0] {
            perm[x] = x;
        }
        for x in a[0]..a[0] + a[1] {
            perm[x] = x + a[2];
        }
        for x in a[0] + a[1]..g.vertex_count() {
            perm[x] = x - a[1];
        }
        assert_eq!(g.relabel(&perm, g.vertex_count()).unwrap(), bip, "{s}");
        let mut dg = g.degrees();
        let mut db = bip.degrees();
        dg.sort_unstable();
        db.sort_unstable();
        assert_eq!(dg, db);
    }
}

#[test]
fn coning_adds_one_to_connectivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    while checked < 40 {
        let v = 3 + checked % 8;
        let g = random_graph(v, 0.5, &mut rng);
        if !g.is_connected() || g.is_complete() {
            continue;
        }
        assert_eq!(vertex_connectivity(&cone(&g)), vertex_connectivity(&g) + 1);
        checked += 1;
    }
}

#[test]
fn replacing_with_a_clique_keeps_boundary_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let g = random_graph(9, 0.5, &mut rng);
        let h: Vec<usize> = vec![1, 4, 6];
        let clique = complete(h.len()).unwrap();
        let ident: Vec<usize> = (0..h.len()).collect();
        let r = replace(&g, &h, &clique, &ident).unwrap();
        for &(a, b) in g.edges() {
            if !(h.contains(&a) && h.contains(&b)) {
                assert!(r.has_edge(a, b));
            }
        }
        for (i, &a) in h.iter().enumerate() {
            for &b in &h[i + 1..] {
                assert!(r.has_edge(a, b));
            }
        }
    }
}

proptest! {
    #[test]
    fn chain_counts_match_formulas(sizes in prop::collection::vec(1usize..6, 2..7)) {
        let s = ChainSpec::new(sizes.clone()).unwrap();
        let g = k_chain(&s);
        prop_assert_eq!(g.vertex_count(), sizes.iter().sum::<usize>());
        prop_assert_eq!(g.edge_count(), sizes.windows(2).map(|w| w[0] * w[1]).sum::<usize>());
        prop_assert_eq!(k_chain(&s.reversed()).edge_count(), g.edge_count());
        prop_assert_eq!(s.canonical(), s.reversed().canonical());
    }

    #[test]
    fn connectivity_matches_brute_force(seed in any::<u64>(), v in 2usize..10, density in 0.2f64..1.0) {
        let g = random_graph(v, density, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(vertex_connectivity(&g), brute_force_connectivity(&g));
    }

    #[test]
    fn text_and_json_round_trip(seed in any::<u64>(), v in 0usize..12) {
        let g = random_graph(v, 0.4, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(Graph::from_text(&g.to_text()).unwrap(), g.clone());
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }
}
