mod common;

use fgc::graph::{cycle_graph, disjoint_union};
use fgc::{canonical_certificate, is_isomorphic, Graph};
use proptest::prelude::*;

use common::{brute_isomorphic, count_components, random_graph, random_permutation, rng};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn arb_graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn certificate_is_relabeling_invariant((g, perm) in arb_graph_with_perm(14)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_certificate(&g), canonical_certificate(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn degree_sum_is_twice_edge_count(g in arb_graph(12)) {
        let total: usize = g.nodes().map(|u| g.degree(u).unwrap()).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn union_adds_counts(parts in proptest::collection::vec(arb_graph(6), 0..4)) {
        let u = disjoint_union(&parts);
        prop_assert_eq!(u.node_count(), parts.iter().map(Graph::node_count).sum::<usize>());
        prop_assert_eq!(u.edge_count(), parts.iter().map(Graph::edge_count).sum::<usize>());
        prop_assert_eq!(count_components(&u), parts.iter().map(count_components).sum::<usize>());
    }
}

#[test]
fn isomorphism_matches_brute_force() {
    let mut r = rng(11);
    let mut agree_yes = 0;
    for trial in 0..400 {
        let n = 1 + trial % 8;
        let p = [0.2, 0.4, 0.5, 0.7][trial % 4];
        let a = random_graph(&mut r, n, p);
        // Half the pairs are relabelings, half are independent draws with
        // the same edge count where possible.
        let b = if trial % 2 == 0 {
            a.relabel(&random_permutation(&mut r, n)).unwrap()
        } else {
            random_graph(&mut r, n, p)
        };
        let expected = brute_isomorphic(&a, &b);
        assert_eq!(is_isomorphic(&a, &b), expected, "{a:?} vs {b:?}");
        assert_eq!(
            canonical_certificate(&a) == canonical_certificate(&b),
            expected
        );
        agree_yes += usize::from(expected);
    }
    assert!(agree_yes > 200);
}

#[test]
fn regular_graphs_of_equal_size_are_separated() {
    // Same node count and degree sequence, brute force says non-isomorphic.
    let c6 = cycle_graph(6).unwrap();
    let c3 = cycle_graph(3).unwrap();
    let two = disjoint_union([&c3, &c3]);
    assert!(!brute_isomorphic(&c6, &two));
    assert!(!is_isomorphic(&c6, &two));

    // Prism (C3 x K2) vs K_{3,3}: both 3-regular on 6 nodes.
    let prism = Graph::new(
        6,
        [
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap();
    let k33 = Graph::new(
        6,
        [
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
        ],
    )
    .unwrap();
    assert!(!brute_isomorphic(&prism, &k33));
    assert!(!is_isomorphic(&prism, &k33));

    // C8 vs two C4s and C3+C5.
    let c8 = cycle_graph(8).unwrap();
    let c4 = cycle_graph(4).unwrap();
    let c5 = cycle_graph(5).unwrap();
    let split = disjoint_union([&c4, &c4]);
    let mixed = disjoint_union([&c3, &c5]);
    for (a, b) in [(&c8, &split), (&c8, &mixed), (&split, &mixed)] {
        assert!(!brute_isomorphic(a, b));
        assert!(!is_isomorphic(a, b));
    }
}

#[test]
fn reduced_size_graphs_are_canonized() {
    // Disjoint cycles of lengths 3..11 (63 nodes) under a shuffle.
    let cycles: Vec<Graph> = (3..=11).map(|l| cycle_graph(l).unwrap()).collect();
    let g = disjoint_union(&cycles);
    let mut r = rng(5);
    let h = g
        .relabel(&random_permutation(&mut r, g.node_count()))
        .unwrap();
    assert!(is_isomorphic(&g, &h));
    let mut swapped = cycles.clone();
    swapped[0] = cycle_graph(12).unwrap();
    swapped[1] = Graph::path(3);
    assert!(!is_isomorphic(&g, &disjoint_union(&swapped)));
}

#[test]
fn strongly_regular_and_symmetric_graphs() {
    // Shrikhande vs 4x4 rook's graph: same parameters srg(16,6,2,2), not
    // isomorphic. Color refinement alone cannot tell them apart.
    let rook = Graph::new(
        16,
        (0..16usize).flat_map(|u| {
            (u + 1..16)
                .filter(move |&v| u / 4 == v / 4 || u % 4 == v % 4)
                .map(move |v| (u, v))
        }),
    )
    .unwrap();
    let shrikhande = Graph::new(
        16,
        (0..16usize).flat_map(|u| {
            (u + 1..16).filter_map(move |v| {
                let (du, dv) = (((v / 4) + 4 - (u / 4)) % 4, ((v % 4) + 4 - (u % 4)) % 4);
                let adjacent = matches!(
                    (du, dv),
                    (0, 1) | (0, 3) | (1, 0) | (3, 0) | (1, 1) | (3, 3)
                );
                adjacent.then_some((u, v))
            })
        }),
    )
    .unwrap();
    assert_eq!(rook.edge_count(), 48);
    assert_eq!(shrikhande.edge_count(), 48);
    assert!(!is_isomorphic(&rook, &shrikhande));
    let mut r = rng(3);
    let shuffled = shrikhande.relabel(&random_permutation(&mut r, 16)).unwrap();
    assert!(is_isomorphic(&shrikhande, &shuffled));
    let shuffled = rook.relabel(&random_permutation(&mut r, 16)).unwrap();
    assert!(is_isomorphic(&rook, &shuffled));
}
