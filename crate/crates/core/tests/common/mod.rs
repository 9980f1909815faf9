//! Brute-force references shared by the integration tests. None of these
//! call into the matcher, the canonizer, or the solver.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use fgc::reduction::GeneratorRng;
use fgc::Graph;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> GeneratorRng {
    GeneratorRng::seed_from_u64(seed)
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges = (0..n)
        .tuple_combinations()
        .filter(|_| rng.gen_bool(p))
        .collect::<Vec<(usize, usize)>>();
    Graph::new(n, edges).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

pub fn edge_set(g: &Graph) -> HashSet<(usize, usize)> {
    g.edges().collect()
}

/// Tries every bijection.
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.node_count();
    if n != b.node_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let target = edge_set(b);
    (0..n).permutations(n).any(|perm| {
        a.edges().all(|(u, v)| {
            let (x, y) = (perm[u], perm[v]);
            target.contains(&(x.min(y), x.max(y)))
        })
    })
}

/// Every injective map from pattern nodes to host nodes, checked directly
/// against the motif (`induced = false`) or graphlet definition.
pub fn brute_occurrences(pattern: &Graph, host: &Graph, induced: bool) -> BTreeSet<Vec<usize>> {
    let k = pattern.node_count();
    let mut out = BTreeSet::new();
    for map in (0..host.node_count()).permutations(k) {
        let ok = (0..k).tuple_combinations().all(|(u, v)| {
            let pe = pattern.has_edge(u, v);
            let he = host.has_edge(map[u], map[v]);
            if induced {
                pe == he
            } else {
                !pe || he
            }
        });
        if ok {
            let mut image = map.clone();
            image.sort_unstable();
            out.insert(image);
        }
    }
    out
}

/// Quotient of `g` by the transitive closure of "shares a brute-force
/// occurrence", computed by repeated set merging.
pub fn brute_classes(g: &Graph, pattern: &Graph, induced: bool) -> Vec<BTreeSet<usize>> {
    let mut classes: Vec<BTreeSet<usize>> =
        (0..g.node_count()).map(|u| BTreeSet::from([u])).collect();
    for occ in brute_occurrences(pattern, g, induced) {
        let mut merged: BTreeSet<usize> = occ.iter().copied().collect();
        classes.retain(|c| {
            if c.is_disjoint(&merged) {
                true
            } else {
                merged.extend(c.iter().copied());
                false
            }
        });
        classes.push(merged);
    }
    classes.sort();
    classes
}

pub fn count_components(g: &Graph) -> usize {
    // Plain label propagation, independent of Graph::components.
    let n = g.node_count();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for (u, v) in g.edges() {
            let m = label[u].min(label[v]);
            if label[u] != m || label[v] != m {
                label[u] = m;
                label[v] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    label.iter().collect::<HashSet<_>>().len()
}

/// Fixes node 0 and tries every order of the rest.
pub fn brute_hamiltonian(g: &Graph) -> bool {
    let n = g.node_count();
    if n < 3 {
        return false;
    }
    (1..n).permutations(n - 1).any(|rest| {
        let cycle: Vec<usize> = std::iter::once(0).chain(rest).collect();
        (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
    })
}

/// Tries every way to split the nodes into consecutive triples of a permutation.
pub fn brute_triangle_partition(g: &Graph) -> bool {
    let n = g.node_count();
    if n == 0 || !n.is_multiple_of(3) {
        return false;
    }
    (0..n).permutations(n).any(|perm| {
        perm.chunks(3)
            .all(|t| g.has_edge(t[0], t[1]) && g.has_edge(t[0], t[2]) && g.has_edge(t[1], t[2]))
    })
}

/// Every `k`-subset of the sets, checked for covering `1..=3k` exactly.
pub fn brute_exact_cover(k: usize, sets: &[[usize; 3]]) -> bool {
    let universe: BTreeSet<usize> = (1..=3 * k).collect();
    sets.iter().combinations(k).any(|chosen| {
        let covered: Vec<usize> = chosen.iter().flat_map(|s| s.iter().copied()).collect();
        covered.len() == 3 * k && covered.iter().copied().collect::<BTreeSet<_>>() == universe
    })
}
