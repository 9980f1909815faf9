//! Exhaustive reference solvers used to cross-check the reduction and the
//! compression solver.

use super::{CoverWitness, Xc3Instance};
use crate::graph::{Graph, NodeId};

/// Depth-first exact cover search: branch on the lowest uncovered element
/// over the sets that contain it and avoid everything chosen so far, in
/// ascending set order. Returns the first cover found.
pub fn solve_xc3_bruteforce(x: &Xc3Instance) -> Option<CoverWitness> {
    let mut covered = vec![false; x.universe_size() + 1];
    let mut chosen = Vec::new();
    if cover_from(x, &mut covered, &mut chosen) {
        Some(CoverWitness::new(chosen))
    } else {
        None
    }
}

fn cover_from(x: &Xc3Instance, covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
    let Some(lowest) = (1..covered.len()).find(|&e| !covered[e]) else {
        return true;
    };
    for (j, s) in x.sets().iter().enumerate() {
        if !s.contains(&lowest) || s.iter().any(|&e| covered[e]) {
            continue;
        }
        for &e in s {
            covered[e] = true;
        }
        chosen.push(j);
        if cover_from(x, covered, chosen) {
            return true;
        }
        chosen.pop();
        for &e in s {
            covered[e] = false;
        }
    }
    false
}

/// Whether `g` has a cycle through all of its nodes. Graphs with fewer than
/// three nodes have no simple cycle.
pub fn hamiltonian_bruteforce(g: &Graph) -> bool {
    let n = g.node_count();
    if n < 3 {
        return false;
    }
    // Fix node 0 as the start; extend orderings one node at a time.
    let mut order = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    extend_ordering(g, &mut order, &mut used)
}

fn extend_ordering(g: &Graph, order: &mut Vec<NodeId>, used: &mut [bool]) -> bool {
    let n = g.node_count();
    let last = *order.last().expect("non-empty");
    if order.len() == n {
        return g.has_edge(last, order[0]);
    }
    for v in 0..n {
        if used[v] || !g.has_edge(last, v) {
            continue;
        }
        used[v] = true;
        order.push(v);
        if extend_ordering(g, order, used) {
            return true;
        }
        order.pop();
        used[v] = false;
    }
    false
}

/// Whether `g`'s nodes split into triples that each span a triangle.
/// False unless the node count is a multiple of three.
pub fn triangle_partition_bruteforce(g: &Graph) -> bool {
    let n = g.node_count();
    if !n.is_multiple_of(3) {
        return false;
    }
    partition_from(g, &mut vec![false; n])
}

fn partition_from(g: &Graph, used: &mut [bool]) -> bool {
    let n = used.len();
    let Some(a) = (0..n).find(|&u| !used[u]) else {
        return true;
    };
    used[a] = true;
    for b in a + 1..n {
        if used[b] {
            continue;
        }
        for c in b + 1..n {
            if used[c] || !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
                continue;
            }
            used[b] = true;
            used[c] = true;
            if partition_from(g, used) {
                return true;
            }
            used[b] = false;
            used[c] = false;
        }
    }
    used[a] = false;
    false
}
