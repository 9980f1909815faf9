//! Exact canonical certificates.
//!
//! Each connected component is canonized separately by color refinement
//! followed by an individualization-refinement search over the smallest
//! non-singleton cell; the component code is the least upper-triangle
//! adjacency encoding found at a leaf. Subtrees are pruned only by
//! automorphisms that fix the individualized prefix pointwise (twin
//! transpositions and automorphisms discovered from equal leaves), so
//! the result is exact. The graph certificate is the sorted multiset of
//! component codes.

use std::fmt;

use crate::graph::{Graph, NodeId};
use crate::union_find::UnionFind;

/// Isomorphism-complete encoding of a graph: equal iff isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCertificate(Vec<u8>);

impl CanonicalCertificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCertificate(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

pub fn canonical_certificate(g: &Graph) -> CanonicalCertificate {
    let mut codes: Vec<Vec<u8>> = g
        .components()
        .iter()
        .map(|comp| canonical_code(&g.induced_subgraph(comp)))
        .collect();
    codes.sort_unstable();

    let mut out = Vec::new();
    out.extend_from_slice(&(g.node_count() as u32).to_le_bytes());
    out.extend_from_slice(&(codes.len() as u32).to_le_bytes());
    for code in codes {
        out.extend_from_slice(&(code.len() as u32).to_le_bytes());
        out.extend_from_slice(&code);
    }
    CanonicalCertificate(out)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let degrees = |g: &Graph| {
        let mut d: Vec<_> = g.nodes().map(|u| g.neighbors(u).len()).collect();
        d.sort_unstable();
        d
    };
    if degrees(a) != degrees(b) {
        return false;
    }
    canonical_certificate(a) == canonical_certificate(b)
}

/// Canonical labeling of `g`: `labeling[u]` is the canonical position of `u`.
pub fn canonical_labeling(g: &Graph) -> Vec<NodeId> {
    Canonizer::new(g).run().1
}

/// Code of a single graph (components are not split here).
fn canonical_code(g: &Graph) -> Vec<u8> {
    let (bits, _) = Canonizer::new(g).run();
    let mut out = Vec::with_capacity(4 + bits.len());
    out.extend_from_slice(&(g.node_count() as u32).to_le_bytes());
    out.extend_from_slice(&bits);
    out
}

const MAX_STORED_AUTOMORPHISMS: usize = 256;

struct Canonizer<'a> {
    g: &'a Graph,
    twins: Vec<(NodeId, NodeId)>,
    automorphisms: Vec<Vec<NodeId>>,
    best: Option<(Vec<u8>, Vec<NodeId>)>,
}

impl<'a> Canonizer<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.node_count();
        let mut twins = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if are_twins(g, u, v) {
                    twins.push((u, v));
                }
            }
        }
        Canonizer {
            g,
            twins,
            automorphisms: Vec::new(),
            best: None,
        }
    }

    fn run(mut self) -> (Vec<u8>, Vec<NodeId>) {
        let n = self.g.node_count();
        let mut colors = vec![0u32; n];
        refine(self.g, &mut colors);
        let mut prefix = Vec::new();
        self.search(colors, &mut prefix);
        self.best.unwrap_or_default()
    }

    fn search(&mut self, colors: Vec<u32>, prefix: &mut Vec<NodeId>) {
        let n = self.g.node_count();
        let Some(cell) = target_cell(&colors) else {
            self.visit_leaf(&colors);
            return;
        };

        let mut explored: Vec<NodeId> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() {
                let mut orbits = self.orbits_fixing(prefix);
                if explored.iter().any(|&w| orbits.same(v, w)) {
                    continue;
                }
            }
            explored.push(v);

            let mut child: Vec<u32> = (0..n).map(|u| 2 * colors[u] + u32::from(u != v)).collect();
            refine(self.g, &mut child);
            prefix.push(v);
            self.search(child, prefix);
            prefix.pop();
        }
    }

    /// Orbit partition under the stored automorphisms that fix `prefix`
    /// pointwise, plus all twin transpositions.
    fn orbits_fixing(&self, prefix: &[NodeId]) -> UnionFind {
        let n = self.g.node_count();
        let mut uf = UnionFind::new(n);
        for &(u, v) in &self.twins {
            uf.union(u, v);
        }
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&p| gamma[p] == p) {
                for (u, &image) in gamma.iter().enumerate() {
                    uf.union(u, image);
                }
            }
        }
        uf
    }

    fn visit_leaf(&mut self, colors: &[u32]) {
        let labeling: Vec<NodeId> = colors.iter().map(|&c| c as NodeId).collect();
        let code = adjacency_bits(self.g, &labeling);
        match &self.best {
            None => self.best = Some((code, labeling)),
            Some((best_code, best_labeling)) => {
                if code < *best_code {
                    self.best = Some((code, labeling));
                } else if code == *best_code && self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS
                {
                    // Both labelings produce the same adjacency matrix, so
                    // best^-1 . leaf is an automorphism.
                    let mut inverse_best = vec![0; labeling.len()];
                    for (u, &pos) in best_labeling.iter().enumerate() {
                        inverse_best[pos] = u;
                    }
                    let gamma: Vec<NodeId> =
                        labeling.iter().map(|&pos| inverse_best[pos]).collect();
                    if gamma.iter().enumerate().any(|(u, &w)| u != w) {
                        self.automorphisms.push(gamma);
                    }
                }
            }
        }
    }
}

fn are_twins(g: &Graph, u: NodeId, v: NodeId) -> bool {
    let nu = g.neighbors(u).iter().filter(|&&w| w != v);
    let nv = g.neighbors(v).iter().filter(|&&w| w != u);
    nu.eq(nv)
}

/// Smallest non-singleton color class (lowest color on ties), or `None`
/// when the coloring is discrete.
fn target_cell(colors: &[u32]) -> Option<Vec<NodeId>> {
    let k = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut sizes = vec![0usize; k];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    let target = (0..k)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))?;
    Some(
        colors
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c as usize == target)
            .map(|(u, _)| u)
            .collect(),
    )
}

/// Refines `colors` to the coarsest equitable refinement. Colors are
/// renumbered `0..k` by sorted signature, so the numbering depends only on
/// the colored graph up to isomorphism.
fn refine(g: &Graph, colors: &mut [u32]) {
    let n = colors.len();
    let mut classes = usize::MAX;
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|u| {
                let mut around: Vec<u32> = g.neighbors(u).iter().map(|&v| colors[v]).collect();
                around.sort_unstable();
                (colors[u], around)
            })
            .collect();
        let mut distinct: Vec<&(u32, Vec<u32>)> = signatures.iter().collect();
        distinct.sort_unstable();
        distinct.dedup();
        for (u, sig) in signatures.iter().enumerate() {
            colors[u] = distinct.binary_search(&sig).expect("signature present") as u32;
        }
        if distinct.len() == classes {
            return;
        }
        classes = distinct.len();
    }
}

/// Upper-triangle adjacency matrix under `labeling`, packed MSB first.
fn adjacency_bits(g: &Graph, labeling: &[NodeId]) -> Vec<u8> {
    let n = g.node_count();
    let mut inverse = vec![0; n];
    for (u, &pos) in labeling.iter().enumerate() {
        inverse[pos] = u;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u8; total.div_ceil(8)];
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(inverse[i], inverse[j]) {
                bits[idx / 8] |= 0x80 >> (idx % 8);
            }
            idx += 1;
        }
    }
    bits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, disjoint_union};

    #[test]
    fn relabeled_cycle_has_equal_certificate() {
        let c4 = cycle_graph(4).unwrap();
        let r = c4.relabel(&[2, 0, 3, 1]).unwrap();
        assert_eq!(canonical_certificate(&c4), canonical_certificate(&r));
    }

    #[test]
    fn c6_differs_from_two_triangles() {
        let c6 = cycle_graph(6).unwrap();
        let c3 = cycle_graph(3).unwrap();
        let two = disjoint_union([&c3, &c3]);
        assert_ne!(canonical_certificate(&c6), canonical_certificate(&two));
        assert!(!is_isomorphic(&c6, &two));
    }

    #[test]
    fn single_nodes_and_empty_graph() {
        assert_eq!(
            canonical_certificate(&Graph::empty(1)),
            canonical_certificate(&Graph::empty(1))
        );
        assert_ne!(
            canonical_certificate(&Graph::empty(0)),
            canonical_certificate(&Graph::empty(1))
        );
    }

    #[test]
    fn cycle_vs_path() {
        let c5 = cycle_graph(5).unwrap();
        let shuffled = c5.relabel(&[4, 2, 0, 3, 1]).unwrap();
        assert!(is_isomorphic(&c5, &shuffled));
        assert!(!is_isomorphic(&cycle_graph(4).unwrap(), &Graph::path(4)));
    }

    #[test]
    fn symmetric_graphs_finish() {
        // Complete and edgeless graphs are all twins; the Petersen graph has
        // no twins and exercises automorphism pruning.
        let k12 = Graph::complete(12);
        assert_eq!(canonical_labeling(&k12).len(), 12);
        let petersen = Graph::new(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        let r = petersen.relabel(&[3, 9, 0, 5, 1, 8, 2, 7, 4, 6]).unwrap();
        assert!(is_isomorphic(&petersen, &r));
    }

    #[test]
    fn labeling_is_a_permutation_that_yields_the_code() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let lab = canonical_labeling(&g);
        let mut sorted = lab.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
        let canon = g.relabel(&lab).unwrap();
        let relabeled = g.relabel(&[4, 3, 1, 0, 2]).unwrap();
        assert_eq!(
            canon,
            relabeled.relabel(&canonical_labeling(&relabeled)).unwrap()
        );
    }
}
