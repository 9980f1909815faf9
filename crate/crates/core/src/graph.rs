//! Undirected simple graphs with dense node IDs.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// An undirected simple graph on nodes `0..node_count`.
///
/// Graphs are immutable once built: no self-loops, no multi-edges, and
/// neighbor lists are kept sorted so that two graphs with the same labeled
/// edge set compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and out-of-range endpoints
    /// are rejected.
    pub fn new<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adj = vec![Vec::new(); node_count];
        for (u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{node_count}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop on node {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(mut adj: Vec<Vec<NodeId>>) -> Self {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph {
            adj,
            edge_count: twice / 2,
        }
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Self::from_adjacency(adj)
    }

    /// Path `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v));
        Self::new(n, edges).expect("path edges are valid")
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        let edges = (1..n).map(|v| (0, v));
        Self::new(n, edges).expect("star edges are valid")
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.adj.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn degree(&self, u: NodeId) -> Result<usize> {
        self.neighborhood(u).map(<[NodeId]>::len)
    }

    /// Sorted neighbors of `u`.
    pub fn neighborhood(&self, u: NodeId) -> Result<&[NodeId]> {
        self.adj
            .get(u)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::invalid(format!("node {u} not in 0..{}", self.adj.len())))
    }

    /// Unchecked neighbor access for hot loops; panics on an invalid node.
    pub(crate) fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        match self.adj.get(u) {
            Some(list) => list.binary_search(&v).is_ok(),
            None => false,
        }
    }

    /// Applies the node relabeling `u -> perm[u]`. `perm` must be a
    /// permutation of `0..node_count`.
    pub fn relabel(&self, perm: &[NodeId]) -> Result<Self> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::invalid(
                "relabeling is not a permutation of the node set",
            ));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&v| perm[v]).collect();
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `nodes`; node `nodes[i]` becomes `i`.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Self {
        let mut index = vec![usize::MAX; self.node_count()];
        for (i, &u) in nodes.iter().enumerate() {
            index[u] = i;
        }
        let adj = nodes
            .iter()
            .map(|&u| {
                self.adj[u]
                    .iter()
                    .filter(|&&v| index[v] != usize::MAX)
                    .map(|&v| index[v])
                    .collect()
            })
            .collect();
        Self::from_adjacency(adj)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.node_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// JSON shape `{"n": int, "edges": [[u, v], ...]}` with `u < v`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[NodeId; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Self> {
        Graph::new(repr.n, repr.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.node_count(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

/// The cycle `C_n` on nodes `0..n` with edges `{i, (i+1) mod n}`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!(
            "a simple cycle needs at least 3 nodes, got {n}"
        )));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Disjoint union; part `i` is shifted by the node count of the parts before it.
pub fn disjoint_union<'a, I>(parts: I) -> Graph
where
    I: IntoIterator<Item = &'a Graph>,
{
    let mut adj = Vec::new();
    let mut edge_count = 0;
    for part in parts {
        let offset = adj.len();
        adj.extend(
            part.adj
                .iter()
                .map(|list| list.iter().map(|&v| v + offset).collect::<Vec<_>>()),
        );
        edge_count += part.edge_count;
    }
    Graph { adj, edge_count }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_examples() {
        let c3 = cycle_graph(3).unwrap();
        assert_eq!(c3.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);

        let c5 = cycle_graph(5).unwrap();
        assert_eq!(c5.node_count(), 5);
        assert_eq!(c5.edge_count(), 5);
        assert!(c5.nodes().all(|u| c5.degree(u).unwrap() == 2));

        assert!(matches!(cycle_graph(2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn union_examples() {
        let c3 = cycle_graph(3).unwrap();
        let two = disjoint_union([&c3, &c3]);
        assert_eq!((two.node_count(), two.edge_count()), (6, 6));
        assert_eq!(two.components().len(), 2);

        let empty = disjoint_union(std::iter::empty());
        assert_eq!(empty.node_count(), 0);

        let parts = [
            cycle_graph(3).unwrap(),
            cycle_graph(4).unwrap(),
            cycle_graph(5).unwrap(),
        ];
        let g = disjoint_union(&parts);
        assert_eq!((g.node_count(), g.edge_count()), (12, 12));
        let sizes: Vec<_> = g.components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 4, 5]);
        assert!(!g.has_edge(2, 3));
    }

    #[test]
    fn degree_and_neighborhood() {
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(c4.degree(0).unwrap(), 2);
        assert_eq!(c4.neighborhood(0).unwrap(), &[1, 3]);

        let single = Graph::empty(1);
        assert_eq!(single.degree(0).unwrap(), 0);
        assert!(single.neighborhood(0).unwrap().is_empty());

        assert_eq!(Graph::complete(4).degree(2).unwrap(), 3);
        assert!(matches!(c4.degree(4), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn construction_rejects_loops_and_bad_ids() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        let g = Graph::new(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let c4 = cycle_graph(4).unwrap();
        assert!(c4.relabel(&[0, 0, 1, 2]).is_err());
        assert!(c4.relabel(&[0, 1, 2]).is_err());
        let r = c4.relabel(&[2, 0, 3, 1]).unwrap();
        assert_eq!(r.edge_count(), 4);
        assert!(r.has_edge(2, 0));
    }

    #[test]
    fn induced_subgraph_keeps_internal_edges() {
        let k4 = Graph::complete(4);
        let sub = k4.induced_subgraph(&[3, 1, 0]);
        assert_eq!(sub, Graph::complete(3));
    }
}
