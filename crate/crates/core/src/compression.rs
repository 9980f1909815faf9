//! Compression steps and the familial compression decision solver.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_certificate, CanonicalCertificate};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::matcher::{enumerate_occurrences, Pattern};
use crate::union_find::UnionFind;

/// Partition of a graph's nodes into classes `0..class_count`, numbered by
/// the smallest node each class contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodePartition {
    class_of: Vec<usize>,
    class_count: usize,
}

impl NodePartition {
    pub fn discrete(n: usize) -> Self {
        NodePartition {
            class_of: (0..n).collect(),
            class_count: n,
        }
    }

    fn from_union_find(n: usize, uf: &mut UnionFind) -> Self {
        let mut id_of_root = vec![usize::MAX; n];
        let mut class_of = Vec::with_capacity(n);
        let mut next = 0;
        for u in 0..n {
            let root = uf.find(u);
            if id_of_root[root] == usize::MAX {
                id_of_root[root] = next;
                next += 1;
            }
            class_of.push(id_of_root[root]);
        }
        NodePartition {
            class_of,
            class_count: next,
        }
    }

    pub fn class_of(&self, u: NodeId) -> usize {
        self.class_of[u]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn is_discrete(&self) -> bool {
        self.class_count == self.class_of.len()
    }

    /// Members of each class, ascending.
    pub fn classes(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.class_count];
        for (u, &c) in self.class_of.iter().enumerate() {
            out[c].push(u);
        }
        out
    }
}

/// Transitive closure of "lies in a common occurrence of `f`" on `g`'s nodes.
pub fn occurrence_partition(g: &Graph, f: &Pattern) -> Result<NodePartition> {
    f.check_family_member(0)?;
    let n = g.node_count();
    let mut uf = UnionFind::new(n);
    for occ in enumerate_occurrences(f, g) {
        let (&first, rest) = occ
            .nodes()
            .split_first()
            .expect("family patterns are non-empty");
        for &u in rest {
            uf.union(first, u);
        }
    }
    Ok(NodePartition::from_union_find(n, &mut uf))
}

/// Quotient of `g` by `partition`: classes become nodes, classes are
/// adjacent iff some members are, intra-class edges disappear.
pub fn quotient(g: &Graph, partition: &NodePartition) -> Graph {
    let edges = g.edges().filter_map(|(u, v)| {
        let (a, b) = (partition.class_of(u), partition.class_of(v));
        (a != b).then_some((a, b))
    });
    Graph::new(partition.class_count(), edges).expect("quotient edges are in range and loop-free")
}

/// One `f`-compression step. When `f` has no occurrence the returned graph
/// equals `g` and the partition is discrete.
pub fn compress_step(g: &Graph, f: &Pattern) -> Result<(Graph, NodePartition)> {
    let partition = occurrence_partition(g, f)?;
    if partition.is_discrete() {
        return Ok((g.clone(), partition));
    }
    Ok((quotient(g, &partition), partition))
}

/// Applies the family members named by `steps` in order.
pub fn replay(g: &Graph, family: &[Pattern], steps: &[usize]) -> Result<Graph> {
    Ok(replay_trace(g, family, steps)?
        .pop()
        .expect("trace starts with g"))
}

/// Like [`replay`] but returns every intermediate graph, starting with `g`.
pub fn replay_trace(g: &Graph, family: &[Pattern], steps: &[usize]) -> Result<Vec<Graph>> {
    let mut trace = vec![g.clone()];
    for (pos, &i) in steps.iter().enumerate() {
        let f = family.get(i).ok_or_else(|| {
            Error::invalid(format!(
                "step {pos} names family index {i}, but the family has {} member(s)",
                family.len()
            ))
        })?;
        let current = trace.last().expect("non-empty");
        let (next, _) = compress_step(current, f)?;
        trace.push(next);
    }
    Ok(trace)
}

/// One decision-problem input: can `target` be reached from `graph`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgcInstance {
    pub graph: Graph,
    pub target: Graph,
    pub family: Vec<Pattern>,
}

impl FgcInstance {
    pub fn new(graph: Graph, target: Graph, family: Vec<Pattern>) -> Result<Self> {
        let inst = FgcInstance {
            graph,
            target,
            family,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Every family member must have at least three nodes.
    pub fn validate(&self) -> Result<()> {
        self.family
            .iter()
            .enumerate()
            .try_for_each(|(i, f)| f.check_family_member(i))
    }
}

/// Family indices whose compressions, applied in order, reach the target.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressionWitness {
    pub steps: Vec<usize>,
}

impl CompressionWitness {
    pub fn new(steps: Vec<usize>) -> Self {
        CompressionWitness { steps }
    }

    /// Node counts of `G^0 .. G^k` along the witness.
    pub fn intermediate_sizes(&self, instance: &FgcInstance) -> Result<Vec<usize>> {
        Ok(
            replay_trace(&instance.graph, &instance.family, &self.steps)?
                .iter()
                .map(Graph::node_count)
                .collect(),
        )
    }

    /// Replays the witness and checks that every step shrinks the graph and
    /// that the final graph is isomorphic to the target.
    pub fn verify(&self, instance: &FgcInstance) -> Result<()> {
        let trace = replay_trace(&instance.graph, &instance.family, &self.steps)?;
        for (pos, pair) in trace.windows(2).enumerate() {
            if pair[1].node_count() >= pair[0].node_count() {
                return Err(Error::InvalidWitness(format!(
                    "step {pos} (family index {}) does not change the graph",
                    self.steps[pos]
                )));
            }
        }
        let last = trace.last().expect("non-empty");
        if !crate::canon::is_isomorphic(last, &instance.target) {
            return Err(Error::InvalidWitness(format!(
                "replay ends with {} node(s) and {} edge(s), which is not isomorphic to the target",
                last.node_count(),
                last.edge_count()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Yes(CompressionWitness),
    No,
    /// The state budget ran out before the search finished.
    Inconclusive,
}

impl SolveOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, SolveOutcome::Yes(_))
    }

    pub fn witness(&self) -> Option<&CompressionWitness> {
        match self {
            SolveOutcome::Yes(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Distinct (up to isomorphism) graphs reached, including the start.
    pub states_explored: usize,
    /// Successors skipped because an isomorphic graph was already visited.
    pub memo_hits: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolverConfig {
    pub max_states: Option<usize>,
}

/// Decides the instance with an unbounded search.
pub fn solve_fgc(instance: &FgcInstance) -> Result<(SolveOutcome, SolveStats)> {
    solve_fgc_with(instance, SolverConfig::default())
}

/// Depth-first search over compression sequences, trying family members in
/// ascending index order and skipping steps that change nothing. Visited
/// graphs are keyed by canonical certificate; compression commutes with
/// relabeling, so an isomorphic revisit cannot lead anywhere new.
pub fn solve_fgc_with(
    instance: &FgcInstance,
    config: SolverConfig,
) -> Result<(SolveOutcome, SolveStats)> {
    instance.validate()?;
    let mut solver = Solver {
        family: &instance.family,
        target: &instance.target,
        target_cert: canonical_certificate(&instance.target),
        visited: HashSet::new(),
        stats: SolveStats::default(),
        max_states: config.max_states,
    };
    let start_cert = canonical_certificate(&instance.graph);
    solver.visited.insert(start_cert.clone());
    solver.stats.states_explored = 1;
    let mut path = Vec::new();
    let outcome = match solver.search(&instance.graph, start_cert, &mut path)? {
        Search::Found => SolveOutcome::Yes(CompressionWitness::new(path)),
        Search::Exhausted => SolveOutcome::No,
        Search::OutOfBudget => SolveOutcome::Inconclusive,
    };
    Ok((outcome, solver.stats))
}

enum Search {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Solver<'a> {
    family: &'a [Pattern],
    target: &'a Graph,
    target_cert: CanonicalCertificate,
    visited: HashSet<CanonicalCertificate>,
    stats: SolveStats,
    max_states: Option<usize>,
}

impl Solver<'_> {
    fn search(
        &mut self,
        g: &Graph,
        cert: CanonicalCertificate,
        path: &mut Vec<usize>,
    ) -> Result<Search> {
        if cert == self.target_cert {
            return Ok(Search::Found);
        }
        // Steps never add nodes or edges.
        if g.node_count() <= self.target.node_count() || g.edge_count() < self.target.edge_count() {
            return Ok(Search::Exhausted);
        }
        for (i, f) in self.family.iter().enumerate() {
            let (next, _) = compress_step(g, f)?;
            if next.node_count() == g.node_count() {
                continue;
            }
            let next_cert = canonical_certificate(&next);
            if !self.visited.insert(next_cert.clone()) {
                self.stats.memo_hits += 1;
                continue;
            }
            if self
                .max_states
                .is_some_and(|max| self.stats.states_explored >= max)
            {
                return Ok(Search::OutOfBudget);
            }
            self.stats.states_explored += 1;
            path.push(i);
            match self.search(&next, next_cert, path)? {
                Search::Exhausted => {
                    path.pop();
                }
                done => return Ok(done),
            }
        }
        Ok(Search::Exhausted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, disjoint_union};

    fn triangle() -> Pattern {
        Pattern::motif(cycle_graph(3).unwrap())
    }

    fn bowtie() -> Graph {
        Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap()
    }

    #[test]
    fn partition_examples() {
        let p = occurrence_partition(&cycle_graph(6).unwrap(), &triangle()).unwrap();
        assert!(p.is_discrete());
        assert_eq!(p.class_count(), 6);

        let p = occurrence_partition(&bowtie(), &triangle()).unwrap();
        assert_eq!(p.classes(), vec![vec![0, 1, 2, 3, 4]]);

        let c3 = cycle_graph(3).unwrap();
        let p = occurrence_partition(&disjoint_union([&c3, &c3]), &triangle()).unwrap();
        assert_eq!(p.classes(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn small_patterns_are_rejected() {
        let edge = Pattern::motif(Graph::path(2));
        assert!(matches!(
            occurrence_partition(&bowtie(), &edge),
            Err(Error::FamilyMemberTooSmall { nodes: 2, .. })
        ));
    }

    #[test]
    fn step_examples() {
        let (q, _) = compress_step(&cycle_graph(3).unwrap(), &triangle()).unwrap();
        assert_eq!(q, Graph::empty(1));

        let c6 = cycle_graph(6).unwrap();
        let (q, p) = compress_step(&c6, &triangle()).unwrap();
        assert_eq!(q, c6);
        assert!(p.is_discrete());

        let bridged =
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap();
        let (q, _) = compress_step(&bridged, &triangle()).unwrap();
        assert_eq!(q, Graph::path(2));
    }

    #[test]
    fn class_ids_follow_smallest_member() {
        // Triangle on {3,4,5}; nodes 0..2 stay single.
        let g = Graph::new(6, [(3, 4), (4, 5), (5, 3), (0, 3)]).unwrap();
        let (q, p) = compress_step(&g, &triangle()).unwrap();
        assert_eq!(p.class_map(), &[0, 1, 2, 3, 3, 3]);
        assert_eq!(q.edges().collect::<Vec<_>>(), vec![(0, 3)]);
    }

    #[test]
    fn replay_examples() {
        let c3 = cycle_graph(3).unwrap();
        let fam = vec![triangle()];
        assert_eq!(replay(&c3, &fam, &[0]).unwrap(), Graph::empty(1));
        assert_eq!(replay(&c3, &fam, &[]).unwrap(), c3);
        assert_eq!(
            replay(&disjoint_union([&c3, &c3]), &fam, &[0]).unwrap(),
            Graph::empty(2)
        );
        assert!(matches!(
            replay(&c3, &fam, &[1]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn solver_examples() {
        let parts = [
            cycle_graph(3).unwrap(),
            cycle_graph(4).unwrap(),
            cycle_graph(5).unwrap(),
        ];
        let z = disjoint_union(&parts);
        let inst =
            FgcInstance::new(z.clone(), Graph::empty(1), vec![Pattern::graphlet(z)]).unwrap();
        let (out, _) = solve_fgc(&inst).unwrap();
        assert_eq!(out, SolveOutcome::Yes(CompressionWitness::new(vec![0])));

        let c4 = cycle_graph(4).unwrap();
        let inst = FgcInstance::new(c4.clone(), c4.clone(), vec![triangle()]).unwrap();
        assert_eq!(
            solve_fgc(&inst).unwrap().0,
            SolveOutcome::Yes(CompressionWitness::default())
        );

        let chorded = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let inst = FgcInstance::new(chorded, Graph::empty(1), vec![Pattern::motif(c4)]).unwrap();
        assert!(solve_fgc(&inst).unwrap().0.is_yes());

        let inst =
            FgcInstance::new(cycle_graph(6).unwrap(), Graph::empty(1), vec![triangle()]).unwrap();
        assert_eq!(solve_fgc(&inst).unwrap().0, SolveOutcome::No);
    }

    #[test]
    fn witness_verification() {
        let c3 = cycle_graph(3).unwrap();
        let inst = FgcInstance::new(
            disjoint_union([&c3, &c3]),
            Graph::empty(2),
            vec![triangle()],
        )
        .unwrap();
        assert!(CompressionWitness::new(vec![0]).verify(&inst).is_ok());
        assert_eq!(
            CompressionWitness::new(vec![0])
                .intermediate_sizes(&inst)
                .unwrap(),
            vec![6, 2]
        );
        assert!(matches!(
            CompressionWitness::new(vec![0, 0]).verify(&inst),
            Err(Error::InvalidWitness(_))
        ));
        assert!(matches!(
            CompressionWitness::new(vec![]).verify(&inst),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn state_budget() {
        let c3 = cycle_graph(3).unwrap();
        // Reaching two isolated nodes needs one step beyond the start state.
        let inst = FgcInstance::new(
            disjoint_union([&c3, &c3]),
            Graph::empty(2),
            vec![triangle()],
        )
        .unwrap();
        let cfg = SolverConfig {
            max_states: Some(1),
        };
        assert_eq!(
            solve_fgc_with(&inst, cfg).unwrap().0,
            SolveOutcome::Inconclusive
        );
        let cfg = SolverConfig {
            max_states: Some(2),
        };
        assert!(solve_fgc_with(&inst, cfg).unwrap().0.is_yes());
    }

    #[test]
    fn instance_validation_names_pattern() {
        let bad = Pattern::motif(Graph::path(2)).named("tiny");
        let err =
            FgcInstance::new(Graph::empty(3), Graph::empty(1), vec![triangle(), bad]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("family member below minimum size"), "{msg}");
        assert!(msg.contains("'tiny'") && msg.contains("index 1"), "{msg}");
    }
}
