//! Occurrence enumeration for motif (subgraph) and graphlet (induced
//! subgraph) patterns, including disconnected patterns.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_certificate, CanonicalCertificate};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Minimum node count for a pattern used in a compression family.
pub const MIN_FAMILY_PATTERN_NODES: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchMode {
    /// Every pattern edge maps to a host edge.
    Motif,
    /// Additionally every pattern non-edge maps to a host non-edge.
    #[default]
    Graphlet,
}

impl std::fmt::Display for MatchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatchMode::Motif => "motif",
            MatchMode::Graphlet => "graphlet",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pattern {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub mode: MatchMode,
    pub graph: Graph,
}

impl Pattern {
    pub fn new(graph: Graph, mode: MatchMode) -> Self {
        Pattern {
            name: None,
            mode,
            graph,
        }
    }

    pub fn motif(graph: Graph) -> Self {
        Self::new(graph, MatchMode::Motif)
    }

    pub fn graphlet(graph: Graph) -> Self {
        Self::new(graph, MatchMode::Graphlet)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_mode(mut self, mode: MatchMode) -> Self {
        self.mode = mode;
        self
    }

    /// Name if present, otherwise `#index`.
    pub fn label(&self, index: usize) -> String {
        match &self.name {
            Some(name) => format!("'{name}'"),
            None => format!("#{index}"),
        }
    }

    /// Rejects patterns too small to take part in a compression family.
    pub fn check_family_member(&self, index: usize) -> Result<()> {
        let nodes = self.graph.node_count();
        if nodes < MIN_FAMILY_PATTERN_NODES {
            return Err(Error::FamilyMemberTooSmall {
                index,
                label: self.label(index),
                nodes,
            });
        }
        Ok(())
    }
}

/// Host node set covered by one embedding, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    nodes: Vec<NodeId>,
}

impl Occurrence {
    pub fn from_nodes(mut nodes: Vec<NodeId>) -> Self {
        nodes.sort_unstable();
        Occurrence { nodes }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.nodes.binary_search(&u).is_ok()
    }
}

/// All distinct node-set images of injective embeddings of `pattern` in `host`.
///
/// Disconnected patterns are handled per component: the images of each
/// component are enumerated and deduplicated on their own, then combined
/// into pairwise disjoint choices (with no host edge between the chosen
/// sets in graphlet mode). This yields the same image sets as matching the
/// whole pattern at once without paying for the product of the components'
/// automorphisms.
pub fn enumerate_occurrences(pattern: &Pattern, host: &Graph) -> BTreeSet<Occurrence> {
    let p = &pattern.graph;
    if p.node_count() > host.node_count() || p.edge_count() > host.edge_count() {
        return BTreeSet::new();
    }
    let mut components: Vec<(Vec<NodeId>, CanonicalCertificate)> = p
        .components()
        .into_iter()
        .map(|c| {
            let cert = canonical_certificate(&p.induced_subgraph(&c));
            (c, cert)
        })
        .collect();
    if components.len() <= 1 {
        return embedding_images(pattern, host);
    }
    // Largest first; isomorphic components end up adjacent.
    components.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.1.cmp(&b.1)));

    let mut choices = Vec::with_capacity(components.len());
    for (i, (comp, cert)) in components.iter().enumerate() {
        let sub = Pattern::new(p.induced_subgraph(comp), pattern.mode);
        let images: Vec<Occurrence> = embedding_images(&sub, host).into_iter().collect();
        if images.is_empty() {
            return BTreeSet::new();
        }
        let same_as_previous = i > 0 && components[i - 1].1 == *cert;
        choices.push((images, same_as_previous));
    }

    let mut combiner = Combiner {
        host,
        mode: pattern.mode,
        choices: &choices,
        used: vec![false; host.node_count()],
        picked: Vec::with_capacity(choices.len()),
        out: BTreeSet::new(),
    };
    combiner.extend(0);
    combiner.out
}

fn embedding_images(pattern: &Pattern, host: &Graph) -> BTreeSet<Occurrence> {
    let mut out = BTreeSet::new();
    let _ = for_each_embedding(pattern, host, |mapping| {
        out.insert(Occurrence::from_nodes(mapping.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

/// Picks one image per pattern component. Consecutive isomorphic
/// components take strictly increasing image indices, since swapping
/// their images gives the same union.
struct Combiner<'a> {
    host: &'a Graph,
    mode: MatchMode,
    choices: &'a [(Vec<Occurrence>, bool)],
    used: Vec<bool>,
    picked: Vec<usize>,
    out: BTreeSet<Occurrence>,
}

impl Combiner<'_> {
    fn extend(&mut self, level: usize) {
        if level == self.choices.len() {
            let nodes = (0..self.used.len()).filter(|&u| self.used[u]).collect();
            self.out.insert(Occurrence { nodes });
            return;
        }
        let (images, same_as_previous) = &self.choices[level];
        let start = if *same_as_previous {
            self.picked[level - 1] + 1
        } else {
            0
        };
        for (idx, image) in images.iter().enumerate().skip(start) {
            if !self.compatible(image) {
                continue;
            }
            for &u in image.nodes() {
                self.used[u] = true;
            }
            self.picked.push(idx);
            self.extend(level + 1);
            self.picked.pop();
            for &u in image.nodes() {
                self.used[u] = false;
            }
        }
    }

    fn compatible(&self, image: &Occurrence) -> bool {
        let host = self.host;
        image.nodes().iter().all(|&u| {
            !self.used[u]
                && (self.mode == MatchMode::Motif
                    || host.neighbors(u).iter().all(|&v| !self.used[v]))
        })
    }
}

/// Whether at least one embedding exists; stops at the first one found.
pub fn has_occurrence(pattern: &Pattern, host: &Graph) -> bool {
    for_each_embedding(pattern, host, |_| ControlFlow::Break(())).is_break()
}

/// Calls `visit` with every injective embedding; `mapping[p]` is the host
/// image of pattern node `p`. The same image set may be visited more than
/// once (one per embedding).
pub fn for_each_embedding<F>(pattern: &Pattern, host: &Graph, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[NodeId]) -> ControlFlow<()>,
{
    let p = &pattern.graph;
    if p.node_count() > host.node_count() || p.edge_count() > host.edge_count() {
        return ControlFlow::Continue(());
    }
    let plan = SearchPlan::new(p, pattern.mode);
    let mut state = Search {
        plan: &plan,
        host,
        mapping: vec![usize::MAX; p.node_count()],
        used: vec![false; host.node_count()],
    };
    state.extend(0, &mut visit)
}

/// Pattern node order and the constraints checked at each position.
struct SearchPlan {
    order: Vec<NodeId>,
    /// Earlier pattern node adjacent to `order[i]`, used to draw candidates
    /// from its image's neighborhood. `None` starts a new component.
    anchor: Vec<Option<NodeId>>,
    edges_back: Vec<Vec<NodeId>>,
    /// Earlier pattern nodes not adjacent to `order[i]`; graphlet mode only.
    non_edges_back: Vec<Vec<NodeId>>,
    degree: Vec<usize>,
}

impl SearchPlan {
    fn new(p: &Graph, mode: MatchMode) -> Self {
        let degree: Vec<usize> = p.nodes().map(|u| p.neighbors(u).len()).collect();

        // Largest components first; ties keep the smallest-member order.
        let mut components = p.components();
        components.sort_by_key(|c| std::cmp::Reverse(c.len()));

        let n = p.node_count();
        let mut order = Vec::with_capacity(n);
        let mut anchor = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for comp in &components {
            let root = *comp
                .iter()
                .max_by_key(|&&u| (degree[u], std::cmp::Reverse(u)))
                .expect("components are non-empty");
            placed[root] = true;
            order.push(root);
            anchor.push(None);
            let mut head = order.len() - 1;
            while head < order.len() {
                let u = order[head];
                head += 1;
                for &v in p.neighbors(u) {
                    if !placed[v] {
                        placed[v] = true;
                        order.push(v);
                        anchor.push(Some(u));
                    }
                }
            }
        }

        let mut edges_back = Vec::with_capacity(n);
        let mut non_edges_back = Vec::with_capacity(n);
        for (i, &u) in order.iter().enumerate() {
            let (adjacent, apart): (Vec<NodeId>, Vec<NodeId>) =
                order[..i].iter().partition(|&&w| p.has_edge(u, w));
            edges_back.push(adjacent);
            non_edges_back.push(match mode {
                MatchMode::Motif => Vec::new(),
                MatchMode::Graphlet => apart,
            });
        }

        SearchPlan {
            order,
            anchor,
            edges_back,
            non_edges_back,
            degree,
        }
    }
}

struct Search<'a> {
    plan: &'a SearchPlan,
    host: &'a Graph,
    mapping: Vec<NodeId>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend<F>(&mut self, pos: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[NodeId]) -> ControlFlow<()>,
    {
        if pos == self.plan.order.len() {
            return visit(&self.mapping);
        }
        let u = self.plan.order[pos];
        match self.plan.anchor[pos] {
            Some(a) => {
                let host = self.host;
                for &h in host.neighbors(self.mapping[a]) {
                    self.try_assign(pos, u, h, visit)?;
                }
            }
            None => {
                for h in self.host.nodes() {
                    self.try_assign(pos, u, h, visit)?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    fn try_assign<F>(&mut self, pos: usize, u: NodeId, h: NodeId, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[NodeId]) -> ControlFlow<()>,
    {
        // A degree filter is sound in both modes: pattern edges must map to
        // host edges either way.
        if self.used[h] || self.host.neighbors(h).len() < self.plan.degree[u] {
            return ControlFlow::Continue(());
        }
        let host = self.host;
        let mapping = &self.mapping;
        if !self.plan.edges_back[pos]
            .iter()
            .all(|&w| host.has_edge(mapping[w], h))
        {
            return ControlFlow::Continue(());
        }
        if self.plan.non_edges_back[pos]
            .iter()
            .any(|&w| host.has_edge(mapping[w], h))
        {
            return ControlFlow::Continue(());
        }
        self.mapping[u] = h;
        self.used[h] = true;
        let flow = self.extend(pos + 1, visit);
        self.used[h] = false;
        self.mapping[u] = usize::MAX;
        flow
    }
}
