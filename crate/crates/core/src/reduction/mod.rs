//! Exact cover by 3-sets and its reduction to familial compression.
//!
//! Element `i` (1-based) becomes a cycle on `i + 2` nodes, so every element
//! has a cycle of a distinct length. Set `{a, b, c}` becomes the pattern
//! `C_{a+2} ⊎ C_{b+2} ⊎ C_{c+2}`; compressing it collapses exactly those
//! three cycles into one isolated node, after which no pattern that shares
//! an element with it can match again. The target is `k` isolated nodes.

mod generate;
mod oracles;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

pub use generate::{
    gen_hardness_instance, gen_random_graph, gen_xc3, generator, GeneratorRng, HardnessVariant,
    GENERATOR_NAME,
};
pub use oracles::{hamiltonian_bruteforce, solve_xc3_bruteforce, triangle_partition_bruteforce};

use crate::compression::{replay_trace, CompressionWitness, FgcInstance};
use crate::error::{Error, Result};
use crate::graph::{cycle_graph, disjoint_union, Graph, NodeId};
use crate::matcher::{MatchMode, Pattern};

/// Cycle length used for element `i`: `i + 2`.
pub fn gadget_size(element: usize) -> Result<usize> {
    if element < 1 {
        return Err(Error::invalid("element indices start at 1"));
    }
    Ok(element + 2)
}

/// Universe `{1, ..., 3k}` and a list of 3-element subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Xc3Repr", into = "Xc3Repr")]
pub struct Xc3Instance {
    k: usize,
    sets: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
struct Xc3Repr {
    k: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<Xc3Repr> for Xc3Instance {
    type Error = Error;

    fn try_from(repr: Xc3Repr) -> Result<Self> {
        let sets = repr
            .sets
            .iter()
            .enumerate()
            .map(|(j, s)| {
                <[usize; 3]>::try_from(s.as_slice()).map_err(|_| {
                    Error::invalid(format!("set {j} has {} elements, expected 3", s.len()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Xc3Instance::new(repr.k, sets)
    }
}

impl From<Xc3Instance> for Xc3Repr {
    fn from(x: Xc3Instance) -> Self {
        Xc3Repr {
            k: x.k,
            sets: x.sets.iter().map(|s| s.to_vec()).collect(),
        }
    }
}

impl Xc3Instance {
    /// Validates and stores each set with its elements sorted.
    pub fn new(k: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k must be positive"));
        }
        let universe = 3 * k;
        let mut normalized = Vec::with_capacity(sets.len());
        for (j, mut s) in sets.into_iter().enumerate() {
            if let Some(&e) = s.iter().find(|&&e| e < 1 || e > universe) {
                return Err(Error::invalid(format!(
                    "set {j} contains {e}, outside 1..={universe}"
                )));
            }
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(Error::invalid(format!(
                    "set {j} = {{{}, {}, {}}} repeats an element",
                    s[0], s[1], s[2]
                )));
            }
            normalized.push(s);
        }
        Ok(Xc3Instance {
            k,
            sets: normalized,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn universe_size(&self) -> usize {
        3 * self.k
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    /// Elements that occur in more than three sets. The classical problem
    /// bounds this, but the reduction does not need it.
    pub fn warnings(&self) -> Vec<String> {
        let mut count = vec![0usize; self.universe_size() + 1];
        for s in &self.sets {
            for &e in s {
                count[e] += 1;
            }
        }
        (1..=self.universe_size())
            .filter(|&e| count[e] > 3)
            .map(|e| format!("element {e} appears in {} sets (more than 3)", count[e]))
            .collect()
    }

    /// Checks that `cover` names `k` pairwise disjoint sets covering the universe.
    pub fn check_cover(&self, cover: &CoverWitness) -> Result<()> {
        let mut seen = vec![false; self.universe_size() + 1];
        for &j in &cover.chosen {
            let s = self.sets.get(j).ok_or_else(|| {
                Error::InvalidWitness(format!(
                    "set index {j} out of range ({} sets)",
                    self.sets.len()
                ))
            })?;
            for &e in s {
                if std::mem::replace(&mut seen[e], true) {
                    return Err(Error::InvalidWitness(format!(
                        "element {e} is covered twice"
                    )));
                }
            }
        }
        if let Some(e) = (1..=self.universe_size()).find(|&e| !seen[e]) {
            return Err(Error::InvalidWitness(format!("element {e} is not covered")));
        }
        Ok(())
    }
}

/// Indices of the chosen sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    pub chosen: BTreeSet<usize>,
}

impl CoverWitness {
    pub fn new(chosen: impl IntoIterator<Item = usize>) -> Self {
        CoverWitness {
            chosen: chosen.into_iter().collect(),
        }
    }
}

/// A reduced instance together with the layout needed to translate
/// witnesses without re-deriving it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BundleRepr", into = "BundleRepr")]
pub struct ReducedInstance {
    pub instance: FgcInstance,
    pub source: Xc3Instance,
    /// Element (1-based) to its inclusive node-ID range `[lo, hi]` in `graph`.
    pub element_blocks: BTreeMap<usize, [NodeId; 2]>,
    /// Set index to family index. Duplicate sets share a family member.
    pub set_to_family: BTreeMap<usize, usize>,
    /// Family index to the first set index that produced it.
    pub family_to_set: Vec<usize>,
}

/// Bundle file shape: the instance fields at top level plus the layout.
#[derive(Serialize, Deserialize)]
struct BundleRepr {
    graph: Graph,
    target: Graph,
    family: Vec<Pattern>,
    source: Xc3Instance,
    element_blocks: BTreeMap<usize, [NodeId; 2]>,
    set_to_family: BTreeMap<usize, usize>,
    family_to_set: Vec<usize>,
}

impl TryFrom<BundleRepr> for ReducedInstance {
    type Error = Error;

    fn try_from(b: BundleRepr) -> Result<Self> {
        let sets = b.source.sets().len();
        let members = b.family.len();
        if b.set_to_family.len() != sets
            || (0..sets).any(|j| b.set_to_family.get(&j).is_none_or(|&i| i >= members))
        {
            return Err(Error::invalid(
                "set_to_family must map every set index to a family index",
            ));
        }
        if b.family_to_set.len() != members || b.family_to_set.iter().any(|&j| j >= sets) {
            return Err(Error::invalid(
                "family_to_set must map every family index to a set index",
            ));
        }
        Ok(ReducedInstance {
            instance: FgcInstance::new(b.graph, b.target, b.family)?,
            source: b.source,
            element_blocks: b.element_blocks,
            set_to_family: b.set_to_family,
            family_to_set: b.family_to_set,
        })
    }
}

impl From<ReducedInstance> for BundleRepr {
    fn from(r: ReducedInstance) -> Self {
        BundleRepr {
            graph: r.instance.graph,
            target: r.instance.target,
            family: r.instance.family,
            source: r.source,
            element_blocks: r.element_blocks,
            set_to_family: r.set_to_family,
            family_to_set: r.family_to_set,
        }
    }
}

/// Builds `(G, H, family)` from an exact-cover instance. Duplicate sets
/// contribute one family member.
pub fn xc3_to_fgc(x: &Xc3Instance, mode: MatchMode) -> Result<ReducedInstance> {
    let universe = x.universe_size();
    let cycles = (1..=universe)
        .map(|i| cycle_graph(gadget_size(i)?))
        .collect::<Result<Vec<_>>>()?;

    let mut element_blocks = BTreeMap::new();
    let mut lo = 0;
    for (i, c) in cycles.iter().enumerate() {
        element_blocks.insert(i + 1, [lo, lo + c.node_count() - 1]);
        lo += c.node_count();
    }
    let graph = disjoint_union(&cycles);

    let mut family = Vec::new();
    let mut family_to_set = Vec::new();
    let mut set_to_family = BTreeMap::new();
    let mut first_seen: HashMap<[usize; 3], usize> = HashMap::new();
    for (j, s) in x.sets().iter().enumerate() {
        let idx = *first_seen.entry(*s).or_insert_with(|| {
            let parts = s.map(|e| cycles[e - 1].clone());
            let name = format!("Z{j}{{{},{},{}}}", s[0], s[1], s[2]);
            family.push(Pattern::new(disjoint_union(&parts), mode).named(name));
            family_to_set.push(j);
            family.len() - 1
        });
        set_to_family.insert(j, idx);
    }

    let instance = FgcInstance::new(graph, Graph::empty(x.k()), family)?;
    Ok(ReducedInstance {
        instance,
        source: x.clone(),
        element_blocks,
        set_to_family,
        family_to_set,
    })
}

/// Node count of the reduced graph: the sum of `i + 2` over `1..=3k`.
pub fn reduced_node_count(k: usize) -> usize {
    let u = 3 * k;
    u * (u + 1) / 2 + 2 * u
}

impl ReducedInstance {
    pub fn mode(&self) -> Option<MatchMode> {
        self.instance.family.first().map(|f| f.mode)
    }

    /// Element whose cycle contains node `u`.
    pub fn element_of_node(&self, u: NodeId) -> Option<usize> {
        self.element_blocks
            .iter()
            .find(|(_, &[lo, hi])| lo <= u && u <= hi)
            .map(|(&e, _)| e)
    }
}

/// Maps an exact cover to compression steps (ascending set order) and
/// checks that they replay to the target.
pub fn cover_to_steps(
    reduced: &ReducedInstance,
    cover: &CoverWitness,
) -> Result<CompressionWitness> {
    reduced.source.check_cover(cover)?;
    let steps = cover
        .chosen
        .iter()
        .map(|j| reduced.set_to_family[j])
        .collect();
    let witness = CompressionWitness::new(steps);
    witness.verify(&reduced.instance)?;
    Ok(witness)
}

/// Maps compression steps back to the sets they select. Every step must
/// shrink the graph, the replay must reach the target, and the decoded
/// sets must form an exact cover.
pub fn steps_to_cover(
    reduced: &ReducedInstance,
    witness: &CompressionWitness,
) -> Result<CoverWitness> {
    let family = &reduced.instance.family;
    if let Some(&bad) = witness.steps.iter().find(|&&i| i >= family.len()) {
        return Err(Error::InvalidWitness(format!(
            "family index {bad} out of range ({} members)",
            family.len()
        )));
    }
    let trace = replay_trace(&reduced.instance.graph, family, &witness.steps)?;
    for (pos, pair) in trace.windows(2).enumerate() {
        if pair[1].node_count() >= pair[0].node_count() {
            return Err(Error::InvalidWitness(format!(
                "step {pos} (family index {}) selects nothing",
                witness.steps[pos]
            )));
        }
    }
    let cover = CoverWitness::new(witness.steps.iter().map(|&i| reduced.family_to_set[i]));
    if cover.chosen.len() != witness.steps.len() {
        return Err(Error::InvalidWitness(
            "a set is selected more than once".into(),
        ));
    }
    reduced.source.check_cover(&cover)?;
    witness.verify(&reduced.instance)?;
    Ok(cover)
}
