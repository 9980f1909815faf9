//! Seeded instance generators. All randomness comes from [`GeneratorRng`]
//! seeded with a `u64`, so corpora are reproducible.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Xc3Instance;
use crate::compression::FgcInstance;
use crate::error::{Error, Result};
use crate::graph::{cycle_graph, disjoint_union, Graph};
use crate::matcher::Pattern;

pub type GeneratorRng = ChaCha8Rng;

/// Recorded in generated reports; bump when the sampling scheme changes.
pub const GENERATOR_NAME: &str = "chacha8-v1";

pub fn generator(seed: u64) -> GeneratorRng {
    GeneratorRng::seed_from_u64(seed)
}

/// Random exact-cover instance on `{1..3k}` with `num_sets` sets. With
/// `planted`, a random partition of the universe into `k` triples is mixed
/// into the sets, so the instance has a cover by construction; the other
/// sets are uniform 3-subsets (repeats possible). Set order is shuffled.
pub fn gen_xc3(k: usize, num_sets: usize, seed: u64, planted: bool) -> Result<Xc3Instance> {
    if k == 0 {
        return Err(Error::InfeasibleParameters("k must be positive".into()));
    }
    if planted && num_sets < k {
        return Err(Error::InfeasibleParameters(format!(
            "a planted cover needs at least k = {k} sets, got {num_sets}"
        )));
    }
    let universe = 3 * k;
    let mut rng = generator(seed);
    let mut sets: Vec<[usize; 3]> = Vec::with_capacity(num_sets);
    if planted {
        let mut elements: Vec<usize> = (1..=universe).collect();
        elements.shuffle(&mut rng);
        sets.extend(elements.chunks_exact(3).map(|c| [c[0], c[1], c[2]]));
    }
    while sets.len() < num_sets {
        let picked = index::sample(&mut rng, universe, 3);
        sets.push([
            picked.index(0) + 1,
            picked.index(1) + 1,
            picked.index(2) + 1,
        ]);
    }
    sets.shuffle(&mut rng);
    Xc3Instance::new(k, sets)
}

/// Erdős–Rényi graph: each pair `u < v` is an edge with probability `p`.
pub fn gen_random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardnessVariant {
    /// Family `[C_n]`; YES iff the graph is Hamiltonian.
    HamiltonCycle(usize),
    /// Family `[k disjoint triangles]`; YES iff the nodes split into triangles.
    TrianglePartition(usize),
}

/// Wraps `g` into a single-node-target instance with a one-motif family.
pub fn gen_hardness_instance(variant: HardnessVariant, g: Graph) -> Result<FgcInstance> {
    let pattern = match variant {
        HardnessVariant::HamiltonCycle(n) => {
            if g.node_count() != n {
                return Err(Error::invalid(format!(
                    "Hamiltonian-cycle instance expects {n} nodes, graph has {}",
                    g.node_count()
                )));
            }
            Pattern::motif(cycle_graph(n)?).named(format!("C{n}"))
        }
        HardnessVariant::TrianglePartition(k) => {
            if k == 0 || g.node_count() != 3 * k {
                return Err(Error::invalid(format!(
                    "triangle-partition instance expects 3k = {} nodes with k > 0, graph has {}",
                    3 * k,
                    g.node_count()
                )));
            }
            let triangle = cycle_graph(3)?;
            Pattern::motif(disjoint_union(std::iter::repeat_n(&triangle, k)))
                .named(format!("{k}xC3"))
        }
    };
    FgcInstance::new(g, Graph::empty(1), vec![pattern])
}
