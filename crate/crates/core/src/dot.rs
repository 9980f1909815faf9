//! Graphviz output for quotients and reduced instances.

use std::fmt::Write as _;

use crate::compression::NodePartition;
use crate::graph::Graph;
use crate::reduction::ReducedInstance;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
];

/// Node styling for [`to_dot`].
#[derive(Default)]
pub struct DotStyle<'a> {
    /// Fill each node by its class; singleton classes stay white.
    pub classes: Option<&'a NodePartition>,
    /// Per-node label; defaults to the node ID.
    pub labels: Option<&'a [String]>,
}

pub fn to_dot(name: &str, g: &Graph, style: &DotStyle<'_>) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    writeln!(out, "  node [shape=circle, style=filled, fillcolor=white];").unwrap();
    let sizes = style.classes.map(|p| {
        let mut sizes = vec![0usize; p.class_count()];
        for u in 0..p.class_map().len() {
            sizes[p.class_of(u)] += 1;
        }
        sizes
    });
    for u in g.nodes() {
        let label = style
            .labels
            .and_then(|l| l.get(u).cloned())
            .unwrap_or_else(|| u.to_string());
        write!(out, "  {u} [label={}", quote(&label)).unwrap();
        if let (Some(p), Some(sizes)) = (style.classes, &sizes) {
            let c = p.class_of(u);
            if sizes[c] > 1 {
                write!(out, ", fillcolor=\"{}\"", PALETTE[c % PALETTE.len()]).unwrap();
            }
        }
        writeln!(out, "];").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// The reduced graph with every cycle node labeled `x<element>` and one
/// color per element.
pub fn reduced_to_dot(reduced: &ReducedInstance) -> String {
    let g = &reduced.instance.graph;
    let labels: Vec<String> = g
        .nodes()
        .map(|u| match reduced.element_of_node(u) {
            Some(e) => format!("x{e}"),
            None => u.to_string(),
        })
        .collect();
    let mut out = String::new();
    writeln!(out, "graph reduced {{").unwrap();
    writeln!(out, "  node [shape=circle, style=filled];").unwrap();
    for (&element, &[lo, hi]) in &reduced.element_blocks {
        writeln!(out, "  subgraph cluster_x{element} {{").unwrap();
        writeln!(out, "    label=\"x{element} (C{})\";", hi - lo + 1).unwrap();
        let color = PALETTE[(element - 1) % PALETTE.len()];
        for (u, label) in labels.iter().enumerate().take(hi + 1).skip(lo) {
            writeln!(
                out,
                "    {u} [label={}, fillcolor=\"{color}\"];",
                quote(label)
            )
            .unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
