//! Deterministic DOT and edge-list renderings of a graph on the group elements.

use std::fmt::Write;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::twin_classes;
use crate::group::Group;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexRecord {
    pub id: usize,
    pub label: String,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeList {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<[usize; 2]>,
}

/// Vertices in index order, edges `[i, j]` with `i < j` in lexicographic order.
pub fn edge_list(group: &Group, rows: &[FixedBitSet]) -> EdgeList {
    let vertices = group
        .elements()
        .map(|id| VertexRecord {
            id,
            label: group.describe(id),
            order: group.element_order(id),
        })
        .collect();
    let edges = rows
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.ones().filter(move |&j| j > i).map(move |j| [i, j]))
        .collect();
    EdgeList { vertices, edges }
}

/// DOT text with one cluster per closed-twin class of `rows`.
pub fn to_dot(group: &Group, rows: &[FixedBitSet], name: &str) -> String {
    let classes = twin_classes(rows);
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(&format!("{name}({})", group.descriptor()))).unwrap();
    writeln!(out, "  node [shape=ellipse, style=filled, fontsize=10];").unwrap();
    for (id, class) in classes.classes.iter().enumerate() {
        let color = PALETTE[id % PALETTE.len()];
        writeln!(out, "  subgraph cluster_{id} {{").unwrap();
        writeln!(out, "    label={};", quote(&format!("class {id}"))).unwrap();
        writeln!(out, "    color={};", quote(color)).unwrap();
        for v in class.iter() {
            let label = format!("{} | {}", group.describe(v), group.element_order(v));
            writeln!(out, "    {v} [label={}, fillcolor={}];", quote(&label), quote(color)).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for (i, row) in rows.iter().enumerate() {
        for j in row.ones().filter(|&j| j > i) {
            writeln!(out, "  {i} -- {j};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
