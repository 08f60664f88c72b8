//! Power graph adjacency, closed neighbourhoods, the neighbourhood closure
//! `N[N[X]]`, star vertices and the closed-twin (`N`) and `⋄` partitions.
//!
//! Two modes share one interface. Up to the group's materialization limit the
//! closed neighbourhoods are stored as bitset rows; above it every query is a
//! scan over the element indices that never builds an `n x n` structure.
//!
//! All lazy queries rely on two facts about power graphs:
//!
//! * `N[x] = <x> ∪ {y : <x> < <y>}`, so one scan for strict overgroups suffices;
//! * adjacency-or-equality of `y` and `z` depends only on `<y>` and `<z>`.

pub mod export;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::group::Group;

/// Closed neighbourhoods `N[x]` of every element, as bitset rows.
#[derive(Clone, Debug)]
pub struct PowerGraph {
    rows: Vec<FixedBitSet>,
}

impl PowerGraph {
    pub fn build(group: &Group) -> Result<PowerGraph> {
        group.require_materializable("power graph adjacency matrix")?;
        let n = group.order();
        let mut rows: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for y in 0..n {
            let sub = group.cyclic_subgroup(y);
            for &z in sub.members.iter() {
                rows[y].insert(z);
                rows[z].insert(y);
            }
        }
        Ok(PowerGraph { rows })
    }

    pub fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        let n = self.rows.len();
        (self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() - n) / 2
    }
}

/// A partition of the group into classes, with class ids ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPartition {
    pub classes: Vec<ElementSet>,
    pub class_of: Vec<usize>,
}

impl TwinPartition {
    pub fn class_containing(&self, x: usize) -> &ElementSet {
        &self.classes[self.class_of[x]]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    fn from_keys<K: std::hash::Hash + Eq>(n: usize, key: impl Fn(usize) -> K) -> TwinPartition {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(n);
        for x in 0..n {
            let next = classes.len();
            let id = *ids.entry(key(x)).or_insert(next);
            if id == next {
                classes.push(Vec::new());
            }
            classes[id].push(x);
            class_of.push(id);
        }
        TwinPartition {
            classes: classes.into_iter().map(ElementSet::from_sorted).collect(),
            class_of,
        }
    }
}

/// Groups vertices with equal closed neighbourhoods.
pub fn twin_classes(rows: &[FixedBitSet]) -> TwinPartition {
    TwinPartition::from_keys(rows.len(), |x| &rows[x])
}

/// The `⋄`-partition: `x ⋄ y` iff `<x> = <y>`.
pub fn diamond_partition(group: &Group) -> Result<TwinPartition> {
    group.require_materializable("diamond partition")?;
    Ok(TwinPartition::from_keys(group.order(), |x| {
        group.cyclic_subgroup(x).members
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Materialized,
    Lazy,
}

/// Adjacency queries on `P(G)` for one group.
pub struct AdjacencyOracle<'g> {
    group: &'g Group,
    graph: Option<PowerGraph>,
    twins: OnceLock<TwinPartition>,
}

// One cyclic subgroup <y>, prepared for repeated adjacency tests in a scan.
struct ScanTarget {
    order: u64,
    members: Arc<[usize]>,
}

impl ScanTarget {
    fn new(group: &Group, y: usize) -> ScanTarget {
        let sub = group.cyclic_subgroup(y);
        ScanTarget {
            order: sub.order,
            members: sub.members,
        }
    }

    // Adjacent-or-equal to z, where oz = o(z).
    fn touches(&self, group: &Group, z: usize, oz: u64) -> bool {
        if self.order.is_multiple_of(oz) {
            return self.members.binary_search(&z).is_ok();
        }
        if oz.is_multiple_of(self.order) {
            let w = group.pow(z, oz / self.order);
            return self.members.binary_search(&w).is_ok();
        }
        false
    }
}

impl<'g> AdjacencyOracle<'g> {
    /// Materialized when the group is within its limits, lazy otherwise.
    pub fn new(group: &'g Group) -> AdjacencyOracle<'g> {
        if group.is_materializable() {
            AdjacencyOracle::materialized(group).expect("within limits")
        } else {
            AdjacencyOracle::lazy(group)
        }
    }

    pub fn materialized(group: &'g Group) -> Result<AdjacencyOracle<'g>> {
        Ok(AdjacencyOracle {
            group,
            graph: Some(PowerGraph::build(group)?),
            twins: OnceLock::new(),
        })
    }

    pub fn lazy(group: &'g Group) -> AdjacencyOracle<'g> {
        AdjacencyOracle {
            group,
            graph: None,
            twins: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn mode(&self) -> Mode {
        if self.graph.is_some() {
            Mode::Materialized
        } else {
            Mode::Lazy
        }
    }

    pub fn power_graph(&self) -> Option<&PowerGraph> {
        self.graph.as_ref()
    }

    /// Whether `{x, y}` is an edge (`x != y`).
    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        x != y && self.adjacent_or_equal(x, y)
    }

    pub fn adjacent_or_equal(&self, x: usize, y: usize) -> bool {
        match &self.graph {
            Some(g) => g.rows[x].contains(y),
            None => x == y || self.group.is_power_of(x, y) || self.group.is_power_of(y, x),
        }
    }

    /// `N[x]`.
    pub fn closed_neighborhood(&self, x: usize) -> ElementSet {
        match &self.graph {
            Some(g) => ElementSet::from_bitset(&g.rows[x]),
            None => {
                let powers = self.group.cyclic_subgroup(x).to_set();
                powers.union(&self.group.strict_overgroup_elements(x))
            }
        }
    }

    /// `N[X]`, the common closed neighbourhood; `N[∅] = G`.
    pub fn common_neighborhood(&self, xs: &ElementSet) -> ElementSet {
        let Some(first) = xs.first() else {
            return ElementSet::full(self.group.order());
        };
        match &self.graph {
            Some(g) => {
                let mut acc = g.rows[first].clone();
                for x in xs.iter().skip(1) {
                    acc.intersect_with(&g.rows[x]);
                }
                ElementSet::from_bitset(&acc)
            }
            None => self
                .closed_neighborhood(first)
                .iter()
                .filter(|&z| xs.iter().all(|x| self.adjacent_or_equal(x, z)))
                .collect(),
        }
    }

    /// The neighbourhood closure `X̂ = N[N[X]]`.
    pub fn closure(&self, xs: &ElementSet) -> ElementSet {
        if xs.is_empty() {
            return self.star_vertices();
        }
        match &self.graph {
            Some(g) => {
                let common = self.common_neighborhood(xs);
                let mut acc = FixedBitSet::with_capacity(g.order());
                acc.insert_range(..);
                for z in common.iter() {
                    acc.intersect_with(&g.rows[z]);
                }
                ElementSet::from_bitset(&acc)
            }
            None => {
                let first = xs.first().unwrap();
                let first_nbhd = self.closed_neighborhood(first);
                let common: ElementSet = first_nbhd
                    .iter()
                    .filter(|&z| xs.iter().all(|x| self.adjacent_or_equal(x, z)))
                    .collect();
                // X̂ ⊆ N[z] for every z ∈ N[X]; pick a small known one.
                let candidates = if common.contains(first) {
                    first_nbhd
                } else {
                    match common.iter().find(|&z| z != self.group.identity()) {
                        Some(z) => self.closed_neighborhood(z),
                        None => return ElementSet::full(self.group.order()),
                    }
                };
                self.filter_adjacent_to_all(&candidates, &common)
            }
        }
    }

    /// The candidates adjacent-or-equal to every element of `against`, by
    /// pairwise tests with one representative per cyclic subgroup on each side.
    pub fn filter_adjacent_to_all(&self, candidates: &ElementSet, against: &ElementSet) -> ElementSet {
        let targets: Vec<ScanTarget> = self
            .by_subgroup(against)
            .iter()
            .map(|ys| ScanTarget::new(self.group, ys[0]))
            .collect();
        self.by_subgroup(candidates)
            .into_par_iter()
            .filter(|ys| {
                let y = ys[0];
                let oy = self.group.element_order(y);
                targets.iter().all(|t| t.touches(self.group, y, oy))
            })
            .flatten()
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    }

    // Splits a set into its ⋄-classes, ordered by least member.
    fn by_subgroup(&self, set: &ElementSet) -> Vec<Vec<usize>> {
        let mut groups: HashMap<Arc<[usize]>, Vec<usize>> = HashMap::new();
        for y in set.iter() {
            groups
                .entry(self.group.cyclic_subgroup(y).members)
                .or_default()
                .push(y);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|ys| ys[0]);
        out
    }

    /// The star vertices `S = {x : N[x] = G}`.
    pub fn star_vertices(&self) -> ElementSet {
        let n = self.group.order();
        match &self.graph {
            Some(g) => (0..n).filter(|&x| g.rows[x].is_full()).collect(),
            None => {
                if n == 1 {
                    return ElementSet::full(1);
                }
                let probes: ElementSet = [1, n - 1, n / 2].into_iter().filter(|&z| z != 0).collect();
                let candidates = self.common_neighborhood(&probes);
                self.simultaneous_filter(&candidates, |_, _| true)
            }
        }
    }

    // One scan over G keeping the candidates y with adj*(y, z) == want(z, o(z)) for all z.
    fn simultaneous_filter(
        &self,
        candidates: &ElementSet,
        want: impl Fn(usize, u64) -> bool + Sync,
    ) -> ElementSet {
        // Adjacency depends only on <y>: test one target per distinct subgroup.
        let keyed: Vec<(Vec<usize>, ScanTarget)> = self
            .by_subgroup(candidates)
            .into_iter()
            .map(|ys| {
                let t = ScanTarget::new(self.group, ys[0]);
                (ys, t)
            })
            .collect();
        let k = keyed.len();
        let group = self.group;
        let killed = (0..group.order())
            .into_par_iter()
            .fold(
                || vec![false; k],
                |mut dead, z| {
                    let oz = group.element_order(z);
                    let want = want(z, oz);
                    for (i, (_, t)) in keyed.iter().enumerate() {
                        if !dead[i] && t.touches(group, z, oz) != want {
                            dead[i] = true;
                        }
                    }
                    dead
                },
            )
            .reduce(
                || vec![false; k],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x |= y;
                    }
                    a
                },
            );
        keyed
            .into_iter()
            .zip(killed)
            .filter(|(_, dead)| !dead)
            .flat_map(|((ys, _), _)| ys)
            .collect()
    }

    /// The closed-twin partition. Materialized mode only.
    pub fn twin_partition(&self) -> Result<&TwinPartition> {
        let g = self.graph.as_ref().ok_or_else(|| Error::Scale {
            what: "twin partition (use element_n_class)".into(),
            order: self.group.order(),
            limit: self.group.limits().materialize,
        })?;
        Ok(self.twins.get_or_init(|| twin_classes(&g.rows)))
    }

    /// `[x]_N`. In lazy mode: candidates `N[x]`, then one scan discarding
    /// every candidate whose adjacency to some `z` differs from that of `x`.
    pub fn element_n_class(&self, x: usize) -> ElementSet {
        if self.graph.is_some() {
            return self.twin_partition().unwrap().class_containing(x).clone();
        }
        self.element_n_class_within(x, &self.closed_neighborhood(x))
    }

    /// `[x]_N` given `N[x]`, which bounds the class from above.
    pub fn element_n_class_within(&self, x: usize, nbhd: &ElementSet) -> ElementSet {
        if self.graph.is_some() {
            return self.twin_partition().unwrap().class_containing(x).clone();
        }
        let candidates = nbhd;
        let x_target = ScanTarget::new(self.group, x);
        let group = self.group;
        self.simultaneous_filter(candidates, |z, oz| x_target.touches(group, z, oz))
    }
}

/// Whether `<x, y>` is cyclic, i.e. `{x, y}` is an edge of the enhanced power graph.
pub fn enhanced_adjacent(group: &Group, x: usize, y: usize, cap: usize) -> Result<bool> {
    let sub = group.generated_subgroup(&[x, y], cap)?;
    let size = sub.len() as u64;
    let cyclic = sub.iter().any(|h| group.element_order(h) == size);
    Ok(cyclic)
}

/// Closed neighbourhoods of the enhanced power graph: `x ~ y` iff both lie in
/// a common (maximal) cyclic subgroup.
pub fn enhanced_graph_rows(group: &Group) -> Result<Vec<FixedBitSet>> {
    let n = group.order();
    let mut rows: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
    for m in group.maximal_cyclic_subgroups()? {
        for &a in m.members.iter() {
            for &b in m.members.iter() {
                rows[a].insert(b);
            }
        }
    }
    Ok(rows)
}
