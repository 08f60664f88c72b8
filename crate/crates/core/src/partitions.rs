//! Partitions of a group into cyclic subgroups, the Hughes–Thompson subgroup,
//! and harnesses checking partition-related properties on concrete groups.
//!
//! If a cyclic partition exists, every maximal cyclic subgroup `<m>` equals
//! the component containing `m` (that component is cyclic and contains
//! `<m>`). So the only candidate is the set of maximal cyclic subgroups, and a
//! cyclic partition exists iff those pairwise intersect trivially.

use serde::Serialize;

use crate::criticality::{classify_group, classify_element, ClassKind};
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::frobenius::recognize_critical_structure;
use crate::group::{CyclicSubgroup, Group};
use crate::numtheory::{as_prime_power, factorize, PrimePower};
use crate::power_graph::AdjacencyOracle;

#[derive(Clone, Debug)]
pub enum PartitionResult {
    /// `trivial` when the only component is `G` itself.
    Partition {
        components: Vec<CyclicSubgroup>,
        trivial: bool,
    },
    NoPartition {
        obstruction: (CyclicSubgroup, CyclicSubgroup),
        shared: usize,
    },
    /// `G = 1` has no non-trivial components at all.
    TrivialGroup,
}

impl PartitionResult {
    pub fn components(&self) -> Option<&[CyclicSubgroup]> {
        match self {
            PartitionResult::Partition { components, .. } => Some(components),
            _ => None,
        }
    }

    pub fn is_nontrivial_partition(&self) -> bool {
        matches!(self, PartitionResult::Partition { trivial: false, .. })
    }
}

pub fn cyclic_partition(group: &Group) -> Result<PartitionResult> {
    if group.order() == 1 {
        return Ok(PartitionResult::TrivialGroup);
    }
    let maximal = group.maximal_cyclic_subgroups()?;
    let mut owner: Vec<Option<usize>> = vec![None; group.order()];
    let mut best: Option<(usize, usize, usize)> = None;
    for (j, m) in maximal.iter().enumerate() {
        for &z in m.members.iter().skip(1) {
            match owner[z] {
                None => owner[z] = Some(j),
                Some(i) => {
                    let cand = (i, j, z);
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    Ok(match best {
        Some((i, j, _)) => {
            let shared = maximal[i]
                .members
                .iter()
                .skip(1)
                .copied()
                .find(|&z| maximal[j].contains(z))
                .unwrap();
            PartitionResult::NoPartition {
                obstruction: (maximal[i].clone(), maximal[j].clone()),
                shared,
            }
        }
        None => PartitionResult::Partition {
            trivial: maximal.len() == 1,
            components: maximal,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentProfile {
    pub order: u64,
    pub factorization: Vec<(u64, u32)>,
}

impl ComponentProfile {
    /// `Some((p, k))` when the order is `p^k`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match self.factorization.as_slice() {
            [(p, k)] => Some((*p, *k)),
            _ => None,
        }
    }
}

pub fn component_profile(components: &[CyclicSubgroup]) -> Vec<ComponentProfile> {
    components
        .iter()
        .map(|c| ComponentProfile {
            order: c.order,
            factorization: factorize(c.order).pairs().to_vec(),
        })
        .collect()
}

/// `H_p(G) = <x ∈ G : o(x) != p>`.
pub fn hughes_thompson(group: &Group, p: u64, cap: usize) -> Result<ElementSet> {
    hughes_thompson_within(group, group.elements(), p, cap)
}

/// `H_p(H)` for the subgroup `H` given by its elements, adding generators
/// only when they fall outside the subgroup built so far.
pub fn hughes_thompson_within(
    group: &Group,
    subgroup: impl IntoIterator<Item = usize>,
    p: u64,
    cap: usize,
) -> Result<ElementSet> {
    let mut gens = Vec::new();
    let mut current: ElementSet = [group.identity()].into_iter().collect();
    for x in subgroup {
        if group.element_order(x) != p && !current.contains(x) {
            gens.push(x);
            current = group.generated_subgroup(&gens, cap)?;
        }
    }
    Ok(current)
}

/// Whether the `p`-group `P` has a non-trivial partition, i.e. `H_p(P) != P`.
/// Groups of order `p` only have the trivial partition and give `false`.
pub fn kegel_partitionable(group: &Group, cap: usize) -> Result<bool> {
    let p = match as_prime_power(group.order() as u64) {
        Some(PrimePower::Proper { p, k }) => {
            if k == 1 {
                return Ok(false);
            }
            p
        }
        Some(PrimePower::One) => return Ok(false),
        None => {
            return Err(Error::Contract(format!(
                "{} has order {}, not a prime power",
                group.descriptor(),
                group.order()
            )))
        }
    };
    Ok(hughes_thompson(group, p, cap)?.len() != group.order())
}

/// The finest partition of `G` into subgroups: merge maximal cyclic subgroups
/// that meet non-trivially, close each block to the subgroup it generates, and
/// repeat until stable. `G` has a non-trivial subgroup partition iff there are
/// at least two blocks.
pub fn finest_subgroup_partition(group: &Group, cap: usize) -> Result<Vec<ElementSet>> {
    let n = group.order();
    if n == 1 {
        return Ok(vec![ElementSet::full(1)]);
    }
    let maximal = group.maximal_cyclic_subgroups()?;
    let k = maximal.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    // containing[z]: the maximal cyclic subgroups through z
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, m) in maximal.iter().enumerate() {
        for &z in m.members.iter().skip(1) {
            containing[z].push(i);
        }
    }
    loop {
        let mut changed = false;
        for ids in &containing {
            for w in ids.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a] = b;
                    changed = true;
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); k];
        for i in 0..k {
            let root = find(&mut parent, i);
            blocks[root].push(maximal[i].generator);
        }
        for gens in blocks.iter().filter(|g| !g.is_empty()) {
            let sub = group.generated_subgroup(gens, cap)?;
            let root = find(&mut parent, containing[gens[0]][0]);
            for z in sub.iter().skip(1) {
                for &i in &containing[z] {
                    let other = find(&mut parent, i);
                    if other != root {
                        parent[other] = root;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            let mut out: Vec<ElementSet> = Vec::new();
            let mut roots: Vec<usize> = (0..k).map(|i| find(&mut parent, i)).collect();
            roots.sort_unstable();
            roots.dedup();
            for root in roots {
                let gens: Vec<usize> = (0..k)
                    .filter(|&i| find(&mut parent, i) == root)
                    .map(|i| maximal[i].generator)
                    .collect();
                out.push(group.generated_subgroup(&gens, cap)?);
            }
            out.sort();
            return Ok(out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { counterexample: String },
    NotApplicable(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

// A non-trivial cyclic partition whose components all have order p^k, k >= 2.
fn prime_power_partition(group: &Group) -> Result<std::result::Result<Vec<CyclicSubgroup>, String>> {
    let result = cyclic_partition(group)?;
    let components = match result {
        PartitionResult::Partition {
            trivial: false,
            components,
        } => components,
        PartitionResult::Partition { trivial: true, .. } => {
            return Ok(Err("only the trivial partition".into()))
        }
        _ => return Ok(Err("no cyclic partition".into())),
    };
    for profile in component_profile(&components) {
        if !profile.prime_power().is_some_and(|(_, k)| k >= 2) {
            return Ok(Err(format!("component of order {} is not p^k with k >= 2", profile.order)));
        }
    }
    Ok(Ok(components))
}

/// A non-trivial partition into cyclic `p^k`-subgroups (`k >= 2`) forces a
/// compound critical group.
pub fn check_partition_implies_compound_critical(oracle: &AdjacencyOracle<'_>) -> Result<Verdict> {
    let group = oracle.group();
    if let Err(reason) = prime_power_partition(group)? {
        return Ok(Verdict::NotApplicable(reason));
    }
    let kind = classify_group(oracle)?;
    if kind.is_critical_group && kind.is_compound_group {
        return Ok(Verdict::Pass);
    }
    for class in &oracle.twin_partition()?.classes {
        let x = class.iter().find(|&x| x != group.identity());
        let Some(x) = x else { continue };
        let rec = classify_element(oracle, x)?;
        if !rec.is_critical || rec.kind == ClassKind::Plain {
            return Ok(Verdict::Fail {
                counterexample: format!(
                    "{}: element {} is {:?}, critical = {}",
                    group.descriptor(),
                    group.describe(x),
                    rec.element_kind(),
                    rec.is_critical
                ),
            });
        }
    }
    Err(Error::Consistency("group flags disagree with the class records".into()))
}

/// In a group with a cyclic partition every plain critical element is maximal.
pub fn check_plain_critical_maximal(oracle: &AdjacencyOracle<'_>) -> Result<Verdict> {
    let group = oracle.group();
    match cyclic_partition(group)? {
        PartitionResult::Partition { .. } => {}
        PartitionResult::NoPartition { .. } => {
            return Ok(Verdict::NotApplicable("no cyclic partition".into()))
        }
        PartitionResult::TrivialGroup => return Ok(Verdict::NotApplicable("trivial group".into())),
    }
    for class in &oracle.twin_partition()?.classes {
        let rep = class.first().unwrap();
        let rec = classify_element(oracle, rep)?;
        if rec.is_plain_critical() && !group.is_maximal_element(rep) {
            return Ok(Verdict::Fail {
                counterexample: format!(
                    "{}: {} is plain critical but not maximal",
                    group.descriptor(),
                    group.describe(rep)
                ),
            });
        }
    }
    Ok(Verdict::Pass)
}

/// Under the same hypothesis as the compound-critical check, `G` is a
/// Frobenius group `C_{p^a} ⋊ C_{q^b}` with `p` odd and `a, b >= 2`.
pub fn check_main_corollary(group: &Group) -> Result<Verdict> {
    if let Err(reason) = prime_power_partition(group)? {
        return Ok(Verdict::NotApplicable(reason));
    }
    Ok(match recognize_critical_structure(group) {
        Some(s) if s.p % 2 == 1 && s.a >= 2 && s.b >= 2 => Verdict::Pass,
        Some(s) => Verdict::Fail {
            counterexample: format!(
                "{}: structure ({}, {}, {}, {}) violates p odd, a, b >= 2",
                group.descriptor(),
                s.p,
                s.a,
                s.q,
                s.b
            ),
        },
        None => Verdict::Fail {
            counterexample: format!("{}: no cyclic Frobenius structure", group.descriptor()),
        },
    })
}
