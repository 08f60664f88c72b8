//! Plain, compound and critical N-classes, elements and groups.
//!
//! An N-class `C` is plain when it is a single `⋄`-class and compound
//! otherwise. A compound class avoiding `1` has the shape
//! `{z ∈ <y> : p^(s+1) <= o(z) <= p^r}` for a root `y` of order `p^r`, so
//! `|C| = p^r - p^s`. `C` is critical when its closure is `C ∪ {1}` with
//! `1 ∉ C` and has size `p^r`, `r >= 2`.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::numtheory::{as_prime_power, as_prime_power_minus_one, euler_phi, PrimePower};
use crate::power_graph::{enhanced_adjacent, AdjacencyOracle, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompoundParams {
    pub p: u64,
    pub r: u32,
    pub s: u32,
    pub root: usize,
}

/// `Compound(None)` is the star class when it holds more than one `⋄`-class:
/// it contains `1`, so it has no `(p, r, s)` parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Plain,
    Compound(Option<CompoundParams>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Plain,
    Compound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NClassRecord {
    pub representative: usize,
    pub size: usize,
    pub kind: ClassKind,
    pub is_critical: bool,
    pub closure_size: usize,
    pub is_star_class: bool,
}

impl NClassRecord {
    pub fn element_kind(&self) -> ElementKind {
        match self.kind {
            ClassKind::Plain => ElementKind::Plain,
            ClassKind::Compound(_) => ElementKind::Compound,
        }
    }

    pub fn params(&self) -> Option<CompoundParams> {
        match self.kind {
            ClassKind::Compound(params) => params,
            ClassKind::Plain => None,
        }
    }

    pub fn is_plain_critical(&self) -> bool {
        self.is_critical && self.kind == ClassKind::Plain
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroupKind {
    pub is_critical_group: bool,
    pub is_plain_group: bool,
    pub is_compound_group: bool,
}

/// Classifies `class`, which must be an N-class of the oracle's group.
pub fn classify_class(oracle: &AdjacencyOracle<'_>, class: &ElementSet) -> Result<NClassRecord> {
    let rep = class
        .first()
        .ok_or_else(|| Error::Contract("empty set is not an N-class".into()))?;
    let nbhd = oracle.closed_neighborhood(rep);
    let actual = oracle.element_n_class_within(rep, &nbhd);
    if &actual != class {
        return Err(Error::Contract(format!(
            "set of size {} is not the N-class of {} (size {})",
            class.len(),
            oracle.group().describe(rep),
            actual.len()
        )));
    }
    let closure = class_closure(oracle, class, &nbhd);
    record(oracle.group(), class, &closure)
}

/// Classifies `[x]_N`; at lazy scale this costs two scans of the group.
pub fn classify_element(oracle: &AdjacencyOracle<'_>, x: usize) -> Result<NClassRecord> {
    let nbhd = oracle.closed_neighborhood(x);
    let class = oracle.element_n_class_within(x, &nbhd);
    let closure = class_closure(oracle, &class, &nbhd);
    record(oracle.group(), &class, &closure)
}

// Every member of an N-class C has N[C] = N[x], so the closure is N[N[x]] ⊆ N[x].
fn class_closure(oracle: &AdjacencyOracle<'_>, class: &ElementSet, nbhd: &ElementSet) -> ElementSet {
    match oracle.mode() {
        Mode::Materialized => oracle.closure(class),
        Mode::Lazy => oracle.filter_adjacent_to_all(nbhd, nbhd),
    }
}

fn record(group: &Group, class: &ElementSet, closure: &ElementSet) -> Result<NClassRecord> {
    let one = group.identity();
    let is_star_class = class.contains(one);
    let diamonds: HashSet<Arc<[usize]>> = class
        .iter()
        .map(|z| group.cyclic_subgroup(z).members)
        .collect();
    let kind = if diamonds.len() == 1 {
        ClassKind::Plain
    } else if is_star_class {
        ClassKind::Compound(None)
    } else {
        ClassKind::Compound(Some(compound_params(group, class)?))
    };
    let is_critical = !is_star_class
        && closure.len() == class.len() + 1
        && closure.contains(one)
        && class.is_subset(closure)
        && matches!(as_prime_power(closure.len() as u64), Some(PrimePower::Proper { k, .. }) if k >= 2);
    if let ClassKind::Compound(Some(params)) = kind {
        if is_critical && params.s != 0 {
            return Err(Error::Consistency(format!(
                "compound critical class of {} has s = {}",
                group.describe(params.root),
                params.s
            )));
        }
    }
    Ok(NClassRecord {
        representative: class.first().unwrap(),
        size: class.len(),
        kind,
        is_critical,
        closure_size: closure.len(),
        is_star_class,
    })
}

fn compound_params(group: &Group, class: &ElementSet) -> Result<CompoundParams> {
    let inconsistent = |msg: String| Error::Consistency(format!("compound class: {msg}"));
    let mut root = class.first().unwrap();
    let mut root_order = group.element_order(root);
    let mut min_order = root_order;
    for z in class.iter() {
        let o = group.element_order(z);
        if o > root_order {
            root = z;
            root_order = o;
        }
        min_order = min_order.min(o);
    }
    let Some(PrimePower::Proper { p, k: r }) = as_prime_power(root_order) else {
        return Err(inconsistent(format!("root order {root_order} is not a proper prime power")));
    };
    if r < 2 {
        return Err(inconsistent(format!("root order {root_order} has exponent 1")));
    }
    let top = p.pow(r);
    let size = class.len() as u64;
    let s = match top.checked_sub(size).and_then(as_prime_power) {
        Some(pp) if pp.prime().is_none_or(|q| q == p) => pp.exponent(),
        _ => return Err(inconsistent(format!("size {size} is not {p}^{r} - {p}^s"))),
    };
    // independent re-derivation from the order profile
    let s_profile = as_prime_power(min_order).map(|pp| pp.exponent().saturating_sub(1));
    if s + 2 > r || s_profile != Some(s) {
        return Err(inconsistent(format!(
            "size gives s = {s}, order profile gives {s_profile:?} (p = {p}, r = {r})"
        )));
    }
    let root_sub = group.cyclic_subgroup(root);
    if !class.iter().all(|z| root_sub.contains(z)) {
        return Err(inconsistent("class is not inside the root's cyclic subgroup".into()));
    }
    Ok(CompoundParams { p, r, s, root })
}

/// Folds element classification over `G ∖ {1}` class by class, stopping once
/// every flag is false. The trivial group gets all flags false.
pub fn classify_group(oracle: &AdjacencyOracle<'_>) -> Result<GroupKind> {
    let group = oracle.group();
    let partition = oracle.twin_partition()?;
    if group.order() == 1 {
        return Ok(GroupKind::default());
    }
    let mut kind = GroupKind {
        is_critical_group: true,
        is_plain_group: true,
        is_compound_group: true,
    };
    for class in &partition.classes {
        if class.as_slice() == [group.identity()] {
            continue;
        }
        let rec = record(group, class, &oracle.closure(class))?;
        kind.is_critical_group &= rec.is_critical;
        kind.is_plain_group &= rec.kind == ClassKind::Plain;
        kind.is_compound_group &= rec.kind != ClassKind::Plain;
        if kind == GroupKind::default() {
            break;
        }
    }
    Ok(kind)
}

/// Outcome of the overgroup criterion for plain criticality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OvergroupCriterion {
    /// Every strict cyclic overgroup `<y>` of `<x>` has a rival `<z> > <x>` with `z ∉ N[y]`.
    Holds,
    /// `y` is a strict overgroup element with no such rival.
    Fails { y: usize },
    Inapplicable(String),
}

/// For `o(x)` not a prime power, `<x> != G` and `φ(o(x)) = p^r - 1`
/// (`r >= 2`), `x` is plain critical iff every strict overgroup element `y`
/// has another strict overgroup element outside `N[y]`.
pub fn plain_critical_by_overgroups(oracle: &AdjacencyOracle<'_>, x: usize) -> OvergroupCriterion {
    let group = oracle.group();
    let ox = group.element_order(x);
    if as_prime_power(ox).is_some() {
        return OvergroupCriterion::Inapplicable(format!("o(x) = {ox} is a prime power"));
    }
    if ox == group.order() as u64 {
        return OvergroupCriterion::Inapplicable("<x> = G".into());
    }
    let phi = euler_phi(ox);
    if as_prime_power_minus_one(phi).is_none() {
        return OvergroupCriterion::Inapplicable(format!("phi(o(x)) = {phi} is not p^r - 1 with r >= 2"));
    }
    let over = overgroup_elements(oracle, x);
    let reps = distinct_subgroup_reps(group, &over);
    for &y in &reps {
        if reps.iter().all(|&z| oracle.adjacent_or_equal(y, z)) {
            return OvergroupCriterion::Fails { y };
        }
    }
    OvergroupCriterion::Holds
}

fn overgroup_elements(oracle: &AdjacencyOracle<'_>, x: usize) -> ElementSet {
    let group = oracle.group();
    match oracle.mode() {
        Mode::Materialized => {
            let ox = group.element_order(x);
            oracle
                .closed_neighborhood(x)
                .iter()
                .filter(|&y| group.element_order(y) > ox)
                .collect()
        }
        Mode::Lazy => group.strict_overgroup_elements(x),
    }
}

// Least-index member of each ⋄-class in `set`.
fn distinct_subgroup_reps(group: &Group, set: &ElementSet) -> Vec<usize> {
    let mut seen = HashSet::new();
    set.iter()
        .filter(|&y| seen.insert(group.cyclic_subgroup(y).members))
        .collect()
}

/// For `x` plain critical and not maximal: `y, z` with `<x> < <y>`,
/// `<x> < <z>` and `<y, z>` not cyclic. Starts from the least overgroup
/// element `y`, takes the least `z` outside `N[y]`, and while `<y, z>` is
/// cyclic replaces `y` by its least generator.
pub fn noncyclic_overgroup_witnesses(
    oracle: &AdjacencyOracle<'_>,
    x: usize,
    cap: usize,
) -> Result<(usize, usize)> {
    let group = oracle.group();
    let rec = classify_element(oracle, x)?;
    if !rec.is_plain_critical() {
        return Err(Error::Contract(format!("{} is not plain critical", group.describe(x))));
    }
    let over = overgroup_elements(oracle, x);
    let Some(mut y) = over.first() else {
        return Err(Error::Contract(format!("{} is maximal", group.describe(x))));
    };
    for _ in 0..group.order() {
        let z = over
            .iter()
            .find(|&z| !oracle.adjacent_or_equal(y, z))
            .ok_or_else(|| {
                Error::Consistency(format!(
                    "overgroup element {} has no rival outside its neighbourhood",
                    group.describe(y)
                ))
            })?;
        if !enhanced_adjacent(group, y, z, cap)? {
            return Ok((y, z));
        }
        let join = group.generated_subgroup(&[y, z], cap)?;
        let size = join.len() as u64;
        y = join
            .iter()
            .find(|&g| group.element_order(g) == size)
            .expect("cyclic join has a generator");
    }
    Err(Error::Consistency("overgroup chain did not terminate".into()))
}

/// Whether `D_2n` has plain critical elements: `n` is not a prime power and
/// `φ(n) = p^r - 1` with `r >= 2`.
pub fn dihedral_plain_critical_profile(n: u64) -> bool {
    n >= 2 && as_prime_power(n).is_none() && as_prime_power_minus_one(euler_phi(n)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Perm;

    fn perm(g: &Group, cycles: &[Vec<usize>]) -> usize {
        g.element_from_perm(&Perm::from_cycles(g.perm_degree().unwrap(), cycles).unwrap())
            .unwrap()
    }

    #[test]
    fn four_cycle_class_is_compound_critical() {
        let s4 = Group::symmetric(4).unwrap();
        let c = perm(&s4, &[vec![1, 2, 3, 4]]);
        for oracle in [AdjacencyOracle::new(&s4), AdjacencyOracle::lazy(&s4)] {
            let rec = classify_element(&oracle, c).unwrap();
            assert_eq!(rec.size, 3);
            assert!(rec.is_critical);
            let params = rec.params().unwrap();
            assert_eq!((params.p, params.r, params.s), (2, 2, 0));
            assert_eq!(s4.element_order(params.root), 4);
            let three = classify_element(&oracle, perm(&s4, &[vec![1, 2, 3]])).unwrap();
            assert_eq!(three.kind, ClassKind::Plain);
            assert!(!three.is_critical);
            assert_eq!(three.closure_size, 3);
        }
    }

    #[test]
    fn dihedral_thirty() {
        let d = Group::dihedral(15).unwrap();
        let oracle = AdjacencyOracle::new(&d);
        let rec = classify_element(&oracle, 1).unwrap();
        assert_eq!(rec.kind, ClassKind::Plain);
        assert_eq!((rec.size, rec.closure_size), (8, 9));
        assert!(rec.is_critical);
        assert_eq!(plain_critical_by_overgroups(&oracle, 1), OvergroupCriterion::Holds);
        assert!(matches!(
            noncyclic_overgroup_witnesses(&oracle, 1, 1000),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn cyclic_prime_power_star_class() {
        for (p, n) in [(2u64, 3u32), (3, 2), (5, 2)] {
            let g = Group::cyclic(p.pow(n)).unwrap();
            let oracle = AdjacencyOracle::new(&g);
            let rec = classify_class(&oracle, &ElementSet::full(g.order())).unwrap();
            assert!(rec.is_star_class);
            assert_eq!(rec.kind, ClassKind::Compound(None));
            assert!(!rec.is_critical);
        }
        let c30 = Group::cyclic(30).unwrap();
        assert!(matches!(
            plain_critical_by_overgroups(&AdjacencyOracle::new(&c30), 1),
            OvergroupCriterion::Inapplicable(_)
        ));
    }

    #[test]
    fn identity_is_never_critical() {
        for spec in ["S:4", "C:2 x C:2", "Q:3", "D:15"] {
            let g = Group::parse(spec).unwrap();
            let rec = classify_element(&AdjacencyOracle::new(&g), 0).unwrap();
            assert!(rec.is_star_class && !rec.is_critical);
        }
    }

    #[test]
    fn rejects_non_classes() {
        let s4 = Group::symmetric(4).unwrap();
        let oracle = AdjacencyOracle::new(&s4);
        let c = perm(&s4, &[vec![1, 2, 3, 4]]);
        let just_c: ElementSet = [c].into_iter().collect();
        assert!(matches!(classify_class(&oracle, &just_c), Err(Error::Contract(_))));
        assert!(matches!(classify_class(&oracle, &ElementSet::new()), Err(Error::Contract(_))));
    }

    #[test]
    fn group_flags() {
        let kind = |spec: &str| {
            let g = Group::parse(spec).unwrap();
            classify_group(&AdjacencyOracle::new(&g)).unwrap()
        };
        let m = kind("M:5,2,2,2,7");
        assert!(m.is_critical_group && m.is_compound_group && !m.is_plain_group);
        let v = kind("C:2 x C:2");
        assert!(v.is_plain_group && !v.is_critical_group);
        assert_eq!(kind("S:4"), GroupKind::default());
        assert_eq!(kind("C:1"), GroupKind::default());
        let g = Group::parse("S:4").unwrap();
        assert!(matches!(
            classify_group(&AdjacencyOracle::lazy(&g)),
            Err(Error::Scale { .. })
        ));
    }

    #[test]
    fn metacyclic_kernel_class() {
        let g = Group::parse("M:5,2,2,2,7").unwrap();
        let oracle = AdjacencyOracle::new(&g);
        let x5 = g.element_from_coords(5, 0).unwrap();
        let rec = classify_element(&oracle, x5).unwrap();
        assert_eq!(rec.size, 24);
        assert!(rec.is_critical);
        let params = rec.params().unwrap();
        assert_eq!((params.p, params.r, params.s), (5, 2, 0));
    }

    #[test]
    fn sigma_in_s8_is_maximal_plain_critical() {
        let s8 = Group::symmetric(8).unwrap();
        let sigma = perm(&s8, &[vec![1, 2, 3], vec![4, 5, 6, 7, 8]]);
        let oracle = AdjacencyOracle::lazy(&s8);
        assert_eq!(plain_critical_by_overgroups(&oracle, sigma), OvergroupCriterion::Holds);
        let rec = classify_element(&oracle, sigma).unwrap();
        assert!(rec.is_plain_critical());
        assert_eq!((rec.size, rec.closure_size), (8, 9));
        assert!(s8.is_maximal_element(sigma));
    }

    #[test]
    fn dihedral_profile_examples() {
        assert!(dihedral_plain_critical_profile(15));
        assert!(!dihedral_plain_critical_profile(9));
        assert!(dihedral_plain_critical_profile(30));
        assert!(!dihedral_plain_critical_profile(12));
    }
}
