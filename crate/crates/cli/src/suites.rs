//! Property suites run by `powercrit verify` over a built-in family of groups.

use std::collections::BTreeSet;

use powercrit_core::criticality::{
    classify_element, classify_group, dihedral_plain_critical_profile, plain_critical_by_overgroups,
    ClassKind, NClassRecord, OvergroupCriterion,
};
use powercrit_core::frobenius::{
    census, eppo_equivalence_against, eppo_metacyclic_equivalence_check, eppo_non_frobenius,
    recognize_critical_structure,
};
use powercrit_core::numtheory::{as_prime_power, as_prime_power_minus_one, euler_phi, factorize};
use powercrit_core::partitions::{
    check_main_corollary, check_partition_implies_compound_critical, check_plain_critical_maximal,
    cyclic_partition, finest_subgroup_partition, hughes_thompson_within, kegel_partitionable, PartitionResult,
    Verdict,
};
use powercrit_core::{AdjacencyOracle, ElementSet, Group, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

const KEPT_VIOLATIONS: usize = 10;
const RANDOM_SUBSETS: usize = 200;
const CLOSURE_FAMILY_LIMIT: usize = 200;
const KEGEL_LIMIT: usize = 256;
const CENSUS_FAMILY_LIMIT: u64 = 600;
const CLOSURE_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Closure,
    Criticality,
    Partitions,
    Theorems,
    Oracles,
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub violations: Vec<String>,
    pub violation_count: usize,
    pub note: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            cases: 0,
            violations: Vec::new(),
            violation_count: 0,
            note: None,
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < KEPT_VIOLATIONS {
                self.violations.push(describe());
            }
        }
    }

    fn verdict(&mut self, verdict: &Verdict) {
        match verdict {
            Verdict::Pass => self.case(true, String::new),
            Verdict::Fail { counterexample } => self.case(false, || counterexample.clone()),
            Verdict::NotApplicable(_) => {}
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Cyclic groups up to 120, dihedral groups `D_2n` with `n <= 60`, `S_k` for
/// `k <= 5`, `Q_{2^n}` for `n <= 5`, the metacyclic census up to order 600
/// (every `r`) and `C_p x C_p` for `p <= 7`; all restricted to `max_order`.
pub fn family(max_order: usize) -> Result<Vec<Group>> {
    let mut specs: Vec<String> = Vec::new();
    specs.extend((1..=120).map(|n| format!("C:{n}")));
    specs.extend((2..=60).map(|n| format!("D:{n}")));
    specs.extend((1..=5).map(|k| format!("S:{k}")));
    specs.extend((3..=5).map(|n| format!("Q:{n}")));
    specs.extend([2, 3, 5, 7].map(|p| format!("C:{p} x C:{p}")));
    let census_bound = CENSUS_FAMILY_LIMIT.min(max_order as u64);
    specs.extend(census(census_bound, 0, true)?.iter().map(|e| e.params.to_string()));
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for spec in specs {
        let g = Group::parse(&spec)?;
        if g.order() <= max_order && seen.insert(g.descriptor().to_string()) {
            out.push(g);
        }
    }
    Ok(out)
}

/// `p`-groups for the partition-existence comparison.
pub fn p_group_family(max_order: usize) -> Result<Vec<Group>> {
    let specs = [
        "C:2", "C:3", "C:4", "C:8", "C:9", "C:16", "C:25", "C:27", "C:32", "C:49", "C:64", "C:81", "C:125",
        "C:128", "C:2 x C:2", "C:3 x C:3", "C:5 x C:5", "C:7 x C:7", "C:11 x C:11", "C:2 x C:4", "C:2 x C:8",
        "C:4 x C:4", "C:2 x C:2 x C:2", "C:2 x C:2 x C:4", "C:3 x C:9", "C:3 x C:3 x C:3", "C:9 x C:9",
        "C:5 x C:25", "D:4", "D:8", "D:16", "D:32", "D:64", "Q:3", "Q:4", "Q:5", "Q:6", "Q:7", "Q:8",
        "C:2 x Q:3", "C:2 x D:4", "C:4 x Q:3", "C:2 x C:2 x C:2 x C:2", "Q:3 x Q:3", "D:4 x D:4",
        "C:2 x Q:4", "C:2 x C:2 x D:4", "D:4 x Q:3", "C:8 x C:8", "C:4 x C:4 x C:4 x C:4",
    ];
    Ok(specs
        .iter()
        .map(|s| Group::parse(s))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|g| g.order() <= max_order.min(KEGEL_LIMIT))
        .collect())
}

pub fn run_suite(suite: Suite, max_order: usize) -> Result<Vec<CheckResult>> {
    let groups = family(max_order)?;
    let mut out = Vec::new();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    if wants(Suite::Closure) {
        out.extend(closure_suite(&groups)?);
    }
    if wants(Suite::Criticality) {
        out.extend(criticality_suite(&groups, max_order)?);
    }
    if wants(Suite::Partitions) {
        out.extend(partitions_suite(&groups, max_order)?);
    }
    if wants(Suite::Theorems) {
        out.extend(theorems_suite(max_order as u64)?);
    }
    if wants(Suite::Oracles) {
        out.extend(oracles_suite(&groups)?);
    }
    Ok(out)
}

fn small(groups: &[Group]) -> impl Iterator<Item = &Group> {
    groups.iter().filter(|g| g.order() <= CLOSURE_FAMILY_LIMIT)
}

pub fn closure_suite(groups: &[Group]) -> Result<Vec<CheckResult>> {
    let mut laws = CheckResult::new("moore-closure-laws");
    let mut refine = CheckResult::new("n-classes-are-unions-of-diamond-classes");
    for (i, g) in small(groups).enumerate() {
        let o = AdjacencyOracle::materialized(g)?;
        let star = o.star_vertices();
        let mut rng = StdRng::seed_from_u64(i as u64);
        for _ in 0..RANDOM_SUBSETS {
            let size = rng.gen_range(0..=6.min(g.order()));
            let xs: ElementSet = (0..size).map(|_| rng.gen_range(0..g.order())).collect();
            let extra = rng.gen_range(0..g.order());
            let hat = o.closure(&xs);
            let mut bigger = xs.clone();
            bigger.insert(extra);
            let ok = xs.is_subset(&hat)
                && o.closure(&hat) == hat
                && o.common_neighborhood(&hat) == o.common_neighborhood(&xs)
                && hat.is_subset(&o.closure(&bigger))
                && star.is_subset(&hat);
            laws.case(ok, || format!("{}: X = {:?}", g.descriptor(), describe_all(g, &xs)));
        }
        for x in g.elements() {
            refine.case(g.diamond_class(x).is_subset(&o.element_n_class(x)), || {
                format!("{}: {}", g.descriptor(), g.describe(x))
            });
        }
    }
    Ok(vec![laws, refine])
}

fn describe_all(g: &Group, xs: &ElementSet) -> Vec<String> {
    xs.iter().map(|x| g.describe(x)).collect()
}

fn class_records(o: &AdjacencyOracle<'_>) -> Result<Vec<NClassRecord>> {
    o.twin_partition()?
        .classes
        .iter()
        .map(|c| classify_element(o, c.first().unwrap()))
        .collect()
}

pub fn criticality_suite(groups: &[Group], max_order: usize) -> Result<Vec<CheckResult>> {
    let mut star = CheckResult::new("critical-element-forces-trivial-star");
    let mut kind_order = CheckResult::new("critical-compound-iff-proper-prime-power-order");
    let mut s_zero = CheckResult::new("compound-critical-has-s-zero");
    let mut plain_shape = CheckResult::new("plain-critical-class-shape");
    let mut no_plain_critical = CheckResult::new("no-plain-critical-group");
    let mut crit_compound = CheckResult::new("critical-group-is-compound");
    let mut lifts = CheckResult::new("critical-group-order-p-elements-lift");
    let mut dihedral = CheckResult::new("dihedral-plain-critical-profile");
    for g in groups {
        let o = AdjacencyOracle::materialized(g)?;
        let stars = o.star_vertices();
        for rec in class_records(&o)?.iter().filter(|r| r.is_critical) {
            let x = rec.representative;
            let ox = g.element_order(x);
            let at = || format!("{}: {}", g.descriptor(), g.describe(x));
            star.case(stars.as_slice() == [g.identity()], at);
            let proper = ox > 1 && as_prime_power(ox).is_some();
            kind_order.case((rec.kind != ClassKind::Plain) == proper, at);
            match rec.kind {
                ClassKind::Compound(params) => s_zero.case(params.is_some_and(|c| c.s == 0), at),
                ClassKind::Plain => {
                    let phi = euler_phi(ox);
                    let shape = as_prime_power_minus_one(rec.size as u64).is_some()
                        && rec.closure_size == rec.size + 1
                        && as_prime_power(ox).is_none()
                        && phi == rec.size as u64
                        && o.element_n_class(x) == g.diamond_class(x);
                    plain_shape.case(shape, at);
                }
            }
        }
        let kind = classify_group(&o)?;
        let at = || g.descriptor().to_string();
        no_plain_critical.case(!(kind.is_plain_group && kind.is_critical_group), at);
        if kind.is_critical_group {
            crit_compound.case(kind.is_compound_group, at);
            lifts.case(order_p_elements_lift(g), at);
        }
    }
    for n in (2..=60u64).filter(|n| 2 * *n as usize <= max_order) {
        let g = Group::dihedral(n)?;
        let o = AdjacencyOracle::materialized(&g)?;
        let has = class_records(&o)?.iter().any(|r| r.is_plain_critical());
        dihedral.case(has == dihedral_plain_critical_profile(n), || format!("D:{n}"));
    }
    Ok(vec![
        star,
        kind_order,
        s_zero,
        plain_shape,
        no_plain_critical,
        crit_compound,
        lifts,
        dihedral,
    ])
}

// p^2 divides |G| for every prime p, and each element of order p is a power
// of an element of order p^2.
fn order_p_elements_lift(g: &Group) -> bool {
    let n = g.order() as u64;
    factorize(n).primes().all(|p| {
        n.is_multiple_of(p * p)
            && g.elements().filter(|&x| g.element_order(x) == p).all(|x| {
                g.elements()
                    .any(|y| g.element_order(y) == p * p && g.cyclic_subgroup(y).contains(x))
            })
    })
}

pub fn partitions_suite(groups: &[Group], max_order: usize) -> Result<Vec<CheckResult>> {
    let mut components = CheckResult::new("partition-components-are-maximal-cyclic");
    let mut maximal = CheckResult::new("plain-critical-elements-are-maximal");
    let mut compound = CheckResult::new("prime-power-partition-gives-compound-critical");
    let mut corollary = CheckResult::new("prime-power-partition-gives-frobenius-structure");
    let mut kegel = CheckResult::new("kegel-agreement");
    for g in groups {
        if let PartitionResult::Partition { components: parts, .. } = cyclic_partition(g)? {
            let maximal_set: BTreeSet<Vec<usize>> = g
                .maximal_cyclic_subgroups()?
                .iter()
                .map(|m| m.members.to_vec())
                .collect();
            let part_set: BTreeSet<Vec<usize>> = parts.iter().map(|m| m.members.to_vec()).collect();
            let covered: usize = parts.iter().map(|c| c.members.len() - 1).sum::<usize>() + 1;
            components.case(part_set == maximal_set && covered == g.order(), || {
                g.descriptor().to_string()
            });
        }
        let o = AdjacencyOracle::materialized(g)?;
        maximal.verdict(&check_plain_critical_maximal(&o)?);
        compound.verdict(&check_partition_implies_compound_critical(&o)?);
        corollary.verdict(&check_main_corollary(g)?);
    }
    for g in p_group_family(max_order)? {
        let by_hughes_thompson = kegel_partitionable(&g, CLOSURE_CAP)?;
        let blocks = finest_subgroup_partition(&g, CLOSURE_CAP)?;
        // groups of order p have a single block
        let by_blocks = blocks.len() >= 2;
        kegel.case(by_hughes_thompson == by_blocks, || {
            format!(
                "{}: hughes-thompson says {by_hughes_thompson}, {} blocks",
                g.descriptor(),
                blocks.len()
            )
        });
    }
    Ok(vec![components, maximal, compound, corollary, kegel])
}

pub fn theorems_suite(max_order: u64) -> Result<Vec<CheckResult>> {
    let mut agreement = CheckResult::new("census-graph-agreement");
    let mut recognized = CheckResult::new("critical-groups-recognized");
    let mut sylow = CheckResult::new("critical-group-sylows-hughes-thompson-full");
    let mut shape = CheckResult::new("critical-group-class-census");
    let mut eppo = CheckResult::new("eppo-metacyclic-equivalence");
    let entries = census(max_order, max_order, true)?;
    for e in &entries {
        let g = e.graph.expect("every entry is verified");
        agreement.case(g.agrees, || {
            format!("{}: arithmetic {}, graph {}", e.params, e.flags.critical, g.is_critical_group)
        });
        if !e.flags.critical {
            continue;
        }
        let group = Group::metacyclic(e.params)?;
        let p = e.params;
        let at = || p.to_string();
        let s = recognize_critical_structure(&group);
        recognized.case(
            s.as_ref().is_some_and(|s| (s.p, s.a, s.q, s.b) == (p.p, p.a, p.q, p.b)),
            at,
        );
        if let Some(s) = &s {
            let full = [(&s.kernel, s.p), (&s.complement, s.q)].iter().all(|(sub, prime)| {
                hughes_thompson_within(&group, sub.members.iter().copied(), *prime, CLOSURE_CAP)
                    .is_ok_and(|h| h.len() == sub.members.len())
            });
            sylow.case(full, at);
        }
        let o = AdjacencyOracle::materialized(&group)?;
        let mut sizes: Vec<usize> = o.twin_partition()?.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        let (pa, qb) = (p.p.pow(p.a) as usize, p.q.pow(p.b) as usize);
        let mut want = vec![1, pa - 1];
        want.extend(std::iter::repeat_n(qb - 1, pa));
        want.sort_unstable();
        shape.case(
            sizes == want && o.star_vertices().as_slice() == [0] && group.exponent_and_pi().1,
            at,
        );
    }
    let mut first_eppo = None;
    for e in entries.iter().filter(|e| e.flags.eppo && e.params.a >= 2 && e.params.b >= 2) {
        first_eppo.get_or_insert(e.params);
        eppo.verdict(&eppo_metacyclic_equivalence_check(&e.params)?);
    }
    let mut control = CheckResult::new("eppo-equivalence-negative-control");
    if let Some(params) = first_eppo {
        let flipped = !powercrit_core::frobenius::validate(&params).frobenius;
        control.case(eppo_equivalence_against(&params, flipped)?.is_fail(), || {
            format!("{params}: a wrong Frobenius claim was not caught")
        });
    }
    let found = eppo_non_frobenius(max_order)?;
    eppo.note = Some(if found.is_empty() {
        format!("eppo but not Frobenius with a, b >= 2: vacuous in range (order <= {max_order})")
    } else {
        format!("eppo but not Frobenius with a, b >= 2: {} parameter sets", found.len())
    });
    Ok(vec![agreement, recognized, sylow, shape, eppo, control])
}

pub fn oracles_suite(groups: &[Group]) -> Result<Vec<CheckResult>> {
    let mut modes = CheckResult::new("lazy-materialized-agreement");
    let mut overgroups = CheckResult::new("overgroup-criterion-agreement");
    for g in small(groups) {
        let mat = AdjacencyOracle::materialized(g)?;
        let lazy = AdjacencyOracle::lazy(g);
        for x in g.elements() {
            let pairs_agree = g
                .elements()
                .all(|y| mat.adjacent_or_equal(x, y) == lazy.adjacent_or_equal(x, y));
            let ok = pairs_agree
                && mat.closed_neighborhood(x) == lazy.closed_neighborhood(x)
                && mat.element_n_class(x) == lazy.element_n_class(x);
            modes.case(ok, || format!("{}: {}", g.descriptor(), g.describe(x)));
        }
        modes.case(mat.star_vertices() == lazy.star_vertices(), || {
            format!("{}: star vertices", g.descriptor())
        });
        for class in &mat.twin_partition()?.classes {
            let x = class.first().unwrap();
            let criterion = plain_critical_by_overgroups(&mat, x);
            if matches!(criterion, OvergroupCriterion::Inapplicable(_)) {
                continue;
            }
            let rec = classify_element(&mat, x)?;
            let agrees = match criterion {
                OvergroupCriterion::Holds => rec.is_plain_critical(),
                _ => !rec.is_critical,
            };
            overgroups.case(agrees, || {
                format!("{}: {} gives {criterion:?}", g.descriptor(), g.describe(x))
            });
        }
    }
    Ok(vec![modes, overgroups])
}
