mod common;

use std::collections::BTreeSet;

use powercrit_core::criticality::{
    classify_element, classify_group, dihedral_plain_critical_profile, plain_critical_by_overgroups,
    ClassKind, OvergroupCriterion,
};
use powercrit_core::frobenius::{census, exists_for, recognize_critical_structure, validate};
use powercrit_core::partitions::{
    cyclic_partition, finest_subgroup_partition, hughes_thompson_within, kegel_partitionable,
};
use powercrit_core::{AdjacencyOracle, Group, MetacyclicParams};

// Multiplicative order by repeated multiplication.
fn naive_order(r: u64, m: u64) -> u64 {
    let mut k = 1;
    let mut cur = r % m;
    while cur != 1 % m {
        cur = cur * r % m;
        k += 1;
        if k > m {
            return 0;
        }
    }
    k
}

fn naive_is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

// Orders p^a q^b <= bound of metacyclic groups with a Frobenius action, a, b >= 2.
fn naive_critical_orders(bound: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for p in (2..=bound).filter(|&p| naive_is_prime(p)) {
        for q in (2..=bound).filter(|&q| naive_is_prime(q) && q != p) {
            for a in 2..12u32 {
                for b in 2..12u32 {
                    let (Some(pa), Some(qb)) = (p.checked_pow(a), q.checked_pow(b)) else { continue };
                    if pa.saturating_mul(qb) > bound {
                        continue;
                    }
                    let found = (2..pa).any(|r| {
                        r % p != 0 && naive_order(r, pa) != 0 && qb % naive_order(r, pa) == 0 && naive_order(r, p) == qb
                    });
                    if found {
                        out.insert(pa * qb);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn critical_orders_up_to_1200() {
    let oracle = naive_critical_orders(1200);
    assert_eq!(oracle, BTreeSet::from([100, 500, 676, 1156]));
    let found: BTreeSet<u64> = census(1200, 0, true)
        .unwrap()
        .iter()
        .filter(|e| e.flags.critical)
        .map(|e| e.order)
        .collect();
    assert_eq!(found, oracle);
    assert!(census(1200, 0, true)
        .unwrap()
        .iter()
        .filter(|e| e.flags.critical)
        .all(|e| e.params.p > 3));
}

#[test]
fn exists_for_matches_divisibility() {
    for p in [3u64, 5, 7, 11, 13, 17] {
        for q in [2u64, 3, 5] {
            if p == q {
                continue;
            }
            for a in 1..=2 {
                for b in 1..=2 {
                    let m = q.pow(b);
                    let r = exists_for(p, a, q, b);
                    assert_eq!(r.is_some(), (p - 1) % m == 0, "{p},{a},{q},{b}");
                    if let Some(r) = r {
                        let f = validate(&MetacyclicParams::new(p, a, q, b, r));
                        assert!(f.well_defined && f.frobenius);
                        assert_eq!(naive_order(r, p), m);
                    }
                }
            }
        }
    }
}

#[test]
fn critical_group_structure() {
    for (p, a) in [(5u64, 2u32), (5, 3), (13, 2)] {
        let r = exists_for(p, a, 2, 2).unwrap();
        let params = MetacyclicParams::new(p, a, 2, 2, r);
        let g = Group::metacyclic(params).unwrap();
        let oracle = AdjacencyOracle::new(&g);
        assert!(classify_group(&oracle).unwrap().is_critical_group);
        assert_eq!(oracle.star_vertices().as_slice(), &[0]);
        assert!(g.exponent_and_pi().1);
        let mut sizes: Vec<usize> = oracle.twin_partition().unwrap().classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        let pa = p.pow(a) as usize;
        let mut want = vec![1, pa - 1];
        want.extend(std::iter::repeat_n(3, pa));
        want.sort();
        assert_eq!(sizes, want);
        let s = recognize_critical_structure(&g).unwrap();
        assert_eq!((s.p, s.a, s.q, s.b), (p, a, 2, 2));
        for (sylow, prime) in [(&s.kernel, p), (&s.complement, 2)] {
            let h = hughes_thompson_within(&g, sylow.members.iter().copied(), prime, 10_000).unwrap();
            assert_eq!(h.len(), sylow.members.len());
        }
    }
}

#[test]
fn dihedral_profile_matches_sweep() {
    for n in 2..=60u64 {
        let g = Group::dihedral(n).unwrap();
        let oracle = AdjacencyOracle::new(&g);
        let has = oracle
            .twin_partition()
            .unwrap()
            .classes
            .iter()
            .any(|c| classify_element(&oracle, c.first().unwrap()).unwrap().is_plain_critical());
        assert_eq!(has, dihedral_plain_critical_profile(n), "n = {n}");
    }
}

#[test]
fn class_level_invariants() {
    let mut groups = common::small_family();
    groups.extend((2..=30).map(|n| Group::dihedral(n).unwrap()));
    for g in groups {
        let oracle = AdjacencyOracle::new(&g);
        let star = oracle.star_vertices();
        let kind = classify_group(&oracle).unwrap();
        assert!(!(kind.is_plain_group && kind.is_critical_group));
        assert!(!kind.is_critical_group || kind.is_compound_group);
        for class in &oracle.twin_partition().unwrap().classes {
            let x = class.first().unwrap();
            let rec = classify_element(&oracle, x).unwrap();
            let o = g.element_order(x);
            let proper_pp = o > 1 && powercrit_core::numtheory::as_prime_power(o).is_some();
            if rec.is_critical {
                assert_eq!(star.as_slice(), &[0], "{}", g.descriptor());
                assert_eq!(rec.element_kind() == powercrit_core::criticality::ElementKind::Compound, proper_pp);
                match rec.kind {
                    ClassKind::Compound(Some(params)) => assert_eq!(params.s, 0),
                    ClassKind::Compound(None) => panic!("star class flagged critical"),
                    ClassKind::Plain => {
                        let phi = powercrit_core::numtheory::euler_phi(o);
                        assert_eq!(rec.size as u64, phi);
                        assert_eq!(rec.closure_size, rec.size + 1);
                        assert!(!proper_pp);
                    }
                }
            }
            let criterion = plain_critical_by_overgroups(&oracle, x);
            match criterion {
                OvergroupCriterion::Holds => assert!(rec.is_plain_critical(), "{} {}", g.descriptor(), g.describe(x)),
                OvergroupCriterion::Fails { .. } => assert!(!rec.is_critical),
                OvergroupCriterion::Inapplicable(_) => {}
            }
        }
    }
}

#[test]
fn kegel_matches_finest_partition() {
    let specs = [
        "C:2", "C:4", "C:8", "C:9", "C:27", "C:25", "C:2 x C:2", "C:3 x C:3", "C:5 x C:5", "C:7 x C:7",
        "C:2 x C:4", "C:4 x C:4", "C:2 x C:2 x C:2", "C:3 x C:9", "D:4", "D:8", "D:16", "Q:3", "Q:4",
        "Q:5", "Q:6", "C:2 x Q:3", "C:2 x D:4", "C:2 x C:2 x C:2 x C:2", "C:4 x Q:3", "C:2 x C:8",
        "Q:3 x Q:3", "D:4 x D:4", "C:9 x C:9", "C:3 x C:3 x C:3",
    ];
    for spec in specs {
        let g = Group::parse(spec).unwrap();
        let kegel = kegel_partitionable(&g, 100_000).unwrap();
        let blocks = finest_subgroup_partition(&g, 100_000).unwrap();
        let brute = blocks.len() >= 2 && g.order() > 1 && !is_prime(g.order());
        assert_eq!(kegel, brute, "{spec}");
        if cyclic_partition(&g).unwrap().is_nontrivial_partition() {
            assert!(kegel, "{spec}");
        }
    }
}

fn is_prime(n: usize) -> bool {
    naive_is_prime(n as u64)
}
