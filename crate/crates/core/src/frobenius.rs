//! Metacyclic groups `C_{p^a} ⋊ C_{q^b}`: arithmetic flags, the least
//! Frobenius action, recognition of the cyclic Frobenius structure inside an
//! arbitrary group, and the census comparing arithmetic and graph verdicts.

use rayon::prelude::*;
use serde::Serialize;

use crate::criticality::classify_group;
use crate::error::Result;
use crate::group::{CyclicSubgroup, Group, MetacyclicParams};
use crate::numtheory::{factorize, is_prime, multiplicative_order, pow_mod};
use crate::partitions::Verdict;
use crate::power_graph::AdjacencyOracle;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetacyclicFlags {
    pub well_defined: bool,
    pub eppo: bool,
    pub frobenius: bool,
    pub critical: bool,
    /// One entry per false flag.
    pub reasons: Vec<String>,
}

/// `eppo ⟺ q^b = |r| mod p^a`, `frobenius ⟺ q^b = |r| mod p`,
/// `critical ⟺ frobenius ∧ a >= 2 ∧ b >= 2`.
pub fn validate(params: &MetacyclicParams) -> MetacyclicFlags {
    if let Err(e) = params.check() {
        let reason = format!("not well-defined: {e}");
        return MetacyclicFlags {
            well_defined: false,
            eppo: false,
            frobenius: false,
            critical: false,
            reasons: vec![reason.clone(), reason.clone(), reason.clone(), reason],
        };
    }
    let n = params.kernel_order().unwrap();
    let m = params.complement_order().unwrap();
    let mut reasons = Vec::new();
    let order_mod_n = multiplicative_order(params.r as i64, n).expect("r is a unit");
    let order_mod_p = multiplicative_order(params.r as i64, params.p).expect("r is a unit");
    let eppo = order_mod_n == m;
    if !eppo {
        reasons.push(format!("eppo: |{}| mod {n} = {order_mod_n}, not {m}", params.r));
    }
    let frobenius = order_mod_p == m;
    if !frobenius {
        reasons.push(format!("frobenius: |{}| mod {} = {order_mod_p}, not {m}", params.r, params.p));
    }
    let critical = frobenius && params.a >= 2 && params.b >= 2;
    if !critical {
        if frobenius {
            reasons.push(format!("critical: needs a, b >= 2 (a = {}, b = {})", params.a, params.b));
        } else {
            reasons.push("critical: not Frobenius".into());
        }
    }
    MetacyclicFlags {
        well_defined: true,
        eppo,
        frobenius,
        critical,
        reasons,
    }
}

/// The least `r` for which `(p, a, q, b, r)` is well-defined and Frobenius.
pub fn exists_for(p: u64, a: u32, q: u64, b: u32) -> Option<u64> {
    if !is_prime(p) || !is_prime(q) || p == q || a == 0 || b == 0 {
        return None;
    }
    let n = p.checked_pow(a)?;
    let m = q.checked_pow(b)?;
    if !(p - 1).is_multiple_of(m) {
        return None;
    }
    (2..n).find(|&r| {
        r % p != 0
            && pow_mod(r, m, n) == 1
            && multiplicative_order(r as i64, p).is_ok_and(|o| o == m)
    })
}

/// Every `r` making `(p, a, q, b, r)` well-defined, ascending.
pub fn well_defined_rs(p: u64, a: u32, q: u64, b: u32) -> Vec<u64> {
    let (Some(n), Some(m)) = (p.checked_pow(a), q.checked_pow(b)) else {
        return Vec::new();
    };
    (2..n)
        .filter(|&r| MetacyclicParams::new(p, a, q, b, r).check().is_ok() && pow_mod(r, m, n) == 1)
        .collect()
}

#[derive(Clone, Debug)]
pub struct FrobeniusStructure {
    pub p: u64,
    pub a: u32,
    pub q: u64,
    pub b: u32,
    pub kernel: CyclicSubgroup,
    pub complement: CyclicSubgroup,
}

/// Finds `|G| = p^a q^b` (`a, b >= 2`) with a unique, cyclic Sylow
/// `p`-subgroup `P`, a cyclic Sylow `q`-subgroup `Q`, and `C_P(h) = 1` for
/// every `h ∈ Q ∖ {1}`. Both primes are tried as the kernel prime.
pub fn recognize_critical_structure(group: &Group) -> Option<FrobeniusStructure> {
    let f = factorize(group.order() as u64);
    let [(p1, a1), (p2, a2)] = f.pairs() else {
        return None;
    };
    if *a1 < 2 || *a2 < 2 {
        return None;
    }
    [(*p1, *a1, *p2, *a2), (*p2, *a2, *p1, *a1)]
        .into_iter()
        .find_map(|(p, a, q, b)| recognize_with(group, p, a, q, b))
}

fn recognize_with(group: &Group, p: u64, a: u32, q: u64, b: u32) -> Option<FrobeniusStructure> {
    let (pa, qb) = (p.pow(a), q.pow(b));
    let orders: Vec<u64> = group.elements().map(|g| group.element_order(g)).collect();
    // a unique Sylow p-subgroup holds every p-element
    let p_elements = orders.iter().filter(|&&o| pa % o == 0).count() as u64;
    if p_elements != pa {
        return None;
    }
    let x = orders.iter().position(|&o| o == pa)?;
    let y = orders.iter().position(|&o| o == qb)?;
    let kernel = group.cyclic_subgroup(x);
    let complement = group.cyclic_subgroup(y);
    for &h in complement.members.iter().skip(1) {
        let h_inv = group.invert(h);
        for &k in kernel.members.iter().skip(1) {
            if group.multiply(group.multiply(h, k), h_inv) == k {
                return None;
            }
        }
    }
    Some(FrobeniusStructure {
        p,
        a,
        q,
        b,
        kernel,
        complement,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphVerdict {
    pub is_critical_group: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub params: MetacyclicParams,
    pub order: u64,
    pub flags: MetacyclicFlags,
    pub canonical: bool,
    pub graph: Option<GraphVerdict>,
}

/// All `(p, a, q, b)` with `p^a q^b <= max_order` admitting a well-defined
/// `r`. The canonical `r` is the least Frobenius one when present, else the
/// least well-defined one; `all_r` lists every well-defined `r`. Entries of
/// order at most `verify_up_to` are built and classified from the power graph.
pub fn census(max_order: u64, verify_up_to: u64, all_r: bool) -> Result<Vec<CensusEntry>> {
    let primes: Vec<u64> = (2..=max_order / 2).filter(|&n| is_prime(n)).collect();
    let mut entries = Vec::new();
    for &p in &primes {
        for &q in &primes {
            if p == q {
                continue;
            }
            for a in 1.. {
                let Some(pa) = p.checked_pow(a).filter(|&pa| pa * q <= max_order) else {
                    break;
                };
                for b in 1.. {
                    let Some(order) = q.checked_pow(b).map(|qb| pa * qb).filter(|&o| o <= max_order) else {
                        break;
                    };
                    let rs = well_defined_rs(p, a, q, b);
                    let Some(&least) = rs.first() else { continue };
                    let canonical = exists_for(p, a, q, b).unwrap_or(least);
                    let chosen: Vec<u64> = if all_r { rs } else { vec![canonical] };
                    for r in chosen {
                        let params = MetacyclicParams::new(p, a, q, b, r);
                        entries.push(CensusEntry {
                            params,
                            order,
                            flags: validate(&params),
                            canonical: r == canonical,
                            graph: None,
                        });
                    }
                }
            }
        }
    }
    entries.sort_by_key(|e| (e.order, e.params.p, e.params.a, e.params.q, e.params.b, e.params.r));
    entries
        .par_iter_mut()
        .filter(|e| e.order <= verify_up_to)
        .try_for_each(|e| -> Result<()> {
            let group = Group::metacyclic(e.params)?;
            let kind = classify_group(&AdjacencyOracle::materialized(&group)?)?;
            e.graph = Some(GraphVerdict {
                is_critical_group: kind.is_critical_group,
                agrees: kind.is_critical_group == e.flags.critical,
            });
            Ok(())
        })?;
    Ok(entries)
}

/// For EPPO parameters with `a, b >= 2`: Frobenius ⟺ the power graph says critical.
pub fn eppo_metacyclic_equivalence_check(params: &MetacyclicParams) -> Result<Verdict> {
    let flags = validate(params);
    eppo_equivalence_against(params, flags.frobenius)
}

/// As [`eppo_metacyclic_equivalence_check`] with the Frobenius flag supplied
/// by the caller, so a wrong claim can be shown to fail.
pub fn eppo_equivalence_against(params: &MetacyclicParams, claimed_frobenius: bool) -> Result<Verdict> {
    let flags = validate(params);
    if !flags.well_defined || !flags.eppo || params.a < 2 || params.b < 2 {
        return Ok(Verdict::NotApplicable(format!("{params} is not EPPO with a, b >= 2")));
    }
    let group = Group::metacyclic(*params)?;
    let critical = classify_group(&AdjacencyOracle::materialized(&group)?)?.is_critical_group;
    Ok(if critical == claimed_frobenius {
        Verdict::Pass
    } else {
        Verdict::Fail {
            counterexample: format!("{params}: frobenius = {claimed_frobenius}, critical group = {critical}"),
        }
    })
}

/// EPPO parameter sets that are not Frobenius, with `a, b >= 2`, up to `max_order`.
pub fn eppo_non_frobenius(max_order: u64) -> Result<Vec<MetacyclicParams>> {
    Ok(census(max_order, 0, true)?
        .into_iter()
        .filter(|e| e.flags.eppo && !e.flags.frobenius && e.params.a >= 2 && e.params.b >= 2)
        .map(|e| e.params)
        .collect())
}
