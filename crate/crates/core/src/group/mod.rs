//! Finite groups with elements indexed `0..order`.
//!
//! Three storage backends sit behind one index-based interface:
//!
//! * a dense Cayley table for cyclic, dihedral, generalized quaternion and
//!   direct-product groups of order at most [`TABLE_LIMIT`];
//! * symmetric groups `S_k` (`k <= 11`) indexed by the lexicographic rank of the
//!   permutation, never materialized beyond a small table for `k <= 6`;
//! * split metacyclic groups `C_{p^a} ⋊ C_{q^b}` multiplied arithmetically.
//!
//! The identity is always index 0. Canonical indexing per family:
//!
//! | family | index `i` means |
//! |---|---|
//! | `C:n` | `g^i` |
//! | `D:n` | `r^i` for `i < n`, `s r^(i-n)` otherwise (`s r s = r^-1`) |
//! | `Q:n` | `a^i` for `i < 2^(n-1)`, `a^(i-m) b` otherwise (`b a = a^-1 b`, `b^2 = a^(m/2)`) |
//! | `S:k` | the permutation of lexicographic rank `i` |
//! | `M:p,a,q,b,r` | `x^(i mod p^a) y^(i div p^a)` |
//! | `A x B` | `(i div |B|, i mod |B|)` |

pub mod metacyclic;
pub mod perm;
pub mod spec;

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::numtheory::{as_prime_power, factorize, gcd};

pub use metacyclic::MetacyclicParams;
use metacyclic::MetacyclicBackend;
pub use perm::{Perm, MAX_DEGREE};
pub use spec::GroupSpec;

/// Largest order stored as a dense Cayley table.
pub const TABLE_LIMIT: usize = 4096;
pub const DEFAULT_MATERIALIZE_LIMIT: usize = 4096;
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;
pub const MATERIALIZE_ENV: &str = "POWERCRIT_MAX_MATERIALIZE";

// Per-element caches (orders, cyclic subgroups) are kept up to this order.
const MEMO_LIMIT: usize = 1 << 17;
const PERM_TABLE_MAX_DEGREE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest order for which whole-group structures (adjacency matrix,
    /// partitions, maximal cyclic subgroups) are built.
    pub materialize: usize,
    /// Largest subgroup a closure computation may grow to.
    pub closure_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            materialize: DEFAULT_MATERIALIZE_LIMIT,
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

impl Limits {
    /// Defaults, with the materialization threshold taken from
    /// `POWERCRIT_MAX_MATERIALIZE` when set.
    pub fn from_env() -> Result<Limits> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(MATERIALIZE_ENV) {
            limits.materialize = raw.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("{MATERIALIZE_ENV}={raw} is not an integer"))
            })?;
        }
        Ok(limits)
    }
}

#[derive(Clone, Debug)]
pub struct CyclicSubgroup {
    pub generator: usize,
    pub order: u64,
    /// Sorted member indices.
    pub members: Arc<[usize]>,
}

impl CyclicSubgroup {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn to_set(&self) -> ElementSet {
        ElementSet::from_sorted(self.members.to_vec())
    }
}

#[derive(Clone)]
enum TableFamily {
    Cyclic,
    Dihedral,
    Quaternion,
    Product(Box<Group>, Box<Group>),
}

#[derive(Clone)]
enum Backend {
    Table {
        family: TableFamily,
        table: Vec<u16>,
        inverses: Vec<u16>,
    },
    Symmetric {
        degree: usize,
        table: Option<Vec<u16>>,
    },
    Metacyclic(MetacyclicBackend),
}

#[derive(Clone)]
pub struct Group {
    order: usize,
    descriptor: String,
    backend: Backend,
    limits: Limits,
    orders: OnceLock<Vec<u32>>,
    cyclic_memo: Vec<OnceLock<Arc<[usize]>>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("descriptor", &self.descriptor)
            .field("order", &self.order)
            .field("backend", &self.backend_name())
            .finish()
    }
}

fn tabulate(order: usize, mul: impl Fn(usize, usize) -> usize) -> (Vec<u16>, Vec<u16>) {
    let mut table = vec![0u16; order * order];
    let mut inverses = vec![0u16; order];
    for g in 0..order {
        for h in 0..order {
            let gh = mul(g, h);
            table[g * order + h] = gh as u16;
            if gh == 0 {
                inverses[g] = h as u16;
            }
        }
    }
    (table, inverses)
}

impl Group {
    fn assemble(order: usize, descriptor: String, backend: Backend) -> Group {
        let memo_len = if order <= MEMO_LIMIT { order } else { 0 };
        Group {
            order,
            descriptor,
            backend,
            limits: Limits::default(),
            orders: OnceLock::new(),
            cyclic_memo: (0..memo_len).map(|_| OnceLock::new()).collect(),
        }
    }

    fn check_table_size(order: u64, what: &str) -> Result<usize> {
        if order as u128 > TABLE_LIMIT as u128 {
            return Err(Error::Scale {
                what: format!("Cayley table for {what}"),
                order: order.min(usize::MAX as u64) as usize,
                limit: TABLE_LIMIT,
            });
        }
        Ok(order as usize)
    }

    pub fn cyclic(n: u64) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidArgument("C:n needs n >= 1".into()));
        }
        let n = Group::check_table_size(n, "C:n")?;
        let (table, inverses) = tabulate(n, |a, b| (a + b) % n);
        Ok(Group::assemble(
            n,
            format!("C:{n}"),
            Backend::Table {
                family: TableFamily::Cyclic,
                table,
                inverses,
            },
        ))
    }

    /// The dihedral group of order `2n`.
    pub fn dihedral(n: u64) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidArgument("D:n needs n >= 1".into()));
        }
        let order = Group::check_table_size(2 * n, "D:n")?;
        let n = n as usize;
        let (table, inverses) = tabulate(order, |g, h| {
            let (gs, gi) = (g >= n, g % n);
            let (hs, hi) = (h >= n, h % n);
            match (gs, hs) {
                (false, false) => (gi + hi) % n,
                (false, true) => n + (hi + n - gi) % n,
                (true, false) => n + (gi + hi) % n,
                (true, true) => (hi + n - gi) % n,
            }
        });
        Ok(Group::assemble(
            order,
            format!("D:{n}"),
            Backend::Table {
                family: TableFamily::Dihedral,
                table,
                inverses,
            },
        ))
    }

    /// The generalized quaternion group of order `2^n`, `n >= 3`.
    pub fn generalized_quaternion(n: u64) -> Result<Group> {
        if n < 3 {
            return Err(Error::InvalidArgument("Q:n needs n >= 3".into()));
        }
        if n >= 63 {
            return Err(Error::Scale {
                what: "Cayley table for Q:n".into(),
                order: usize::MAX,
                limit: TABLE_LIMIT,
            });
        }
        let order = Group::check_table_size(1u64 << n, "Q:n")?;
        let m = order / 2;
        let half = m / 2;
        let (table, inverses) = tabulate(order, |g, h| {
            let (gb, gi) = (g >= m, g % m);
            let (hb, hi) = (h >= m, h % m);
            match (gb, hb) {
                (false, false) => (gi + hi) % m,
                (false, true) => m + (gi + hi) % m,
                (true, false) => m + (gi + m - hi) % m,
                (true, true) => (gi + m - hi + half) % m,
            }
        });
        Ok(Group::assemble(
            order,
            format!("Q:{n}"),
            Backend::Table {
                family: TableFamily::Quaternion,
                table,
                inverses,
            },
        ))
    }

    pub fn symmetric(k: u64) -> Result<Group> {
        if k == 0 || k as usize > MAX_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "S:k needs 1 <= k <= {MAX_DEGREE}"
            )));
        }
        let degree = k as usize;
        let order = perm::factorial(degree);
        let table = (degree <= PERM_TABLE_MAX_DEGREE).then(|| {
            let perms: Vec<Perm> = (0..order).map(|r| Perm::unrank(r, degree)).collect();
            let mut t = vec![0u16; order * order];
            for (g, pg) in perms.iter().enumerate() {
                for (h, ph) in perms.iter().enumerate() {
                    t[g * order + h] = pg.compose(ph).rank() as u16;
                }
            }
            t
        });
        Ok(Group::assemble(
            order,
            format!("S:{degree}"),
            Backend::Symmetric { degree, table },
        ))
    }

    pub fn metacyclic(params: MetacyclicParams) -> Result<Group> {
        let backend = MetacyclicBackend::new(params)?;
        let order = params.order().unwrap() as usize;
        Ok(Group::assemble(
            order,
            params.to_string(),
            Backend::Metacyclic(backend),
        ))
    }

    pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
        let order = Group::check_table_size(a.order as u64 * b.order as u64, "direct product")?;
        let nb = b.order;
        let (table, inverses) = tabulate(order, |g, h| {
            a.multiply(g / nb, h / nb) * nb + b.multiply(g % nb, h % nb)
        });
        let rhs = if b.descriptor.contains(" x ") {
            format!("({})", b.descriptor)
        } else {
            b.descriptor.clone()
        };
        Ok(Group::assemble(
            order,
            format!("{} x {}", a.descriptor, rhs),
            Backend::Table {
                family: TableFamily::Product(Box::new(a.clone()), Box::new(b.clone())),
                table,
                inverses,
            },
        ))
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Group> {
        match spec {
            GroupSpec::Cyclic(n) => Group::cyclic(*n),
            GroupSpec::Dihedral(n) => Group::dihedral(*n),
            GroupSpec::Symmetric(k) => Group::symmetric(*k),
            GroupSpec::Quaternion(n) => Group::generalized_quaternion(*n),
            GroupSpec::Metacyclic(params) => Group::metacyclic(*params),
            GroupSpec::Product(a, b) => {
                Group::direct_product(&Group::from_spec(a)?, &Group::from_spec(b)?)
            }
        }
    }

    pub fn parse(spec: &str) -> Result<Group> {
        Group::from_spec(&GroupSpec::parse(spec)?)
    }

    pub fn with_limits(mut self, limits: Limits) -> Group {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn backend_name(&self) -> &'static str {
        match self.backend {
            Backend::Table { .. } => "cayley-table",
            Backend::Symmetric { .. } => "permutation",
            Backend::Metacyclic(_) => "metacyclic",
        }
    }

    /// Whether whole-group structures may be built under the current limits.
    pub fn is_materializable(&self) -> bool {
        self.order <= self.limits.materialize
    }

    pub(crate) fn require_materializable(&self, what: &str) -> Result<()> {
        if self.is_materializable() {
            Ok(())
        } else {
            Err(Error::Scale {
                what: what.to_string(),
                order: self.order,
                limit: self.limits.materialize,
            })
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn multiply(&self, g: usize, h: usize) -> usize {
        match &self.backend {
            Backend::Table { table, .. } => table[g * self.order + h] as usize,
            Backend::Symmetric {
                table: Some(t), ..
            } => t[g * self.order + h] as usize,
            Backend::Symmetric { degree, .. } => Perm::unrank(g, *degree)
                .compose(&Perm::unrank(h, *degree))
                .rank(),
            Backend::Metacyclic(m) => m.multiply(g, h),
        }
    }

    pub fn invert(&self, g: usize) -> usize {
        match &self.backend {
            Backend::Table { inverses, .. } => inverses[g] as usize,
            Backend::Symmetric { degree, .. } => Perm::unrank(g, *degree).inverse().rank(),
            Backend::Metacyclic(m) => m.invert(g),
        }
    }

    pub fn pow(&self, g: usize, mut e: u64) -> usize {
        match &self.backend {
            Backend::Symmetric { degree, .. } => Perm::unrank(g, *degree).pow(e).rank(),
            Backend::Metacyclic(m) => m.pow(g, e),
            Backend::Table { .. } => {
                let mut acc = 0;
                let mut base = g;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.multiply(acc, base);
                    }
                    base = self.multiply(base, base);
                    e >>= 1;
                }
                acc
            }
        }
    }

    fn compute_order(&self, g: usize) -> u64 {
        match &self.backend {
            Backend::Symmetric { degree, .. } => Perm::unrank(g, *degree).order(),
            Backend::Metacyclic(m) => m.order(g),
            Backend::Table { .. } => {
                let mut k = 1;
                let mut cur = g;
                while cur != 0 {
                    cur = self.multiply(cur, g);
                    k += 1;
                }
                k
            }
        }
    }

    /// Cached element orders, when the group is small enough to cache them.
    pub fn element_orders(&self) -> Option<&[u32]> {
        if self.order > MEMO_LIMIT {
            return None;
        }
        Some(self.orders.get_or_init(|| {
            (0..self.order)
                .into_par_iter()
                .map(|g| self.compute_order(g) as u32)
                .collect()
        }))
    }

    pub fn element_order(&self, g: usize) -> u64 {
        match self.element_orders() {
            Some(orders) => orders[g] as u64,
            None => self.compute_order(g),
        }
    }

    /// Human-readable element descriptor: cycle notation for `S:k`, `(i,j)`
    /// coordinates for metacyclic groups, `[a; b]` for direct products and the
    /// bare index otherwise.
    pub fn describe(&self, g: usize) -> String {
        match &self.backend {
            Backend::Symmetric { degree, .. } => Perm::unrank(g, *degree).to_string(),
            Backend::Metacyclic(m) => {
                let (i, j) = m.coords(g);
                format!("({i},{j})")
            }
            Backend::Table {
                family: TableFamily::Product(a, b),
                ..
            } => format!("[{}; {}]", a.describe(g / b.order), b.describe(g % b.order)),
            Backend::Table { .. } => g.to_string(),
        }
    }

    pub fn perm_degree(&self) -> Option<usize> {
        match &self.backend {
            Backend::Symmetric { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    pub fn perm(&self, g: usize) -> Option<Perm> {
        self.perm_degree().map(|k| Perm::unrank(g, k))
    }

    pub fn element_from_perm(&self, p: &Perm) -> Result<usize> {
        match self.perm_degree() {
            Some(k) if k == p.degree() => Ok(p.rank()),
            _ => Err(Error::InvalidArgument(format!(
                "{p} is not an element of {}",
                self.descriptor
            ))),
        }
    }

    pub fn metacyclic_params(&self) -> Option<MetacyclicParams> {
        match &self.backend {
            Backend::Metacyclic(m) => Some(m.params),
            _ => None,
        }
    }

    pub fn element_from_coords(&self, i: usize, j: usize) -> Result<usize> {
        match &self.backend {
            Backend::Metacyclic(m) if i < m.n && j < m.m => Ok(m.index(i, j)),
            _ => Err(Error::InvalidArgument(format!(
                "({i},{j}) is not an element of {}",
                self.descriptor
            ))),
        }
    }

    pub fn product_factors(&self) -> Option<(&Group, &Group)> {
        match &self.backend {
            Backend::Table {
                family: TableFamily::Product(a, b),
                ..
            } => Some((a, b)),
            _ => None,
        }
    }

    pub fn element_from_pair(&self, g: usize, h: usize) -> Result<usize> {
        match self.product_factors() {
            Some((a, b)) if g < a.order && h < b.order => Ok(g * b.order + h),
            _ => Err(Error::InvalidArgument(format!(
                "pair ({g}, {h}) is not an element of {}",
                self.descriptor
            ))),
        }
    }

    fn powers(&self, g: usize) -> Vec<usize> {
        match &self.backend {
            Backend::Symmetric { degree, table: None } => {
                let p = Perm::unrank(g, *degree);
                let mut cur = Perm::identity(*degree);
                let mut out = vec![0];
                loop {
                    cur = cur.compose(&p);
                    if cur == Perm::identity(*degree) {
                        break;
                    }
                    out.push(cur.rank());
                }
                out
            }
            _ => {
                let mut out = vec![0];
                let mut cur = g;
                while cur != 0 {
                    out.push(cur);
                    cur = self.multiply(cur, g);
                }
                out
            }
        }
    }

    pub fn cyclic_subgroup(&self, g: usize) -> CyclicSubgroup {
        let members = match self.cyclic_memo.get(g) {
            Some(cell) => {
                if let Some(m) = cell.get() {
                    m.clone()
                } else {
                    let powers = self.powers(g);
                    let o = powers.len() as u64;
                    let mut sorted = powers.clone();
                    sorted.sort_unstable();
                    let shared: Arc<[usize]> = sorted.into();
                    // The same subgroup for every generator of <g>.
                    for (k, &h) in powers.iter().enumerate() {
                        if gcd(k as u64, o) == 1 {
                            let _ = self.cyclic_memo[h].set(shared.clone());
                        }
                    }
                    shared
                }
            }
            None => {
                let mut v = self.powers(g);
                v.sort_unstable();
                v.into()
            }
        };
        CyclicSubgroup {
            generator: g,
            order: members.len() as u64,
            members,
        }
    }

    /// The generators of `<g>`, i.e. the `⋄`-class of `g`.
    pub fn diamond_class(&self, g: usize) -> ElementSet {
        let o = self.element_order(g);
        let powers = self.powers(g);
        powers
            .iter()
            .enumerate()
            .filter(|(k, _)| gcd(*k as u64, o) == 1)
            .map(|(_, &h)| h)
            .collect()
    }

    /// Whether `g ∈ <h>`. Rejects on order divisibility before touching powers.
    pub fn is_power_of(&self, g: usize, h: usize) -> bool {
        if g == h || g == 0 {
            return true;
        }
        let og = self.element_order(g);
        let oh = self.element_order(h);
        if !oh.is_multiple_of(og) {
            return false;
        }
        // <h> has exactly one subgroup of order o(g), generated by w.
        match &self.backend {
            Backend::Symmetric { degree, table: None } => {
                let target = Perm::unrank(g, *degree);
                let w = Perm::unrank(h, *degree).pow(oh / og);
                let mut cur = w;
                for _ in 0..og {
                    if cur == target {
                        return true;
                    }
                    cur = cur.compose(&w);
                }
                false
            }
            _ => {
                let w = self.pow(h, oh / og);
                if self.cyclic_memo.is_empty() {
                    let mut cur = w;
                    for _ in 0..og {
                        if cur == g {
                            return true;
                        }
                        cur = self.multiply(cur, w);
                    }
                    false
                } else {
                    self.cyclic_subgroup(w).contains(g)
                }
            }
        }
    }

    /// Elements `y` with `<x> < <y>`, found by one scan of the group.
    pub fn strict_overgroup_elements(&self, x: usize) -> ElementSet {
        let ox = self.element_order(x);
        let found: Vec<usize> = (0..self.order)
            .into_par_iter()
            .filter(|&y| {
                let oy = self.element_order(y);
                oy > ox && oy.is_multiple_of(ox) && self.is_power_of(x, y)
            })
            .collect();
        ElementSet::from_sorted(found)
    }

    /// Whether `<x>` is a maximal cyclic subgroup.
    pub fn is_maximal_element(&self, x: usize) -> bool {
        let ox = self.element_order(x);
        !(0..self.order).into_par_iter().any(|y| {
            let oy = self.element_order(y);
            oy > ox && oy.is_multiple_of(ox) && self.is_power_of(x, y)
        })
    }

    /// All maximal cyclic subgroups, ordered by their least generator.
    pub fn maximal_cyclic_subgroups(&self) -> Result<Vec<CyclicSubgroup>> {
        self.require_materializable("maximal cyclic subgroups")?;
        let n = self.order;
        let orders = self.element_orders().expect("materializable groups cache orders");
        let mut seen = FixedBitSet::with_capacity(n);
        let mut not_maximal = FixedBitSet::with_capacity(n);
        let mut reps = Vec::new();
        for y in 0..n {
            if seen.contains(y) {
                continue;
            }
            reps.push(y);
            let sub = self.cyclic_subgroup(y);
            for &z in sub.members.iter() {
                if orders[z] == orders[y] {
                    seen.insert(z);
                } else {
                    not_maximal.insert(z);
                }
            }
        }
        Ok(reps
            .into_iter()
            .filter(|&y| !not_maximal.contains(y))
            .map(|y| self.cyclic_subgroup(y))
            .collect())
    }

    /// The primes dividing `|G|`, and whether every element has prime-power order.
    pub fn exponent_and_pi(&self) -> (Vec<u64>, bool) {
        let pi = factorize(self.order as u64).primes().collect();
        let eppo = (0..self.order)
            .into_par_iter()
            .all(|g| as_prime_power(self.element_order(g)).is_some());
        (pi, eppo)
    }

    /// The subgroup generated by `gens`, by breadth-first closure.
    pub fn generated_subgroup(&self, gens: &[usize], cap: usize) -> Result<ElementSet> {
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut queue = vec![0usize];
        let mut out = vec![0usize];
        let mut seen_bits = (self.order <= MEMO_LIMIT).then(|| {
            let mut b = FixedBitSet::with_capacity(self.order);
            b.insert(0);
            b
        });
        let mut seen_hash: HashSet<usize> = HashSet::new();
        if seen_bits.is_none() {
            seen_hash.insert(0);
        }
        while let Some(e) = queue.pop() {
            for &g in &gens {
                let f = self.multiply(e, g);
                let fresh = match seen_bits.as_mut() {
                    Some(bits) => !bits.put(f),
                    None => seen_hash.insert(f),
                };
                if fresh {
                    out.push(f);
                    if out.len() > cap {
                        return Err(Error::Resource {
                            what: "subgroup closure".into(),
                            cap,
                        });
                    }
                    queue.push(f);
                }
            }
        }
        out.sort_unstable();
        Ok(ElementSet::from_sorted(out))
    }
}
