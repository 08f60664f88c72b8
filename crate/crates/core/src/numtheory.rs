//! Exact elementary number theory on machine integers.
//!
//! Everything here works on `u64` and is exact for the ranges the rest of the
//! crate needs (group orders well below 2^32).

use serde::Serialize;

use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// `p^k` with `p` prime. The value 1 is the distinguished [`PrimePower::One`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PrimePower {
    One,
    Proper { p: u64, k: u32 },
}

impl PrimePower {
    pub fn value(self) -> u64 {
        match self {
            PrimePower::One => 1,
            PrimePower::Proper { p, k } => p.pow(k),
        }
    }

    pub fn exponent(self) -> u32 {
        match self {
            PrimePower::One => 0,
            PrimePower::Proper { k, .. } => k,
        }
    }

    pub fn prime(self) -> Option<u64> {
        match self {
            PrimePower::One => None,
            PrimePower::Proper { p, .. } => Some(p),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    if n < (1 << 32) {
        let mut d = 5u64;
        while d * d <= n {
            if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
                return false;
            }
            d += 6;
        }
        return true;
    }
    miller_rabin(n)
}

// Deterministic for all 64-bit inputs with this witness set.
fn miller_rabin(n: u64) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Factorization(out)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .pairs()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn as_prime_power(n: u64) -> Option<PrimePower> {
    if n == 1 {
        return Some(PrimePower::One);
    }
    match factorize(n).pairs() {
        [(p, k)] => Some(PrimePower::Proper { p: *p, k: *k }),
        _ => None,
    }
}

/// `Some((p, r))` when `n = p^r - 1` for a prime `p` and `r >= 2`.
pub fn as_prime_power_minus_one(n: u64) -> Option<(u64, u32)> {
    match as_prime_power(n + 1) {
        Some(PrimePower::Proper { p, k }) if k >= 2 => Some((p, k)),
        _ => None,
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Order of `r` in the unit group of `Z/mZ`.
///
/// Starts from `phi(m)` and strips prime factors while the power stays 1.
pub fn multiplicative_order(r: i64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "multiplicative order needs modulus >= 2, got {m}"
        )));
    }
    let r = r.rem_euclid(m as i64) as u64;
    if gcd(r, m) != 1 {
        return Err(Error::NotCoprime { value: r, modulus: m });
    }
    let mut t = euler_phi(m);
    for &(p, _) in factorize(t).pairs() {
        while t.is_multiple_of(p) && pow_mod(r, t / p, m) == 1 {
            t /= p;
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(100).pairs(), &[(2, 2), (5, 2)]);
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(40320).pairs(), &[(2, 7), (3, 2), (5, 1), (7, 1)]);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(as_prime_power(25), Some(PrimePower::Proper { p: 5, k: 2 }));
        assert_eq!(as_prime_power(15), None);
        assert_eq!(as_prime_power(1), Some(PrimePower::One));
        assert_eq!(as_prime_power_minus_one(8), Some((3, 2)));
        assert_eq!(as_prime_power_minus_one(4), None);
        assert_eq!(as_prime_power_minus_one(1), None);
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(7, 5).unwrap(), 4);
        assert_eq!(multiplicative_order(2, 9).unwrap(), 6);
        assert_eq!(multiplicative_order(2, 3).unwrap(), 2);
        assert_eq!(multiplicative_order(1, 17).unwrap(), 1);
        assert!(matches!(multiplicative_order(6, 9), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(169));
        assert!(is_prime(4_294_967_311));
        assert!(!is_prime(4_294_967_297)); // 641 * 6700417
    }

    #[test]
    fn inverse() {
        assert_eq!(inv_mod(7, 25), Some(18));
        assert_eq!(inv_mod(5, 25), None);
    }
}
