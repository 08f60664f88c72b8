//! Split metacyclic groups `<x, y | x^(p^a) = 1, y^(q^b) = 1, y^-1 x y = x^r>`.
//!
//! Elements are stored as `x^i y^j` with index `i + p^a * j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::MetacyclicError;
use crate::numtheory::{gcd, inv_mod, is_prime, pow_mod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MetacyclicParams {
    pub p: u64,
    pub a: u32,
    pub q: u64,
    pub b: u32,
    pub r: u64,
}

impl MetacyclicParams {
    pub fn new(p: u64, a: u32, q: u64, b: u32, r: u64) -> Self {
        MetacyclicParams { p, a, q, b, r }
    }

    pub fn kernel_order(&self) -> Option<u64> {
        self.p.checked_pow(self.a)
    }

    pub fn complement_order(&self) -> Option<u64> {
        self.q.checked_pow(self.b)
    }

    pub fn order(&self) -> Option<u64> {
        self.kernel_order()?.checked_mul(self.complement_order()?)
    }

    /// Checks that the presentation defines a group of order `p^a q^b`.
    pub fn check(&self) -> Result<(), MetacyclicError> {
        for prime in [self.p, self.q] {
            if !is_prime(prime) {
                return Err(MetacyclicError::NotPrime(prime));
            }
        }
        if self.p == self.q {
            return Err(MetacyclicError::EqualPrimes(self.p));
        }
        if self.a == 0 || self.b == 0 {
            return Err(MetacyclicError::Exponent {
                a: self.a,
                b: self.b,
            });
        }
        let n = self.kernel_order().ok_or(MetacyclicError::Overflow)?;
        let m = self.complement_order().ok_or(MetacyclicError::Overflow)?;
        self.order().ok_or(MetacyclicError::Overflow)?;
        if self.r < 2 || self.r >= n {
            return Err(MetacyclicError::RRange {
                r: self.r,
                kernel_order: n,
            });
        }
        if self.r.is_multiple_of(self.p) {
            return Err(MetacyclicError::PDividesR {
                p: self.p,
                r: self.r,
            });
        }
        let residue = pow_mod(self.r, m, n);
        if residue != 1 {
            return Err(MetacyclicError::NotWellDefined {
                complement_order: m,
                kernel_order: n,
                residue,
            });
        }
        Ok(())
    }
}

impl fmt::Display for MetacyclicParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M:{},{},{},{},{}", self.p, self.a, self.q, self.b, self.r)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct MetacyclicBackend {
    pub params: MetacyclicParams,
    pub n: usize,
    pub m: usize,
    // r^j mod n and r^-j mod n for j in 0..m
    r_pow: Vec<usize>,
    r_inv_pow: Vec<usize>,
}

impl MetacyclicBackend {
    pub fn new(params: MetacyclicParams) -> Result<Self, MetacyclicError> {
        params.check()?;
        let n = params.kernel_order().unwrap();
        let m = params.complement_order().unwrap() as usize;
        let s = inv_mod(params.r, n).expect("r is a unit");
        let r_pow = (0..m).map(|j| pow_mod(params.r, j as u64, n) as usize).collect();
        let r_inv_pow = (0..m).map(|j| pow_mod(s, j as u64, n) as usize).collect();
        Ok(MetacyclicBackend {
            params,
            n: n as usize,
            m,
            r_pow,
            r_inv_pow,
        })
    }

    pub fn coords(&self, g: usize) -> (usize, usize) {
        (g % self.n, g / self.n)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i + self.n * j
    }

    // x^i1 y^j1 x^i2 y^j2 = x^(i1 + r^-j1 i2) y^(j1 + j2)
    pub fn multiply(&self, g: usize, h: usize) -> usize {
        let (i1, j1) = self.coords(g);
        let (i2, j2) = self.coords(h);
        let i = (i1 + self.r_inv_pow[j1] * i2) % self.n;
        self.index(i, (j1 + j2) % self.m)
    }

    pub fn invert(&self, g: usize) -> usize {
        let (i, j) = self.coords(g);
        let i_inv = (self.n - (i * self.r_pow[j]) % self.n) % self.n;
        self.index(i_inv, (self.m - j) % self.m)
    }

    pub fn pow(&self, g: usize, mut e: u64) -> usize {
        let mut acc = 0usize;
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

    pub fn order(&self, g: usize) -> u64 {
        let (_, j) = self.coords(g);
        let head = (self.m / gcd(j as u64, self.m as u64) as usize) as u64;
        let (i, _) = self.coords(self.pow(g, head));
        head * (self.n as u64 / gcd(i as u64, self.n as u64))
    }
}
