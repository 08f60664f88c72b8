//! Permutations of small degree and their lexicographic (Lehmer) ranks.
//!
//! Points are 0-based internally and 1-based in cycle notation. The product
//! `g * h` applies `h` first: `(g * h)(i) = g(h(i))`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::lcm;

pub const MAX_DEGREE: usize = 11;

const FACTORIALS: [usize; MAX_DEGREE + 1] = {
    let mut f = [1usize; MAX_DEGREE + 1];
    let mut i = 1;
    while i <= MAX_DEGREE {
        f[i] = f[i - 1] * i;
        i += 1;
    }
    f
};

pub fn factorial(k: usize) -> usize {
    FACTORIALS[k]
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm {
    degree: u8,
    img: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(degree <= MAX_DEGREE);
        let mut img = [0u8; MAX_DEGREE];
        for (i, v) in img.iter_mut().enumerate().take(degree) {
            *v = i as u8;
        }
        Perm {
            degree: degree as u8,
            img,
        }
    }

    /// Builds a permutation from its 0-based image list.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let k = images.len();
        if k > MAX_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "degree {k} exceeds {MAX_DEGREE}"
            )));
        }
        let mut seen = 0u32;
        let mut img = [0u8; MAX_DEGREE];
        for (i, &v) in images.iter().enumerate() {
            if v >= k || seen & (1 << v) != 0 {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen |= 1 << v;
            img[i] = v as u8;
        }
        Ok(Perm {
            degree: k as u8,
            img,
        })
    }

    /// Builds a permutation of `degree` points from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidArgument(format!(
                        "point {pt} outside 1..={degree}"
                    )));
                }
                if used[pt - 1] {
                    return Err(Error::InvalidArgument(format!(
                        "point {pt} repeated in cycle notation"
                    )));
                }
                used[pt - 1] = true;
            }
            for (idx, &pt) in cycle.iter().enumerate() {
                images[pt - 1] = cycle[(idx + 1) % cycle.len()] - 1;
            }
        }
        Perm::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.degree as usize]
    }

    pub fn apply(&self, point: usize) -> usize {
        self.img[point] as usize
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree, other.degree);
        let mut img = [0u8; MAX_DEGREE];
        for (i, v) in img.iter_mut().enumerate().take(self.degree()) {
            *v = self.img[other.img[i] as usize];
        }
        Perm {
            degree: self.degree,
            img,
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = [0u8; MAX_DEGREE];
        for i in 0..self.degree() {
            img[self.img[i] as usize] = i as u8;
        }
        Perm {
            degree: self.degree,
            img,
        }
    }

    /// Cycles of length at least 2, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut cycle = vec![start];
            seen |= 1 << start;
            let mut cur = self.apply(start);
            while cur != start {
                seen |= 1 << cur;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        let mut seen = 0u32;
        let mut order = 1u64;
        for start in 0..self.degree() {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut len = 0u64;
            let mut cur = start;
            loop {
                seen |= 1 << cur;
                len += 1;
                cur = self.apply(cur);
                if cur == start {
                    break;
                }
            }
            order = lcm(order, len);
        }
        order
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut img = [0u8; MAX_DEGREE];
        for i in 0..self.degree() {
            img[i] = i as u8;
        }
        for cycle in self.cycles() {
            let len = cycle.len();
            let shift = (e % len as u64) as usize;
            for (idx, &pt) in cycle.iter().enumerate() {
                img[pt] = cycle[(idx + shift) % len] as u8;
            }
        }
        Perm {
            degree: self.degree,
            img,
        }
    }

    /// Lexicographic rank in `0..degree!`; the identity has rank 0.
    pub fn rank(&self) -> usize {
        let k = self.degree();
        let mut seen = 0u32;
        let mut rank = 0usize;
        for i in 0..k {
            let v = self.img[i] as u32;
            let smaller_used = (seen & ((1u32 << v) - 1)).count_ones();
            let digit = (v - smaller_used) as usize;
            rank += digit * FACTORIALS[k - 1 - i];
            seen |= 1 << v;
        }
        rank
    }

    pub fn unrank(mut rank: usize, degree: usize) -> Perm {
        debug_assert!(rank < FACTORIALS[degree]);
        let mut available: u32 = (1u32 << degree) - 1;
        let mut img = [0u8; MAX_DEGREE];
        for (i, slot) in img.iter_mut().enumerate().take(degree) {
            let f = FACTORIALS[degree - 1 - i];
            let mut digit = rank / f;
            rank %= f;
            let mut bits = available;
            while digit > 0 {
                bits &= bits - 1;
                digit -= 1;
            }
            let v = bits.trailing_zeros();
            available &= !(1 << v);
            *slot = v as u8;
        }
        Perm {
            degree: degree as u8,
            img,
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (idx, pt) in cycle.iter().enumerate() {
                if idx > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_has_rank_zero() {
        assert_eq!(Perm::identity(5).rank(), 0);
        assert_eq!(Perm::unrank(0, 7), Perm::identity(7));
    }

    #[test]
    fn last_rank_is_reversal() {
        let p = Perm::unrank(factorial(4) - 1, 4);
        assert_eq!(p.images(), &[3, 2, 1, 0]);
    }

    #[test]
    fn cycle_notation() {
        let s = Perm::from_cycles(8, &[vec![1, 2, 3], vec![4, 5, 6, 7, 8]]).unwrap();
        assert_eq!(s.to_string(), "(1 2 3)(4 5 6 7 8)");
        assert_eq!(s.order(), 15);
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert!(Perm::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert!(Perm::from_cycles(3, &[vec![1, 4]]).is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![2, 3]]).unwrap();
        // (1 2)(2 3) sends 2 -> 3 -> 3 and 3 -> 2 -> 1
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
    }

    proptest! {
        #[test]
        fn rank_roundtrip(k in 1usize..=MAX_DEGREE, seed in any::<u64>()) {
            let r = (seed % factorial(k) as u64) as usize;
            prop_assert_eq!(Perm::unrank(r, k).rank(), r);
        }

        #[test]
        fn pow_matches_repeated_compose(k in 1usize..=8, seed in any::<u64>(), e in 0u64..40) {
            let p = Perm::unrank((seed % factorial(k) as u64) as usize, k);
            let mut acc = Perm::identity(k);
            for _ in 0..e {
                acc = acc.compose(&p);
            }
            prop_assert_eq!(p.pow(e), acc);
            prop_assert_eq!(p.compose(&p.inverse()), Perm::identity(k));
        }
    }
}
