use fixedbitset::FixedBitSet;
use serde::Serialize;

/// A sorted, duplicate-free set of element indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ElementSet(Vec<usize>);

impl ElementSet {
    pub fn new() -> Self {
        ElementSet(Vec::new())
    }

    pub fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        ElementSet(v)
    }

    pub fn from_bitset(bits: &FixedBitSet) -> Self {
        ElementSet(bits.ones().collect())
    }

    pub fn full(order: usize) -> Self {
        ElementSet((0..order).collect())
    }

    pub fn to_bitset(&self, order: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(order);
        for &x in &self.0 {
            bits.insert(x);
        }
        bits
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn insert(&mut self, x: usize) -> bool {
        match self.0.binary_search(&x) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, x);
                true
            }
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut v: Vec<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        ElementSet(v)
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ElementSet(v)
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}
