use std::fmt;

use crate::MAX_ORDER;

const LIMBS: usize = MAX_ORDER / 64;

/// A set of group elements, stored as a fixed-width bitset.
///
/// Elements are table indices in `0..MAX_ORDER`.  The set is `Copy` and all
/// operations are branch-light limb arithmetic, which keeps the hot subset
/// tests in the geodesic index cheap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet {
    bits: [u64; LIMBS],
}

impl ElemSet {
    pub const fn empty() -> Self {
        ElemSet { bits: [0; LIMBS] }
    }

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ORDER);
        let mut s = ElemSet::empty();
        for e in 0..n {
            s.insert(e);
        }
        s
    }

    pub fn singleton(e: usize) -> Self {
        let mut s = ElemSet::empty();
        s.insert(e);
        s
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        debug_assert!(e < MAX_ORDER);
        self.bits[e / 64] |= 1 << (e % 64);
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        debug_assert!(e < MAX_ORDER);
        self.bits[e / 64] &= !(1 << (e % 64));
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        debug_assert!(e < MAX_ORDER);
        self.bits[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&l| l == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        self.zip_limbs(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        self.zip_limbs(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        self.zip_limbs(other, |a, b| a & !b)
    }

    fn zip_limbs(&self, other: &ElemSet, f: impl Fn(u64, u64) -> u64) -> ElemSet {
        let mut bits = [0; LIMBS];
        for (out, (&a, &b)) in bits.iter_mut().zip(self.bits.iter().zip(&other.bits)) {
            *out = f(a, b);
        }
        ElemSet { bits }
    }

    /// Iterates the elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &limb)| {
            let mut rest = limb;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = ElemSet::empty();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
