//! Finite groups as validated multiplication tables.
//!
//! A [`Group`] is a complete table over indices `0..n` with the identity
//! pinned at index 0.  Construction always validates the three table laws
//! (Latin square, identity, associativity) and precomputes inverses and
//! element orders, so everything downstream can trust the table blindly.

mod autom;
mod build;

use crate::error::internal;
use crate::{ElemSet, Error, MAX_ORDER};

pub use autom::{automorphisms, automorphisms_with_cap, Automorphisms};

/// A finite group given by its multiplication table.
///
/// Index 0 is always the identity.  Tables supplied with the identity
/// elsewhere are relabelled on construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    n: usize,
    /// Row-major table: `mul[a * n + b]` is the product `a * b`.
    mul: Vec<u16>,
    inv: Vec<u16>,
    elem_order: Vec<u16>,
    abelian: bool,
}

impl Group {
    /// Builds and validates a group from a row-major table.
    ///
    /// The table must be a Latin square with a two-sided identity and an
    /// associative product; the identity is relabelled to index 0 if needed.
    pub fn from_table(n: usize, entries: &[usize]) -> Result<Group, Error> {
        if n == 0 {
            return Err(Error::NotLatinSquare("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderCapExceeded { order: n, cap: MAX_ORDER });
        }
        if entries.len() != n * n {
            return Err(Error::NotLatinSquare(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= n) {
            return Err(Error::NotLatinSquare(format!(
                "entry {bad} out of range 0..{n}"
            )));
        }

        // Latin square: every row and column is a permutation.
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                let r = entries[i * n + j];
                let c = entries[j * n + i];
                if row_seen[r] {
                    return Err(Error::NotLatinSquare(format!(
                        "row {i} repeats element {r}"
                    )));
                }
                if col_seen[c] {
                    return Err(Error::NotLatinSquare(format!(
                        "column {i} repeats element {c}"
                    )));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }

        // Locate the two-sided identity, then pin it at index 0.
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| entries[e * n + j] == j && entries[j * n + e] == j))
            .ok_or(Error::NoIdentity)?;
        let mul: Vec<u16> = if identity == 0 {
            entries.iter().map(|&e| e as u16).collect()
        } else {
            let relabel = |x: usize| -> usize {
                if x == identity {
                    0
                } else if x == 0 {
                    identity
                } else {
                    x
                }
            };
            let mut t = vec![0u16; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[relabel(a) * n + relabel(b)] = relabel(entries[a * n + b]) as u16;
                }
            }
            t
        };

        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b] as usize;
                for c in 0..n {
                    let bc = mul[b * n + c] as usize;
                    if mul[ab * n + c] != mul[a * n + bc] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }

        let mut inv = vec![0u16; n];
        for a in 0..n {
            let j = (0..n)
                .find(|&j| mul[a * n + j] == 0)
                .expect("Latin square row covers the identity");
            if mul[j * n + a] != 0 {
                // Cannot happen once associativity and identity hold.
                return Err(internal(format!("one-sided inverse for element {a}")));
            }
            inv[a] = j as u16;
        }

        let mut elem_order = vec![0u16; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1u16;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
        }

        let abelian = (0..n).all(|a| (a..n).all(|b| mul[a * n + b] == mul[b * n + a]));

        Ok(Group { n, mul, inv, elem_order, abelian })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Order of the cyclic subgroup generated by `a`.
    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// `a^e` for `e >= 0`.
    pub fn pow(&self, a: usize, e: usize) -> usize {
        let mut acc = 0;
        for _ in 0..e % self.elem_order(a) {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Multiplies the elements of `word` left to right.
    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &e| self.mul(acc, e))
    }

    /// Normalized table bytes: order as u16 LE, then the row-major entries.
    ///
    /// Identical groups always produce identical bytes, which is what cache
    /// fingerprints hash.
    pub fn table_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + 2 * self.mul.len());
        out.extend_from_slice(&(self.n as u16).to_le_bytes());
        for &e in &self.mul {
            out.extend_from_slice(&e.to_le_bytes());
        }
        out
    }

    /// Closure of `xs` (plus the identity) under multiplication.
    ///
    /// In a finite group this is exactly the generated subgroup; inverses
    /// come for free from element orders.
    pub fn subgroup_closure(&self, xs: &ElemSet) -> ElemSet {
        let mut set = ElemSet::singleton(0);
        let mut list: Vec<usize> = vec![0];
        for e in xs.iter() {
            if !set.contains(e) {
                set.insert(e);
                list.push(e);
            }
        }
        let mut next = 1; // members before `next` have been paired with everyone
        while next < list.len() {
            let a = list[next];
            next += 1;
            let mut i = 0;
            while i < list.len() {
                let b = list[i];
                i += 1;
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !set.contains(p) {
                        set.insert(p);
                        list.push(p);
                    }
                }
            }
        }
        set
    }

    /// The commutator subgroup, generated by all `a b a^-1 b^-1`.
    pub fn commutator_subgroup(&self) -> ElemSet {
        let mut gens = ElemSet::empty();
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                gens.insert(c);
            }
        }
        self.subgroup_closure(&gens)
    }

    /// Invariant factors `n_1 | n_2 | .. | n_r` of an abelian group.
    ///
    /// The trivial group yields an empty list.  Errors on non-abelian input.
    pub fn abelian_invariants(&self) -> Result<Vec<usize>, Error> {
        if !self.abelian {
            return Err(Error::NonAbelian);
        }
        // Per prime p: the count of x with x^(p^k) = 1 equals the product of
        // p^min(k, e_i) over the p-primary cyclic factors, so consecutive
        // kernel ratios recover the exponent multiset.
        let mut per_prime: Vec<(usize, Vec<usize>)> = Vec::new();
        for p in primes_dividing(self.n) {
            let mut kernel_sizes = vec![1usize];
            loop {
                let k = kernel_sizes.len();
                let pk = p.checked_pow(k as u32).expect("prime power fits usize");
                let size = (0..self.n).filter(|&x| self.pow_raw(x, pk) == 0).count();
                if size == *kernel_sizes.last().unwrap() {
                    break;
                }
                kernel_sizes.push(size);
            }
            // r_k = number of factors with exponent >= k.
            let mut ranks: Vec<usize> = Vec::new();
            for w in kernel_sizes.windows(2) {
                let ratio = w[1] / w[0];
                debug_assert_eq!(w[0] * ratio, w[1]);
                ranks.push(ilog(ratio, p));
            }
            ranks.push(0);
            let mut exps: Vec<usize> = Vec::new();
            for k in 1..ranks.len() {
                for _ in 0..ranks[k - 1] - ranks[k] {
                    exps.push(k);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            if !exps.is_empty() {
                per_prime.push((p, exps));
            }
        }

        // Largest prime powers combine into the largest invariant factor.
        let rounds = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors = Vec::with_capacity(rounds);
        for i in 0..rounds {
            let mut f = 1usize;
            for (p, exps) in &per_prime {
                if let Some(&e) = exps.get(i) {
                    f *= p.pow(e as u32);
                }
            }
            factors.push(f);
        }
        factors.reverse();
        Ok(factors)
    }

    /// Sum of `n_i - 1` over the invariant factors of an abelian group.
    ///
    /// This equals both the small Davenport constant minus nothing extra and
    /// the directed Cayley diameter for abelian groups.
    pub fn invariant_factor_sum(&self) -> Result<usize, Error> {
        Ok(self.abelian_invariants()?.iter().map(|f| f - 1).sum())
    }

    /// Extracts a closed element set as a group in its own right.
    ///
    /// Elements are re-indexed in ascending order of their index in `self`,
    /// which keeps the identity at 0.  Errors if the set is not closed.
    pub fn subgroup(&self, elems: &ElemSet) -> Result<Group, Error> {
        let members: Vec<usize> = elems.iter().collect();
        if members.first() != Some(&0) {
            return Err(Error::NotClosed);
        }
        let mut index_of = vec![usize::MAX; self.n];
        for (i, &e) in members.iter().enumerate() {
            index_of[e] = i;
        }
        let m = members.len();
        let mut entries = vec![0usize; m * m];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                let p = self.mul(a, b);
                if index_of[p] == usize::MAX {
                    return Err(Error::NotClosed);
                }
                entries[i * m + j] = index_of[p];
            }
        }
        Group::from_table(m, &entries)
    }

    // x^e without reducing modulo the element order (e may exceed it).
    fn pow_raw(&self, x: usize, e: usize) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.n)
            .field("abelian", &self.abelian)
            .finish()
    }
}

fn primes_dividing(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog(mut x: usize, base: usize) -> usize {
    let mut k = 0;
    while x > 1 {
        debug_assert_eq!(x % base, 0);
        x /= base;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = Group::from_table(1, &[0]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.inv(0), 0);
        assert_eq!(g.elem_order(0), 1);
        assert!(g.is_abelian());
        assert_eq!(g.abelian_invariants().unwrap(), Vec::<usize>::new());
        assert_eq!(g.invariant_factor_sum().unwrap(), 0);
    }

    #[test]
    fn rejects_non_latin() {
        let err = Group::from_table(2, &[0, 0, 1, 1]).unwrap_err();
        assert!(matches!(err, Error::NotLatinSquare(_)));
    }

    #[test]
    fn rejects_out_of_range() {
        let err = Group::from_table(2, &[0, 1, 1, 2]).unwrap_err();
        assert!(matches!(err, Error::NotLatinSquare(_)));
    }

    #[test]
    fn rejects_no_identity() {
        // Latin square with no row equal to [0,1,2], hence no identity.
        let err = Group::from_table(3, &[1, 0, 2, 0, 2, 1, 2, 1, 0]).unwrap_err();
        assert!(matches!(err, Error::NoIdentity));
    }

    #[test]
    fn rejects_non_associative() {
        // An order-5 loop: Latin with identity 0, but (1*1)*2 != 1*(1*2),
        // and no order-5 loop other than C5 is associative.
        #[rustfmt::skip]
        let t = vec![
            0, 1, 2, 3, 4,
            1, 0, 3, 4, 2,
            2, 3, 4, 0, 1,
            3, 4, 1, 2, 0,
            4, 2, 0, 1, 3,
        ];
        let err = Group::from_table(5, &t).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
    }

    #[test]
    fn relabels_identity_to_zero() {
        // C3 written with identity at index 2: elements {0,1,2} = {a, a^2, e}.
        // a*a = a^2, a*a^2 = e, etc.
        let t = vec![1, 2, 0, 2, 0, 1, 0, 1, 2];
        let g = Group::from_table(3, &t).unwrap();
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.elem_order(0), 1);
        let orders: Vec<usize> = (0..3).map(|e| g.elem_order(e)).collect();
        assert_eq!(orders, vec![1, 3, 3]);
    }

    #[test]
    fn closure_and_commutator_cyclic() {
        let g = Group::from_spec("cyclic:6").unwrap();
        let h = g.subgroup_closure(&ElemSet::singleton(2));
        assert_eq!(h.iter().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(g.subgroup_closure(&ElemSet::singleton(1)).len(), 6);
        assert_eq!(g.commutator_subgroup(), ElemSet::singleton(0));
    }

    #[test]
    fn closure_symmetric_group() {
        let g = Group::from_spec("symmetric:3").unwrap();
        // A transposition generates a subgroup of order 2, the commutator
        // subgroup is the 3-cycle part.
        let t = (1..6).find(|&e| g.elem_order(e) == 2).unwrap();
        assert_eq!(g.subgroup_closure(&ElemSet::singleton(t)).len(), 2);
        let derived = g.commutator_subgroup();
        assert_eq!(derived.len(), 3);
        for e in derived.iter() {
            assert!(g.elem_order(e) == 1 || g.elem_order(e) == 3);
        }
    }

    #[test]
    fn commutator_quaternion() {
        let g = Group::from_spec("quaternion:8").unwrap();
        assert_eq!(g.commutator_subgroup().len(), 2);
    }

    #[test]
    fn abelian_invariants_examples() {
        let g = Group::from_spec("abelian:2,2").unwrap();
        assert_eq!(g.abelian_invariants().unwrap(), vec![2, 2]);

        // 4 x 6 normalizes to 2 | 12.
        let g = Group::from_spec("direct:cyclic:4;cyclic:6").unwrap();
        assert_eq!(g.abelian_invariants().unwrap(), vec![2, 12]);

        let g = Group::from_spec("cyclic:6").unwrap();
        assert_eq!(g.abelian_invariants().unwrap(), vec![6]);
        assert_eq!(g.invariant_factor_sum().unwrap(), 5);

        let g = Group::from_spec("abelian:3,3,3,6").unwrap();
        assert_eq!(g.abelian_invariants().unwrap(), vec![3, 3, 3, 6]);
        assert_eq!(g.invariant_factor_sum().unwrap(), 11);
    }

    #[test]
    fn invariants_reject_non_abelian() {
        let g = Group::from_spec("symmetric:3").unwrap();
        assert_eq!(g.abelian_invariants().unwrap_err(), Error::NonAbelian);
        assert_eq!(g.invariant_factor_sum().unwrap_err(), Error::NonAbelian);
    }

    #[test]
    fn subgroup_extraction() {
        let g = Group::from_spec("cyclic:8").unwrap();
        let h = g.subgroup_closure(&ElemSet::singleton(2));
        let sub = g.subgroup(&h).unwrap();
        assert_eq!(sub.order(), 4);
        assert_eq!(sub.abelian_invariants().unwrap(), vec![4]);

        let not_closed: ElemSet = [0usize, 2].into_iter().collect();
        assert_eq!(g.subgroup(&not_closed).unwrap_err(), Error::NotClosed);
        assert_eq!(g.subgroup(&ElemSet::singleton(3)).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn product_and_pow() {
        let g = Group::from_spec("cyclic:5").unwrap();
        assert_eq!(g.product(&[1, 1, 1]), 3);
        assert_eq!(g.product(&[]), 0);
        assert_eq!(g.pow(2, 4), 3);
        assert_eq!(g.pow(2, 0), 0);
    }

    #[test]
    fn table_bytes_distinguish_groups() {
        let a = Group::from_spec("cyclic:4").unwrap();
        let b = Group::from_spec("abelian:2,2").unwrap();
        assert_ne!(a.table_bytes(), b.table_bytes());
        assert_eq!(a.table_bytes(), Group::from_spec("cyclic:4").unwrap().table_bytes());
    }
}
