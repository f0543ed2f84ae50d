//! Sequences over a group: unordered multisets of elements.
//!
//! A sequence is *product-one* if some ordering of its entries multiplies to
//! the identity, *product-one free* if no nonempty sub-multiset is
//! product-one, and an *atom* if it is product-one but cannot be split into
//! two nonempty product-one parts.  Over abelian groups these reduce to
//! subset-sum questions; over non-abelian groups the orderings matter and
//! the predicates run memoized searches over (remaining multiset, prefix
//! product) states.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;

use crate::{Automorphisms, ElemSet, Error, Group};

/// A multiset of group elements, stored as sorted `(element, multiplicity)`
/// pairs.  Equal multisets compare equal regardless of construction order;
/// the derived `Ord` is the lexicographic order on the entry list, which is
/// what orbit canonicalization minimizes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Sequence {
    entries: Vec<(u16, u16)>,
}

impl Sequence {
    pub fn empty() -> Sequence {
        Sequence { entries: Vec::new() }
    }

    pub fn singleton(e: usize) -> Sequence {
        Sequence { entries: vec![(e as u16, 1)] }
    }

    pub fn from_elems(elems: &[usize]) -> Sequence {
        let mut s = Sequence::empty();
        for &e in elems {
            s.push(e);
        }
        s
    }

    /// Total length, counting multiplicities.
    pub fn len(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u16, u16)] {
        &self.entries
    }

    pub fn support(&self) -> ElemSet {
        self.entries.iter().map(|&(e, _)| e as usize).collect()
    }

    pub fn mult_of(&self, e: usize) -> usize {
        match self.entries.binary_search_by_key(&(e as u16), |&(x, _)| x) {
            Ok(i) => self.entries[i].1 as usize,
            Err(_) => 0,
        }
    }

    /// Iterates elements with multiplicity, ascending.
    pub fn iter_elems(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .flat_map(|&(e, m)| std::iter::repeat_n(e as usize, m as usize))
    }

    /// Adds one copy of `e` in place.
    pub fn push(&mut self, e: usize) {
        match self.entries.binary_search_by_key(&(e as u16), |&(x, _)| x) {
            Ok(i) => self.entries[i].1 += 1,
            Err(i) => self.entries.insert(i, (e as u16, 1)),
        }
    }

    /// A copy with one extra `e`.
    pub fn with(&self, e: usize) -> Sequence {
        let mut s = self.clone();
        s.push(e);
        s
    }

    /// A copy with one `e` removed.  Panics if `e` is absent.
    pub fn without(&self, e: usize) -> Sequence {
        let mut s = self.clone();
        match s.entries.binary_search_by_key(&(e as u16), |&(x, _)| x) {
            Ok(i) => {
                if s.entries[i].1 == 1 {
                    s.entries.remove(i);
                } else {
                    s.entries[i].1 -= 1;
                }
            }
            Err(_) => panic!("element {e} not in sequence"),
        }
        s
    }

    /// Image under a permutation of the element indices.
    pub fn apply_perm(&self, perm: &[u16]) -> Sequence {
        let mut entries: Vec<(u16, u16)> =
            self.entries.iter().map(|&(e, m)| (perm[e as usize], m)).collect();
        entries.sort_unstable();
        Sequence { entries }
    }
}

impl fmt::Display for Sequence {
    /// Text form `elem^mult,elem^mult` in ascending element order, e.g.
    /// `3^2,5^1`.  The empty sequence renders as an empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(e, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}^{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(text: &str) -> Result<Sequence, Error> {
        let bad = |msg: String| Error::MalformedSequence(text.to_string(), msg);
        let mut s = Sequence::empty();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (elem_text, mult_text) = match part.split_once('^') {
                Some((e, m)) => (e, m),
                None => (part, "1"),
            };
            let e: usize = elem_text
                .trim()
                .parse()
                .map_err(|_| bad(format!("invalid element `{elem_text}`")))?;
            let m: usize = mult_text
                .trim()
                .parse()
                .map_err(|_| bad(format!("invalid multiplicity `{mult_text}`")))?;
            if e >= crate::MAX_ORDER {
                return Err(bad(format!("element {e} out of range")));
            }
            if m == 0 || m > u16::MAX as usize {
                return Err(bad(format!("multiplicity {m} out of range")));
            }
            for _ in 0..m {
                s.push(e);
            }
        }
        Ok(s)
    }
}

// ---------------------------------------------------------------------------
// Search state keys.

/// Multiset-plus-product state key for the memoized ordering searches.
/// Small states pack into a u128 (6 bits per entry slot); larger supports
/// fall back to the explicit count vector.
#[derive(Clone, PartialEq, Eq, Hash)]
enum StateKey {
    Packed(u128),
    Counts(Vec<u16>, u16),
}

fn state_key(counts: &[u16], prod: usize, packable: bool) -> StateKey {
    if packable {
        let mut k: u128 = prod as u128;
        for (i, &c) in counts.iter().enumerate() {
            k |= (c as u128) << (16 + 6 * i);
        }
        StateKey::Packed(k)
    } else {
        StateKey::Counts(counts.to_vec(), prod as u16)
    }
}

fn packable(entries: &[(u16, u16)]) -> bool {
    entries.len() <= 18 && entries.iter().all(|&(_, m)| m < 64)
}

// ---------------------------------------------------------------------------
// Predicates.

/// Whether some ordering of `s` multiplies to the identity.
pub fn is_product_one(g: &Group, s: &Sequence) -> bool {
    if s.is_empty() {
        return true;
    }
    if g.is_abelian() {
        return s.iter_elems().fold(0, |acc, e| g.mul(acc, e)) == 0;
    }
    let elems: Vec<usize> = s.entries.iter().map(|&(e, _)| e as usize).collect();
    let mut counts: Vec<u16> = s.entries.iter().map(|&(_, m)| m).collect();
    let pack = packable(&s.entries);
    let mut visited = FxHashSet::default();
    exhaust_to_identity(g, &elems, &mut counts, 0, pack, &mut visited)
}

fn exhaust_to_identity(
    g: &Group,
    elems: &[usize],
    counts: &mut [u16],
    prod: usize,
    pack: bool,
    visited: &mut FxHashSet<StateKey>,
) -> bool {
    if counts.iter().all(|&c| c == 0) {
        return prod == 0;
    }
    if !visited.insert(state_key(counts, prod, pack)) {
        return false;
    }
    for i in 0..elems.len() {
        if counts[i] == 0 {
            continue;
        }
        counts[i] -= 1;
        let hit = exhaust_to_identity(g, elems, counts, g.mul(prod, elems[i]), pack, visited);
        counts[i] += 1;
        if hit {
            return true;
        }
    }
    false
}

/// Whether no nonempty sub-multiset of `s` is product-one.
pub fn is_product_one_free(g: &Group, s: &Sequence) -> bool {
    if s.is_empty() {
        return true;
    }
    if s.support().contains(0) {
        return false;
    }
    if g.is_abelian() {
        let mut visited = FxHashSet::default();
        return !abelian_zero_subsum(g, &s.entries, 0, 0, false, false, &mut visited, false);
    }
    let elems: Vec<usize> = s.entries.iter().map(|&(e, _)| e as usize).collect();
    let mut counts: Vec<u16> = s.entries.iter().map(|&(_, m)| m).collect();
    let pack = packable(&s.entries);
    let mut visited = FxHashSet::default();
    !reaches_identity(g, &elems, &mut counts, 0, pack, &mut visited)
}

/// DFS over (remaining, prefix product): true if any pick path returns the
/// product to the identity after at least one pick.
fn reaches_identity(
    g: &Group,
    elems: &[usize],
    counts: &mut [u16],
    prod: usize,
    pack: bool,
    visited: &mut FxHashSet<StateKey>,
) -> bool {
    if !visited.insert(state_key(counts, prod, pack)) {
        return false;
    }
    for i in 0..elems.len() {
        if counts[i] == 0 {
            continue;
        }
        let p = g.mul(prod, elems[i]);
        if p == 0 {
            return true;
        }
        counts[i] -= 1;
        let hit = reaches_identity(g, elems, counts, p, pack, visited);
        counts[i] += 1;
        if hit {
            return true;
        }
    }
    false
}

/// Abelian helper: does a sub-multiset with the given properness
/// constraints sum to the identity?  `proper` additionally requires at
/// least one element left out.
#[allow(clippy::too_many_arguments)]
fn abelian_zero_subsum(
    g: &Group,
    entries: &[(u16, u16)],
    i: usize,
    sum: usize,
    chosen: bool,
    skipped: bool,
    visited: &mut FxHashSet<(usize, u16, bool, bool)>,
    proper: bool,
) -> bool {
    if i == entries.len() {
        return chosen && (!proper || skipped) && sum == 0;
    }
    if !visited.insert((i, sum as u16, chosen, skipped)) {
        return false;
    }
    let (e, m) = entries[i];
    let mut s = sum;
    for t in 0..=m {
        let ch = chosen || t > 0;
        let sk = skipped || t < m;
        if abelian_zero_subsum(g, entries, i + 1, s, ch, sk, visited, proper) {
            return true;
        }
        if t < m {
            s = g.mul(s, e as usize);
        }
    }
    false
}

/// Whether `s` is an atom: product-one, and not the concatenation of two
/// nonempty product-one sequences.
pub fn is_atom(g: &Group, s: &Sequence) -> bool {
    match s.len() {
        0 => return false,
        1 => return s.entries[0].0 == 0,
        _ => {}
    }
    if g.is_abelian() {
        if s.iter_elems().fold(0, |acc, e| g.mul(acc, e)) != 0 {
            return false;
        }
        let mut visited = FxHashSet::default();
        return !abelian_zero_subsum(g, &s.entries, 0, 0, false, false, &mut visited, true);
    }
    if !is_product_one(g, s) {
        return false;
    }
    // Search for a proper nonempty split with both halves product-one.  The
    // product-one subqueries share one memo over (multiset, product) states.
    let elems: Vec<usize> = s.entries.iter().map(|&(e, _)| e as usize).collect();
    let full: Vec<u16> = s.entries.iter().map(|&(_, m)| m).collect();
    let pack = packable(&s.entries);
    let mut memo = ProductOneMemo::default();
    let mut part = vec![0u16; full.len()];
    !has_product_one_split(g, &elems, &full, &mut part, 0, pack, &mut memo)
}

/// Memoized `can this multiset be ordered to multiply to the identity`.
#[derive(Default)]
struct ProductOneMemo {
    table: rustc_hash::FxHashMap<StateKey, bool>,
}

impl ProductOneMemo {
    fn product_one(
        &mut self,
        g: &Group,
        elems: &[usize],
        counts: &mut [u16],
        prod: usize,
        pack: bool,
    ) -> bool {
        if counts.iter().all(|&c| c == 0) {
            return prod == 0;
        }
        let key = state_key(counts, prod, pack);
        if let Some(&v) = self.table.get(&key) {
            return v;
        }
        let mut hit = false;
        for i in 0..elems.len() {
            if counts[i] == 0 {
                continue;
            }
            counts[i] -= 1;
            hit = self.product_one(g, elems, counts, g.mul(prod, elems[i]), pack);
            counts[i] += 1;
            if hit {
                break;
            }
        }
        self.table.insert(key, hit);
        hit
    }
}

fn has_product_one_split(
    g: &Group,
    elems: &[usize],
    full: &[u16],
    part: &mut Vec<u16>,
    i: usize,
    pack: bool,
    memo: &mut ProductOneMemo,
) -> bool {
    if i == part.len() {
        let taken: u32 = part.iter().map(|&c| c as u32).sum();
        let total: u32 = full.iter().map(|&c| c as u32).sum();
        if taken == 0 || taken == total {
            return false;
        }
        let mut t: Vec<u16> = part.clone();
        if !memo.product_one(g, elems, &mut t, 0, pack) {
            return false;
        }
        let mut rest: Vec<u16> = full.iter().zip(part.iter()).map(|(&f, &p)| f - p).collect();
        return memo.product_one(g, elems, &mut rest, 0, pack);
    }
    for t in 0..=full[i] {
        part[i] = t;
        if has_product_one_split(g, elems, full, part, i + 1, pack, memo) {
            return true;
        }
    }
    part[i] = 0;
    false
}

/// All one-step refinements of `s`: replace one copy of an element `h` of
/// the support by a pair `x, x^-1 h` with `x` neither the identity nor `h`.
/// Deduplicated; ascending order.
pub fn splittings(g: &Group, s: &Sequence) -> Vec<Sequence> {
    let n = g.order();
    let mut out = std::collections::BTreeSet::new();
    for h in s.support().iter() {
        let reduced = s.without(h);
        for x in 1..n {
            if x == h {
                continue;
            }
            let y = g.mul(g.inv(x), h);
            out.insert(reduced.with(x).with(y));
        }
    }
    out.into_iter().collect()
}

/// The lexicographically least sequence in the orbit of `s` under `aut`.
pub fn canonical_rep(aut: &Automorphisms, s: &Sequence) -> Sequence {
    let mut best: Option<Vec<(u16, u16)>> = None;
    let mut cur: Vec<(u16, u16)> = Vec::with_capacity(s.entries.len());
    for perm in aut.iter() {
        cur.clear();
        cur.extend(s.entries.iter().map(|&(e, m)| (perm[e as usize], m)));
        cur.sort_unstable();
        match &best {
            Some(b) if cur >= *b => {}
            _ => best = Some(cur.clone()),
        }
    }
    Sequence { entries: best.unwrap_or_default() }
}
