//! Brute-force reference implementations, used only by tests.
//!
//! Everything here works straight from the definitions, enumerating all
//! multisets or all subsets with no orbit pruning and no level recursion,
//! so a disagreement with the main engine always indicts the engine.  The
//! guard rails are hard errors: these routines are exponential and must
//! never run at real scale.

use std::collections::BTreeSet;

use crate::cayley::{digraph_diameter, is_generating};
use crate::geodesic::is_directed_geodesic_atom;
use crate::sequence::{is_atom, is_product_one, is_product_one_free};
use crate::{ElemSet, Error, Group, Sequence};

const MAX_BRUTE_MULTISET_ORDER: usize = 12;
const MAX_BRUTE_MULTISET_LEN: usize = 12;
const MAX_BRUTE_SUBSET_ORDER: usize = 16;

fn guard(condition: bool, msg: String) -> Result<(), Error> {
    if condition {
        Ok(())
    } else {
        Err(Error::GuardRail(msg))
    }
}

fn multiset_guard(g: &Group, max_len: usize) -> Result<(), Error> {
    guard(
        g.order() <= MAX_BRUTE_MULTISET_ORDER,
        format!(
            "brute multiset enumeration limited to order {MAX_BRUTE_MULTISET_ORDER}, got {}",
            g.order()
        ),
    )?;
    guard(
        max_len <= MAX_BRUTE_MULTISET_LEN,
        format!(
            "brute multiset enumeration limited to length {MAX_BRUTE_MULTISET_LEN}, got {max_len}"
        ),
    )
}

fn subset_guard(g: &Group) -> Result<(), Error> {
    guard(
        g.order() <= MAX_BRUTE_SUBSET_ORDER,
        format!(
            "brute subset enumeration limited to order {MAX_BRUTE_SUBSET_ORDER}, got {}",
            g.order()
        ),
    )
}

/// Calls `f` on every nonempty multiset over `0..n` of size at most
/// `max_len`, each exactly once, as a non-decreasing element list.
fn for_each_multiset(n: usize, max_len: usize, f: &mut impl FnMut(&[usize])) {
    fn visit(n: usize, max_len: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if !cur.is_empty() {
            f(cur);
        }
        if cur.len() == max_len {
            return;
        }
        for e in start..n {
            cur.push(e);
            visit(n, max_len, e, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(max_len);
    visit(n, max_len, 0, &mut cur, f);
}

/// Every atom of length at most `max_len`, by definitional check over all
/// multisets.
pub fn brute_atoms(g: &Group, max_len: usize) -> Result<BTreeSet<Sequence>, Error> {
    multiset_guard(g, max_len)?;
    let mut out = BTreeSet::new();
    for_each_multiset(g.order(), max_len, &mut |elems| {
        let s = Sequence::from_elems(elems);
        if is_atom(g, &s) {
            out.insert(s);
        }
    });
    Ok(out)
}

/// Every directed geodesic atom of length at most `max_len`, by
/// definitional check over all multisets.
pub fn brute_geodesic_atoms(g: &Group, max_len: usize) -> Result<BTreeSet<Sequence>, Error> {
    multiset_guard(g, max_len)?;
    let mut out = BTreeSet::new();
    for_each_multiset(g.order(), max_len, &mut |elems| {
        let s = Sequence::from_elems(elems);
        if is_product_one(g, &s) && is_directed_geodesic_atom(g, &s).unwrap_or(false) {
            out.insert(s);
        }
    });
    Ok(out)
}

/// The largest product-one free length, by definitional check over all
/// multisets.  Free lengths never reach the group order, so the sweep over
/// lengths below it is exhaustive.
pub fn brute_small_davenport(g: &Group) -> Result<usize, Error> {
    let max_len = g.order().saturating_sub(1);
    multiset_guard(g, max_len)?;
    let mut best = 0;
    for_each_multiset(g.order(), max_len, &mut |elems| {
        if elems.len() > best {
            let s = Sequence::from_elems(elems);
            if is_product_one_free(g, &s) {
                best = elems.len();
            }
        }
    });
    Ok(best)
}

/// The exact directed Cayley diameter, as the maximum digraph diameter
/// over all generating subsets of the nonidentity elements.
pub fn brute_ddiam(g: &Group) -> Result<usize, Error> {
    subset_guard(g)?;
    let n = g.order();
    let mut best = 0;
    for mask in 0u32..(1u32 << (n - 1)) {
        let mut b = ElemSet::empty();
        for e in 1..n {
            if mask >> (e - 1) & 1 == 1 {
                b.insert(e);
            }
        }
        if is_generating(g, &b) {
            best = best.max(digraph_diameter(g, &b)?);
        }
    }
    Ok(best)
}

/// Every subgroup, as the deduplicated closures of all subsets of the
/// nonidentity elements.
pub fn brute_subgroups(g: &Group) -> Result<Vec<ElemSet>, Error> {
    subset_guard(g)?;
    let n = g.order();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1u32 << (n - 1)) {
        let mut x = ElemSet::empty();
        for e in 1..n {
            if mask >> (e - 1) & 1 == 1 {
                x.insert(e);
            }
        }
        out.insert(g.subgroup_closure(&x));
    }
    Ok(out.into_iter().collect())
}
