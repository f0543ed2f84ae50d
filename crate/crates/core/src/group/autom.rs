//! Automorphism group enumeration.
//!
//! Orbit pruning throughout the crate works under the full automorphism
//! group, so enumeration has to be exact.  A small generating tuple is
//! chosen greedily; candidate images (matched by element order) are then
//! extended through multiplicative closure, with conflicts pruning the
//! backtracking early.  The search is exponential in principle, which is why
//! it is gated behind an order cap.

use crate::{Error, Group, DEFAULT_AUT_CAP};

/// The automorphism group of a [`Group`], as explicit permutations of the
/// element indices.
///
/// Always contains the identity permutation, every permutation fixes
/// index 0, and the list is sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphisms {
    perms: Vec<Vec<u16>>,
}

impl Automorphisms {
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perms(&self) -> &[Vec<u16>] {
        &self.perms
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u16]> {
        self.perms.iter().map(|p| p.as_slice())
    }

    /// The trivial automorphism group (identity only) of an order-n group.
    pub fn identity_only(n: usize) -> Automorphisms {
        Automorphisms { perms: vec![(0..n as u16).collect()] }
    }
}

/// Enumerates all automorphisms, refusing groups larger than the default cap.
pub fn automorphisms(g: &Group) -> Result<Automorphisms, Error> {
    automorphisms_with_cap(g, DEFAULT_AUT_CAP)
}

/// Enumerates all automorphisms of a group of order at most `cap`.
pub fn automorphisms_with_cap(g: &Group, cap: usize) -> Result<Automorphisms, Error> {
    let n = g.order();
    if n > cap {
        return Err(Error::AutomorphismCapExceeded { order: n, cap });
    }

    // Greedy generating tuple: repeatedly adjoin the smallest element
    // outside the current closure.
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = crate::ElemSet::singleton(0);
    while closure.len() < n {
        let e = (0..n).find(|&e| !closure.contains(e)).unwrap();
        gens.push(e);
        let mut with_e = closure;
        with_e.insert(e);
        closure = g.subgroup_closure(&with_e);
    }

    let mut perms: Vec<Vec<u16>> = Vec::new();
    let mut map: Vec<Option<u16>> = vec![None; n];
    map[0] = Some(0);
    let mut known: Vec<u16> = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    assign(g, &gens, 0, &mut map, &mut known, &mut used, &mut perms);
    perms.sort();
    debug_assert!(perms.windows(2).all(|w| w[0] != w[1]));
    Ok(Automorphisms { perms })
}

fn assign(
    g: &Group,
    gens: &[usize],
    idx: usize,
    map: &mut Vec<Option<u16>>,
    known: &mut Vec<u16>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<u16>>,
) {
    let n = g.order();
    if idx == gens.len() {
        // Generators generate, so propagation has made the map total.
        debug_assert!(map.iter().all(|m| m.is_some()));
        let perm: Vec<u16> = map.iter().map(|m| m.unwrap()).collect();
        for a in 0..n {
            for b in 0..n {
                if perm[g.mul(a, b)] != g.mul(perm[a] as usize, perm[b] as usize) as u16 {
                    return;
                }
            }
        }
        out.push(perm);
        return;
    }
    let gen = gens[idx];
    if map[gen].is_some() {
        // Already forced by earlier propagation.
        assign(g, gens, idx + 1, map, known, used, out);
        return;
    }
    let ord = g.elem_order(gen);
    for img in 0..n {
        if used[img] || g.elem_order(img) != ord {
            continue;
        }
        let mut map2 = map.clone();
        let mut known2 = known.clone();
        let mut used2 = used.clone();
        map2[gen] = Some(img as u16);
        known2.push(gen as u16);
        used2[img] = true;
        if propagate(g, &mut map2, &mut known2, &mut used2) {
            assign(g, gens, idx + 1, &mut map2, &mut known2, &mut used2, out);
        }
    }
}

/// Forces `map` closed under products of already-mapped elements.
/// Returns false on any conflict (non-homomorphic or non-injective).
fn propagate(g: &Group, map: &mut [Option<u16>], known: &mut Vec<u16>, used: &mut [bool]) -> bool {
    let mut head = 0;
    while head < known.len() {
        let a = known[head] as usize;
        head += 1;
        let mut i = 0;
        while i < known.len() {
            let b = known[i] as usize;
            i += 1;
            for (c, ic) in [
                (g.mul(a, b), g.mul(map[a].unwrap() as usize, map[b].unwrap() as usize)),
                (g.mul(b, a), g.mul(map[b].unwrap() as usize, map[a].unwrap() as usize)),
            ] {
                match map[c] {
                    Some(x) => {
                        if x as usize != ic {
                            return false;
                        }
                    }
                    None => {
                        if used[ic] {
                            return false;
                        }
                        map[c] = Some(ic as u16);
                        used[ic] = true;
                        known.push(c as u16);
                    }
                }
            }
        }
    }
    true
}
