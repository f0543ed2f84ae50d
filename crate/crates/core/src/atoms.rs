//! Level-wise enumeration of atoms and of product-one free sequences, and
//! the two Davenport-style constants read off from the completed levels.
//!
//! Atoms are closed under a one-step refinement: merging two adjacent
//! entries of a product-one ordering of an atom of length `k + 1` yields an
//! atom of length `k`, so every atom arises from a shorter one by the
//! splitting move in [`crate::sequence::splittings`].  Level `k + 1` is
//! therefore generated exactly from level `k`, starting at the single
//! length-one atom, the identity.  Likewise any sub-multiset of a
//! product-one free sequence is free, so free levels extend one element at
//! a time.  Both searches provably terminate: prefix products of a long
//! sequence repeat, forcing a product-one sub-multiset, so free lengths
//! stay below the group order and atom lengths never exceed it.

use crate::levels::{close_level, Level, LevelKind, LevelSets, SearchOptions};
use crate::sequence::{is_atom, is_product_one_free, splittings};
use crate::{error, Automorphisms, Error, Group, Sequence};

/// Enumerates atom levels until exhaustion or until `opts` stops the
/// search.  Pass a previous partial result as `resume` to continue it.
pub fn enumerate_atoms(
    g: &Group,
    aut: &Automorphisms,
    opts: &SearchOptions,
    resume: Option<LevelSets>,
) -> Result<LevelSets, Error> {
    run_search(g, aut, opts, resume, LevelKind::Atoms)
}

/// Enumerates product-one free levels until exhaustion or until `opts`
/// stops the search.
pub fn product_one_free_levels(
    g: &Group,
    aut: &Automorphisms,
    opts: &SearchOptions,
    resume: Option<LevelSets>,
) -> Result<LevelSets, Error> {
    run_search(g, aut, opts, resume, LevelKind::ProductOneFree)
}

fn run_search(
    g: &Group,
    aut: &Automorphisms,
    opts: &SearchOptions,
    resume: Option<LevelSets>,
    kind: LevelKind,
) -> Result<LevelSets, Error> {
    let mut sets = match resume {
        Some(sets) => {
            sets.expect_kind(kind)?;
            sets
        }
        None => LevelSets::new(kind),
    };
    if sets.is_exhausted() {
        return Ok(sets);
    }
    let n = g.order();
    // Nonempty levels cannot occur past these lengths; hitting one means
    // the predicate or the generator is broken.
    let hard_cap = match kind {
        LevelKind::Atoms => n,
        LevelKind::ProductOneFree => n.saturating_sub(1),
        LevelKind::GeodesicAtoms => unreachable!("geodesic levels are filtered, not searched"),
    };

    let mut len = sets.last_closed_level().map_or(1, |k| k + 1);
    loop {
        if opts.stop_before(len) {
            return Ok(sets);
        }
        let candidates: Vec<Sequence> = match (kind, len) {
            (LevelKind::Atoms, 1) => vec![Sequence::singleton(0)],
            (LevelKind::Atoms, _) => {
                sets.reps_at(len - 1).flat_map(|rep| splittings(g, rep)).collect()
            }
            (LevelKind::ProductOneFree, 1) => (1..n).map(Sequence::singleton).collect(),
            (LevelKind::ProductOneFree, _) => sets
                .reps_at(len - 1)
                .flat_map(|rep| (1..n).map(move |x| rep.with(x)))
                .collect(),
            (LevelKind::GeodesicAtoms, _) => unreachable!(),
        };
        let reps = match kind {
            LevelKind::Atoms => close_level(aut, candidates, |s| is_atom(g, s)),
            LevelKind::ProductOneFree => {
                close_level(aut, candidates, |s| is_product_one_free(g, s))
            }
            LevelKind::GeodesicAtoms => unreachable!(),
        };
        if reps.is_empty() {
            sets.set_exhausted(len);
            return Ok(sets);
        }
        if len > hard_cap {
            return Err(error::internal(format!(
                "nonempty {} level at length {len} exceeds the bound {hard_cap} for order {n}",
                kind.as_str()
            )));
        }
        sets.insert_level(len, Level::new(reps));
        len += 1;
    }
}

/// The largest atom length, read from exhausted atom levels.
pub fn large_davenport(sets: &LevelSets) -> Result<usize, Error> {
    sets.expect_kind(LevelKind::Atoms)?;
    if !sets.is_exhausted() {
        return Err(Error::Incomplete);
    }
    sets.max_nonempty_level()
        .ok_or_else(|| error::internal("exhausted atom levels lack the identity atom".to_string()))
}

/// The largest product-one free length, read from exhausted free levels.
/// Zero for the trivial group, which has no free sequences at all.
pub fn small_davenport(sets: &LevelSets) -> Result<usize, Error> {
    sets.expect_kind(LevelKind::ProductOneFree)?;
    if !sets.is_exhausted() {
        return Err(Error::Incomplete);
    }
    Ok(sets.max_nonempty_level().unwrap_or(0))
}
