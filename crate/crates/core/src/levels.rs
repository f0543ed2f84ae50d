//! Length-graded sets of sequences, one level per length, with orbit
//! deduplication under a fixed automorphism group.
//!
//! The enumeration engines all work level by level: candidates for length
//! `k + 1` are produced from the stored representatives at length `k`,
//! canonicalized, filtered by the defining predicate, and the survivors
//! become the next level.  Each level stores one representative per orbit,
//! the lexicographically least sequence, so results are deterministic and
//! independent of thread count.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::sequence::canonical_rep;
use crate::{Automorphisms, Error, Sequence};

/// Which family of sequences a [`LevelSets`] holds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LevelKind {
    /// Atoms: minimal product-one sequences.
    Atoms,
    /// Atoms that are also directed geodesics.
    GeodesicAtoms,
    /// Product-one free sequences.
    ProductOneFree,
}

impl LevelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LevelKind::Atoms => "atoms",
            LevelKind::GeodesicAtoms => "geodesic",
            LevelKind::ProductOneFree => "free",
        }
    }
}

impl FromStr for LevelKind {
    type Err = Error;

    fn from_str(text: &str) -> Result<LevelKind, Error> {
        match text {
            "atoms" => Ok(LevelKind::Atoms),
            "geodesic" => Ok(LevelKind::GeodesicAtoms),
            "free" => Ok(LevelKind::ProductOneFree),
            other => Err(Error::MalformedSpec(
                other.to_string(),
                "expected one of `atoms`, `geodesic`, `free`".to_string(),
            )),
        }
    }
}

/// One level: the orbit representatives of a fixed length.
#[derive(Clone, Default, Debug)]
pub struct Level {
    reps: BTreeSet<Sequence>,
}

impl Level {
    pub fn new(reps: BTreeSet<Sequence>) -> Level {
        Level { reps }
    }

    pub fn reps(&self) -> impl Iterator<Item = &Sequence> {
        self.reps.iter()
    }

    pub fn rep_count(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn contains_rep(&self, s: &Sequence) -> bool {
        self.reps.contains(s)
    }

    /// The full orbit union of this level under `aut`.
    pub fn orbit(&self, aut: &Automorphisms) -> FxHashSet<Sequence> {
        let mut out = FxHashSet::default();
        for rep in &self.reps {
            for perm in aut.iter() {
                out.insert(rep.apply_perm(perm));
            }
        }
        out
    }

    /// Number of distinct sequences in the orbit union.
    pub fn orbit_count(&self, aut: &Automorphisms) -> usize {
        self.orbit(aut).len()
    }
}

/// Level-graded search results.  `exhausted_at` is the certified cutoff:
/// when set to `k`, every level of length `k` or more is empty, and all
/// levels below `k` are stored exactly (possibly as explicit empty levels).
/// While it is unset the results are a work in progress and the summary
/// statistics refuse to commit.
#[derive(Clone, Debug)]
pub struct LevelSets {
    kind: LevelKind,
    levels: BTreeMap<usize, Level>,
    exhausted_at: Option<usize>,
}

impl LevelSets {
    pub fn new(kind: LevelKind) -> LevelSets {
        LevelSets { kind, levels: BTreeMap::new(), exhausted_at: None }
    }

    /// Rebuilds search results from persisted parts, for resuming a capped
    /// run.  The shape must match what the searches produce: nonempty
    /// levels at lengths 1, 2, .. with no gaps, and an exhaustion cutoff,
    /// if present, immediately after the last stored level.  Callers keep
    /// representatives paired with the group they came from (the
    /// persistence layer does this by content fingerprint); nothing here
    /// can detect representatives from a different group.
    pub fn from_parts(
        kind: LevelKind,
        levels: impl IntoIterator<Item = (usize, BTreeSet<Sequence>)>,
        exhausted_at: Option<usize>,
    ) -> Result<LevelSets, Error> {
        let mut sets = LevelSets::new(kind);
        let mut expected = 1;
        for (len, reps) in levels {
            if len != expected {
                return Err(Error::MalformedLevels(format!(
                    "expected level {expected}, found level {len}"
                )));
            }
            if reps.is_empty() {
                return Err(Error::MalformedLevels(format!("level {len} has no representatives")));
            }
            sets.insert_level(len, Level::new(reps));
            expected += 1;
        }
        if let Some(at) = exhausted_at {
            if at != expected {
                return Err(Error::MalformedLevels(format!(
                    "exhaustion cutoff {at} does not follow the last level {}",
                    expected - 1
                )));
            }
            sets.set_exhausted(at);
        }
        Ok(sets)
    }

    pub fn kind(&self) -> LevelKind {
        self.kind
    }

    pub fn levels(&self) -> impl Iterator<Item = (usize, &Level)> {
        self.levels.iter().map(|(&len, level)| (len, level))
    }

    pub fn level(&self, len: usize) -> Option<&Level> {
        self.levels.get(&len)
    }

    /// Representatives at `len`, empty if the level is absent or empty.
    pub fn reps_at(&self, len: usize) -> impl Iterator<Item = &Sequence> {
        self.levels.get(&len).into_iter().flat_map(|level| level.reps())
    }

    pub fn last_closed_level(&self) -> Option<usize> {
        self.levels.keys().next_back().copied().max(self.exhausted_at.map(|k| k.saturating_sub(1)).filter(|&k| k > 0))
    }

    pub fn exhausted_at(&self) -> Option<usize> {
        self.exhausted_at
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted_at.is_some()
    }

    pub fn max_nonempty_level(&self) -> Option<usize> {
        self.levels.iter().rev().find(|(_, level)| !level.is_empty()).map(|(&len, _)| len)
    }

    pub fn total_rep_count(&self) -> usize {
        self.levels.values().map(Level::rep_count).sum()
    }

    /// Whether the orbit of `s` appears at its length's level.
    pub fn contains(&self, aut: &Automorphisms, s: &Sequence) -> bool {
        match self.levels.get(&s.len()) {
            Some(level) => level.contains_rep(&canonical_rep(aut, s)),
            None => false,
        }
    }

    pub(crate) fn insert_level(&mut self, len: usize, level: Level) {
        self.levels.insert(len, level);
    }

    pub(crate) fn set_exhausted(&mut self, at: usize) {
        self.exhausted_at = Some(at);
    }

    pub(crate) fn expect_kind(&self, kind: LevelKind) -> Result<(), Error> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::LevelKindMismatch { expected: kind.as_str(), found: self.kind.as_str() })
        }
    }
}

/// Limits for a level search.  With no limits the search runs until the
/// level sets are provably exhausted.
#[derive(Clone, Copy, Default, Debug)]
pub struct SearchOptions {
    pub max_len: Option<usize>,
    pub deadline: Option<Instant>,
}

impl SearchOptions {
    pub fn unlimited() -> SearchOptions {
        SearchOptions::default()
    }

    pub fn with_max_len(mut self, max_len: usize) -> SearchOptions {
        self.max_len = Some(max_len);
        self
    }

    pub fn with_deadline(mut self, deadline: Instant) -> SearchOptions {
        self.deadline = Some(deadline);
        self
    }

    pub(crate) fn stop_before(&self, len: usize) -> bool {
        if let Some(max) = self.max_len {
            if len > max {
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                return true;
            }
        }
        false
    }
}

/// Shared level pipeline: deduplicate raw candidates, canonicalize in
/// parallel, deduplicate the canonical forms, and keep those passing the
/// predicate.  The output depends only on the candidate set and the
/// predicate, never on scheduling.
pub(crate) fn close_level<F>(
    aut: &Automorphisms,
    candidates: Vec<Sequence>,
    keep: F,
) -> BTreeSet<Sequence>
where
    F: Fn(&Sequence) -> bool + Sync,
{
    let distinct: FxHashSet<Sequence> = candidates.into_iter().collect();
    let raw: Vec<Sequence> = distinct.into_iter().collect();
    let canonical: FxHashSet<Sequence> =
        raw.par_iter().map(|s| canonical_rep(aut, s)).collect();
    let unique: Vec<Sequence> = canonical.into_iter().collect();
    unique.into_par_iter().filter(|s| keep(s)).collect::<Vec<_>>().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{automorphisms, Group};

    #[test]
    fn kind_round_trip() {
        for kind in [LevelKind::Atoms, LevelKind::GeodesicAtoms, LevelKind::ProductOneFree] {
            assert_eq!(kind.as_str().parse::<LevelKind>().unwrap(), kind);
        }
        assert!("nonsense".parse::<LevelKind>().is_err());
    }

    #[test]
    fn bookkeeping() {
        let mut sets = LevelSets::new(LevelKind::Atoms);
        assert_eq!(sets.kind(), LevelKind::Atoms);
        assert!(!sets.is_exhausted());
        assert_eq!(sets.last_closed_level(), None);
        assert_eq!(sets.max_nonempty_level(), None);

        let mut reps = BTreeSet::new();
        reps.insert(Sequence::singleton(0));
        sets.insert_level(1, Level::new(reps));
        sets.insert_level(2, Level::default());
        assert_eq!(sets.last_closed_level(), Some(2));
        assert_eq!(sets.max_nonempty_level(), Some(1));
        assert_eq!(sets.total_rep_count(), 1);

        sets.set_exhausted(3);
        assert!(sets.is_exhausted());
        assert_eq!(sets.exhausted_at(), Some(3));

        assert!(sets.expect_kind(LevelKind::Atoms).is_ok());
        assert!(matches!(
            sets.expect_kind(LevelKind::ProductOneFree),
            Err(Error::LevelKindMismatch { .. })
        ));
    }

    #[test]
    fn from_parts_validates_shape() {
        let one = |e: usize| {
            let mut set = BTreeSet::new();
            set.insert(Sequence::singleton(e));
            set
        };
        let sets = LevelSets::from_parts(LevelKind::Atoms, vec![(1, one(0))], Some(2)).unwrap();
        assert!(sets.is_exhausted());
        assert_eq!(sets.max_nonempty_level(), Some(1));

        // Degenerate but legal: nothing stored, certified empty from length 1.
        let empty = LevelSets::from_parts(LevelKind::ProductOneFree, vec![], Some(1)).unwrap();
        assert!(empty.is_exhausted());
        assert_eq!(empty.max_nonempty_level(), None);

        for bad in [
            LevelSets::from_parts(LevelKind::Atoms, vec![(2, one(0))], None),
            LevelSets::from_parts(LevelKind::Atoms, vec![(1, BTreeSet::new())], None),
            LevelSets::from_parts(LevelKind::Atoms, vec![(1, one(0))], Some(3)),
        ] {
            assert!(matches!(bad, Err(Error::MalformedLevels(_))));
        }
    }

    #[test]
    fn orbit_expansion_counts() {
        let g = Group::from_spec("cyclic:3").unwrap();
        let aut = automorphisms(&g).unwrap();
        let mut reps = BTreeSet::new();
        reps.insert(Sequence::from_elems(&[1, 1, 1]));
        let level = Level::new(reps);
        // Inversion sends 1^3 to 2^3: one rep, two sequences in the orbit.
        assert_eq!(level.orbit_count(&aut), 2);
    }

    #[test]
    fn contains_uses_canonical_form() {
        let g = Group::from_spec("cyclic:3").unwrap();
        let aut = automorphisms(&g).unwrap();
        let mut sets = LevelSets::new(LevelKind::Atoms);
        let mut reps = BTreeSet::new();
        reps.insert(Sequence::from_elems(&[1, 1, 1]));
        sets.insert_level(3, Level::new(reps));
        assert!(sets.contains(&aut, &Sequence::from_elems(&[2, 2, 2])));
        assert!(sets.contains(&aut, &Sequence::from_elems(&[1, 1, 1])));
        assert!(!sets.contains(&aut, &Sequence::from_elems(&[1, 2, 0])));
    }

    #[test]
    fn close_level_dedups_and_filters() {
        let g = Group::from_spec("cyclic:3").unwrap();
        let aut = automorphisms(&g).unwrap();
        let candidates = vec![
            Sequence::from_elems(&[1, 1, 1]),
            Sequence::from_elems(&[2, 2, 2]),
            Sequence::from_elems(&[1, 1, 2]),
        ];
        let kept = close_level(&aut, candidates, |s| crate::sequence::is_atom(&g, s));
        // Both triples canonicalize to 1^3; the mixed one is not an atom.
        assert_eq!(kept.len(), 1);
        assert!(kept.contains(&Sequence::from_elems(&[1, 1, 1])));
    }
}
