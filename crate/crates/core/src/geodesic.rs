//! Directed geodesic atoms and everything built on them: the level-wise
//! search, the geodesic Davenport constant, the generating-support lower
//! bound for the directed Cayley diameter, and the support-index routes to
//! diameter and generation tests.
//!
//! A product-one sequence `S` is a directed geodesic atom when some
//! `g` in its support makes the word length of `g`'s inverse, over the
//! support of `S` with one copy of `g` removed, exactly `|S| - 1`: the
//! remaining entries, in a suitable order, are a shortest word for that
//! inverse.  Geodesic atoms of length `k + 1` all arise by splitting
//! geodesic atoms of length `k`, and a candidate fails to be geodesic
//! exactly when every element of its support is already witnessed by a
//! strictly shorter geodesic atom with a nested reduced support.  That
//! predicate, [`ng`], only reads closed levels, which keeps the search
//! deterministic under any parallel schedule.

use crate::cayley::word_lengths;
use crate::levels::{close_level, Level, LevelKind, LevelSets, SearchOptions};
use crate::sequence::{is_product_one, splittings};
use crate::{error, Automorphisms, ElemSet, Error, Group, Sequence};

/// Support of `s` with one copy of `g` removed: `g` stays in the set
/// exactly when it occurs more than once.
fn reduced_support(s: &Sequence, g: usize) -> ElemSet {
    let mut mask = s.support();
    if s.mult_of(g) == 1 {
        mask.remove(g);
    }
    mask
}

/// Whether `s` is a directed geodesic atom.  `s` must be product-one.
pub fn is_directed_geodesic_atom(g: &Group, s: &Sequence) -> Result<bool, Error> {
    if s.is_empty() || !is_product_one(g, s) {
        return Err(Error::NotProductOne);
    }
    let target_len = s.len() - 1;
    for e in s.support().iter() {
        let mask = reduced_support(s, e);
        let dist = word_lengths(g, &mask)[g.inv(e)];
        if dist == Some(target_len) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Per-element families of reduced supports of recorded geodesic atoms.
///
/// For each element `g` the index holds pairs `(|T|, supp(T · g^[-1]))`
/// over recorded geodesic atoms `T` with `g` in their support, kept as an
/// antichain: an entry is dropped when another entry has at most its
/// length and a subset of its support, since the smaller entry answers
/// every query the larger one could.
#[derive(Clone, Debug)]
pub struct GeoIndex {
    per_elem: Vec<Vec<(usize, ElemSet)>>,
}

impl GeoIndex {
    pub fn new(order: usize) -> GeoIndex {
        GeoIndex { per_elem: vec![Vec::new(); order] }
    }

    /// Records one support entry, maintaining the antichain.
    fn insert(&mut self, g: usize, len: usize, set: ElemSet) {
        let entries = &mut self.per_elem[g];
        if entries.iter().any(|&(l, s)| l <= len && s.is_subset(&set)) {
            return;
        }
        entries.retain(|&(l, s)| !(len <= l && set.is_subset(&s)));
        let at = entries.partition_point(|&(l, _)| l < len);
        entries.insert(at, (len, set));
    }

    /// Records every support entry of one geodesic atom.
    pub fn record(&mut self, t: &Sequence) {
        for g in t.support().iter() {
            self.insert(g, t.len(), reduced_support(t, g));
        }
    }

    /// Records the whole orbit of a representative.
    fn record_orbit(&mut self, aut: &Automorphisms, rep: &Sequence) {
        for perm in aut.iter() {
            self.record(&rep.apply_perm(perm));
        }
    }

    /// Whether a recorded atom shorter than `limit` goes through `g` with
    /// reduced support inside `allowed`.
    fn has_shorter_witness(&self, g: usize, limit: usize, allowed: &ElemSet) -> bool {
        self.per_elem[g]
            .iter()
            .take_while(|&&(l, _)| l < limit)
            .any(|(_, s)| s.is_subset(allowed))
    }

    /// Least recorded atom length through `g` with reduced support inside
    /// `allowed`, if any.
    fn min_len_within(&self, g: usize, allowed: &ElemSet) -> Option<usize> {
        self.per_elem[g].iter().find(|(_, s)| s.is_subset(allowed)).map(|&(l, _)| l)
    }

    pub fn entry_count(&self) -> usize {
        self.per_elem.iter().map(Vec::len).sum()
    }
}

/// Whether every element of `s_prime`'s support is witnessed by a strictly
/// shorter recorded geodesic atom with a nested reduced support.  For a
/// product-one `s_prime`, with all shorter geodesic atoms recorded, this
/// holds exactly when `s_prime` is not a directed geodesic atom.
pub fn ng(s_prime: &Sequence, index: &GeoIndex) -> bool {
    let limit = s_prime.len();
    s_prime
        .support()
        .iter()
        .all(|g| index.has_shorter_witness(g, limit, &reduced_support(s_prime, g)))
}

/// Completed (or capped) geodesic-atom levels with their support index.
pub struct GeodesicLevels {
    sets: LevelSets,
    index: GeoIndex,
}

impl GeodesicLevels {
    pub fn level_sets(&self) -> &LevelSets {
        &self.sets
    }

    pub fn index(&self) -> &GeoIndex {
        &self.index
    }

    pub fn is_complete(&self) -> bool {
        self.sets.is_exhausted()
    }

    pub fn into_level_sets(self) -> LevelSets {
        self.sets
    }

    /// The largest geodesic-atom length.
    pub fn gd(&self) -> Result<usize, Error> {
        if !self.is_complete() {
            return Err(Error::Incomplete);
        }
        self.sets
            .max_nonempty_level()
            .ok_or_else(|| error::internal("geodesic levels lack the identity atom".to_string()))
    }

    /// One less than the largest geodesic-atom length achievable with a
    /// support that generates the whole group: the generating-support
    /// lower bound for the directed Cayley diameter.
    pub fn dcd_star(&self, g: &Group) -> Result<usize, Error> {
        let top = self.gd()?;
        for len in (1..=top).rev() {
            let found = self
                .sets
                .reps_at(len)
                .any(|rep| g.subgroup_closure(&rep.support()).len() == g.order());
            if found {
                return Ok(len - 1);
            }
        }
        Err(error::internal(
            "no geodesic atom has generating support, yet singletons generate cyclic subgroups"
                .to_string(),
        ))
    }
}

/// Level-wise enumeration of directed geodesic atoms.  Level one is the
/// identity atom; candidates for the next level are the splittings of the
/// current representatives, kept when no shorter recorded atom witnesses
/// them via [`ng`].  Pass a previous partial result to resume it; its
/// index is rebuilt from the stored representatives.
pub fn geodesic_levels(
    g: &Group,
    aut: &Automorphisms,
    opts: &SearchOptions,
    resume: Option<LevelSets>,
) -> Result<GeodesicLevels, Error> {
    let n = g.order();
    let mut sets = match resume {
        Some(sets) => {
            sets.expect_kind(LevelKind::GeodesicAtoms)?;
            sets
        }
        None => LevelSets::new(LevelKind::GeodesicAtoms),
    };
    let mut index = GeoIndex::new(n);
    for (_, level) in sets.levels() {
        for rep in level.reps() {
            index.record_orbit(aut, rep);
        }
    }
    if sets.is_exhausted() {
        return Ok(GeodesicLevels { sets, index });
    }

    let mut len = sets.last_closed_level().map_or(1, |k| k + 1);
    loop {
        if opts.stop_before(len) {
            return Ok(GeodesicLevels { sets, index });
        }
        let candidates: Vec<Sequence> = if len == 1 {
            vec![Sequence::singleton(0)]
        } else {
            sets.reps_at(len - 1).flat_map(|rep| splittings(g, rep)).collect()
        };
        let reps = close_level(aut, candidates, |s| !ng(s, &index));
        if reps.is_empty() {
            sets.set_exhausted(len);
            return Ok(GeodesicLevels { sets, index });
        }
        if len > n {
            return Err(error::internal(format!(
                "nonempty geodesic level at length {len} exceeds the group order {n}"
            )));
        }
        for rep in &reps {
            index.record_orbit(aut, rep);
        }
        sets.insert_level(len, Level::new(reps));
        len += 1;
    }
}

/// Directed Cayley diameter of `Cay(G, b)` read off the geodesic levels.
///
/// For each element `g`, the shortest recorded geodesic atom through `g`
/// whose reduced support lies inside `b` has length exactly one more than
/// the word length of `g`'s inverse over `b`: rotating a product-one
/// ordering of such an atom to end at `g` spells a word for the inverse,
/// and conversely a shortest word for the inverse, extended by `g`, is a
/// geodesic atom of that kind.  The diameter is the largest such word
/// length, so the maximum over `g` of (that minimal length minus one).
pub fn diameter_via_ga(g: &Group, b: &ElemSet, geo: &GeodesicLevels) -> Result<usize, Error> {
    if !geo.is_complete() {
        return Err(Error::Incomplete);
    }
    let closure = g.subgroup_closure(b);
    if closure.len() != g.order() {
        let missing = (0..g.order()).find(|&e| !closure.contains(e)).unwrap_or(0);
        return Err(Error::NotGenerated { elem: missing });
    }
    let mut diameter = 0;
    for elem in 0..g.order() {
        match geo.index().min_len_within(elem, b) {
            Some(len) => diameter = diameter.max(len - 1),
            None => {
                return Err(error::internal(format!(
                    "no geodesic witness for element {elem} although the set generates"
                )))
            }
        }
    }
    Ok(diameter)
}

/// Whether `b` generates the group, read off the geodesic levels: true
/// exactly when every element lies in the support of some recorded
/// geodesic atom whose remaining support sits inside `b`.
pub fn generates_via_ga(g: &Group, b: &ElemSet, geo: &GeodesicLevels) -> Result<bool, Error> {
    if !geo.is_complete() {
        return Err(Error::Incomplete);
    }
    Ok((0..g.order()).all(|elem| geo.index().min_len_within(elem, b).is_some()))
}
