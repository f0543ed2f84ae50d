//! Directed Cayley graphs: word lengths, diameters, and the maximum
//! diameter over irredundant generating sets.
//!
//! For a generating set `B` the directed Cayley graph has an arc `x -> xb`
//! for each `b` in `B`.  Distances from the identity are word lengths: the
//! distance to `g` is the least `m` with `g` a product of `m` elements of
//! `B` (zero for the identity).  Left-invariance makes the digraph diameter
//! equal to the largest such word length, so one breadth-first sweep from
//! the identity suffices.

use rayon::prelude::*;
use std::collections::{BTreeSet, VecDeque};

use crate::{Automorphisms, ElemSet, Error, Group};

/// Whether `gens` generates the whole group.
pub fn is_generating(g: &Group, gens: &ElemSet) -> bool {
    g.subgroup_closure(gens).len() == g.order()
}

/// Word length of every element over `gens`, by breadth-first search from
/// the identity.  `None` marks elements outside the generated subgroup.
pub fn word_lengths(g: &Group, gens: &ElemSet) -> Vec<Option<usize>> {
    let n = g.order();
    let mut dist = vec![None; n];
    dist[0] = Some(0);
    let mut queue = VecDeque::new();
    queue.push_back(0usize);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for b in gens.iter() {
            let y = g.mul(x, b);
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Word length of `target` over `gens`.
pub fn word_length(g: &Group, gens: &ElemSet, target: usize) -> Result<usize, Error> {
    word_lengths(g, gens)[target].ok_or(Error::NotGenerated { elem: target })
}

/// Diameter of the directed Cayley graph on `gens`, which must generate.
pub fn digraph_diameter(g: &Group, gens: &ElemSet) -> Result<usize, Error> {
    let dist = word_lengths(g, gens);
    let mut max = 0;
    for (elem, d) in dist.iter().enumerate() {
        match d {
            Some(d) => max = max.max(*d),
            None => return Err(Error::NotGenerated { elem }),
        }
    }
    Ok(max)
}

fn canon_set(aut: &Automorphisms, set: &ElemSet) -> Vec<u16> {
    let mut best: Option<Vec<u16>> = None;
    let mut cur: Vec<u16> = Vec::with_capacity(set.len());
    for perm in aut.iter() {
        cur.clear();
        cur.extend(set.iter().map(|e| perm[e]));
        cur.sort_unstable();
        match &best {
            Some(b) if cur >= *b => {}
            _ => best = Some(cur.clone()),
        }
    }
    best.unwrap_or_default()
}

fn is_irredundant(g: &Group, set: &ElemSet) -> bool {
    let n = g.order();
    for b in set.iter() {
        let mut rest = *set;
        rest.remove(b);
        if g.subgroup_closure(&rest).len() == n {
            return false;
        }
    }
    true
}

/// One representative per `aut`-orbit of irredundant generating sets: sets
/// that generate the group while no proper subset does.
///
/// The search adds elements in ascending order, always from outside the
/// subgroup generated so far.  Every irredundant generating set arises this
/// way: listing its elements ascending, each one lies outside the subgroup
/// generated by the earlier ones, else dropping it would not lose
/// generation.  Sets built this way can still be redundant (an early
/// element may become expressible after later additions), so each complete
/// set is checked before being kept.
pub fn irredundant_generating_sets(g: &Group, aut: &Automorphisms) -> Vec<ElemSet> {
    let mut canon_forms: BTreeSet<Vec<u16>> = BTreeSet::new();

    fn extend(
        g: &Group,
        aut: &Automorphisms,
        set: ElemSet,
        closure: ElemSet,
        start: usize,
        canon_forms: &mut BTreeSet<Vec<u16>>,
    ) {
        if closure.len() == g.order() {
            if is_irredundant(g, &set) {
                canon_forms.insert(canon_set(aut, &set));
            }
            return;
        }
        for b in start..g.order() {
            if closure.contains(b) {
                continue;
            }
            let mut next = set;
            next.insert(b);
            let next_closure = g.subgroup_closure(&next);
            extend(g, aut, next, next_closure, b + 1, canon_forms);
        }
    }

    let empty = ElemSet::empty();
    let identity_closure = g.subgroup_closure(&empty);
    debug_assert_eq!(identity_closure.len(), 1);
    extend(g, aut, empty, identity_closure, 1, &mut canon_forms);

    canon_forms.into_iter().map(|form| form.iter().map(|&e| e as usize).collect()).collect()
}

/// Largest directed Cayley diameter over all irredundant generating sets.
///
/// The diameter is constant on `aut`-orbits (an automorphism of the group
/// is an isomorphism of the corresponding Cayley digraphs), so only orbit
/// representatives are swept, in parallel.
pub fn directed_cayley_diameter(g: &Group, aut: &Automorphisms) -> Result<usize, Error> {
    let reps = irredundant_generating_sets(g, aut);
    let diams = reps
        .par_iter()
        .map(|set| digraph_diameter(g, set))
        .collect::<Result<Vec<usize>, Error>>()?;
    Ok(diams.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms;

    fn set(elems: &[usize]) -> ElemSet {
        elems.iter().copied().collect()
    }

    #[test]
    fn word_lengths_cyclic() {
        let g = Group::from_spec("cyclic:6").unwrap();
        assert_eq!(word_length(&g, &set(&[1]), 0).unwrap(), 0);
        assert_eq!(word_length(&g, &set(&[1]), 5).unwrap(), 5);
        assert_eq!(digraph_diameter(&g, &set(&[1])).unwrap(), 5);
        // Adding the inverse shortens the far side but the digraph is still
        // directed: 3 needs three steps (2+2+3+... the best is 1+1+1 or
        // 5+5+5 at length 3).
        assert_eq!(digraph_diameter(&g, &set(&[1, 5])).unwrap(), 3);
    }

    #[test]
    fn unreachable_targets_error() {
        let g = Group::from_spec("cyclic:4").unwrap();
        assert_eq!(
            word_length(&g, &set(&[2]), 1).unwrap_err(),
            Error::NotGenerated { elem: 1 }
        );
        assert!(matches!(
            digraph_diameter(&g, &set(&[2])),
            Err(Error::NotGenerated { .. })
        ));
        assert!(!is_generating(&g, &set(&[2])));
        assert!(is_generating(&g, &set(&[3])));
    }

    #[test]
    fn all_nonidentity_generators_give_diameter_one() {
        let g = Group::from_spec("cyclic:5").unwrap();
        let gens = set(&[1, 2, 3, 4]);
        assert_eq!(digraph_diameter(&g, &gens).unwrap(), 1);
    }

    #[test]
    fn irredundant_sets_small_groups() {
        // One orbit of singletons for a prime cycle.
        let g = Group::from_spec("cyclic:5").unwrap();
        let aut = automorphisms(&g).unwrap();
        let reps = irredundant_generating_sets(&g, &aut);
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].len(), 1);

        // Klein four group: only pairs of distinct involutions.
        let g = Group::from_spec("abelian:2,2").unwrap();
        let aut = automorphisms(&g).unwrap();
        let reps = irredundant_generating_sets(&g, &aut);
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].len(), 2);

        // Order six cycle: a generator singleton, and a pair built from the
        // elements of orders two and three.
        let g = Group::from_spec("cyclic:6").unwrap();
        let aut = automorphisms(&g).unwrap();
        let reps = irredundant_generating_sets(&g, &aut);
        let mut sizes: Vec<usize> = reps.iter().map(|r| r.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);

        // Symmetric group on three letters: a transposition with a three
        // cycle, or two distinct transpositions.
        let g = Group::from_spec("symmetric:3").unwrap();
        let aut = automorphisms(&g).unwrap();
        let reps = irredundant_generating_sets(&g, &aut);
        assert_eq!(reps.len(), 2);
        for rep in &reps {
            assert_eq!(rep.len(), 2);
        }
    }

    #[test]
    fn reps_generate_and_are_irredundant_and_canonical() {
        for spec in ["cyclic:8", "dihedral:8", "quaternion:8", "abelian:2,4"] {
            let g = Group::from_spec(spec).unwrap();
            let aut = automorphisms(&g).unwrap();
            for rep in irredundant_generating_sets(&g, &aut) {
                assert!(is_generating(&g, &rep), "{spec}: {rep} must generate");
                assert!(is_irredundant(&g, &rep), "{spec}: {rep} must be irredundant");
                let form: Vec<u16> = rep.iter().map(|e| e as u16).collect();
                assert_eq!(canon_set(&aut, &rep), form, "{spec}: {rep} not canonical");
            }
        }
    }

    #[test]
    fn trivial_group_diameter_zero() {
        let g = Group::from_spec("cyclic:1").unwrap();
        let aut = automorphisms(&g).unwrap();
        let reps = irredundant_generating_sets(&g, &aut);
        assert_eq!(reps, vec![ElemSet::empty()]);
        assert_eq!(directed_cayley_diameter(&g, &aut).unwrap(), 0);
    }

    #[test]
    fn directed_diameters_small_groups() {
        for (spec, want) in [
            ("cyclic:2", 1),
            ("cyclic:4", 3),
            ("abelian:2,2", 2),
            ("cyclic:6", 5),
            ("symmetric:3", 3),
            ("quaternion:8", 3),
        ] {
            let g = Group::from_spec(spec).unwrap();
            let aut = automorphisms(&g).unwrap();
            assert_eq!(directed_cayley_diameter(&g, &aut).unwrap(), want, "{spec}");
        }
    }
}
