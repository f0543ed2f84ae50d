//! Invariant checks: exhaustive on small groups, randomized elsewhere.

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{aut_of, census_up_to_16, groups_up_to_12};
use geodav::atoms::{enumerate_atoms, large_davenport, product_one_free_levels, small_davenport};
use geodav::cayley::{digraph_diameter, is_generating, word_length};
use geodav::geodesic::{geodesic_levels, is_directed_geodesic_atom, ng, GeodesicLevels};
use geodav::oracle::brute_atoms;
use geodav::sequence::{
    canonical_rep, is_atom, is_product_one, is_product_one_free, splittings,
};
use geodav::{ElemSet, Group, SearchOptions, Sequence};

fn catalog() -> &'static [(String, Group)] {
    static CAT: OnceLock<Vec<(String, Group)>> = OnceLock::new();
    CAT.get_or_init(groups_up_to_12)
}

/// Fully enumerated geodesic levels for every catalog group, built once.
fn geo_catalog() -> &'static [GeodesicLevels] {
    static GEO: OnceLock<Vec<GeodesicLevels>> = OnceLock::new();
    GEO.get_or_init(|| {
        catalog()
            .iter()
            .map(|(_, g)| {
                geodesic_levels(g, &aut_of(g), &SearchOptions::unlimited(), None).unwrap()
            })
            .collect()
    })
}

/// Visits every multiset over `0..n` of size 1 through `max_len`, as a
/// non-decreasing slice.
fn for_each_multiset(n: usize, max_len: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, max_len: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if !cur.is_empty() {
            f(cur);
        }
        if cur.len() == max_len {
            return;
        }
        for e in start..n {
            cur.push(e);
            rec(n, max_len, e, cur, f);
            cur.pop();
        }
    }
    rec(n, max_len, 0, &mut Vec::new(), f);
}

fn contains_multiset(outer: &Sequence, inner: &Sequence) -> bool {
    inner.entries().iter().all(|&(e, m)| outer.mult_of(e as usize) >= m as usize)
}

fn is_cyclic(g: &Group) -> bool {
    g.is_abelian() && g.abelian_invariants().unwrap().len() <= 1
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|p| n.is_multiple_of(*p)).unwrap()
}

// ---------------------------------------------------------------------------
// Group structure.

#[test]
fn automorphisms_preserve_multiplication() {
    for (name, g) in catalog() {
        let n = g.order();
        for perm in aut_of(g).iter() {
            assert_eq!(perm[0], 0, "{name}: identity must be fixed");
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(
                        perm[g.mul(a, b)] as usize,
                        g.mul(perm[a] as usize, perm[b] as usize),
                        "{name}: image of a product must be the product of images"
                    );
                }
            }
        }
    }
}

#[test]
fn abelian_spec_aliases_share_a_table() {
    let a = Group::from_spec("abelian:2,3").unwrap();
    let b = Group::from_spec("cyclic:6").unwrap();
    assert_eq!(a.table_bytes(), b.table_bytes());
    assert_eq!(a.abelian_invariants().unwrap(), vec![6]);
}

// ---------------------------------------------------------------------------
// Sequence predicates, exhaustively on small groups.

#[test]
fn splittings_preserve_product_one_exhaustively() {
    for (name, g) in catalog().iter().filter(|(_, g)| g.order() <= 8) {
        for_each_multiset(g.order(), 5, &mut |elems| {
            let s = Sequence::from_elems(elems);
            if !is_product_one(g, &s) {
                return;
            }
            let split = splittings(g, &s);
            let distinct: BTreeSet<&Sequence> = split.iter().collect();
            assert_eq!(distinct.len(), split.len(), "{name}: duplicate splitting of {s}");
            for t in &split {
                assert!(is_product_one(g, t), "{name}: splitting {t} of {s} lost product-one");
            }
        });
    }
}

#[test]
fn free_means_exactly_no_atom_inside() {
    for (name, g) in catalog().iter().filter(|(_, g)| g.order() <= 8) {
        let atoms = brute_atoms(g, g.order()).unwrap();
        for_each_multiset(g.order(), g.order(), &mut |elems| {
            let s = Sequence::from_elems(elems);
            let has_atom = atoms.iter().any(|a| contains_multiset(&s, a));
            assert_eq!(
                is_product_one_free(g, &s),
                !has_atom,
                "{name}: freeness of {s} disagrees with atom containment"
            );
        });
    }
}

#[test]
fn abelian_freeness_matches_direct_subset_sums() {
    fn some_subset_sums_to_zero(
        g: &Group,
        entries: &[(u16, u16)],
        i: usize,
        acc: usize,
        picked: bool,
    ) -> bool {
        if i == entries.len() {
            return picked && acc == 0;
        }
        let (e, m) = entries[i];
        (0..=m as usize).any(|taken| {
            let mut next = acc;
            for _ in 0..taken {
                next = g.mul(next, e as usize);
            }
            some_subset_sums_to_zero(g, entries, i + 1, next, picked || taken > 0)
        })
    }

    for (name, g) in catalog().iter().filter(|(_, g)| g.is_abelian() && g.order() <= 8) {
        for_each_multiset(g.order(), 5, &mut |elems| {
            let s = Sequence::from_elems(elems);
            let zero_subsum = some_subset_sums_to_zero(g, s.entries(), 0, 0, false);
            assert_eq!(
                is_product_one_free(g, &s),
                !zero_subsum,
                "{name}: memoized freeness of {s} disagrees with direct subset sums"
            );
        });
    }
}

// ---------------------------------------------------------------------------
// Atom levels against the definitional oracle, and the classical bounds.

#[test]
fn atom_levels_match_oracle_on_every_small_group() {
    for (name, g) in catalog().iter().filter(|(_, g)| g.order() <= 8) {
        let aut = aut_of(g);
        let sets = enumerate_atoms(g, &aut, &SearchOptions::unlimited(), None).unwrap();
        let mut expanded: BTreeSet<Sequence> = BTreeSet::new();
        for (_, level) in sets.levels() {
            expanded.extend(level.orbit(&aut));
        }
        let brute = brute_atoms(g, g.order()).unwrap();
        assert_eq!(expanded, brute, "{name}: atom sets differ from the oracle");
    }
}

#[test]
fn abelian_large_constant_is_small_plus_one() {
    for (name, g) in census_up_to_16().iter().filter(|(_, g)| g.is_abelian()) {
        let aut = aut_of(g);
        let opts = SearchOptions::unlimited();
        let d = small_davenport(&product_one_free_levels(g, &aut, &opts, None).unwrap()).unwrap();
        let big = large_davenport(&enumerate_atoms(g, &aut, &opts, None).unwrap()).unwrap();
        assert_eq!(big, d + 1, "{name}: expected D = d + 1 on an abelian group");
    }
}

#[test]
fn small_constant_bounds() {
    for (name, g) in census_up_to_16().iter().filter(|(_, g)| g.order() >= 2) {
        let aut = aut_of(g);
        let opts = SearchOptions::unlimited();
        let d = small_davenport(&product_one_free_levels(g, &aut, &opts, None).unwrap()).unwrap();
        let n = g.order();
        if !is_cyclic(g) {
            assert!(2 * d <= n, "{name}: d = {d} exceeds half the order");
            let p = smallest_prime_factor(n);
            assert!(d <= n / p + p - 2, "{name}: d = {d} exceeds the smallest-prime bound");
        }
    }
}

#[test]
fn cyclic_index_two_commutator_formula() {
    let specs = [
        "dihedral:6",
        "dihedral:8",
        "dihedral:10",
        "dihedral:12",
        "dihedral:14",
        "dihedral:16",
        "quaternion:8",
        "quaternion:16",
    ];
    for spec in specs {
        let g = Group::from_spec(spec).unwrap();
        let aut = aut_of(&g);
        let opts = SearchOptions::unlimited();
        let d = small_davenport(&product_one_free_levels(&g, &aut, &opts, None).unwrap()).unwrap();
        let big = large_davenport(&enumerate_atoms(&g, &aut, &opts, None).unwrap()).unwrap();
        assert_eq!(big, d + g.commutator_subgroup().len(), "{spec}: D != d + |G'|");
    }
}

// ---------------------------------------------------------------------------
// Geodesic structure.

#[test]
fn support_witness_rejection_matches_definition_exhaustively() {
    for (idx, (name, g)) in catalog().iter().enumerate() {
        if g.order() > 8 {
            continue;
        }
        let index = geo_catalog()[idx].index();
        for_each_multiset(g.order(), g.order(), &mut |elems| {
            let s = Sequence::from_elems(elems);
            if !is_product_one(g, &s) {
                return;
            }
            let geodesic = is_directed_geodesic_atom(g, &s).unwrap();
            assert_eq!(
                ng(&s, index),
                !geodesic,
                "{name}: witness predicate disagrees with the definition on {s}"
            );
        });
    }
}

#[test]
fn geodesic_level_representatives_are_atoms() {
    for (idx, (name, g)) in catalog().iter().enumerate() {
        let aut = aut_of(g);
        let atoms = enumerate_atoms(g, &aut, &SearchOptions::unlimited(), None).unwrap();
        for (len, level) in geo_catalog()[idx].level_sets().levels() {
            let atom_level = atoms
                .level(len)
                .unwrap_or_else(|| panic!("{name}: no atoms at length {len}"));
            for rep in level.reps() {
                assert!(
                    atom_level.contains_rep(rep),
                    "{name}: geodesic representative {rep} is not an atom representative"
                );
            }
        }
    }
}

#[test]
fn single_source_search_sees_the_whole_digraph() {
    fn bfs_from(g: &Group, b: &ElemSet, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; g.order()];
        dist[start] = Some(0);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let next = dist[v].unwrap() + 1;
            for e in b.iter() {
                let w = g.mul(v, e);
                if dist[w].is_none() {
                    dist[w] = Some(next);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    let mut rng = StdRng::seed_from_u64(7);
    for (name, g) in catalog().iter().filter(|(_, g)| g.order() >= 2) {
        let n = g.order();
        let mut sets: Vec<ElemSet> = vec![(1..n).collect()];
        while sets.len() < 4 {
            let b: ElemSet = (1..n).filter(|_| rng.gen_bool(0.5)).collect();
            if is_generating(g, &b) {
                sets.push(b);
            }
        }
        for b in sets {
            let from_identity = digraph_diameter(g, &b).unwrap();
            let all_pairs = (0..n)
                .map(|v| bfs_from(g, &b, v).into_iter().map(Option::unwrap).max().unwrap())
                .max()
                .unwrap();
            assert_eq!(
                from_identity, all_pairs,
                "{name}: identity-rooted diameter differs from the all-pairs maximum for {b}"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Randomized properties.

fn seq_from_raw(n: usize, raw: &[usize]) -> Sequence {
    Sequence::from_elems(&raw.iter().map(|&x| x % n).collect::<Vec<_>>())
}

/// A product-one sequence: a random word closed off by the inverse of its
/// product.
fn product_one_from_raw(g: &Group, raw: &[usize]) -> Sequence {
    let word: Vec<usize> = raw.iter().map(|&x| x % g.order()).collect();
    let p = g.product(&word);
    Sequence::from_elems(&word).with(g.inv(p))
}

proptest! {
    #[test]
    fn product_one_closed_under_concatenation(
        gi in 0..30usize,
        raw_a in proptest::collection::vec(0..144usize, 0..5),
        raw_b in proptest::collection::vec(0..144usize, 0..5),
    ) {
        let (_, g) = &catalog()[gi % catalog().len()];
        let a = product_one_from_raw(g, &raw_a);
        let b = product_one_from_raw(g, &raw_b);
        prop_assert!(is_product_one(g, &a));
        prop_assert!(is_product_one(g, &b));
        let mut joined = a.clone();
        for e in b.iter_elems() {
            joined.push(e);
        }
        prop_assert!(is_product_one(g, &joined));
    }

    #[test]
    fn removing_elements_keeps_freeness(
        gi in 0..30usize,
        raw in proptest::collection::vec(0..144usize, 1..5),
    ) {
        let (_, g) = &catalog()[gi % catalog().len()];
        let s = seq_from_raw(g.order(), &raw);
        if is_product_one_free(g, &s) {
            for e in s.support().iter() {
                prop_assert!(is_product_one_free(g, &s.without(e)));
            }
        }
    }

    #[test]
    fn canonical_representative_is_orbit_constant(
        gi in 0..30usize,
        raw in proptest::collection::vec(0..144usize, 0..6),
        pi in 0..10_000usize,
    ) {
        let (_, g) = &catalog()[gi % catalog().len()];
        let aut = aut_of(g);
        let s = seq_from_raw(g.order(), &raw);
        let canon = canonical_rep(&aut, &s);
        let perm = &aut.perms()[pi % aut.len()];
        prop_assert_eq!(canonical_rep(&aut, &s.apply_perm(perm)), canon.clone());
        prop_assert_eq!(canonical_rep(&aut, &canon), canon.clone());
        prop_assert!(canon <= s);
    }

    #[test]
    fn text_form_round_trips(
        entries in proptest::collection::vec((0..256usize, 1..4usize), 0..5),
    ) {
        let mut s = Sequence::empty();
        for (e, m) in entries {
            for _ in 0..m {
                s.push(e);
            }
        }
        let parsed: Sequence = s.to_string().parse().unwrap();
        prop_assert_eq!(parsed, s);
    }

    #[test]
    fn closure_is_a_closure_operator(
        gi in 0..30usize,
        bits_x in any::<u16>(),
        bits_extra in any::<u16>(),
    ) {
        let (_, g) = &catalog()[gi % catalog().len()];
        let n = g.order();
        let x: ElemSet = (0..n).filter(|e| bits_x >> (e % 16) & 1 == 1 && *e > 0).collect();
        let y: ElemSet = x.union(&(0..n).filter(|e| bits_extra >> (e % 16) & 1 == 1 && *e > 0).collect());
        let cx = g.subgroup_closure(&x);
        prop_assert!(x.is_subset(&cx));
        prop_assert_eq!(g.subgroup_closure(&cx), cx);
        prop_assert!(cx.is_subset(&g.subgroup_closure(&y)));
        prop_assert_eq!(n % cx.len(), 0);
    }

    #[test]
    fn cyclic_product_weight_is_superadditive(a in 2..=12usize, b in 2..=12usize) {
        let g = Group::from_spec(&format!("direct:cyclic:{a};cyclic:{b}")).unwrap();
        prop_assert!(g.invariant_factor_sum().unwrap() >= (a - 1) + (b - 1));
    }

    #[test]
    fn abelian_constructor_normalizes(
        factors in proptest::collection::vec(1..=6usize, 1..=3),
    ) {
        let spec = format!(
            "abelian:{}",
            factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        );
        let g = Group::from_spec(&spec).unwrap();
        let inv = g.abelian_invariants().unwrap();
        prop_assert!(inv.iter().all(|&f| f >= 2));
        prop_assert!(inv.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(inv.iter().product::<usize>(), g.order());
        let renormalized = if inv.is_empty() {
            Group::from_spec("cyclic:1").unwrap()
        } else {
            let spec = format!(
                "abelian:{}",
                inv.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            );
            Group::from_spec(&spec).unwrap()
        };
        prop_assert_eq!(renormalized.table_bytes(), g.table_bytes());
    }

    #[test]
    fn adding_generators_never_grows_the_diameter(
        gi in 0..30usize,
        bits_c in any::<u32>(),
        bits_extra in any::<u32>(),
    ) {
        let (_, g) = &catalog()[gi % catalog().len()];
        let n = g.order();
        prop_assume!(n >= 2);
        let c: ElemSet = (1..n).filter(|e| bits_c >> (e % 32) & 1 == 1).collect();
        prop_assume!(is_generating(g, &c));
        let b = c.union(&(1..n).filter(|e| bits_extra >> (e % 32) & 1 == 1).collect());
        prop_assert!(digraph_diameter(g, &c).unwrap() >= digraph_diameter(g, &b).unwrap());
    }

    #[test]
    fn minimal_words_close_into_atoms(
        gi in 0..30usize,
        raw in proptest::collection::vec(0..144usize, 1..6),
    ) {
        let (_, g) = &catalog()[gi % catalog().len()];
        let word: Vec<usize> = raw.iter().map(|&x| x % g.order()).collect();
        let p = g.product(&word);
        let supp: ElemSet = word.iter().copied().collect();
        if word_length(g, &supp, p).unwrap() == word.len() {
            let s = Sequence::from_elems(&word).with(g.inv(p));
            prop_assert!(is_atom(g, &s), "closed word {s} is not an atom");
        }
    }
}
