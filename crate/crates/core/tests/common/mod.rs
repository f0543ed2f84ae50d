//! Shared fixtures and helpers for the integration suites.

#![allow(dead_code)]

use geodav::atoms::{enumerate_atoms, large_davenport, product_one_free_levels, small_davenport};
use geodav::cayley::directed_cayley_diameter;
use geodav::geodesic::geodesic_levels;
use geodav::{automorphisms, Automorphisms, Group, SearchOptions};

/// Order-16 two-generator group with a cyclic subgroup of order 8 whose
/// generator is inverted-to-the-fifth by the involution: x maps each
/// residue rotationally, t conjugates x to x^5.
pub const ORDER16_MODULAR_SPEC: &str = "perm:(1,2,3,4,5,6,7,8)|(2,6)(4,8)";

/// Order-16 group (C4 x C2) extended by an involution sending the order-4
/// generator a to a*b and fixing b.  Elements are (i, j, e) with i mod 4,
/// j mod 2, e mod 2, numbered i + 4j + 8e; the twist phi(i, j) = (i, j+i)
/// acts only when e = 1.
pub fn order16_twisted() -> Group {
    let idx = |i: usize, j: usize, e: usize| (i % 4) + 4 * (j % 2) + 8 * (e % 2);
    let phi = |i: usize, j: usize| (i, (j + i) % 2);
    let mut table = vec![0usize; 16 * 16];
    for i1 in 0..4 {
        for j1 in 0..2 {
            for e1 in 0..2 {
                for i2 in 0..4 {
                    for j2 in 0..2 {
                        for e2 in 0..2 {
                            let (ti2, tj2) = if e1 == 1 { phi(i2, j2) } else { (i2, j2) };
                            let a = idx(i1, j1, e1);
                            let b = idx(i2, j2, e2);
                            table[a * 16 + b] = idx(i1 + ti2, j1 + tj2, e1 + e2);
                        }
                    }
                }
            }
        }
    }
    Group::from_table(16, &table).expect("twisted order-16 table is a valid group")
}

/// The dicyclic group of order 12: a of order 6, b with b^2 = a^3 and
/// b a b^-1 = a^-1.  Elements a^i b^e are numbered i + 6e.
pub fn dicyclic_12() -> Group {
    let mut table = vec![0usize; 12 * 12];
    for i in 0..6 {
        for e1 in 0..2 {
            for j in 0..6 {
                for e2 in 0..2 {
                    let a = i + 6 * e1;
                    let b = j + 6 * e2;
                    table[a * 12 + b] = if e1 == 0 {
                        (i + j) % 6 + 6 * e2
                    } else if e2 == 0 {
                        (i + 6 - j) % 6 + 6
                    } else {
                        (i + 9 - j) % 6
                    };
                }
            }
        }
    }
    Group::from_table(12, &table).expect("dicyclic-12 table is a valid group")
}

/// All invariant-factor chains n1 | n2 | ... | nr with product `order` and
/// n1 >= 2; the trivial group contributes the empty chain.
pub fn invariant_factor_chains(order: usize) -> Vec<Vec<usize>> {
    fn gen(product: usize, min: usize) -> Vec<Vec<usize>> {
        if product == 1 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        let lo = min.max(2);
        for f in lo..=product {
            if f % min != 0 || !product.is_multiple_of(f) {
                continue;
            }
            for mut rest in gen(product / f, f) {
                rest.insert(0, f);
                out.push(rest);
            }
        }
        out
    }
    gen(order, 1)
}

pub fn abelian_spec(chain: &[usize]) -> String {
    if chain.is_empty() {
        "cyclic:1".to_string()
    } else {
        format!(
            "abelian:{}",
            chain.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

/// Every group of order at most 12 expressible here, by isomorphism class:
/// all abelian shapes, the dihedral groups, the symmetric and alternating
/// witnesses, the quaternion group, and the dicyclic group of order 12.
pub fn groups_up_to_12() -> Vec<(String, Group)> {
    let mut out = Vec::new();
    for order in 1..=12usize {
        for chain in invariant_factor_chains(order) {
            let spec = abelian_spec(&chain);
            out.push((spec.clone(), Group::from_spec(&spec).unwrap()));
        }
    }
    for spec in [
        "symmetric:3",
        "dihedral:8",
        "quaternion:8",
        "dihedral:10",
        "dihedral:12",
        "alternating:4",
    ] {
        out.push((spec.to_string(), Group::from_spec(spec).unwrap()));
    }
    out.push(("dicyclic-12".to_string(), dicyclic_12()));
    out
}

/// The order <= 16 census over the built-in constructors plus the two
/// order-16 table/permutation fixtures.
pub fn census_up_to_16() -> Vec<(String, Group)> {
    let mut out = groups_up_to_12();
    for order in 13..=16usize {
        for chain in invariant_factor_chains(order) {
            let spec = abelian_spec(&chain);
            out.push((spec.clone(), Group::from_spec(&spec).unwrap()));
        }
    }
    for spec in [
        "dihedral:14",
        "dihedral:16",
        "quaternion:16",
        "direct:dihedral:8;cyclic:2",
        "direct:quaternion:8;cyclic:2",
        ORDER16_MODULAR_SPEC,
    ] {
        out.push((spec.to_string(), Group::from_spec(spec).unwrap()));
    }
    out.push(("order16-twisted".to_string(), order16_twisted()));
    out
}

pub struct Stats {
    pub d: usize,
    pub big_d: usize,
    pub gd: usize,
    pub dcd_star: usize,
    pub ddiam: usize,
}

/// Computes all five analyzed quantities for one group from scratch.
pub fn all_stats(g: &Group) -> Stats {
    let aut = aut_of(g);
    let opts = SearchOptions::unlimited();
    let free = product_one_free_levels(g, &aut, &opts, None).unwrap();
    let atoms = enumerate_atoms(g, &aut, &opts, None).unwrap();
    let geo = geodesic_levels(g, &aut, &opts, None).unwrap();
    Stats {
        d: small_davenport(&free).unwrap(),
        big_d: large_davenport(&atoms).unwrap(),
        gd: geo.gd().unwrap(),
        dcd_star: geo.dcd_star(g).unwrap(),
        ddiam: directed_cayley_diameter(g, &aut).unwrap(),
    }
}

/// The automorphism group, falling back to the identity-only group when
/// enumeration is capped; every orbit computation stays correct, just
/// without deduplication.
pub fn aut_of(g: &Group) -> Automorphisms {
    automorphisms(g).unwrap_or_else(|_| Automorphisms::identity_only(g.order()))
}
