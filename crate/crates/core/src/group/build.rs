//! Group constructors: named families, permutation generators, table files.
//!
//! Specs are strings of the form `family:args`:
//!
//! * `cyclic:n`
//! * `dihedral:m` for even `m >= 6` (the order)
//! * `abelian:n1,n2,..` (any factor list; normalized to invariant factors)
//! * `quaternion:m` for `m` in {8, 16, 32}
//! * `symmetric:k` / `alternating:k`
//! * `direct:<spec>;<spec>;..`
//! * `perm:(1,2,3)(4,5)|(1,2)|..` (generators in cycle notation, points 1-based)
//! * `table:<path>` (file: first line the order, then the row-major table)

use std::path::Path;

use crate::{Error, Group, MAX_ORDER};

impl Group {
    /// Builds a group from a spec string.
    pub fn from_spec(spec: &str) -> Result<Group, Error> {
        let bad = |msg: &str| Error::MalformedSpec(spec.to_string(), msg.to_string());
        let (family, args) = spec
            .split_once(':')
            .ok_or_else(|| bad("expected `family:args`"))?;
        match family {
            "cyclic" => cyclic(parse_order(spec, args)?),
            "dihedral" => {
                let m = parse_order(spec, args)?;
                if m < 6 || m % 2 != 0 {
                    return Err(bad("dihedral order must be even and at least 6"));
                }
                dihedral(m)
            }
            "abelian" => {
                let factors = args
                    .split(',')
                    .map(|p| parse_order(spec, p))
                    .collect::<Result<Vec<_>, _>>()?;
                abelian(&factors)
            }
            "quaternion" => {
                let m = parse_order(spec, args)?;
                if ![8, 16, 32].contains(&m) {
                    return Err(bad("quaternion order must be 8, 16 or 32"));
                }
                quaternion(m)
            }
            "symmetric" => {
                let k = parse_order(spec, args)?;
                let order = checked_factorial(k)
                    .ok_or_else(|| bad("symmetric degree too large"))?;
                if order > MAX_ORDER {
                    return Err(Error::OrderCapExceeded { order, cap: MAX_ORDER });
                }
                from_perm_generators(k.max(1), &symmetric_generators(k))
            }
            "alternating" => {
                let k = parse_order(spec, args)?;
                let order = checked_factorial(k)
                    .map(|f| if k >= 2 { f / 2 } else { f })
                    .ok_or_else(|| bad("alternating degree too large"))?;
                if order > MAX_ORDER {
                    return Err(Error::OrderCapExceeded { order, cap: MAX_ORDER });
                }
                from_perm_generators(k.max(1), &alternating_generators(k))
            }
            "direct" => {
                let parts: Vec<&str> = args.split(';').collect();
                if parts.len() < 2 {
                    return Err(bad("direct product needs at least two factors"));
                }
                let mut acc = Group::from_spec(parts[0])?;
                for part in &parts[1..] {
                    acc = direct_product(&acc, &Group::from_spec(part)?)?;
                }
                Ok(acc)
            }
            "perm" => {
                let gens = parse_cycle_generators(spec, args)?;
                let degree = gens.iter().map(|p| p.len()).max().unwrap_or(1);
                from_perm_generators(degree, &gens)
            }
            "table" => {
                let text = std::fs::read_to_string(Path::new(args)).map_err(|e| {
                    Error::MalformedSpec(spec.to_string(), format!("cannot read table file: {e}"))
                })?;
                Group::from_table_text(&text)
            }
            _ => Err(bad("unknown family")),
        }
    }

    /// Parses the table file format: first line the order, then the
    /// row-major entries, whitespace separated.
    pub fn from_table_text(text: &str) -> Result<Group, Error> {
        let mut nums = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::NotLatinSquare(format!("invalid table entry `{t}`")))
        });
        let n = nums
            .next()
            .ok_or_else(|| Error::NotLatinSquare("empty table file".into()))??;
        let entries = nums.collect::<Result<Vec<_>, _>>()?;
        Group::from_table(n, &entries)
    }

    /// Renders the table in the file format accepted by `table:` specs.
    pub fn to_table_text(&self) -> String {
        let n = self.order();
        let mut out = String::new();
        out.push_str(&n.to_string());
        out.push('\n');
        for a in 0..n {
            for b in 0..n {
                if b > 0 {
                    out.push(' ');
                }
                out.push_str(&self.mul(a, b).to_string());
            }
            out.push('\n');
        }
        out
    }
}

fn parse_order(spec: &str, text: &str) -> Result<usize, Error> {
    let v: usize = text.trim().parse().map_err(|_| {
        Error::MalformedSpec(spec.to_string(), format!("`{text}` is not a positive integer"))
    })?;
    if v == 0 {
        return Err(Error::MalformedSpec(
            spec.to_string(),
            "integer arguments must be positive".into(),
        ));
    }
    Ok(v)
}

fn checked_factorial(k: usize) -> Option<usize> {
    let mut f: usize = 1;
    for i in 2..=k {
        f = f.checked_mul(i)?;
        if f > 1 << 40 {
            return None;
        }
    }
    Some(f)
}

fn build(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Group, Error> {
    if n > MAX_ORDER {
        return Err(Error::OrderCapExceeded { order: n, cap: MAX_ORDER });
    }
    let mut entries = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            entries[a * n + b] = f(a, b);
        }
    }
    Group::from_table(n, &entries)
}

fn cyclic(n: usize) -> Result<Group, Error> {
    build(n, |a, b| (a + b) % n)
}

/// Dihedral group of order `m = 2k`: indices `0..k` are the rotations
/// `r^i`, indices `k..m` are the reflections `s r^i`.
fn dihedral(m: usize) -> Result<Group, Error> {
    let k = m / 2;
    build(m, |a, b| {
        let (ra, fa) = (a % k, a >= k);
        let (rb, fb) = (b % k, b >= k);
        // r^a * r^b = r^(a+b); r^a * s r^b = s r^(b-a);
        // s r^a * r^b = s r^(a+b); s r^a * s r^b = r^(b-a).
        match (fa, fb) {
            (false, false) => (ra + rb) % k,
            (false, true) => k + (k + rb - ra) % k,
            (true, false) => k + (ra + rb) % k,
            (true, true) => (k + rb - ra) % k,
        }
    })
}

/// Generalized quaternion group of order `m = 2^t`: indices `0..h` are
/// `x^i` with `h = m/2`, indices `h..m` are `x^i y`, where `y^2 = x^(h/2)`
/// and `y x y^-1 = x^-1`.
fn quaternion(m: usize) -> Result<Group, Error> {
    let h = m / 2;
    let q = h / 2;
    build(m, |a, b| {
        let (xa, ya) = (a % h, a >= h);
        let (xb, yb) = (b % h, b >= h);
        match (ya, yb) {
            (false, false) => (xa + xb) % h,
            (false, true) => h + (xa + xb) % h,
            (true, false) => h + (h + xa - xb) % h,
            (true, true) => (h + xa - xb + q) % h,
        }
    })
}

/// Abelian group as a direct sum of cyclic factors.
///
/// The factor list is first normalized to invariant factors
/// `n_1 | n_2 | .. | n_r`, so any two factorizations of isomorphic groups
/// (`abelian:2,3` vs `abelian:6` vs `cyclic:6`) build the identical table.
fn abelian(factors: &[usize]) -> Result<Group, Error> {
    let radix = invariant_factors(factors);
    let n: usize = radix.iter().product();
    if n > MAX_ORDER {
        return Err(Error::OrderCapExceeded { order: n, cap: MAX_ORDER });
    }
    build(n.max(1), |a, b| {
        let mut out = 0;
        let mut place = 1;
        let (mut a, mut b) = (a, b);
        for &r in &radix {
            out += (a % r + b % r) % r * place;
            place *= r;
            a /= r;
            b /= r;
        }
        out
    })
}

/// Normalizes a cyclic-factor list to invariant factors (ascending, each
/// dividing the next).  `[2,3] -> [6]`, `[4,6] -> [2,12]`, 1s drop out.
pub fn invariant_factors(factors: &[usize]) -> Vec<usize> {
    // Collect prime-power exponents per prime, descending.
    let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    for &f in factors {
        let mut f = f;
        let mut p = 2;
        while p * p <= f {
            if f % p == 0 {
                let mut e = 0;
                while f % p == 0 {
                    f /= p;
                    e += 1;
                }
                push_exponent(&mut per_prime, p, e);
            }
            p += 1;
        }
        if f > 1 {
            push_exponent(&mut per_prime, f, 1);
        }
    }
    for (_, exps) in per_prime.iter_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
    }
    let rounds = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out = Vec::with_capacity(rounds);
    for i in 0..rounds {
        let mut v = 1usize;
        for (p, exps) in &per_prime {
            if let Some(&e) = exps.get(i) {
                v *= p.pow(e);
            }
        }
        out.push(v);
    }
    out.reverse();
    out
}

fn push_exponent(per_prime: &mut Vec<(usize, Vec<u32>)>, p: usize, e: u32) {
    match per_prime.iter_mut().find(|(q, _)| *q == p) {
        Some((_, exps)) => exps.push(e),
        None => per_prime.push((p, vec![e])),
    }
}

fn direct_product(a: &Group, b: &Group) -> Result<Group, Error> {
    let (na, nb) = (a.order(), b.order());
    let n = na
        .checked_mul(nb)
        .filter(|&n| n <= MAX_ORDER)
        .ok_or(Error::OrderCapExceeded { order: na.saturating_mul(nb), cap: MAX_ORDER })?;
    build(n, |x, y| {
        let (xa, xb) = (x % na, x / na);
        let (ya, yb) = (y % na, y / na);
        a.mul(xa, ya) + b.mul(xb, yb) * na
    })
}

// ---------------------------------------------------------------------------
// Permutation-generated groups.

/// One permutation in one-line notation: `p[i]` is the image of point `i`.
type Perm = Vec<usize>;

fn compose(p: &Perm, q: &Perm) -> Perm {
    // Apply p first, then q.
    p.iter().map(|&i| q[i]).collect()
}

fn perm_order(p: &Perm) -> usize {
    let id: Perm = (0..p.len()).collect();
    let mut acc = p.clone();
    let mut k = 1;
    while acc != id {
        acc = compose(&acc, p);
        k += 1;
    }
    k
}

fn symmetric_generators(k: usize) -> Vec<Perm> {
    if k < 2 {
        return vec![];
    }
    let mut swap: Perm = (0..k).collect();
    swap.swap(0, 1);
    let cycle: Perm = (0..k).map(|i| (i + 1) % k).collect();
    if k == 2 {
        vec![swap]
    } else {
        vec![swap, cycle]
    }
}

fn alternating_generators(k: usize) -> Vec<Perm> {
    if k < 3 {
        return vec![];
    }
    let mut three: Perm = (0..k).collect();
    three[0] = 1;
    three[1] = 2;
    three[2] = 0;
    if k == 3 {
        return vec![three];
    }
    let long: Perm = if k % 2 == 1 {
        // A k-cycle is even for odd k.
        (0..k).map(|i| (i + 1) % k).collect()
    } else {
        // Fix point 0, cycle the remaining k-1 points.
        (0..k).map(|i| if i == 0 { 0 } else { i % (k - 1) + 1 }).collect()
    };
    vec![three, long]
}

fn parse_cycle_generators(spec: &str, args: &str) -> Result<Vec<Perm>, Error> {
    let bad = |msg: String| Error::MalformedSpec(spec.to_string(), msg);
    let mut raw: Vec<Vec<Vec<usize>>> = Vec::new(); // generator -> cycles -> points
    let mut degree = 0usize;
    for gen_text in args.split('|') {
        let gen_text = gen_text.trim();
        if gen_text.is_empty() {
            return Err(bad("empty generator".into()));
        }
        let mut cycles = Vec::new();
        let mut rest = gen_text.trim_start();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad(format!("expected `(` at `{rest}`")));
            }
            let close = rest.find(')').ok_or_else(|| bad("unclosed cycle".into()))?;
            let body = &rest[1..close];
            let points = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .ok()
                        .filter(|&p| p >= 1)
                        .ok_or_else(|| bad(format!("invalid point `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if points.is_empty() {
                return Err(bad("empty cycle".into()));
            }
            let mut sorted = points.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != points.len() {
                return Err(bad("cycle repeats a point".into()));
            }
            degree = degree.max(*sorted.last().unwrap());
            cycles.push(points);
            rest = rest[close + 1..].trim_start();
        }
        raw.push(cycles);
    }
    if degree > MAX_ORDER {
        return Err(bad(format!("permutation degree {degree} too large")));
    }
    let mut gens = Vec::new();
    for cycles in raw {
        let mut p: Perm = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w] - 1;
                let to = cycle[(w + 1) % cycle.len()] - 1;
                if touched[from] {
                    return Err(bad(format!("point {} appears twice", from + 1)));
                }
                touched[from] = true;
                p[from] = to;
            }
        }
        gens.push(p);
    }
    Ok(gens)
}

/// Closes a generator set under composition, then relabels the elements
/// sorted by (element order, first occurrence in the breadth-first closure)
/// so the identity lands at index 0 and the numbering is reproducible.
fn from_perm_generators(degree: usize, gens: &[Perm]) -> Result<Group, Error> {
    let id: Perm = (0..degree.max(1)).collect();
    let mut elems: Vec<Perm> = vec![id.clone()];
    let mut seen = std::collections::HashMap::new();
    seen.insert(id, 0usize);
    let mut head = 0;
    while head < elems.len() {
        let p = elems[head].clone();
        head += 1;
        for gen in gens {
            let q = compose(&p, gen);
            if !seen.contains_key(&q) {
                if elems.len() == MAX_ORDER {
                    return Err(Error::OrderCapExceeded {
                        order: MAX_ORDER + 1,
                        cap: MAX_ORDER,
                    });
                }
                seen.insert(q.clone(), elems.len());
                elems.push(q);
            }
        }
    }

    let n = elems.len();
    let mut by_rank: Vec<usize> = (0..n).collect();
    let orders: Vec<usize> = elems.iter().map(perm_order).collect();
    by_rank.sort_by_key(|&i| (orders[i], i));
    // new index of old element i:
    let mut new_of = vec![0usize; n];
    for (new, &old) in by_rank.iter().enumerate() {
        new_of[old] = new;
    }
    let mut entries = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let p = compose(&elems[a], &elems[b]);
            entries[new_of[a] * n + new_of[b]] = new_of[seen[&p]];
        }
    }
    Group::from_table(n, &entries)
}
