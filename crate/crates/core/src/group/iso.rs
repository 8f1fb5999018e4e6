//! Isomorphism testing and naming of isomorphism types.

use std::collections::{BTreeMap, VecDeque};
use std::sync::LazyLock;

use super::construct::{gcd, is_prime};
use super::{
    alternating, cyclic, dihedral, direct_product, elementary_abelian, holomorph, metacyclic,
    quaternion, semidirect_by_action, symmetric, FiniteGroup,
};
use crate::error::{Error, Result};

/// Groups larger than this are not compared by [`are_isomorphic`].
pub const DEFAULT_ISO_CAP: usize = 2000;

/// Cheap isomorphism invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub class_count: usize,
    /// element order -> number of elements of that order
    pub order_stats: BTreeMap<usize, usize>,
}

impl Fingerprint {
    /// Deterministic label used when a group matches no named type.
    pub fn label(&self) -> String {
        let stats: Vec<String> = self
            .order_stats
            .iter()
            .map(|(o, c)| format!("{o}:{c}"))
            .collect();
        format!(
            "G{}[z={},k={},o={}]",
            self.order,
            self.center_order,
            self.class_count,
            stats.join(",")
        )
    }
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut order_stats = BTreeMap::new();
    for o in g.element_orders() {
        *order_stats.entry(o).or_insert(0) += 1;
    }
    Fingerprint {
        order: g.order(),
        abelian: g.is_abelian(),
        center_order: g.center().order(),
        class_count: g.conjugacy_classes().len(),
        order_stats,
    }
}

/// Maps `a`'s generators to `b` consistently and injectively; returns the full
/// element map on success. `f(x g) = f(x) f(g)` is enforced along every edge
/// of the Cayley graph of the generated subgroup.
fn extend_injective(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut f = vec![usize::MAX; a.order()];
    let mut used = vec![false; b.order()];
    f[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let fy = b.mul(f[x], img);
            if f[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
                f[y] = fy;
                queue.push_back(y);
            } else if f[y] != fy {
                return None;
            }
        }
    }
    Some(f)
}

/// Up to `limit` isomorphisms `a → b`, by backtracking over images of a
/// greedy generating sequence of `a`. Candidate images must have the same
/// element order; every partial assignment is checked on the subgroup it
/// generates.
pub(crate) fn search_isomorphisms(
    a: &FiniteGroup,
    b: &FiniteGroup,
    limit: usize,
) -> Vec<Vec<usize>> {
    if a.order() != b.order() {
        return Vec::new();
    }
    let gens = a.generating_set();
    if gens.is_empty() {
        return vec![vec![0]];
    }
    let a_orders = a.element_orders();
    let b_orders = b.element_orders();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            (0..b.order())
                .filter(|&y| b_orders[y] == a_orders[g])
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    backtrack(a, b, &gens, &candidates, &mut images, &mut found, limit);
    found.sort();
    found
}

fn backtrack(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    let k = images.len();
    for &y in &candidates[k] {
        if found.len() >= limit {
            return;
        }
        images.push(y);
        if let Some(f) = extend_injective(a, b, &gens[..=k], images) {
            if k + 1 == gens.len() {
                found.push(f);
            } else {
                backtrack(a, b, gens, candidates, images, found, limit);
            }
        }
        images.pop();
    }
}

/// An isomorphism `a → b` as an element map, if one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Result<Option<Vec<usize>>> {
    for g in [a, b] {
        if g.order() > DEFAULT_ISO_CAP {
            return Err(Error::CapExceeded {
                what: "order for isomorphism testing",
                limit: DEFAULT_ISO_CAP,
            });
        }
    }
    if fingerprint(a) != fingerprint(b) {
        return Ok(None);
    }
    Ok(search_isomorphisms(a, b, 1).pop())
}

pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

fn factorize(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors `d1 | d2 | ...` of an abelian group, each > 1.
fn abelian_invariants(g: &FiniteGroup) -> Vec<usize> {
    let orders = g.element_orders();
    // per prime: partition of exponents, read off from |{x : x^(p^i) = 1}| = p^(sum_j min(e_j, i))
    let mut prime_parts: Vec<(usize, Vec<usize>)> = Vec::new();
    for (p, e) in factorize(g.order()) {
        let mut s_prev = 0;
        let mut parts_at_least = Vec::new();
        for i in 1..=e {
            let pi = p.pow(i as u32);
            let count = orders.iter().filter(|&&o| pi % o == 0).count();
            let s = count.ilog(p) as usize;
            parts_at_least.push(s - s_prev);
            s_prev = s;
        }
        // parts_at_least[i-1] = number of cyclic factors of order >= p^i
        let mut exps = Vec::new();
        for i in (1..=e).rev() {
            let here = parts_at_least[i - 1] - parts_at_least.get(i).copied().unwrap_or(0);
            exps.extend(std::iter::repeat(i).take(here));
        }
        prime_parts.push((p, exps));
    }
    let width = prime_parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = vec![1usize; width];
    for (p, exps) in &prime_parts {
        // exps sorted descending: largest goes into the last invariant factor
        for (k, &e) in exps.iter().enumerate() {
            factors[width - 1 - k] *= p.pow(e as u32);
        }
    }
    factors
}

fn abelian_name(g: &FiniteGroup) -> String {
    let inv = abelian_invariants(g);
    if inv.is_empty() {
        return "C1".into();
    }
    if inv.len() >= 2 && inv.iter().all(|&d| d == inv[0]) && is_prime(inv[0]) {
        return format!("E({},{})", inv[0], inv.len());
    }
    inv.iter()
        .map(|d| format!("C{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

struct Named {
    name: String,
    group: FiniteGroup,
    print: Fingerprint,
}

fn named(name: &str, group: FiniteGroup) -> Named {
    Named {
        name: name.to_string(),
        print: fingerprint(&group),
        group,
    }
}

/// Non-abelian groups of order at most 16; abelian groups are named from
/// their invariants.
static SMALL_NONABELIAN: LazyLock<Vec<Named>> = LazyLock::new(|| {
    let c2 = cyclic(2).unwrap();
    let v = elementary_abelian(2, 2).unwrap();
    let swap: Vec<usize> = vec![0, 2, 1, 3];
    let c2sq_c4 = semidirect_by_action(
        &v,
        &cyclic(4).unwrap(),
        vec![(0..4).collect(), swap.clone(), (0..4).collect(), swap],
    )
    .unwrap()
    .group;
    let c4c2 = direct_product(&cyclic(4).unwrap(), &c2).unwrap();
    // (a, b) -> (a + 2b, b) on C4 x C2 stored at a + 4b
    let twist: Vec<usize> = (0..8)
        .map(|i| (i % 4 + 2 * (i / 4)) % 4 + 4 * (i / 4))
        .collect();
    let central = semidirect_by_action(&c4c2, &c2, vec![(0..8).collect(), twist])
        .unwrap()
        .group;
    vec![
        named("S3", symmetric(3).unwrap()),
        named("D4", dihedral(4).unwrap()),
        named("Q8", quaternion(8).unwrap()),
        named("D5", dihedral(5).unwrap()),
        named("D6", dihedral(6).unwrap()),
        named("A4", alternating(4).unwrap()),
        named("Dic3", metacyclic(3, 4, 2).unwrap()),
        named("D7", dihedral(7).unwrap()),
        named("D8", dihedral(8).unwrap()),
        named("Q16", quaternion(16).unwrap()),
        named("SD16", metacyclic(8, 2, 3).unwrap()),
        named("M16", metacyclic(8, 2, 5).unwrap()),
        named("C4:C4", metacyclic(4, 4, 3).unwrap()),
        named("C2^2:C4", c2sq_c4),
        named("C2xD4", direct_product(&c2, &dihedral(4).unwrap()).unwrap()),
        named(
            "C2xQ8",
            direct_product(&c2, &quaternion(8).unwrap()).unwrap(),
        ),
        named("C4oD4", central),
    ]
});

fn matches(g: &FiniteGroup, print: &Fingerprint, candidate: &FiniteGroup) -> bool {
    fingerprint(candidate) == *print && !search_isomorphisms(candidate, g, 1).is_empty()
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

/// Canonical name of the isomorphism type of `g`.
///
/// Abelian groups are named by invariant factors (`C8`, `C2xC4`, or `E(p,k)`
/// when elementary abelian). Non-abelian groups of order at most 16 come from a
/// fixed catalog; larger ones are tried against dihedral, quaternion,
/// symmetric, alternating and small holomorph families. Anything else gets the
/// fingerprint label.
pub fn iso_type(g: &FiniteGroup) -> Result<String> {
    if g.order() > DEFAULT_ISO_CAP {
        return Err(Error::CapExceeded {
            what: "order for isomorphism typing",
            limit: DEFAULT_ISO_CAP,
        });
    }
    if g.is_abelian() {
        return Ok(abelian_name(g));
    }
    let print = fingerprint(g);
    let m = g.order();
    if m <= 16 {
        for entry in SMALL_NONABELIAN.iter() {
            if entry.print == print && !search_isomorphisms(&entry.group, g, 1).is_empty() {
                return Ok(entry.name.clone());
            }
        }
        return Ok(print.label());
    }
    let mut families: Vec<(String, Box<dyn Fn() -> Result<FiniteGroup>>)> = Vec::new();
    if m % 2 == 0 {
        families.push((format!("D{}", m / 2), Box::new(move || dihedral(m / 2))));
    }
    if m.is_power_of_two() {
        families.push((format!("Q{m}"), Box::new(move || quaternion(m))));
    }
    for k in 3..=7usize {
        let fact: usize = (1..=k).product();
        if fact == m {
            families.push((format!("S{k}"), Box::new(move || symmetric(k))));
        }
        if fact / 2 == m {
            families.push((format!("A{k}"), Box::new(move || alternating(k))));
        }
    }
    for n in 3..=60usize {
        if n * euler_phi(n) == m {
            families.push((
                format!("Hol(C{n})"),
                Box::new(move || Ok(holomorph(&cyclic(n)?)?.group().clone())),
            ));
        }
    }
    for (p, k) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let pk = p.pow(k as u32);
        let gl: usize = (0..k).map(|i| pk - p.pow(i as u32)).product();
        if pk * gl == m {
            families.push((
                format!("Hol(E({p},{k}))"),
                Box::new(move || Ok(holomorph(&elementary_abelian(p, k)?)?.group().clone())),
            ));
        }
    }
    for (name, build) in families {
        let candidate = build()?;
        if matches(g, &print, &candidate) {
            return Ok(name);
        }
    }
    Ok(print.label())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::holomorph;

    #[test]
    fn isomorphism_examples() {
        let hol_v = holomorph(&elementary_abelian(2, 2).unwrap()).unwrap();
        assert!(are_isomorphic(hol_v.group(), &symmetric(4).unwrap()).unwrap());
        assert!(!are_isomorphic(&cyclic(4).unwrap(), &elementary_abelian(2, 2).unwrap()).unwrap());
        assert!(are_isomorphic(&dihedral(3).unwrap(), &symmetric(3).unwrap()).unwrap());
        assert!(!are_isomorphic(&dihedral(4).unwrap(), &quaternion(8).unwrap()).unwrap());
    }

    #[test]
    fn found_isomorphism_is_a_homomorphism() {
        let a = dihedral(6).unwrap();
        let b = direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()).unwrap();
        let f = find_isomorphism(&a, &b).unwrap().expect("D6 = S3 x C2");
        for x in 0..12 {
            for y in 0..12 {
                assert_eq!(f[a.mul(x, y)], b.mul(f[x], f[y]));
            }
        }
    }

    #[test]
    fn abelian_names() {
        assert_eq!(iso_type(&cyclic(8).unwrap()).unwrap(), "C8");
        assert_eq!(
            iso_type(&elementary_abelian(2, 2).unwrap()).unwrap(),
            "E(2,2)"
        );
        assert_eq!(iso_type(&cyclic(5).unwrap()).unwrap(), "C5");
        assert_eq!(iso_type(&cyclic(1).unwrap()).unwrap(), "C1");
        let c2 = cyclic(2).unwrap();
        let c4 = cyclic(4).unwrap();
        assert_eq!(
            iso_type(&direct_product(&c2, &c4).unwrap()).unwrap(),
            "C2xC4"
        );
        let c6 = cyclic(6).unwrap();
        assert_eq!(
            iso_type(&direct_product(&c2, &c6).unwrap()).unwrap(),
            "C2xC6"
        );
        assert_eq!(
            iso_type(&direct_product(&c4, &cyclic(3).unwrap()).unwrap()).unwrap(),
            "C12"
        );
    }

    #[test]
    fn nonabelian_names() {
        assert_eq!(iso_type(&dihedral(3).unwrap()).unwrap(), "S3");
        assert_eq!(iso_type(&dihedral(4).unwrap()).unwrap(), "D4");
        assert_eq!(iso_type(&quaternion(8).unwrap()).unwrap(), "Q8");
        assert_eq!(iso_type(&symmetric(4).unwrap()).unwrap(), "S4");
        assert_eq!(iso_type(&alternating(5).unwrap()).unwrap(), "A5");
        assert_eq!(iso_type(&dihedral(10).unwrap()).unwrap(), "D10");
        assert_eq!(
            iso_type(&holomorph(&cyclic(5).unwrap()).unwrap().group().clone()).unwrap(),
            "Hol(C5)"
        );
    }

    #[test]
    fn small_catalog_is_pairwise_distinct() {
        let cat = &*SMALL_NONABELIAN;
        for (i, a) in cat.iter().enumerate() {
            assert!(a.group.check_axioms(), "{}", a.name);
            assert!(!a.group.is_abelian(), "{}", a.name);
            for b in &cat[i + 1..] {
                if a.group.order() == b.group.order() {
                    assert!(
                        !are_isomorphic(&a.group, &b.group).unwrap(),
                        "{} vs {}",
                        a.name,
                        b.name
                    );
                }
            }
        }
        // 9 non-abelian groups of order 16
        assert_eq!(cat.iter().filter(|n| n.group.order() == 16).count(), 9);
    }

    #[test]
    fn unmatched_gets_fingerprint_label() {
        // A4 x C2 has order 24 and is none of the named families
        let g = direct_product(&alternating(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        let name = iso_type(&g).unwrap();
        assert!(name.starts_with("G24["), "{name}");
        assert_eq!(name, iso_type(&g).unwrap());
    }
}
