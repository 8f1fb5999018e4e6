//! Subgroup enumeration: all subgroups, normal and characteristic subgroups,
//! overgroups of a fixed subgroup, and Sylow subgroups.

use std::collections::HashSet;

use super::construct::is_prime;
use super::{automorphism_group, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Default cap on `|G|` for [`all_subgroups`].
pub const DEFAULT_SUBGROUP_CAP: usize = 200;

/// Cap on `|G|` for the class-based and overgroup searches, which stay cheap
/// well beyond the full subgroup lattice.
const LAYERED_SEARCH_CAP: usize = 10_000;

/// Every subgroup of `g`, each once, sorted by order then members.
///
/// Starts from the cyclic subgroups and repeatedly joins each new subgroup
/// with a cyclic subgroup it does not contain; every subgroup is a join of
/// cyclic ones, so this reaches all of them.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    all_subgroups_capped(g, DEFAULT_SUBGROUP_CAP)
}

pub fn all_subgroups_capped(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "group order for subgroup enumeration",
            limit: cap,
        });
    }
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    for a in 0..g.order() {
        let c = g.generate(&[a]);
        if seen.insert(c.clone()) {
            cyclic.push((a, c));
        }
    }
    let mut frontier: Vec<(Vec<usize>, Subgroup)> =
        cyclic.iter().map(|(a, c)| (vec![*a], c.clone())).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (gens, h) in &frontier {
            for (a, _) in &cyclic {
                if h.contains(*a) {
                    continue;
                }
                let mut joined = gens.clone();
                joined.push(*a);
                let j = g.generate(&joined);
                if seen.insert(j.clone()) {
                    next.push((joined, j));
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Every normal subgroup, sorted. Normal subgroups are generated by unions
/// of conjugacy classes, so the layering joins normal subgroups with classes.
pub fn normal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    if g.order() > LAYERED_SEARCH_CAP {
        return Err(Error::CapExceeded {
            what: "group order for normal subgroup enumeration",
            limit: LAYERED_SEARCH_CAP,
        });
    }
    let classes = g.conjugacy_classes();
    let trivial = g.trivial_subgroup();
    let mut seen: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
    let mut frontier = vec![(Vec::<usize>::new(), trivial)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (gens, u) in &frontier {
            for class in &classes {
                if u.contains(class[0]) {
                    continue;
                }
                let mut joined = gens.clone();
                joined.extend_from_slice(class);
                let j = g.generate(&joined);
                if seen.insert(j.clone()) {
                    next.push((joined, j));
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Subgroups `K` with `h ≤ K ≤ g`, endpoints included, sorted.
pub fn overgroups(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    if g.order() > LAYERED_SEARCH_CAP {
        return Err(Error::CapExceeded {
            what: "group order for overgroup enumeration",
            limit: LAYERED_SEARCH_CAP,
        });
    }
    let base = g.generators_of(h);
    let mut seen: HashSet<Subgroup> = HashSet::from([h.clone()]);
    let mut frontier = vec![(base, h.clone())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (gens, k) in &frontier {
            for a in 0..g.order() {
                if k.contains(a) {
                    continue;
                }
                let mut joined = gens.clone();
                joined.push(a);
                let j = g.generate(&joined);
                if seen.insert(j.clone()) {
                    next.push((joined, j));
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Normal subgroups stable under every automorphism, sorted.
pub fn characteristic_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let aut = automorphism_group(g)?;
    Ok(normal_subgroups(g)?
        .into_iter()
        .filter(|s| aut.stabilizes(s))
        .collect())
}

/// Nontrivial, with no characteristic subgroups besides `1` and itself.
pub fn is_characteristically_simple(g: &FiniteGroup) -> Result<bool> {
    Ok(g.order() > 1 && characteristic_subgroups(g)?.len() == 2)
}

/// The Sylow `p`-subgroup when it is unique, i.e. normal.
///
/// A Sylow subgroup is normal exactly when it contains every element of
/// `p`-power order, so it is unique iff those elements number `p^a`.
pub fn unique_sylow(g: &FiniteGroup, p: usize) -> Result<Option<Subgroup>> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if g.order() % p != 0 {
        return Err(Error::InvalidParameter(format!(
            "{p} does not divide |G| = {}",
            g.order()
        )));
    }
    let mut sylow_order = 1;
    while g.order() % (sylow_order * p) == 0 {
        sylow_order *= p;
    }
    let p_elements: Vec<usize> = (0..g.order())
        .filter(|&a| sylow_order % g.element_order(a) == 0)
        .collect();
    Ok((p_elements.len() == sylow_order).then(|| Subgroup::from_sorted(p_elements)))
}
