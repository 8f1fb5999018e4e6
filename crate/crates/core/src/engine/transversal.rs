//! Point-transversal search over all regular subgroups of `Sym(n)`.
//!
//! A regular subgroup is fixed by its transversal `t_0, ..., t_{n-1}` with
//! `t_i(0) = i`. The search assigns `t_j` for the least uncovered point `j`,
//! closes, and keeps the group while it stays semiregular. Nothing here knows
//! about `λ(G)`; normalization is filtered afterwards.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::CosetAction;
use crate::error::{Error, Result};
use crate::perm::{Perm, PermSet};

/// Degree cap for the transversal search.
pub const TRANSVERSAL_DEGREE_CAP: usize = 8;

/// Regular subgroups of `Sym(n)` normalized by `λ(G)`, sorted.
pub fn enumerate_by_transversals(action: &CosetAction) -> Result<Vec<PermSet>> {
    let all = regular_subgroups(action.degree())?;
    Ok(all
        .iter()
        .filter(|s| s.is_normalized_by(action.generators()))
        .cloned()
        .collect())
}

/// Every regular subgroup of `Sym(degree)`, sorted by element list. Results
/// are cached per degree.
pub fn regular_subgroups(degree: usize) -> Result<Arc<Vec<PermSet>>> {
    if degree > TRANSVERSAL_DEGREE_CAP {
        return Err(Error::CapExceeded {
            what: "degree for the transversal search",
            limit: TRANSVERSAL_DEGREE_CAP,
        });
    }
    if degree == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<PermSet>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("cache lock").get(&degree) {
        return Ok(hit.clone());
    }
    let mut found = BTreeSet::new();
    let start = PermSet::closure(degree, &[], 1)?;
    if degree == 1 {
        found.insert(start.elements().to_vec());
    } else {
        extend(degree, &start, &mut found);
    }
    let sets: Vec<PermSet> = found
        .into_iter()
        .map(|elements| PermSet::closure(degree, &elements, degree))
        .collect::<Result<_>>()?;
    let sets = Arc::new(sets);
    cache
        .lock()
        .expect("cache lock")
        .insert(degree, sets.clone());
    Ok(sets)
}

fn extend(n: usize, group: &PermSet, found: &mut BTreeSet<Vec<Perm>>) {
    let covered: BTreeSet<usize> = group.orbit(0);
    let j = (0..n)
        .find(|i| !covered.contains(i))
        .expect("group is not yet transitive");
    for t in fixed_point_free_with(n, j) {
        // t composed with any element of the group must leave the covered points.
        if group
            .elements()
            .iter()
            .any(|p| covered.contains(&t.apply(p.apply(0))))
        {
            continue;
        }
        let mut gens = group.generators();
        gens.push(t);
        let Ok(next) = PermSet::closure(n, &gens, n) else {
            continue;
        };
        let semiregular = next.orbit(0).len() == next.len()
            && next
                .elements()
                .iter()
                .all(|p| p.is_identity() || (0..n).all(|i| p.apply(i) != i));
        if !semiregular || n % next.len() != 0 {
            continue;
        }
        if next.len() == n {
            found.insert(next.elements().to_vec());
        } else {
            extend(n, &next, found);
        }
    }
}

/// Permutations `t` with `t(0) = j` whose powers are all fixed-point-free or
/// the identity, i.e. products of disjoint cycles of one common length.
fn fixed_point_free_with(n: usize, j: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for len in (2..=n).filter(|l| n % l == 0) {
        let mut cycles: Vec<Vec<usize>> = vec![vec![0, j]];
        let mut remaining: Vec<usize> = (1..n).filter(|&i| i != j).collect();
        arrange(n, len, &mut cycles, &mut remaining, &mut out);
    }
    out.retain(|p| p.semiregular_cycle_type().is_some());
    out
}

fn arrange(
    n: usize,
    len: usize,
    cycles: &mut Vec<Vec<usize>>,
    remaining: &mut Vec<usize>,
    out: &mut Vec<Perm>,
) {
    let last = cycles.len() - 1;
    if cycles[last].len() == len {
        if remaining.is_empty() {
            out.push(Perm::from_cycles(n, cycles).expect("disjoint cycles"));
            return;
        }
        // A new cycle starts at the least remaining point.
        let head = remaining.remove(0);
        cycles.push(vec![head]);
        arrange(n, len, cycles, remaining, out);
        cycles.pop();
        remaining.insert(0, head);
        return;
    }
    for k in 0..remaining.len() {
        let p = remaining.remove(k);
        cycles[last].push(p);
        arrange(n, len, cycles, remaining, out);
        cycles[last].pop();
        remaining.insert(k, p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_perms(n: usize) -> Vec<Perm> {
        fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Perm>) {
            if prefix.len() == n {
                out.push(Perm::from_images(prefix.clone()).unwrap());
                return;
            }
            for v in 0..n {
                if !prefix.contains(&v) {
                    prefix.push(v);
                    rec(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), n, &mut out);
        out
    }

    #[test]
    fn degree_four_matches_subset_brute_force() {
        // Size-4 subsets of Sym(4) containing the identity, closed under
        // composition and transitive.
        let perms = all_perms(4);
        let id = Perm::identity(4);
        let rest: Vec<&Perm> = perms.iter().filter(|p| **p != id).collect();
        let mut count = 0;
        for a in 0..rest.len() {
            for b in a + 1..rest.len() {
                for c in b + 1..rest.len() {
                    let set = [&id, rest[a], rest[b], rest[c]];
                    let closed = set
                        .iter()
                        .all(|x| set.iter().all(|y| set.contains(&&x.compose(y).unwrap())));
                    let transitive = (0..4).all(|i| set.iter().any(|x| x.apply(0) == i));
                    if closed && transitive {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 4);
        assert_eq!(regular_subgroups(4).unwrap().len(), count);
    }

    #[test]
    fn regular_subgroup_counts() {
        // The regular copies of N are the conjugates of its regular
        // representation, whose normalizer is Hol(N): n! / (n |Aut(N)|) each.
        // n = 5: C5 only, 120 / 20.
        assert_eq!(regular_subgroups(5).unwrap().len(), 6);
        // n = 6: C6 gives 720 / 12, S3 gives 720 / 36.
        assert_eq!(regular_subgroups(6).unwrap().len(), 60 + 20);
        // n = 8: C8 4, C2xC4 8, E(2,3) 168, D4 8, Q8 24.
        let expect = [4, 8, 168, 8, 24]
            .iter()
            .map(|a| 40320 / (8 * a))
            .sum::<usize>();
        assert_eq!(regular_subgroups(8).unwrap().len(), expect);
    }

    #[test]
    fn all_results_are_regular_groups() {
        for s in regular_subgroups(6).unwrap().iter() {
            assert!(s.is_regular());
            assert!(s.check_group_axioms());
        }
    }

    #[test]
    fn candidate_lists() {
        assert_eq!(fixed_point_free_with(4, 1).len(), 2 + 1);
        assert_eq!(fixed_point_free_with(6, 3).len(), 24 + 8 + 3);
    }

    #[test]
    fn degree_cap() {
        assert!(regular_subgroups(9).is_err());
    }
}
