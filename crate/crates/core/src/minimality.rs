//! Minimality of Hopf-Galois structures.
//!
//! The sub-Hopf algebras of a structure correspond to the subgroups of `N`
//! stable under conjugation by `λ(G)`. A structure is minimal when that
//! lattice has exactly two members. The remaining functions compute the
//! sufficient conditions that are cross-checked against the lattice: the
//! characteristic-subgroup obstruction, the normal-complement lower bound and
//! the certificate for holomorphs of characteristically simple groups.

use std::collections::{BTreeMap, HashSet};

use crate::engine::{
    coset_action, enumerate_with, CosetAction, ExtensionProblem, HGStructure, Limits,
};
use crate::error::{Error, Result};
use crate::group::{
    all_subgroups, characteristic_subgroups, holomorph, is_characteristically_simple,
    normal_subgroups, overgroups, FiniteGroup, Subgroup,
};
use crate::perm::PermSet;

/// The `λ(G)`-stable subgroups of `N`, as subgroups of
/// [`HGStructure::abstract_group`], sorted by order then members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubHopfLattice {
    pub stable: Vec<Subgroup>,
}

impl SubHopfLattice {
    pub fn len(&self) -> usize {
        self.stable.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stable.is_empty()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.stable.iter().map(Subgroup::order).collect()
    }
}

/// Distinct conjugation maps of `G` on `N`.
fn distinct_actions(s: &HGStructure) -> Vec<&[usize]> {
    let mut seen = HashSet::new();
    s.conjugation_maps()
        .iter()
        .map(Vec::as_slice)
        .filter(|m| seen.insert(*m))
        .collect()
}

fn is_stable(maps: &[&[usize]], u: &Subgroup) -> bool {
    maps.iter()
        .all(|m| u.members().iter().all(|&x| u.contains(m[x])))
}

/// Filters the full subgroup lattice of `N` by stability.
pub fn g_stable_subgroups(s: &HGStructure) -> Result<SubHopfLattice> {
    let maps = distinct_actions(s);
    let stable = all_subgroups(s.abstract_group())?
        .into_iter()
        .filter(|u| is_stable(&maps, u))
        .collect();
    Ok(SubHopfLattice { stable })
}

/// The same lattice built upwards: the least stable subgroup containing an
/// element is generated by its orbit, and every stable subgroup is a join of
/// those.
pub fn g_stable_subgroups_by_orbits(s: &HGStructure) -> SubHopfLattice {
    let n = s.abstract_group();
    let maps = distinct_actions(s);
    let hull = |a: usize| -> Subgroup {
        let mut orbit = vec![a];
        let mut i = 0;
        while i < orbit.len() {
            for m in &maps {
                let b = m[orbit[i]];
                if !orbit.contains(&b) {
                    orbit.push(b);
                }
            }
            i += 1;
        }
        n.generate(&orbit)
    };
    let mut hulls: Vec<Subgroup> = (0..n.order()).map(hull).collect();
    hulls.sort();
    hulls.dedup();
    let mut seen: HashSet<Subgroup> = hulls.iter().cloned().collect();
    let mut frontier = hulls.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for u in &frontier {
            for h in &hulls {
                if h.is_subset_of(u) {
                    continue;
                }
                let joined: Vec<usize> = u.members().iter().chain(h.members()).copied().collect();
                let j = n.generate(&joined);
                if seen.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut stable: Vec<Subgroup> = seen.into_iter().collect();
    stable.sort();
    SubHopfLattice { stable }
}

/// Exactly two sub-Hopf algebras.
pub fn is_minimal(s: &HGStructure) -> Result<bool> {
    if s.order() < 2 {
        return Err(Error::Precondition(
            "trivial structures are excluded".into(),
        ));
    }
    Ok(g_stable_subgroups(s)?.len() == 2)
}

/// The largest nontrivial proper characteristic subgroup of `N`, if any.
/// Its presence rules out minimality.
pub fn characteristic_obstruction(s: &HGStructure) -> Result<Option<Subgroup>> {
    let n = s.abstract_group();
    Ok(characteristic_subgroups(n)?
        .into_iter()
        .filter(|u| !u.is_trivial() && u.order() < n.order())
        .next_back())
}

/// Normal subgroups `M` of `G` with `M ∩ G' = 1` and `|M| |G'| = |G|`.
pub fn normal_complements(prob: &ExtensionProblem) -> Result<Vec<Subgroup>> {
    let target = prob.degree();
    Ok(normal_subgroups(prob.group())?
        .into_iter()
        .filter(|m| m.order() == target && m.intersection_order(prob.stabilizer()) == 1)
        .collect())
}

/// Normal complements with no nontrivial proper subgroup normal in `G`.
/// Each gives a minimal structure, so this bounds the minimal count below.
pub fn minimal_lower_bound(prob: &ExtensionProblem) -> Result<usize> {
    let normals = normal_subgroups(prob.group())?;
    let target = prob.degree();
    Ok(normals
        .iter()
        .filter(|m| m.order() == target && m.intersection_order(prob.stabilizer()) == 1)
        .filter(|m| {
            !normals
                .iter()
                .any(|u| !u.is_trivial() && u.order() < m.order() && u.is_subset_of(m))
        })
        .count())
}

/// The structure `λ(M)` of a normal complement `M` of `G'`.
pub fn complement_structure(action: &CosetAction, complement: &Subgroup) -> Result<HGStructure> {
    let prob = action.problem();
    let g = prob.group();
    let is_complement = complement.order() == prob.degree()
        && complement.intersection_order(prob.stabilizer()) == 1
        && g.is_normal(complement);
    if !is_complement {
        return Err(Error::Precondition(
            "not a normal complement of the stabilizer".into(),
        ));
    }
    let perms = complement
        .members()
        .iter()
        .map(|&m| action.lambda(m).clone());
    let set = PermSet::closure(action.degree(), &perms.collect::<Vec<_>>(), action.degree())?;
    HGStructure::new(set, action)
}

/// For characteristically simple `N`, forms `Hol(N)` over `Aut(N)` and checks
/// that the structure given by the translation copy of `N` is minimal.
pub fn holomorph_certificate(n: &FiniteGroup) -> Result<bool> {
    if !is_characteristically_simple(n)? {
        return Err(Error::Precondition(
            "group is not characteristically simple".into(),
        ));
    }
    let hol = holomorph(n)?;
    let prob = ExtensionProblem::new(hol.group().clone(), hol.aut_subgroup())?;
    let action = coset_action(&prob)?;
    let s = complement_structure(&action, &hol.product.normal_subgroup())?;
    is_minimal(&s)
}

/// `(#stable subgroups of N, #subgroups between G' and G)`, both counts
/// including the endpoints.
pub fn correspondence_stats(prob: &ExtensionProblem, s: &HGStructure) -> Result<(usize, usize)> {
    let subhopf = g_stable_subgroups(s)?.len();
    let intermediate = overgroups(prob.group(), prob.stabilizer())?.len();
    Ok((subhopf, intermediate))
}

/// One structure with its lattice and verdict.
#[derive(Clone, Debug)]
pub struct ClassifiedStructure {
    pub structure: HGStructure,
    pub lattice: SubHopfLattice,
    pub minimal: bool,
    pub obstruction: Option<Subgroup>,
    /// `λ⁻¹(N)` when `N ⊆ λ(G)`.
    pub preimage: Option<Subgroup>,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub problem: ExtensionProblem,
    /// Sorted by type name, then by the element list of `N`.
    pub structures: Vec<ClassifiedStructure>,
    pub intermediate_count: usize,
    pub normal_complements: Vec<Subgroup>,
    pub normal_complement_bound: usize,
    pub minimal_count: usize,
    pub nodes: u64,
}

impl ClassificationReport {
    pub fn has_structures(&self) -> bool {
        !self.structures.is_empty()
    }

    /// `type name → (structures, minimal structures)`.
    pub fn by_type(&self) -> BTreeMap<String, (usize, usize)> {
        let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for c in &self.structures {
            let e = out.entry(c.structure.type_name().to_string()).or_default();
            e.0 += 1;
            e.1 += usize::from(c.minimal);
        }
        out
    }
}

pub fn classify(prob: &ExtensionProblem) -> Result<ClassificationReport> {
    classify_with(prob, &Limits::default())
}

pub fn classify_with(prob: &ExtensionProblem, limits: &Limits) -> Result<ClassificationReport> {
    let action = coset_action(prob)?;
    let outcome = enumerate_with(&action, limits)?;
    let mut structures = outcome
        .structures
        .into_iter()
        .map(|s| {
            let lattice = g_stable_subgroups(&s)?;
            let minimal = lattice.len() == 2;
            let obstruction = characteristic_obstruction(&s)?;
            let preimage = s.preimage_in(&action);
            Ok(ClassifiedStructure {
                structure: s,
                lattice,
                minimal,
                obstruction,
                preimage,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    structures.sort_by(|a, b| {
        (a.structure.type_name(), a.structure.subgroup().elements())
            .cmp(&(b.structure.type_name(), b.structure.subgroup().elements()))
    });
    let minimal_count = structures.iter().filter(|c| c.minimal).count();
    Ok(ClassificationReport {
        problem: prob.clone(),
        intermediate_count: overgroups(prob.group(), prob.stabilizer())?.len(),
        normal_complements: normal_complements(prob)?,
        normal_complement_bound: minimal_lower_bound(prob)?,
        minimal_count,
        nodes: outcome.nodes,
        structures,
    })
}
