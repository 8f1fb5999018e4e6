//! Extension problems, the left-translation action on cosets, and the search
//! for regular permutation subgroups normalized by that action.
//!
//! Two independent searches are provided. [`enumerate_regular_normalized`]
//! grows a partial subgroup by whole conjugation orbits and is the one used in
//! practice; [`enumerate_by_transversals`] finds every regular subgroup of the
//! symmetric group by point transversals and filters afterwards, which is only
//! feasible for small degrees and exists to cross-check the first.

mod search;
mod transversal;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{automorphism_group, iso_type, AutGroup, FiniteGroup, GroupHom, Subgroup};
use crate::perm::{Perm, PermSet};

pub use search::{
    enumerate_regular_normalized, enumerate_with, Limits, SearchOutcome, COMPACT_DEGREE_LIMIT,
};
pub use transversal::{enumerate_by_transversals, regular_subgroups, TRANSVERSAL_DEGREE_CAP};

/// A pair `G ⊇ G'` describing a separable extension through its Galois
/// closure. The degree of the extension is the index `[G : G']`.
#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    group: FiniteGroup,
    stabilizer: Subgroup,
}

impl ExtensionProblem {
    /// Validates that `stabilizer` is a subgroup of `group` with index above 1.
    pub fn new(group: FiniteGroup, stabilizer: Subgroup) -> Result<Self> {
        let stabilizer = group.subgroup(stabilizer.members().iter().copied())?;
        if stabilizer.order() == group.order() {
            return Err(Error::InvalidParameter(
                "extensions of degree 1 are excluded".into(),
            ));
        }
        Ok(ExtensionProblem { group, stabilizer })
    }

    /// The Galois case, with trivial `G'`.
    pub fn galois(group: FiniteGroup) -> Result<Self> {
        let trivial = group.trivial_subgroup();
        Self::new(group, trivial)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn stabilizer(&self) -> &Subgroup {
        &self.stabilizer
    }

    pub fn degree(&self) -> usize {
        self.group.order() / self.stabilizer.order()
    }

    pub fn is_galois(&self) -> bool {
        self.stabilizer.is_trivial()
    }

    /// The largest normal subgroup of `G` inside `G'`.
    pub fn core(&self) -> Subgroup {
        let g = &self.group;
        let gens = g.generating_set();
        let members: Vec<usize> = self
            .stabilizer
            .members()
            .iter()
            .copied()
            .filter(|&h| {
                // h lies in the core iff every conjugate of h lies in G'.
                let mut seen = vec![false; g.order()];
                let mut stack = vec![h];
                seen[h] = true;
                while let Some(x) = stack.pop() {
                    if !self.stabilizer.contains(x) {
                        return false;
                    }
                    for &s in &gens {
                        let y = g.conj(s, x);
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                true
            })
            .collect();
        g.subgroup(members).expect("the core is a subgroup")
    }
}

/// `G` acting on the left cosets of `G'` by left translation.
///
/// Coset `i` is represented by `representatives[i]`; coset `0` is `G'` itself.
#[derive(Clone, Debug)]
pub struct CosetAction {
    problem: ExtensionProblem,
    representatives: Vec<usize>,
    coset_of: Vec<usize>,
    images: Vec<Perm>,
    generator_indices: Vec<usize>,
    generators: Vec<Perm>,
    image: PermSet,
    preimage: HashMap<Perm, usize>,
}

impl CosetAction {
    /// Fails with [`Error::NotNormalClosure`] when the action is not faithful,
    /// that is when `G'` contains a nontrivial normal subgroup of `G`.
    pub fn new(problem: &ExtensionProblem) -> Result<Self> {
        let g = problem.group();
        let h = problem.stabilizer();
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut representatives = Vec::with_capacity(problem.degree());
        for x in 0..g.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(x);
            for &y in h.members() {
                coset_of[g.mul(x, y)] = c;
            }
        }
        let n = representatives.len();
        let images: Vec<Perm> = (0..g.order())
            .map(|a| {
                let imgs = representatives
                    .iter()
                    .map(|&r| coset_of[g.mul(a, r)])
                    .collect();
                Perm::from_images(imgs).expect("left translation permutes cosets")
            })
            .collect();
        let kernel = images.iter().filter(|p| p.is_identity()).count();
        if kernel > 1 {
            return Err(Error::NotNormalClosure { core_order: kernel });
        }
        let generator_indices = g.generating_set();
        let generators = generator_indices
            .iter()
            .map(|&a| images[a].clone())
            .collect();
        let preimage = images
            .iter()
            .enumerate()
            .map(|(a, p)| (p.clone(), a))
            .collect();
        let image = PermSet::group_unchecked(n, images.clone());
        Ok(CosetAction {
            problem: problem.clone(),
            representatives,
            coset_of,
            images,
            generator_indices,
            generators,
            image,
            preimage,
        })
    }

    pub fn problem(&self) -> &ExtensionProblem {
        &self.problem
    }

    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    /// `λ(g)` for the element `g` of `G`.
    pub fn lambda(&self, g: usize) -> &Perm {
        &self.images[g]
    }

    /// Images of a generating set of `G`.
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    /// `λ(G)` as a permutation group.
    pub fn image(&self) -> &PermSet {
        &self.image
    }

    /// The element of `G` acting as `p`, if any.
    pub fn preimage(&self, p: &Perm) -> Option<usize> {
        self.preimage.get(p).copied()
    }

    pub fn representative(&self, coset: usize) -> usize {
        self.representatives[coset]
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }
}

pub fn coset_action(problem: &ExtensionProblem) -> Result<CosetAction> {
    CosetAction::new(problem)
}

/// One Hopf-Galois structure: a regular subgroup `N` normalized by `λ(G)`.
#[derive(Clone, Debug)]
pub struct HGStructure {
    subgroup: PermSet,
    group: FiniteGroup,
    type_name: String,
    /// `conjugation[g][i]` is the index in `N` of `λ(g) n_i λ(g)⁻¹`.
    conjugation: Vec<Vec<usize>>,
}

impl HGStructure {
    pub fn new(subgroup: PermSet, action: &CosetAction) -> Result<Self> {
        if subgroup.degree() != action.degree() {
            return Err(Error::DegreeMismatch {
                left: subgroup.degree(),
                right: action.degree(),
            });
        }
        if !subgroup.is_group() || !subgroup.is_regular() {
            return Err(Error::Precondition("subgroup is not regular".into()));
        }
        if !subgroup.is_normalized_by(action.generators()) {
            return Err(Error::NotNormalized);
        }
        let group = FiniteGroup::from_perm_group(&subgroup)?;
        let type_name = iso_type(&group)?;
        let conjugation = (0..action.problem().group().order())
            .map(|g| conjugation_map(&subgroup, action.lambda(g)))
            .collect();
        Ok(HGStructure {
            subgroup,
            group,
            type_name,
            conjugation,
        })
    }

    pub fn subgroup(&self) -> &PermSet {
        &self.subgroup
    }

    /// `N` as an abstract group; element `i` is `subgroup().elements()[i]`.
    pub fn abstract_group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn type_name(&self) -> &str {
        &self.type_name
    }

    pub fn order(&self) -> usize {
        self.subgroup.len()
    }

    /// How `g ∈ G` permutes the elements of `N` under conjugation by `λ(g)`.
    pub fn conjugation_map(&self, g: usize) -> &[usize] {
        &self.conjugation[g]
    }

    pub fn conjugation_maps(&self) -> &[Vec<usize>] {
        &self.conjugation
    }

    pub fn generators(&self) -> Vec<Perm> {
        self.subgroup.generators()
    }

    /// `λ⁻¹(N)` when `N ⊆ λ(G)`.
    pub fn preimage_in(&self, action: &CosetAction) -> Option<Subgroup> {
        let members: Option<Vec<usize>> = self
            .subgroup
            .elements()
            .iter()
            .map(|p| action.preimage(p))
            .collect();
        members.map(|m| {
            action
                .problem()
                .group()
                .subgroup(m)
                .expect("preimage of a subgroup under an injective map")
        })
    }
}

fn conjugation_map(subgroup: &PermSet, by: &Perm) -> Vec<usize> {
    subgroup
        .elements()
        .iter()
        .map(|n| {
            subgroup
                .index_of(&by.conjugate(n))
                .expect("subgroup is normalized")
        })
        .collect()
}

/// The homomorphism `G → Aut(N)` induced by conjugation through `λ`.
#[derive(Clone, Debug)]
pub struct InducedAction {
    pub aut: AutGroup,
    pub hom: GroupHom,
}

impl InducedAction {
    /// Size of the image of `G` in `Aut(N)`.
    pub fn image_order(&self) -> usize {
        let mut seen: Vec<usize> = self.hom.images().to_vec();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.hom.images().iter().all(|&a| a == 0)
    }
}

pub fn induced_g_action(subgroup: &PermSet, action: &CosetAction) -> Result<InducedAction> {
    if !subgroup.is_group() {
        return Err(Error::Precondition("permutation set is not a group".into()));
    }
    if !subgroup.is_normalized_by(action.generators()) {
        return Err(Error::NotNormalized);
    }
    let n = FiniteGroup::from_perm_group(subgroup)?;
    let aut = automorphism_group(&n)?;
    let g = action.problem().group();
    let images = (0..g.order())
        .map(|a| {
            let map = conjugation_map(subgroup, action.lambda(a));
            aut.index_of(&map)
                .expect("conjugation restricts to an automorphism")
        })
        .collect();
    let hom = GroupHom::new(g, aut.group(), images)?;
    Ok(InducedAction { aut, hom })
}
