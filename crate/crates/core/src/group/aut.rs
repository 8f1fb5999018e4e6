//! Automorphism groups and holomorphs.

use super::iso::search_isomorphisms;
use super::{semidirect_by_action, FiniteGroup, Semidirect, Subgroup};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermSet};

/// Default cap on `|N|` for automorphism computations.
pub const DEFAULT_AUT_CAP: usize = 120;

/// `Aut(N)` as an abstract group whose elements carry their action on `N`.
///
/// Element `a` of [`AutGroup::group`] is the automorphism [`AutGroup::map`]`(a)`;
/// the group law is composition, `a * b = map(a) ∘ map(b)`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    base: FiniteGroup,
    group: FiniteGroup,
    maps: Vec<Vec<usize>>,
}

impl AutGroup {
    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn map(&self, a: usize) -> &[usize] {
        &self.maps[a]
    }

    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.maps[a][x]
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        let p = Perm::from_images(map.to_vec()).ok()?;
        self.group.index_of_perm(&p)
    }

    /// The inner automorphism `σ_g : x ↦ g x g⁻¹`.
    pub fn inner(&self, g: usize) -> usize {
        let map: Vec<usize> = (0..self.base.order())
            .map(|x| self.base.conj(g, x))
            .collect();
        self.index_of(&map)
            .expect("inner automorphisms are automorphisms")
    }

    /// Whether a subgroup of the base group is stable under every automorphism.
    pub fn stabilizes(&self, s: &Subgroup) -> bool {
        self.group
            .generating_set()
            .iter()
            .all(|&a| s.members().iter().all(|&x| s.contains(self.maps[a][x])))
    }
}

/// All automorphisms of `n`, found by backtracking over generator images.
pub fn automorphism_group(n: &FiniteGroup) -> Result<AutGroup> {
    automorphism_group_capped(n, DEFAULT_AUT_CAP)
}

pub fn automorphism_group_capped(n: &FiniteGroup, cap: usize) -> Result<AutGroup> {
    if n.order() > cap {
        return Err(Error::CapExceeded {
            what: "order of a group whose automorphisms are computed",
            limit: cap,
        });
    }
    let maps = search_isomorphisms(n, n, usize::MAX);
    let perms: Vec<Perm> = maps
        .iter()
        .map(|m| Perm::from_images(m.clone()).expect("isomorphisms are bijections"))
        .collect();
    let set = PermSet::group_unchecked(n.order(), perms);
    let group = FiniteGroup::from_perm_group(&set)?;
    let maps = set
        .elements()
        .iter()
        .map(|p| p.images().collect())
        .collect();
    Ok(AutGroup {
        base: n.clone(),
        group,
        maps,
    })
}

/// `Hol(N) = N ⋊ Aut(N)` with its pair coordinates.
#[derive(Clone, Debug)]
pub struct Holomorph {
    pub aut: AutGroup,
    pub product: Semidirect,
}

impl Holomorph {
    pub fn group(&self) -> &FiniteGroup {
        &self.product.group
    }

    pub fn normal(&self) -> &FiniteGroup {
        &self.product.normal
    }

    /// The element `(x, θ)`.
    pub fn pair(&self, x: usize, theta: usize) -> usize {
        self.product.pair(x, theta)
    }

    pub fn split(&self, a: usize) -> (usize, usize) {
        self.product.split(a)
    }

    /// The copy `{(1, θ)}` of `Aut(N)`.
    pub fn aut_subgroup(&self) -> Subgroup {
        self.product.complement()
    }

    pub fn generators(&self) -> Vec<usize> {
        self.product.generators()
    }
}

pub fn holomorph(n: &FiniteGroup) -> Result<Holomorph> {
    let aut = automorphism_group(n)?;
    let action = aut.maps.clone();
    let product = semidirect_by_action(n, &aut.group, action)?;
    Ok(Holomorph { aut, product })
}
