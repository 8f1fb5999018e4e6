//! Homomorphisms, direct products and semidirect products.

use std::collections::VecDeque;

use super::{AutGroup, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism given by its image table on source elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    images: Vec<usize>,
    target_order: usize,
}

impl GroupHom {
    /// Checks multiplicativity against the source generators, which is enough:
    /// `f(x g) = f(x) f(g)` for all `x` and generators `g` forces `f(xy) = f(x) f(y)`.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::NotHomomorphism(
                "image table has the wrong length".into(),
            ));
        }
        if images.iter().any(|&y| y >= target.order()) {
            return Err(Error::NotHomomorphism("image out of range".into()));
        }
        if images[0] != 0 {
            return Err(Error::NotHomomorphism(
                "identity not sent to identity".into(),
            ));
        }
        let gens = source.generating_set();
        for x in 0..source.order() {
            for &g in &gens {
                if images[source.mul(x, g)] != target.mul(images[x], images[g]) {
                    return Err(Error::NotHomomorphism(format!(
                        "f({} * {}) differs from f({}) * f({})",
                        source.label(x),
                        source.label(g),
                        source.label(x),
                        source.label(g)
                    )));
                }
            }
        }
        Ok(GroupHom {
            images,
            target_order: target.order(),
        })
    }

    /// Extends an assignment on generators, failing if it is not consistent.
    pub fn from_generators(
        source: &FiniteGroup,
        target: &FiniteGroup,
        assignment: &[(usize, usize)],
    ) -> Result<Self> {
        let gens: Vec<usize> = assignment.iter().map(|&(g, _)| g).collect();
        if source.generate(&gens).order() != source.order() {
            return Err(Error::NotHomomorphism(
                "assignment does not cover a generating set".into(),
            ));
        }
        let mut images = vec![usize::MAX; source.order()];
        images[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &(g, img) in assignment {
                let y = source.mul(x, g);
                let fy = target.mul(images[x], img);
                if images[y] == usize::MAX {
                    images[y] = fy;
                    queue.push_back(y);
                } else if images[y] != fy {
                    return Err(Error::NotHomomorphism(
                        "generator images violate a relation".into(),
                    ));
                }
            }
        }
        GroupHom::new(source, target, images)
    }

    pub fn image(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_sorted(
            (0..self.images.len())
                .filter(|&a| self.images[a] == 0)
                .collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }
}

/// A semidirect product `N ⋊ H` together with its pair coordinates.
///
/// The pair `(n, h)` is element `n + |N| h`; multiplication is
/// `(n1, h1)(n2, h2) = (n1 · h1(n2), h1 h2)`.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: FiniteGroup,
    pub normal: FiniteGroup,
    pub top: FiniteGroup,
    action: Vec<Vec<u32>>,
}

impl Semidirect {
    pub fn pair(&self, n: usize, h: usize) -> usize {
        n + self.normal.order() * h
    }

    pub fn split(&self, a: usize) -> (usize, usize) {
        (a % self.normal.order(), a / self.normal.order())
    }

    /// Image of `n` under the automorphism attached to `h`.
    pub fn act(&self, h: usize, n: usize) -> usize {
        self.action[h][n] as usize
    }

    /// `{(n, 1)}`.
    pub fn normal_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.normal.order()).collect())
    }

    /// `{(1, h)}`.
    pub fn complement(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.top.order()).map(|h| self.pair(0, h)).collect())
    }

    /// Generators built from generators of both factors.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = self.normal.generating_set();
        gens.extend(
            self.top
                .generating_set()
                .into_iter()
                .map(|h| self.pair(0, h)),
        );
        gens
    }
}

/// `N ⋊ H` with `action[h]` the automorphism of `N` attached to `h`, given as an
/// image list. The action is validated: each entry must be an automorphism and
/// `h ↦ action[h]` must be a homomorphism.
pub fn semidirect_by_action(
    normal: &FiniteGroup,
    top: &FiniteGroup,
    action: Vec<Vec<usize>>,
) -> Result<Semidirect> {
    let nn = normal.order();
    if action.len() != top.order() || action.iter().any(|a| a.len() != nn) {
        return Err(Error::NotHomomorphism(
            "action table has the wrong shape".into(),
        ));
    }
    let ngens = normal.generating_set();
    for (h, map) in action.iter().enumerate() {
        let mut seen = vec![false; nn];
        for &y in map {
            if y >= nn || std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotHomomorphism(format!(
                    "action of {h} is not a bijection"
                )));
            }
        }
        for x in 0..nn {
            for &g in &ngens {
                if map[normal.mul(x, g)] != normal.mul(map[x], map[g]) {
                    return Err(Error::NotHomomorphism(format!(
                        "action of {} is not an automorphism",
                        top.label(h)
                    )));
                }
            }
        }
    }
    for &h1 in &top.generating_set() {
        for h2 in 0..top.order() {
            let h = top.mul(h1, h2);
            if (0..nn).any(|x| action[h][x] != action[h1][action[h2][x]]) {
                return Err(Error::NotHomomorphism(
                    "action is not a homomorphism into Aut(N)".into(),
                ));
            }
        }
    }
    if (0..nn).any(|x| action[0][x] != x) {
        return Err(Error::NotHomomorphism(
            "identity does not act trivially".into(),
        ));
    }
    let action: Vec<Vec<u32>> = action
        .into_iter()
        .map(|m| m.into_iter().map(|x| x as u32).collect())
        .collect();
    let group = FiniteGroup::from_pairs(normal, top, action.clone())?;
    Ok(Semidirect {
        group,
        normal: normal.clone(),
        top: top.clone(),
        action,
    })
}

/// `N ⋊_φ H` for `φ: H → Aut(N)`.
pub fn semidirect_product(
    normal: &FiniteGroup,
    top: &FiniteGroup,
    phi: &GroupHom,
    aut: &AutGroup,
) -> Result<Semidirect> {
    if phi.images().len() != top.order() || phi.target_order() != aut.order() {
        return Err(Error::NotHomomorphism(
            "phi does not map H into Aut(N)".into(),
        ));
    }
    if aut.base().order() != normal.order() {
        return Err(Error::NotHomomorphism(
            "automorphism group belongs to another group".into(),
        ));
    }
    let action = (0..top.order())
        .map(|h| aut.map(phi.image(h)).to_vec())
        .collect();
    semidirect_by_action(normal, top, action)
}

/// `A × B`, stored as pairs `a + |A| b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let trivial: Vec<usize> = (0..a.order()).collect();
    Ok(semidirect_by_action(a, b, vec![trivial; b.order()])?.group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{automorphism_group, cyclic, elementary_abelian, symmetric};

    #[test]
    fn direct_product_orders() {
        let c2 = cyclic(2).unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        assert_eq!(v.order(), 4);
        assert!(v.element_orders().iter().all(|&o| o <= 2));
        assert!(v.check_axioms());
    }

    #[test]
    fn semidirect_with_trivial_action_is_direct() {
        let a = symmetric(3).unwrap();
        let b = cyclic(4).unwrap();
        let direct = direct_product(&a, &b).unwrap();
        let sd = semidirect_by_action(&a, &b, vec![(0..6).collect(); 4]).unwrap();
        for x in 0..24 {
            for y in 0..24 {
                assert_eq!(direct.mul(x, y), sd.group.mul(x, y));
            }
        }
    }

    #[test]
    fn rejects_non_automorphism_action() {
        let c4 = cyclic(4).unwrap();
        let c2 = cyclic(2).unwrap();
        // x -> x + 1 is not a homomorphism of C4
        let bad = vec![(0..4).collect(), vec![1, 2, 3, 0]];
        assert!(semidirect_by_action(&c4, &c2, bad).is_err());
        // x -> -x on C4 from a C3 cannot be a homomorphism (order mismatch)
        let c3 = cyclic(3).unwrap();
        let inv: Vec<usize> = vec![0, 3, 2, 1];
        assert!(semidirect_by_action(&c4, &c3, vec![(0..4).collect(), inv.clone(), inv]).is_err());
    }

    #[test]
    fn semidirect_via_hom_into_aut() {
        let v = elementary_abelian(2, 2).unwrap();
        let aut = automorphism_group(&v).unwrap();
        let c3 = cyclic(3).unwrap();
        let order3 = (0..aut.order())
            .find(|&a| aut.group().element_order(a) == 3)
            .unwrap();
        let phi = GroupHom::from_generators(&c3, aut.group(), &[(1, order3)]).unwrap();
        let sd = semidirect_product(&v, &c3, &phi, &aut).unwrap();
        assert_eq!(sd.group.order(), 12);
        assert!(sd.group.is_normal(&sd.normal_subgroup()));
        assert!(!sd.group.is_abelian());
    }

    #[test]
    fn hom_from_generators_detects_relations() {
        let c4 = cyclic(4).unwrap();
        let c6 = cyclic(6).unwrap();
        // 1 -> 3 in C6 has order 2, which divides 4
        assert!(GroupHom::from_generators(&c4, &c6, &[(1, 3)]).is_ok());
        // 1 -> 1 in C6 has order 6, not dividing 4
        assert!(GroupHom::from_generators(&c4, &c6, &[(1, 1)]).is_err());
    }
}
