//! Abstract finite groups on indexed elements.
//!
//! A [`FiniteGroup`] has elements `0..order`, element `0` being the identity.
//! Groups of order at most [`TABLE_LIMIT`] carry a full Cayley table; larger
//! groups multiply on demand, either by composing permutations or from the
//! pair representation of a semidirect product.

mod aut;
mod construct;
mod gamma;
mod iso;
mod product;
mod subgroups;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::{Perm, PermSet};

pub use aut::{automorphism_group, holomorph, AutGroup, Holomorph};
pub use construct::{
    alternating, cyclic, dihedral, elementary_abelian, metacyclic, quaternion, symmetric,
    trivial_group,
};
pub(crate) use construct::{index_of as vector_index, is_prime, vector_of};
pub use gamma::{gamma_subgroups, verify_conjugation_identity, verify_inner_twist, GammaPair};
pub use iso::{are_isomorphic, find_isomorphism, fingerprint, iso_type, Fingerprint};
pub use product::{direct_product, semidirect_by_action, semidirect_product, GroupHom, Semidirect};
pub use subgroups::{
    all_subgroups, characteristic_subgroups, is_characteristically_simple, normal_subgroups,
    overgroups, unique_sylow, DEFAULT_SUBGROUP_CAP,
};

/// Groups up to this order get a materialized Cayley table.
pub const TABLE_LIMIT: usize = 1024;

/// An abstract finite group. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteGroup(Arc<Inner>);

struct Inner {
    order: usize,
    law: Law,
    inverses: Vec<u32>,
    labels: Vec<String>,
    perms: Option<Vec<Perm>>,
}

enum Law {
    Table(Vec<u32>),
    Perm(HashMap<Perm, u32>),
    /// `(n, h)` stored at `n + |N| * h`, multiplied as `(n1, h1)(n2, h2) = (n1 h1(n2), h1 h2)`.
    Pairs {
        normal: FiniteGroup,
        top: FiniteGroup,
        action: Arc<Vec<Vec<u32>>>,
    },
}

impl FiniteGroup {
    /// Builds a group from a multiplication function on `0..order`.
    ///
    /// Element 0 must be the identity. The table is checked to be a Latin
    /// square; associativity is the caller's responsibility (see
    /// [`FiniteGroup::check_axioms`]).
    pub fn from_fn(
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        labels: Vec<String>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "group order must be positive".into(),
            ));
        }
        if order > TABLE_LIMIT {
            return Err(Error::CapExceeded {
                what: "group order for a tabulated group",
                limit: TABLE_LIMIT,
            });
        }
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                if c >= order {
                    return Err(Error::InvalidParameter(format!(
                        "product {a}*{b} out of range"
                    )));
                }
                table[a * order + b] = c as u32;
            }
        }
        Self::from_table(order, table, labels)
    }

    fn from_table(order: usize, table: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        let mut inverses = vec![u32::MAX; order];
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::InvalidParameter(
                    "element 0 is not the identity".into(),
                ));
            }
            let mut row = FixedBitSet::with_capacity(order);
            for b in 0..order {
                let c = table[a * order + b];
                if row.put(c as usize) {
                    return Err(Error::InvalidParameter(format!(
                        "row {a} is not a bijection"
                    )));
                }
                if c == 0 {
                    inverses[a] = b as u32;
                }
            }
        }
        Ok(FiniteGroup(Arc::new(Inner {
            order,
            law: Law::Table(table),
            inverses,
            labels: fill_labels(labels, order),
            perms: None,
        })))
    }

    /// The abstract group of a permutation group, keeping the permutations.
    /// Element indices follow the canonical (sorted) order of `set`.
    pub fn from_perm_group(set: &PermSet) -> Result<Self> {
        if !set.is_group() {
            return Err(Error::Precondition(
                "permutation set is not flagged as a group".into(),
            ));
        }
        let elems = set.elements().to_vec();
        let order = elems.len();
        let index: HashMap<Perm, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let labels = elems.iter().map(|p| p.to_string()).collect();
        let inverses = elems.iter().map(|p| index[&p.inverse()]).collect();
        let law = if order <= TABLE_LIMIT {
            let mut table = vec![0u32; order * order];
            for (a, pa) in elems.iter().enumerate() {
                for (b, pb) in elems.iter().enumerate() {
                    table[a * order + b] = *index
                        .get(&pa.compose_same(pb))
                        .ok_or_else(|| Error::Precondition("set is not closed".into()))?;
                }
            }
            Law::Table(table)
        } else {
            Law::Perm(index)
        };
        Ok(FiniteGroup(Arc::new(Inner {
            order,
            law,
            inverses,
            labels,
            perms: Some(elems),
        })))
    }

    /// A group on pairs `(n, h)` with `h` acting on `normal` through `action[h]`.
    /// The action must already be validated.
    pub(crate) fn from_pairs(
        normal: &FiniteGroup,
        top: &FiniteGroup,
        action: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let (nn, nh) = (normal.order(), top.order());
        let order = nn * nh;
        let labels: Vec<String> = (0..order)
            .map(|i| format!("({}, {})", normal.label(i % nn), top.label(i / nn)))
            .collect();
        let mul = |a: usize, b: usize| {
            let (n1, h1) = (a % nn, a / nn);
            let (n2, h2) = (b % nn, b / nn);
            let n = normal.mul(n1, action[h1][n2] as usize);
            n + nn * top.mul(h1, h2)
        };
        if order <= TABLE_LIMIT {
            return FiniteGroup::from_fn(order, mul, labels);
        }
        let inverses = (0..order)
            .map(|a| {
                let (n, h) = (a % nn, a / nn);
                let hi = top.inv(h);
                (action[hi][normal.inv(n)] as usize + nn * hi) as u32
            })
            .collect();
        Ok(FiniteGroup(Arc::new(Inner {
            order,
            law: Law::Pairs {
                normal: normal.clone(),
                top: top.clone(),
                action: Arc::new(action),
            },
            inverses,
            labels,
            perms: None,
        })))
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.0.law {
            Law::Table(t) => t[a * self.0.order + b] as usize,
            Law::Perm(index) => {
                let perms = self
                    .0
                    .perms
                    .as_ref()
                    .expect("permutation law keeps its elements");
                index[&perms[a].compose_same(&perms[b])] as usize
            }
            Law::Pairs {
                normal,
                top,
                action,
            } => {
                let nn = normal.order();
                let (n1, h1) = (a % nn, a / nn);
                let (n2, h2) = (b % nn, b / nn);
                normal.mul(n1, action[h1][n2] as usize) + nn * top.mul(h1, h2)
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverses[a] as usize
    }

    /// `a b a⁻¹`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn label(&self, a: usize) -> &str {
        &self.0.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    /// The permutation behind element `a` when the group was built from permutations.
    pub fn perm(&self, a: usize) -> Option<&Perm> {
        self.0.perms.as_ref().map(|p| &p[a])
    }

    pub fn perm_degree(&self) -> Option<usize> {
        self.0.perms.as_ref().map(|p| p[0].degree())
    }

    /// Index of a permutation in a permutation-built group.
    pub fn index_of_perm(&self, p: &Perm) -> Option<usize> {
        let perms = self.0.perms.as_ref()?;
        match &self.0.law {
            Law::Perm(index) => index.get(p).map(|&i| i as usize),
            _ => perms.binary_search(p).ok(),
        }
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order()).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generating_set();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generating_set();
        Subgroup::from_sorted(
            (0..self.order())
                .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
                .collect(),
        )
    }

    /// Exhaustive associativity, identity and inverse check.
    pub fn check_axioms(&self) -> bool {
        let m = self.order();
        (0..m).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a && self.mul(a, self.inv(a)) == 0)
            && (0..m).all(|a| {
                (0..m).all(|b| {
                    let ab = self.mul(a, b);
                    (0..m).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                })
            })
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = FixedBitSet::with_capacity(self.order());
        seen.insert(0);
        let mut members = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen.put(y) {
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup::from_sorted(members)
    }

    /// A small generating set: greedily add the element of largest order not
    /// yet generated.
    pub fn generating_set(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut candidates: Vec<usize> = (1..self.order()).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(orders[a]), a));
        let mut gens = Vec::new();
        let mut current = self.generate(&[]);
        while current.order() < self.order() {
            let next = *candidates
                .iter()
                .find(|&&a| !current.contains(a))
                .expect("group is generated by its elements");
            gens.push(next);
            current = self.generate(&gens);
        }
        gens
    }

    /// A small generating set of a subgroup, picked in member order.
    pub fn generators_of(&self, s: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for &a in s.members() {
            if !current.contains(a) {
                gens.push(a);
                current = self.generate(&gens);
                if current.order() == s.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order()).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(vec![0])
    }

    /// Validates an element list as a subgroup.
    pub fn subgroup(&self, members: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&a| a >= self.order()) {
            return Err(Error::InvalidParameter(
                "subgroup element out of range".into(),
            ));
        }
        let s = Subgroup::from_sorted(members);
        let closed = s.contains(0)
            && s.members.iter().all(|&a| {
                s.contains(self.inv(a)) && s.members.iter().all(|&b| s.contains(self.mul(a, b)))
            });
        if !closed {
            return Err(Error::InvalidParameter(
                "element set is not a subgroup".into(),
            ));
        }
        Ok(s)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        let gens = self.generating_set();
        gens.iter()
            .all(|&g| s.members.iter().all(|&x| s.contains(self.conj(g, x))))
    }

    /// The subgroup as a group of its own, with element `i` of the result
    /// standing for `s.members()[i]`.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> Result<FiniteGroup> {
        let pos: HashMap<usize, usize> =
            s.members.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let labels = s
            .members
            .iter()
            .map(|&a| self.label(a).to_string())
            .collect();
        match &self.0.perms {
            Some(perms) => {
                let elems: Vec<Perm> = s.members.iter().map(|&a| perms[a].clone()).collect();
                let degree = elems[0].degree();
                FiniteGroup::from_perm_group(&PermSet::group_unchecked(degree, elems))
            }
            None => FiniteGroup::from_fn(
                s.order(),
                |i, j| pos[&self.mul(s.members[i], s.members[j])],
                labels,
            ),
        }
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let gens = self.generating_set();
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut classes = Vec::new();
        for a in 0..self.order() {
            if seen.contains(a) {
                continue;
            }
            seen.insert(a);
            let mut class = vec![a];
            let mut i = 0;
            while i < class.len() {
                let x = class[i];
                for &g in &gens {
                    let y = self.conj(g, x);
                    if !seen.put(y) {
                        class.push(y);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }
}

fn fill_labels(mut labels: Vec<String>, order: usize) -> Vec<String> {
    if labels.len() != order {
        labels = (0..order).map(|i| format!("g{i}")).collect();
    }
    labels
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order())
    }
}

/// A subgroup, given by the sorted indices of its members in some parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.members.iter().filter(|&&a| other.contains(a)).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// By order, then by member list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}
