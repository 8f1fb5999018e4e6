//! Permutations of a finite point set `{0..n-1}` and explicit permutation groups.
//!
//! Everything here works with explicit element lists. At the sizes this crate
//! targets (degree at most 16, groups of at most a few thousand elements) that
//! is simpler and fast enough.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default cap on the number of elements produced by [`PermSet::closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// A bijection on `{0..n-1}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image list, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidPerm(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPerm(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u16>) -> Self {
        debug_assert!({
            let mut v = images.clone();
            v.sort_unstable();
            v.iter().enumerate().all(|(i, &x)| i == x as usize)
        });
        Perm { images }
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPerm(format!(
                        "point {a} out of range for degree {degree}"
                    )));
                }
                if touched[a] {
                    return Err(Error::InvalidPerm(format!("point {a} repeated in cycles")));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: the permutation sending `i` to `self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_same(other))
    }

    #[inline]
    pub(crate) fn compose_same(&self, other: &Perm) -> Perm {
        Perm {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm { images: inv }
    }

    /// `self ∘ p ∘ self⁻¹`.
    pub fn conjugate(&self, p: &Perm) -> Perm {
        let mut out = vec![0u16; p.degree()];
        for (i, &x) in p.images.iter().enumerate() {
            out[self.images[i] as usize] = self.images[x as usize];
        }
        Perm { images: out }
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn padded(&self, degree: usize) -> Result<Perm> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: degree,
            });
        }
        let mut images = self.images.clone();
        images.extend(self.degree() as u16..degree as u16);
        Ok(Perm { images })
    }

    /// Disjoint cycles of length at least 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths of every point orbit, fixed points included.
    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            loop {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
                if x == start {
                    break;
                }
            }
            out.push(len);
        }
        out
    }

    /// The common cycle length when every cycle (fixed points included) has the
    /// same length; `None` otherwise. The identity gives `Some(1)`.
    pub fn semiregular_cycle_type(&self) -> Option<usize> {
        let lens = self.cycle_lengths();
        let first = *lens.first().unwrap_or(&1);
        lens.iter().all(|&l| l == first).then_some(first)
    }

    pub fn order(&self) -> usize {
        self.cycle_lengths().into_iter().fold(1, lcm)
    }

    /// Parses cycle notation, taking the degree as one more than the largest point.
    pub fn parse_cycles(text: &str) -> Result<Perm> {
        let cycles = parse_cycle_list(text)?;
        let degree = cycles.iter().flatten().max().map_or(1, |&m| m + 1);
        Perm::from_cycles(degree, &cycles)
    }

    pub fn parse_with_degree(text: &str, degree: usize) -> Result<Perm> {
        Perm::from_cycles(degree, &parse_cycle_list(text)?)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let bad = |msg: &str| Error::InvalidPerm(format!("{msg} in {text:?}"));
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(bad("empty cycle notation"));
    }
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = inner
            .find(')')
            .ok_or_else(|| bad("unbalanced parenthesis"))?;
        let body = &inner[..close];
        let points = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad("bad point")))
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = inner[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Perm::parse_cycles(s)
    }
}

/// A sorted set of permutations of a common degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermSet {
    degree: usize,
    elements: Vec<Perm>,
    is_group: bool,
}

impl PermSet {
    /// An arbitrary set of permutations; deduplicated and sorted.
    pub fn from_elements(degree: usize, elements: impl IntoIterator<Item = Perm>) -> Result<Self> {
        let set: BTreeSet<Perm> = elements.into_iter().collect();
        for p in &set {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: p.degree(),
                });
            }
        }
        Ok(PermSet {
            degree,
            elements: set.into_iter().collect(),
            is_group: false,
        })
    }

    /// The subgroup generated by `gens`, built breadth-first.
    pub fn closure(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.compose_same(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "permutation group closure",
                            limit: cap,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(PermSet {
            degree,
            elements,
            is_group: true,
        })
    }

    /// Wraps an element list already known to be a group.
    pub(crate) fn group_unchecked(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        PermSet {
            degree,
            elements,
            is_group: true,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_group(&self) -> bool {
        self.is_group
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Exhaustive check of the subgroup axioms.
    pub fn check_group_axioms(&self) -> bool {
        if !self.contains(&Perm::identity(self.degree)) {
            return false;
        }
        self.elements.iter().all(|p| {
            self.contains(&p.inverse())
                && self
                    .elements
                    .iter()
                    .all(|q| self.contains(&p.compose_same(q)))
        })
    }

    pub fn orbit(&self, point: usize) -> BTreeSet<usize> {
        self.elements.iter().map(|p| p.apply(point)).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Transitive with trivial point stabilizers, i.e. transitive of order equal to the degree.
    pub fn is_regular(&self) -> bool {
        self.len() == self.degree && self.is_transitive()
    }

    /// True iff `g S g⁻¹ = S` for every `g` in `gens`.
    pub fn is_normalized_by(&self, gens: &[Perm]) -> bool {
        gens.iter().all(|g| {
            g.degree() == self.degree
                && self.elements.iter().all(|s| self.contains(&g.conjugate(s)))
        })
    }

    /// A small generating set chosen greedily from the canonical order.
    pub fn generators(&self) -> Vec<Perm> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut current = PermSet::closure(self.degree, &[], usize::MAX).expect("trivial group");
        // Prefer elements of large order; ties broken by canonical order.
        let mut candidates: Vec<&Perm> = self.elements.iter().collect();
        candidates.sort_by_key(|p| std::cmp::Reverse(p.order()));
        while current.len() < self.len() {
            let next = candidates
                .iter()
                .find(|p| !current.contains(p))
                .expect("set is a group containing the current subgroup");
            gens.push((*next).clone());
            current = PermSet::closure(self.degree, &gens, usize::MAX).expect("uncapped");
        }
        gens
    }
}
