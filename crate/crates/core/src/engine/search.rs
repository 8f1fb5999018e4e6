//! Orbit-closure search for regular subgroups normalized by `λ(G)`.
//!
//! A regular subgroup `N` has exactly one element sending point `0` to each
//! point. The search keeps a partial subgroup `P` that is closed, semiregular
//! and stable under `λ(G)`, picks the least point `j` outside `P·0`, and
//! branches over the semiregular permutations `x` with `x(0) = j`. Since `N`
//! must contain the whole `λ(G)`-conjugation orbit of `x`, the next partial
//! subgroup is the closure of `P` with that orbit. Every `N` is reached along
//! exactly one path.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{CosetAction, HGStructure};
use crate::error::{Error, Result};
use crate::perm::{Perm, PermSet};

/// Largest degree the compact permutation representation supports.
pub const COMPACT_DEGREE_LIMIT: usize = 16;

/// Resource limits for a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
    /// Candidate permutations examined before giving up.
    pub node_budget: u64,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 12,
            node_budget: 10_000_000,
            workers: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Sorted by the canonical element list of `N`.
    pub structures: Vec<HGStructure>,
    pub nodes: u64,
}

pub fn enumerate_regular_normalized(action: &CosetAction) -> Result<Vec<HGStructure>> {
    Ok(enumerate_with(action, &Limits::default())?.structures)
}

pub fn enumerate_with(action: &CosetAction, limits: &Limits) -> Result<SearchOutcome> {
    let n = action.degree();
    if n > limits.max_degree {
        return Err(Error::CapExceeded {
            what: "degree for structure enumeration",
            limit: limits.max_degree,
        });
    }
    if n > COMPACT_DEGREE_LIMIT {
        return Err(Error::CapExceeded {
            what: "degree for structure enumeration",
            limit: COMPACT_DEGREE_LIMIT,
        });
    }
    let gens: Vec<Compact> = action.generators().iter().map(|p| to_compact(p)).collect();
    let search = Search {
        n,
        gens,
        budget: limits.node_budget,
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
    };
    let found = if limits.workers == 1 {
        search.run()?
    } else {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if limits.workers > 0 {
            builder = builder.num_threads(limits.workers);
        }
        let pool = builder
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| search.run_parallel())?
    };
    let mut sets: Vec<PermSet> = found
        .into_iter()
        .map(|elems| {
            let perms = elems.iter().map(|c| from_compact(c, n));
            PermSet::closure(n, &perms.collect::<Vec<_>>(), n)
        })
        .collect::<Result<_>>()?;
    sets.sort_by(|a, b| a.elements().cmp(b.elements()));
    sets.dedup();
    let structures = sets
        .into_iter()
        .map(|s| {
            if !s.is_regular() || !s.is_normalized_by(action.generators()) {
                return Err(Error::Precondition(
                    "search produced a subgroup failing the post hoc check".into(),
                ));
            }
            HGStructure::new(s, action)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchOutcome {
        structures,
        nodes: search.nodes.load(Ordering::Relaxed),
    })
}

type Compact = [u8; COMPACT_DEGREE_LIMIT];

fn to_compact(p: &Perm) -> Compact {
    let mut c = [0u8; COMPACT_DEGREE_LIMIT];
    for (i, x) in p.images().enumerate() {
        c[i] = x as u8;
    }
    c
}

fn from_compact(c: &Compact, n: usize) -> Perm {
    Perm::from_images_unchecked(c[..n].iter().map(|&x| u16::from(x)).collect())
}

fn identity(n: usize) -> Compact {
    let mut c = [0u8; COMPACT_DEGREE_LIMIT];
    for (i, x) in c.iter_mut().enumerate().take(n) {
        *x = i as u8;
    }
    c
}

/// `a ∘ b`.
fn compose(a: &Compact, b: &Compact, n: usize) -> Compact {
    let mut c = [0u8; COMPACT_DEGREE_LIMIT];
    for i in 0..n {
        c[i] = a[b[i] as usize];
    }
    c
}

/// `g x g⁻¹`, which sends `g(i)` to `g(x(i))`.
fn conjugate(g: &Compact, x: &Compact, n: usize) -> Compact {
    let mut c = [0u8; COMPACT_DEGREE_LIMIT];
    for i in 0..n {
        c[g[i] as usize] = g[x[i] as usize];
    }
    c
}

/// All cycles of the same length.
fn is_semiregular(x: &Compact, n: usize) -> bool {
    let mut seen = 0u32;
    let mut len = 0;
    for start in 0..n {
        if seen >> start & 1 == 1 {
            continue;
        }
        let mut l = 0;
        let mut p = start;
        loop {
            seen |= 1 << p;
            l += 1;
            p = x[p] as usize;
            if p == start {
                break;
            }
        }
        if len == 0 {
            len = l;
        } else if l != len {
            return false;
        }
    }
    true
}

struct Search {
    n: usize,
    gens: Vec<Compact>,
    budget: u64,
    nodes: AtomicU64,
    abort: AtomicBool,
}

/// A closed, semiregular, `λ(G)`-stable partial subgroup.
#[derive(Clone)]
struct Partial {
    elements: Vec<Compact>,
    /// Bit `i` set iff some element sends 0 to `i`.
    covered: u32,
}

/// First choices of a candidate: cycle length, and the image of `j` when the
/// cycle through `0` is longer than 2.
#[derive(Clone, Copy)]
struct Seed {
    cycle: usize,
    third: Option<usize>,
}

impl Search {
    fn root(&self) -> Partial {
        Partial {
            elements: vec![identity(self.n)],
            covered: 1,
        }
    }

    fn run(&self) -> Result<Vec<Vec<Compact>>> {
        if self.n == 1 {
            return Ok(vec![vec![identity(1)]]);
        }
        let mut out = Vec::new();
        self.extend(&self.root(), &mut out)?;
        Ok(out)
    }

    fn run_parallel(&self) -> Result<Vec<Vec<Compact>>> {
        if self.n == 1 {
            return self.run();
        }
        let root = self.root();
        let seeds = self.seeds(&root);
        let chunks = seeds
            .par_iter()
            .map(|&seed| {
                let mut out = Vec::new();
                self.branch(&root, Some(seed), &mut out)?;
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(chunks.into_iter().flatten().collect())
    }

    fn seeds(&self, p: &Partial) -> Vec<Seed> {
        let n = self.n;
        let j = next_point(p.covered, n);
        let mut seeds = Vec::new();
        for d in (2..=n).filter(|d| n % d == 0) {
            if d == 2 {
                seeds.push(Seed {
                    cycle: d,
                    third: None,
                });
            } else {
                for k in (1..n).filter(|&k| k != j) {
                    seeds.push(Seed {
                        cycle: d,
                        third: Some(k),
                    });
                }
            }
        }
        seeds
    }

    fn extend(&self, p: &Partial, out: &mut Vec<Vec<Compact>>) -> Result<()> {
        self.branch(p, None, out)
    }

    fn branch(&self, p: &Partial, seed: Option<Seed>, out: &mut Vec<Vec<Compact>>) -> Result<()> {
        let n = self.n;
        let j = next_point(p.covered, n);
        let mut visit = |x: &Compact| -> Result<()> {
            if self.abort.load(Ordering::Relaxed) {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
                self.abort.store(true, Ordering::Relaxed);
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            if let Some(next) = self.grow(p, x) {
                if next.elements.len() == n {
                    out.push(next.elements);
                } else {
                    self.extend(&next, out)?;
                }
            }
            Ok(())
        };
        let cycles: Vec<Seed> = match seed {
            Some(s) => vec![s],
            None => self.seeds_unsplit(),
        };
        for s in cycles {
            let mut gen = CandidateGen::new(n, p.covered, s.cycle);
            gen.used = 1 | 1 << j;
            gen.x[0] = j as u8;
            match s.third {
                None => gen.walk(0, j, 2, &mut visit)?,
                Some(k) => {
                    // The seed fixes x(j) = k; check it like any other step.
                    if s.cycle < 3 || gen.used >> k & 1 == 1 || !gen.allowed(j, k) {
                        continue;
                    }
                    gen.x[j] = k as u8;
                    gen.used |= 1 << k;
                    gen.walk(0, k, 3, &mut visit)?;
                }
            }
        }
        Ok(())
    }

    /// Every cycle length, unsplit.
    fn seeds_unsplit(&self) -> Vec<Seed> {
        (2..=self.n)
            .filter(|d| self.n % d == 0)
            .map(|d| Seed {
                cycle: d,
                third: None,
            })
            .collect()
    }

    /// `P` joined with the conjugation orbit of `x`, if that stays inside
    /// some regular subgroup.
    fn grow(&self, p: &Partial, x: &Compact) -> Option<Partial> {
        let n = self.n;
        let room = n - p.elements.len();
        // Orbit elements must send 0 to distinct points outside P·0.
        let mut orbit = vec![*x];
        let mut hit = p.covered | 1 << x[0];
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.gens {
                let y = conjugate(g, &orbit[i], n);
                if orbit.contains(&y) {
                    continue;
                }
                let bit = 1u32 << y[0];
                if hit & bit != 0 || orbit.len() == room {
                    return None;
                }
                hit |= bit;
                orbit.push(y);
            }
            i += 1;
        }

        let mut slot: [Option<Compact>; COMPACT_DEGREE_LIMIT] = [None; COMPACT_DEGREE_LIMIT];
        let mut elements = Vec::with_capacity(n);
        for e in &p.elements {
            slot[e[0] as usize] = Some(*e);
            elements.push(*e);
        }
        let generators: Vec<Compact> = p.elements[1..]
            .iter()
            .chain(orbit.iter())
            .copied()
            .collect();
        for y in &orbit {
            slot[y[0] as usize] = Some(*y);
            elements.push(*y);
        }
        let mut k = 0;
        while k < elements.len() {
            for s in &generators {
                let z = compose(&elements[k], s, n);
                match &slot[z[0] as usize] {
                    Some(w) if *w == z => {}
                    Some(_) => return None,
                    None => {
                        if !is_semiregular(&z, n) {
                            return None;
                        }
                        slot[z[0] as usize] = Some(z);
                        elements.push(z);
                    }
                }
            }
            k += 1;
        }
        if n % elements.len() != 0 {
            return None;
        }
        let covered = elements.iter().fold(0u32, |m, e| m | 1 << e[0]);
        Some(Partial { elements, covered })
    }
}

fn next_point(covered: u32, n: usize) -> usize {
    (0..n)
        .find(|&i| covered >> i & 1 == 0)
        .expect("partial subgroup is proper")
}

/// Generates semiregular permutations with a prescribed image of 0, cycle by
/// cycle, rejecting any `x` with `x(q) ∈ P·0` for some `q ∈ P·0`.
struct CandidateGen {
    n: usize,
    covered: u32,
    cycle: usize,
    x: Compact,
    used: u32,
}

impl CandidateGen {
    /// Points at or beyond `n` stay 0 so candidates compare equal to products.
    fn new(n: usize, covered: u32, cycle: usize) -> Self {
        let mut x = [0u8; COMPACT_DEGREE_LIMIT];
        x[..n].fill(u8::MAX);
        CandidateGen {
            n,
            covered,
            cycle,
            x,
            used: 0,
        }
    }

    fn allowed(&self, from: usize, to: usize) -> bool {
        self.covered >> from & 1 == 0 || self.covered >> to & 1 == 0
    }

    /// Continues the cycle that began at `start` and currently ends at `cur`,
    /// which holds `len` points.
    fn walk(
        &mut self,
        start: usize,
        cur: usize,
        len: usize,
        visit: &mut dyn FnMut(&Compact) -> Result<()>,
    ) -> Result<()> {
        if len == self.cycle {
            if !self.allowed(cur, start) {
                return Ok(());
            }
            self.x[cur] = start as u8;
            let next = (0..self.n).find(|&i| self.used >> i & 1 == 0);
            let result = match next {
                None => visit(&self.x),
                Some(s) => {
                    self.used |= 1 << s;
                    let r = self.walk(s, s, 1, visit);
                    self.used &= !(1 << s);
                    r
                }
            };
            self.x[cur] = u8::MAX;
            return result;
        }
        for p in 0..self.n {
            if self.used >> p & 1 == 1 || !self.allowed(cur, p) {
                continue;
            }
            self.x[cur] = p as u8;
            self.used |= 1 << p;
            self.walk(start, p, len + 1, visit)?;
            self.used &= !(1 << p);
        }
        self.x[cur] = u8::MAX;
        Ok(())
    }
}
