//! A small expression language for building groups.
//!
//! ```text
//! expression := term ('x' term)*
//! term       := NAME '(' args ')' | '(' expression ')' | 'gens' '[' perms ']'
//! ```
//!
//! Constructors: `C(n)`, `D(n)` (order `2n`), `S(m)`, `A(m)`, `E(p,k)`,
//! `Q(order)`, `Hol(expr)`, `matgrp(p,k,[M1,...])`, `SD(E(p,k), matgrp(...))`
//! and `SD(C(m), C(k), r)` where the generator of `C(k)` acts by `x ↦ x^r`.
//! Matrices act on column vectors and entries are reduced mod `p`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{
    alternating, cyclic, dihedral, direct_product, elementary_abelian, holomorph, is_prime,
    metacyclic, quaternion, semidirect_by_action, symmetric, vector_index, vector_of, FiniteGroup,
    Subgroup, TABLE_LIMIT,
};
use crate::perm::{Perm, PermSet, DEFAULT_CLOSURE_CAP};

pub type Matrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Elementary {
        p: usize,
        k: usize,
    },
    Quaternion(usize),
    /// At least two factors.
    Product(Vec<GroupExpr>),
    Semidirect {
        normal: Box<GroupExpr>,
        top: Box<GroupExpr>,
        exponent: Option<i64>,
    },
    Holomorph(Box<GroupExpr>),
    /// Permutation generators; `degree` is one more than the largest moved point.
    Gens {
        degree: usize,
        perms: Vec<Perm>,
    },
    MatrixGroup {
        p: usize,
        k: usize,
        matrices: Vec<Matrix>,
    },
}

/// A built group, with the complement tagged for semidirect products and
/// holomorphs.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub group: FiniteGroup,
    pub complement: Option<Subgroup>,
}

pub fn parse(text: &str) -> Result<GroupExpr> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expression()?;
    match parser.peek() {
        Tok::End => Ok(expr),
        _ => Err(parser.error("unexpected input after expression")),
    }
}

pub fn render(expr: &GroupExpr) -> String {
    expr.to_string()
}

pub fn build(expr: &GroupExpr) -> Result<BuiltGroup> {
    let plain = |group| {
        Ok(BuiltGroup {
            group,
            complement: None,
        })
    };
    match expr {
        GroupExpr::Cyclic(n) => plain(cyclic(*n)?),
        GroupExpr::Dihedral(n) => plain(dihedral(*n)?),
        GroupExpr::Symmetric(m) => plain(symmetric(*m)?),
        GroupExpr::Alternating(m) => plain(alternating(*m)?),
        GroupExpr::Elementary { p, k } => plain(elementary_abelian(*p, *k)?),
        GroupExpr::Quaternion(order) => plain(quaternion(*order)?),
        GroupExpr::Product(factors) => {
            let mut group = build(&factors[0])?.group;
            for f in &factors[1..] {
                group = direct_product(&group, &build(f)?.group)?;
            }
            plain(group)
        }
        GroupExpr::Holomorph(inner) => {
            let hol = holomorph(&build(inner)?.group)?;
            Ok(BuiltGroup {
                group: hol.group().clone(),
                complement: Some(hol.aut_subgroup()),
            })
        }
        GroupExpr::Gens { degree, perms } => {
            let set = PermSet::closure(*degree, perms, DEFAULT_CLOSURE_CAP)?;
            plain(FiniteGroup::from_perm_group(&set)?)
        }
        GroupExpr::MatrixGroup { p, k, matrices } => {
            plain(MatrixGroup::generate(*p, *k, matrices)?.group)
        }
        GroupExpr::Semidirect {
            normal,
            top,
            exponent,
        } => build_semidirect(normal, top, *exponent),
    }
}

pub fn parse_and_build(text: &str) -> Result<BuiltGroup> {
    build(&parse(text)?)
}

fn build_semidirect(
    normal: &GroupExpr,
    top: &GroupExpr,
    exponent: Option<i64>,
) -> Result<BuiltGroup> {
    match (normal, top, exponent) {
        (GroupExpr::Cyclic(m), GroupExpr::Cyclic(k), Some(r)) => {
            let r = r.rem_euclid(*m as i64) as usize;
            let group = metacyclic(*m, *k, r)?;
            // y = x^0 y^1 sits at index m; C(1) has no such element.
            let complement = if *k > 1 {
                group.generate(&[*m])
            } else {
                group.trivial_subgroup()
            };
            Ok(BuiltGroup {
                group,
                complement: Some(complement),
            })
        }
        (
            GroupExpr::Elementary { p, k },
            GroupExpr::MatrixGroup {
                p: q,
                k: l,
                matrices,
            },
            None,
        ) => {
            if p != q || k != l {
                return Err(Error::InvalidParameter(format!(
                    "matrices over F_{q} of size {l} cannot act on E({p},{k})"
                )));
            }
            let n = elementary_abelian(*p, *k)?;
            let mats = MatrixGroup::generate(*p, *k, matrices)?;
            let action = mats
                .elements
                .iter()
                .map(|m| {
                    (0..n.order())
                        .map(|v| vector_index(&apply_matrix(m, &vector_of(v, *p, *k), *p), *p))
                        .collect()
                })
                .collect();
            let sd = semidirect_by_action(&n, &mats.group, action)?;
            let complement = sd.complement();
            Ok(BuiltGroup {
                group: sd.group,
                complement: Some(complement),
            })
        }
        _ => Err(Error::InvalidParameter(
            "SD takes E(p,k) with matgrp(p,k,..), or C(m), C(k) and an exponent".into(),
        )),
    }
}

/// `M v` for a column vector `v`.
fn apply_matrix(m: &[Vec<usize>], v: &[usize], p: usize) -> Vec<usize> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<usize>() % p)
        .collect()
}

fn mat_mul(a: &[Vec<usize>], b: &[Vec<usize>], p: usize) -> Vec<Vec<usize>> {
    let k = a.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum::<usize>() % p)
                .collect()
        })
        .collect()
}

fn determinant(m: &[Vec<usize>], p: usize) -> usize {
    // Gaussian elimination over F_p.
    let k = m.len();
    let mut a: Vec<Vec<usize>> = m.to_vec();
    let mut det = 1;
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            a.swap(pivot, col);
            det = (p - det) % p;
        }
        det = det * a[col][col] % p;
        let inv = mod_inverse(a[col][col], p);
        for r in col + 1..k {
            let f = a[r][col] * inv % p;
            for c in col..k {
                a[r][c] = (a[r][c] + p * p - f * a[col][c] % p) % p;
            }
        }
    }
    det
}

fn mod_inverse(a: usize, p: usize) -> usize {
    (1..p)
        .find(|&x| a * x % p == 1)
        .expect("nonzero element of a prime field")
}

/// A subgroup of `GL_k(F_p)` with its elements; element 0 is the identity.
pub struct MatrixGroup {
    pub group: FiniteGroup,
    pub elements: Vec<Vec<Vec<usize>>>,
}

impl MatrixGroup {
    pub fn generate(p: usize, k: usize, matrices: &[Matrix]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!(
                "matgrp needs p prime, got {p}"
            )));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("matgrp needs k >= 1".into()));
        }
        let mut gens = Vec::new();
        for m in matrices {
            if m.len() != k || m.iter().any(|row| row.len() != k) {
                return Err(Error::InvalidParameter(format!("matrix is not {k}x{k}")));
            }
            let reduced: Vec<Vec<usize>> = m
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&x| x.rem_euclid(p as i64) as usize)
                        .collect()
                })
                .collect();
            if determinant(&reduced, p) == 0 {
                return Err(Error::InvalidParameter(format!(
                    "matrix {m:?} is not invertible mod {p}"
                )));
            }
            gens.push(reduced);
        }
        let identity: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| usize::from(i == j)).collect())
            .collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<Vec<usize>>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let y = mat_mul(&elements[i], g, p);
                if !index.contains_key(&y) {
                    if elements.len() >= TABLE_LIMIT {
                        return Err(Error::CapExceeded {
                            what: "matrix group order",
                            limit: TABLE_LIMIT,
                        });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let labels = elements.iter().map(|m| format!("{m:?}")).collect();
        let group = FiniteGroup::from_fn(
            elements.len(),
            |a, b| index[&mat_mul(&elements[a], &elements[b], p)],
            labels,
        )?;
        Ok(MatrixGroup { group, elements })
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C({n})"),
            GroupExpr::Dihedral(n) => write!(f, "D({n})"),
            GroupExpr::Symmetric(m) => write!(f, "S({m})"),
            GroupExpr::Alternating(m) => write!(f, "A({m})"),
            GroupExpr::Elementary { p, k } => write!(f, "E({p},{k})"),
            GroupExpr::Quaternion(n) => write!(f, "Q({n})"),
            GroupExpr::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    if matches!(factor, GroupExpr::Product(_)) {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
            GroupExpr::Semidirect {
                normal,
                top,
                exponent,
            } => {
                write!(f, "SD({normal}, {top}")?;
                if let Some(r) = exponent {
                    write!(f, ", {r}")?;
                }
                write!(f, ")")
            }
            GroupExpr::Holomorph(inner) => write!(f, "Hol({inner})"),
            GroupExpr::Gens { perms, .. } => {
                let items: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
                write!(f, "gens[{}]", items.join(", "))
            }
            GroupExpr::MatrixGroup { p, k, matrices } => {
                let ms: Vec<String> = matrices
                    .iter()
                    .map(|m| {
                        let rows: Vec<String> = m
                            .iter()
                            .map(|r| {
                                let xs: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                                format!("[{}]", xs.join(","))
                            })
                            .collect();
                        format!("[{}]", rows.join(","))
                    })
                    .collect();
                write!(f, "matgrp({p},{k},[{}])", ms.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Times,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out: Vec<Token> = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: l,
                column: col,
            })
        };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '*' | '×' => Some(Tok::Times),
            _ => None,
        };
        if let Some(tok) = single {
            push(&mut out, tok);
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let value = s.parse::<i64>().map_err(|_| Error::Syntax {
                line: l,
                column: col,
                message: format!("integer `{s}` out of range"),
            })?;
            column += i - start;
            push(&mut out, Tok::Int(value));
            continue;
        }
        if c.is_ascii_alphabetic() {
            // `x` right after a closing bracket is the product, as in `C(2)xC(3)`.
            let after_close = matches!(
                out.last().map(|t| &t.tok),
                Some(Tok::RParen | Tok::RBracket)
            );
            if c == 'x' && after_close {
                push(&mut out, Tok::Times);
                i += 1;
                column += 1;
                continue;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            column += i - start;
            push(
                &mut out,
                if word == "x" {
                    Tok::Times
                } else {
                    Tok::Ident(word)
                },
            );
            continue;
        }
        return Err(Error::Syntax {
            line: l,
            column: col,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

/// One argument of a constructor call.
enum Arg {
    Int(i64),
    Expr(GroupExpr),
    Matrices(Vec<Matrix>),
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.tokens[self.pos];
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn expression(&mut self) -> Result<GroupExpr> {
        let mut factors = vec![self.term()?];
        while *self.peek() == Tok::Times {
            self.pos += 1;
            factors.push(self.term()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            GroupExpr::Product(factors)
        })
    }

    fn term(&mut self) -> Result<GroupExpr> {
        match self.peek().clone() {
            Tok::LParen => {
                self.pos += 1;
                let e = self.expression()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) if name == "gens" => {
                self.pos += 1;
                self.gens()
            }
            Tok::Ident(name) => {
                let at = self.pos;
                self.pos += 1;
                self.expect(Tok::LParen, "`(` after constructor name")?;
                let args = self.args()?;
                self.expect(Tok::RParen, "`)`")?;
                self.constructor(&name, args, at)
            }
            Tok::End => Err(self.error("unexpected end of input")),
            _ => Err(self.error("expected a group")),
        }
    }

    fn args(&mut self) -> Result<Vec<Arg>> {
        let mut args = Vec::new();
        if *self.peek() == Tok::RParen {
            return Ok(args);
        }
        loop {
            args.push(match self.peek().clone() {
                Tok::Int(v) => {
                    self.pos += 1;
                    Arg::Int(v)
                }
                Tok::LBracket => Arg::Matrices(self.matrices()?),
                _ => Arg::Expr(self.expression()?),
            });
            if *self.peek() == Tok::Comma {
                self.pos += 1;
            } else {
                return Ok(args);
            }
        }
    }

    /// `[M, ...]` with each `M` written `[[a,b],[c,d]]`.
    fn matrices(&mut self) -> Result<Vec<Matrix>> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut out = Vec::new();
        while *self.peek() == Tok::LBracket {
            self.pos += 1;
            let mut rows = Vec::new();
            while *self.peek() == Tok::LBracket {
                self.pos += 1;
                let mut row = Vec::new();
                while let Tok::Int(v) = *self.peek() {
                    self.pos += 1;
                    row.push(v);
                    if *self.peek() == Tok::Comma {
                        self.pos += 1;
                    }
                }
                self.expect(Tok::RBracket, "`]` closing a matrix row")?;
                rows.push(row);
                if *self.peek() == Tok::Comma {
                    self.pos += 1;
                }
            }
            self.expect(Tok::RBracket, "`]` closing a matrix")?;
            out.push(rows);
            if *self.peek() == Tok::Comma {
                self.pos += 1;
            }
        }
        self.expect(Tok::RBracket, "`]` closing the matrix list")?;
        Ok(out)
    }

    /// `gens[(0 1 2)(3 4), (0 1)]`.
    fn gens(&mut self) -> Result<GroupExpr> {
        self.expect(Tok::LBracket, "`[` after gens")?;
        let mut cycle_lists: Vec<Vec<Vec<usize>>> = Vec::new();
        while *self.peek() == Tok::LParen {
            let mut cycles = Vec::new();
            while *self.peek() == Tok::LParen {
                self.pos += 1;
                let mut cycle = Vec::new();
                while let Tok::Int(v) = *self.peek() {
                    if v < 0 {
                        return Err(self.error("points are non-negative"));
                    }
                    self.pos += 1;
                    cycle.push(v as usize);
                }
                self.expect(Tok::RParen, "`)` closing a cycle")?;
                cycles.push(cycle);
            }
            cycle_lists.push(cycles);
            if *self.peek() == Tok::Comma {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect(Tok::RBracket, "`]` closing gens")?;
        let mentioned = cycle_lists
            .iter()
            .flatten()
            .flatten()
            .max()
            .map_or(1, |m| m + 1);
        let perms: Vec<Perm> = cycle_lists
            .iter()
            .map(|cycles| Perm::from_cycles(mentioned, cycles))
            .collect::<Result<_>>()
            .map_err(|e| self.error(e.to_string()))?;
        let degree = perms
            .iter()
            .flat_map(|p| (0..mentioned).filter(move |&i| p.apply(i) != i))
            .max()
            .map_or(1, |m| m + 1);
        let perms = perms
            .into_iter()
            .map(|p| Perm::from_images(p.images().take(degree).collect()))
            .collect::<Result<_>>()?;
        Ok(GroupExpr::Gens { degree, perms })
    }

    fn constructor(&self, name: &str, args: Vec<Arg>, at: usize) -> Result<GroupExpr> {
        let err = |message: String| {
            let t = &self.tokens[at];
            Error::Syntax {
                line: t.line,
                column: t.column,
                message,
            }
        };
        let nat = |a: &Arg| -> Result<usize> {
            match a {
                Arg::Int(v) if *v >= 0 => Ok(*v as usize),
                _ => Err(err(format!("`{name}` expects non-negative integers"))),
            }
        };
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(err(format!(
                    "`{name}` takes {n} argument(s), got {}",
                    args.len()
                )))
            }
        };
        let expr_arg = |a: Arg| -> Result<GroupExpr> {
            match a {
                Arg::Expr(e) => Ok(e),
                _ => Err(err(format!("`{name}` expects group arguments"))),
            }
        };
        match name {
            "C" | "D" | "S" | "A" | "Q" => {
                arity(1)?;
                let n = nat(&args[0])?;
                Ok(match name {
                    "C" => GroupExpr::Cyclic(n),
                    "D" => GroupExpr::Dihedral(n),
                    "S" => GroupExpr::Symmetric(n),
                    "A" => GroupExpr::Alternating(n),
                    _ => GroupExpr::Quaternion(n),
                })
            }
            "E" => {
                arity(2)?;
                Ok(GroupExpr::Elementary {
                    p: nat(&args[0])?,
                    k: nat(&args[1])?,
                })
            }
            "Hol" => {
                arity(1)?;
                let inner = expr_arg(args.into_iter().next().expect("one argument"))?;
                Ok(GroupExpr::Holomorph(Box::new(inner)))
            }
            "matgrp" => {
                arity(3)?;
                let (p, k) = (nat(&args[0])?, nat(&args[1])?);
                match &args[2] {
                    Arg::Matrices(ms) => Ok(GroupExpr::MatrixGroup {
                        p,
                        k,
                        matrices: ms.clone(),
                    }),
                    _ => Err(err("`matgrp` expects a matrix list last".into())),
                }
            }
            "SD" => {
                if args.len() != 2 && args.len() != 3 {
                    return Err(err(format!(
                        "`SD` takes 2 or 3 arguments, got {}",
                        args.len()
                    )));
                }
                let exponent = match args.get(2) {
                    Some(Arg::Int(r)) => Some(*r),
                    Some(_) => return Err(err("the third `SD` argument is an exponent".into())),
                    None => None,
                };
                let mut it = args.into_iter();
                let normal = expr_arg(it.next().expect("two arguments"))?;
                let top = expr_arg(it.next().expect("two arguments"))?;
                Ok(GroupExpr::Semidirect {
                    normal: Box::new(normal),
                    top: Box::new(top),
                    exponent,
                })
            }
            _ => Err(err(format!("unknown constructor `{name}`"))),
        }
    }
}
