//! Standard families: cyclic, dihedral, symmetric, alternating, elementary
//! abelian, generalized quaternion and metacyclic groups.

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::perm::{Perm, PermSet, DEFAULT_CLOSURE_CAP};

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn trivial_group() -> FiniteGroup {
    cyclic(1).expect("order 1 is valid")
}

/// `C_n` on residues mod `n`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("C(n) needs n >= 1".into()));
    }
    let labels = (0..n).map(|i| format!("a^{i}")).collect();
    FiniteGroup::from_fn(n, |a, b| (a + b) % n, labels)
}

/// Dihedral group of order `2n`; `r^i s^j` is stored at `i + n j`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("D(n) needs n >= 1".into()));
    }
    metacyclic(n, 2, n - 1 + usize::from(n == 1))
        .map(|g| relabel(g, |i| format!("r^{} s^{}", i % n, i / n)))
}

/// `C_m ⋊ C_k` where the generator of `C_k` acts by `x ↦ x^r`; `x^i y^j` at `i + m j`.
pub fn metacyclic(m: usize, k: usize, r: usize) -> Result<FiniteGroup> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidParameter(
            "metacyclic orders must be positive".into(),
        ));
    }
    let r = r % m.max(1);
    if m > 1 && gcd(r, m) != 1 {
        return Err(Error::InvalidParameter(format!(
            "x -> x^{r} is not an automorphism of C{m}"
        )));
    }
    // r^k must be 1 mod m for the action to factor through C_k
    let mut rp = vec![1 % m];
    for j in 1..k {
        rp.push(rp[j - 1] * r % m);
    }
    if m > 1 && rp[k - 1] * r % m != 1 {
        return Err(Error::InvalidParameter(format!(
            "x -> x^{r} does not have order dividing {k}"
        )));
    }
    let labels = (0..m * k)
        .map(|i| format!("x^{} y^{}", i % m, i / m))
        .collect();
    FiniteGroup::from_fn(
        m * k,
        |a, b| {
            let (i1, j1) = (a % m, a / m);
            let (i2, j2) = (b % m, b / m);
            (i1 + i2 * rp[j1]) % m + m * ((j1 + j2) % k)
        },
        labels,
    )
}

/// Generalized quaternion group of the given order (a power of two, at least 8).
/// `x^i y^j` at `i + (order/2) j` with `x` of order `order/2`, `y² = x^(order/4)`.
pub fn quaternion(order: usize) -> Result<FiniteGroup> {
    if order < 8 || !order.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "Q(n) needs n a power of 2 with n >= 8, got {order}"
        )));
    }
    let m = order / 2;
    let labels = (0..order)
        .map(|i| format!("x^{} y^{}", i % m, i / m))
        .collect();
    FiniteGroup::from_fn(
        order,
        |a, b| {
            let (i1, j1) = (a % m, a / m);
            let (i2, j2) = (b % m, b / m);
            if j1 == 0 {
                (i1 + i2) % m + m * j2
            } else {
                // y x^i2 = x^-i2 y
                let i = (i1 + m - i2) % m;
                if j2 == 0 {
                    i + m
                } else {
                    (i + m / 2) % m
                }
            }
        },
        labels,
    )
}

/// `E(p,k) = (Z/p)^k`; element `i` is the vector of base-`p` digits of `i`.
pub fn elementary_abelian(p: usize, k: usize) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!(
            "E(p,k) needs p prime, got {p}"
        )));
    }
    let order = p
        .checked_pow(k as u32)
        .filter(|&o| o <= super::TABLE_LIMIT)
        .ok_or(Error::CapExceeded {
            what: "elementary abelian group order",
            limit: super::TABLE_LIMIT,
        })?;
    let labels = (0..order)
        .map(|i| {
            let digits: Vec<String> = vector_of(i, p, k).iter().map(|d| d.to_string()).collect();
            format!("[{}]", digits.join(","))
        })
        .collect();
    FiniteGroup::from_fn(
        order,
        |a, b| {
            let (va, vb) = (vector_of(a, p, k), vector_of(b, p, k));
            index_of(
                &va.iter()
                    .zip(&vb)
                    .map(|(x, y)| (x + y) % p)
                    .collect::<Vec<_>>(),
                p,
            )
        },
        labels,
    )
}

pub(crate) fn vector_of(mut i: usize, p: usize, k: usize) -> Vec<usize> {
    let mut v = Vec::with_capacity(k);
    for _ in 0..k {
        v.push(i % p);
        i /= p;
    }
    v
}

pub(crate) fn index_of(v: &[usize], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// `S_m` acting on `{0..m-1}`.
pub fn symmetric(m: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::InvalidParameter("S(m) needs m >= 1".into()));
    }
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push(Perm::from_cycles(m, &[vec![0, 1]])?);
        gens.push(Perm::from_cycles(m, &[(0..m).collect()])?);
    }
    FiniteGroup::from_perm_group(&PermSet::closure(m, &gens, DEFAULT_CLOSURE_CAP)?)
}

/// `A_m` acting on `{0..m-1}`.
pub fn alternating(m: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::InvalidParameter("A(m) needs m >= 1".into()));
    }
    let gens = (2..m)
        .map(|k| Perm::from_cycles(m, &[vec![0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_perm_group(&PermSet::closure(m, &gens, DEFAULT_CLOSURE_CAP)?)
}

fn relabel(g: FiniteGroup, f: impl Fn(usize) -> String) -> FiniteGroup {
    let labels = (0..g.order()).map(f).collect();
    FiniteGroup::from_fn(g.order(), |a, b| g.mul(a, b), labels).expect("same table")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(7).unwrap().order(), 7);
        assert_eq!(dihedral(5).unwrap().order(), 10);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(elementary_abelian(2, 2).unwrap().order(), 4);
        assert_eq!(elementary_abelian(3, 2).unwrap().order(), 9);
        assert_eq!(quaternion(8).unwrap().order(), 8);
        assert_eq!(quaternion(16).unwrap().order(), 16);
    }

    #[test]
    fn constructed_groups_satisfy_axioms() {
        for g in [
            cyclic(6).unwrap(),
            dihedral(4).unwrap(),
            dihedral(1).unwrap(),
            quaternion(8).unwrap(),
            quaternion(16).unwrap(),
            elementary_abelian(2, 3).unwrap(),
            metacyclic(8, 2, 3).unwrap(),
            metacyclic(3, 4, 2).unwrap(),
            alternating(4).unwrap(),
        ] {
            assert!(g.check_axioms(), "{g:?}");
        }
    }

    #[test]
    fn quaternion_has_single_involution() {
        let q = quaternion(8).unwrap();
        let orders = q.element_orders();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 6);
    }

    #[test]
    fn invalid_parameters() {
        assert!(elementary_abelian(4, 2).is_err());
        assert!(quaternion(12).is_err());
        assert!(cyclic(0).is_err());
        assert!(metacyclic(5, 2, 2).is_err());
        assert!(matches!(
            elementary_abelian(2, 11),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn dihedral_is_nonabelian_from_three() {
        assert!(dihedral(2).unwrap().is_abelian());
        assert!(!dihedral(3).unwrap().is_abelian());
    }
}
