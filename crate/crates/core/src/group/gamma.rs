//! The two canonical copies of `N` inside `Hol(N)`: translations
//! `Γ1 = {(g, 1)}` and twisted inner pairs `Γ2 = {(g⁻¹, σ_g)}`.

use super::{holomorph, FiniteGroup, Holomorph, Subgroup};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct GammaPair {
    pub hol: Holomorph,
    pub gamma1: Subgroup,
    pub gamma2: Subgroup,
}

impl GammaPair {
    /// The map `g ↦ (g⁻¹, σ_g)` onto `Γ2`.
    pub fn twisted_embedding(&self, g: usize) -> usize {
        let n = self.hol.normal();
        self.hol.pair(n.inv(g), self.hol.aut.inner(g))
    }

    /// Conjugates every member of `s` by every generator of `Hol(N)`.
    pub fn is_normal_in_hol(&self, s: &Subgroup) -> bool {
        let hol = self.hol.group();
        self.hol
            .generators()
            .iter()
            .all(|&x| s.members().iter().all(|&y| s.contains(hol.conj(x, y))))
    }

    /// Whether `g ↦ (g⁻¹, σ_g)` is an injective homomorphism, so `Γ2 ≅ N`.
    pub fn twisted_embedding_is_isomorphism(&self) -> bool {
        let n = self.hol.normal();
        let hol = self.hol.group();
        let gens = n.generating_set();
        let images: Vec<usize> = (0..n.order()).map(|g| self.twisted_embedding(g)).collect();
        let injective = {
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.dedup();
            sorted.len() == n.order()
        };
        injective
            && (0..n.order()).all(|x| {
                gens.iter()
                    .all(|&g| images[n.mul(x, g)] == hol.mul(images[x], images[g]))
            })
    }
}

pub fn gamma_subgroups(n: &FiniteGroup) -> Result<GammaPair> {
    let hol = holomorph(n)?;
    let mut g1: Vec<usize> = (0..n.order()).map(|g| hol.pair(g, 0)).collect();
    let mut g2: Vec<usize> = (0..n.order())
        .map(|g| hol.pair(n.inv(g), hol.aut.inner(g)))
        .collect();
    g1.sort_unstable();
    g2.sort_unstable();
    Ok(GammaPair {
        gamma1: Subgroup::from_sorted(g1),
        gamma2: Subgroup::from_sorted(g2),
        hol,
    })
}

/// Exhaustively checks, for all `x, g ∈ N` and `θ ∈ Aut(N)`,
/// `(x, θ) ⋆ (g⁻¹, σ_g) ⋆ (θ⁻¹(x⁻¹), θ⁻¹) = (θ(g⁻¹), σ_θ(g))`.
/// Returns the number of triples checked, or the first failing triple.
pub fn verify_conjugation_identity(
    hol: &Holomorph,
) -> std::result::Result<usize, (usize, usize, usize)> {
    let n = hol.normal();
    let aut = &hol.aut;
    let g = hol.group();
    let mut checked = 0;
    for theta in 0..aut.order() {
        let theta_inv = aut.group().inv(theta);
        for x in 0..n.order() {
            let left = hol.pair(x, theta);
            let right = hol.pair(aut.apply(theta_inv, n.inv(x)), theta_inv);
            for gg in 0..n.order() {
                let middle = hol.pair(n.inv(gg), aut.inner(gg));
                let lhs = g.mul(g.mul(left, middle), right);
                let rhs = hol.pair(aut.apply(theta, n.inv(gg)), aut.inner(aut.apply(theta, gg)));
                if lhs != rhs {
                    return Err((x, gg, theta));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `θ ∘ σ_g ∘ θ⁻¹ = σ_θ(g)` for all `θ`, `g`.
pub fn verify_inner_twist(hol: &Holomorph) -> bool {
    let aut = &hol.aut;
    let ag = aut.group();
    (0..aut.order()).all(|theta| {
        (0..hol.normal().order()).all(|g| {
            ag.mul(ag.mul(theta, aut.inner(g)), ag.inv(theta)) == aut.inner(aut.apply(theta, g))
        })
    })
}
