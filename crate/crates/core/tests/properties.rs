use proptest::prelude::*;

use hopf_galois::engine::{enumerate_by_transversals, enumerate_with};
use hopf_galois::group::{are_isomorphic, automorphism_group, cyclic, direct_product, holomorph};
use hopf_galois::groupspec::{build, parse, render, GroupExpr, Matrix};
use hopf_galois::minimality::{classify_with, g_stable_subgroups_by_orbits};
use hopf_galois::{coset_action, ExtensionProblem, FiniteGroup, Limits, Perm, PermSet};

fn perm_on(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Perm::from_images(images).unwrap())
}

/// Permutation generators normalized the way the parser reads them: the
/// degree is one more than the largest moved point.
fn gens_expr() -> impl Strategy<Value = GroupExpr> {
    (2usize..7)
        .prop_flat_map(|n| prop::collection::vec(perm_on(n), 1..4))
        .prop_filter("something moves", |ps| ps.iter().any(|p| !p.is_identity()))
        .prop_map(|ps| {
            let degree = 1 + ps
                .iter()
                .flat_map(|p| p.cycles().into_iter().flatten())
                .max()
                .unwrap();
            let perms = ps
                .iter()
                .map(|p| Perm::from_cycles(degree, &p.cycles()).unwrap())
                .collect();
            GroupExpr::Gens { degree, perms }
        })
}

fn matrices(k: usize) -> impl Strategy<Value = Vec<Matrix>> {
    prop::collection::vec(
        prop::collection::vec(prop::collection::vec(-4i64..5, k), k),
        1..3,
    )
}

fn leaf() -> impl Strategy<Value = GroupExpr> {
    prop_oneof![
        (1usize..30).prop_map(GroupExpr::Cyclic),
        (1usize..10).prop_map(GroupExpr::Dihedral),
        (1usize..6).prop_map(GroupExpr::Symmetric),
        (1usize..6).prop_map(GroupExpr::Alternating),
        (prop::sample::select(vec![2usize, 3, 5, 7]), 1usize..4)
            .prop_map(|(p, k)| GroupExpr::Elementary { p, k }),
        prop::sample::select(vec![4usize, 8, 16]).prop_map(GroupExpr::Quaternion),
        gens_expr(),
        (prop::sample::select(vec![2usize, 3, 5]), 1usize..4)
            .prop_flat_map(|(p, k)| (Just(p), Just(k), matrices(k)))
            .prop_map(|(p, k, matrices)| GroupExpr::MatrixGroup { p, k, matrices }),
    ]
}

fn expr() -> impl Strategy<Value = GroupExpr> {
    leaf().prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(GroupExpr::Product),
            (inner.clone(), inner.clone(), prop::option::of(-9i64..10)).prop_map(
                |(n, t, exponent)| {
                    GroupExpr::Semidirect {
                        normal: Box::new(n),
                        top: Box::new(t),
                        exponent,
                    }
                }
            ),
            inner.prop_map(|e| GroupExpr::Holomorph(Box::new(e))),
        ]
    })
}

/// A transitive permutation group of degree at most 6 over the stabilizer of 0.
fn transitive_problem() -> impl Strategy<Value = ExtensionProblem> {
    (2usize..7)
        .prop_flat_map(|n| prop::collection::vec(perm_on(n), 1..3))
        .prop_filter_map("transitive", |gens| {
            let n = gens[0].degree();
            let set = PermSet::closure(n, &gens, 1000).ok()?;
            if !set.is_transitive() {
                return None;
            }
            let g = FiniteGroup::from_perm_group(&set).ok()?;
            let stab = g
                .subgroup((0..g.order()).filter(|&a| g.perm(a).unwrap().apply(0) == 0))
                .ok()?;
            ExtensionProblem::new(g, stab).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_inverts_render(e in expr()) {
        let text = render(&e);
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn parse_ignores_whitespace(e in expr()) {
        let text = render(&e);
        let spaced = text.replace(',', " , ").replace('(', " ( ");
        prop_assert_eq!(parse(&spaced).unwrap(), parse(&text).unwrap());
    }

    #[test]
    fn closure_ignores_generator_order(gens in (2usize..7).prop_flat_map(|n| prop::collection::vec(perm_on(n), 1..4))) {
        let n = gens[0].degree();
        let mut reversed = gens.clone();
        reversed.reverse();
        let a = PermSet::closure(n, &gens, 10_000).unwrap();
        prop_assert_eq!(a.clone(), PermSet::closure(n, &reversed, 10_000).unwrap());
        prop_assert!(a.check_group_axioms());
        // Normalization by generators equals normalization by the whole group.
        let cyc = PermSet::closure(n, &gens[..1], 10_000).unwrap();
        prop_assert_eq!(cyc.is_normalized_by(&gens), cyc.is_normalized_by(a.elements()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn criterion_properties_on_random_problems(prob in transitive_problem()) {
        let limits = Limits::default();
        let report = classify_with(&prob, &limits).unwrap();
        let g = prob.group();
        prop_assert!(report.minimal_count >= report.normal_complement_bound);
        for c in &report.structures {
            let s = &c.structure;
            prop_assert!(s.subgroup().is_regular());
            prop_assert_eq!(s.order(), prob.degree());
            prop_assert!(!(c.obstruction.is_some() && c.minimal));
            if [2, 3, 5, 7].contains(&s.order()) {
                prop_assert!(c.minimal);
            }
            prop_assert!(c.lattice.len() >= 2 && c.lattice.len() <= report.intermediate_count);
            prop_assert_eq!(c.minimal, c.lattice.len() == 2);
            prop_assert_eq!(c.lattice.len(), g_stable_subgroups_by_orbits(s).len());
            if let Some(m) = &c.preimage {
                prop_assert!(g.is_normal(m));
                prop_assert_eq!(m.order(), prob.degree());
                prop_assert_eq!(m.intersection_order(prob.stabilizer()), 1);
            }
        }
        let action = coset_action(&prob).unwrap();
        let mine: Vec<Vec<Perm>> = report.structures.iter().map(|c| c.structure.subgroup().elements().to_vec()).collect();
        let mut mine_sorted = mine.clone();
        mine_sorted.sort();
        let other: Vec<Vec<Perm>> = enumerate_by_transversals(&action).unwrap().iter().map(|s| s.elements().to_vec()).collect();
        prop_assert_eq!(mine_sorted, other);
        let parallel = enumerate_with(&action, &Limits { workers: 3, ..limits }).unwrap();
        let sequential = enumerate_with(&action, &Limits::default()).unwrap();
        prop_assert_eq!(parallel.nodes, sequential.nodes);
        let p: Vec<_> = parallel.structures.iter().map(|s| s.subgroup().clone()).collect();
        let q: Vec<_> = sequential.structures.iter().map(|s| s.subgroup().clone()).collect();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn trivial_action_gives_direct_product(m in 1usize..8, k in 1usize..6) {
        let sd = build(&parse(&format!("SD(C({m}), C({k}), 1)")).unwrap()).unwrap().group;
        let dp = direct_product(&cyclic(m).unwrap(), &cyclic(k).unwrap()).unwrap();
        prop_assert_eq!(sd.order(), m * k);
        prop_assert!(are_isomorphic(&sd, &dp).unwrap());
    }

    #[test]
    fn holomorph_order(e in prop::sample::select(vec!["C(5)", "C(6)", "C(8)", "D(4)", "Q(8)", "E(2,2)", "E(3,2)", "S(3)", "C(2) x C(4)", "A(4)"])) {
        let n = build(&parse(e).unwrap()).unwrap().group;
        let hol = holomorph(&n).unwrap();
        prop_assert_eq!(hol.group().order(), n.order() * automorphism_group(&n).unwrap().order());
        prop_assert!(hol.group().order() > 1000 || hol.group().check_axioms());
    }
}
