//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p hopf-galois --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use hopf_galois::catalog::problem_fixtures;
use hopf_galois::engine::{enumerate_by_transversals, enumerate_regular_normalized};
use hopf_galois::group::{
    are_isomorphic, automorphism_group, cyclic, dihedral, elementary_abelian, gamma_subgroups,
    holomorph, quaternion, symmetric, verify_conjugation_identity, verify_inner_twist, FiniteGroup,
};
use hopf_galois::minimality::{
    complement_structure, correspondence_stats, g_stable_subgroups_by_orbits, is_minimal,
    minimal_lower_bound, normal_complements,
};
use hopf_galois::{
    classify, coset_action, resolve_problem, ExtensionProblem, PermSet, SubgroupSpec,
};

/// Prints the verdict line, then fails the test if any check failed or the
/// run exceeded its time limit.
fn verdict(id: u32, title: &str, start: Instant, limit: Duration, checks: &[(&str, bool)]) {
    let elapsed = start.elapsed();
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(what, _)| *what)
        .collect();
    let in_time = elapsed <= limit;
    let pass = failed.is_empty() && in_time;
    let mut line = format!(
        "{} criterion {id:>2}: {title} [{:.3}s, limit {}s]",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    if !failed.is_empty() {
        line.push_str(&format!(" failed: {}", failed.join("; ")));
    }
    if !in_time {
        line.push_str(" over time limit");
    }
    println!("{line}");
    assert!(pass, "{line}");
}

fn problem(group: &str, spec: SubgroupSpec) -> ExtensionProblem {
    resolve_problem(group, &spec).unwrap().problem
}

fn galois(g: FiniteGroup) -> ExtensionProblem {
    ExtensionProblem::galois(g).unwrap()
}

/// Equal as collections of element sets, ignoring order.
fn same_sets(a: &[PermSet], b: &[PermSet]) -> bool {
    let keys = |v: &[PermSet]| {
        let mut k: Vec<Vec<hopf_galois::Perm>> = v.iter().map(|s| s.elements().to_vec()).collect();
        k.sort();
        k
    };
    keys(a) == keys(b)
}

#[test]
fn criterion_01_s4_over_s3() {
    let start = Instant::now();
    let prob = problem("S(4)", SubgroupSpec::StabilizerOfPoint);
    let report = classify(&prob).unwrap();
    let klein = elementary_abelian(2, 2).unwrap();
    let one = report.structures.len() == 1;
    let s = &report.structures[0];
    verdict(
        1,
        "(S4, S3): one structure, Klein type, minimal, stats (2, 2)",
        start,
        Duration::from_secs(1),
        &[
            ("degree 4", prob.degree() == 4),
            ("exactly one structure", one),
            (
                "Klein type",
                are_isomorphic(s.structure.abstract_group(), &klein).unwrap(),
            ),
            ("minimal", s.minimal && is_minimal(&s.structure).unwrap()),
            (
                "stats (2, 2)",
                correspondence_stats(&prob, &s.structure).unwrap() == (2, 2),
            ),
        ],
    );
}

#[test]
fn criterion_02_s5_over_s4() {
    let start = Instant::now();
    let prob = problem("S(5)", SubgroupSpec::StabilizerOfPoint);
    let report = classify(&prob).unwrap();
    verdict(
        2,
        "(S5, S4): no structure",
        start,
        Duration::from_secs(5),
        &[
            ("degree 5", prob.degree() == 5),
            (
                "zero structures",
                report.structures.is_empty() && !report.has_structures(),
            ),
        ],
    );
}

#[test]
fn criterion_03_galois_c8() {
    let start = Instant::now();
    let report = classify(&galois(cyclic(8).unwrap())).unwrap();
    let count_like = |h: &FiniteGroup| {
        report
            .structures
            .iter()
            .filter(|c| are_isomorphic(c.structure.abstract_group(), h).unwrap())
            .count()
    };
    let cyc = count_like(&cyclic(8).unwrap());
    let dih = count_like(&dihedral(4).unwrap());
    let quat = count_like(&quaternion(8).unwrap());
    verdict(
        3,
        &format!("Galois C8: 6 structures, {cyc} cyclic / {dih} dihedral / {quat} quaternion, none minimal"),
        start,
        Duration::from_secs(60),
        &[
            ("six structures", report.structures.len() == 6),
            ("2/2/2 by type", (cyc, dih, quat) == (2, 2, 2)),
            ("none minimal", report.minimal_count == 0),
        ],
    );
}

#[test]
fn criterion_04_galois_prime_cyclic() {
    let start = Instant::now();
    let mut checks = Vec::new();
    for p in [2, 3, 5, 7] {
        let report = classify(&galois(cyclic(p).unwrap())).unwrap();
        checks.push((report.structures.len() == 1, report.minimal_count == 1));
    }
    let labels = ["C2", "C3", "C5", "C7"];
    let named: Vec<(String, bool)> = labels
        .iter()
        .zip(&checks)
        .map(|(l, (one, min))| (format!("{l}: one minimal structure"), *one && *min))
        .collect();
    let refs: Vec<(&str, bool)> = named.iter().map(|(s, b)| (s.as_str(), *b)).collect();
    verdict(
        4,
        "Galois C_p, p in {2,3,5,7}: exactly one structure, minimal",
        start,
        Duration::from_secs(10),
        &refs,
    );
}

#[test]
fn criterion_05_galois_dihedral() {
    let start = Instant::now();
    let d3 = galois(dihedral(3).unwrap());
    let d5 = galois(dihedral(5).unwrap());
    let r3 = classify(&d3).unwrap();
    let r5 = classify(&d5).unwrap();
    let action = coset_action(&d3).unwrap();
    let by_search: Vec<PermSet> = enumerate_regular_normalized(&action)
        .unwrap()
        .into_iter()
        .map(|s| s.subgroup().clone())
        .collect();
    let by_transversals = enumerate_by_transversals(&action).unwrap();
    verdict(
        5,
        &format!(
            "Galois D3 ({} structures) and D5 ({} structures): none minimal; engines agree at degree 6",
            r3.structures.len(),
            r5.structures.len()
        ),
        start,
        Duration::from_secs(300),
        &[
            ("degrees 6 and 10", d3.degree() == 6 && d5.degree() == 10),
            ("D3 none minimal", r3.has_structures() && r3.structures.iter().all(|c| !c.minimal)),
            ("D5 none minimal", r5.has_structures() && r5.structures.iter().all(|c| !c.minimal)),
            ("engines agree at degree 6", same_sets(&by_search, &by_transversals)),
        ],
    );
}

#[test]
fn criterion_06_a4_over_c3() {
    let start = Instant::now();
    let prob = problem(
        "SD(E(2,2), matgrp(2,2,[[[1,1],[1,0]]]))",
        SubgroupSpec::Complement,
    );
    let report = classify(&prob).unwrap();
    let klein = elementary_abelian(2, 2).unwrap();
    let g = prob.group();
    let complements = normal_complements(&prob).unwrap();
    let v_ok = complements.len() == 1 && {
        let v = g.subgroup_as_group(&complements[0]).unwrap();
        are_isomorphic(&v, &klein).unwrap()
    };
    let bound = minimal_lower_bound(&prob).unwrap();
    verdict(
        6,
        "(A4, C3): Klein structure minimal; complements = {V}; bound 1 <= minimal count",
        start,
        Duration::from_secs(1),
        &[
            (
                "ambient is A4",
                are_isomorphic(g, &hopf_galois::group::alternating(4).unwrap()).unwrap(),
            ),
            (
                "minimal Klein structure",
                report.structures.iter().any(|c| {
                    c.minimal && are_isomorphic(c.structure.abstract_group(), &klein).unwrap()
                }),
            ),
            ("normal complements = {V}", v_ok),
            ("bound 1", bound == 1),
            ("bound <= minimal count", bound <= report.minimal_count),
        ],
    );
}

/// The structure given by the unique normal complement, and its verdict.
fn complement_case(
    expr: &str,
    order: usize,
    degree: usize,
    n: &FiniteGroup,
) -> Vec<(&'static str, bool)> {
    let prob = problem(expr, SubgroupSpec::Complement);
    let action = coset_action(&prob).unwrap();
    let complements = normal_complements(&prob).unwrap();
    let mut out = vec![
        ("ambient order", prob.group().order() == order),
        ("degree", prob.degree() == degree),
        ("unique normal complement", complements.len() == 1),
    ];
    if let Some(m) = complements.first() {
        let s = complement_structure(&action, m).unwrap();
        out.push((
            "N has the expected type",
            are_isomorphic(s.abstract_group(), n).unwrap(),
        ));
        out.push(("structure minimal", is_minimal(&s).unwrap()));
        out.push((
            "orbit lattice has size 2",
            g_stable_subgroups_by_orbits(&s).len() == 2,
        ));
    }
    out
}

#[test]
fn criterion_07_order_56() {
    let start = Instant::now();
    let checks = complement_case(
        "SD(E(2,3), matgrp(2,3,[[[1,1,1],[1,1,0],[1,0,0]]]))",
        56,
        8,
        &elementary_abelian(2, 3).unwrap(),
    );
    verdict(
        7,
        "E(2,3) x| C7, degree 8: the E(2,3) structure is minimal",
        start,
        Duration::from_secs(30),
        &checks,
    );
}

#[test]
fn criterion_08_order_36() {
    let start = Instant::now();
    let checks = complement_case(
        "SD(E(3,2), matgrp(3,2,[[[0,1],[-1,0]]]))",
        36,
        9,
        &elementary_abelian(3, 2).unwrap(),
    );
    verdict(
        8,
        "E(3,2) x| C4, degree 9: the E(3,2) structure is minimal",
        start,
        Duration::from_secs(60),
        &checks,
    );
}

#[test]
fn criterion_09_holomorph_orders() {
    let start = Instant::now();
    let klein = elementary_abelian(2, 2).unwrap();
    let hol_klein = holomorph(&klein).unwrap();
    let aut = automorphism_group(&klein).unwrap();
    let hol_c4 = holomorph(&cyclic(4).unwrap()).unwrap();
    verdict(
        9,
        "Hol(E(2,2)) ~ S4; |Aut(E(2,2))| = 6; |Hol(C4)| = 8",
        start,
        Duration::from_secs(1),
        &[
            (
                "Hol(E(2,2)) ~ S4",
                are_isomorphic(hol_klein.group(), &symmetric(4).unwrap()).unwrap(),
            ),
            ("|Aut(E(2,2))| = 6", aut.order() == 6),
            ("Aut(E(2,2)) non-abelian", !aut.group().is_abelian()),
            ("|Hol(C4)| = 8", hol_c4.group().order() == 8),
        ],
    );
}

#[test]
fn criterion_10_gamma_identity() {
    let start = Instant::now();
    let mut named: Vec<(String, bool)> = Vec::new();
    let small = [
        ("S3", symmetric(3).unwrap()),
        ("D4", dihedral(4).unwrap()),
        ("Q8", quaternion(8).unwrap()),
        ("C4", cyclic(4).unwrap()),
    ];
    for (name, n) in &small {
        let pair = gamma_subgroups(n).unwrap();
        let aut_order = pair.hol.aut.order();
        let expected_triples = n.order() * n.order() * aut_order;
        named.push((
            format!("{name}: identity on all {expected_triples} triples"),
            verify_conjugation_identity(&pair.hol) == Ok(expected_triples),
        ));
        named.push((
            format!("{name}: inner twist"),
            verify_inner_twist(&pair.hol),
        ));
        named.push((
            format!("{name}: both normal"),
            pair.is_normal_in_hol(&pair.gamma1) && pair.is_normal_in_hol(&pair.gamma2),
        ));
        named.push((
            format!("{name}: distinct iff nonabelian"),
            (pair.gamma1 != pair.gamma2) != n.is_abelian(),
        ));
        named.push((
            format!("{name}: Γ2 ~ N"),
            pair.twisted_embedding_is_isomorphism(),
        ));
    }
    let a5 = hopf_galois::group::alternating(5).unwrap();
    let pair = gamma_subgroups(&a5).unwrap();
    named.push(("A5: |Hol| = 7200".into(), pair.hol.group().order() == 7200));
    named.push((
        "A5: both normal by generator conjugation".into(),
        pair.is_normal_in_hol(&pair.gamma1) && pair.is_normal_in_hol(&pair.gamma2),
    ));
    named.push(("A5: distinct".into(), pair.gamma1 != pair.gamma2));
    let refs: Vec<(&str, bool)> = named.iter().map(|(s, b)| (s.as_str(), *b)).collect();
    verdict(
        10,
        "Γ1/Γ2 suite for S3, D4, Q8 (plus C4) and A5",
        start,
        Duration::from_secs(120),
        &refs,
    );
}

#[test]
fn criterion_11_structure_properties() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut structures = 0;
    let fixtures = problem_fixtures();
    for f in &fixtures {
        let input = resolve_problem(f.group, &f.subgroup).unwrap();
        let prob = &input.problem;
        let report = classify(prob).unwrap();
        let g = prob.group();
        let mut fail = |what: &str| failures.push(format!("{} ({}): {what}", f.label, f.group));
        if report.minimal_count < report.normal_complement_bound {
            fail("minimal count below the complement bound");
        }
        for c in &report.structures {
            structures += 1;
            let s = &c.structure;
            let lattice = c.lattice.len();
            if c.obstruction.is_some() && c.minimal {
                fail("(a) obstruction but minimal");
            }
            if is_prime(s.order()) && !c.minimal {
                fail("(b) prime order but not minimal");
            }
            if !(2..=report.intermediate_count).contains(&lattice) {
                fail("(c) subhopf count outside [2, intermediate]");
            }
            if c.minimal != (lattice == 2)
                || c.minimal != (g_stable_subgroups_by_orbits(s).len() == 2)
            {
                fail("(d) minimal does not match lattice size 2");
            }
            if let Some(m) = &c.preimage {
                let complement = g.is_normal(m)
                    && m.order() == prob.degree()
                    && m.intersection_order(prob.stabilizer()) == 1;
                if !complement {
                    fail("(e) preimage is not a normal complement");
                }
            }
        }
        if prob.degree() <= 8 {
            let action = coset_action(prob).unwrap();
            let mine: Vec<PermSet> = report
                .structures
                .iter()
                .map(|c| c.structure.subgroup().clone())
                .collect();
            if !same_sets(&mine, &enumerate_by_transversals(&action).unwrap()) {
                failures.push(format!("{}: (f) engines disagree", f.label));
            }
        }
    }
    for f in &failures {
        println!("     {f}");
    }
    verdict(
        11,
        &format!(
            "properties (a)-(f) over {} catalog problems, {structures} structures",
            fixtures.len()
        ),
        start,
        Duration::from_secs(600),
        &[("all properties hold", failures.is_empty())],
    );
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Brute-force oracle: every regular subgroup of Sym(4) given as a set of 4
/// permutations closed under composition, kept when normalized by the image.
fn brute_force_degree_four(action: &hopf_galois::CosetAction) -> Vec<PermSet> {
    let mut perms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let images = vec![a, b, c, d];
                    let mut seen = images.clone();
                    seen.sort_unstable();
                    seen.dedup();
                    if seen.len() == 4 {
                        perms.push(hopf_galois::Perm::from_images(images).unwrap());
                    }
                }
            }
        }
    }
    let id = hopf_galois::Perm::identity(4);
    let others: Vec<&hopf_galois::Perm> = perms.iter().filter(|p| **p != id).collect();
    let mut out = Vec::new();
    for i in 0..others.len() {
        for j in i + 1..others.len() {
            for k in j + 1..others.len() {
                let set = [
                    id.clone(),
                    others[i].clone(),
                    others[j].clone(),
                    others[k].clone(),
                ];
                let closed = set
                    .iter()
                    .all(|x| set.iter().all(|y| set.contains(&x.compose(y).unwrap())));
                let transitive = (0..4).all(|t| set.iter().any(|x| x.apply(0) == t));
                if closed && transitive {
                    let s = PermSet::from_elements(4, set).unwrap();
                    let normalized = action
                        .generators()
                        .iter()
                        .all(|g| s.elements().iter().all(|x| s.contains(&g.conjugate(x))));
                    if normalized {
                        out.push(s);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.elements().cmp(b.elements()));
    out
}

#[test]
fn criterion_12_almost_cyclic_degree_four() {
    let start = Instant::now();
    // D4 = C4 x| C2 with the C2 acting by inversion; the complement is a
    // non-central reflection.
    let prob = problem("SD(C(4), C(2), -1)", SubgroupSpec::Complement);
    let action = coset_action(&prob).unwrap();
    let report = classify(&prob).unwrap();
    let oracle = brute_force_degree_four(&action);
    let found: Vec<PermSet> = report
        .structures
        .iter()
        .map(|c| c.structure.subgroup().clone())
        .collect();
    let c4 = cyclic(4).unwrap();
    let cyclic_type = report
        .structures
        .iter()
        .filter(|c| are_isomorphic(c.structure.abstract_group(), &c4).unwrap())
        .count();
    let g = prob.group();
    verdict(
        12,
        &format!(
            "almost cyclic, degree 4: {} structures ({} cyclic type), {} minimal",
            report.structures.len(),
            cyclic_type,
            report.minimal_count
        ),
        start,
        Duration::from_secs(10),
        &[
            ("G is D4", are_isomorphic(g, &dihedral(4).unwrap()).unwrap()),
            (
                "G' non-central of order 2",
                prob.stabilizer().order() == 2 && !prob.stabilizer().is_subset_of(&g.center()),
            ),
            (
                "cyclic normal complement",
                normal_complements(&prob)
                    .unwrap()
                    .iter()
                    .any(|m| are_isomorphic(&g.subgroup_as_group(m).unwrap(), &c4).unwrap()),
            ),
            (
                "enumeration matches brute force",
                same_sets(&found, &oracle),
            ),
            (
                "none minimal",
                report.has_structures() && report.minimal_count == 0,
            ),
            (
                "all structures of cyclic type",
                cyclic_type == report.structures.len(),
            ),
        ],
    );
}
