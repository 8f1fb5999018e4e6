//! Named fixture problems with stored expected values.
//!
//! Each problem case is classified, checked against its expectations and,
//! for degree at most 8, re-enumerated by the transversal engine. The Γ cases
//! check the two copies of `N` inside `Hol(N)`.

use serde::{Deserialize, Serialize};

use crate::engine::{coset_action, enumerate_by_transversals, Limits, TRANSVERSAL_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::group::{gamma_subgroups, verify_conjugation_identity, verify_inner_twist};
use crate::groupspec;
use crate::minimality::classify_with;
use crate::report::{resolve_problem, ReportDocument, SubgroupSpec};

/// Expected values; `None` and empty lists are not checked.
#[derive(Clone, Debug, Default)]
pub struct Expectation {
    pub structures: Option<usize>,
    pub minimal: Option<usize>,
    /// The full type breakdown.
    pub by_type: Vec<(&'static str, usize)>,
    /// Types that must have at least one minimal structure.
    pub minimal_types: Vec<&'static str>,
    pub intermediate: Option<usize>,
    pub normal_complements: Option<usize>,
    pub bound: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ProblemFixture {
    pub example: &'static str,
    pub label: &'static str,
    pub group: &'static str,
    pub subgroup: SubgroupSpec,
    pub expect: Expectation,
}

/// Order and Γ checks for `Hol(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaDoc {
    pub n: String,
    pub n_order: usize,
    pub n_abelian: bool,
    pub hol_order: usize,
    pub gamma1_normal: bool,
    pub gamma2_normal: bool,
    pub distinct: bool,
    pub gamma2_isomorphic: bool,
    pub inner_twist: bool,
    /// Triples `(x, g, θ)` checked by the conjugation identity.
    pub identity_checked: usize,
    pub identity_holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub example: String,
    pub label: String,
    pub passed: bool,
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaDoc>,
}

pub const FIXTURE_NAMES: &[&str] = &[
    "example1", "remark", "example2", "example3", "example4", "example5", "prime",
];

/// Default groups for the Γ checks.
pub const GAMMA_GROUPS: &[&str] = &["S(3)", "D(4)", "Q(8)", "C(4)", "A(5)"];

fn fx(
    example: &'static str,
    label: &'static str,
    group: &'static str,
    subgroup: SubgroupSpec,
    expect: Expectation,
) -> ProblemFixture {
    ProblemFixture {
        example,
        label,
        group,
        subgroup,
        expect,
    }
}

fn exact(structures: usize, minimal: usize, by_type: Vec<(&'static str, usize)>) -> Expectation {
    Expectation {
        structures: Some(structures),
        minimal: Some(minimal),
        by_type,
        ..Expectation::default()
    }
}

pub fn problem_fixtures() -> Vec<ProblemFixture> {
    use SubgroupSpec::*;
    let one_minimal = |ty: &'static str| Expectation {
        minimal: Some(1),
        minimal_types: vec![ty],
        ..Expectation::default()
    };
    vec![
        fx(
            "example1",
            "degree 2",
            "C(2)",
            Galois,
            exact(1, 1, vec![("C2", 1)]),
        ),
        fx(
            "example1",
            "degree 3",
            "S(3)",
            StabilizerOfPoint,
            exact(1, 1, vec![("C3", 1)]),
        ),
        fx(
            "example1",
            "degree 4",
            "S(4)",
            StabilizerOfPoint,
            Expectation {
                intermediate: Some(2),
                bound: Some(1),
                ..exact(1, 1, vec![("E(2,2)", 1)])
            },
        ),
        fx(
            "remark",
            "degree 5",
            "S(5)",
            StabilizerOfPoint,
            Expectation {
                normal_complements: Some(0),
                ..exact(0, 0, vec![])
            },
        ),
        fx(
            "example2",
            "dihedral degree 6",
            "D(3)",
            Galois,
            exact(5, 0, vec![("C6", 3), ("S3", 2)]),
        ),
        fx(
            "example2",
            "dihedral degree 10",
            "D(5)",
            Galois,
            exact(7, 0, vec![("C10", 5), ("D5", 2)]),
        ),
        fx(
            "example2",
            "holomorph of C3",
            "Hol(C(3))",
            Galois,
            exact(5, 0, vec![("C6", 3), ("S3", 2)]),
        ),
        fx(
            "example2",
            "cyclic degree 8",
            "C(8)",
            Galois,
            exact(6, 0, vec![("C8", 2), ("D4", 2), ("Q8", 2)]),
        ),
        fx(
            "example2",
            "cyclic degree 9",
            "C(9)",
            Galois,
            exact(3, 0, vec![("C9", 3)]),
        ),
        fx(
            "example3",
            "dihedral over C2, degree 3",
            "SD(C(3), C(2), -1)",
            Complement,
            exact(1, 1, vec![("C3", 1)]),
        ),
        fx(
            "example3",
            "dihedral over C2, degree 5",
            "SD(C(5), C(2), -1)",
            Complement,
            exact(1, 1, vec![("C5", 1)]),
        ),
        fx(
            "example3",
            "dihedral over C2, degree 7",
            "SD(C(7), C(2), -1)",
            Complement,
            exact(1, 1, vec![("C7", 1)]),
        ),
        fx(
            "example3",
            "almost cyclic degree 4",
            "SD(C(4), C(2), -1)",
            Complement,
            exact(2, 0, vec![("C4", 1), ("E(2,2)", 1)]),
        ),
        fx(
            "example3",
            "almost cyclic degree 8",
            "SD(C(8), C(2), -1)",
            Complement,
            exact(6, 0, vec![("C8", 2), ("D4", 2), ("Q8", 2)]),
        ),
        fx(
            "example4",
            "A4 over C3",
            "SD(E(2,2), matgrp(2,2,[[[1,1],[1,0]]]))",
            Complement,
            Expectation {
                structures: Some(1),
                normal_complements: Some(1),
                bound: Some(1),
                ..one_minimal("E(2,2)")
            },
        ),
        fx(
            "example4",
            "A4 natural action",
            "A(4)",
            StabilizerOfPoint,
            one_minimal("E(2,2)"),
        ),
        fx(
            "example4",
            "order 56 over C7",
            "SD(E(2,3), matgrp(2,3,[[[1,1,1],[1,1,0],[1,0,0]]]))",
            Complement,
            one_minimal("E(2,3)"),
        ),
        fx(
            "example4",
            "order 36 over C4",
            "SD(E(3,2), matgrp(3,2,[[[0,1],[-1,0]]]))",
            Complement,
            one_minimal("E(3,2)"),
        ),
        fx(
            "example4",
            "Hol(E(2,2))",
            "Hol(E(2,2))",
            Complement,
            one_minimal("E(2,2)"),
        ),
        fx(
            "example4",
            "Hol(E(2,3))",
            "Hol(E(2,3))",
            Complement,
            one_minimal("E(2,3)"),
        ),
        fx(
            "example4",
            "Hol(E(3,2))",
            "Hol(E(3,2))",
            Complement,
            one_minimal("E(3,2)"),
        ),
        fx(
            "example4",
            "Hol(C4)",
            "Hol(C(4))",
            Complement,
            exact(2, 0, vec![("C4", 1), ("E(2,2)", 1)]),
        ),
        fx("prime", "C3", "C(3)", Galois, exact(1, 1, vec![("C3", 1)])),
        fx("prime", "C5", "C(5)", Galois, exact(1, 1, vec![("C5", 1)])),
        fx("prime", "C7", "C(7)", Galois, exact(1, 1, vec![("C7", 1)])),
    ]
}

/// Runs one fixture set. `gamma_override` replaces the Γ group list.
pub fn run_catalog(
    name: &str,
    gamma_override: Option<&str>,
    limits: &Limits,
) -> Result<Vec<CaseOutcome>> {
    let names: Vec<&str> = match name {
        "all" => FIXTURE_NAMES.to_vec(),
        n if FIXTURE_NAMES.contains(&n) => vec![n],
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown fixture `{other}`; expected one of {} or all",
                FIXTURE_NAMES.join(", ")
            )))
        }
    };
    let mut out = Vec::new();
    for n in names {
        if n == "example5" {
            let groups: Vec<&str> = match gamma_override {
                Some(g) => vec![g],
                None => GAMMA_GROUPS.to_vec(),
            };
            for g in groups {
                out.push(gamma_case(g)?);
            }
        } else {
            for f in problem_fixtures().iter().filter(|f| f.example == n) {
                out.push(run_fixture(f, limits)?);
            }
        }
    }
    Ok(out)
}

pub fn run_fixture(f: &ProblemFixture, limits: &Limits) -> Result<CaseOutcome> {
    let input = resolve_problem(f.group, &f.subgroup)?;
    let report = classify_with(&input.problem, limits)?;
    let doc = ReportDocument::new(&input, &report, limits);
    let mut mismatches = check(&f.expect, &doc);
    if input.problem.degree() <= TRANSVERSAL_DEGREE_CAP {
        let action = coset_action(&input.problem)?;
        let other = enumerate_by_transversals(&action)?;
        let mine: Vec<_> = report
            .structures
            .iter()
            .map(|c| c.structure.subgroup().clone())
            .collect();
        let mut mine_sorted = mine.clone();
        mine_sorted.sort_by(|a, b| a.elements().cmp(b.elements()));
        if mine_sorted != other {
            mismatches.push(format!(
                "engines disagree: {} structures vs {} by transversals",
                mine.len(),
                other.len()
            ));
        }
    }
    Ok(CaseOutcome {
        example: f.example.into(),
        label: f.label.into(),
        passed: mismatches.is_empty(),
        mismatches,
        report: Some(doc),
        gamma: None,
    })
}

/// Differences between `doc` and `expect`, one line each.
pub fn check(expect: &Expectation, doc: &ReportDocument) -> Vec<String> {
    let s = &doc.stats;
    let mut out = Vec::new();
    let mut cmp = |what: &str, want: Option<usize>, got: usize| {
        if let Some(w) = want {
            if w != got {
                out.push(format!("{what}: expected {w}, got {got}"));
            }
        }
    };
    cmp("structures", expect.structures, s.structure_count);
    cmp("minimal structures", expect.minimal, s.minimal_count);
    cmp(
        "intermediate subgroups",
        expect.intermediate,
        s.intermediate_count,
    );
    cmp(
        "normal complements",
        expect.normal_complements,
        s.normal_complement_count,
    );
    cmp(
        "minimal lower bound",
        expect.bound,
        s.normal_complement_bound,
    );
    if !expect.by_type.is_empty() {
        let got: Vec<(String, usize)> = s
            .by_type
            .iter()
            .map(|(k, v)| (k.clone(), v.count))
            .collect();
        let mut want: Vec<(String, usize)> = expect
            .by_type
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect();
        want.sort();
        if got != want {
            out.push(format!("types: expected {want:?}, got {got:?}"));
        }
    }
    for ty in &expect.minimal_types {
        if s.by_type.get(*ty).is_none_or(|c| c.minimal == 0) {
            out.push(format!("no minimal structure of type {ty}"));
        }
    }
    if s.minimal_count < s.normal_complement_bound {
        out.push(format!(
            "minimal count {} below the complement bound {}",
            s.minimal_count, s.normal_complement_bound
        ));
    }
    out
}

pub fn gamma_case(n_text: &str) -> Result<CaseOutcome> {
    let expr = groupspec::parse(n_text)?;
    let n = groupspec::build(&expr)?.group;
    let pair = gamma_subgroups(&n)?;
    let (identity_checked, identity_holds) = match verify_conjugation_identity(&pair.hol) {
        Ok(k) => (k, true),
        Err(_) => (0, false),
    };
    let doc = GammaDoc {
        n: groupspec::render(&expr),
        n_order: n.order(),
        n_abelian: n.is_abelian(),
        hol_order: pair.hol.group().order(),
        gamma1_normal: pair.is_normal_in_hol(&pair.gamma1),
        gamma2_normal: pair.is_normal_in_hol(&pair.gamma2),
        distinct: pair.gamma1 != pair.gamma2,
        gamma2_isomorphic: pair.twisted_embedding_is_isomorphism(),
        inner_twist: verify_inner_twist(&pair.hol),
        identity_checked,
        identity_holds,
    };
    let mut mismatches = Vec::new();
    let checks = [
        (doc.gamma1_normal, "Γ1 is not normal"),
        (doc.gamma2_normal, "Γ2 is not normal"),
        (
            doc.distinct != doc.n_abelian,
            "Γ1 = Γ2 does not match abelianness",
        ),
        (
            doc.gamma2_isomorphic,
            "g ↦ (g⁻¹, σ_g) is not an isomorphism onto Γ2",
        ),
        (doc.inner_twist, "θσ_gθ⁻¹ = σ_θ(g) fails"),
        (doc.identity_holds, "conjugation identity fails"),
        (doc.hol_order % doc.n_order == 0, "holomorph order"),
    ];
    for (ok, msg) in checks {
        if !ok {
            mismatches.push(msg.to_string());
        }
    }
    Ok(CaseOutcome {
        example: "example5".into(),
        label: format!("Hol({})", doc.n),
        passed: mismatches.is_empty(),
        mismatches,
        report: None,
        gamma: Some(doc),
    })
}
