//! Problem setup from the command-line vocabulary and the serializable report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engine::{ExtensionProblem, Limits};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::groupspec::{self, GroupExpr};
use crate::minimality::ClassificationReport;

pub const SCHEMA_VERSION: u32 = 1;

/// How `G'` is chosen inside `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    /// `G' = 1`.
    Galois,
    /// Stabilizer of point 0; `G` must be a permutation group.
    StabilizerOfPoint,
    /// The complement tagged by an `SD(..)` or `Hol(..)` expression.
    Complement,
    /// `gens[...]` over the points of `G`.
    Gens(String),
}

impl SubgroupSpec {
    pub fn describe(&self) -> String {
        match self {
            SubgroupSpec::Galois => "trivial".into(),
            SubgroupSpec::StabilizerOfPoint => "stabilizer of point 0".into(),
            SubgroupSpec::Complement => "complement".into(),
            SubgroupSpec::Gens(text) => text.trim().to_string(),
        }
    }
}

/// A parsed group expression together with the problem it defines.
#[derive(Clone, Debug)]
pub struct ProblemInput {
    pub expr: GroupExpr,
    pub subgroup: SubgroupSpec,
    pub problem: ExtensionProblem,
}

pub fn resolve_problem(group_text: &str, spec: &SubgroupSpec) -> Result<ProblemInput> {
    let expr = groupspec::parse(group_text)?;
    let built = groupspec::build(&expr)?;
    let g = built.group;
    let stabilizer = match spec {
        SubgroupSpec::Galois => g.trivial_subgroup(),
        SubgroupSpec::StabilizerOfPoint => point_stabilizer(&g)?,
        SubgroupSpec::Complement => built.complement.ok_or_else(|| {
            Error::Precondition("only SD(..) and Hol(..) expressions carry a complement".into())
        })?,
        SubgroupSpec::Gens(text) => subgroup_from_gens(&g, text)?,
    };
    let problem = ExtensionProblem::new(g, stabilizer)?;
    Ok(ProblemInput {
        expr,
        subgroup: spec.clone(),
        problem,
    })
}

fn point_stabilizer(g: &FiniteGroup) -> Result<Subgroup> {
    if g.perm_degree().is_none() {
        return Err(Error::Precondition(
            "the group is not given by permutations".into(),
        ));
    }
    g.subgroup((0..g.order()).filter(|&a| g.perm(a).is_some_and(|p| p.apply(0) == 0)))
}

fn subgroup_from_gens(g: &FiniteGroup, text: &str) -> Result<Subgroup> {
    let degree = g
        .perm_degree()
        .ok_or_else(|| Error::Precondition("the group is not given by permutations".into()))?;
    let GroupExpr::Gens { perms, .. } = groupspec::parse(text)? else {
        return Err(Error::InvalidParameter(format!(
            "expected gens[...], got `{}`",
            text.trim()
        )));
    };
    let mut indices = Vec::new();
    for p in perms {
        let p = p.padded(degree)?;
        let a = g.index_of_perm(&p).ok_or_else(|| {
            Error::InvalidParameter(format!("{p} is not an element of the group"))
        })?;
        indices.push(a);
    }
    Ok(g.generate(&indices))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub problem: ProblemDoc,
    pub structures: Vec<StructureDoc>,
    pub stats: StatsDoc,
    pub engine: EngineDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemDoc {
    pub group: String,
    pub group_order: usize,
    pub subgroup: String,
    pub subgroup_order: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    #[serde(rename = "type")]
    pub type_name: String,
    /// Generators of `N` in cycle notation.
    pub generators: Vec<String>,
    pub minimal: bool,
    pub subhopf_count: usize,
    pub stable_orders: Vec<usize>,
    /// Order of the largest nontrivial proper characteristic subgroup of `N`.
    pub characteristic_obstruction: Option<usize>,
    /// Whether `N ⊆ λ(G)`.
    pub inside_image: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCount {
    pub count: usize,
    pub minimal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsDoc {
    pub has_structures: bool,
    pub structure_count: usize,
    pub minimal_count: usize,
    pub intermediate_count: usize,
    pub normal_complement_count: usize,
    pub normal_complement_bound: usize,
    pub by_type: BTreeMap<String, TypeCount>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineDoc {
    pub max_degree: usize,
    pub node_budget: u64,
    pub nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ReportDocument {
    /// The canonical document: no worker count, no timing.
    pub fn new(input: &ProblemInput, report: &ClassificationReport, limits: &Limits) -> Self {
        Self::from_parts(
            &groupspec::render(&input.expr),
            &input.subgroup.describe(),
            report,
            limits,
        )
    }

    pub fn from_parts(
        group: &str,
        subgroup: &str,
        report: &ClassificationReport,
        limits: &Limits,
    ) -> Self {
        let prob = &report.problem;
        let structures = report
            .structures
            .iter()
            .map(|c| StructureDoc {
                type_name: c.structure.type_name().to_string(),
                generators: c
                    .structure
                    .generators()
                    .iter()
                    .map(|p| p.to_string())
                    .collect(),
                minimal: c.minimal,
                subhopf_count: c.lattice.len(),
                stable_orders: c.lattice.orders(),
                characteristic_obstruction: c.obstruction.as_ref().map(Subgroup::order),
                inside_image: c.preimage.is_some(),
            })
            .collect();
        let by_type = report
            .by_type()
            .into_iter()
            .map(|(k, (count, minimal))| (k, TypeCount { count, minimal }))
            .collect();
        ReportDocument {
            schema: SCHEMA_VERSION,
            problem: ProblemDoc {
                group: group.to_string(),
                group_order: prob.group().order(),
                subgroup: subgroup.to_string(),
                subgroup_order: prob.stabilizer().order(),
                degree: prob.degree(),
            },
            structures,
            stats: StatsDoc {
                has_structures: report.has_structures(),
                structure_count: report.structures.len(),
                minimal_count: report.minimal_count,
                intermediate_count: report.intermediate_count,
                normal_complement_count: report.normal_complements.len(),
                normal_complement_bound: report.normal_complement_bound,
                by_type,
            },
            engine: EngineDoc {
                max_degree: limits.max_degree,
                node_budget: limits.node_budget,
                nodes: report.nodes,
                workers: None,
                elapsed_ms: None,
            },
        }
    }

    /// Adds the run metadata excluded from canonical output.
    pub fn with_run_info(mut self, workers: usize, elapsed_ms: u64) -> Self {
        self.engine.workers = Some(workers);
        self.engine.elapsed_ms = Some(elapsed_ms);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let p = &self.problem;
        let s = &self.stats;
        let mut out = String::new();
        let _ = writeln!(out, "G  = {} (order {})", p.group, p.group_order);
        let _ = writeln!(out, "G' = {} (order {})", p.subgroup, p.subgroup_order);
        let _ = writeln!(out, "degree {}", p.degree);
        if !s.has_structures {
            let _ = writeln!(out, "no Hopf-Galois structure");
        } else {
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:>3}  {:<10} {:<7} {:>7}  {:<14} generators",
                "#", "type", "minimal", "subhopf", "stable orders"
            );
            for (i, st) in self.structures.iter().enumerate() {
                let orders = st
                    .stable_orders
                    .iter()
                    .map(|o| o.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let _ = writeln!(
                    out,
                    "{:>3}  {:<10} {:<7} {:>7}  {:<14} {}",
                    i + 1,
                    st.type_name,
                    if st.minimal { "yes" } else { "no" },
                    st.subhopf_count,
                    orders,
                    st.generators.join(" ")
                );
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "structures            {}", s.structure_count);
        let _ = writeln!(out, "minimal               {}", s.minimal_count);
        for (name, c) in &s.by_type {
            let _ = writeln!(out, "  {:<19} {} ({} minimal)", name, c.count, c.minimal);
        }
        let _ = writeln!(out, "intermediate groups   {}", s.intermediate_count);
        let _ = writeln!(out, "normal complements    {}", s.normal_complement_count);
        let _ = writeln!(out, "minimal lower bound   {}", s.normal_complement_bound);
        let _ = write!(out, "search nodes          {}", self.engine.nodes);
        if let Some(ms) = self.engine.elapsed_ms {
            let _ = write!(out, " in {ms} ms");
        }
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimality::classify;

    fn doc(group: &str, spec: SubgroupSpec) -> ReportDocument {
        let input = resolve_problem(group, &spec).unwrap();
        let report = classify(&input.problem).unwrap();
        ReportDocument::new(&input, &report, &Limits::default())
    }

    #[test]
    fn stabilizer_and_gens_agree() {
        let a = resolve_problem("S(4)", &SubgroupSpec::StabilizerOfPoint).unwrap();
        let b =
            resolve_problem("S(4)", &SubgroupSpec::Gens("gens[(1 2), (1 2 3)]".into())).unwrap();
        assert_eq!(a.problem.stabilizer(), b.problem.stabilizer());
        assert_eq!(a.problem.degree(), 4);
    }

    #[test]
    fn subgroup_spec_errors() {
        assert!(resolve_problem("C(4)", &SubgroupSpec::StabilizerOfPoint).is_err());
        assert!(resolve_problem("S(4)", &SubgroupSpec::Complement).is_err());
        assert!(resolve_problem("S(3)", &SubgroupSpec::Gens("gens[(0 1 2 3)]".into())).is_err());
        assert!(resolve_problem("S(3)", &SubgroupSpec::Gens("S(3)".into())).is_err());
        let e = resolve_problem("Hol(C(4))", &SubgroupSpec::Complement).unwrap();
        assert_eq!(e.problem.degree(), 4);
    }

    #[test]
    fn klein_report() {
        let d = doc("S(4)", SubgroupSpec::StabilizerOfPoint);
        assert_eq!(d.schema, 1);
        assert_eq!(d.structures.len(), 1);
        let s = &d.structures[0];
        assert_eq!(s.type_name, "E(2,2)");
        assert!(s.minimal && s.inside_image);
        assert_eq!(s.stable_orders, vec![1, 4]);
        assert_eq!(s.characteristic_obstruction, None);
        assert_eq!((s.subhopf_count, d.stats.intermediate_count), (2, 2));
    }

    #[test]
    fn json_round_trip_and_canonical_fields() {
        let d = doc("C(8)", SubgroupSpec::Galois);
        let text = d.to_json();
        assert!(!text.contains("elapsed_ms") && !text.contains("workers"));
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(text, doc("C(8)", SubgroupSpec::Galois).to_json());
        let timed = d.with_run_info(4, 12).to_json();
        assert!(timed.contains("\"elapsed_ms\": 12"));
    }

    #[test]
    fn empty_table() {
        let t = doc("S(5)", SubgroupSpec::StabilizerOfPoint).to_table();
        assert!(t.contains("no Hopf-Galois structure"));
        assert!(t.contains("structures            0"));
    }
}
