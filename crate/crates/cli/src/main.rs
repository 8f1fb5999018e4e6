use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use hopf_galois::catalog::{run_catalog, CaseOutcome};
use hopf_galois::{classify_with, resolve_problem, Error, Limits, ReportDocument, SubgroupSpec};

#[derive(Parser)]
#[command(
    name = "hgs",
    version,
    about = "Enumerate and classify Hopf-Galois structures of a group pair G ⊇ G'"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the structures of one problem.
    Enumerate(EnumerateArgs),
    /// Run named fixtures and compare against their stored expected values.
    Catalog(CatalogArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("subgroup_spec").required(true)))]
struct EnumerateArgs {
    /// Group expression, e.g. "S(4)" or "SD(E(3,2), matgrp(3,2,[[[0,1],[-1,0]]]))".
    group: String,
    /// G' trivial.
    #[arg(long, group = "subgroup_spec")]
    galois: bool,
    /// G' is the stabilizer of point 0 of a permutation group.
    #[arg(long, group = "subgroup_spec")]
    stabilizer_of_point: bool,
    /// G' is the complement tagged by an SD(..) or Hol(..) expression.
    #[arg(long, group = "subgroup_spec")]
    complement: bool,
    /// G' generated by permutations of the points of G, e.g. "gens[(1 2)]".
    #[arg(long, group = "subgroup_spec", value_name = "GENS")]
    subgroup: Option<String>,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct CatalogArgs {
    /// Fixture name or "all".
    name: String,
    /// Group N for the holomorph checks of example5.
    #[arg(long = "n", value_name = "EXPR")]
    n: Option<String>,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args)]
struct EngineArgs {
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Worker threads for the search; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Largest degree the search accepts.
    #[arg(long, default_value_t = Limits::default().max_degree)]
    max_degree: usize,
    /// Include worker count and elapsed time in JSON output.
    #[arg(long)]
    timing: bool,
}

impl EngineArgs {
    fn limits(&self) -> Result<Limits, Error> {
        let mut limits = Limits {
            max_degree: self.max_degree,
            workers: self.workers,
            ..Limits::default()
        };
        if let Ok(text) = std::env::var("HG_NODE_BUDGET") {
            limits.node_budget = text.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("HG_NODE_BUDGET must be an integer, got `{text}`"))
            })?;
        }
        Ok(limits)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotNormalClosure { .. } => 2,
        e if e.is_resource_limit() => 3,
        _ => 1,
    }
}

fn enumerate(args: &EnumerateArgs) -> Result<String, Error> {
    let spec = if args.galois {
        SubgroupSpec::Galois
    } else if args.stabilizer_of_point {
        SubgroupSpec::StabilizerOfPoint
    } else if args.complement {
        SubgroupSpec::Complement
    } else {
        SubgroupSpec::Gens(args.subgroup.clone().unwrap_or_default())
    };
    let limits = args.engine.limits()?;
    let start = Instant::now();
    let input = resolve_problem(&args.group, &spec)?;
    let report = classify_with(&input.problem, &limits)?;
    let mut doc = ReportDocument::new(&input, &report, &limits);
    if args.engine.timing || !args.engine.json {
        doc = doc.with_run_info(args.engine.workers, start.elapsed().as_millis() as u64);
    }
    Ok(if args.engine.json {
        doc.to_json() + "\n"
    } else {
        doc.to_table()
    })
}

fn catalog(args: &CatalogArgs) -> Result<(String, bool), Error> {
    let limits = args.engine.limits()?;
    let outcomes = run_catalog(&args.name, args.n.as_deref(), &limits)?;
    let all_passed = outcomes.iter().all(|c| c.passed);
    let text = if args.engine.json {
        serde_json::to_string_pretty(&outcomes).expect("outcomes serialize") + "\n"
    } else {
        outcomes.iter().map(case_line).collect()
    };
    Ok((text, all_passed))
}

fn case_line(c: &CaseOutcome) -> String {
    let status = if c.passed { "PASS" } else { "FAIL" };
    let summary = match (&c.report, &c.gamma) {
        (Some(r), _) => {
            let types = r
                .stats
                .by_type
                .iter()
                .map(|(k, v)| format!("{k}:{}", v.count))
                .collect::<Vec<_>>()
                .join(" ");
            format!(
                "degree {}, {} structures, {} minimal [{}]",
                r.problem.degree, r.stats.structure_count, r.stats.minimal_count, types
            )
        }
        (None, Some(g)) => format!(
            "|Hol| = {}, Γ1 {} Γ2, both normal: {}, identity checked on {} triples",
            g.hol_order,
            if g.distinct { "≠" } else { "=" },
            g.gamma1_normal && g.gamma2_normal,
            g.identity_checked
        ),
        (None, None) => String::new(),
    };
    let mut line = format!("{status} {:<9} {:<28} {summary}\n", c.example, c.label);
    for m in &c.mismatches {
        line.push_str(&format!("     {m}\n"));
    }
    line
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Enumerate(args) => enumerate(args).map(|text| (text, true)),
        Command::Catalog(args) => catalog(args),
    };
    match result {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("hgs: some fixtures did not match their expected values");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("hgs: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
