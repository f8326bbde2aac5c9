use clap::Args;
use planarstat::geometry::PathCertificate;
use planarstat::stats::statistics_equal;
use planarstat::{PlanarContext, SolidModel, VertexSubset};
use serde::Serialize;

use crate::output::Output;
use crate::stats::subset_arg;
use crate::{Outcome, RunConfig};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// First subset; defaults to S on the dodecahedron.
    #[arg(long)]
    pub s_subset: Option<String>,
    /// Second subset; defaults to T on the dodecahedron.
    #[arg(long)]
    pub t_subset: Option<String>,
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyFile {
    s: VertexSubset,
    t: VertexSubset,
    checks: Vec<Check>,
    s_certificate: PathCertificate,
    t_certificate: PathCertificate,
    passed: bool,
}

pub fn run(config: &RunConfig, args: &VerifyArgs) -> anyhow::Result<Outcome> {
    let model = SolidModel::build(config.solid);
    let s = subset_arg(&model, args.s_subset.as_deref(), "--s-subset", "S")?;
    let t = subset_arg(&model, args.t_subset.as_deref(), "--t-subset", "T")?;
    let ctx = PlanarContext::new(model);
    let model = &ctx.model;

    let (ps, pt) = (ctx.statistic(s), ctx.statistic(t));
    let equal = statistics_equal(&ps, &pt)?;
    let congruent = model.are_congruent(s, t);
    let (cs, ct) = (model.path_certificate(s), model.path_certificate(t));
    let separated = cs.invariant() != ct.invariant();

    let checks = vec![
        Check {
            name: "statistics equal",
            passed: equal,
            detail: format!("{} vs {} classes", ps.class_count(), pt.class_count()),
        },
        Check {
            name: "not congruent",
            passed: !congruent,
            detail: format!("canonical forms {} and {}", model.canonical_subset(s), model.canonical_subset(t)),
        },
        Check {
            name: "path certificate",
            passed: separated,
            detail: format!(
                "length-3 paths {} vs {}, isolated endpoints {:?} vs {:?}",
                cs.paths.len(),
                ct.paths.len(),
                cs.isolated_endpoints(),
                ct.isolated_endpoints()
            ),
        },
    ];
    let passed = checks.iter().all(|c| c.passed);
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Output::create(config)?
        .json("verify.json", &VerifyFile { s, t, checks, s_certificate: cs, t_certificate: ct, passed })?;
    Ok(Outcome::from_bool(passed))
}
