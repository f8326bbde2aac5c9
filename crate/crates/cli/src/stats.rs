use clap::Args;
use planarstat::{PlanarClassKey, PlanarContext, SolidId, SolidModel, VertexSubset};
use serde::Serialize;

use crate::output::Output;
use crate::subset::parse_subset;
use crate::{Outcome, RunConfig};

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Vertex list such as `0,1,2`, `0..19`, `S` or `T`; defaults to S on
    /// the dodecahedron.
    #[arg(long)]
    pub subset: Option<String>,
}

#[derive(Serialize)]
struct ClassEntry {
    class: PlanarClassKey,
    count: u32,
}

#[derive(Serialize)]
pub struct StratumRow {
    pub plane_size: usize,
    pub marked: usize,
    pub count: u32,
}

#[derive(Serialize)]
struct StatsFile {
    solid: SolidId,
    subset: VertexSubset,
    plane_count: usize,
    class_count: usize,
    total: u32,
    fingerprint: String,
    strata: Vec<StratumRow>,
    classes: Vec<ClassEntry>,
}

/// Subset argument, falling back to S on the dodecahedron.
pub fn subset_arg(model: &SolidModel, text: Option<&str>, flag: &str, fallback: &str) -> anyhow::Result<VertexSubset> {
    match text {
        Some(t) => parse_subset(t, model),
        None if model.id == SolidId::Dodecahedron => parse_subset(fallback, model),
        None => anyhow::bail!("{flag} is required for the {}", model.id),
    }
}

pub fn run(config: &RunConfig, args: &StatsArgs) -> anyhow::Result<Outcome> {
    let model = SolidModel::build(config.solid);
    let x = subset_arg(&model, args.subset.as_deref(), "--subset", "S")?;
    let ctx = PlanarContext::new(model);
    let stat = ctx.statistic(x);
    let strata: Vec<StratumRow> = stat
        .strata()
        .into_iter()
        .map(|((plane_size, marked), count)| StratumRow { plane_size, marked, count })
        .collect();

    let out = Output::create(config)?;
    out.csv("strata.csv", &strata)?;
    out.json(
        "stats.json",
        &StatsFile {
            solid: stat.solid,
            subset: x,
            plane_count: stat.plane_count,
            class_count: stat.class_count(),
            total: stat.total(),
            fingerprint: format!("{:032x}", stat.fingerprint()),
            strata,
            classes: stat.entries.iter().map(|&(class, count)| ClassEntry { class, count }).collect(),
        },
    )?;
    println!("{} classes over {} planes for X = {x}", stat.class_count(), stat.total());
    Ok(Outcome::Passed)
}
