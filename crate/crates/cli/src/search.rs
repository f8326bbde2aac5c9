use clap::Args;
use planarstat::search::{find_homometric_pairs, PairReport};
use planarstat::{PlanarContext, SolidId, SolidModel};
use serde::Serialize;

use crate::output::Output;
use crate::{Outcome, RunConfig};

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Search one subset size only.
    #[arg(long, conflicts_with = "all_sizes")]
    pub size: Option<usize>,
    /// Search every size from 0 to the vertex count (the default).
    #[arg(long)]
    pub all_sizes: bool,
}

#[derive(Serialize)]
struct PairsFile {
    solid: SolidId,
    total_pairs: usize,
    sizes: Vec<PairReport>,
}

#[derive(Serialize)]
struct SizeRow {
    size: usize,
    orbit_count: usize,
    distinct_statistics: usize,
    pair_count: usize,
}

pub fn run(config: &RunConfig, args: &SearchArgs) -> anyhow::Result<Outcome> {
    let model = SolidModel::build(config.solid);
    let n = model.vertex_count();
    let sizes: Vec<usize> = match args.size {
        Some(r) if r > n => anyhow::bail!("--size {r} exceeds the {} vertices of the {}", n, model.id),
        Some(r) => vec![r],
        None => (0..=n).collect(),
    };
    let ctx = PlanarContext::new(model);
    let reports: Vec<PairReport> = sizes.into_iter().map(|r| find_homometric_pairs(&ctx, r)).collect();
    let total_pairs = reports.iter().map(|r| r.pairs.len()).sum();

    for r in &reports {
        println!(
            "r = {:2}: {} orbits, {} distinct statistics, {} pairs",
            r.size,
            r.orbit_count,
            r.distinct_statistics,
            r.pairs.len()
        );
        for p in &r.pairs {
            println!("  {} ~ {}", p.first, p.second);
        }
    }
    println!("{total_pairs} homometric non-congruent pairs on the {}", ctx.solid());

    let out = Output::create(config)?;
    out.csv(
        "pairs.csv",
        reports.iter().map(|r| SizeRow {
            size: r.size,
            orbit_count: r.orbit_count,
            distinct_statistics: r.distinct_statistics,
            pair_count: r.pairs.len(),
        }),
    )?;
    out.json("pairs.json", &PairsFile { solid: ctx.solid(), total_pairs, sizes: reports })?;
    Ok(Outcome::Passed)
}
