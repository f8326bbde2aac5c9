use std::collections::{BTreeMap, BTreeSet};

use anyhow::bail;
use clap::Args;
use planarstat::sections::{
    build_truncated, compare_distributions, default_epsilon, default_radius, simulate, BinKey, Binning,
    ComparisonReport, SectionDistribution, SimulationConfig, DEFAULT_QUANTUM,
};
use planarstat::{SolidId, SolidModel, VertexSubset};
use serde::Serialize;

use crate::output::Output;
use crate::stats::subset_arg;
use crate::{Outcome, RunConfig};

pub const MIN_SAMPLES: u64 = 10_000;

#[derive(Args, Debug)]
pub struct SectionsArgs {
    /// Truncated vertices of the first solid; defaults to S.
    #[arg(long)]
    pub x_subset: Option<String>,
    /// Truncated vertices of the second solid; defaults to T.
    #[arg(long)]
    pub y_subset: Option<String>,
    /// Planes sampled per solid.
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,
    /// Cap cut distance along each edge; defaults to 5% of the edge length.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Vertex ball radius defining the strata; defaults to the cut distance.
    #[arg(long)]
    pub ball_epsilon: Option<f64>,
    /// Radius of the ball the planes are drawn in; defaults to 1.05 times
    /// the circumradius.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Quantum of the signature code.
    #[arg(long, default_value_t = DEFAULT_QUANTUM)]
    pub quantum: f64,
}

#[derive(Serialize)]
struct Side {
    subset: VertexSubset,
    samples: u64,
    hits: u64,
    misses: u64,
    stratum_samples: BTreeMap<usize, u64>,
}

impl Side {
    fn of(x: VertexSubset, d: &SectionDistribution) -> Self {
        Self {
            subset: x,
            samples: d.samples(),
            hits: d.hits(),
            misses: d.misses,
            stratum_samples: d.stratum_samples.clone(),
        }
    }
}

#[derive(Serialize)]
struct SectionsReport {
    solid: SolidId,
    seed: u64,
    samples: u64,
    alpha: f64,
    cut_epsilon: f64,
    ball_epsilon: f64,
    radius: f64,
    quantum: f64,
    binning: Binning,
    x: Side,
    y: Side,
    comparison: ComparisonReport,
    rejects: bool,
}

#[derive(Serialize)]
struct HistogramRow {
    vertex_count: u32,
    short_edges: u32,
    area_bin: u32,
    x: u64,
    y: u64,
}

fn histogram_rows(a: &SectionDistribution, b: &SectionDistribution) -> Vec<HistogramRow> {
    let keys: BTreeSet<&BinKey> = a.histogram.keys().chain(b.histogram.keys()).collect();
    keys.into_iter()
        .map(|k| HistogramRow {
            vertex_count: k.vertex_count,
            short_edges: k.short_edges,
            area_bin: k.area_bin,
            x: a.histogram.get(k).copied().unwrap_or(0),
            y: b.histogram.get(k).copied().unwrap_or(0),
        })
        .collect()
}

pub fn run(config: &RunConfig, args: &SectionsArgs) -> anyhow::Result<Outcome> {
    let model = SolidModel::build(config.solid);
    let x = subset_arg(&model, args.x_subset.as_deref(), "--x-subset", "S")?;
    let y = subset_arg(&model, args.y_subset.as_deref(), "--y-subset", "T")?;
    if args.n < MIN_SAMPLES {
        bail!("--n {} is below the minimum of {MIN_SAMPLES} samples", args.n);
    }
    if !(args.quantum.is_finite() && args.quantum > 0.0) {
        bail!("--quantum must be positive, got {}", args.quantum);
    }
    let epsilon = args.epsilon.unwrap_or_else(|| default_epsilon(&model));
    let sim = SimulationConfig {
        samples: args.n,
        seed: config.seed,
        stream: 0,
        radius: args.radius.unwrap_or_else(|| default_radius(&model)),
        ball_epsilon: args.ball_epsilon.unwrap_or(epsilon),
        quantum: args.quantum,
        binning: Binning::default(),
    };
    if !sim.radius.is_finite() || !sim.ball_epsilon.is_finite() {
        bail!("--radius and --ball-epsilon must be finite");
    }
    let kx = build_truncated(&model, x, epsilon)?;
    let ky = build_truncated(&model, y, epsilon)?;
    let dx = simulate(&kx, &sim)?;
    let dy = simulate(&ky, &SimulationConfig { stream: 1, ..sim })?;
    let comparison = compare_distributions(&dx, &dy)?;
    let rejects = comparison.rejects(config.alpha);

    let o = &comparison.overall;
    println!(
        "overall: chi2 = {:.3}, df = {}, p = {:.4} ({} at alpha = {})",
        o.statistic,
        o.degrees_of_freedom,
        o.p_value,
        if rejects { "rejected" } else { "not rejected" },
        config.alpha
    );
    for (m, t) in &comparison.strata {
        println!("  m = {m}: chi2 = {:.3}, df = {}, p = {:.4}", t.statistic, t.degrees_of_freedom, t.p_value);
    }
    let c = &comparison.cap_profile;
    println!("cap profile: chi2 = {:.3}, df = {}, p = {:.4}", c.statistic, c.degrees_of_freedom, c.p_value);

    let out = Output::create(config)?;
    out.csv("sections_histogram.csv", histogram_rows(&dx, &dy))?;
    out.json(
        "sections_report.json",
        &SectionsReport {
            solid: model.id,
            seed: config.seed,
            samples: args.n,
            alpha: config.alpha,
            cut_epsilon: epsilon,
            ball_epsilon: sim.ball_epsilon,
            radius: sim.radius,
            quantum: sim.quantum,
            binning: sim.binning,
            x: Side::of(x, &dx),
            y: Side::of(y, &dy),
            comparison,
            rejects,
        },
    )?;
    Ok(Outcome::from_bool(!rejects))
}
