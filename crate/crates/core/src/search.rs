//! Exhaustive search for homometric pairs: non-congruent vertex subsets
//! with equal planar statistics.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{SolidId, SolidModel, VertexSubset};
use crate::stats::{statistics_equal, PlanarContext};

/// One canonical subset per group orbit of `r`-subsets, in increasing mask order.
pub fn orbit_representatives(model: &SolidModel, r: usize) -> Vec<VertexSubset> {
    let n = model.vertex_count();
    if r > n {
        return Vec::new();
    }
    subsets_of_size(n, r).into_par_iter().filter(|&x| model.is_canonical(x)).collect()
}

/// All `r`-subsets of `0..n` in increasing mask order (Gosper's hack).
fn subsets_of_size(n: usize, r: usize) -> Vec<VertexSubset> {
    if r == 0 {
        return vec![VertexSubset::EMPTY];
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut m: u64 = (1 << r) - 1;
    while m < limit {
        out.push(VertexSubset(m as u32));
        let c = m & m.wrapping_neg();
        let r2 = m + c;
        m = (((r2 ^ m) >> 2) / c) | r2;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HomometricPair {
    pub first: VertexSubset,
    pub second: VertexSubset,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub solid: SolidId,
    pub size: usize,
    pub orbit_count: usize,
    /// Number of distinct planar statistics among the orbits of this size.
    pub distinct_statistics: usize,
    pub pairs: Vec<HomometricPair>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// All homometric non-congruent pairs of `r`-subsets.
///
/// Orbit representatives are bucketed by fingerprint; every bucket is split
/// by full multiset comparison, and each reported pair is re-checked for
/// equality and non-congruence.
pub fn find_homometric_pairs(ctx: &PlanarContext, r: usize) -> PairReport {
    let start = Instant::now();
    let reps = orbit_representatives(&ctx.model, r);
    let mut printed: Vec<(u128, VertexSubset)> = reps.par_iter().map(|&x| (ctx.fingerprint(x), x)).collect();
    printed.par_sort_unstable();

    let mut buckets: BTreeMap<u128, Vec<VertexSubset>> = BTreeMap::new();
    for (fp, x) in printed {
        buckets.entry(fp).or_default().push(x);
    }

    let mut pairs = Vec::new();
    let mut distinct = 0;
    for members in buckets.values() {
        // Split the bucket into classes of exactly equal statistics.
        let mut classes: Vec<(crate::stats::PlanarStatistic, Vec<VertexSubset>)> = Vec::new();
        for &x in members {
            let ps = ctx.statistic(x);
            match classes.iter_mut().find(|(q, _)| *q == ps) {
                Some((_, xs)) => xs.push(x),
                None => classes.push((ps, vec![x])),
            }
        }
        distinct += classes.len();
        for (_, xs) in &classes {
            for (i, &a) in xs.iter().enumerate() {
                for &b in &xs[i + 1..] {
                    let (first, second) = if a < b { (a, b) } else { (b, a) };
                    pairs.push(HomometricPair { first, second });
                }
            }
        }
    }
    pairs.sort_unstable();
    for p in &pairs {
        let equal = statistics_equal(&ctx.statistic(p.first), &ctx.statistic(p.second)).expect("same context");
        assert!(equal && !ctx.model.are_congruent(p.first, p.second), "unsound pair {p:?}");
    }
    PairReport {
        solid: ctx.solid(),
        size: r,
        orbit_count: reps.len(),
        distinct_statistics: distinct,
        pairs,
        elapsed: start.elapsed(),
    }
}

/// [`find_homometric_pairs`] for every size from 0 to |V|.
pub fn full_sweep(ctx: &PlanarContext) -> BTreeMap<usize, PairReport> {
    (0..=ctx.model.vertex_count()).map(|r| (r, find_homometric_pairs(ctx, r))).collect()
}
