use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::clip::section_with_frame;
use super::polytope::Polytope;
use super::sampling::{chunk_rng, near_vertices, sample_plane, PlaneFrame};
use super::signature::{signature, SectionSignature};
use crate::error::SectionError;

/// Samples per RNG chunk. Fixed so results are independent of thread count.
pub const CHUNK_SIZE: u64 = 1 << 14;

/// Coarse histogram bins over section signatures.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Binning {
    pub area_width: f64,
    /// Edges shorter than this are counted separately; cap cuts produce them.
    pub short_edge: f64,
}

impl Default for Binning {
    fn default() -> Self {
        Self { area_width: 0.25, short_edge: 0.2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BinKey {
    pub vertex_count: u32,
    pub short_edges: u32,
    pub area_bin: u32,
}

impl Binning {
    pub fn bin(&self, sig: &SectionSignature) -> BinKey {
        BinKey {
            vertex_count: sig.vertex_count as u32,
            short_edges: sig.sorted_edge_lengths.iter().take_while(|&&l| l < self.short_edge).count() as u32,
            area_bin: (sig.area / self.area_width).floor() as u32,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimulationConfig {
    pub samples: u64,
    pub seed: u64,
    /// Selects an independent sample stream under the same seed.
    pub stream: u32,
    pub radius: f64,
    pub ball_epsilon: f64,
    pub quantum: f64,
    pub binning: Binning,
}

/// Empirical section distribution of one polytope.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionDistribution {
    pub config: SimulationConfig,
    pub cut_epsilon: f64,
    pub misses: u64,
    #[serde(serialize_with = "as_pairs")]
    pub histogram: BTreeMap<BinKey, u64>,
    /// Histograms of hits split by the number of vertex balls the plane meets.
    #[serde(serialize_with = "nested_as_pairs")]
    pub strata: BTreeMap<usize, BTreeMap<BinKey, u64>>,
    /// All samples (hits and misses) per stratum.
    pub stratum_samples: BTreeMap<usize, u64>,
    /// Samples by (balls met, balls met at truncated vertices).
    #[serde(serialize_with = "as_pairs")]
    pub cap_profile: BTreeMap<(usize, usize), u64>,
}

fn as_pairs<K: Serialize, V: Serialize, S: serde::Serializer>(map: &BTreeMap<K, V>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(map.iter())
}

fn nested_as_pairs<S: serde::Serializer>(
    map: &BTreeMap<usize, BTreeMap<BinKey, u64>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(map.iter().map(|(m, h)| (m, h.iter().collect::<Vec<_>>())))
}

impl SectionDistribution {
    fn empty(config: SimulationConfig, cut_epsilon: f64) -> Self {
        Self {
            config,
            cut_epsilon,
            misses: 0,
            histogram: BTreeMap::new(),
            strata: BTreeMap::new(),
            stratum_samples: BTreeMap::new(),
            cap_profile: BTreeMap::new(),
        }
    }

    pub fn samples(&self) -> u64 {
        self.config.samples
    }

    pub fn hits(&self) -> u64 {
        self.histogram.values().sum()
    }

    fn merge(mut self, other: Self) -> Self {
        self.misses += other.misses;
        add_counts(&mut self.histogram, other.histogram);
        for (m, h) in other.strata {
            add_counts(self.strata.entry(m).or_default(), h);
        }
        add_counts(&mut self.stratum_samples, other.stratum_samples);
        add_counts(&mut self.cap_profile, other.cap_profile);
        self
    }
}

fn add_counts<K: Ord>(into: &mut BTreeMap<K, u64>, from: BTreeMap<K, u64>) {
    for (k, v) in from {
        *into.entry(k).or_default() += v;
    }
}

/// Samples `config.samples` planes and bins the sections of `polytope`.
pub fn simulate(polytope: &Polytope, config: &SimulationConfig) -> Result<SectionDistribution, SectionError> {
    if config.radius < polytope.circumradius {
        return Err(SectionError::RadiusTooSmall { radius: config.radius, circumradius: polytope.circumradius });
    }
    if config.ball_epsilon.is_nan() || config.ball_epsilon <= 0.0 {
        return Err(SectionError::BallEpsilon(config.ball_epsilon));
    }
    let chunks = config.samples.div_ceil(CHUNK_SIZE);
    let result = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let n = CHUNK_SIZE.min(config.samples - chunk * CHUNK_SIZE);
            simulate_chunk(polytope, config, chunk as u32, n)
        })
        .reduce(|| SectionDistribution::empty(*config, polytope.cut_epsilon), SectionDistribution::merge);
    Ok(result)
}

fn simulate_chunk(polytope: &Polytope, config: &SimulationConfig, chunk: u32, n: u64) -> SectionDistribution {
    let mut out = SectionDistribution::empty(*config, polytope.cut_epsilon);
    let mut rng = chunk_rng(config.seed, config.stream, chunk);
    let truncated = polytope.truncated.mask();
    for _ in 0..n {
        let plane = sample_plane(&mut rng, config.radius);
        let near = near_vertices(&plane, &polytope.vertices, config.ball_epsilon);
        let m = near.count_ones() as usize;
        *out.stratum_samples.entry(m).or_default() += 1;
        *out.cap_profile.entry((m, (near & truncated).count_ones() as usize)).or_default() += 1;
        let frame = PlaneFrame::of(&plane);
        let sig = section_with_frame(polytope, &frame).and_then(|p| signature(&p, config.quantum));
        match sig {
            Some(sig) => {
                let key = config.binning.bin(&sig);
                *out.histogram.entry(key).or_default() += 1;
                *out.strata.entry(m).or_default().entry(key).or_default() += 1;
            }
            None => out.misses += 1,
        }
    }
    out
}

/// Result of a two-sample chi-square homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    pub bins: usize,
    pub n1: u64,
    pub n2: u64,
}

impl ChiSquareTest {
    pub fn rejects(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// Two-sample chi-square test on histograms over the same key space.
///
/// Neighbouring bins (in key order) are pooled until both expected counts
/// reach 5; a short remainder joins the last pooled bin.
pub fn two_sample_chi_square<K: Ord>(a: &BTreeMap<K, u64>, b: &BTreeMap<K, u64>) -> ChiSquareTest {
    let n1: u64 = a.values().sum();
    let n2: u64 = b.values().sum();
    let mut keys: Vec<&K> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    let total = (n1 + n2) as f64;
    let enough = |x: u64, y: u64| {
        let pooled = (x + y) as f64;
        pooled * n1 as f64 / total >= 5.0 && pooled * n2 as f64 / total >= 5.0
    };

    let mut groups: Vec<(u64, u64)> = Vec::new();
    let mut cur = (0u64, 0u64);
    for k in keys {
        cur.0 += a.get(k).copied().unwrap_or(0);
        cur.1 += b.get(k).copied().unwrap_or(0);
        if enough(cur.0, cur.1) {
            groups.push(cur);
            cur = (0, 0);
        }
    }
    if cur != (0, 0) {
        match groups.last_mut() {
            Some(last) => {
                last.0 += cur.0;
                last.1 += cur.1;
            }
            None => groups.push(cur),
        }
    }

    if groups.len() < 2 || n1 == 0 || n2 == 0 {
        return ChiSquareTest { statistic: 0.0, degrees_of_freedom: 0, p_value: 1.0, bins: groups.len(), n1, n2 };
    }
    let k1 = (n2 as f64 / n1 as f64).sqrt();
    let k2 = (n1 as f64 / n2 as f64).sqrt();
    let statistic: f64 = groups
        .iter()
        .map(|&(x, y)| {
            let d = k1 * x as f64 - k2 * y as f64;
            d * d / (x + y) as f64
        })
        .sum();
    let dof = groups.len() - 1;
    let p_value = ChiSquared::new(dof as f64).map(|c| c.sf(statistic)).unwrap_or(f64::NAN);
    ChiSquareTest { statistic, degrees_of_freedom: dof, p_value, bins: groups.len(), n1, n2 }
}

/// Half the L1 distance between normalized histograms (misses included).
pub fn total_variation(d1: &SectionDistribution, d2: &SectionDistribution) -> f64 {
    let (n1, n2) = (d1.samples().max(1) as f64, d2.samples().max(1) as f64);
    let mut keys: Vec<&BinKey> = d1.histogram.keys().chain(d2.histogram.keys()).collect();
    keys.sort();
    keys.dedup();
    let hist_part: f64 = keys
        .into_iter()
        .map(|k| {
            let a = d1.histogram.get(k).copied().unwrap_or(0) as f64 / n1;
            let b = d2.histogram.get(k).copied().unwrap_or(0) as f64 / n2;
            (a - b).abs()
        })
        .sum();
    0.5 * (hist_part + (d1.misses as f64 / n1 - d2.misses as f64 / n2).abs())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub overall: ChiSquareTest,
    pub strata: BTreeMap<usize, ChiSquareTest>,
    /// Test on the (balls met, truncated balls met) profile; differs between
    /// polytopes only through the truncated sets.
    pub cap_profile: ChiSquareTest,
    pub stratum_masses: ChiSquareTest,
    pub total_variation: f64,
}

impl ComparisonReport {
    /// Headline decision: the overall signature test rejects at `alpha`.
    pub fn rejects(&self, alpha: f64) -> bool {
        self.overall.rejects(alpha)
    }
}

pub fn compare_distributions(
    d1: &SectionDistribution,
    d2: &SectionDistribution,
) -> Result<ComparisonReport, SectionError> {
    let (c1, c2) = (&d1.config, &d2.config);
    if c1.binning != c2.binning || c1.quantum != c2.quantum {
        return Err(SectionError::BinningMismatch);
    }
    if c1.radius != c2.radius || c1.ball_epsilon != c2.ball_epsilon || d1.cut_epsilon != d2.cut_epsilon {
        return Err(SectionError::SetupMismatch);
    }
    let empty = BTreeMap::new();
    let mut strata = BTreeMap::new();
    for m in d1.strata.keys().chain(d2.strata.keys()) {
        strata.entry(*m).or_insert_with(|| {
            two_sample_chi_square(d1.strata.get(m).unwrap_or(&empty), d2.strata.get(m).unwrap_or(&empty))
        });
    }
    Ok(ComparisonReport {
        overall: two_sample_chi_square(&d1.histogram, &d2.histogram),
        strata,
        cap_profile: two_sample_chi_square(&d1.cap_profile, &d2.cap_profile),
        stratum_masses: two_sample_chi_square(&d1.stratum_samples, &d2.stratum_samples),
        total_variation: total_variation(d1, d2),
    })
}

/// Largest vertex deviation between sections of two polytopes over shared
/// planes that meet no vertex ball.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairedZeroStratum {
    pub planes: u64,
    pub zero_stratum: u64,
    pub mismatched: u64,
    pub max_deviation: f64,
}

pub fn paired_zero_stratum_check(
    a: &Polytope,
    b: &Polytope,
    seed: u64,
    samples: u64,
    radius: f64,
    ball_epsilon: f64,
) -> PairedZeroStratum {
    let mut rng = chunk_rng(seed, u32::MAX, 0);
    let mut out = PairedZeroStratum { planes: samples, zero_stratum: 0, mismatched: 0, max_deviation: 0.0 };
    for _ in 0..samples {
        let plane = sample_plane(&mut rng, radius);
        if near_vertices(&plane, &a.vertices, ball_epsilon) != 0 {
            continue;
        }
        out.zero_stratum += 1;
        let frame = PlaneFrame::of(&plane);
        match (section_with_frame(a, &frame), section_with_frame(b, &frame)) {
            (None, None) => {}
            (Some(p), Some(q)) if p.len() == q.len() => {
                for (x, y) in p.iter().zip(&q) {
                    out.max_deviation = out.max_deviation.max((x[0] - y[0]).abs()).max((x[1] - y[1]).abs());
                }
            }
            _ => out.mismatched += 1,
        }
    }
    out
}

/// Fraction of planes meeting the ball of radius `ball_radius` at the
/// origin, and its binomial standard error.
pub fn ball_hit_frequency(ball_radius: f64, radius: f64, seed: u64, samples: u64) -> (f64, f64) {
    let mut rng = chunk_rng(seed, u32::MAX - 1, 0);
    let hits = (0..samples).filter(|_| sample_plane(&mut rng, radius).offset.abs() <= ball_radius).count();
    let p = hits as f64 / samples as f64;
    let expected = ball_radius / radius;
    (p, (expected * (1.0 - expected) / samples as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::super::polytope::build_truncated;
    use super::*;
    use crate::geometry::{SolidId, SolidModel, VertexSubset};

    fn config(samples: u64, seed: u64, stream: u32) -> SimulationConfig {
        SimulationConfig {
            samples,
            seed,
            stream,
            radius: 1.8,
            ball_epsilon: 0.06,
            quantum: 1e-4,
            binning: Binning::default(),
        }
    }

    #[test]
    fn chi_square_of_identical_histograms_is_zero() {
        let h = BTreeMap::from([(1, 100u64), (2, 50), (3, 10)]);
        let t = two_sample_chi_square(&h, &h);
        assert_eq!(t.statistic, 0.0);
        assert_eq!(t.degrees_of_freedom, 2);
        assert!((t.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_square_matches_hand_computation() {
        // Equal sample sizes: χ² = Σ (a − b)² / (a + b).
        let a = BTreeMap::from([(0, 30u64), (1, 70)]);
        let b = BTreeMap::from([(0, 50u64), (1, 50)]);
        let t = two_sample_chi_square(&a, &b);
        let expected = 400.0 / 80.0 + 400.0 / 120.0;
        assert!((t.statistic - expected).abs() < 1e-12);
        assert_eq!(t.degrees_of_freedom, 1);
        // Survival function of χ²(1) at 8.333 ≈ 0.00389.
        assert!((t.p_value - 0.003892).abs() < 1e-5);
    }

    #[test]
    fn small_bins_are_pooled() {
        let a = BTreeMap::from([(0, 100u64), (1, 1), (2, 2), (3, 100)]);
        let b = BTreeMap::from([(0, 100u64), (1, 2), (2, 1), (3, 100)]);
        let t = two_sample_chi_square(&a, &b);
        assert_eq!(t.bins, 2);
    }

    #[test]
    fn histogram_mass_matches_hits() {
        let m = SolidModel::build(SolidId::Dodecahedron);
        let k = build_truncated(&m, VertexSubset::from_indices([0, 1, 2]), 0.06).unwrap();
        let d = simulate(&k, &config(40_000, 1, 0)).unwrap();
        assert_eq!(d.hits() + d.misses, 40_000);
        assert_eq!(d.stratum_samples.values().sum::<u64>(), 40_000);
        assert_eq!(d.strata.values().map(|h| h.values().sum::<u64>()).sum::<u64>(), d.hits());
    }

    #[test]
    fn simulation_is_deterministic_across_thread_counts() {
        let m = SolidModel::build(SolidId::Dodecahedron);
        let k = build_truncated(&m, VertexSubset::from_indices([0, 5, 9]), 0.06).unwrap();
        let cfg = config(50_000, 3, 1);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let d1 = one.install(|| simulate(&k, &cfg).unwrap());
        let d2 = simulate(&k, &cfg).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn mismatched_binning_is_rejected() {
        let m = SolidModel::build(SolidId::Dodecahedron);
        let k = build_truncated(&m, VertexSubset::EMPTY, 0.06).unwrap();
        let d1 = simulate(&k, &config(1000, 1, 0)).unwrap();
        let mut cfg = config(1000, 1, 0);
        cfg.binning.area_width = 0.5;
        let d2 = simulate(&k, &cfg).unwrap();
        assert!(matches!(compare_distributions(&d1, &d2), Err(SectionError::BinningMismatch)));
        let mut cfg = config(1000, 1, 0);
        cfg.radius = 1.0;
        assert!(matches!(simulate(&k, &cfg), Err(SectionError::RadiusTooSmall { .. })));
    }

    #[test]
    fn ball_calibration() {
        for r in [0.5, 1.0, 3f64.sqrt()] {
            let (p, se) = ball_hit_frequency(r, 1.8, 17, 200_000);
            assert!((p - r / 1.8).abs() < 3.0 * se, "r = {r}: {p}");
        }
    }

    #[test]
    fn zero_stratum_sections_coincide_bitwise() {
        let m = SolidModel::build(SolidId::Dodecahedron);
        let eps = 0.05 * m.edge_length();
        let ks = build_truncated(&m, VertexSubset::from_indices(crate::DODECAHEDRON_S), eps).unwrap();
        let kt = build_truncated(&m, VertexSubset::from_indices(crate::DODECAHEDRON_T), eps).unwrap();
        let check = paired_zero_stratum_check(&ks, &kt, 8, 50_000, 1.8, eps);
        assert!(check.zero_stratum > 20_000);
        assert_eq!(check.mismatched, 0);
        assert_eq!(check.max_deviation, 0.0);
    }

    #[test]
    fn hit_rate_matches_mean_width() {
        // Mean width of a convex polytope: Σ_edges ℓ (π − θ) / 4π, θ the
        // dihedral angle; for the dodecahedron π − θ = arctan 2.
        let m = SolidModel::build(SolidId::Dodecahedron);
        let mean_width = 30.0 * m.edge_length() * 2f64.atan() / (4.0 * std::f64::consts::PI);
        let k = build_truncated(&m, VertexSubset::EMPTY, 0.06).unwrap();
        let n = 200_000;
        let d = simulate(&k, &config(n, 21, 0)).unwrap();
        let p = d.hits() as f64 / n as f64;
        let expected = mean_width / (2.0 * 1.8);
        let se = (expected * (1.0 - expected) / n as f64).sqrt();
        assert!((p - expected).abs() < 3.0 * se, "{p} vs {expected}");
    }

    #[test]
    fn crowded_planes_are_near_a_vertex_plane() {
        let m = SolidModel::build(SolidId::Dodecahedron);
        let incidences: Vec<u32> = crate::planes::enumerate_planes(&m).iter().map(|p| p.incidence.mask()).collect();
        let vertices = m.vertices_f64();
        let eps = 0.05 * m.edge_length();
        let mut rng = chunk_rng(13, 0, 0);
        let mut crowded = 0;
        for _ in 0..300_000 {
            let near = near_vertices(&sample_plane(&mut rng, 1.8), &vertices, eps);
            if near.count_ones() >= 4 {
                crowded += 1;
                assert!(incidences.iter().any(|&p| near & !p == 0), "{near:#x}");
            }
        }
        assert!(crowded > 300);
    }
}
