//! Monte Carlo section statistics of truncated solids.
//!
//! `K_X` is the solid with a small congruent cap cut off at each vertex of
//! `X`. Planes are drawn from the motion-invariant measure restricted to a
//! ball of radius `R`, each section is reduced to an isometry-invariant
//! signature, and two polytopes are compared by a chi-square homogeneity test
//! on binned signatures, overall and per stratum of vertex balls met.
//!
//! Everything here is `f64`; the exact discrete machinery lives elsewhere.

mod clip;
mod distribution;
mod polytope;
mod sampling;
mod signature;
pub mod vec3;

pub use clip::{is_convex, section, section_with_frame, signed_area, AREA_TOLERANCE, CLIP_TOLERANCE};
pub use distribution::{
    ball_hit_frequency, compare_distributions, paired_zero_stratum_check, simulate, total_variation,
    two_sample_chi_square, BinKey, Binning, ChiSquareTest, ComparisonReport, PairedZeroStratum, SectionDistribution,
    SimulationConfig, CHUNK_SIZE,
};
pub use polytope::{build_truncated, cut_points, facet_half_spaces, HalfSpace, HalfSpaceOrigin, Polytope};
pub use sampling::{chunk_rng, near_vertices, sample_plane, stratum_of, PlaneFrame, PlaneSample};
pub use signature::{signature, SectionSignature, DEFAULT_QUANTUM};

use crate::geometry::SolidModel;

/// Default cut distance: 5% of the edge length.
pub fn default_epsilon(model: &SolidModel) -> f64 {
    0.05 * model.edge_length()
}

/// Default sampling radius: the circumradius plus a 5% margin.
pub fn default_radius(model: &SolidModel) -> f64 {
    let r = model.vertices_f64().iter().map(vec3::norm).fold(0.0, f64::max);
    1.05 * r
}
