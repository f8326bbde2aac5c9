use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::vec3::{cross, dot, scale, unit};

/// The plane `{x : direction·x = offset}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneSample {
    pub direction: [f64; 3],
    pub offset: f64,
}

impl PlaneSample {
    pub fn new(direction: [f64; 3], offset: f64) -> Self {
        Self { direction: unit(&direction), offset }
    }

    pub fn distance_to(&self, p: &[f64; 3]) -> f64 {
        (dot(&self.direction, p) - self.offset).abs()
    }
}

/// A plane drawn from the motion-invariant measure restricted to planes
/// within distance `radius` of the origin: uniform direction, uniform offset.
pub fn sample_plane<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> PlaneSample {
    let direction = loop {
        let g: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        let len2 = dot(&g, &g);
        if len2 > 1e-24 {
            break scale(&g, 1.0 / len2.sqrt());
        }
    };
    PlaneSample { direction, offset: rng.random_range(-radius..=radius) }
}

/// Number of vertices whose open ball of radius `ball_epsilon` meets the plane.
pub fn stratum_of(plane: &PlaneSample, vertices: &[[f64; 3]], ball_epsilon: f64) -> usize {
    vertices.iter().filter(|v| plane.distance_to(v) < ball_epsilon).count()
}

/// Vertex indices counted by [`stratum_of`], as a bitmask.
pub fn near_vertices(plane: &PlaneSample, vertices: &[[f64; 3]], ball_epsilon: f64) -> u32 {
    vertices.iter().enumerate().filter(|(_, v)| plane.distance_to(v) < ball_epsilon).fold(0, |m, (i, _)| m | 1 << i)
}

/// Orthonormal frame of a plane: `origin` is the foot of the perpendicular
/// from 0, `u` and `w` span the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneFrame {
    pub origin: [f64; 3],
    pub u: [f64; 3],
    pub w: [f64; 3],
}

impl PlaneFrame {
    pub fn of(plane: &PlaneSample) -> Self {
        let n = plane.direction;
        let seed = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let u = unit(&cross(&n, &seed));
        let w = cross(&n, &u);
        Self { origin: scale(&n, plane.offset), u, w }
    }

    pub fn to_world(&self, p: &[f64; 2]) -> [f64; 3] {
        [0, 1, 2].map(|k| self.origin[k] + p[0] * self.u[k] + p[1] * self.w[k])
    }
}

/// Deterministic RNG for one chunk of one sample stream.
///
/// The root seed fixes the key; `stream` and `chunk` select a ChaCha stream,
/// so results do not depend on how chunks are spread over workers.
pub fn chunk_rng(seed: u64, stream: u32, chunk: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((stream as u64) << 32 | chunk as u64);
    rng
}
