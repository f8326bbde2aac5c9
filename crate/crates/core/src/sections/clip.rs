use super::polytope::Polytope;
use super::sampling::{PlaneFrame, PlaneSample};
use super::vec3::dot;

/// Vertices closer than this to a clipping line count as inside.
pub const CLIP_TOLERANCE: f64 = 1e-9;
/// Sections with smaller area are treated as empty.
pub const AREA_TOLERANCE: f64 = 1e-12;

/// `K ∩ H` as a counter-clockwise polygon in the plane frame of `H`, or
/// `None` if the intersection is empty or degenerate.
pub fn section(polytope: &Polytope, plane: &PlaneSample) -> Option<Vec<[f64; 2]>> {
    section_with_frame(polytope, &PlaneFrame::of(plane))
}

pub fn section_with_frame(polytope: &Polytope, frame: &PlaneFrame) -> Option<Vec<[f64; 2]>> {
    let h = 2.0 * polytope.circumradius;
    let mut poly = vec![[-h, -h], [h, -h], [h, h], [-h, h]];
    let mut scratch = Vec::with_capacity(16);
    for hs in &polytope.half_spaces {
        // In plane coordinates the half-space reads a·p ≤ b.
        let a = [dot(&hs.normal, &frame.u), dot(&hs.normal, &frame.w)];
        let b = hs.offset - dot(&hs.normal, &frame.origin);
        clip_half_plane(&poly, a, b, &mut scratch);
        std::mem::swap(&mut poly, &mut scratch);
        if poly.len() < 3 {
            return None;
        }
    }
    dedup_close(&mut poly);
    let area = signed_area(&poly);
    if poly.len() < 3 || area.abs() < AREA_TOLERANCE {
        return None;
    }
    if area < 0.0 {
        poly.reverse();
    }
    Some(poly)
}

/// One Sutherland–Hodgman step against `a·p ≤ b`.
fn clip_half_plane(input: &[[f64; 2]], a: [f64; 2], b: f64, out: &mut Vec<[f64; 2]>) {
    out.clear();
    let f = |p: &[f64; 2]| a[0] * p[0] + a[1] * p[1] - b;
    let Some(mut prev) = input.last().copied() else { return };
    let mut fp = f(&prev);
    for &cur in input {
        let fc = f(&cur);
        let cur_in = fc <= CLIP_TOLERANCE;
        let prev_in = fp <= CLIP_TOLERANCE;
        if cur_in != prev_in {
            let t = fp / (fp - fc);
            out.push([prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])]);
        }
        if cur_in {
            out.push(cur);
        }
        prev = cur;
        fp = fc;
    }
}

fn dedup_close(poly: &mut Vec<[f64; 2]>) {
    let close = |p: &[f64; 2], q: &[f64; 2]| (p[0] - q[0]).hypot(p[1] - q[1]) < CLIP_TOLERANCE;
    poly.dedup_by(|b, a| close(a, b));
    while poly.len() > 1 && close(&poly[0], &poly[poly.len() - 1]) {
        poly.pop();
    }
}

pub fn signed_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            p[0] * q[1] - p[1] * q[0]
        })
        .sum::<f64>()
        / 2.0
}

/// Whether every turn of the polygon has the same orientation.
pub fn is_convex(poly: &[[f64; 2]], tol: f64) -> bool {
    let n = poly.len();
    (0..n).all(|i| {
        let (p, q, r) = (poly[i], poly[(i + 1) % n], poly[(i + 2) % n]);
        (q[0] - p[0]) * (r[1] - q[1]) - (q[1] - p[1]) * (r[0] - q[0]) >= -tol
    })
}
