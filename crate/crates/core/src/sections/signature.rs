use serde::Serialize;

use super::clip::{signed_area, AREA_TOLERANCE};

/// Default quantum for the cyclic code.
pub const DEFAULT_QUANTUM: f64 = 1e-4;

/// Isometry-invariant description of a convex section polygon.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionSignature {
    pub vertex_count: usize,
    pub perimeter: f64,
    pub area: f64,
    pub sorted_edge_lengths: Vec<f64>,
    /// Quantized `(edge length, turning angle)` pairs, the lexicographically
    /// smallest over all rotations of both traversal directions.
    pub code: Vec<(i64, i64)>,
}

fn edge_turn_sequence(poly: &[[f64; 2]]) -> Vec<(f64, f64)> {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (p, q, r) = (poly[i], poly[(i + 1) % n], poly[(i + 2) % n]);
            let e = [q[0] - p[0], q[1] - p[1]];
            let f = [r[0] - q[0], r[1] - q[1]];
            let turn = (e[0] * f[1] - e[1] * f[0]).atan2(e[0] * f[0] + e[1] * f[1]);
            (e[0].hypot(e[1]), turn.abs())
        })
        .collect()
}

fn min_rotation(seq: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let n = seq.len();
    (0..n).map(|s| seq[s..].iter().chain(&seq[..s]).copied().collect::<Vec<_>>()).min().unwrap_or_default()
}

/// Signature of a convex polygon, or `None` if its area is below tolerance.
pub fn signature(poly: &[[f64; 2]], quantum: f64) -> Option<SectionSignature> {
    let area = signed_area(poly).abs();
    if poly.len() < 3 || area < AREA_TOLERANCE {
        return None;
    }
    let q = |x: f64| (x / quantum).round() as i64;
    let forward = edge_turn_sequence(poly);
    let reversed: Vec<[f64; 2]> = poly.iter().rev().copied().collect();
    let backward = edge_turn_sequence(&reversed);
    let quantize = |s: &[(f64, f64)]| s.iter().map(|&(l, t)| (q(l), q(t))).collect::<Vec<_>>();
    let code = min_rotation(&quantize(&forward)).min(min_rotation(&quantize(&backward)));

    let mut sorted_edge_lengths: Vec<f64> = forward.iter().map(|&(l, _)| l).collect();
    sorted_edge_lengths.sort_by(f64::total_cmp);
    Some(SectionSignature {
        vertex_count: poly.len(),
        perimeter: sorted_edge_lengths.iter().sum(),
        area,
        sorted_edge_lengths,
        code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rigid(poly: &[[f64; 2]], angle: f64, shift: [f64; 2], mirror: bool) -> Vec<[f64; 2]> {
        let (s, c) = angle.sin_cos();
        poly.iter()
            .map(|p| {
                let y = if mirror { -p[1] } else { p[1] };
                [c * p[0] - s * y + shift[0], s * p[0] + c * y + shift[1]]
            })
            .collect()
    }

    /// Convex polygon from sorted random angles on an ellipse.
    fn convex_polygon(angles: &mut [f64], a: f64, b: f64) -> Vec<[f64; 2]> {
        angles.sort_by(f64::total_cmp);
        angles.iter().map(|t| [a * t.cos(), b * t.sin()]).collect()
    }

    #[test]
    fn unit_square() {
        let sig = signature(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], DEFAULT_QUANTUM).unwrap();
        assert_eq!(sig.vertex_count, 4);
        assert!((sig.perimeter - 4.0).abs() < 1e-12);
        assert!((sig.area - 1.0).abs() < 1e-12);
        assert_eq!(sig.sorted_edge_lengths, vec![1.0; 4]);
        assert!(sig.code.iter().all(|&(l, t)| l == 10_000 && t == 15_708));
    }

    #[test]
    fn degenerate_polygon_is_empty() {
        assert!(signature(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]], DEFAULT_QUANTUM).is_none());
        assert!(signature(&[[0.0, 0.0], [1.0, 0.0]], DEFAULT_QUANTUM).is_none());
    }

    #[test]
    fn input_rotation_and_orientation_do_not_matter() {
        let poly = vec![[0.0, 0.0], [2.0, 0.0], [2.5, 1.0], [1.0, 2.0], [-0.3, 0.9]];
        let sig = signature(&poly, DEFAULT_QUANTUM).unwrap();
        for s in 0..poly.len() {
            let mut rotated = poly.clone();
            rotated.rotate_left(s);
            assert_eq!(signature(&rotated, DEFAULT_QUANTUM).unwrap().code, sig.code);
            rotated.reverse();
            assert_eq!(signature(&rotated, DEFAULT_QUANTUM).unwrap().code, sig.code);
        }
    }

    proptest! {
        #[test]
        fn rigid_motions_preserve_the_signature(
            mut angles in prop::collection::vec(0.0..std::f64::consts::TAU, 3..9),
            a in 0.5f64..2.0, b in 0.5f64..2.0,
            angle in 0.0..std::f64::consts::TAU,
            dx in -3.0f64..3.0, dy in -3.0f64..3.0,
            mirror in any::<bool>(),
        ) {
            let poly = convex_polygon(&mut angles, a, b);
            prop_assume!(signed_area(&poly).abs() > 1e-3);
            let s1 = signature(&poly, DEFAULT_QUANTUM).unwrap();
            let s2 = signature(&rigid(&poly, angle, [dx, dy], mirror), DEFAULT_QUANTUM).unwrap();
            let tol = 10.0 * DEFAULT_QUANTUM;
            prop_assert_eq!(s1.vertex_count, s2.vertex_count);
            prop_assert!((s1.perimeter - s2.perimeter).abs() < tol);
            prop_assert!((s1.area - s2.area).abs() < tol);
            for (x, y) in s1.sorted_edge_lengths.iter().zip(&s2.sorted_edge_lengths) {
                prop_assert!((x - y).abs() < tol);
            }
            // Up to rounding, the moved polygon's code is some rotation of one
            // traversal of the original (near-ties may pick another start).
            let n = s1.code.len();
            prop_assert_eq!(n, s2.code.len());
            let reversed: Vec<[f64; 2]> = poly.iter().rev().copied().collect();
            let close = [edge_turn_sequence(&poly), edge_turn_sequence(&reversed)].iter().any(|seq| {
                (0..n).any(|shift| {
                    (0..n).all(|i| {
                        let (l, t) = seq[(i + shift) % n];
                        let y = s2.code[i];
                        (l / DEFAULT_QUANTUM - y.0 as f64).abs() <= 10.0
                            && (t / DEFAULT_QUANTUM - y.1 as f64).abs() <= 10.0
                    })
                })
            });
            prop_assert!(close);
        }
    }
}
