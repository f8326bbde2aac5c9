use serde::Serialize;

use super::vec3::{add, cross, dot, norm, scale, sub, unit};
use crate::error::SectionError;
use crate::geometry::{SolidModel, VertexSubset};
use crate::planes::enumerate_planes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vertex", rename_all = "snake_case")]
pub enum HalfSpaceOrigin {
    Face,
    Cap(usize),
}

/// `{x : normal·x ≤ offset}` with a unit normal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HalfSpace {
    pub normal: [f64; 3],
    pub offset: f64,
    pub origin: HalfSpaceOrigin,
}

impl HalfSpace {
    pub fn signed_distance(&self, p: &[f64; 3]) -> f64 {
        dot(&self.normal, p) - self.offset
    }
}

/// A solid with congruent triangular caps cut off at a set of vertices.
///
/// Face half-spaces come first, caps after, so clipping against a polytope
/// with untouched caps reproduces the bare solid bit for bit.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub half_spaces: Vec<HalfSpace>,
    pub truncated: VertexSubset,
    pub vertices: Vec<[f64; 3]>,
    pub circumradius: f64,
    pub cut_epsilon: f64,
}

impl Polytope {
    pub fn face_count(&self) -> usize {
        self.half_spaces.iter().filter(|h| h.origin == HalfSpaceOrigin::Face).count()
    }

    pub fn cap_count(&self) -> usize {
        self.half_spaces.len() - self.face_count()
    }

    pub fn contains(&self, p: &[f64; 3], tol: f64) -> bool {
        self.half_spaces.iter().all(|h| h.signed_distance(p) <= tol)
    }
}

/// Outward facet half-spaces of the solid, in plane enumeration order.
pub fn facet_half_spaces(model: &SolidModel) -> Vec<HalfSpace> {
    enumerate_planes(model)
        .into_iter()
        .filter(|p| p.is_facet(model))
        .map(|p| {
            let n = p.normal.to_f64();
            let d = p.offset.to_f64();
            // The origin is interior, so the outward side has positive offset.
            let (n, d) = if d < 0.0 { (scale(&n, -1.0), -d) } else { (n, d) };
            let len = norm(&n);
            HalfSpace { normal: scale(&n, 1.0 / len), offset: d / len, origin: HalfSpaceOrigin::Face }
        })
        .collect()
}

/// Points on the edges at `v`, at distance `epsilon` from `v`.
pub fn cut_points(model: &SolidModel, v: usize, epsilon: f64) -> Vec<[f64; 3]> {
    let vs = model.vertices_f64();
    model.neighbors(v).indices().map(|w| add(&vs[v], &scale(&unit(&sub(&vs[w], &vs[v])), epsilon))).collect()
}

fn cap_half_space(model: &SolidModel, v: usize, epsilon: f64) -> HalfSpace {
    let c = cut_points(model, v, epsilon);
    let n = unit(&cross(&sub(&c[1], &c[0]), &sub(&c[2], &c[0])));
    let d = dot(&n, &c[0]);
    // Keep the barycenter (the origin) on the closed negative side.
    let (normal, offset) = if d < 0.0 { (scale(&n, -1.0), -d) } else { (n, d) };
    HalfSpace { normal, offset, origin: HalfSpaceOrigin::Cap(v) }
}

/// `D ∩ ⋂_{v∈X} H_v⁻`: the solid with a cap removed at every vertex of `x`.
///
/// Requires `0 < epsilon < edge/2` so neighbouring caps stay disjoint.
pub fn build_truncated(model: &SolidModel, x: VertexSubset, epsilon: f64) -> Result<Polytope, SectionError> {
    model.check_subset(x)?;
    let max = model.edge_length() / 2.0;
    if !(epsilon > 0.0 && epsilon < max) {
        return Err(SectionError::EpsilonOutOfRange { epsilon, max });
    }
    let mut half_spaces = facet_half_spaces(model);
    half_spaces.extend(x.indices().map(|v| cap_half_space(model, v, epsilon)));
    let vertices = model.vertices_f64();
    let circumradius = vertices.iter().map(norm).fold(0.0, f64::max);
    Ok(Polytope { half_spaces, truncated: x, vertices, circumradius, cut_epsilon: epsilon })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SolidId;

    fn dodeca() -> SolidModel {
        SolidModel::build(SolidId::Dodecahedron)
    }

    #[test]
    fn untruncated_and_fully_truncated() {
        let m = dodeca();
        let eps = 0.05 * m.edge_length();
        let d = build_truncated(&m, VertexSubset::EMPTY, eps).unwrap();
        assert_eq!(d.half_spaces.len(), 12);
        assert_eq!(d.face_count(), 12);
        let all = build_truncated(&m, m.all_vertices(), eps).unwrap();
        assert_eq!(all.half_spaces.len(), 32);
        assert_eq!(all.cap_count(), 20);
        assert!((d.circumradius - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn faces_contain_their_vertices() {
        let m = dodeca();
        let d = build_truncated(&m, VertexSubset::EMPTY, 0.01).unwrap();
        for v in &d.vertices {
            assert!(d.contains(v, 1e-12));
            let on = d.half_spaces.iter().filter(|h| h.signed_distance(v).abs() < 1e-12).count();
            assert_eq!(on, 3);
        }
    }

    #[test]
    fn caps_remove_their_vertex_only() {
        let m = dodeca();
        let x = VertexSubset::from_indices([0, 5]);
        let k = build_truncated(&m, x, 0.05).unwrap();
        for (i, v) in k.vertices.iter().enumerate() {
            assert_eq!(k.contains(v, 1e-12), !x.contains(i));
        }
    }

    #[test]
    fn caps_are_congruent_equilateral_triangles() {
        let m = dodeca();
        let eps = 0.05 * m.edge_length();
        // Oracle: two edges at a vertex meet at the pentagon's interior angle
        // of 108°, so the chord between cut points is 2ε·sin(54°).
        let expected = 2.0 * eps * 54f64.to_radians().sin();
        for v in 0..20 {
            let c = cut_points(&m, v, eps);
            assert_eq!(c.len(), 3);
            for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                assert!((norm(&sub(&c[a], &c[b])) - expected).abs() < 1e-12);
            }
        }
        // 2 sin 54° = φ.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((expected - eps * phi).abs() < 1e-12);
    }

    #[test]
    fn epsilon_range_is_enforced() {
        let m = dodeca();
        let half = m.edge_length() / 2.0;
        assert!(build_truncated(&m, VertexSubset::EMPTY, 0.0).is_err());
        assert!(build_truncated(&m, VertexSubset::EMPTY, half).is_err());
        assert!(build_truncated(&m, VertexSubset::EMPTY, half * 0.99).is_ok());
        assert!(build_truncated(&m, VertexSubset::from_indices([25]), 0.1).is_err());
    }
}
