//! Vertex-planes: affine planes through at least three vertices of a solid.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::field::{FieldElement, FieldVec3};
use crate::geometry::{SolidModel, VertexSubset};

/// The plane `{x : normal·x = offset}` and the vertices lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPlane {
    pub normal: FieldVec3,
    pub offset: FieldElement,
    pub incidence: VertexSubset,
}

impl VertexPlane {
    /// Plane through three points, or `None` if they are collinear.
    ///
    /// The equation is scaled so the first nonzero normal coordinate is 1.
    pub fn through(a: &FieldVec3, b: &FieldVec3, c: &FieldVec3) -> Option<(FieldVec3, FieldElement)> {
        let normal = b.sub_vec(a).cross(&c.sub_vec(a));
        if normal.is_zero() {
            return None;
        }
        let lead = (0..3).map(|i| normal.component(i)).find(|x| !x.is_zero())?.clone();
        let inv = lead.inverse().ok()?;
        let normal = normal.scale(&inv);
        let offset = normal.dot(a);
        Some((normal, offset))
    }

    /// Exact signed side of a point: sign of `normal·p − offset`.
    pub fn side(&self, p: &FieldVec3) -> i32 {
        (self.normal.dot(p) - &self.offset).sign()
    }

    pub fn contains(&self, p: &FieldVec3) -> bool {
        self.side(p) == 0
    }

    pub fn len(&self) -> usize {
        self.incidence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.incidence.is_empty()
    }

    /// Whether every vertex of the solid lies on one closed side, i.e. the
    /// plane supports a facet.
    pub fn is_facet(&self, model: &SolidModel) -> bool {
        let sides: Vec<i32> = model.vertices.iter().map(|v| self.side(v)).collect();
        sides.iter().all(|&s| s >= 0) || sides.iter().all(|&s| s <= 0)
    }
}

fn incidence_of(model: &SolidModel, normal: &FieldVec3, offset: &FieldElement) -> VertexSubset {
    VertexSubset::from_indices(
        model.vertices.iter().enumerate().filter(|(_, v)| &normal.dot(v) == offset).map(|(i, _)| i),
    )
}

/// Every distinct plane containing at least three vertices, sorted by
/// incidence mask.
///
/// Generated from all vertex triples (collinear ones skipped) and deduplicated
/// by exact incidence set.
pub fn enumerate_planes(model: &SolidModel) -> Vec<VertexPlane> {
    let n = model.vertex_count();
    let triples: Vec<[usize; 3]> =
        (0..n).flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k]))).collect();
    let found: Vec<VertexPlane> = triples
        .par_iter()
        .filter_map(|&[i, j, k]| {
            let vs = &model.vertices;
            let (normal, offset) = VertexPlane::through(&vs[i], &vs[j], &vs[k])?;
            let incidence = incidence_of(model, &normal, &offset);
            Some(VertexPlane { normal, offset, incidence })
        })
        .collect();
    let mut by_incidence: BTreeMap<VertexSubset, VertexPlane> = BTreeMap::new();
    for p in found {
        by_incidence.entry(p.incidence).or_insert(p);
    }
    by_incidence.into_values().collect()
}

/// `Σ C(|Π∩V|, 3)` over the planes.
pub fn triple_count(planes: &[VertexPlane]) -> u64 {
    planes
        .iter()
        .map(|p| {
            let k = p.len() as u64;
            k * (k - 1) * (k - 2) / 6
        })
        .sum()
}

/// Canonical orbit representative of an incidence set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PlaneTypeKey(pub VertexSubset);

pub fn plane_type_key(model: &SolidModel, plane: &VertexPlane) -> PlaneTypeKey {
    PlaneTypeKey(model.canonical_subset(plane.incidence))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneType {
    pub key: PlaneTypeKey,
    /// `|Π∩V|` for planes of this type.
    pub size: usize,
    pub count: usize,
    /// Order of the setwise stabilizer of the exemplar incidence set.
    pub stabilizer_order: usize,
    /// Smallest incidence mask of the orbit; equal to the key.
    pub exemplar: VertexSubset,
}

/// Planes grouped by the group orbit of their incidence sets, ordered by
/// `(size, key)`.
pub fn classify_plane_types(model: &SolidModel, planes: &[VertexPlane]) -> Vec<PlaneType> {
    let mut counts: BTreeMap<(usize, PlaneTypeKey), usize> = BTreeMap::new();
    for p in planes {
        *counts.entry((p.len(), plane_type_key(model, p))).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|((size, key), count)| PlaneType {
            key,
            size,
            count,
            stabilizer_order: model.group.iter().filter(|g| g.apply(key.0) == key.0).count(),
            exemplar: key.0,
        })
        .collect()
}

/// Histogram of `|Π∩V|`.
pub fn cardinality_histogram(planes: &[VertexPlane]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for p in planes {
        *h.entry(p.len()).or_default() += 1;
    }
    h
}

/// Squared distances between all pairs of incident vertices, sorted by value.
pub fn plane_metric_signature(model: &SolidModel, plane: &VertexPlane) -> Vec<FieldElement> {
    let idx = plane.incidence.to_vec();
    let mut out = Vec::with_capacity(idx.len() * (idx.len() - 1) / 2);
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            out.push(model.vertices[i].sub_vec(&model.vertices[j]).norm_squared());
        }
    }
    out.sort_by(|a, b| a.value_cmp(b));
    out
}
