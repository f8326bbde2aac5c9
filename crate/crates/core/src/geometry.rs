//! Vertex models of the Platonic solids and their full isometry groups.
//!
//! Each solid is stored as an ordered list of exact vertices. Its symmetry
//! group is recovered as the set of vertex permutations preserving the Gram
//! matrix of pairwise dot products; for a centered, spanning point set these
//! are exactly the permutations induced by orthogonal maps.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::GeometryError;
use crate::field::{FieldElement, FieldMat3, FieldVec3};

/// Subsets are stored as `u32` masks and permutations as three byte tables.
pub const MAX_VERTICES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolidId {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl SolidId {
    pub const ALL: [SolidId; 5] =
        [SolidId::Tetrahedron, SolidId::Cube, SolidId::Octahedron, SolidId::Dodecahedron, SolidId::Icosahedron];

    pub fn name(self) -> &'static str {
        match self {
            SolidId::Tetrahedron => "tetrahedron",
            SolidId::Cube => "cube",
            SolidId::Octahedron => "octahedron",
            SolidId::Dodecahedron => "dodecahedron",
            SolidId::Icosahedron => "icosahedron",
        }
    }
}

impl fmt::Display for SolidId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolidId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolidId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown solid '{s}'"))
    }
}

/// A set of vertex indices, bit `i` set iff vertex `i` is a member.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
pub struct VertexSubset(pub u32);

impl VertexSubset {
    pub const EMPTY: VertexSubset = VertexSubset(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Self(indices.into_iter().fold(0u32, |m, i| m | (1 << i)))
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            Self(u32::MAX)
        } else {
            Self((1u32 << n) - 1)
        }
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | 1 << i)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }
}

impl fmt::Debug for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Serialized as a sorted index array, never as a raw mask.
impl Serialize for VertexSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.indices())
    }
}

/// A vertex permutation with a precomputed bit-shuffle for subset images.
#[derive(Clone)]
pub struct Permutation {
    images: Vec<usize>,
    tables: Box<[[u32; 256]; 3]>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Self {
        assert!(images.len() <= MAX_VERTICES);
        let mut tables = Box::new([[0u32; 256]; 3]);
        for (chunk, table) in tables.iter_mut().enumerate() {
            for (byte, slot) in table.iter_mut().enumerate() {
                let mut out = 0u32;
                for bit in 0..8 {
                    let i = chunk * 8 + bit;
                    if byte >> bit & 1 == 1 && i < images.len() {
                        out |= 1 << images[i];
                    }
                }
                *slot = out;
            }
        }
        Self { images, tables }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Image of a subset under the permutation.
    #[inline]
    pub fn apply(&self, x: VertexSubset) -> VertexSubset {
        let m = x.0;
        VertexSubset(
            self.tables[0][(m & 0xff) as usize]
                | self.tables[1][(m >> 8 & 0xff) as usize]
                | self.tables[2][(m >> 16 & 0xff) as usize],
        )
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation::new(other.images.iter().map(|&i| self.images[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation::new(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle lengths, including fixed points as 1-cycles.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for Permutation {}

impl std::hash::Hash for Permutation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.images)
    }
}

/// A Platonic solid: exact vertices, symmetry group and edge graph.
#[derive(Clone, Debug)]
pub struct SolidModel {
    pub id: SolidId,
    pub vertices: Vec<FieldVec3>,
    pub group: Vec<Permutation>,
    /// Pairs `(i, j)`, `i < j`, at minimal nonzero distance.
    pub edges: Vec<(usize, usize)>,
    pub edge_length_squared: FieldElement,
    adjacency: Vec<VertexSubset>,
}

impl SolidModel {
    pub fn build(id: SolidId) -> Self {
        Self::from_vertices(id, solid_vertices(id)).expect("built-in solids are centered and spanning")
    }

    /// Builds a model over an arbitrary vertex ordering of a solid.
    pub fn from_vertices(id: SolidId, vertices: Vec<FieldVec3>) -> Result<Self, GeometryError> {
        let group = compute_group(&vertices)?;
        let (edges, edge_length_squared) = minimal_distance_pairs(&vertices);
        let mut adjacency = vec![VertexSubset::EMPTY; vertices.len()];
        for &(i, j) in &edges {
            adjacency[i] = adjacency[i].with(j);
            adjacency[j] = adjacency[j].with(i);
        }
        Ok(Self { id, vertices, group, edges, edge_length_squared, adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn all_vertices(&self) -> VertexSubset {
        VertexSubset::full(self.vertices.len())
    }

    pub fn vertices_f64(&self) -> Vec<[f64; 3]> {
        self.vertices.iter().map(FieldVec3::to_f64).collect()
    }

    pub fn neighbors(&self, v: usize) -> VertexSubset {
        self.adjacency[v]
    }

    pub fn edge_length(&self) -> f64 {
        self.edge_length_squared.to_f64().sqrt()
    }

    pub fn check_subset(&self, x: VertexSubset) -> Result<(), GeometryError> {
        match x.difference(self.all_vertices()).indices().next() {
            Some(index) => Err(GeometryError::VertexOutOfRange { index, len: self.vertex_count() }),
            None => Ok(()),
        }
    }

    /// Lexicographically smallest image of `x` (as a bitmask integer) under the group.
    pub fn canonical_subset(&self, x: VertexSubset) -> VertexSubset {
        self.group.iter().map(|g| g.apply(x)).min().unwrap_or(x)
    }

    /// Whether `x` is the minimum of its orbit; stops at the first smaller image.
    pub fn is_canonical(&self, x: VertexSubset) -> bool {
        self.group.iter().all(|g| g.apply(x) >= x)
    }

    pub fn are_congruent(&self, x: VertexSubset, y: VertexSubset) -> bool {
        x.len() == y.len() && self.group.iter().any(|g| g.apply(x) == y)
    }

    /// The exact orthogonal matrix realizing a group element.
    ///
    /// Built from three linearly independent vertices and checked on every
    /// vertex and for `MᵀM = I`.
    pub fn orthogonal_matrix(&self, g: &Permutation) -> Result<FieldMat3, GeometryError> {
        let basis = independent_triple(&self.vertices).ok_or(GeometryError::Degenerate)?;
        let src = FieldMat3::from_columns(&self.vertices[basis[0]], &self.vertices[basis[1]], &self.vertices[basis[2]]);
        let dst = FieldMat3::from_columns(
            &self.vertices[g.image(basis[0])],
            &self.vertices[g.image(basis[1])],
            &self.vertices[g.image(basis[2])],
        );
        let m = dst.mul_mat(&src.inverse()?);
        if m.transpose().mul_mat(&m) != FieldMat3::identity() {
            return Err(GeometryError::NotAnIsometry);
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if m.apply(v) != self.vertices[g.image(i)] {
                return Err(GeometryError::NotAnIsometry);
            }
        }
        Ok(m)
    }

    /// Shortest-path distances in the edge graph from `source`.
    pub fn graph_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for w in self.adjacency[u].indices() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Simple paths with three edges inside `x`, with a path-level neighbourhood
    /// descriptor at each endpoint.
    ///
    /// For each endpoint, records the members of `x` off the path that lie
    /// within edge-graph distance 2 of it. The multiset of per-path neighbour
    /// counts is invariant under the group.
    pub fn path_certificate(&self, x: VertexSubset) -> PathCertificate {
        let members = x.to_vec();
        let induced = |v: usize| self.adjacency[v].intersection(x);
        let mut paths = Vec::new();
        for &a in &members {
            for b in induced(a).indices() {
                for c in induced(b).indices().filter(|&c| c != a) {
                    for d in induced(c).indices().filter(|&d| d != a && d != b) {
                        if a < d {
                            paths.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        paths.sort_unstable();
        let witnesses = paths
            .into_iter()
            .map(|path| {
                let on_path = VertexSubset::from_indices(path);
                let near = |end: usize| {
                    let dist = self.graph_distances(end);
                    x.difference(on_path).indices().filter(|&v| dist[v] <= 2).collect::<Vec<_>>()
                };
                PathWitness { path, endpoint_neighbors: [near(path[0]), near(path[3])] }
            })
            .collect();
        PathCertificate { paths: witnesses }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub path: [usize; 4],
    /// Off-path members within edge-graph distance 2 of each endpoint.
    pub endpoint_neighbors: [Vec<usize>; 2],
}

impl PathWitness {
    pub fn isolated_endpoints(&self) -> Vec<usize> {
        [0, 1]
            .into_iter()
            .filter(|&k| self.endpoint_neighbors[k].is_empty())
            .map(|k| if k == 0 { self.path[0] } else { self.path[3] })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathCertificate {
    pub paths: Vec<PathWitness>,
}

impl PathCertificate {
    /// Sorted per-path pairs of endpoint neighbour counts; label-free.
    pub fn invariant(&self) -> Vec<[usize; 2]> {
        let mut inv: Vec<[usize; 2]> = self
            .paths
            .iter()
            .map(|p| {
                let (a, b) = (p.endpoint_neighbors[0].len(), p.endpoint_neighbors[1].len());
                [a.min(b), a.max(b)]
            })
            .collect();
        inv.sort_unstable();
        inv
    }

    pub fn isolated_endpoints(&self) -> Vec<usize> {
        self.paths.iter().flat_map(PathWitness::isolated_endpoints).collect()
    }
}

/// All vertex permutations preserving the Gram matrix.
///
/// Requires the centroid at the origin and a spanning point set, in which case
/// the result is the full orthogonal symmetry group acting on the vertices.
pub fn compute_group(vertices: &[FieldVec3]) -> Result<Vec<Permutation>, GeometryError> {
    let n = vertices.len();
    if n > MAX_VERTICES {
        return Err(GeometryError::TooManyVertices(n));
    }
    let centroid = vertices.iter().fold(FieldVec3::zero(), |acc, v| acc.add_vec(v));
    if !centroid.is_zero() {
        return Err(GeometryError::NotCentered);
    }
    if independent_triple(vertices).is_none() {
        return Err(GeometryError::Degenerate);
    }

    // Integer ids for the distinct Gram entries keep the search cheap.
    let mut ids: HashMap<FieldElement, u32> = HashMap::new();
    let gram: Vec<Vec<u32>> = vertices
        .iter()
        .map(|u| {
            vertices
                .iter()
                .map(|v| {
                    let next = ids.len() as u32;
                    *ids.entry(u.dot(v)).or_insert(next)
                })
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_permutation(&gram, &mut images, &mut used, &mut out);
    Ok(out.into_iter().map(Permutation::new).collect())
}

fn extend_permutation(gram: &[Vec<u32>], images: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let k = images.len();
    let n = gram.len();
    if k == n {
        out.push(images.clone());
        return;
    }
    for j in 0..n {
        if used[j] || gram[k][k] != gram[j][j] {
            continue;
        }
        if (0..k).all(|i| gram[i][k] == gram[images[i]][j]) {
            used[j] = true;
            images.push(j);
            extend_permutation(gram, images, used, out);
            images.pop();
            used[j] = false;
        }
    }
}

fn independent_triple(vertices: &[FieldVec3]) -> Option<[usize; 3]> {
    let n = vertices.len();
    for i in 0..n {
        for j in i + 1..n {
            let c = vertices[i].cross(&vertices[j]);
            if c.is_zero() {
                continue;
            }
            if let Some(k) = (j + 1..n).find(|&k| !c.dot(&vertices[k]).is_zero()) {
                return Some([i, j, k]);
            }
        }
    }
    None
}

fn minimal_distance_pairs(vertices: &[FieldVec3]) -> (Vec<(usize, usize)>, FieldElement) {
    let n = vertices.len();
    let mut best: Option<FieldElement> = None;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = vertices[i].sub_vec(&vertices[j]).norm_squared();
            if d.is_zero() {
                continue;
            }
            match best.as_ref().map(|b| d.value_cmp(b)) {
                None | Some(std::cmp::Ordering::Less) => {
                    best = Some(d);
                    edges.clear();
                    edges.push((i, j));
                }
                Some(std::cmp::Ordering::Equal) => edges.push((i, j)),
                Some(std::cmp::Ordering::Greater) => {}
            }
        }
    }
    (edges, best.unwrap_or_else(FieldElement::zero))
}

/// Burnside counts for subsets of a permutation group's domain.
///
/// Returns `(orbits of all subsets, orbits of r-subsets for r = 0..=n)`.
pub fn burnside_orbit_counts(group: &[Permutation], n: usize) -> (u64, Vec<u64>) {
    let mut total = 0u64;
    let mut by_size = vec![0u64; n + 1];
    for g in group {
        let cycles = g.cycle_lengths();
        total += 1u64 << cycles.len();
        // Coefficients of Π (1 + t^len) over the cycles of g.
        let mut poly = vec![0u64; n + 1];
        poly[0] = 1;
        for len in cycles {
            for r in (len..=n).rev() {
                poly[r] += poly[r - len];
            }
        }
        for (acc, c) in by_size.iter_mut().zip(poly) {
            *acc += c;
        }
    }
    let order = group.len() as u64;
    debug_assert!(total.is_multiple_of(order));
    (total / order, by_size.into_iter().map(|c| c / order).collect())
}

fn solid_vertices(id: SolidId) -> Vec<FieldVec3> {
    let p = FieldElement::phi;
    let q = FieldElement::phi_inv;
    let z = FieldElement::zero;
    let int = |n: i64| FieldElement::from_int(n);
    let v = |x, y, z| FieldVec3::new(x, y, z);
    match id {
        SolidId::Tetrahedron => vec![
            FieldVec3::from_ints(1, 1, 1),
            FieldVec3::from_ints(1, -1, -1),
            FieldVec3::from_ints(-1, 1, -1),
            FieldVec3::from_ints(-1, -1, 1),
        ],
        SolidId::Cube => cube_corners(),
        SolidId::Octahedron => vec![
            FieldVec3::from_ints(1, 0, 0),
            FieldVec3::from_ints(-1, 0, 0),
            FieldVec3::from_ints(0, 1, 0),
            FieldVec3::from_ints(0, -1, 0),
            FieldVec3::from_ints(0, 0, 1),
            FieldVec3::from_ints(0, 0, -1),
        ],
        SolidId::Dodecahedron => {
            let mut vs = cube_corners();
            vs.extend([
                v(z(), q(), p()),
                v(z(), q(), -p()),
                v(z(), -q(), p()),
                v(z(), -q(), -p()),
                v(q(), p(), z()),
                v(-q(), p(), z()),
                v(q(), -p(), z()),
                v(-q(), -p(), z()),
                v(p(), z(), q()),
                v(p(), z(), -q()),
                v(-p(), z(), q()),
                v(-p(), z(), -q()),
            ]);
            vs
        }
        SolidId::Icosahedron => vec![
            v(z(), int(1), p()),
            v(z(), int(1), -p()),
            v(z(), int(-1), p()),
            v(z(), int(-1), -p()),
            v(int(1), p(), z()),
            v(int(-1), p(), z()),
            v(int(1), -p(), z()),
            v(int(-1), -p(), z()),
            v(p(), z(), int(1)),
            v(p(), z(), int(-1)),
            v(-p(), z(), int(1)),
            v(-p(), z(), int(-1)),
        ],
    }
}

/// (±1, ±1, ±1) with x the slowest-varying sign, negative first.
fn cube_corners() -> Vec<FieldVec3> {
    let mut vs = Vec::with_capacity(8);
    for x in [-1, 1] {
        for y in [-1, 1] {
            for z in [-1, 1] {
                vs.push(FieldVec3::from_ints(x, y, z));
            }
        }
    }
    vs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dodeca() -> SolidModel {
        SolidModel::build(SolidId::Dodecahedron)
    }

    pub(crate) fn s_set() -> VertexSubset {
        VertexSubset::from_indices([0, 1, 2, 3, 4, 11, 17])
    }

    pub(crate) fn t_set() -> VertexSubset {
        VertexSubset::from_indices([0, 1, 3, 4, 5, 11, 17])
    }

    #[test]
    fn dodecahedron_vertex_table() {
        let m = dodeca();
        assert_eq!(m.vertex_count(), 20);
        assert_eq!(m.vertices[9], FieldVec3::new(FieldElement::zero(), FieldElement::phi_inv(), -FieldElement::phi()));
        assert_eq!(m.vertices[0], FieldVec3::from_ints(-1, -1, -1));
        assert_eq!(m.vertices[7], FieldVec3::from_ints(1, 1, 1));
        for v in &m.vertices {
            assert_eq!(v.norm_squared(), FieldElement::from_int(3));
        }
    }

    #[test]
    fn dodecahedron_edges_brute_force() {
        let m = dodeca();
        // Oracle: minimal squared distance over all pairs, computed in f64.
        let vs = m.vertices_f64();
        let d2 = |i: usize, j: usize| (0..3).map(|k| (vs[i][k] - vs[j][k]).powi(2)).sum::<f64>();
        let min =
            (0..20).flat_map(|i| (i + 1..20).map(move |j| (i, j))).map(|(i, j)| d2(i, j)).fold(f64::INFINITY, f64::min);
        let brute: Vec<_> = (0..20)
            .flat_map(|i| (i + 1..20).map(move |j| (i, j)))
            .filter(|&(i, j)| (d2(i, j) - min).abs() < 1e-9)
            .collect();
        assert_eq!(m.edges, brute);
        assert_eq!(m.edges.len(), 30);
        assert!((0..20).all(|v| m.neighbors(v).len() == 3));
        // (2/φ)² = 4(φ − 1)²
        let two_over_phi_sq = {
            let t = FieldElement::phi() - FieldElement::one();
            FieldElement::from_int(4) * &t * &t
        };
        assert_eq!(m.edge_length_squared, two_over_phi_sq);
    }

    #[test]
    fn dodecahedron_squared_distances_form_a_small_set() {
        let m = dodeca();
        let mut values = std::collections::BTreeSet::new();
        for i in 0..20 {
            for j in i + 1..20 {
                values.insert(m.vertices[i].sub_vec(&m.vertices[j]).norm_squared());
            }
        }
        // Edge, face diagonal, cube edge and so on up to the diameter.
        assert_eq!(values.len(), 5);
        let min = values.iter().min_by(|a, b| a.value_cmp(b)).unwrap();
        assert_eq!(min, &m.edge_length_squared);
    }

    #[test]
    fn group_orders() {
        let expect = [24, 48, 48, 120, 120];
        for (id, order) in SolidId::ALL.into_iter().zip(expect) {
            assert_eq!(SolidModel::build(id).group.len(), order, "{id}");
        }
    }

    #[test]
    fn group_contains_identity_and_antipodal_map() {
        let m = dodeca();
        assert!(m.group.iter().any(Permutation::is_identity));
        let antipode: Vec<usize> =
            (0..20).map(|i| m.vertices.iter().position(|w| *w == m.vertices[i].neg()).unwrap()).collect();
        assert!(m.group.iter().any(|g| g.images() == antipode.as_slice()));
    }

    #[test]
    fn group_is_closed() {
        let m = dodeca();
        let set: std::collections::HashSet<_> = m.group.iter().cloned().collect();
        for g in &m.group {
            assert!(set.contains(&g.inverse()));
            for h in &m.group {
                assert!(set.contains(&g.compose(h)));
            }
        }
    }

    #[test]
    fn every_group_element_is_an_orthogonal_map() {
        for id in SolidId::ALL {
            let m = SolidModel::build(id);
            for g in &m.group {
                let mat = m.orthogonal_matrix(g).unwrap();
                let det = mat.determinant();
                assert!(det == FieldElement::one() || det == FieldElement::from_int(-1));
            }
        }
    }

    #[test]
    fn off_center_vertices_are_rejected() {
        let vs = vec![FieldVec3::from_ints(1, 0, 0), FieldVec3::from_ints(0, 1, 0), FieldVec3::from_ints(0, 0, 1)];
        assert_eq!(compute_group(&vs).unwrap_err(), GeometryError::NotCentered);
        let flat = vec![FieldVec3::from_ints(1, 0, 0), FieldVec3::from_ints(-1, 0, 0)];
        assert_eq!(compute_group(&flat).unwrap_err(), GeometryError::Degenerate);
    }

    #[test]
    fn canonical_forms() {
        let m = dodeca();
        assert_eq!(m.canonical_subset(VertexSubset::EMPTY), VertexSubset::EMPTY);
        let s = s_set();
        let c = m.canonical_subset(s);
        for g in &m.group {
            assert_eq!(m.canonical_subset(g.apply(s)), c);
        }
        assert_eq!(m.canonical_subset(c), c);
        assert!(m.is_canonical(c));
        assert_ne!(m.canonical_subset(s), m.canonical_subset(t_set()));
    }

    #[test]
    fn congruence() {
        let m = dodeca();
        assert!(!m.are_congruent(s_set(), t_set()));
        assert!(m.are_congruent(s_set(), s_set()));
        assert!(m.are_congruent(VertexSubset::from_indices([0]), VertexSubset::from_indices([1])));
        for g in m.group.iter().step_by(7) {
            assert!(m.are_congruent(s_set(), g.apply(s_set())));
        }
    }

    #[test]
    fn path_certificate_separates_s_and_t() {
        let m = dodeca();
        let cs = m.path_certificate(s_set());
        let ct = m.path_certificate(t_set());
        assert_eq!(cs.paths.len(), 1);
        assert_eq!(ct.paths.len(), 1);
        // (0,11,4,17) up to reversal.
        assert_eq!(cs.paths[0].path, [0, 11, 4, 17]);
        assert_eq!(ct.paths[0].path, [0, 11, 4, 17]);
        assert_eq!(cs.isolated_endpoints(), vec![17]);
        assert!(ct.isolated_endpoints().is_empty());
        assert_ne!(cs.invariant(), ct.invariant());
    }

    #[test]
    fn path_certificate_invariant_is_group_invariant() {
        let m = dodeca();
        let inv = m.path_certificate(s_set()).invariant();
        for g in &m.group {
            assert_eq!(m.path_certificate(g.apply(s_set())).invariant(), inv);
        }
    }

    #[test]
    fn burnside_matches_direct_orbit_count() {
        for id in SolidId::ALL {
            let m = SolidModel::build(id);
            let n = m.vertex_count();
            let mut by_size = vec![0u64; n + 1];
            for mask in 0u32..1 << n {
                let x = VertexSubset(mask);
                if m.is_canonical(x) {
                    by_size[x.len()] += 1;
                }
            }
            let (total, expected) = burnside_orbit_counts(&m.group, n);
            assert_eq!(by_size, expected, "{id}");
            assert_eq!(by_size.iter().sum::<u64>(), total);
        }
    }

    #[test]
    fn subset_display_and_parse_helpers() {
        let x = VertexSubset::from_indices([3, 0, 17]);
        assert_eq!(x.to_string(), "{0,3,17}");
        assert_eq!(x.len(), 3);
        assert!(x.contains(17));
        assert_eq!("Dodecahedron".parse::<SolidId>().unwrap(), SolidId::Dodecahedron);
        assert!("prism".parse::<SolidId>().is_err());
    }

    fn shared() -> &'static SolidModel {
        static MODEL: std::sync::OnceLock<SolidModel> = std::sync::OnceLock::new();
        MODEL.get_or_init(dodeca)
    }

    fn subset() -> impl Strategy<Value = VertexSubset> {
        (0u32..1 << 20).prop_map(VertexSubset)
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent_and_constant_on_orbits(x in subset(), g in 0usize..120) {
            let m = shared();
            let c = m.canonical_subset(x);
            prop_assert_eq!(m.canonical_subset(c), c);
            prop_assert_eq!(m.canonical_subset(m.group[g].apply(x)), c);
            prop_assert!(c <= x);
            prop_assert_eq!(c.len(), x.len());
        }

        #[test]
        fn congruence_is_an_equivalence(x in subset(), g in 0usize..120, h in 0usize..120, y in subset()) {
            let m = shared();
            let (gx, hgx) = (m.group[g].apply(x), m.group[h].apply(m.group[g].apply(x)));
            prop_assert!(m.are_congruent(x, x));
            prop_assert!(m.are_congruent(x, gx) && m.are_congruent(gx, x));
            prop_assert!(m.are_congruent(gx, hgx) && m.are_congruent(x, hgx));
            prop_assert_eq!(m.are_congruent(x, y), m.are_congruent(y, x));
            prop_assert_eq!(m.are_congruent(x, y), m.are_congruent(gx, y));
        }
    }
}
