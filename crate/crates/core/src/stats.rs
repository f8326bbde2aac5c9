//! Planar statistics: for a vertex subset X, the multiset over all
//! vertex-planes Π of the congruence class of the nested pair
//! `Π∩X ⊆ Π∩V ⊆ V` under the symmetry group of the solid.

use std::collections::{BTreeMap, HashMap};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::StatsError;
use crate::field::FieldElement;
use crate::geometry::{SolidId, SolidModel, VertexSubset};
use crate::planes::{enumerate_planes, VertexPlane};

/// Canonical representative `(P*, Z*)` of a planar congruence class: the
/// lexicographic minimum of `(g(Π∩V), g(Π∩X))` over the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarClassKey {
    pub plane: VertexSubset,
    pub marked: VertexSubset,
}

impl PlanarClassKey {
    /// `(|P*|, |Z*|)`.
    pub fn stratum(&self) -> (usize, usize) {
        (self.plane.len(), self.marked.len())
    }

    fn packed(&self) -> u64 {
        (self.plane.mask() as u64) << 32 | self.marked.mask() as u64
    }

    fn unpack(v: u64) -> Self {
        Self { plane: VertexSubset((v >> 32) as u32), marked: VertexSubset(v as u32) }
    }
}

impl Serialize for PlanarClassKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PlanarClassKey", 2)?;
        s.serialize_field("P", &self.plane)?;
        s.serialize_field("Z", &self.marked)?;
        s.end()
    }
}

/// Reference computation: minimum over every group element.
pub fn class_key(model: &SolidModel, plane: &VertexPlane, x: VertexSubset) -> PlanarClassKey {
    let z = plane.incidence.intersection(x);
    model
        .group
        .iter()
        .map(|g| PlanarClassKey { plane: g.apply(plane.incidence), marked: g.apply(z) })
        .min()
        .expect("group contains the identity")
}

/// Multiset of class keys, stored as a sorted `(key, count)` list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarStatistic {
    pub solid: SolidId,
    pub plane_count: usize,
    pub entries: Vec<(PlanarClassKey, u32)>,
}

impl PlanarStatistic {
    fn from_keys(solid: SolidId, plane_count: usize, mut keys: Vec<PlanarClassKey>) -> Self {
        keys.sort_unstable();
        let mut entries: Vec<(PlanarClassKey, u32)> = Vec::new();
        for k in keys {
            match entries.last_mut() {
                Some((last, c)) if *last == k => *c += 1,
                _ => entries.push((k, 1)),
            }
        }
        Self { solid, plane_count, entries }
    }

    pub fn class_count(&self) -> usize {
        self.entries.len()
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn count(&self, key: &PlanarClassKey) -> u32 {
        self.entries.binary_search_by(|(k, _)| k.cmp(key)).map(|i| self.entries[i].1).unwrap_or(0)
    }

    /// Totals by `(|Π∩V|, |Π∩X|)`.
    pub fn strata(&self) -> BTreeMap<(usize, usize), u32> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.entries {
            *out.entry(k.stratum()).or_default() += c;
        }
        out
    }

    /// First 128 bits of SHA-256 over the sorted `(P, Z, count)` encoding.
    pub fn fingerprint(&self) -> u128 {
        fingerprint_entries(self.entries.iter().map(|(k, c)| (k.packed(), *c)))
    }
}

fn fingerprint_entries(entries: impl Iterator<Item = (u64, u32)>) -> u128 {
    let mut hasher = Sha256::new();
    for (k, c) in entries {
        hasher.update(k.to_le_bytes());
        hasher.update(c.to_le_bytes());
    }
    let digest = hasher.finalize();
    let mut head = [0u8; 16];
    head.copy_from_slice(&digest[..16]);
    u128::from_le_bytes(head)
}

pub fn statistics_equal(a: &PlanarStatistic, b: &PlanarStatistic) -> Result<bool, StatsError> {
    if a.solid != b.solid || a.plane_count != b.plane_count {
        return Err(StatsError::ModelMismatch(
            format!("{} with {} planes", a.solid, a.plane_count),
            format!("{} with {} planes", b.solid, b.plane_count),
        ));
    }
    Ok(a.entries == b.entries)
}

/// Reference computation of PS(X) through [`class_key`].
pub fn planar_statistic(model: &SolidModel, planes: &[VertexPlane], x: VertexSubset) -> PlanarStatistic {
    let keys = planes.iter().map(|p| class_key(model, p, x)).collect();
    PlanarStatistic::from_keys(model.id, planes.len(), keys)
}

struct PlaneEntry {
    members: Vec<usize>,
    type_key: VertexSubset,
    /// Canonical `Z*` for each subset of the plane, indexed by the bits of
    /// `Π∩X` read off `members` in order.
    marked_table: Vec<VertexSubset>,
}

/// A solid with its vertex-planes and per-plane lookup tables.
///
/// Computing PS(X) from the tables costs one lookup per plane. The tables
/// are filled from the group elements that send `Π∩V` to its type key; those
/// form the coset achieving the minimum of the first component, so the
/// result equals [`class_key`].
pub struct PlanarContext {
    pub model: SolidModel,
    pub planes: Vec<VertexPlane>,
    entries: Vec<PlaneEntry>,
}

impl PlanarContext {
    pub fn new(model: SolidModel) -> Self {
        let planes = enumerate_planes(&model);
        let entries = planes
            .iter()
            .map(|p| {
                let type_key = model.canonical_subset(p.incidence);
                let coset: Vec<_> = model.group.iter().filter(|g| g.apply(p.incidence) == type_key).collect();
                let members = p.incidence.to_vec();
                let marked_table = (0u32..1 << members.len())
                    .map(|local| {
                        let z = VertexSubset::from_indices(
                            members.iter().enumerate().filter(|(b, _)| local >> b & 1 == 1).map(|(_, &v)| v),
                        );
                        coset.iter().map(|g| g.apply(z)).min().expect("coset is nonempty")
                    })
                    .collect();
                PlaneEntry { members, type_key, marked_table }
            })
            .collect();
        Self { model, planes, entries }
    }

    pub fn solid(&self) -> SolidId {
        self.model.id
    }

    pub fn plane_count(&self) -> usize {
        self.planes.len()
    }

    pub fn class_key(&self, plane_index: usize, x: VertexSubset) -> PlanarClassKey {
        let e = &self.entries[plane_index];
        let local = e.members.iter().enumerate().fold(0usize, |acc, (b, &v)| acc | (x.contains(v) as usize) << b);
        PlanarClassKey { plane: e.type_key, marked: e.marked_table[local] }
    }

    fn packed_keys(&self, x: VertexSubset) -> Vec<u64> {
        let mut keys: Vec<u64> = (0..self.entries.len()).map(|i| self.class_key(i, x).packed()).collect();
        keys.sort_unstable();
        keys
    }

    pub fn statistic(&self, x: VertexSubset) -> PlanarStatistic {
        let keys = self.packed_keys(x).into_iter().map(PlanarClassKey::unpack).collect();
        PlanarStatistic::from_keys(self.model.id, self.planes.len(), keys)
    }

    /// Fingerprint of PS(X) without materializing the statistic.
    pub fn fingerprint(&self, x: VertexSubset) -> u128 {
        let keys = self.packed_keys(x);
        let mut runs: Vec<(u64, u32)> = Vec::new();
        for k in keys {
            match runs.last_mut() {
                Some((last, c)) if *last == k => *c += 1,
                _ => runs.push((k, 1)),
            }
        }
        fingerprint_entries(runs.into_iter())
    }

    /// PS(X) keyed by the congruence type of `Π∩X ⊆ Π∩V` as planar point
    /// sets, forgetting how the plane sits in the solid.
    pub fn restricted_statistic(&self, x: VertexSubset) -> RestrictedStatistic {
        let mut cache: HashMap<PlanarClassKey, RestrictedClassKey> = HashMap::new();
        let mut counts: BTreeMap<RestrictedClassKey, u32> = BTreeMap::new();
        for i in 0..self.entries.len() {
            let key = self.class_key(i, x);
            let r = cache.entry(key).or_insert_with(|| restricted_key(&self.model, &key)).clone();
            *counts.entry(r).or_default() += 1;
        }
        RestrictedStatistic { entries: counts.into_iter().collect() }
    }
}

/// Canonical labelled distance matrix of `Z ⊆ P`, minimized over orderings
/// of `P`. Two keys are equal iff some isometry maps one pair onto the other.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RestrictedClassKey {
    pub marked: Vec<bool>,
    pub squared_distances: Vec<FieldElement>,
}

impl RestrictedClassKey {
    pub fn stratum(&self) -> (usize, usize) {
        (self.marked.len(), self.marked.iter().filter(|&&m| m).count())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedStatistic {
    pub entries: Vec<(RestrictedClassKey, u32)>,
}

impl RestrictedStatistic {
    pub fn class_count(&self) -> usize {
        self.entries.len()
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().map(|(_, c)| c).sum()
    }
}

/// The merge map from main class keys to restricted keys.
pub fn restricted_key(model: &SolidModel, key: &PlanarClassKey) -> RestrictedClassKey {
    let members = key.plane.to_vec();
    let n = members.len();
    let d: Vec<Vec<FieldElement>> = members
        .iter()
        .map(|&i| members.iter().map(|&j| model.vertices[i].sub_vec(&model.vertices[j]).norm_squared()).collect())
        .collect();
    let mut best: Option<RestrictedClassKey> = None;
    for_each_permutation(n, &mut |order: &[usize]| {
        let marked: Vec<bool> = order.iter().map(|&k| key.marked.contains(members[k])).collect();
        let mut squared_distances = Vec::with_capacity(n * (n - 1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                squared_distances.push(d[order[a]][order[b]].clone());
            }
        }
        let cand = RestrictedClassKey { marked, squared_distances };
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    });
    best.expect("at least one ordering")
}

/// Reference computation of the restricted variant.
pub fn restricted_statistic_variant(
    model: &SolidModel,
    planes: &[VertexPlane],
    x: VertexSubset,
) -> RestrictedStatistic {
    let mut counts: BTreeMap<RestrictedClassKey, u32> = BTreeMap::new();
    for p in planes {
        *counts.entry(restricted_key(model, &class_key(model, p, x))).or_default() += 1;
    }
    RestrictedStatistic { entries: counts.into_iter().collect() }
}

fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(order: &mut Vec<usize>, used: &mut [bool], f: &mut dyn FnMut(&[usize])) {
        if order.len() == used.len() {
            f(order);
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                order.push(i);
                rec(order, used, f);
                order.pop();
                used[i] = false;
            }
        }
    }
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], f);
}
