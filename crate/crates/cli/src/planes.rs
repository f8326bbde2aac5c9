use std::collections::{BTreeMap, HashMap};

use planarstat::planes::{
    cardinality_histogram, classify_plane_types, enumerate_planes, plane_type_key, triple_count, PlaneType,
};
use planarstat::{SolidId, SolidModel, VertexSubset};
use serde::Serialize;

use crate::output::Output;
use crate::{Outcome, RunConfig};

#[derive(Serialize)]
struct PlaneRecord {
    /// `normal · x = offset`, exact, normal scaled to a leading 1.
    normal: [String; 3],
    offset: String,
    incidence: VertexSubset,
    type_key: VertexSubset,
    type_frequency: usize,
}

#[derive(Serialize)]
struct PlanesFile {
    solid: SolidId,
    vertex_count: usize,
    plane_count: usize,
    type_count: usize,
    triple_count: u64,
    cardinality_histogram: BTreeMap<usize, usize>,
    types: Vec<PlaneType>,
    planes: Vec<PlaneRecord>,
}

#[derive(Serialize)]
struct TypeRow {
    size: usize,
    count: usize,
    stabilizer_order: usize,
    key: String,
}

fn binomial3(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

pub fn run(config: &RunConfig) -> anyhow::Result<Outcome> {
    let model = SolidModel::build(config.solid);
    let mut planes = enumerate_planes(&model);
    planes.sort_by_key(|p| (p.len(), p.incidence));
    let types = classify_plane_types(&model, &planes);
    let frequency: HashMap<_, _> = types.iter().map(|t| (t.key, t.count)).collect();
    let triples = triple_count(&planes);
    let expected = binomial3(model.vertex_count());

    let records = planes
        .iter()
        .map(|p| {
            let key = plane_type_key(&model, p);
            PlaneRecord {
                normal: [p.normal.x.to_string(), p.normal.y.to_string(), p.normal.z.to_string()],
                offset: p.offset.to_string(),
                incidence: p.incidence,
                type_key: key.0,
                type_frequency: frequency[&key],
            }
        })
        .collect();
    let out = Output::create(config)?;
    out.csv(
        "plane_types.csv",
        types.iter().map(|t| TypeRow {
            size: t.size,
            count: t.count,
            stabilizer_order: t.stabilizer_order,
            key: t.key.0.to_string(),
        }),
    )?;
    out.json(
        "planes.json",
        &PlanesFile {
            solid: model.id,
            vertex_count: model.vertex_count(),
            plane_count: planes.len(),
            type_count: types.len(),
            triple_count: triples,
            cardinality_histogram: cardinality_histogram(&planes),
            types,
            planes: records,
        },
    )?;

    let type_count = frequency.len();
    println!("{} planes, {type_count} types", planes.len());
    let ok = triples == expected;
    println!(
        "{} sum of C(|P|,3) over planes = {triples}, C({},3) = {expected}",
        if ok { "PASS" } else { "FAIL" },
        model.vertex_count()
    );
    Ok(Outcome::from_bool(ok))
}
