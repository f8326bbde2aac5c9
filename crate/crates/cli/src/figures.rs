//! SVG figures: Schlegel diagrams and planar class thumbnails.

use clap::Args;
use planarstat::planes::enumerate_planes;
use planarstat::sections::vec3::{add, cross, dot, norm, scale, sub, unit};
use planarstat::{PlanarClassKey, PlanarContext, PlanarStatistic, SolidId, SolidModel, VertexPlane, VertexSubset};
use svg::node::element::{Circle, Group, Line, Polygon, Rectangle, Text};
use svg::Document;

use crate::output::Output;
use crate::subset::parse_subset;
use crate::{Outcome, RunConfig};

const SIZE: f64 = 480.0;
const CELL: f64 = 120.0;
const COLUMNS: usize = 9;
const TOL: f64 = 1e-9;

#[derive(Args, Debug)]
pub struct FiguresArgs {
    /// First highlighted subset; defaults to S on the dodecahedron.
    #[arg(long)]
    pub s_subset: Option<String>,
    /// Second highlighted subset; defaults to T on the dodecahedron.
    #[arg(long)]
    pub t_subset: Option<String>,
}

/// Rounds to 1e-6 and clears negative zero.
fn r(x: f64) -> f64 {
    (x * 1e6).round() / 1e6 + 0.0
}

struct Facet {
    incidence: VertexSubset,
    normal: [f64; 3],
    distance: f64,
}

fn facets(model: &SolidModel, planes: &[VertexPlane]) -> Vec<Facet> {
    planes
        .iter()
        .filter(|p| p.is_facet(model))
        .map(|p| {
            let n = p.normal.to_f64();
            let len = norm(&n);
            let (n, d) = (scale(&n, 1.0 / len), p.offset.to_f64() / len);
            let (normal, distance) = if d < 0.0 { (scale(&n, -1.0), -d) } else { (n, d) };
            Facet { incidence: p.incidence, normal, distance }
        })
        .collect()
}

/// Schlegel projection onto the face whose outward normal is nearest +z
/// (ties to the smallest incidence mask).
///
/// The eye sits on that face's normal, halfway between the face plane and
/// the nearest other facet plane crossing the normal, so only that face is
/// seen from outside. Returns 2D coordinates in the face plane.
pub fn schlegel_coordinates(model: &SolidModel, planes: &[VertexPlane]) -> Vec<[f64; 2]> {
    let faces = facets(model, planes);
    let face = faces
        .iter()
        .min_by(|a, b| {
            if (a.normal[2] - b.normal[2]).abs() < TOL {
                a.incidence.cmp(&b.incidence)
            } else {
                b.normal[2].total_cmp(&a.normal[2])
            }
        })
        .expect("a solid has facets");
    let n = face.normal;
    let h = face.distance;
    let limit = faces
        .iter()
        .filter(|f| f.incidence != face.incidence)
        .map(|f| dot(&n, &f.normal))
        .filter(|&c| c > TOL)
        .map(|c| 1.0 / c)
        .fold(f64::INFINITY, f64::min);
    let factor = if limit.is_finite() { (1.0 + limit) / 2.0 } else { 2.0 };
    let eye = scale(&n, h * factor);

    let vertices = model.vertices_f64();
    let members = face.incidence.to_vec();
    let centroid = scale(&members.iter().fold([0.0; 3], |acc, &i| add(&acc, &vertices[i])), 1.0 / members.len() as f64);
    let u = unit(&sub(&vertices[members[0]], &centroid));
    let w = cross(&n, &u);
    vertices
        .iter()
        .map(|v| {
            let t = (h - dot(&n, &eye)) / (dot(&n, v) - dot(&n, &eye));
            let x = sub(&add(&eye, &scale(&sub(v, &eye), t)), &centroid);
            [dot(&x, &u), dot(&x, &w)]
        })
        .collect()
}

pub fn schlegel(model: &SolidModel, planes: &[VertexPlane], marked: Option<VertexSubset>, title: &str) -> Document {
    let coords = schlegel_coordinates(model, planes);
    let radius = coords.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
    let px = |p: &[f64; 2]| [r(SIZE / 2.0 + 0.42 * SIZE * p[0] / radius), r(SIZE / 2.0 - 0.42 * SIZE * p[1] / radius)];
    let pts: Vec<[f64; 2]> = coords.iter().map(px).collect();

    let mut doc = Document::new()
        .set("viewBox", (0, 0, SIZE, SIZE))
        .set("width", SIZE)
        .set("height", SIZE)
        .add(Text::new(title).set("x", 8).set("y", 18).set("font-family", "sans-serif").set("font-size", 14));
    let mut edges = Group::new().set("stroke", "black").set("stroke-width", 1.5);
    for &(i, j) in &model.edges {
        edges = edges.add(
            Line::new()
                .set("class", "edge")
                .set("x1", pts[i][0])
                .set("y1", pts[i][1])
                .set("x2", pts[j][0])
                .set("y2", pts[j][1]),
        );
    }
    doc = doc.add(edges);
    for (i, p) in pts.iter().enumerate() {
        let on = marked.is_some_and(|m| m.contains(i));
        let node = Group::new()
            .set("class", "node")
            .add(
                Circle::new()
                    .set("class", if on { "vertex marked" } else { "vertex" })
                    .set("cx", p[0])
                    .set("cy", p[1])
                    .set("r", 11)
                    .set("stroke", "black")
                    .set("fill", if on { "black" } else { "white" }),
            )
            .add(
                Text::new(i.to_string())
                    .set("x", p[0])
                    .set("y", p[1])
                    .set("dy", "0.35em")
                    .set("text-anchor", "middle")
                    .set("font-family", "sans-serif")
                    .set("font-size", 10)
                    .set("fill", if on { "white" } else { "black" }),
            );
        doc = doc.add(node);
    }
    doc
}

/// In-plane drawing of one class: points of `P` in hull order, their marks,
/// and for squares the adjacent roof vertices of the solid projected onto
/// the plane.
struct Thumbnail {
    points: Vec<([f64; 2], bool)>,
    roof_points: Vec<[f64; 2]>,
    roof_lines: Vec<([f64; 2], [f64; 2])>,
}

fn is_square(vertices: &[[f64; 3]], p: &[usize]) -> bool {
    if p.len() != 4 {
        return false;
    }
    let mut d: Vec<f64> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .map(|(i, j)| norm(&sub(&vertices[p[i]], &vertices[p[j]])))
        .collect();
    d.sort_by(f64::total_cmp);
    let side = d[0];
    d[..4].iter().all(|x| (x - side).abs() < TOL) && d[4..].iter().all(|x| (x - side * 2f64.sqrt()).abs() < TOL)
}

fn thumbnail(model: &SolidModel, key: &PlanarClassKey) -> Thumbnail {
    let vertices = model.vertices_f64();
    let members = key.plane.to_vec();
    let c = scale(&members.iter().fold([0.0; 3], |acc, &i| add(&acc, &vertices[i])), 1.0 / members.len() as f64);
    let p0 = vertices[members[0]];
    let mut n = unit(&cross(&sub(&vertices[members[1]], &p0), &sub(&vertices[members[2]], &p0)));
    let side = dot(&n, &c);
    let lead = n.iter().copied().find(|x| x.abs() > TOL).unwrap_or(1.0);
    if side < -TOL || (side.abs() <= TOL && lead < 0.0) {
        n = scale(&n, -1.0);
    }
    let u = unit(&sub(&p0, &c));
    let w = cross(&n, &u);
    let angle = |v: &[f64; 3]| {
        let x = sub(v, &c);
        dot(&x, &w).atan2(dot(&x, &u))
    };
    let mut order = members.clone();
    order.sort_by(|&a, &b| angle(&vertices[a]).total_cmp(&angle(&vertices[b])));
    // Lay the first hull edge horizontally.
    let u = unit(&sub(&vertices[order[1]], &vertices[order[0]]));
    let w = cross(&n, &u);
    let flat = |v: &[f64; 3]| {
        let x = sub(v, &c);
        [dot(&x, &u), dot(&x, &w)]
    };
    let points: Vec<([f64; 2], bool)> = order.iter().map(|&i| (flat(&vertices[i]), key.marked.contains(i))).collect();

    let mut roof_points = Vec::new();
    let mut roof_lines = Vec::new();
    if is_square(&vertices, &members) {
        let above: Vec<(usize, f64)> = (0..vertices.len())
            .filter(|&i| !key.plane.contains(i))
            .map(|i| (i, dot(&n, &sub(&vertices[i], &c))))
            .filter(|&(_, s)| s > TOL)
            .collect();
        let low = above.iter().map(|&(_, s)| s).fold(f64::INFINITY, f64::min);
        let roof: Vec<usize> = above.iter().filter(|&&(_, s)| s < low + TOL).map(|&(i, _)| i).collect();
        for &a in &roof {
            roof_points.push(flat(&vertices[a]));
            for b in model.neighbors(a).indices() {
                if key.plane.contains(b) || (roof.contains(&b) && a < b) {
                    roof_lines.push((flat(&vertices[a]), flat(&vertices[b])));
                }
            }
        }
    }
    Thumbnail { points, roof_points, roof_lines }
}

pub fn class_grid(model: &SolidModel, stat: &PlanarStatistic, title: &str) -> Document {
    let thumbs: Vec<Thumbnail> = stat.entries.iter().map(|(k, _)| thumbnail(model, k)).collect();
    let extent = thumbs
        .iter()
        .flat_map(|t| t.points.iter().map(|p| p.0).chain(t.roof_points.iter().copied()))
        .map(|p| p[0].hypot(p[1]))
        .fold(0.0, f64::max);
    let s = 0.36 * CELL / extent;
    let rows = stat.entries.len().div_ceil(COLUMNS).max(1);
    let (width, height) = (COLUMNS as f64 * CELL, 30.0 + rows as f64 * (CELL + 16.0));

    let mut doc = Document::new()
        .set("viewBox", (0, 0, width, height))
        .set("width", width)
        .set("height", height)
        .add(Text::new(title).set("x", 8).set("y", 20).set("font-family", "sans-serif").set("font-size", 14));
    for (idx, ((key, count), t)) in stat.entries.iter().zip(&thumbs).enumerate() {
        let (x0, y0) = ((idx % COLUMNS) as f64 * CELL, 30.0 + (idx / COLUMNS) as f64 * (CELL + 16.0));
        let at = |p: &[f64; 2]| [r(CELL / 2.0 + s * p[0]), r(CELL / 2.0 - s * p[1])];
        let mut cell =
            Group::new().set("class", "cell").set("transform", format!("translate({} {})", r(x0), r(y0))).add(
                Rectangle::new()
                    .set("width", CELL - 4.0)
                    .set("height", CELL + 12.0)
                    .set("x", 2)
                    .set("y", 0)
                    .set("fill", "none")
                    .set("stroke", "#bbbbbb"),
            );
        let hull: Vec<String> = t
            .points
            .iter()
            .map(|(p, _)| {
                let q = at(p);
                format!("{},{}", q[0], q[1])
            })
            .collect();
        cell = cell.add(Polygon::new().set("points", hull.join(" ")).set("fill", "#eeeeee").set("stroke", "black"));
        for (a, b) in &t.roof_lines {
            let (a, b) = (at(a), at(b));
            cell = cell.add(
                Line::new()
                    .set("class", "roof")
                    .set("x1", a[0])
                    .set("y1", a[1])
                    .set("x2", b[0])
                    .set("y2", b[1])
                    .set("stroke", "#666666")
                    .set("stroke-dasharray", "3 2"),
            );
        }
        for (p, on) in &t.points {
            let q = at(p);
            cell = cell.add(
                Circle::new()
                    .set("cx", q[0])
                    .set("cy", q[1])
                    .set("r", 4)
                    .set("stroke", "black")
                    .set("fill", if *on { "black" } else { "white" }),
            );
        }
        let (size, marked) = key.stratum();
        cell = cell.add(
            Text::new(format!("({size},{marked}) x{count}"))
                .set("x", CELL / 2.0)
                .set("y", CELL + 8.0)
                .set("text-anchor", "middle")
                .set("font-family", "sans-serif")
                .set("font-size", 10),
        );
        doc = doc.add(cell);
    }
    doc
}

fn optional_subset(model: &SolidModel, text: Option<&str>, fallback: &str) -> anyhow::Result<Option<VertexSubset>> {
    match text {
        Some(t) => parse_subset(t, model).map(Some),
        None if model.id == SolidId::Dodecahedron => parse_subset(fallback, model).map(Some),
        None => Ok(None),
    }
}

pub fn run(config: &RunConfig, args: &FiguresArgs) -> anyhow::Result<Outcome> {
    let model = SolidModel::build(config.solid);
    let s = optional_subset(&model, args.s_subset.as_deref(), "S")?;
    let t = optional_subset(&model, args.t_subset.as_deref(), "T")?;
    let ctx = PlanarContext::new(model);
    let (model, planes) = (&ctx.model, enumerate_planes(&ctx.model));
    let out = Output::create(config)?;

    out.svg("schlegel.svg", &schlegel(model, &planes, None, &format!("{} vertices", model.id)))?;
    let mut written = 1;
    for (name, x) in [("s", s), ("t", t)] {
        let Some(x) = x else { continue };
        out.svg(
            &format!("subset_{name}.svg"),
            &schlegel(model, &planes, Some(x), &format!("{} = {x}", name.to_uppercase())),
        )?;
        let stat = ctx.statistic(x);
        let title = format!("{} planar classes of {x}", stat.class_count());
        out.svg(&format!("classes_{name}.svg"), &class_grid(model, &stat, &title))?;
        written += 2;
    }
    println!("{written} figures written to {}", config.out.display());
    Ok(Outcome::Passed)
}
