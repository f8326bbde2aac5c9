use anyhow::{bail, Context};
use planarstat::{SolidModel, VertexSubset, DODECAHEDRON_S, DODECAHEDRON_T};

/// Parses a vertex list such as `0,3,5..9`.
///
/// Ranges are inclusive, `S` and `T` stand for the two dodecahedral
/// subsets, and the empty string is the empty set. Items may be mixed.
pub fn parse_subset(text: &str, model: &SolidModel) -> anyhow::Result<VertexSubset> {
    let mut out = VertexSubset::EMPTY;
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let part = match item {
            "S" | "s" => VertexSubset::from_indices(DODECAHEDRON_S),
            "T" | "t" => VertexSubset::from_indices(DODECAHEDRON_T),
            _ => match item.split_once("..") {
                Some((lo, hi)) => {
                    let (lo, hi) = (index(lo, model)?, index(hi, model)?);
                    if lo > hi {
                        bail!("empty range '{item}'");
                    }
                    VertexSubset::from_indices(lo..=hi)
                }
                None => VertexSubset::from_indices([index(item, model)?]),
            },
        };
        out = out.union(part);
    }
    model.check_subset(out).with_context(|| format!("subset '{text}' does not fit the {}", model.id))?;
    Ok(out)
}

fn index(text: &str, model: &SolidModel) -> anyhow::Result<usize> {
    let i: usize = text.trim().parse().with_context(|| format!("'{text}' is not a vertex index"))?;
    if i >= model.vertex_count() {
        bail!("vertex {i} out of range for the {} (0..{})", model.id, model.vertex_count() - 1);
    }
    Ok(i)
}
