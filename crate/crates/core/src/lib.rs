//! Planar section statistics of vertex subsets of the Platonic solids.
//!
//! The discrete part works in exact Q(√5) arithmetic: vertex-plane enumeration,
//! symmetry groups, canonical forms and the planar statistic of a subset. The
//! [`sections`] module is a floating-point Monte Carlo simulator for the
//! section distributions of truncated dodecahedra.

pub mod error;
pub mod field;
pub mod geometry;
pub mod planes;
pub mod search;
pub mod sections;
pub mod stats;

pub use error::{FieldError, GeometryError, SectionError, StatsError};
pub use field::{FieldElement, FieldMat3, FieldVec3};
pub use geometry::{Permutation, SolidId, SolidModel, VertexSubset};
pub use planes::{PlaneTypeKey, VertexPlane};
pub use stats::{PlanarClassKey, PlanarContext, PlanarStatistic};

/// The first subset of the dodecahedral homometric pair, in table indices.
pub const DODECAHEDRON_S: [usize; 7] = [0, 1, 2, 3, 4, 11, 17];
/// Its partner: `S` with vertex 2 replaced by vertex 5.
pub const DODECAHEDRON_T: [usize; 7] = [0, 1, 3, 4, 5, 11, 17];
