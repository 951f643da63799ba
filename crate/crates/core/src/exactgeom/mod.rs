//! Exact rational linear algebra and a small-dimension polytope engine.

pub mod dd;
pub mod frame;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod polytope;
pub mod qq;
pub mod triangulate;
pub mod volume;

pub use frame::{hyperplane_frame, AffineFrame};
pub use lattice::{lattice_iso_via_bijection, FaceLattice};
pub use polytope::{minkowski_sum, polar_of_linear_image_check, zono_delta, Facet, HPolytope, VPolytope};
pub use qq::{QVector, QQ};
pub use volume::{simplex_volume, SimplexVolume};

/// Largest affine dimension accepted by the hull engine.
pub const MAX_DIM: usize = 8;
