//! Exact polyhedral combinatorics of the cyclohedron and its relatives.
//!
//! The crate is organized around six modules:
//!
//! * [`exactgeom`]: rational linear algebra and a small-dimension polytope
//!   engine (hulls, face lattices, polars, volumes, zonotopes).
//! * [`arcs`]: half-open circular arcs and admissible families, the
//!   simplicial model of the boundary of the dual cyclohedron.
//! * [`cyclo`]: the canonical map from arcs to roots and the induced boundary
//!   triangulation of the type A root polytope.
//! * [`nestohedra`]: hypergraphs, building closures, Minkowski-sum
//!   H-representations, tightness and height functions.
//! * [`kr`]: quasi-metrics and their Kantorovich-Rubinstein and Lipschitz
//!   polytopes.
//! * [`transport`]: exact optimal transport, the KR gauge and an exact
//!   simplex solver shared by the other modules.
//!
//! No floating point is used in any computation; `f64` appears only in
//! export code.

pub mod arcs;
pub mod cyclo;
pub mod exactgeom;
pub mod kr;
pub mod nestohedra;
pub mod transport;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cap exceeded: {what} = {value} (allowed {min}..={max})")]
    CapExceeded {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("affine dimension {0} exceeds the hull engine limit of 8")]
    DimensionOverflow(usize),
    #[error("constraint rows do not span the space; cone is not pointed")]
    NotPointed,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    Empty,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("origin is not in the relative interior: {0}")]
    NotInterior(String),
    #[error("linear map is singular on the subspace")]
    Singular,
    #[error("arcs {0} and {1} are not compatible")]
    NotAdmissible(String, String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(what: &'static str, value: usize, min: usize, max: usize) -> Result<()> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(Error::CapExceeded { what, value, min, max })
    }
}
