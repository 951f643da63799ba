//! Simplex volumes in a fixed lattice basis.
//!
//! Points with a common coordinate sum are measured in the basis
//! `{e₁−e₂, …, e_{n−1}−eₙ}` of `H₀`, where the coordinates of `x` are its
//! prefix sums `(x₁, x₁+x₂, …, x₁+⋯+x_{n−1})`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{self, Matrix};
use super::qq::{self, QVector, QQ};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexVolume {
    /// Determinant of the edge vectors from the first point.
    pub determinant: QQ,
    /// `|determinant| / d!`.
    pub volume: QQ,
    pub degenerate: bool,
}

/// Coordinates of `x ∈ H₀` in the basis `{e₁−e₂, …, e_{n−1}−eₙ}`.
pub fn root_lattice_coordinates(x: &[QQ]) -> QVector {
    let mut acc = QQ::zero();
    x[..x.len() - 1]
        .iter()
        .map(|xi| {
            acc += xi;
            acc.clone()
        })
        .collect()
}

fn factorial(d: usize) -> BigInt {
    (1..=d).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

/// Volume of the simplex on `points`: `n` points of a common hyperplane
/// `Σxᵢ = ν` in ℚⁿ are measured in `H₀`, `n + 1` points in the standard basis.
pub fn simplex_volume(points: &[QVector]) -> Result<SimplexVolume> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidInput("no points".into()))?;
    let n = first.len();
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::InvalidInput("points of mixed dimension".into()));
    }
    let edges: Matrix = points[1..].iter().map(|p| qq::sub(p, first)).collect();
    let rows: Matrix = if points.len() == n + 1 {
        edges
    } else if points.len() == n && n >= 2 {
        if edges.iter().any(|e| !qq::coordinate_sum(e).is_zero()) {
            return Err(Error::InvalidInput("points do not share a coordinate sum".into()));
        }
        edges.iter().map(|e| root_lattice_coordinates(e)).collect()
    } else {
        return Err(Error::InvalidInput(format!(
            "{} points do not form a full simplex in dimension {n}",
            points.len()
        )));
    };
    let d = rows.len();
    let determinant = linalg::determinant(&rows);
    let volume = determinant.abs() / QQ::from_integer(factorial(d));
    Ok(SimplexVolume { degenerate: determinant.is_zero(), determinant, volume })
}
