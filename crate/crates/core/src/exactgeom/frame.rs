//! Affine coordinate frames.
//!
//! A frame parametrizes an affine subspace `o + L` of ℚⁿ by `dim L` local
//! coordinates. The basis is in reduced echelon form with respect to a set of
//! coordinate columns, so a point's local coordinates are just those columns
//! of `x − o`.

use num_traits::{One, Signed, Zero};

use super::linalg::{self, Matrix};
use super::qq::{self, QVector, QQ};

#[derive(Clone, Debug)]
pub struct AffineFrame {
    origin: QVector,
    basis: Matrix,
    coords: Vec<usize>,
}

impl AffineFrame {
    /// Affine hull of a nonempty point set.
    pub fn from_points(points: &[QVector]) -> Option<Self> {
        let origin = points.first()?.clone();
        let diffs: Matrix = points[1..].iter().map(|p| qq::sub(p, &origin)).collect();
        let (basis, coords) = linalg::rref(&diffs);
        Some(Self { origin, basis, coords })
    }

    /// Solution set of `normal · x = rhs` for every row; `None` if empty.
    pub fn from_equations(ambient: usize, equations: &[(QVector, QQ)]) -> Option<Self> {
        let aug: Matrix = equations
            .iter()
            .map(|(a, b)| {
                let mut r = a.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let (r, pivots) = linalg::rref(&aug);
        if pivots.last() == Some(&ambient) {
            return None;
        }
        let mut origin = vec![QQ::zero(); ambient];
        for (row, &p) in r.iter().zip(&pivots) {
            origin[p] = row[ambient].clone();
        }
        let coeffs: Matrix = r.iter().map(|row| row[..ambient].to_vec()).collect();
        let (basis, coords) = linalg::nullspace(&coeffs, ambient);
        Some(Self { origin, basis, coords })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn origin(&self) -> &QVector {
        &self.origin
    }

    /// Local coordinates of a point assumed to lie in the subspace.
    pub fn to_local(&self, x: &[QQ]) -> QVector {
        self.coords
            .iter()
            .map(|&c| &x[c] - &self.origin[c])
            .collect()
    }

    pub fn from_local(&self, y: &[QQ]) -> QVector {
        let mut x = self.origin.clone();
        for (yk, b) in y.iter().zip(&self.basis) {
            if yk.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *xi += yk * bi;
                }
            }
        }
        x
    }

    pub fn contains(&self, x: &[QQ]) -> bool {
        self.from_local(&self.to_local(x)) == x
    }

    /// Whether the subspace passes through the origin of ℚⁿ.
    pub fn is_linear(&self) -> bool {
        self.contains(&vec![QQ::zero(); self.ambient_dim()])
    }

    /// Restriction of `normal · x ≤ rhs` to local coordinates.
    pub fn local_inequality(&self, normal: &[QQ], rhs: &QQ) -> (QVector, QQ) {
        let c = self.basis.iter().map(|b| qq::dot(normal, b)).collect();
        (c, rhs - qq::dot(normal, &self.origin))
    }

    /// Orthogonal projection of a vector onto the direction space.
    pub fn project_to_direction(&self, a: &[QQ]) -> QVector {
        if self.basis.is_empty() {
            return vec![QQ::zero(); a.len()];
        }
        let gram: Matrix = self
            .basis
            .iter()
            .map(|u| self.basis.iter().map(|v| qq::dot(u, v)).collect())
            .collect();
        let rhs: QVector = self.basis.iter().map(|b| qq::dot(b, a)).collect();
        let w = linalg::solve(&gram, &rhs).expect("frame basis is independent");
        let mut out = vec![QQ::zero(); a.len()];
        for (wk, b) in w.iter().zip(&self.basis) {
            for (o, bi) in out.iter_mut().zip(b) {
                *o += wk * bi;
            }
        }
        out
    }

    /// Lifts a local inequality `c · y ≤ d` to ℚⁿ in canonical form: normal in
    /// the direction space, scaled to a primitive integer vector.
    pub fn ambient_inequality(&self, c: &[QQ], d: &QQ) -> (QVector, QQ) {
        let mut a = vec![QQ::zero(); self.ambient_dim()];
        let mut rhs = d.clone();
        for (ck, &p) in c.iter().zip(&self.coords) {
            a[p] = ck.clone();
            rhs += ck * &self.origin[p];
        }
        self.canonical_inequality(&a, &rhs)
    }

    /// Canonical form of an ambient inequality valid on the subspace.
    pub fn canonical_inequality(&self, a: &[QQ], rhs: &QQ) -> (QVector, QQ) {
        let proj = self.project_to_direction(a);
        let off = qq::sub(a, &proj);
        let rhs = rhs - qq::dot(&off, &self.origin);
        let (ints, factor) = qq::primitive_integer(&proj);
        let normal = ints.into_iter().map(QQ::from_integer).collect();
        (normal, rhs * factor)
    }

    /// Canonical equations `normal · x = rhs` cutting out the subspace.
    pub fn equations(&self) -> Vec<(QVector, QQ)> {
        let n = self.ambient_dim();
        if self.basis.is_empty() {
            return (0..n)
                .map(|i| (qq::unit(n, i), self.origin[i].clone()))
                .collect();
        }
        let (normals, _) = linalg::nullspace(&self.basis, n);
        let (normals, _) = linalg::rref(&normals);
        normals
            .into_iter()
            .map(|v| {
                let (ints, _) = qq::primitive_integer(&v);
                let mut v: QVector = ints.into_iter().map(QQ::from_integer).collect();
                if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                    v = v.into_iter().map(|x| -x).collect();
                }
                let rhs = qq::dot(&v, &self.origin);
                (v, rhs)
            })
            .collect()
    }

    /// Affine rank of a set of points relative to this frame (−1 when empty).
    pub fn affine_dim_of(&self, points: &[&QVector]) -> isize {
        let Some(first) = points.first() else {
            return -1;
        };
        let base = self.to_local(first);
        let diffs: Matrix = points[1..]
            .iter()
            .map(|p| qq::sub(&self.to_local(p), &base))
            .collect();
        linalg::rank(&diffs) as isize
    }
}

/// Frame of the hyperplane `H_sum = {x : x₁ + ⋯ + xₙ = sum}`.
pub fn hyperplane_frame(n: usize, sum: QQ) -> AffineFrame {
    AffineFrame::from_equations(n, &[(vec![QQ::one(); n], sum)]).expect("consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::qq::{frac, qq};

    #[test]
    fn hyperplane_frame_roundtrip() {
        let f = hyperplane_frame(4, qq(0));
        assert_eq!(f.dim(), 3);
        let x = vec![qq(1), qq(-1), frac(1, 2), frac(-1, 2)];
        assert!(f.contains(&x));
        assert_eq!(f.from_local(&f.to_local(&x)), x);
        assert!(!f.contains(&[qq(1), qq(0), qq(0), qq(0)]));
        assert!(f.is_linear());
        let eqs = f.equations();
        assert_eq!(eqs, vec![(vec![qq(1); 4], qq(0))]);
    }

    #[test]
    fn canonical_inequality_projects_normal() {
        let f = hyperplane_frame(4, qq(0));
        // x1 ≤ 1 on H0 becomes 3x1 − x2 − x3 − x4 ≤ 4
        let (a, b) = f.canonical_inequality(&qq::unit(4, 0), &qq(1));
        assert_eq!(a, vec![qq(3), qq(-1), qq(-1), qq(-1)]);
        assert_eq!(b, qq(4));
    }

    #[test]
    fn point_frame_dimension() {
        let pts = vec![
            vec![qq(0), qq(0), qq(1)],
            vec![qq(1), qq(0), qq(1)],
            vec![qq(2), qq(0), qq(1)],
        ];
        let f = AffineFrame::from_points(&pts).unwrap();
        assert_eq!(f.dim(), 1);
        assert!(!f.is_linear());
        assert_eq!(f.equations().len(), 2);
    }
}
