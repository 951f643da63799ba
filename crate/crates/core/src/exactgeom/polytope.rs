//! V- and H-polytopes over ℚ, facet and vertex enumeration, polars,
//! zonotopes and linear images.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dd;
use super::frame::AffineFrame;
use super::linalg::{self, Matrix};
use super::qq::{self, QVector, QQ};
use super::MAX_DIM;
use crate::transport::lp::{LinearProgram, LpOutcome, Relation, Sense};
use crate::{Error, Result};

/// A facet `normal · x ≤ rhs` together with the indices of the vertices on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: QVector,
    pub rhs: QQ,
    pub vertices: Vec<usize>,
}

/// Convex hull of finitely many points, stored by its vertices (sorted
/// lexicographically) and its facets (sorted by canonical normal).
#[derive(Clone, Debug)]
pub struct VPolytope {
    vertices: Vec<QVector>,
    frame: AffineFrame,
    facets: Vec<Facet>,
}

impl VPolytope {
    pub fn hull(points: &[QVector]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Empty);
        };
        let ambient = first.len();
        if points.iter().any(|p| p.len() != ambient) {
            return Err(Error::InvalidInput("points of mixed dimension".into()));
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let frame = AffineFrame::from_points(&pts).expect("nonempty");
        let d = frame.dim();
        if d > MAX_DIM {
            return Err(Error::DimensionOverflow(d));
        }
        if d == 0 {
            return Ok(Self { vertices: pts, frame, facets: Vec::new() });
        }

        let local: Vec<QVector> = pts.iter().map(|p| frame.to_local(p)).collect();
        let rows: Vec<Vec<BigInt>> = local
            .iter()
            .map(|y| {
                let mut h = vec![QQ::one()];
                h.extend(y.iter().cloned());
                qq::primitive_integer(&h).0
            })
            .collect();
        let rays = dd::extreme_rays(&rows, d + 1)?;

        let mut raw: Vec<(QVector, QVector, QQ, Vec<usize>)> = rays
            .iter()
            .map(|r| {
                let r: QVector = r.iter().cloned().map(QQ::from_integer).collect();
                let c: QVector = r[1..].iter().map(|x| -x.clone()).collect();
                let b = r[0].clone();
                let on: Vec<usize> = (0..pts.len())
                    .filter(|&i| qq::dot(&c, &local[i]) == b)
                    .collect();
                let (normal, rhs) = frame.ambient_inequality(&c, &b);
                (c, normal, rhs, on)
            })
            .collect();

        // A point is a vertex iff the local normals of its facets span.
        let is_vertex: Vec<bool> = (0..pts.len())
            .map(|i| {
                let normals: Matrix = raw
                    .iter()
                    .filter(|f| f.3.binary_search(&i).is_ok())
                    .map(|f| f.0.clone())
                    .collect();
                linalg::rank(&normals) == d
            })
            .collect();
        let mut new_index = vec![usize::MAX; pts.len()];
        let mut vertices = Vec::new();
        for (i, p) in pts.into_iter().enumerate() {
            if is_vertex[i] {
                new_index[i] = vertices.len();
                vertices.push(p);
            }
        }
        raw.sort_by(|a, b| (&a.1, &a.2).cmp(&(&b.1, &b.2)));
        let facets = raw
            .into_iter()
            .map(|(_, normal, rhs, on)| Facet {
                normal,
                rhs,
                vertices: on
                    .into_iter()
                    .filter(|&i| is_vertex[i])
                    .map(|i| new_index[i])
                    .collect(),
            })
            .collect();
        Ok(Self { vertices, frame, facets })
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn frame(&self) -> &AffineFrame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.ambient_dim()
    }

    pub fn vertex_index(&self, v: &[QQ]) -> Option<usize> {
        self.vertices
            .binary_search_by(|w| w.as_slice().cmp(v))
            .ok()
    }

    /// Exact vertex-set equality.
    pub fn same_vertex_set(&self, other: &VPolytope) -> bool {
        self.vertices == other.vertices
    }

    pub fn contains(&self, x: &[QQ]) -> bool {
        self.frame.contains(x) && self.facets.iter().all(|f| qq::dot(&f.normal, x) <= f.rhs)
    }

    /// Whether `x` lies in the relative interior.
    pub fn relative_interior_contains(&self, x: &[QQ]) -> bool {
        self.frame.contains(x) && self.facets.iter().all(|f| qq::dot(&f.normal, x) < f.rhs)
    }

    pub fn centroid(&self) -> QVector {
        let k = QQ::from_integer(BigInt::from(self.vertices.len()));
        let mut c = vec![QQ::zero(); self.ambient_dim()];
        for v in &self.vertices {
            c = qq::add(&c, v);
        }
        qq::scale(&c, &(QQ::one() / k))
    }

    /// `max ⟨u, v⟩` over the vertices.
    pub fn support(&self, u: &[QQ]) -> QQ {
        self.vertices
            .iter()
            .map(|v| qq::dot(u, v))
            .max()
            .expect("nonempty polytope")
    }

    /// The complete irredundant H-description inside the affine hull.
    pub fn facet_enumeration(&self) -> HPolytope {
        let inequalities: Vec<(QVector, QQ)> = self
            .facets
            .iter()
            .map(|f| (f.normal.clone(), f.rhs.clone()))
            .collect();
        let m = inequalities.len();
        HPolytope {
            ambient: self.ambient_dim(),
            equalities: self.frame.equations(),
            inequalities,
            irredundant: vec![true; m],
        }
    }

    /// Polar `{y ∈ L : ⟨y, x⟩ ≤ 1 for all x ∈ P}` inside the linear span `L`
    /// of `P`, which must contain the origin in its relative interior.
    pub fn polar_dual(&self) -> Result<VPolytope> {
        if !self.frame.is_linear() {
            return Err(Error::NotInterior("affine hull misses the origin".into()));
        }
        if self.dim() == 0 {
            return Err(Error::Degenerate("polar of a point".into()));
        }
        let mut pts = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            if !f.rhs.is_positive() {
                return Err(Error::NotInterior(format!(
                    "facet {} has right-hand side {}",
                    qq::format_vec(&f.normal).join(","),
                    f.rhs
                )));
            }
            pts.push(qq::scale(&f.normal, &(QQ::one() / &f.rhs)));
        }
        VPolytope::hull(&pts)
    }

    pub fn map_linear(&self, a: &[QVector]) -> Result<VPolytope> {
        let pts: Vec<QVector> = self.vertices.iter().map(|v| linalg::mat_vec(a, v)).collect();
        VPolytope::hull(&pts)
    }

    pub fn scaled(&self, c: &QQ) -> Result<VPolytope> {
        let pts: Vec<QVector> = self.vertices.iter().map(|v| qq::scale(v, c)).collect();
        VPolytope::hull(&pts)
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.vertices.iter().all(|v| {
            let neg: QVector = v.iter().map(|x| -x.clone()).collect();
            self.vertex_index(&neg).is_some()
        })
    }
}

pub fn minkowski_sum(p: &VPolytope, q: &VPolytope) -> Result<VPolytope> {
    let mut pts = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            pts.push(qq::add(a, b));
        }
    }
    VPolytope::hull(&pts)
}

/// The Δ-zonotope `[a, a₀] + ⋯ + [a, a_m]` with `a` the centroid of `A`.
pub fn zono_delta(a: &[QVector]) -> Result<VPolytope> {
    let refs: Vec<&QVector> = a.iter().collect();
    let frame = AffineFrame::from_points(a).ok_or(Error::Empty)?;
    if a.len() > 16 || frame.affine_dim_of(&refs) + 1 != a.len() as isize {
        return Err(Error::Degenerate("points do not span a simplex".into()));
    }
    let m = a.len();
    let k = QQ::from_integer(BigInt::from(m));
    let mut centroid = vec![QQ::zero(); a[0].len()];
    for p in a {
        centroid = qq::add(&centroid, p);
    }
    let centroid = qq::scale(&centroid, &(QQ::one() / &k));
    let base = qq::scale(&centroid, &k);
    let gens: Vec<QVector> = a.iter().map(|p| qq::sub(p, &centroid)).collect();
    let pts: Vec<QVector> = (0u32..1 << m)
        .map(|mask| {
            let mut x = base.clone();
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x = qq::add(&x, g);
                }
            }
            x
        })
        .collect();
    VPolytope::hull(&pts)
}

fn projector(frame: &AffineFrame) -> Matrix {
    let n = frame.ambient_dim();
    let cols: Matrix = (0..n)
        .map(|j| frame.project_to_direction(&qq::unit(n, j)))
        .collect();
    linalg::transpose(&cols)
}

/// Checks `(A K)° = B (K°)` with `B` the inverse transpose of `A` restricted
/// to the linear span `L` of `K`. `A` must map `L` onto itself.
pub fn polar_of_linear_image_check(k: &VPolytope, a: &[QVector]) -> Result<bool> {
    let n = k.ambient_dim();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("matrix shape does not match ambient dimension".into()));
    }
    let frame = k.frame();
    if !frame.is_linear() {
        return Err(Error::NotInterior("affine hull misses the origin".into()));
    }
    let zero = vec![QQ::zero(); n];
    for v in k.vertices() {
        if !frame.contains(&linalg::mat_vec(a, v)) {
            return Err(Error::InvalidInput("matrix does not preserve the span".into()));
        }
    }
    let p = projector(frame);
    let id: Matrix = (0..n).map(|i| qq::unit(n, i)).collect();
    let p_perp: Matrix = id
        .iter()
        .zip(&p)
        .map(|(r, s)| qq::sub(r, s))
        .collect();
    let ap = linalg::mat_mul(a, &p);
    let a_ext: Matrix = ap.iter().zip(&p_perp).map(|(r, s)| qq::add(r, s)).collect();
    let b = linalg::inverse(&linalg::transpose(&a_ext)).ok_or(Error::Singular)?;
    debug_assert!(frame.contains(&zero));

    let lhs = k.map_linear(a)?.polar_dual()?;
    let rhs = k.polar_dual()?.map_linear(&b)?;
    Ok(lhs.same_vertex_set(&rhs))
}

/// Linear equalities and inequalities `normal · x ≤ rhs` in ℚⁿ.
#[derive(Clone, Debug)]
pub struct HPolytope {
    ambient: usize,
    equalities: Vec<(QVector, QQ)>,
    inequalities: Vec<(QVector, QQ)>,
    irredundant: Vec<bool>,
}

impl HPolytope {
    /// Builds the description and decides irredundancy of each inequality by
    /// dropping it and maximizing its left-hand side over the rest.
    pub fn new(
        ambient: usize,
        equalities: Vec<(QVector, QQ)>,
        inequalities: Vec<(QVector, QQ)>,
    ) -> Self {
        let irredundant = (0..inequalities.len())
            .map(|k| essential(ambient, &equalities, &inequalities, k))
            .collect();
        Self { ambient, equalities, inequalities, irredundant }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn equalities(&self) -> &[(QVector, QQ)] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[(QVector, QQ)] {
        &self.inequalities
    }

    pub fn irredundant_flags(&self) -> &[bool] {
        &self.irredundant
    }

    pub fn contains(&self, x: &[QQ]) -> bool {
        self.equalities.iter().all(|(a, b)| qq::dot(a, x) == *b)
            && self.inequalities.iter().all(|(a, b)| qq::dot(a, x) <= *b)
    }

    /// Exact vertices. Unbounded and empty inputs are reported as errors.
    pub fn vertex_enumeration(&self) -> Result<VPolytope> {
        let frame =
            AffineFrame::from_equations(self.ambient, &self.equalities).ok_or(Error::Empty)?;
        let d = frame.dim();
        if d > MAX_DIM {
            return Err(Error::DimensionOverflow(d));
        }
        let local: Vec<(QVector, QQ)> = self
            .inequalities
            .iter()
            .map(|(a, b)| frame.local_inequality(a, b))
            .collect();
        if d == 0 {
            return if local.iter().all(|(_, b)| !b.is_negative()) {
                VPolytope::hull(&[frame.origin().clone()])
            } else {
                Err(Error::Empty)
            };
        }
        // Cone {(t, y) : t·b − c·y ≥ 0, t ≥ 0}; rays with t > 0 are vertices.
        let mut rows: Vec<Vec<BigInt>> = local
            .iter()
            .map(|(c, b)| {
                let mut r = vec![b.clone()];
                r.extend(c.iter().map(|x| -x.clone()));
                qq::primitive_integer(&r).0
            })
            .collect();
        let mut t = vec![BigInt::zero(); d + 1];
        t[0] = BigInt::one();
        rows.push(t);
        let rays = match dd::extreme_rays(&rows, d + 1) {
            Ok(r) => r,
            Err(Error::NotPointed) => return Err(Error::Unbounded),
            Err(e) => return Err(e),
        };
        let mut pts = Vec::new();
        for r in rays {
            if r[0].is_zero() {
                return Err(Error::Unbounded);
            }
            let t = QQ::from_integer(r[0].clone());
            let y: QVector = r[1..]
                .iter()
                .map(|x| QQ::from_integer(x.clone()) / &t)
                .collect();
            pts.push(frame.from_local(&y));
        }
        if pts.is_empty() {
            return Err(Error::Empty);
        }
        VPolytope::hull(&pts)
    }

    /// The irredundant inequalities in canonical form relative to the affine
    /// hull of the solution set, sorted.
    pub fn canonical_irredundant(&self) -> Result<Vec<(QVector, QQ)>> {
        let frame =
            AffineFrame::from_equations(self.ambient, &self.equalities).ok_or(Error::Empty)?;
        let mut rows: Vec<(QVector, QQ)> = self
            .inequalities
            .iter()
            .zip(&self.irredundant)
            .filter(|(_, &keep)| keep)
            .map(|((a, b), _)| frame.canonical_inequality(a, b))
            .collect();
        rows.sort();
        rows.dedup();
        Ok(rows)
    }
}

fn essential(
    ambient: usize,
    equalities: &[(QVector, QQ)],
    inequalities: &[(QVector, QQ)],
    k: usize,
) -> bool {
    let mut lp = LinearProgram::new(ambient, Sense::Maximize);
    for j in 0..ambient {
        lp.set_free(j);
    }
    let (ak, bk) = &inequalities[k];
    lp.set_objective(ak.clone());
    for (a, b) in equalities {
        lp.add_constraint(a.clone(), Relation::Eq, b.clone());
    }
    for (j, (a, b)) in inequalities.iter().enumerate() {
        if j != k {
            lp.add_constraint(a.clone(), Relation::Le, b.clone());
        }
    }
    lp.add_constraint(ak.clone(), Relation::Le, bk + QQ::one());
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => value > *bk,
        LpOutcome::Unbounded => true,
        LpOutcome::Infeasible => false,
    }
}
