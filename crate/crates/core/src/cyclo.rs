//! The root polytope `Rootₙ = conv{eᵢ − eⱼ}` and the map sending an arc
//! `[i, j)` to `eᵢ − eⱼ`, which carries the boundary complex of the
//! cyclohedron onto a triangulation of `∂Rootₙ`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcs::{self, AdmissibleFamily, Arc, Dihedral};
use crate::exactgeom::lattice::FaceLattice;
use crate::exactgeom::linalg;
use crate::exactgeom::polytope::VPolytope;
use crate::exactgeom::qq::{self, QVector, QQ};
use crate::exactgeom::triangulate::{complex_f_vector, euler_characteristic, pulling_boundary, ridge_multiplicities};
use crate::exactgeom::volume::{root_lattice_coordinates, simplex_volume};
use crate::transport::lp::{LinearProgram, LpOutcome, Relation, Sense};
use crate::{check_range, Error, Result};

pub const ROOT_MAX_N: usize = 6;
pub const PULLING_MAX_N: usize = 5;
pub const BASIS_MAX_N: usize = 7;
/// Pairwise disjointness is checked over all cell pairs up to this `n`, and
/// over pairs sharing a facet beyond it.
pub const EXHAUSTIVE_DISJOINT_MAX_N: usize = 5;

/// `eᵢ − eⱼ` for `[i, j)`.
pub fn phi_image(a: &Arc) -> QVector {
    let mut v = vec![QQ::zero(); a.n];
    v[a.source - 1] = QQ::one();
    v[a.sink - 1] = -QQ::one();
    v
}

/// The pair `(i, j)` with `v = eᵢ − eⱼ`.
pub fn root_label(v: &[QQ]) -> Option<(usize, usize)> {
    let i = v.iter().position(|x| x.is_one())?;
    let j = v.iter().position(|x| *x == -QQ::one())?;
    let rest_zero = v.iter().enumerate().all(|(k, x)| k == i || k == j || x.is_zero());
    rest_zero.then_some((i + 1, j + 1))
}

#[derive(Clone, Debug)]
pub struct RootPolytope {
    pub n: usize,
    pub polytope: VPolytope,
    pub lattice: FaceLattice,
    /// `labels[v] = (i, j)` for the vertex `eᵢ − eⱼ`.
    pub labels: Vec<(usize, usize)>,
    /// Support of `Rootₙ` equals that of `Δ + (−Δ)` on every facet normal.
    pub minkowski_ok: bool,
}

impl RootPolytope {
    /// `(P, Q)` with facet vertices `{eᵢ − eⱼ : i ∈ P, j ∈ Q}`, when the
    /// facet is exactly such a product.
    pub fn facet_product(&self, facet: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let vs = &self.polytope.facets()[facet].vertices;
        let p: Vec<usize> = vs.iter().map(|&v| self.labels[v].0).sorted().dedup().collect();
        let q: Vec<usize> = vs.iter().map(|&v| self.labels[v].1).sorted().dedup().collect();
        let disjoint = p.iter().all(|i| !q.contains(i));
        (disjoint && vs.len() == p.len() * q.len()).then_some((p, q))
    }
}

pub fn build_root_polytope(n: usize) -> Result<RootPolytope> {
    check_range("n", n, arcs::MIN_N, ROOT_MAX_N)?;
    let points: Vec<QVector> = arcs::all_arcs(n).iter().map(phi_image).collect();
    let polytope = VPolytope::hull(&points)?;
    if polytope.vertices().len() != n * (n - 1) || !polytope.is_centrally_symmetric() {
        return Err(Error::Internal("root polytope has the wrong vertex set".into()));
    }
    let labels = polytope
        .vertices()
        .iter()
        .map(|v| root_label(v).ok_or_else(|| Error::Internal("vertex is not a root".into())))
        .collect::<Result<Vec<_>>>()?;
    // Δ + (−Δ) has support max uᵢ − min uᵢ.
    let minkowski_ok = polytope.facets().iter().all(|f| {
        let u = &f.normal;
        let hi = u.iter().max().expect("n ≥ 3");
        let lo = u.iter().min().expect("n ≥ 3");
        polytope.support(u) == hi - lo
    });
    let lattice = FaceLattice::of_polytope(&polytope);
    Ok(RootPolytope { n, polytope, lattice, labels, minkowski_ok })
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub family: AdmissibleFamily,
    pub points: Vec<QVector>,
    /// Indices of `points` among the vertices of `Rootₙ`.
    pub vertices: Vec<usize>,
    pub facet: usize,
}

#[derive(Clone, Debug)]
pub struct BoundaryTriangulation {
    pub n: usize,
    pub cells: Vec<Cell>,
    /// Cell indices grouped by the facet of `Rootₙ` containing them.
    pub by_facet: BTreeMap<usize, Vec<usize>>,
}

impl BoundaryTriangulation {
    pub fn vertex_cells(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|c| c.vertices.clone()).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        complex_f_vector(&self.vertex_cells())
    }

    pub fn to_json(&self, root: &RootPolytope) -> TriangulationJson {
        let cells = self
            .cells
            .iter()
            .map(|c| CellJson {
                family: c.family.arcs().iter().map(|a| [a.source, a.sink]).collect(),
                vertices: c.points.iter().map(|p| p.iter().map(|x| x.to_integer().to_string()).collect()).collect(),
                facet: c.facet,
            })
            .collect();
        let facets = self
            .by_facet
            .iter()
            .map(|(&f, cs)| FacetJson {
                index: f,
                normal: qq::format_vec(&root.polytope.facets()[f].normal),
                rhs: qq::format_qq(&root.polytope.facets()[f].rhs),
                cells: cs.clone(),
            })
            .collect();
        TriangulationJson { n: self.n, cells, facets }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub family: Vec<[usize; 2]>,
    pub vertices: Vec<Vec<String>>,
    pub facet: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub index: usize,
    pub normal: Vec<String>,
    pub rhs: String,
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub n: usize,
    pub cells: Vec<CellJson>,
    pub facets: Vec<FacetJson>,
}

/// Images of all maximal admissible families. A degenerate image or one
/// not contained in a facet is an error.
pub fn boundary_triangulation_via_phi(root: &RootPolytope) -> Result<BoundaryTriangulation> {
    let n = root.n;
    let families = arcs::enumerate_admissible(n, Some(n - 1))?;
    let facets = root.polytope.facets();
    let cells = families
        .into_par_iter()
        .map(|family| {
            let points: Vec<QVector> = family.arcs().iter().map(phi_image).collect();
            let mut with_origin = vec![vec![QQ::zero(); n]];
            with_origin.extend(points.iter().cloned());
            if simplex_volume(&with_origin)?.degenerate {
                return Err(Error::Degenerate(format!("image of {family} is degenerate")));
            }
            let vertices: Vec<usize> = points
                .iter()
                .map(|p| root.polytope.vertex_index(p).expect("roots are vertices"))
                .collect();
            let facet = facets
                .iter()
                .position(|f| vertices.iter().all(|v| f.vertices.binary_search(v).is_ok()))
                .ok_or_else(|| Error::Degenerate(format!("image of {family} is not on a facet")))?;
            Ok(Cell { family, points, vertices: vertices.into_iter().sorted().collect(), facet })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut by_facet: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, c) in cells.iter().enumerate() {
        by_facet.entry(c.facet).or_default().push(k);
    }
    Ok(BoundaryTriangulation { n, cells, by_facet })
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `|det|` of the cone from the origin over a simplex on a facet, in the
/// root lattice basis.
fn pyramid_det(points: &[QVector]) -> Result<QQ> {
    let mut with_origin = vec![vec![QQ::zero(); points[0].len()]];
    with_origin.extend(points.iter().cloned());
    Ok(qq::abs(&simplex_volume(&with_origin)?.determinant))
}

/// Whether the relative interiors of two simplices meet: maximize `t` with
/// every barycentric weight at least `t` and equal points.
pub fn interiors_intersect(a: &[QVector], b: &[QVector]) -> bool {
    let (ka, kb) = (a.len(), b.len());
    let n = a[0].len();
    let nv = ka + kb + 1;
    let t = ka + kb;
    let mut lp = LinearProgram::new(nv, Sense::Maximize);
    let mut obj = vec![QQ::zero(); nv];
    obj[t] = QQ::one();
    lp.set_objective(obj);
    let mut sa = vec![QQ::zero(); nv];
    sa[..ka].iter_mut().for_each(|x| *x = QQ::one());
    lp.add_constraint(sa, Relation::Eq, QQ::one());
    let mut sb = vec![QQ::zero(); nv];
    sb[ka..ka + kb].iter_mut().for_each(|x| *x = QQ::one());
    lp.add_constraint(sb, Relation::Eq, QQ::one());
    for c in 0..n {
        let mut row = vec![QQ::zero(); nv];
        for (k, p) in a.iter().enumerate() {
            row[k] = p[c].clone();
        }
        for (k, p) in b.iter().enumerate() {
            row[ka + k] = -p[c].clone();
        }
        lp.add_constraint(row, Relation::Eq, QQ::zero());
    }
    for k in 0..ka + kb {
        let mut row = vec![QQ::zero(); nv];
        row[k] = QQ::one();
        row[t] = -QQ::one();
        lp.add_constraint(row, Relation::Ge, QQ::zero());
    }
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationReport {
    pub n: usize,
    pub cells: usize,
    pub volume_cover: bool,
    pub interiors_disjoint: bool,
    pub pairs_checked: usize,
    pub pseudomanifold: bool,
    pub euler_characteristic: i64,
    pub expected_euler: i64,
    pub f_vector: Vec<usize>,
    pub witnesses: Vec<String>,
}

impl TriangulationReport {
    pub fn pass(&self) -> bool {
        self.volume_cover
            && self.interiors_disjoint
            && self.pseudomanifold
            && self.euler_characteristic == self.expected_euler
    }
}

pub fn verify_triangulation(t: &BoundaryTriangulation, root: &RootPolytope) -> Result<TriangulationReport> {
    let n = t.n;
    let mut witnesses = Vec::new();

    // Facet Δ_P × Δ_Q sits at lattice distance one, so its pyramid has
    // normalized volume C(|P| + |Q| − 2, |P| − 1).
    let mut volume_cover = true;
    for f in 0..root.polytope.facets().len() {
        let expected = match root.facet_product(f) {
            Some((p, q)) => QQ::from_integer(binomial(p.len() + q.len() - 2, p.len() - 1)),
            None => {
                volume_cover = false;
                witnesses.push(format!("facet {f} is not a product of simplices"));
                continue;
            }
        };
        let cells = t.by_facet.get(&f).map(Vec::as_slice).unwrap_or(&[]);
        let mut sum = QQ::zero();
        for &c in cells {
            sum += pyramid_det(&t.cells[c].points)?;
        }
        if sum != expected {
            volume_cover = false;
            witnesses.push(format!("facet {f}: cell volumes sum to {sum}, facet volume {expected}"));
        }
    }

    let pairs: Vec<(usize, usize)> = if n <= EXHAUSTIVE_DISJOINT_MAX_N {
        (0..t.cells.len()).tuple_combinations().collect()
    } else {
        t.by_facet.values().flat_map(|cs| cs.iter().copied().tuple_combinations()).collect()
    };
    let overlaps: Vec<(usize, usize)> = pairs
        .par_iter()
        .copied()
        .filter(|&(a, b)| interiors_intersect(&t.cells[a].points, &t.cells[b].points))
        .collect();
    for &(a, b) in overlaps.iter().take(3) {
        witnesses.push(format!("cells {} and {} overlap", t.cells[a].family, t.cells[b].family));
    }

    let cells = t.vertex_cells();
    let ridges = ridge_multiplicities(&cells);
    let bad_ridge = ridges.iter().find(|(_, &m)| m != 2);
    if let Some((r, m)) = bad_ridge {
        witnesses.push(format!("ridge {r:?} lies in {m} cells"));
    }
    let f_vector = complex_f_vector(&cells);
    let expected_euler = if n % 2 == 0 { 2 } else { 0 };
    Ok(TriangulationReport {
        n,
        cells: t.cells.len(),
        volume_cover,
        interiors_disjoint: overlaps.is_empty(),
        pairs_checked: pairs.len(),
        pseudomanifold: bad_ridge.is_none(),
        euler_characteristic: euler_characteristic(&f_vector),
        expected_euler,
        f_vector,
        witnesses,
    })
}

/// Boundary cells from pulling the vertices of `Rootₙ` in lexicographic
/// order of their labels `(i, j)`.
pub fn pulling_triangulation(root: &RootPolytope) -> Result<Vec<Vec<usize>>> {
    check_range("n", root.n, arcs::MIN_N, PULLING_MAX_N)?;
    let order: Vec<usize> = (0..root.labels.len()).sorted_by_key(|&v| root.labels[v]).collect();
    Ok(pulling_boundary(&root.lattice, &order))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclohedronFVector {
    pub n: usize,
    /// `f_k(Wₙ)` for `k = 0..n−1`, by enumeration of admissible families.
    pub enumerated: Vec<usize>,
    /// `(n−1+i)!/(i!·i!·(n−1−i)!)` at `i = n−1−k`.
    pub closed_form: Vec<usize>,
    /// `C(n−1, i)·C(n−1+i, i)` for `i = 0..n−1`, i.e. faces by codimension.
    pub simion: Vec<usize>,
    pub agree: bool,
}

fn to_usize(x: BigInt) -> usize {
    usize::try_from(x).expect("face counts fit in usize")
}

pub fn cyclohedron_closed_form(n: usize, k: usize) -> usize {
    let i = n - 1 - k;
    // (n−1+i)!/(i! i! (n−1−i)!) = C(n−1+i, i) · C(n−1, i)
    to_usize(binomial(n - 1 + i, i) * binomial(n - 1, i))
}

pub fn cyclohedron_f_vector(n: usize) -> Result<CyclohedronFVector> {
    check_range("n", n, arcs::MIN_N, arcs::MAX_N)?;
    let counts = arcs::family_counts(n)?;
    let enumerated: Vec<usize> = (0..n).map(|k| counts[n - 1 - k]).collect();
    let closed_form: Vec<usize> = (0..n).map(|k| cyclohedron_closed_form(n, k)).collect();
    let simion: Vec<usize> = (0..n).map(|i| to_usize(binomial(n - 1, i) * binomial(n - 1 + i, i))).collect();
    let by_codim: Vec<usize> = simion.iter().rev().copied().collect();
    Ok(CyclohedronFVector {
        n,
        agree: enumerated == closed_form && enumerated == by_codim,
        enumerated,
        closed_form,
        simion,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBasisReport {
    pub n: usize,
    pub families: usize,
    pub all_unimodular: bool,
    pub first_failure: Option<String>,
}

/// Integer matrix of `φ` on a family, rows in the basis `{eₖ − eₖ₊₁}`.
pub fn root_basis_matrix(family: &AdmissibleFamily) -> Vec<QVector> {
    family.arcs().iter().map(|a| root_lattice_coordinates(&phi_image(a))).collect()
}

pub fn lattice_basis_check(n: usize) -> Result<LatticeBasisReport> {
    check_range("n", n, arcs::MIN_N, BASIS_MAX_N)?;
    let families = arcs::enumerate_admissible(n, Some(n - 1))?;
    let first_failure = families
        .par_iter()
        .find_first(|f| qq::abs(&linalg::determinant(&root_basis_matrix(f))) != QQ::one())
        .map(|f| f.to_string());
    Ok(LatticeBasisReport {
        n,
        families: families.len(),
        all_unimodular: first_failure.is_none(),
        first_failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnimodularityReport {
    pub n: usize,
    /// Affinely independent `n`-subsets of vertices, i.e. full simplices.
    pub simplices: usize,
    /// Distinct normalized volumes among them, ascending.
    pub volumes: Vec<String>,
    /// One simplex per volume, as vertex labels.
    pub examples: Vec<Vec<(usize, usize)>>,
    /// Every full simplex inside a facet pyramid has `|det| = 1`.
    pub facetwise_unimodular: bool,
}

impl UnimodularityReport {
    pub fn equal_volumes(&self) -> bool {
        self.volumes.len() == 1
    }
}

pub fn unimodularity(root: &RootPolytope) -> Result<UnimodularityReport> {
    check_range("n", root.n, arcs::MIN_N, PULLING_MAX_N)?;
    let n = root.n;
    let verts = root.polytope.vertices();
    let subsets: Vec<Vec<usize>> = (0..verts.len()).combinations(n).collect();
    let vols: Vec<Option<QQ>> = subsets
        .par_iter()
        .map(|s| {
            let pts: Vec<QVector> = s.iter().map(|&v| verts[v].clone()).collect();
            let sv = simplex_volume(&pts).expect("points lie in H₀");
            (!sv.degenerate).then(|| qq::abs(&sv.determinant))
        })
        .collect();
    let mut by_volume: BTreeMap<QQ, Vec<(usize, usize)>> = BTreeMap::new();
    let mut simplices = 0;
    for (s, v) in subsets.iter().zip(vols) {
        if let Some(v) = v {
            simplices += 1;
            by_volume.entry(v).or_insert_with(|| s.iter().map(|&k| root.labels[k]).collect());
        }
    }
    let facetwise_unimodular = root.polytope.facets().iter().all(|f| {
        f.vertices.iter().copied().combinations(n - 1).all(|s| {
            let pts: Vec<QVector> = s.iter().map(|&v| verts[v].clone()).collect();
            let d = pyramid_det(&pts).expect("points lie in H₀");
            d.is_zero() || d.is_one()
        })
    });
    Ok(UnimodularityReport {
        n,
        simplices,
        volumes: by_volume.keys().map(qq::format_qq).collect(),
        examples: by_volume.into_values().collect(),
        facetwise_unimodular,
    })
}

/// `φ(g·a) = ±P φ(a)` with `P` the coordinate permutation induced by `g`
/// and the sign negative for reflections.
pub fn dihedral_coordinate_image(g: &Dihedral, v: &[QQ]) -> QVector {
    let n = g.n;
    let mut out = vec![QQ::zero(); n];
    for (k, x) in v.iter().enumerate() {
        let k1 = k + 1;
        let moved = if g.reflection { n + 1 - k1 } else { k1 };
        let target = (moved - 1 + g.rotation) % n;
        out[target] = if g.reflection { -x.clone() } else { x.clone() };
    }
    out
}

pub fn dihedral_equivariance(n: usize) -> bool {
    arcs::all_arcs(n).iter().all(|a| {
        Dihedral::elements(n)
            .iter()
            .all(|g| phi_image(&g.apply(a)) == dihedral_coordinate_image(g, &phi_image(a)))
    })
}
