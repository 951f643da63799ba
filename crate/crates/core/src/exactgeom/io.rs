//! JSON encoding of polytopes and OFF export.

use serde::{Deserialize, Serialize};

use super::lattice::FaceLattice;
use super::polytope::VPolytope;
use super::qq::{self, QVector, QQ};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub ambient: usize,
    pub hyperplane_sum: Option<String>,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &VPolytope) -> Self {
        let sums: Vec<QQ> = p.vertices().iter().map(|v| qq::coordinate_sum(v)).collect();
        let hyperplane_sum = match sums.split_first() {
            Some((s, rest)) if rest.iter().all(|t| t == s) => Some(qq::format_qq(s)),
            _ => None,
        };
        Self {
            ambient: p.ambient_dim(),
            hyperplane_sum,
            vertices: p.vertices().iter().map(|v| qq::format_vec(v)).collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<VPolytope> {
        let pts: Vec<QVector> = self
            .vertices
            .iter()
            .map(|v| qq::parse_vec(v))
            .collect::<Result<_>>()?;
        if pts.iter().any(|p| p.len() != self.ambient) {
            return Err(Error::Parse("vertex length differs from ambient".into()));
        }
        if let Some(s) = &self.hyperplane_sum {
            let s = qq::parse_qq(s)?;
            if pts.iter().any(|p| qq::coordinate_sum(p) != s) {
                return Err(Error::Parse("vertex off the tagged hyperplane".into()));
            }
        }
        VPolytope::hull(&pts)
    }
}

/// Formats a float with twelve significant digits, trailing zeros removed.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Orthonormal coordinates (in floating point) of points in the direction
/// space of their affine hull, relative to the hull's linear part.
fn orthonormal_coordinates(p: &VPolytope, points: &[QVector]) -> Vec<Vec<f64>> {
    let n = p.ambient_dim();
    // Gram-Schmidt on the images of the standard basis under the projector.
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for j in 0..n {
        let v: Vec<f64> = p
            .frame()
            .project_to_direction(&qq::unit(n, j))
            .iter()
            .map(qq::to_f64)
            .collect();
        let mut w = v.clone();
        for b in &basis {
            let d: f64 = w.iter().zip(b).map(|(x, y)| x * y).sum();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= d * bi;
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 {
            basis.push(w.into_iter().map(|x| x / norm).collect());
        }
    }
    points
        .iter()
        .map(|x| {
            let xf: Vec<f64> = x.iter().map(qq::to_f64).collect();
            let mut c: Vec<f64> = basis
                .iter()
                .map(|b| b.iter().zip(&xf).map(|(u, v)| u * v).sum())
                .collect();
            c.resize(3, 0.0);
            c
        })
        .collect()
}

fn write_off(coords: &[Vec<f64>], faces: &[Vec<usize>]) -> String {
    let edges: std::collections::BTreeSet<(usize, usize)> = faces
        .iter()
        .flat_map(|f| {
            (0..f.len()).map(move |i| {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                (a.min(b), a.max(b))
            })
        })
        .collect();
    let mut out = format!("OFF\n{} {} {}\n", coords.len(), faces.len(), edges.len());
    for c in coords {
        let s: Vec<String> = c.iter().map(|&x| format_sig12(x)).collect();
        out.push_str(&s.join(" "));
        out.push('\n');
    }
    for f in faces {
        out.push_str(&f.len().to_string());
        for v in f {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

fn cross(a: &[f64], b: &[f64]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Orders a polygon face by walking its edges, oriented outward from `center`.
fn cyclic_order(
    face: &[usize],
    edges: &[(usize, usize)],
    coords: &[Vec<f64>],
    center: &[f64],
) -> Vec<usize> {
    let inside: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|(a, b)| face.contains(a) && face.contains(b))
        .collect();
    let mut cycle = vec![face[0]];
    while cycle.len() < face.len() {
        let last = *cycle.last().expect("nonempty");
        let prev = if cycle.len() > 1 { Some(cycle[cycle.len() - 2]) } else { None };
        let next = inside
            .iter()
            .filter_map(|&(a, b)| {
                if a == last {
                    Some(b)
                } else if b == last {
                    Some(a)
                } else {
                    None
                }
            })
            .find(|&w| Some(w) != prev && !cycle.contains(&w));
        match next {
            Some(w) => cycle.push(w),
            None => break,
        }
    }
    if cycle.len() >= 3 && coords[0].len() == 3 {
        let p = |i: usize| &coords[cycle[i]];
        let u: Vec<f64> = (0..3).map(|k| p(1)[k] - p(0)[k]).collect();
        let v: Vec<f64> = (0..3).map(|k| p(2)[k] - p(0)[k]).collect();
        let nrm = cross(&u, &v);
        let out: f64 = (0..3).map(|k| nrm[k] * (p(0)[k] - center[k])).sum();
        if out < 0.0 {
            cycle.reverse();
        }
    }
    cycle
}

/// OFF text for a polytope of dimension at most three: facets as polygons
/// (or the single polygon itself in dimension two).
pub fn polytope_off(p: &VPolytope) -> Result<String> {
    let d = p.dim();
    if d > 3 {
        return Err(Error::InvalidInput(format!("OFF export needs dimension ≤ 3, got {d}")));
    }
    let coords = orthonormal_coordinates(p, p.vertices());
    let lattice = FaceLattice::of_polytope(p);
    let edges: Vec<(usize, usize)> = lattice
        .faces_of_dim(1)
        .map(|f| (f.vertices[0], f.vertices[1]))
        .collect();
    let center: Vec<f64> = (0..3)
        .map(|k| coords.iter().map(|c| c[k]).sum::<f64>() / coords.len() as f64)
        .collect();
    let faces: Vec<Vec<usize>> = match d {
        0 | 1 => Vec::new(),
        2 => vec![cyclic_order(
            &(0..p.vertices().len()).collect::<Vec<_>>(),
            &edges,
            &coords,
            &center,
        )],
        _ => lattice
            .facets()
            .map(|f| cyclic_order(&f.vertices, &edges, &coords, &center))
            .collect(),
    };
    Ok(write_off(&coords, &faces))
}

/// OFF text for a triangulated surface given by vertex coordinates (in a
/// common hyperplane) and triangles as index triples.
pub fn triangulation_off(points: &[QVector], triangles: &[Vec<usize>]) -> Result<String> {
    let hull = VPolytope::hull(points)?;
    if hull.dim() > 3 {
        return Err(Error::InvalidInput("OFF export needs dimension ≤ 3".into()));
    }
    let coords = orthonormal_coordinates(&hull, points);
    let center: Vec<f64> = (0..3)
        .map(|k| coords.iter().map(|c| c[k]).sum::<f64>() / coords.len() as f64)
        .collect();
    let faces: Vec<Vec<usize>> = triangles
        .iter()
        .map(|t| {
            let all: Vec<(usize, usize)> = vec![(t[0], t[1]), (t[1], t[2]), (t[0], t[2])];
            cyclic_order(t, &all, &coords, &center)
        })
        .collect();
    Ok(write_off(&coords, &faces))
}
