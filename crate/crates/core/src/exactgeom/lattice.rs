//! Face lattices recorded by vertex sets.

use std::collections::{BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use super::polytope::VPolytope;
use super::qq::QVector;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    /// Affine dimension; −1 for the empty face.
    pub dim: isize,
    pub vertices: Vec<usize>,
}

/// All faces of a polytope (or of a polytopal sphere plus a formal top),
/// sorted by dimension and then by vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    num_vertices: usize,
    dim: usize,
    faces: Vec<Face>,
    index: HashMap<Vec<usize>, usize>,
}

impl FaceLattice {
    fn from_faces(num_vertices: usize, dim: usize, mut faces: Vec<Face>) -> Self {
        faces.sort();
        faces.dedup();
        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        Self { num_vertices, dim, faces, index }
    }

    /// Faces as intersections of facet incidence sets.
    pub fn of_polytope(p: &VPolytope) -> Self {
        let nv = p.vertices().len();
        let d = p.dim();
        let all: Vec<usize> = (0..nv).collect();
        let mut faces = vec![
            Face { dim: -1, vertices: Vec::new() },
            Face { dim: d as isize, vertices: all },
        ];
        if d == 0 {
            return Self::from_faces(nv, d, faces);
        }
        let facet_sets: Vec<FixedBitSet> = p
            .facets()
            .iter()
            .map(|f| {
                let mut b = FixedBitSet::with_capacity(nv);
                for &v in &f.vertices {
                    b.insert(v);
                }
                b
            })
            .collect();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut layer: Vec<FixedBitSet> = Vec::new();
        for b in &facet_sets {
            if seen.insert(b.clone()) {
                layer.push(b.clone());
            }
        }
        while !layer.is_empty() {
            let mut next = Vec::new();
            for f in &layer {
                for g in &facet_sets {
                    let mut h = f.clone();
                    h.intersect_with(g);
                    if h.count_ones(..) > 0 && seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            layer = next;
        }
        let frame = p.frame();
        for set in seen {
            let verts: Vec<usize> = set.ones().collect();
            let pts: Vec<&QVector> = verts.iter().map(|&i| &p.vertices()[i]).collect();
            let dim = frame.affine_dim_of(&pts);
            faces.push(Face { dim, vertices: verts });
        }
        Self::from_faces(nv, d, faces)
    }

    /// Face poset of a simplicial sphere given by its maximal simplices,
    /// completed with the empty face and a formal top of dimension `dim`.
    pub fn from_boundary_complex(num_vertices: usize, dim: usize, maximal: &[Vec<usize>]) -> Self {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for cell in maximal {
            let mut c = cell.clone();
            c.sort_unstable();
            for k in 0..=c.len() {
                for sub in c.iter().copied().combinations(k) {
                    set.insert(sub);
                }
            }
        }
        let mut faces: Vec<Face> = set
            .into_iter()
            .map(|v| Face { dim: v.len() as isize - 1, vertices: v })
            .collect();
        faces.push(Face { dim: dim as isize, vertices: (0..num_vertices).collect() });
        Self::from_faces(num_vertices, dim, faces)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains_face(&self, vertices: &[usize]) -> bool {
        self.index.contains_key(vertices)
    }

    /// `f_vector()[k]` is the number of k-faces, for `k = 0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim + 1];
        for face in &self.faces {
            if face.dim >= 0 {
                f[face.dim as usize] += 1;
            }
        }
        f
    }

    /// Faces of a given dimension.
    pub fn faces_of_dim(&self, k: isize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn facets(&self) -> impl Iterator<Item = &Face> {
        self.faces_of_dim(self.dim as isize - 1)
    }

    /// Whether face `a` is contained in face `b`.
    pub fn le(a: &Face, b: &Face) -> bool {
        a.vertices.iter().all(|v| b.vertices.binary_search(v).is_ok())
    }
}

/// First face of `l1` whose image under `vertex_map` is not a face of `l2`,
/// or `None` when the map induces a lattice isomorphism.
pub fn lattice_iso_mismatch(
    l1: &FaceLattice,
    l2: &FaceLattice,
    vertex_map: &[usize],
) -> Option<Vec<usize>> {
    let image_of = |vs: &[usize]| {
        let mut img: Vec<usize> = vs.iter().map(|&v| vertex_map[v]).collect();
        img.sort_unstable();
        img
    };
    for face in l1.faces() {
        if !l2.contains_face(&image_of(&face.vertices)) {
            return Some(face.vertices.clone());
        }
    }
    if l1.faces().len() != l2.faces().len() {
        // Every image is a face but some face of l2 is missed.
        let images: HashSet<Vec<usize>> = l1.faces().iter().map(|f| image_of(&f.vertices)).collect();
        let missed = l2.faces().iter().find(|f| !images.contains(&f.vertices))?;
        return Some(missed.vertices.clone());
    }
    None
}

/// True iff `vertex_map` is a bijection of vertex sets that carries faces to
/// faces, with every face of `l2` hit.
pub fn lattice_iso_via_bijection(l1: &FaceLattice, l2: &FaceLattice, vertex_map: &[usize]) -> bool {
    if l1.num_vertices() != l2.num_vertices() || vertex_map.len() != l1.num_vertices() {
        return false;
    }
    let distinct: HashSet<usize> = vertex_map.iter().copied().collect();
    if distinct.len() != vertex_map.len() || vertex_map.iter().any(|&v| v >= l2.num_vertices()) {
        return false;
    }
    lattice_iso_mismatch(l1, l2, vertex_map).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::qq::qq;

    fn hexagon() -> VPolytope {
        let pts: Vec<QVector> = [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]
            .iter()
            .map(|p| p.iter().map(|&x| qq(x)).collect())
            .collect();
        VPolytope::hull(&pts).unwrap()
    }

    #[test]
    fn triangle_lattice() {
        let pts: Vec<QVector> = vec![vec![qq(0), qq(0)], vec![qq(1), qq(0)], vec![qq(0), qq(1)]];
        let l = FaceLattice::of_polytope(&VPolytope::hull(&pts).unwrap());
        assert_eq!(l.f_vector(), vec![3, 3, 1]);
        assert_eq!(l.faces().len(), 8);
    }

    #[test]
    fn hexagon_rotation_is_automorphism() {
        let h = hexagon();
        let l = FaceLattice::of_polytope(&h);
        assert_eq!(l.f_vector(), vec![6, 6, 1]);
        // Rotation by one step: (x, y) ↦ (x − y, x).
        let map: Vec<usize> = h
            .vertices()
            .iter()
            .map(|v| {
                let w = vec![&v[0] - &v[1], v[0].clone()];
                h.vertex_index(&w).unwrap()
            })
            .collect();
        assert!(lattice_iso_via_bijection(&l, &l, &map));
        let identity: Vec<usize> = (0..6).collect();
        assert!(lattice_iso_via_bijection(&l, &l, &identity));
        let swap: Vec<usize> = vec![1, 0, 2, 3, 4, 5];
        assert_eq!(
            lattice_iso_via_bijection(&l, &l, &swap),
            lattice_iso_mismatch(&l, &l, &swap).is_none()
        );
    }

    #[test]
    fn boundary_complex_of_triangle() {
        let l = FaceLattice::from_boundary_complex(3, 2, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(l.f_vector(), vec![3, 3, 1]);
    }
}
