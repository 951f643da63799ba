//! Pulling triangulations of polytope boundaries and simplicial-complex
//! bookkeeping (f-vectors, Euler characteristic, ridge multiplicities).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;

use super::lattice::{Face, FaceLattice};

/// Boundary triangulation obtained by pulling vertices in the given order:
/// every face is coned from its first vertex (in `order`) over the
/// triangulations of its facets not containing that vertex. Cells are sorted
/// vertex-index lists.
pub fn pulling_boundary(lattice: &FaceLattice, order: &[usize]) -> Vec<Vec<usize>> {
    let rank: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let d = lattice.dim() as isize;
    let mut memo: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    for facet in lattice.faces_of_dim(d - 1) {
        for c in pull(lattice, facet, &rank, &mut memo) {
            cells.insert(c);
        }
    }
    cells.into_iter().collect()
}

fn pull(
    lattice: &FaceLattice,
    face: &Face,
    rank: &HashMap<usize, usize>,
    memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(c) = memo.get(&face.vertices) {
        return c.clone();
    }
    let out = if face.vertices.len() as isize == face.dim + 1 {
        vec![face.vertices.clone()]
    } else {
        let apex = *face
            .vertices
            .iter()
            .min_by_key(|v| rank.get(v).copied().unwrap_or(usize::MAX))
            .expect("nonempty face");
        let subfaces: Vec<Face> = lattice
            .faces_of_dim(face.dim - 1)
            .filter(|g| FaceLattice::le(g, face) && g.vertices.binary_search(&apex).is_err())
            .cloned()
            .collect();
        let mut cells = Vec::new();
        for g in &subfaces {
            for mut c in pull(lattice, g, rank, memo) {
                c.push(apex);
                c.sort_unstable();
                cells.push(c);
            }
        }
        cells
    };
    memo.insert(face.vertices.clone(), out.clone());
    out
}

/// `f[k]` = number of k-simplices in the complex generated by `cells`
/// (empty simplex excluded).
pub fn complex_f_vector(cells: &[Vec<usize>]) -> Vec<usize> {
    let top = cells.iter().map(Vec::len).max().unwrap_or(0);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in cells {
        let mut c = c.clone();
        c.sort_unstable();
        for k in 1..=c.len() {
            for sub in c.iter().copied().combinations(k) {
                seen.insert(sub);
            }
        }
    }
    let mut f = vec![0; top];
    for s in seen {
        f[s.len() - 1] += 1;
    }
    f
}

pub fn euler_characteristic(f: &[usize]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Number of maximal cells through each codimension-one face.
pub fn ridge_multiplicities(cells: &[Vec<usize>]) -> BTreeMap<Vec<usize>, usize> {
    let mut out = BTreeMap::new();
    for c in cells {
        for skip in 0..c.len() {
            let mut r: Vec<usize> = c
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            r.sort_unstable();
            *out.entry(r).or_insert(0) += 1;
        }
    }
    out
}
