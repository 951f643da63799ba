//! Half-open circular arcs `[i, j)` on the cycle `1 → 2 → ⋯ → n → 1` and
//! admissible families of arcs.
//!
//! Admissible families are the simplices of the boundary complex of the
//! dual cyclohedron `Wₙ°`. A family of size `s` corresponds to a face of `Wₙ`
//! of dimension `n − 1 − s`, so larger families are smaller faces.

use std::collections::BTreeSet;
use std::fmt;

use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;
use petgraph::Direction;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactgeom::lattice::FaceLattice;
use crate::{check_range, Error, Result};

pub const MIN_N: usize = 3;
pub const MAX_N: usize = 9;

/// An arc `[source, sink)` with 1-based endpoints in `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub n: usize,
    pub source: usize,
    pub sink: usize,
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.source, self.sink)
    }
}

/// `k` reduced into `1..=n`.
fn wrap(k: isize, n: usize) -> usize {
    (k - 1).rem_euclid(n as isize) as usize + 1
}

impl Arc {
    pub fn new(n: usize, source: usize, sink: usize) -> Result<Self> {
        if n < 2 || !(1..=n).contains(&source) || !(1..=n).contains(&sink) || source == sink {
            return Err(Error::InvalidInput(format!("[{source},{sink}) is not an arc on [{n}]")));
        }
        Ok(Self { n, source, sink })
    }

    /// The run `source, source+1, …, sink−1` taken cyclically.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut k = self.source;
        while k != self.sink {
            out.push(k);
            k = wrap(k as isize + 1, self.n);
        }
        out
    }

    /// Support as a bitmask with bit `i − 1` for element `i`.
    pub fn support_mask(&self) -> u64 {
        self.support().iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    pub fn len(&self) -> usize {
        wrap(self.sink as isize - self.source as isize + 1, self.n) - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Whether `{a, b}` is an admissible pair: intersecting supports must be
/// strictly nested; disjoint supports must not abut (`t(a) ≠ s(b)` and
/// `t(b) ≠ s(a)`).
pub fn compatible(a: &Arc, b: &Arc) -> bool {
    let (x, y) = (a.support_mask(), b.support_mask());
    if x & y != 0 {
        x != y && (x & y == x || x & y == y)
    } else {
        a.sink != b.source && b.sink != a.source
    }
}

pub fn is_admissible(arcs: &[Arc]) -> bool {
    first_incompatible(arcs).is_none()
}

fn first_incompatible(arcs: &[Arc]) -> Option<(Arc, Arc)> {
    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i + 1..] {
            if a == b || !compatible(a, b) {
                return Some((*a, *b));
            }
        }
    }
    None
}

/// An admissible family, arcs sorted by `(source, sink)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleFamily {
    n: usize,
    arcs: Vec<Arc>,
}

impl AdmissibleFamily {
    pub fn new(n: usize, mut arcs: Vec<Arc>) -> Result<Self> {
        if let Some(a) = arcs.iter().find(|a| a.n != n) {
            return Err(Error::InvalidInput(format!("arc {a} is not on [{n}]")));
        }
        arcs.sort();
        if let Some((a, b)) = first_incompatible(&arcs) {
            return Err(Error::NotAdmissible(a.to_string(), b.to_string()));
        }
        Ok(Self { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn sources(&self) -> BTreeSet<usize> {
        self.arcs.iter().map(|a| a.source).collect()
    }

    pub fn sinks(&self) -> BTreeSet<usize> {
        self.arcs.iter().map(|a| a.sink).collect()
    }

    /// Indices of the arcs in [`all_arcs`] order.
    pub fn arc_indices(&self) -> Vec<usize> {
        self.arcs.iter().map(arc_index).collect()
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            n: self.n,
            arcs: self.arcs.iter().map(|a| [a.source, a.sink]).collect(),
        }
    }
}

impl fmt::Display for AdmissibleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(Arc::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl FamilyJson {
    pub fn to_family(&self) -> Result<AdmissibleFamily> {
        let arcs = self
            .arcs
            .iter()
            .map(|&[s, t]| Arc::new(self.n, s, t))
            .collect::<Result<Vec<_>>>()?;
        AdmissibleFamily::new(self.n, arcs)
    }
}

/// All `n(n−1)` arcs sorted by `(source, sink)`.
pub fn all_arcs(n: usize) -> Vec<Arc> {
    let mut out = Vec::with_capacity(n * (n - 1));
    for s in 1..=n {
        for t in 1..=n {
            if s != t {
                out.push(Arc { n, source: s, sink: t });
            }
        }
    }
    out
}

/// Position of `a` in [`all_arcs`].
pub fn arc_index(a: &Arc) -> usize {
    let (s, t) = (a.source - 1, a.sink - 1);
    s * (a.n - 1) + if t > s { t - 1 } else { t }
}

/// Admissible families of size `k` (all sizes, including the empty family,
/// when `k` is `None`) in lexicographic order of their sorted arc lists.
pub fn enumerate_admissible(n: usize, k: Option<usize>) -> Result<Vec<AdmissibleFamily>> {
    check_range("n", n, MIN_N, MAX_N)?;
    let arcs = all_arcs(n);
    let m = arcs.len();
    let compat: Vec<Vec<bool>> = arcs
        .iter()
        .map(|a| arcs.iter().map(|b| compatible(a, b)).collect())
        .collect();

    fn dfs(
        start: usize,
        chosen: &mut Vec<usize>,
        compat: &[Vec<bool>],
        k: Option<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k.is_none_or(|k| chosen.len() == k) {
            out.push(chosen.clone());
        }
        if k.is_some_and(|k| chosen.len() >= k) {
            return;
        }
        for next in start..compat.len() {
            if chosen.iter().all(|&c| compat[c][next]) {
                chosen.push(next);
                dfs(next + 1, chosen, compat, k, out);
                chosen.pop();
            }
        }
    }

    let mut families: Vec<Vec<usize>> = Vec::new();
    if k.is_none_or(|k| k == 0) {
        families.push(Vec::new());
    }
    if k != Some(0) {
        let parts: Vec<Vec<Vec<usize>>> = (0..m)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                dfs(first + 1, &mut vec![first], &compat, k, &mut out);
                out
            })
            .collect();
        families.extend(parts.into_iter().flatten());
    }
    Ok(families
        .into_iter()
        .map(|idx| AdmissibleFamily { n, arcs: idx.into_iter().map(|i| arcs[i]).collect() })
        .collect())
}

/// `counts[s]` = number of admissible families with `s` arcs, `s = 0..=n−1`.
pub fn family_counts(n: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0; n];
    for f in enumerate_admissible(n, None)? {
        counts[f.len()] += 1;
    }
    Ok(counts)
}

/// Face lattice of `∂(Wₙ°)` with vertices indexed by [`all_arcs`] and a
/// formal top of dimension `n − 1`.
pub fn boundary_complex(n: usize) -> Result<FaceLattice> {
    let maximal: Vec<Vec<usize>> = enumerate_admissible(n, Some(n - 1))?
        .iter()
        .map(AdmissibleFamily::arc_indices)
        .collect();
    Ok(FaceLattice::from_boundary_complex(n * (n - 1), n - 1, &maximal))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForestViolation {
    Incompatible(Arc, Arc),
    Cycle(Arc),
    SourceIsSink(usize),
}

/// The digraph on `[n]` (node `i − 1` carries label `i`) with an edge
/// `i → j` for each arc `[i, j)`. Fails with a witness when the arcs are not
/// admissible, or when the graph is not a forest with disjoint source and
/// sink sets.
pub fn to_forest(n: usize, arcs: &[Arc]) -> std::result::Result<DiGraph<usize, ()>, ForestViolation> {
    let mut sorted = arcs.to_vec();
    sorted.sort();
    if let Some((a, b)) = first_incompatible(&sorted) {
        return Err(ForestViolation::Incompatible(a, b));
    }
    let mut g = DiGraph::with_capacity(n, arcs.len());
    for i in 1..=n {
        g.add_node(i);
    }
    let mut uf = UnionFind::new(n);
    for a in &sorted {
        if !uf.union(a.source - 1, a.sink - 1) {
            return Err(ForestViolation::Cycle(*a));
        }
        g.add_edge(NodeIndex::new(a.source - 1), NodeIndex::new(a.sink - 1), ());
    }
    for v in g.node_indices() {
        let out = g.neighbors_directed(v, Direction::Outgoing).count();
        let inn = g.neighbors_directed(v, Direction::Incoming).count();
        if out > 0 && inn > 0 {
            return Err(ForestViolation::SourceIsSink(g[v]));
        }
    }
    Ok(g)
}

/// The element `αʳ βˢ` of the dihedral group of order `2n`, where
/// `α[i,j) = [i+1, j+1)` and `β[i,j) = [n−j+1, n−i+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dihedral {
    pub n: usize,
    pub rotation: usize,
    pub reflection: bool,
}

impl Dihedral {
    pub fn identity(n: usize) -> Self {
        Self { n, rotation: 0, reflection: false }
    }

    pub fn alpha(n: usize) -> Self {
        Self { n, rotation: 1, reflection: false }
    }

    pub fn beta(n: usize) -> Self {
        Self { n, rotation: 0, reflection: true }
    }

    /// All `2n` elements.
    pub fn elements(n: usize) -> Vec<Self> {
        (0..n)
            .flat_map(|r| [false, true].map(|s| Self { n, rotation: r, reflection: s }))
            .collect()
    }

    /// Product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        let t = if self.reflection {
            self.n - other.rotation % self.n
        } else {
            other.rotation
        };
        Self {
            n: self.n,
            rotation: (self.rotation + t) % self.n,
            reflection: self.reflection ^ other.reflection,
        }
    }

    pub fn inverse(&self) -> Self {
        if self.reflection {
            *self
        } else {
            Self { rotation: (self.n - self.rotation) % self.n, ..*self }
        }
    }

    /// Evaluates a word in `a`, `A` (α⁻¹) and `b`, read as a product left
    /// to right.
    pub fn word(n: usize, w: &str) -> Result<Self> {
        w.chars().try_fold(Self::identity(n), |acc, c| {
            let g = match c {
                'a' => Self::alpha(n),
                'A' => Self::alpha(n).inverse(),
                'b' => Self::beta(n),
                _ => return Err(Error::Parse(format!("bad generator {c:?}"))),
            };
            Ok(acc.compose(&g))
        })
    }

    /// Action on vertices of the cycle: `β` is `i ↦ n − i`, `α` is `i ↦ i + 1`.
    pub fn apply_vertex(&self, i: usize) -> usize {
        let i = if self.reflection { wrap(self.n as isize - i as isize, self.n) } else { i };
        wrap((i + self.rotation) as isize, self.n)
    }

    pub fn apply(&self, a: &Arc) -> Arc {
        let (s, t) = if self.reflection {
            (self.apply_vertex(a.sink), self.apply_vertex(a.source))
        } else {
            (self.apply_vertex(a.source), self.apply_vertex(a.sink))
        };
        // With a reflection the sink side moves to the source side: the arc
        // [i,j) covers i..j−1, whose mirror image is [n−j+1, n−i+1).
        let (s, t) = if self.reflection {
            (wrap(s as isize + 1, self.n), wrap(t as isize + 1, self.n))
        } else {
            (s, t)
        };
        Arc { n: a.n, source: s, sink: t }
    }

    pub fn apply_family(&self, f: &AdmissibleFamily) -> AdmissibleFamily {
        let mut arcs: Vec<Arc> = f.arcs.iter().map(|a| self.apply(a)).collect();
        arcs.sort();
        AdmissibleFamily { n: f.n, arcs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(n: usize, s: usize, t: usize) -> Arc {
        Arc::new(n, s, t).unwrap()
    }

    #[test]
    fn supports() {
        assert_eq!(arc(4, 1, 3).support(), vec![1, 2]);
        assert_eq!(arc(4, 4, 1).support(), vec![4]);
        assert_eq!(arc(4, 3, 2).support(), vec![3, 4, 1]);
        assert_eq!(arc(4, 3, 2).len(), 3);
        assert!(Arc::new(4, 2, 2).is_err());
    }

    #[test]
    fn pair_tests() {
        assert!(compatible(&arc(4, 3, 2), &arc(4, 4, 2)));
        assert!(!compatible(&arc(4, 1, 2), &arc(4, 2, 3)));
        assert!(compatible(&arc(4, 1, 2), &arc(4, 3, 4)));
    }

    #[test]
    fn dihedral_formulas() {
        let n = 4;
        assert_eq!(Dihedral::alpha(n).apply(&arc(n, 4, 1)), arc(n, 1, 2));
        assert_eq!(Dihedral::beta(n).apply(&arc(n, 1, 2)), arc(n, 3, 4));
        for a in all_arcs(n) {
            let (i, j) = (a.source as isize, a.sink as isize);
            let expect = arc(n, wrap(n as isize - j + 1, n), wrap(n as isize - i + 1, n));
            assert_eq!(Dihedral::beta(n).apply(&a), expect);
        }
        let e = Dihedral::word(n, "baba").unwrap();
        assert_eq!(e, Dihedral::identity(n));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_admissible(3, Some(1)).unwrap().len(), 6);
        assert_eq!(enumerate_admissible(3, Some(2)).unwrap().len(), 6);
        assert_eq!(enumerate_admissible(4, Some(3)).unwrap().len(), 20);
        assert!(matches!(enumerate_admissible(10, None), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn arc_index_matches_listing() {
        for n in 3..=6 {
            for (i, a) in all_arcs(n).iter().enumerate() {
                assert_eq!(arc_index(a), i);
            }
        }
    }
}
