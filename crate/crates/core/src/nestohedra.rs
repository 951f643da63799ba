//! Hypergraphs on `[n]`, building closures, restriction and deletion, the
//! Minkowski-sum H-representation of `Δ_F = Σ_{S ∈ F} Δ_S`, tightness and
//! height functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::exactgeom::lattice::FaceLattice;
use crate::exactgeom::polytope::{HPolytope, VPolytope};
use crate::exactgeom::qq::{self, QVector, QQ};
use crate::{Error, Result};

/// A subset of `[n]`; element `i` is bit `i − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub fn from_elements(elems: &[usize]) -> Self {
        Self(elems.iter().fold(0, |m, &i| m | 1 << (i - 1)))
    }

    pub fn full(n: usize) -> Self {
        Self(if n == 64 { u64::MAX } else { (1 << n) - 1 })
    }

    pub fn singleton(i: usize) -> Self {
        Self(1 << (i - 1))
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..64).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn minus(&self, other: &Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Indicator vector `e_X` in ℚⁿ.
    pub fn indicator(&self, n: usize) -> QVector {
        (1..=n)
            .map(|i| if self.contains(i) { QQ::one() } else { QQ::zero() })
            .collect()
    }

    /// The cyclic interval `[i, j]⁰ = {i, i+1, …, j}` in `[n]`.
    pub fn cyclic_interval(n: usize, i: usize, len: usize) -> Self {
        Self::from_elements(&(0..len).map(|k| (i - 1 + k) % n + 1).collect::<Vec<_>>())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: BTreeSet<Subset>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::InvalidInput(format!("ground set size {n} out of range")));
        }
        let full = Subset::full(n);
        let edges: BTreeSet<Subset> = edges.into_iter().collect();
        if let Some(e) = edges.iter().find(|e| e.is_empty() || !e.is_subset(&full)) {
            return Err(Error::InvalidInput(format!("edge {e} is not a nonempty subset of [{n}]")));
        }
        Ok(Self { n, edges })
    }

    pub fn from_lists(n: usize, edges: &[Vec<usize>]) -> Result<Self> {
        if edges.iter().flatten().any(|&i| i == 0 || i > n) {
            return Err(Error::InvalidInput(format!("element outside [{n}]")));
        }
        Self::new(n, edges.iter().map(|e| Subset::from_elements(e)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Subset> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    /// `F_X = {S ∈ F : S ⊆ X}`.
    pub fn restriction(&self, x: Subset) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: self.edges.iter().copied().filter(|e| e.is_subset(&x)).collect(),
        }
    }

    /// `F^X = {S ∖ X : S ∈ F, S ⊄ X}`.
    pub fn deletion(&self, x: Subset) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| e.minus(&x))
                .filter(|e| !e.is_empty())
                .collect(),
        }
    }

    /// Connected components on `ground` (edges are intersected with it).
    pub fn components(&self, ground: Subset) -> Vec<Subset> {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            let els = Subset(e.0 & ground.0).elements();
            for w in els.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        let mut comps: BTreeMap<usize, Subset> = BTreeMap::new();
        for i in ground.elements() {
            let c = comps.entry(uf.find(i - 1)).or_default();
            *c = c.union(&Subset::singleton(i));
        }
        let mut out: Vec<Subset> = comps.into_values().collect();
        out.sort_by_key(|s| s.elements());
        out
    }

    pub fn is_connected_on(&self, ground: Subset) -> bool {
        self.components(ground).len() <= 1
    }

    pub fn to_json(&self) -> HypergraphJson {
        let mut edges: Vec<Vec<usize>> = self.edges.iter().map(Subset::elements).collect();
        edges.sort();
        HypergraphJson { n: self.n, edges }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl HypergraphJson {
    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        Hypergraph::from_lists(self.n, &self.edges)
    }
}

/// The cycle edges `{1,2}, {2,3}, …, {n,1}`.
pub fn cyclic_edges(n: usize) -> Hypergraph {
    Hypergraph::new(n, (1..=n).map(|i| Subset::cyclic_interval(n, i, 2))).expect("valid")
}

/// The path edges `{1,2}, …, {n−1,n}`.
pub fn path_edges(n: usize) -> Hypergraph {
    Hypergraph::new(n, (1..n).map(|i| Subset::from_elements(&[i, i + 1]))).expect("valid")
}

/// The `n` cyclic intervals of length `k`.
pub fn bc_family(n: usize, k: usize) -> Result<Hypergraph> {
    if k < 2 || k + 1 > n {
        return Err(Error::InvalidInput(format!("BC family needs 2 ≤ k ≤ n−1, got n={n}, k={k}")));
    }
    Hypergraph::new(n, (1..=n).map(|i| Subset::cyclic_interval(n, i, k)))
}

/// Why a set belongs to a building closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Generator,
    Singleton,
    Union(Subset, Subset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildingSet {
    n: usize,
    sets: BTreeSet<Subset>,
    witnesses: BTreeMap<Subset, Provenance>,
}

impl BuildingSet {
    pub fn sets(&self) -> &BTreeSet<Subset> {
        &self.sets
    }

    pub fn contains(&self, x: &Subset) -> bool {
        self.sets.contains(x)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn witness(&self, x: &Subset) -> Option<Provenance> {
        self.witnesses.get(x).copied()
    }

    pub fn as_hypergraph(&self) -> Hypergraph {
        Hypergraph { n: self.n, edges: self.sets.clone() }
    }

    /// Every singleton present and unions of intersecting members present.
    pub fn is_building(&self) -> bool {
        (1..=self.n).all(|i| self.sets.contains(&Subset::singleton(i)))
            && self.sets.iter().all(|a| {
                self.sets
                    .iter()
                    .all(|b| !a.intersects(b) || self.sets.contains(&a.union(b)))
            })
    }

    /// Checks that each set is a generator, a singleton, or the union of two
    /// intersecting members that are themselves certified earlier, so the
    /// closure adds nothing beyond what is forced.
    pub fn certify_minimal(&self) -> bool {
        let mut certified: BTreeSet<Subset> = BTreeSet::new();
        let mut pending: Vec<Subset> = self.sets.iter().copied().collect();
        pending.sort_by_key(|s| s.len());
        for _ in 0..=pending.len() {
            pending.retain(|s| {
                let ok = match self.witnesses.get(s) {
                    Some(Provenance::Generator) | Some(Provenance::Singleton) => true,
                    Some(Provenance::Union(a, b)) => {
                        a.intersects(b)
                            && a.union(b) == *s
                            && certified.contains(a)
                            && certified.contains(b)
                    }
                    None => false,
                };
                if ok {
                    certified.insert(*s);
                }
                !ok
            });
            if pending.is_empty() {
                return true;
            }
        }
        false
    }
}

/// Least family containing `F` and all singletons that is closed under
/// unions of intersecting members.
pub fn building_closure(f: &Hypergraph) -> BuildingSet {
    let mut witnesses: BTreeMap<Subset, Provenance> = BTreeMap::new();
    for e in &f.edges {
        witnesses.insert(*e, Provenance::Generator);
    }
    for i in 1..=f.n {
        witnesses.entry(Subset::singleton(i)).or_insert(Provenance::Singleton);
    }
    loop {
        let current: Vec<Subset> = witnesses.keys().copied().collect();
        let mut added = false;
        for (k, a) in current.iter().enumerate() {
            for b in &current[k + 1..] {
                if a.intersects(b) {
                    let u = a.union(b);
                    if let std::collections::btree_map::Entry::Vacant(v) = witnesses.entry(u) {
                        v.insert(Provenance::Union(*a, *b));
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    BuildingSet { n: f.n, sets: witnesses.keys().copied().collect(), witnesses }
}

/// H-representation of `Δ_F`: `φ_[n](x) = |F|` and `φ_X(x) ≥ |F_X|` for
/// each `X ∈ F̂ ∖ {[n]}`, stored as `−φ_X(x) ≤ −|F_X|`.
#[derive(Clone, Debug)]
pub struct MinkowskiHRep {
    pub polytope: HPolytope,
    /// The set `X` behind each inequality, in the same order.
    pub sets: Vec<Subset>,
    pub connected: bool,
}

pub fn minkowski_h_rep(f: &Hypergraph) -> MinkowskiHRep {
    let n = f.n;
    let closure = building_closure(f);
    let full = Subset::full(n);
    let mut sets: Vec<Subset> = closure.sets.iter().copied().filter(|x| *x != full).collect();
    sets.sort_by_key(|s| (s.len(), s.elements()));
    let k = |m: usize| QQ::from_integer(BigInt::from(m));
    let inequalities: Vec<(QVector, QQ)> = sets
        .iter()
        .map(|x| {
            let a: QVector = x.indicator(n).into_iter().map(|c| -c).collect();
            (a, -k(f.restriction(*x).len()))
        })
        .collect();
    let polytope = HPolytope::new(n, vec![(vec![QQ::one(); n], k(f.len()))], inequalities);
    MinkowskiHRep { polytope, sets, connected: f.is_connected_on(full) }
}

/// `Δ_F` computed directly as an iterated Minkowski sum of simplices.
pub fn minkowski_sum_of_simplices(f: &Hypergraph) -> Result<VPolytope> {
    let n = f.n;
    let mut acc = VPolytope::hull(&[vec![QQ::zero(); n]])?;
    for e in &f.edges {
        let simplex: Vec<QVector> = e.elements().iter().map(|&i| qq::unit(n, i - 1)).collect();
        let s = VPolytope::hull(&simplex)?;
        acc = crate::exactgeom::polytope::minkowski_sum(&acc, &s)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessEntry {
    pub set: Vec<usize>,
    pub connected: bool,
    pub components: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessReport {
    pub tight: bool,
    /// Condition (1): every restriction `F_X`, `X ∈ F̂`, is connected on `X`.
    pub restrictions_connected: bool,
    pub entries: Vec<TightnessEntry>,
    pub witnesses: Vec<Vec<usize>>,
}

/// Combinatorial tightness test: `F^X` connected on `[n] ∖ X` for every
/// `X ∈ F̂ ∖ {[n]}`. Failing sets are listed as witnesses.
pub fn is_tight(f: &Hypergraph) -> TightnessReport {
    let closure = building_closure(f);
    let full = f.ground();
    let mut sets: Vec<Subset> = closure.sets.iter().copied().filter(|x| *x != full).collect();
    sets.sort_by_key(|s| (s.len(), s.elements()));
    let restrictions_connected = closure.sets.iter().all(|x| f.restriction(*x).is_connected_on(*x));
    let entries: Vec<TightnessEntry> = sets
        .iter()
        .map(|x| {
            let rest = full.minus(x);
            let comps = f.deletion(*x).components(rest);
            TightnessEntry {
                set: x.elements(),
                connected: comps.len() <= 1,
                components: comps.iter().map(Subset::elements).collect(),
            }
        })
        .collect();
    let witnesses: Vec<Vec<usize>> = entries
        .iter()
        .filter(|e| !e.connected)
        .map(|e| e.set.clone())
        .collect();
    TightnessReport {
        tight: witnesses.is_empty() && restrictions_connected,
        restrictions_connected,
        entries,
        witnesses,
    }
}

/// Per-inequality comparison of the combinatorial test with LP irredundancy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessCrossCheck {
    pub agree: bool,
    /// `(X, connected, essential)` for every `X ∈ F̂ ∖ {[n]}`.
    pub rows: Vec<(Vec<usize>, bool, bool)>,
}

pub fn tightness_cross_check(f: &Hypergraph) -> TightnessCrossCheck {
    let report = is_tight(f);
    let h = minkowski_h_rep(f);
    let flags = h.polytope.irredundant_flags();
    let rows: Vec<(Vec<usize>, bool, bool)> = report
        .entries
        .iter()
        .zip(h.sets.iter().zip(flags))
        .map(|(e, (x, &ess))| {
            debug_assert_eq!(e.set, x.elements());
            (e.set.clone(), e.connected, ess)
        })
        .collect();
    TightnessCrossCheck {
        agree: rows.iter().all(|(_, c, e)| c == e),
        rows,
    }
}

/// `h_F(X) = |F|/n − |F_X|/|X|` for `X` in the building closure.
pub fn height(f: &Hypergraph, closure: &BuildingSet, x: Subset) -> Result<QQ> {
    if !closure.contains(&x) {
        return Err(Error::InvalidInput(format!("{x} is not in the building closure")));
    }
    let q = |a: usize, b: usize| QQ::new(BigInt::from(a), BigInt::from(b));
    Ok(q(f.len(), f.n) - q(f.restriction(x).len(), x.len()))
}

/// `A_X = (1/h_F(X)) (e/n − e_X/|X|)`, a vector in `H₀`.
pub fn a_x_vector(f: &Hypergraph, closure: &BuildingSet, x: Subset) -> Result<QVector> {
    let h = height(f, closure, x)?;
    if h.is_zero() {
        return Err(Error::InvalidInput(format!("height of {x} is zero")));
    }
    let n = f.n;
    let inv_n = QQ::new(BigInt::one(), BigInt::from(n));
    let inv_x = QQ::new(BigInt::one(), BigInt::from(x.len()));
    let v: QVector = (1..=n)
        .map(|i| {
            let mut c = inv_n.clone();
            if x.contains(i) {
                c -= &inv_x;
            }
            c / &h
        })
        .collect();
    Ok(v)
}

/// The representation `⟨A_X, y⟩ ≤ h_G(X)/h_F(X)` in `H₀` for `X ∈ F̂ ∖ {[n]}`,
/// where `G` is `F` itself or its closure.
pub fn a_x_h_rep(f: &Hypergraph, use_closure: bool) -> Result<HPolytope> {
    let n = f.n;
    let closure = building_closure(f);
    let g = if use_closure { closure.as_hypergraph() } else { f.clone() };
    let full = Subset::full(n);
    let mut rows = Vec::new();
    for x in closure.sets.iter().filter(|x| **x != full) {
        let a = a_x_vector(f, &closure, *x)?;
        let ratio = height(&g, &closure, *x)? / height(f, &closure, *x)?;
        rows.push((a, ratio));
    }
    Ok(HPolytope::new(n, vec![(vec![QQ::one(); n], QQ::zero())], rows))
}

/// Checks that `{A_X : X ∈ F̂ ∖ {[n]}}` equals `{±A_i} ∪ {A_i − A_j}` with
/// `A_i = A_{[1,i)⁰}`, i.e. forms a root system of type A.
pub fn root_system_check(f: &Hypergraph) -> Result<bool> {
    let n = f.n;
    let closure = building_closure(f);
    let full = Subset::full(n);
    let mut lhs: BTreeSet<QVector> = BTreeSet::new();
    for x in closure.sets.iter().filter(|x| **x != full) {
        lhs.insert(a_x_vector(f, &closure, *x)?);
    }
    let mut base = Vec::new();
    for i in 2..=n {
        base.push(a_x_vector(f, &closure, Subset::from_elements(&(1..i).collect::<Vec<_>>()))?);
    }
    let mut rhs: BTreeSet<QVector> = BTreeSet::new();
    for (i, a) in base.iter().enumerate() {
        rhs.insert(a.clone());
        rhs.insert(a.iter().map(|c| -c.clone()).collect());
        for (j, b) in base.iter().enumerate() {
            if i != j {
                rhs.insert(qq::sub(a, b));
            }
        }
    }
    Ok(lhs == rhs)
}

/// Certificate that two polytopes are combinatorially different: distinct
/// f-vectors, or else distinct multisets of facet sizes and vertex degrees.
pub fn non_isomorphism_certificate(p: &VPolytope, q: &VPolytope) -> Option<String> {
    let lp = FaceLattice::of_polytope(p);
    let lq = FaceLattice::of_polytope(q);
    if lp.f_vector() != lq.f_vector() {
        return Some(format!("f-vectors {:?} and {:?}", lp.f_vector(), lq.f_vector()));
    }
    let profile = |x: &VPolytope| {
        let mut facet_sizes: Vec<usize> = x.facets().iter().map(|f| f.vertices.len()).collect();
        facet_sizes.sort_unstable();
        let mut degrees = vec![0usize; x.vertices().len()];
        for f in x.facets() {
            for &v in &f.vertices {
                degrees[v] += 1;
            }
        }
        degrees.sort_unstable();
        (facet_sizes, degrees)
    };
    let (a, b) = (profile(p), profile(q));
    (a != b).then(|| format!("incidence profiles {a:?} and {b:?}"))
}
