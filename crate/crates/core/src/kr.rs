//! Quasi-metrics on `[n]` and their Kantorovich-Rubinstein and Lipschitz
//! polytopes.
//!
//! `KR(ρ) = conv{(eᵢ − eⱼ)/ρ(i,j)}` lives in `H₀`. The Lipschitz polytope
//! `{f : f(i) − f(j) ≤ ρ(i,j)}` is taken modulo constants; its canonical
//! representative is the one in `H₀`, where it is exactly the polar of
//! `KR(ρ)`. The pinned model `f(n) = 0` is available as well.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arcs::{self, Arc};
use crate::exactgeom::lattice::{lattice_iso_mismatch, FaceLattice};
use crate::exactgeom::polytope::{HPolytope, VPolytope};
use crate::exactgeom::qq::{self, QVector, QQ};
use crate::nestohedra::{self, Subset};
use crate::{Error, Result};

fn q(num: i64, den: i64) -> QQ {
    QQ::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiMetric {
    n: usize,
    rho: Vec<QVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Validation {
    pub is_quasi: bool,
    pub is_strict: bool,
    pub is_symmetric: bool,
    pub violations: Vec<String>,
}

impl QuasiMetric {
    /// Wraps a square matrix; `rho[i][j]` is `ρ(i+1, j+1)`. No axioms are
    /// checked here, see [`QuasiMetric::validate`].
    pub fn from_matrix(rho: Vec<QVector>) -> Result<Self> {
        let n = rho.len();
        if n < 2 || rho.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("distance matrix must be square with n ≥ 2".into()));
        }
        Ok(Self { n, rho })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ρ(i, j)` with 1-based indices.
    pub fn rho(&self, i: usize, j: usize) -> &QQ {
        &self.rho[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[QVector] {
        &self.rho
    }

    pub fn uniform(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { QQ::zero() } else { QQ::one() })
    }

    /// `d(i, j) = |[i, j)⁰|`, the number of steps from `i` to `j`.
    pub fn clock(n: usize) -> Self {
        Self::from_fn(n, |i, j| QQ::from_integer(BigInt::from(clock_distance(n, i, j))))
    }

    /// `ρ = d (n² − n + 1)/n − d(d + 1)/2` with `d` the clock distance.
    pub fn cyclohedral(n: usize) -> Self {
        let c = q((n * n - n + 1) as i64, n as i64);
        Self::from_fn(n, |i, j| {
            let d = clock_distance(n, i, j) as i64;
            QQ::from_integer(BigInt::from(d)) * &c - q(d * (d + 1), 2)
        })
    }

    /// `ρ_ε = d − ε d²`; rejected unless the result is a quasi-metric.
    pub fn epsilon(n: usize, eps: &QQ) -> Result<Self> {
        let m = Self::from_fn(n, |i, j| {
            let d = QQ::from_integer(BigInt::from(clock_distance(n, i, j)));
            &d - eps * &d * &d
        });
        let v = m.validate();
        if !v.is_quasi {
            return Err(Error::InvalidInput(format!(
                "ρ_ε with ε = {eps} is not a quasi-metric: {}",
                v.violations.join("; ")
            )));
        }
        Ok(m)
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> QQ) -> Self {
        let rho = (1..=n).map(|i| (1..=n).map(|j| f(i, j)).collect()).collect();
        Self { n, rho }
    }

    pub fn scaled(&self, c: &QQ) -> Self {
        Self::from_fn(self.n, |i, j| self.rho(i, j) * c)
    }

    /// The metric `ρ'(σ(i), σ(j)) = ρ(i, j)` for a permutation `σ` of `[n]`
    /// given as `sigma[i − 1] = σ(i)`.
    pub fn relabel(&self, sigma: &[usize]) -> Self {
        let mut inv = vec![0; self.n];
        for (i, &s) in sigma.iter().enumerate() {
            inv[s - 1] = i + 1;
        }
        Self::from_fn(self.n, |i, j| self.rho(inv[i - 1], inv[j - 1]).clone())
    }

    pub fn validate(&self) -> Validation {
        let n = self.n;
        let mut v = Validation { is_quasi: true, is_strict: true, is_symmetric: true, ..Default::default() };
        for i in 1..=n {
            if !self.rho(i, i).is_zero() {
                v.is_quasi = false;
                v.violations.push(format!("ρ({i},{i}) = {} ≠ 0", self.rho(i, i)));
            }
            for j in 1..=n {
                if i != j && !self.rho(i, j).is_positive() {
                    v.is_quasi = false;
                    v.violations.push(format!("ρ({i},{j}) = {} ≤ 0", self.rho(i, j)));
                }
                if self.rho(i, j) != self.rho(j, i) {
                    v.is_symmetric = false;
                }
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let via = self.rho(i, j) + self.rho(j, k);
                    let direct = self.rho(i, k);
                    if *direct > via {
                        v.is_quasi = false;
                        v.violations.push(format!("ρ({i},{k}) > ρ({i},{j}) + ρ({j},{k})"));
                    }
                    if *direct >= via {
                        v.is_strict = false;
                    }
                }
            }
        }
        v.is_strict &= v.is_quasi;
        v
    }

    pub fn to_json(&self) -> MetricJson {
        MetricJson {
            n: self.n,
            rho: self.rho.iter().map(|r| qq::format_vec(r)).collect(),
        }
    }
}

pub fn clock_distance(n: usize, i: usize, j: usize) -> usize {
    (j + n - i) % n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricJson {
    pub n: usize,
    pub rho: Vec<Vec<String>>,
}

impl MetricJson {
    pub fn to_metric(&self) -> Result<QuasiMetric> {
        if self.rho.len() != self.n {
            return Err(Error::Parse("row count differs from n".into()));
        }
        let rho = self
            .rho
            .iter()
            .map(|r| qq::parse_vec(r))
            .collect::<Result<Vec<_>>>()?;
        QuasiMetric::from_matrix(rho)
    }
}

/// `(eᵢ − eⱼ)/ρ(i,j)`.
pub fn generator(m: &QuasiMetric, i: usize, j: usize) -> QVector {
    let mut v = vec![QQ::zero(); m.n];
    let r = m.rho(i, j);
    v[i - 1] = QQ::one() / r;
    v[j - 1] = -QQ::one() / r;
    v
}

#[derive(Clone, Debug)]
pub struct KRPolytope {
    pub metric: QuasiMetric,
    pub polytope: VPolytope,
    /// `labels[v] = (i, j)` when vertex `v` is the generator of `(i, j)`.
    pub labels: Vec<(usize, usize)>,
    /// Generators that are not vertices of the hull.
    pub non_vertex_generators: Vec<(usize, usize)>,
    /// Generators in the relative interior of the hull.
    pub interior_generators: Vec<(usize, usize)>,
}

impl KRPolytope {
    pub fn vertex_of(&self, i: usize, j: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == (i, j))
    }
}

pub fn kr_polytope(m: &QuasiMetric) -> Result<KRPolytope> {
    let n = m.n;
    let mut pairs = Vec::with_capacity(n * (n - 1));
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                if !m.rho(i, j).is_positive() {
                    return Err(Error::InvalidInput(format!("ρ({i},{j}) must be positive")));
                }
                pairs.push((i, j));
            }
        }
    }
    let gens: Vec<QVector> = pairs.iter().map(|&(i, j)| generator(m, i, j)).collect();
    let polytope = VPolytope::hull(&gens)?;
    let mut labels = vec![(0, 0); polytope.vertices().len()];
    let mut non_vertex = Vec::new();
    let mut interior = Vec::new();
    for (p, g) in pairs.iter().zip(&gens) {
        match polytope.vertex_index(g) {
            Some(v) => labels[v] = *p,
            None => {
                non_vertex.push(*p);
                if polytope.relative_interior_contains(g) {
                    interior.push(*p);
                }
            }
        }
    }
    Ok(KRPolytope {
        metric: m.clone(),
        polytope,
        labels,
        non_vertex_generators: non_vertex,
        interior_generators: interior,
    })
}

#[derive(Clone, Debug)]
pub struct LipschitzPolytope {
    /// `{y ∈ H₀ : yᵢ − yⱼ ≤ ρ(i,j)}`.
    pub h0: HPolytope,
    /// `{f : f(n) = 0, f(i) − f(j) ≤ ρ(i,j)}`.
    pub pinned: HPolytope,
}

impl LipschitzPolytope {
    pub fn vertices_h0(&self) -> Result<VPolytope> {
        self.h0.vertex_enumeration()
    }

    pub fn vertices_pinned(&self) -> Result<VPolytope> {
        self.pinned.vertex_enumeration()
    }
}

/// Representative with `f(n) = 0` of a function modulo constants.
pub fn pin(f: &[QQ]) -> QVector {
    let last = f[f.len() - 1].clone();
    f.iter().map(|x| x - &last).collect()
}

/// Representative with zero sum.
pub fn center(f: &[QQ]) -> QVector {
    let mean = qq::coordinate_sum(f) / QQ::from_integer(BigInt::from(f.len()));
    f.iter().map(|x| x - &mean).collect()
}

pub fn lipschitz_polytope(m: &QuasiMetric) -> LipschitzPolytope {
    let n = m.n;
    let mut rows = Vec::with_capacity(n * (n - 1));
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let mut a = vec![QQ::zero(); n];
                a[i - 1] = QQ::one();
                a[j - 1] = -QQ::one();
                rows.push((a, m.rho(i, j).clone()));
            }
        }
    }
    let h0 = HPolytope::new(n, vec![(vec![QQ::one(); n], QQ::zero())], rows.clone());
    let pinned = HPolytope::new(n, vec![(qq::unit(n, n - 1), QQ::zero())], rows);
    LipschitzPolytope { h0, pinned }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclohedralTypeReport {
    pub n: usize,
    pub pass: bool,
    pub kr_f_vector: Vec<usize>,
    pub arcs_f_vector: Vec<usize>,
    /// Arcs of the first face of the arc complex whose image is not a face.
    pub mismatch: Option<Vec<String>>,
    pub note: Option<String>,
}

/// Compares the face lattice of `KR(m)` with the admissible-arc complex
/// through `[i, j) ↦ (eᵢ − eⱼ)/ρ(i,j)`.
pub fn verify_cyclohedral_type(m: &QuasiMetric) -> Result<CyclohedralTypeReport> {
    let n = m.n;
    let kr = kr_polytope(m)?;
    let complex = arcs::boundary_complex(n)?;
    let arcs_f_vector = complex.f_vector();
    let lattice = FaceLattice::of_polytope(&kr.polytope);
    let kr_f_vector = lattice.f_vector();
    if !kr.non_vertex_generators.is_empty() {
        return Ok(CyclohedralTypeReport {
            n,
            pass: false,
            kr_f_vector,
            arcs_f_vector,
            mismatch: None,
            note: Some(format!("{} generators are not vertices", kr.non_vertex_generators.len())),
        });
    }
    let all = arcs::all_arcs(n);
    let map: Vec<usize> = all
        .iter()
        .map(|a| kr.vertex_of(a.source, a.sink).expect("every generator is a vertex"))
        .collect();
    let mismatch = lattice_iso_mismatch(&complex, &lattice, &map).map(|face| {
        face.iter().map(|&k| all.get(k).map_or("?".into(), Arc::to_string)).collect()
    });
    Ok(CyclohedralTypeReport {
        n,
        pass: mismatch.is_none(),
        kr_f_vector,
        arcs_f_vector,
        mismatch,
        note: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceDigraph {
    pub dim: isize,
    /// Vertex indices of the face in `KR(m)`.
    pub face: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub is_forest: bool,
    pub degree_dichotomy: bool,
}

/// `D(α)` for every nonempty proper face `α`: the pair `(i, j)` is an edge
/// iff the vertex in direction `eⱼ − eᵢ`, i.e. the generator labelled
/// `(j, i)`, lies in `α`. Edges therefore run against the arcs `[j, i)`.
pub fn combinatorial_structure(kr: &KRPolytope) -> Vec<FaceDigraph> {
    let n = kr.metric.n;
    let lattice = FaceLattice::of_polytope(&kr.polytope);
    let top = lattice.dim() as isize;
    lattice
        .faces()
        .iter()
        .filter(|f| f.dim >= 0 && f.dim < top)
        .map(|f| {
            let mut edges: Vec<(usize, usize)> = f
                .vertices
                .iter()
                .map(|&v| {
                    let (a, b) = kr.labels[v];
                    (b, a)
                })
                .collect();
            edges.sort_unstable();
            let mut uf = UnionFind::new(n);
            let is_forest = edges.iter().all(|&(i, j)| uf.union(i - 1, j - 1));
            let degree_dichotomy = (1..=n).all(|v| {
                let out = edges.iter().any(|e| e.0 == v);
                let inn = edges.iter().any(|e| e.1 == v);
                !(out && inn)
            });
            FaceDigraph { dim: f.dim, face: f.vertices.clone(), edges, is_forest, degree_dichotomy }
        })
        .collect()
}

/// Strict triangle inequality and a simplicial `KR(m)`.
pub fn is_generic(m: &QuasiMetric) -> Result<bool> {
    if !m.validate().is_strict {
        return Ok(false);
    }
    let kr = kr_polytope(m)?;
    let d = kr.polytope.dim();
    Ok(kr.polytope.facets().iter().all(|f| f.vertices.len() == d))
}

pub const SAMPLE_DENOMINATOR: i64 = 1000;
pub const SAMPLE_MAX_NUMERATOR: i64 = 50;
pub const SAMPLE_RETRIES: usize = 100;

/// Symmetric `ρ(i,j) = 1 + δᵢⱼ` with `δᵢⱼ` uniform on `{1, …, 50}/1000`,
/// redrawn until generic.
pub fn sample_generic_metric(n: usize, seed: u64) -> Result<QuasiMetric> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_RETRIES {
        let mut rho = vec![vec![QQ::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let k = rng.random_range(1..=SAMPLE_MAX_NUMERATOR);
                let r = QQ::one() + q(k, SAMPLE_DENOMINATOR);
                rho[i][j] = r.clone();
                rho[j][i] = r;
            }
        }
        let m = QuasiMetric::from_matrix(rho)?;
        if is_generic(&m)? {
            return Ok(m);
        }
    }
    Err(Error::Internal(format!("no generic metric after {SAMPLE_RETRIES} draws")))
}

/// `ρ(i,j) = h_F̂([i,j)⁰) / h_F([i,j)⁰)` with `F` the cycle edges and `F̂`
/// its building closure.
pub fn metric_from_heights(n: usize) -> Result<QuasiMetric> {
    crate::check_range("n", n, 3, 63)?;
    let f = nestohedra::cyclic_edges(n);
    let closure = nestohedra::building_closure(&f);
    let fhat = closure.as_hypergraph();
    let mut rho = vec![vec![QQ::zero(); n]; n];
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let x = Subset::cyclic_interval(n, i, clock_distance(n, i, j));
                rho[i - 1][j - 1] =
                    nestohedra::height(&fhat, &closure, x)? / nestohedra::height(&f, &closure, x)?;
            }
        }
    }
    QuasiMetric::from_matrix(rho)
}
