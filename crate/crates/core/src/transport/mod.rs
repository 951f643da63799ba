//! Optimal transport for a quasi-metric cost, the KR gauge and the
//! Lipschitz dual, all computed exactly.

pub mod lp;
pub mod network;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exactgeom::qq::{self, QVector, QQ};
use crate::kr::QuasiMetric;
use crate::{Error, Result};
use lp::{LinearProgram, LpOutcome, Relation, Sense};

/// A measure on `[n]` with rational masses, possibly signed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedMeasure {
    mass: QVector,
}

impl SignedMeasure {
    pub fn new(mass: QVector) -> Self {
        Self { mass }
    }

    pub fn n(&self) -> usize {
        self.mass.len()
    }

    pub fn mass(&self) -> &[QQ] {
        &self.mass
    }

    pub fn total(&self) -> QQ {
        qq::coordinate_sum(&self.mass)
    }

    pub fn is_probability(&self) -> bool {
        self.total().is_one() && self.mass.iter().all(|m| !m.is_negative())
    }

    pub fn minus(&self, other: &Self) -> Self {
        Self::new(qq::sub(&self.mass, &other.mass))
    }

    pub fn to_json(&self) -> MeasureJson {
        MeasureJson { n: self.n(), mass: qq::format_vec(&self.mass) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub n: usize,
    pub mass: Vec<String>,
}

impl MeasureJson {
    pub fn to_measure(&self) -> Result<SignedMeasure> {
        if self.mass.len() != self.n {
            return Err(Error::Parse("mass length differs from n".into()));
        }
        Ok(SignedMeasure::new(qq::parse_vec(&self.mass)?))
    }
}

pub const MEASURE_DENOMINATOR: i64 = 120;

/// A probability vector with masses in `ℤ/120`: `n − 1` cut points drawn
/// uniformly from `{0, …, 120}`, sorted, and differenced.
pub fn random_probability<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SignedMeasure {
    let mut cuts: Vec<i64> = (0..n - 1).map(|_| rng.random_range(0..=MEASURE_DENOMINATOR)).collect();
    cuts.push(0);
    cuts.push(MEASURE_DENOMINATOR);
    cuts.sort_unstable();
    let den = BigInt::from(MEASURE_DENOMINATOR);
    SignedMeasure::new(
        cuts.windows(2)
            .map(|w| QQ::new(BigInt::from(w[1] - w[0]), den.clone()))
            .collect(),
    )
}

/// A pair of distinct random probability vectors.
pub fn random_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (SignedMeasure, SignedMeasure) {
    loop {
        let mu = random_probability(n, rng);
        let nu = random_probability(n, rng);
        if mu != nu {
            return (mu, nu);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportPlan {
    /// `(i, j, mass)` with `i ≠ j`, 1-based, positive mass only.
    pub flows: Vec<(usize, usize, QQ)>,
    pub cost: QQ,
    /// A Lipschitz function attaining the cost against `μ − ν`.
    pub potential: QVector,
}

impl TransportPlan {
    /// Checks marginals, the stated cost, and that `potential` is Lipschitz
    /// with `⟨potential, μ − ν⟩ = cost`.
    pub fn certify(&self, m: &QuasiMetric, mu: &SignedMeasure, nu: &SignedMeasure) -> bool {
        let n = m.n();
        let mut net = vec![QQ::zero(); n];
        let mut cost = QQ::zero();
        for (i, j, x) in &self.flows {
            if !x.is_positive() || i == j {
                return false;
            }
            net[i - 1] += x;
            net[j - 1] -= x;
            cost += x * m.rho(*i, *j);
        }
        let z = mu.minus(nu);
        if net != z.mass || cost != self.cost {
            return false;
        }
        let f = &self.potential;
        let lipschitz = (1..=n).all(|i| (1..=n).all(|j| &f[i - 1] - &f[j - 1] <= *m.rho(i, j)));
        lipschitz && qq::dot(f, z.mass()) == self.cost
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanJson {
    /// `(i, j, mass)`, 1-based.
    pub flows: Vec<(usize, usize, String)>,
    pub cost: String,
    pub potential: Vec<String>,
}

impl TransportPlan {
    pub fn to_json(&self) -> PlanJson {
        PlanJson {
            flows: self.flows.iter().map(|(i, j, x)| (*i, *j, qq::format_qq(x))).collect(),
            cost: qq::format_qq(&self.cost),
            potential: qq::format_vec(&self.potential),
        }
    }
}

fn check_pair(m: &QuasiMetric, mu: &SignedMeasure, nu: &SignedMeasure) -> Result<()> {
    if mu.n() != m.n() || nu.n() != m.n() {
        return Err(Error::InvalidInput("measure length differs from n".into()));
    }
    if mu.total() != nu.total() {
        return Err(Error::InvalidInput("measures have different total mass".into()));
    }
    Ok(())
}

/// Minimal cost of moving `μ` onto `ν` with cost `ρ(i, j)` per unit from `i`
/// to `j`. Only the excess `(μ − ν)⁺` moves, which is optimal when `ρ`
/// satisfies the triangle inequality.
pub fn transport_cost(m: &QuasiMetric, mu: &SignedMeasure, nu: &SignedMeasure) -> Result<TransportPlan> {
    check_pair(m, mu, nu)?;
    let n = m.n();
    let z = mu.minus(nu);
    let sources: Vec<usize> = (1..=n).filter(|&i| z.mass[i - 1].is_positive()).collect();
    let sinks: Vec<usize> = (1..=n).filter(|&j| z.mass[j - 1].is_negative()).collect();
    if sources.is_empty() {
        return Ok(TransportPlan { flows: Vec::new(), cost: QQ::zero(), potential: vec![QQ::zero(); n] });
    }
    let supply: Vec<QQ> = sources.iter().map(|&i| z.mass[i - 1].clone()).collect();
    let demand: Vec<QQ> = sinks.iter().map(|&j| -z.mass[j - 1].clone()).collect();
    let cost: Vec<Vec<QQ>> = sources
        .iter()
        .map(|&i| sinks.iter().map(|&j| m.rho(i, j).clone()).collect())
        .collect();
    let sol = network::solve_transportation(&supply, &demand, &cost);
    let mut flows = Vec::new();
    for (a, &i) in sources.iter().enumerate() {
        for (b, &j) in sinks.iter().enumerate() {
            if sol.flow[a][b].is_positive() {
                flows.push((i, j, sol.flow[a][b].clone()));
            }
        }
    }
    let potential = (1..=n)
        .map(|i| {
            sinks
                .iter()
                .zip(&sol.v)
                .map(|(&j, v)| m.rho(i, j) - v)
                .min()
                .expect("sinks nonempty")
        })
        .collect();
    Ok(TransportPlan { flows, cost: sol.cost, potential })
}

/// `‖z‖_KR = min Σ λᵢⱼ ρ(i,j)` over `λ ≥ 0` with `Σ λᵢⱼ (eᵢ − eⱼ) = z`.
pub fn kr_gauge(m: &QuasiMetric, z: &[QQ]) -> Result<QQ> {
    let n = m.n();
    if z.len() != n || !qq::coordinate_sum(z).is_zero() {
        return Err(Error::InvalidInput("gauge needs a vector of H₀".into()));
    }
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut lp = LinearProgram::new(pairs.len(), Sense::Minimize);
    lp.set_objective(pairs.iter().map(|&(i, j)| m.rho(i, j).clone()).collect());
    for k in 1..=n {
        let row = pairs
            .iter()
            .map(|&(i, j)| {
                if i == k {
                    QQ::one()
                } else if j == k {
                    -QQ::one()
                } else {
                    QQ::zero()
                }
            })
            .collect();
        lp.add_constraint(row, Relation::Eq, z[k - 1].clone());
    }
    optimal_value(lp.solve())
}

/// `sup ⟨f, z⟩` over `f` with `f(i) − f(j) ≤ ρ(i,j)`.
pub fn lipschitz_sup(m: &QuasiMetric, z: &[QQ]) -> Result<QQ> {
    let n = m.n();
    if z.len() != n || !qq::coordinate_sum(z).is_zero() {
        return Err(Error::InvalidInput("Lipschitz pairing needs a vector of H₀".into()));
    }
    let mut lp = LinearProgram::new(n, Sense::Maximize);
    lp.set_objective(z.to_vec());
    for i in 0..n {
        lp.set_free(i);
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let mut row = vec![QQ::zero(); n];
                row[i - 1] = QQ::one();
                row[j - 1] = -QQ::one();
                lp.add_constraint(row, Relation::Le, m.rho(i, j).clone());
            }
        }
    }
    optimal_value(lp.solve())
}

fn optimal_value(out: LpOutcome) -> Result<QQ> {
    match out {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(Error::Infeasible),
        LpOutcome::Unbounded => Err(Error::Unbounded),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub transport: String,
    pub gauge: String,
    pub lipschitz_sup: String,
    pub certified: bool,
    pub agree: bool,
}

pub fn duality_check(m: &QuasiMetric, mu: &SignedMeasure, nu: &SignedMeasure) -> Result<DualityReport> {
    let plan = transport_cost(m, mu, nu)?;
    let z = mu.minus(nu);
    let gauge = kr_gauge(m, z.mass())?;
    let sup = lipschitz_sup(m, z.mass())?;
    let certified = plan.certify(m, mu, nu);
    Ok(DualityReport {
        agree: plan.cost == gauge && gauge == sup,
        transport: qq::format_qq(&plan.cost),
        gauge: qq::format_qq(&gauge),
        lipschitz_sup: qq::format_qq(&sup),
        certified,
    })
}
