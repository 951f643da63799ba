#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use krcyclo_core::exactgeom::linalg;
use krcyclo_core::exactgeom::qq::{self, QVector, QQ};
use krcyclo_core::nestohedra::{Hypergraph, Subset};
use krcyclo_core::transport::lp::{LinearProgram, LpOutcome, Relation, Sense};
use num_traits::{One, Signed, Zero};

pub fn q(n: i64, d: i64) -> QQ {
    QQ::new(n.into(), d.into())
}

pub fn qv(xs: &[i64]) -> QVector {
    xs.iter().map(|&x| q(x, 1)).collect()
}

/// Whether `x` is a convex combination of `others`, by LP.
pub fn in_hull(x: &[QQ], others: &[QVector]) -> bool {
    if others.is_empty() {
        return false;
    }
    let mut lp = LinearProgram::new(others.len(), Sense::Minimize);
    lp.add_constraint(vec![QQ::one(); others.len()], Relation::Eq, QQ::one());
    for c in 0..x.len() {
        lp.add_constraint(others.iter().map(|p| p[c].clone()).collect(), Relation::Eq, x[c].clone());
    }
    matches!(lp.solve(), LpOutcome::Optimal { .. })
}

/// Points not in the hull of the remaining points.
pub fn oracle_vertices(points: &[QVector]) -> BTreeSet<QVector> {
    let distinct: Vec<QVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    distinct
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<QVector> =
                distinct.iter().enumerate().filter(|(j, _)| j != i).map(|(_, q)| q.clone()).collect();
            !in_hull(p, &others)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

/// Facets of a full-dimensional point set in ℚᵈ by brute force over
/// `d`-subsets: every affinely independent subset spans a hyperplane, kept
/// when all points lie weakly on one side. Facets are returned as sets of
/// vertices lying on them.
pub fn oracle_facets(points: &[QVector]) -> BTreeSet<BTreeSet<QVector>> {
    let d = points[0].len();
    let verts: Vec<QVector> = oracle_vertices(points).into_iter().collect();
    let mut out = BTreeSet::new();
    for subset in (0..verts.len()).combinations(d) {
        // Homogeneous system: (a, −b) with a·p − b = 0 on the subset.
        let rows: Vec<QVector> = subset
            .iter()
            .map(|&i| {
                let mut r = verts[i].clone();
                r.push(-QQ::one());
                r
            })
            .collect();
        let (ns, _) = linalg::nullspace(&rows, d + 1);
        if ns.len() != 1 {
            continue;
        }
        let h = &ns[0];
        let a = &h[..d];
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        let b = &h[d];
        let vals: Vec<QQ> = verts.iter().map(|p| qq::dot(a, p) - b).collect();
        let le = vals.iter().all(|v| !v.is_positive());
        let ge = vals.iter().all(|v| !v.is_negative());
        if le || ge {
            let on: BTreeSet<QVector> =
                verts.iter().zip(&vals).filter(|(_, v)| v.is_zero()).map(|(p, _)| p.clone()).collect();
            out.insert(on);
        }
    }
    out
}

/// Vertices of the zonotope `base + Σ [0, gᵢ]` from sign vectors: the sum
/// over `S` is a vertex iff some `u` has `u·gᵢ ≥ 1` on `S` and `≤ −1` off it.
pub fn oracle_zonotope_vertices(base: &[QQ], gens: &[QVector]) -> BTreeSet<QVector> {
    let d = base.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << gens.len() {
        let mut lp = LinearProgram::new(d, Sense::Minimize);
        for j in 0..d {
            lp.set_free(j);
        }
        for (i, g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                lp.add_constraint(g.clone(), Relation::Ge, QQ::one());
            } else {
                lp.add_constraint(g.clone(), Relation::Le, -QQ::one());
            }
        }
        if matches!(lp.solve(), LpOutcome::Optimal { .. }) {
            let mut x = base.to_vec();
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x = qq::add(&x, g);
                }
            }
            out.insert(x);
        }
    }
    out
}

/// Building closure by naive fixpoint: keep adding unions of intersecting
/// pairs (and singletons) until nothing changes.
pub fn oracle_closure(f: &Hypergraph) -> BTreeSet<Subset> {
    let mut sets: BTreeSet<Subset> = f.edges().clone();
    for i in 1..=f.n() {
        sets.insert(Subset::singleton(i));
    }
    loop {
        let v: Vec<Subset> = sets.iter().copied().collect();
        let mut grew = false;
        for (a, b) in v.iter().tuple_combinations() {
            if a.intersects(b) && sets.insert(a.union(b)) {
                grew = true;
            }
        }
        if !grew {
            return sets;
        }
    }
}

/// Minimal transport cost by enumerating all plans with masses in `ℤ/q`,
/// given supplies and demands as integer multiples of `1/q`.
pub fn oracle_transport(supply: &[i64], demand: &[i64], cost: &[Vec<QQ>], q: i64) -> QQ {
    fn rec(
        cell: usize,
        k: usize,
        rows: &mut Vec<i64>,
        cols: &mut Vec<i64>,
        cost: &[Vec<QQ>],
        acc: QQ,
        best: &mut Option<QQ>,
    ) {
        let m = rows.len();
        if cell == m * k {
            if rows.iter().all(|&r| r == 0) && cols.iter().all(|&c| c == 0) {
                if best.as_ref().is_none_or(|b| acc < *b) {
                    *best = Some(acc);
                }
            }
            return;
        }
        let (i, j) = (cell / k, cell % k);
        let cap = rows[i].min(cols[j]);
        let lo = if j == k - 1 { rows[i] } else { 0 };
        if lo > cap {
            return;
        }
        for x in lo..=cap {
            rows[i] -= x;
            cols[j] -= x;
            let add = &cost[i][j] * QQ::from_integer(x.into());
            rec(cell + 1, k, rows, cols, cost, &acc + add, best);
            rows[i] += x;
            cols[j] += x;
        }
    }
    let mut best = None;
    rec(0, demand.len(), &mut supply.to_vec(), &mut demand.to_vec(), cost, QQ::zero(), &mut best);
    best.expect("balanced problem") / QQ::from_integer(q.into())
}
