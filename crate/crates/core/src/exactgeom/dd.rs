//! Double description method for pointed polyhedral cones.
//!
//! Given integer rows `a_1, …, a_m` spanning ℚᴰ, computes the extreme rays of
//! `{y : a_i · y ≥ 0 for all i}`. Rows are inserted one at a time; adjacency of
//! a positive/negative ray pair uses the combinatorial test (no third ray's
//! zero set contains their common zero set). All arithmetic is over ℤ and
//! every ray is kept primitive.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg;
use super::qq::{self, QQ};
use crate::Error;

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Extreme rays of the cone `{y : rows · y ≥ 0}` in ℚ^`dim`. Fails with
/// [`Error::NotPointed`] when the rows do not span ℚ^`dim`.
pub fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>, Error> {
    let m = rows.len();
    let rational: Vec<Vec<QQ>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(QQ::from_integer).collect())
        .collect();

    // Greedy choice of `dim` independent rows for the initial simplicial cone.
    let mut basis_rows: Vec<usize> = Vec::with_capacity(dim);
    let mut chosen: Vec<Vec<QQ>> = Vec::with_capacity(dim);
    for (i, r) in rational.iter().enumerate() {
        if basis_rows.len() == dim {
            break;
        }
        chosen.push(r.clone());
        if linalg::rank(&chosen) == chosen.len() {
            basis_rows.push(i);
        } else {
            chosen.pop();
        }
    }
    if basis_rows.len() < dim {
        return Err(Error::NotPointed);
    }

    let inv = linalg::inverse(&chosen).expect("independent rows");
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col: Vec<QQ> = inv.iter().map(|row| row[j].clone()).collect();
            let (coords, _) = qq::primitive_integer(&col);
            let mut zeros = FixedBitSet::with_capacity(m);
            for (k, &r) in basis_rows.iter().enumerate() {
                if k != j {
                    zeros.insert(r);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    let mut processed = FixedBitSet::with_capacity(m);
    for &r in &basis_rows {
        processed.insert(r);
    }

    for (i, row) in rows.iter().enumerate() {
        if processed.contains(i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();

        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let vp = &values[p];
                let vq = -&values[q];
                let mut coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(yq, yp)| vp * yq + &vq * yp)
                    .collect();
                qq::primitive_bigint(&mut coords);
                common.insert(i);
                created.push(Ray { coords, zeros: common });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
        processed.insert(i);
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
