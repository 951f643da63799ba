//! Exact transportation simplex on the bipartite supply/demand problem.
//!
//! The starting basis comes from the northwest-corner rule (degenerate zero
//! cells kept so the basis is always a spanning tree). Entering and leaving
//! cells are chosen by smallest index, which rules out cycling.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::exactgeom::qq::QQ;

#[derive(Clone, Debug)]
pub struct TransportSolution {
    /// `flow[i][j]` for supply row `i` and demand column `j`.
    pub flow: Vec<Vec<QQ>>,
    pub cost: QQ,
    /// Row potentials `u` and column potentials `v` with `uᵢ + vⱼ ≤ cᵢⱼ`,
    /// equality on basic cells.
    pub u: Vec<QQ>,
    pub v: Vec<QQ>,
}

/// Minimizes `Σ cᵢⱼ xᵢⱼ` subject to row sums `supply`, column sums `demand`
/// and `x ≥ 0`. Totals must agree and all entries be positive.
pub fn solve_transportation(supply: &[QQ], demand: &[QQ], cost: &[Vec<QQ>]) -> TransportSolution {
    let m = supply.len();
    let k = demand.len();
    assert!(m > 0 && k > 0);
    let mut x = vec![vec![QQ::zero(); k]; m];
    let mut basic = vec![vec![false; k]; m];

    let mut s = supply.to_vec();
    let mut d = demand.to_vec();
    let (mut i, mut j) = (0, 0);
    loop {
        let t = s[i].clone().min(d[j].clone());
        x[i][j] = t.clone();
        basic[i][j] = true;
        s[i] -= &t;
        d[j] -= &t;
        if i == m - 1 && j == k - 1 {
            break;
        }
        if (s[i].is_zero() && i < m - 1) || j == k - 1 {
            i += 1;
        } else {
            j += 1;
        }
    }

    loop {
        let (u, v) = potentials(&basic, cost);
        let entering = (0..m)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .find(|&(i, j)| !basic[i][j] && (&cost[i][j] - &u[i] - &v[j]).is_negative());
        let Some((ei, ej)) = entering else {
            let total = (0..m)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .fold(QQ::zero(), |acc, (i, j)| acc + &x[i][j] * &cost[i][j]);
            return TransportSolution { flow: x, cost: total, u, v };
        };
        // Path in the basis tree from column ej back to row ei.
        let path = tree_path(&basic, m, k, ej, ei);
        let minus: Vec<(usize, usize)> = path.iter().copied().step_by(2).collect();
        let plus: Vec<(usize, usize)> = path.iter().copied().skip(1).step_by(2).collect();
        let theta = minus.iter().map(|&(a, b)| x[a][b].clone()).min().expect("nonempty cycle");
        let leaving = *minus
            .iter()
            .filter(|&&(a, b)| x[a][b] == theta)
            .min()
            .expect("minimum attained");
        for &(a, b) in &minus {
            x[a][b] -= &theta;
        }
        for &(a, b) in &plus {
            x[a][b] += &theta;
        }
        x[ei][ej] += &theta;
        basic[ei][ej] = true;
        basic[leaving.0][leaving.1] = false;
    }
}

fn potentials(basic: &[Vec<bool>], cost: &[Vec<QQ>]) -> (Vec<QQ>, Vec<QQ>) {
    let m = basic.len();
    let k = basic[0].len();
    let mut u: Vec<Option<QQ>> = vec![None; m];
    let mut v: Vec<Option<QQ>> = vec![None; k];
    u[0] = Some(QQ::zero());
    let mut queue = VecDeque::from([(true, 0usize)]);
    while let Some((is_row, a)) = queue.pop_front() {
        if is_row {
            let ua = u[a].clone().expect("set");
            for j in 0..k {
                if basic[a][j] && v[j].is_none() {
                    v[j] = Some(&cost[a][j] - &ua);
                    queue.push_back((false, j));
                }
            }
        } else {
            let vb = v[a].clone().expect("set");
            for i in 0..m {
                if basic[i][a] && u[i].is_none() {
                    u[i] = Some(&cost[i][a] - &vb);
                    queue.push_back((true, i));
                }
            }
        }
    }
    (
        u.into_iter().map(|x| x.expect("basis spans")).collect(),
        v.into_iter().map(|x| x.expect("basis spans")).collect(),
    )
}

/// Basic cells on the tree path from column node `col` to row node `row`.
fn tree_path(basic: &[Vec<bool>], m: usize, k: usize, col: usize, row: usize) -> Vec<(usize, usize)> {
    // Nodes: rows 0..m, columns m..m+k.
    let start = m + col;
    let goal = row;
    let mut parent: Vec<Option<usize>> = vec![None; m + k];
    let mut seen = vec![false; m + k];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(node) = queue.pop_front() {
        if node == goal {
            break;
        }
        let neighbours: Vec<usize> = if node < m {
            (0..k).filter(|&j| basic[node][j]).map(|j| m + j).collect()
        } else {
            (0..m).filter(|&i| basic[i][node - m]).collect()
        };
        for nb in neighbours {
            if !seen[nb] {
                seen[nb] = true;
                parent[nb] = Some(node);
                queue.push_back(nb);
            }
        }
    }
    let mut cells = Vec::new();
    let mut node = goal;
    while let Some(p) = parent[node] {
        let cell = if node < m { (node, p - m) } else { (p, node - m) };
        cells.push(cell);
        node = p;
    }
    cells.reverse();
    cells
}
