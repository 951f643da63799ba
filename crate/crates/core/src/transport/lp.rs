//! Exact two-phase simplex over ℚ with Bland's anti-cycling rule.
//!
//! This is the one LP engine in the crate: hull membership, irredundancy
//! tests, interior-disjointness of simplices, the KR gauge and the Lipschitz
//! dual are all solved here. Problems are small (tens of variables), so the
//! tableau is dense.

use num_traits::{One, Signed, Zero};

use crate::exactgeom::qq::{QVector, QQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: QVector, value: QQ },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&QQ> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    free: Vec<bool>,
    sense: Sense,
    objective: QVector,
    constraints: Vec<(QVector, Relation, QQ)>,
}

impl LinearProgram {
    /// A program over `num_vars` variables, all nonnegative unless marked free.
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        Self {
            num_vars,
            free: vec![false; num_vars],
            sense,
            objective: vec![QQ::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn set_objective(&mut self, coeffs: QVector) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.objective = coeffs;
        self
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn add_constraint(&mut self, coeffs: QVector, rel: Relation, rhs: QQ) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push((coeffs, rel, rhs));
        self
    }

    pub fn solve(&self) -> LpOutcome {
        // Column layout: structural columns (free variables split in two),
        // then one slack per inequality, then one artificial per row.
        let mut col_of = Vec::with_capacity(self.num_vars);
        let mut structural = 0;
        for &f in &self.free {
            col_of.push(structural);
            structural += if f { 2 } else { 1 };
        }
        let slacks = self
            .constraints
            .iter()
            .filter(|(_, r, _)| *r != Relation::Eq)
            .count();
        let m = self.constraints.len();
        let first_art = structural + slacks;
        let ncols = first_art + m;

        let mut rows: Vec<QVector> = Vec::with_capacity(m);
        let mut rhs: QVector = Vec::with_capacity(m);
        let mut slack = structural;
        for (i, (coeffs, rel, b)) in self.constraints.iter().enumerate() {
            let mut row = vec![QQ::zero(); ncols];
            for (j, c) in coeffs.iter().enumerate() {
                row[col_of[j]] = c.clone();
                if self.free[j] {
                    row[col_of[j] + 1] = -c.clone();
                }
            }
            match rel {
                Relation::Le => {
                    row[slack] = QQ::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -QQ::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut b = b.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                b = -b;
            }
            row[first_art + i] = QQ::one();
            rows.push(row);
            rhs.push(b);
        }

        let mut t = Tableau {
            rows,
            rhs,
            basis: (first_art..ncols).collect(),
            reduced: vec![QQ::zero(); ncols],
            neg_value: QQ::zero(),
            allowed: ncols,
        };

        // Phase 1: minimize the sum of artificials.
        let mut phase1 = vec![QQ::zero(); ncols];
        for c in phase1.iter_mut().skip(first_art) {
            *c = QQ::one();
        }
        t.price(&phase1);
        if t.run() == Step::Unbounded {
            unreachable!("phase one is bounded below by zero");
        }
        if !t.neg_value.is_zero() {
            return LpOutcome::Infeasible;
        }
        t.drive_out_artificials(first_art);
        t.allowed = first_art;

        // Phase 2.
        let mut cost = vec![QQ::zero(); ncols];
        let sign = match self.sense {
            Sense::Minimize => QQ::one(),
            Sense::Maximize => -QQ::one(),
        };
        for (j, c) in self.objective.iter().enumerate() {
            cost[col_of[j]] = c * &sign;
            if self.free[j] {
                cost[col_of[j] + 1] = -(c * &sign);
            }
        }
        t.price(&cost);
        if t.run() == Step::Unbounded {
            return LpOutcome::Unbounded;
        }

        let mut values = vec![QQ::zero(); ncols];
        for (i, &b) in t.basis.iter().enumerate() {
            values[b] = t.rhs[i].clone();
        }
        let x: QVector = (0..self.num_vars)
            .map(|j| {
                let c = col_of[j];
                if self.free[j] {
                    &values[c] - &values[c + 1]
                } else {
                    values[c].clone()
                }
            })
            .collect();
        let value = crate::exactgeom::qq::dot(&self.objective, &x);
        LpOutcome::Optimal { x, value }
    }
}

#[derive(PartialEq, Eq)]
enum Step {
    Optimal,
    Unbounded,
}

struct Tableau {
    rows: Vec<QVector>,
    rhs: QVector,
    basis: Vec<usize>,
    reduced: QVector,
    neg_value: QQ,
    /// Columns `>= allowed` may not enter the basis.
    allowed: usize,
}

impl Tableau {
    fn price(&mut self, cost: &[QQ]) {
        self.reduced = cost.to_vec();
        self.neg_value = QQ::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (d, a) in self.reduced.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *d -= cb * a;
                }
            }
            self.neg_value -= cb * &self.rhs[i];
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = QQ::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for (x, p) in self.reduced.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.neg_value -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    fn run(&mut self) -> Step {
        loop {
            let Some(c) = (0..self.allowed).find(|&j| self.reduced[j].is_negative()) else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, QQ)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Step::Unbounded;
            };
            self.pivot(r, c);
        }
    }

    /// After a feasible phase one, replaces zero-valued artificial basics by
    /// structural columns, dropping rows that are linearly redundant.
    fn drive_out_artificials(&mut self, first_art: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < first_art {
                i += 1;
                continue;
            }
            match (0..first_art).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::qq::{frac, qq};

    #[test]
    fn small_max_problem() {
        // max x + y s.t. x + 2y ≤ 4, 3x + y ≤ 6 → (8/5, 6/5), value 14/5
        let mut lp = LinearProgram::new(2, Sense::Maximize);
        lp.set_objective(vec![qq(1), qq(1)]);
        lp.add_constraint(vec![qq(1), qq(2)], Relation::Le, qq(4));
        lp.add_constraint(vec![qq(3), qq(1)], Relation::Le, qq(6));
        let out = lp.solve();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                x: vec![frac(8, 5), frac(6, 5)],
                value: frac(14, 5)
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1, Sense::Minimize);
        lp.add_constraint(vec![qq(1)], Relation::Le, qq(-1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1, Sense::Maximize);
        lp.set_objective(vec![qq(1)]);
        lp.add_constraint(vec![qq(1)], Relation::Ge, qq(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_redundant_equalities() {
        // min x s.t. x − y = −3, 2x − 2y = −6, y ≤ 1, x free
        let mut lp = LinearProgram::new(2, Sense::Minimize);
        lp.set_objective(vec![qq(1), qq(0)]).set_free(0);
        lp.add_constraint(vec![qq(1), qq(-1)], Relation::Eq, qq(-3));
        lp.add_constraint(vec![qq(2), qq(-2)], Relation::Eq, qq(-6));
        lp.add_constraint(vec![qq(0), qq(1)], Relation::Le, qq(1));
        assert_eq!(lp.solve().value(), Some(&qq(-3)));
    }
}
