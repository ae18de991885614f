//! Dense two-phase simplex over exact rationals, with Bland's rule.
//!
//! Only used for the tiny programs arising in supporting-hyperplane search
//! and hull-membership tests, so no attempt is made at sparsity.

use num_traits::{One, Signed, Zero};

use crate::extreal::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

/// Maximize `objective · x` subject to `constraints` and `x ≥ 0`.
pub(crate) fn maximize(objective: &[Rational], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();

    // Normalize to nonnegative right-hand sides.
    let rows: Vec<Constraint> = constraints
        .iter()
        .map(|c| {
            debug_assert_eq!(c.coeffs.len(), n);
            if c.rhs.is_negative() {
                Constraint {
                    coeffs: c.coeffs.iter().map(|a| -a).collect(),
                    relation: match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    },
                    rhs: -&c.rhs,
                }
            } else {
                c.clone()
            }
        })
        .collect();

    // Column layout: originals | slack/surplus (one per inequality) | artificials.
    let n_slack = rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.relation != Relation::Le).count();
    let width = n + n_slack + n_art;
    let mut tab = vec![vec![Rational::zero(); width + 1]; m];
    let mut basis = vec![0usize; m];
    let mut slack_col = n;
    let mut art_col = n + n_slack;
    for (i, r) in rows.iter().enumerate() {
        tab[i][..n].clone_from_slice(&r.coeffs);
        tab[i][width] = r.rhs.clone();
        match r.relation {
            Relation::Le => {
                tab[i][slack_col] = Rational::one();
                basis[i] = slack_col;
                slack_col += 1;
            }
            Relation::Ge => {
                tab[i][slack_col] = -Rational::one();
                slack_col += 1;
                tab[i][art_col] = Rational::one();
                basis[i] = art_col;
                art_col += 1;
            }
            Relation::Eq => {
                tab[i][art_col] = Rational::one();
                basis[i] = art_col;
                art_col += 1;
            }
        }
    }
    let first_art = n + n_slack;

    let mut tableau = Tableau { tab, basis, width };

    if n_art > 0 {
        // Phase I: maximize −Σ artificials.
        let mut cost = vec![Rational::zero(); width];
        for c in cost.iter_mut().skip(first_art) {
            *c = -Rational::one();
        }
        let allowed: Vec<bool> = vec![true; width];
        if tableau.optimize(&cost, &allowed).is_none() {
            unreachable!("phase I objective is bounded above by zero");
        }
        if tableau.objective_value(&cost).is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining artificials out of the basis.
        let mut i = 0;
        while i < tableau.tab.len() {
            if tableau.basis[i] >= first_art {
                match (0..first_art).find(|&j| !tableau.tab[i][j].is_zero()) {
                    Some(j) => {
                        tableau.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        // Redundant row.
                        tableau.tab.remove(i);
                        tableau.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![Rational::zero(); width];
    cost[..n].clone_from_slice(objective);
    let allowed: Vec<bool> = (0..width).map(|j| j < first_art).collect();
    if tableau.optimize(&cost, &allowed).is_none() {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in tableau.basis.iter().enumerate() {
        if b < n {
            x[b] = tableau.tab[i][width].clone();
        }
    }
    let value = objective
        .iter()
        .zip(&x)
        .fold(Rational::zero(), |acc, (c, v)| acc + c * v);
    LpOutcome::Optimal { x, value }
}

struct Tableau {
    tab: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.tab[row][col].clone();
        for v in self.tab[row].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.tab[row].clone();
        for (i, r) in self.tab.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &factor * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, &b)| acc + &cost[b] * &self.tab[i][self.width])
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut r = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.tab[i][j].is_zero() {
                r -= &cost[b] * &self.tab[i][j];
            }
        }
        r
    }

    /// Runs the simplex loop. `None` means unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> Option<()> {
        loop {
            // Bland: smallest index with positive reduced cost enters.
            let entering = (0..self.width)
                .filter(|&j| allowed[j] && !self.basis.contains(&j))
                .find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(col) = entering else {
                return Some(());
            };
            // Ratio test; ties broken by smallest basis index.
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.tab.len() {
                let a = &self.tab[i][col];
                if a.is_positive() {
                    let ratio = &self.tab[i][self.width] / a;
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
            }
            let (row, _) = best?;
            self.pivot(row, col);
        }
    }
}
