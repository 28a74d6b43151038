//! Exact rational linear programming.
//!
//! A dense two-phase simplex over [`Rational`] with Bland's pivot rule.
//! No tolerances: feasibility and optimality are decided exactly, and
//! every returned solution satisfies its constraints on substitution.

mod games;

pub use games::{best_response_feasible, best_response_feasible_against, max_min_advantage, Advantage};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{one, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparator {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub cmp: Comparator,
    pub rhs: Rational,
}

/// `maximize objective · x` subject to the constraints, with `x_j ≥ 0`
/// wherever `nonneg[j]` holds and `x_j` free otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub nonneg: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, solution: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    /// A program over `vars` nonnegative variables with a zero objective.
    pub fn new(vars: usize) -> Self {
        LinearProgram { objective: vec![Rational::zero(); vars], constraints: Vec::new(), nonneg: vec![true; vars] }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, cmp: Comparator, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, cmp, rhs });
    }

    fn check(&self) -> Result<()> {
        let n = self.num_vars();
        if self.nonneg.len() != n {
            return Err(Error::structural(format!("{} sign flags for {n} variables", self.nonneg.len())));
        }
        if let Some((k, c)) = self.constraints.iter().enumerate().find(|(_, c)| c.coeffs.len() != n) {
            return Err(Error::structural(format!("constraint {k} has {} coefficients, expected {n}", c.coeffs.len())));
        }
        Ok(())
    }

    /// Exact feasibility of `x` (dimensions, signs, every constraint).
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().zip(&self.nonneg).all(|(v, &nn)| !nn || !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
                match c.cmp {
                    Comparator::Le => lhs <= c.rhs,
                    Comparator::Eq => lhs == c.rhs,
                    Comparator::Ge => lhs >= c.rhs,
                }
            })
    }

    pub fn value_at(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// The dual program, also stated as a maximization: its optimum is the
    /// negated optimum of the primal.
    ///
    /// One dual variable per constraint: `y ≥ 0` for `≤` rows, `y ≤ 0`
    /// (encoded as `-y ≥ 0`) for `≥` rows, free for `=` rows.
    pub fn dual(&self) -> LinearProgram {
        let m = self.constraints.len();
        // sign[r] maps the stored dual variable to the true multiplier.
        let sign: Vec<Rational> =
            self.constraints.iter().map(|c| if c.cmp == Comparator::Ge { -one() } else { one() }).collect();
        let mut dual = LinearProgram {
            objective: self.constraints.iter().zip(&sign).map(|(c, s)| -(&c.rhs * s)).collect(),
            constraints: Vec::new(),
            nonneg: self.constraints.iter().map(|c| c.cmp != Comparator::Eq).collect(),
        };
        for j in 0..self.num_vars() {
            let coeffs = (0..m).map(|r| &self.constraints[r].coeffs[j] * &sign[r]).collect();
            let cmp = if self.nonneg[j] { Comparator::Ge } else { Comparator::Eq };
            dual.add(coeffs, cmp, self.objective[j].clone());
        }
        dual
    }
}

/// Solves `lp` exactly.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.check()?;
    Ok(Tableau::build(lp).run(lp))
}

struct Tableau {
    /// `rows[r]` has one entry per column plus the right-hand side last.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Column of each original variable's positive part, and of its
    /// negative part when the variable is free.
    columns: Vec<(usize, Option<usize>)>,
    artificial_from: usize,
    width: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let mut columns = Vec::with_capacity(lp.num_vars());
        let mut next = 0;
        for &nn in &lp.nonneg {
            if nn {
                columns.push((next, None));
                next += 1;
            } else {
                columns.push((next, Some(next + 1)));
                next += 2;
            }
        }
        let structural = next;
        let slacks = lp.constraints.iter().filter(|c| c.cmp != Comparator::Eq).count();
        let artificial_from = structural + slacks;
        let artificials = lp.constraints.iter().filter(|c| needs_artificial(c)).count();
        let width = artificial_from + artificials;

        let mut rows = Vec::with_capacity(lp.constraints.len());
        let mut basis = Vec::with_capacity(lp.constraints.len());
        let (mut slack, mut art) = (structural, artificial_from);
        for c in &lp.constraints {
            let flip = c.rhs.is_negative();
            let mut row = vec![Rational::zero(); width + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                let a = if flip { -a } else { a.clone() };
                let (pos, neg) = columns[j];
                if let Some(neg) = neg {
                    row[neg] = -a.clone();
                }
                row[pos] = a;
            }
            row[width] = if flip { -&c.rhs } else { c.rhs.clone() };
            let cmp = match (c.cmp, flip) {
                (Comparator::Le, true) => Comparator::Ge,
                (Comparator::Ge, true) => Comparator::Le,
                (cmp, _) => cmp,
            };
            match cmp {
                Comparator::Le => {
                    row[slack] = one();
                    basis.push(slack);
                    slack += 1;
                }
                Comparator::Ge => {
                    row[slack] = -one();
                    slack += 1;
                    row[art] = one();
                    basis.push(art);
                    art += 1;
                }
                Comparator::Eq => {
                    row[art] = one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Tableau { rows, basis, columns, artificial_from, width }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        if self.width > self.artificial_from {
            let mut cost = vec![Rational::zero(); self.width];
            for c in &mut cost[self.artificial_from..] {
                *c = -one();
            }
            let phase_one = self.optimize(&cost, self.width);
            debug_assert!(phase_one.is_some(), "phase one is bounded");
            if phase_one.is_some_and(|v| v.is_negative()) {
                return LpOutcome::Infeasible;
            }
            self.expel_artificials();
        }

        let mut cost = vec![Rational::zero(); self.width];
        for (c, &(pos, neg)) in lp.objective.iter().zip(&self.columns) {
            cost[pos] = c.clone();
            if let Some(neg) = neg {
                cost[neg] = -c;
            }
        }
        let Some(value) = self.optimize(&cost, self.artificial_from) else {
            return LpOutcome::Unbounded;
        };

        let mut column_values = vec![Rational::zero(); self.width];
        for (r, &b) in self.basis.iter().enumerate() {
            column_values[b] = self.rows[r][self.width].clone();
        }
        let solution = self
            .columns
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &column_values[pos] - &column_values[neg],
                None => column_values[pos].clone(),
            })
            .collect();
        LpOutcome::Optimal { value, solution }
    }

    /// Primal simplex maximizing `cost · columns` from the current basic
    /// feasible solution, entering only columns below `enter_limit`.
    /// Returns the optimum, or `None` when unbounded.
    fn optimize(&mut self, cost: &[Rational], enter_limit: usize) -> Option<Rational> {
        let w = self.width;
        // Reduced costs; the last entry holds minus the objective value.
        let mut obj: Vec<Rational> = cost.iter().cloned().chain(std::iter::once(Rational::zero())).collect();
        for (r, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() {
                let cb = cost[b].clone();
                for (o, v) in obj.iter_mut().zip(&self.rows[r]) {
                    *o -= &cb * v;
                }
            }
        }
        loop {
            // Bland: lowest-index improving column.
            let Some(enter) = (0..enter_limit).find(|&j| obj[j].is_positive()) else {
                return Some(-obj[w].clone());
            };
            // Bland: minimum ratio, ties to the lowest basic index.
            let mut leave: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[w] / &row[enter];
                    let better = match &leave {
                        None => true,
                        Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let (row, _) = leave?;
            self.pivot(row, enter, Some(&mut obj));
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize, obj: Option<&mut Vec<Rational>>) {
        let p = self.rows[pr][pc].clone();
        for v in &mut self.rows[pr] {
            *v /= &p;
        }
        let pivot_row = self.rows[pr].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[pc].clone();
            if !f.is_zero() {
                for (v, q) in row.iter_mut().zip(&pivot_row) {
                    if !q.is_zero() {
                        *v -= &f * q;
                    }
                }
            }
        };
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r != pr {
                eliminate(row);
            }
        }
        if let Some(obj) = obj {
            eliminate(obj);
        }
        self.basis[pr] = pc;
    }

    /// After a successful phase one every artificial left in the basis sits
    /// at zero: pivot it out, or drop its row when the row is redundant.
    fn expel_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.artificial_from {
                match (0..self.artificial_from).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j, None),
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }
}

fn needs_artificial(c: &Constraint) -> bool {
    let flip = c.rhs.is_negative();
    matches!((c.cmp, flip), (Comparator::Eq, _) | (Comparator::Ge, false) | (Comparator::Le, true))
}
