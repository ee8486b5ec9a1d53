//! Exact-rational linear programming with certificates.
//!
//! Programs are in equality form `A x = b` with a leading block of
//! variables constrained nonnegative and the remainder free. Solving uses
//! a dense two-phase simplex over [`Rational`] with Bland's anti-cycling
//! rule and lowest-index tie-breaking, so every solve terminates and
//! identical programs produce identical outcomes. Infeasible systems come
//! back with a Farkas certificate that verifies by direct multiplication:
//! `y·A <= 0` componentwise on nonnegative columns, `y·A = 0` on free
//! columns, and `y·b > 0`.

use crate::rational::Rational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("row {row} has {got} coefficients, expected {expected}")]
    RowLength {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("{nonneg} nonnegative variables declared but the program has {vars}")]
    NonnegCount { nonneg: usize, vars: usize },
    #[error("objective has {got} coefficients, expected {expected}")]
    ObjectiveLength { got: usize, expected: usize },
    #[error("minimize called on a program without an objective")]
    MissingObjective,
}

/// Equality-constrained program: `rows · x = rhs`, the first
/// `nonneg_vars` variables `>= 0`, the rest free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    nonneg_vars: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    objective: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Feasible,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub solution: Option<Vec<Rational>>,
    pub objective_value: Option<Rational>,
    pub certificate: Option<FarkasCertificate>,
}

/// Infeasibility witness: one multiplier per equality row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub row_multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    /// Direct exact check of the witness conditions against the program.
    pub fn verifies(&self, lp: &LinearProgram) -> bool {
        if self.row_multipliers.len() != lp.rows.len() {
            return false;
        }
        for col in 0..lp.num_vars {
            let combined: Rational = self
                .row_multipliers
                .iter()
                .zip(&lp.rows)
                .map(|(y, row)| y * &row[col])
                .sum();
            let ok = if col < lp.nonneg_vars {
                !combined.is_positive()
            } else {
                combined.is_zero()
            };
            if !ok {
                return false;
            }
        }
        let against_rhs: Rational = self
            .row_multipliers
            .iter()
            .zip(&lp.rhs)
            .map(|(y, b)| y * b)
            .sum();
        against_rhs.is_positive()
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize, nonneg_vars: usize) -> Result<Self, LpError> {
        if nonneg_vars > num_vars {
            return Err(LpError::NonnegCount {
                nonneg: nonneg_vars,
                vars: num_vars,
            });
        }
        Ok(Self {
            num_vars,
            nonneg_vars,
            rows: Vec::new(),
            rhs: Vec::new(),
            objective: None,
        })
    }

    pub fn add_row(&mut self, coefficients: Vec<Rational>, rhs: Rational) -> Result<(), LpError> {
        if coefficients.len() != self.num_vars {
            return Err(LpError::RowLength {
                row: self.rows.len(),
                got: coefficients.len(),
                expected: self.num_vars,
            });
        }
        self.rows.push(coefficients);
        self.rhs.push(rhs);
        Ok(())
    }

    pub fn set_objective(&mut self, objective: Vec<Rational>) -> Result<(), LpError> {
        if objective.len() != self.num_vars {
            return Err(LpError::ObjectiveLength {
                got: objective.len(),
                expected: self.num_vars,
            });
        }
        self.objective = Some(objective);
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Exact check: every equality holds and the nonnegative block is `>= 0`.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        if x[..self.nonneg_vars].iter().any(|v| v.is_negative()) {
            return false;
        }
        self.rows.iter().zip(&self.rhs).all(|(row, b)| {
            let lhs: Rational = row.iter().zip(x).map(|(a, v)| a * v).sum();
            &lhs == b
        })
    }

    /// Exact check of an outcome against this program; used by tests and
    /// asserted on every solve in debug builds.
    pub fn verify_outcome(&self, outcome: &LpOutcome) -> bool {
        match outcome.status {
            LpStatus::Feasible => match (&outcome.solution, &outcome.objective_value) {
                (Some(x), value) => {
                    let feasible = self.is_satisfied_by(x);
                    let value_ok = match (value, &self.objective) {
                        (Some(v), Some(c)) => {
                            let recomputed: Rational =
                                c.iter().zip(x).map(|(ci, xi)| ci * xi).sum();
                            &recomputed == v
                        }
                        (None, _) => true,
                        (Some(_), None) => false,
                    };
                    feasible && value_ok
                }
                _ => false,
            },
            LpStatus::Infeasible => outcome
                .certificate
                .as_ref()
                .is_some_and(|cert| cert.verifies(self)),
            LpStatus::Unbounded => outcome.solution.is_none() && outcome.certificate.is_none(),
        }
    }

    /// Decides feasibility. Returns an exact solution or a verified
    /// Farkas certificate; never a numeric error.
    pub fn solve_feasibility(&self) -> LpOutcome {
        let mut tableau = Tableau::standardize(self);
        let outcome = match tableau.phase_one() {
            PhaseOne::Feasible => LpOutcome {
                status: LpStatus::Feasible,
                solution: Some(tableau.extract_solution(self)),
                objective_value: None,
                certificate: None,
            },
            PhaseOne::Infeasible(certificate) => LpOutcome {
                status: LpStatus::Infeasible,
                solution: None,
                objective_value: None,
                certificate: Some(certificate),
            },
        };
        debug_assert!(self.verify_outcome(&outcome), "unsound LP outcome");
        outcome
    }

    /// Minimizes the objective over the feasible region. Reports
    /// unboundedness as its own status.
    pub fn minimize(&self) -> Result<LpOutcome, LpError> {
        let objective = self.objective.as_ref().ok_or(LpError::MissingObjective)?;
        let mut tableau = Tableau::standardize(self);
        let outcome = match tableau.phase_one() {
            PhaseOne::Infeasible(certificate) => LpOutcome {
                status: LpStatus::Infeasible,
                solution: None,
                objective_value: None,
                certificate: Some(certificate),
            },
            PhaseOne::Feasible => match tableau.phase_two(objective) {
                RunOutcome::Optimal => {
                    let solution = tableau.extract_solution(self);
                    let value: Rational = objective
                        .iter()
                        .zip(&solution)
                        .map(|(c, x)| c * x)
                        .sum();
                    LpOutcome {
                        status: LpStatus::Feasible,
                        solution: Some(solution),
                        objective_value: Some(value),
                        certificate: None,
                    }
                }
                RunOutcome::Unbounded => LpOutcome {
                    status: LpStatus::Unbounded,
                    solution: None,
                    objective_value: None,
                    certificate: None,
                },
            },
        };
        debug_assert!(self.verify_outcome(&outcome), "unsound LP outcome");
        Ok(outcome)
    }
}

enum PhaseOne {
    Feasible,
    Infeasible(FarkasCertificate),
}

enum RunOutcome {
    Optimal,
    Unbounded,
}

/// Dense simplex tableau in standard form. Free variables are split into
/// positive and negative parts; rows are scaled so the right-hand side
/// stays nonnegative, with the applied sign recorded for certificate
/// extraction.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    n_std: usize,
    // std column -> (original variable, negated copy)
    col_var: Vec<(usize, bool)>,
    row_flipped: Vec<bool>,
}

impl Tableau {
    fn standardize(lp: &LinearProgram) -> Self {
        let mut col_var: Vec<(usize, bool)> = (0..lp.num_vars).map(|j| (j, false)).collect();
        col_var.extend((lp.nonneg_vars..lp.num_vars).map(|j| (j, true)));
        let n_std = col_var.len();
        let m = lp.rows.len();

        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut row_flipped = Vec::with_capacity(m);
        for (source, b) in lp.rows.iter().zip(&lp.rhs) {
            let flip = b.is_negative();
            let mut row: Vec<Rational> = Vec::with_capacity(n_std + m);
            for &(var, negated) in &col_var {
                let coeff = &source[var];
                row.push(if negated != flip { -coeff } else { coeff.clone() });
            }
            // Artificial block: identity.
            row.extend(std::iter::repeat_with(Rational::zero).take(m));
            rows.push(row);
            rhs.push(if flip { -b } else { b.clone() });
            row_flipped.push(flip);
        }
        let mut basis = Vec::with_capacity(m);
        for (i, row) in rows.iter_mut().enumerate() {
            row[n_std + i] = Rational::from_integer(1.into());
            basis.push(n_std + i);
        }

        // Phase-1 reduced costs: zero objective on structural columns,
        // unit cost on artificials, priced with the artificial basis.
        let mut cost = vec![Rational::zero(); n_std + m];
        for (j, c) in cost.iter_mut().enumerate().take(n_std) {
            *c = -rows.iter().map(|row| &row[j]).sum::<Rational>();
        }

        Self {
            rows,
            rhs,
            basis,
            cost,
            n_std,
            col_var,
            row_flipped,
        }
    }

    fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Bland's rule: entering column is the lowest index with a negative
    /// reduced cost; the leaving row attains the minimum ratio, ties
    /// broken by the lowest basic-variable index.
    fn run(&mut self, active_cols: usize) -> RunOutcome {
        loop {
            let Some(col) = (0..active_cols).find(|&j| self.cost[j].is_negative()) else {
                return RunOutcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.num_rows() {
                if !self.rows[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][col];
                let better = match &leave {
                    None => true,
                    Some((best_row, best)) => {
                        ratio < *best
                            || (ratio == *best && self.basis[i] < self.basis[*best_row])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return RunOutcome::Unbounded;
            };
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, pivot_row: usize, pivot_col: usize) {
        let pivot_val = self.rows[pivot_row][pivot_col].clone();
        debug_assert!(!pivot_val.is_zero());
        for v in self.rows[pivot_row].iter_mut() {
            *v /= &pivot_val;
        }
        self.rhs[pivot_row] /= &pivot_val;

        let pivot_row_vals = self.rows[pivot_row].clone();
        let pivot_rhs = self.rhs[pivot_row].clone();
        for i in 0..self.num_rows() {
            if i == pivot_row || self.rows[i][pivot_col].is_zero() {
                continue;
            }
            let factor = self.rows[i][pivot_col].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&pivot_row_vals) {
                *v -= &factor * p;
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.cost[pivot_col].is_zero() {
            let factor = self.cost[pivot_col].clone();
            for (c, p) in self.cost.iter_mut().zip(&pivot_row_vals) {
                *c -= &factor * p;
            }
        }
        self.basis[pivot_row] = pivot_col;
    }

    fn phase_one(&mut self) -> PhaseOne {
        match self.run(self.n_std + self.num_rows()) {
            RunOutcome::Optimal => {}
            // The phase-1 objective is bounded below by zero.
            RunOutcome::Unbounded => unreachable!("phase-1 objective cannot be unbounded"),
        }
        let infeasibility: Rational = (0..self.num_rows())
            .filter(|&i| self.basis[i] >= self.n_std)
            .map(|i| self.rhs[i].clone())
            .sum();
        if infeasibility.is_zero() {
            return PhaseOne::Feasible;
        }
        // Dual prices off the artificial columns: the reduced cost of
        // artificial i is 1 - y_i, so y_i = 1 - cost[art_i]. Undo the
        // row sign flips applied during standardization.
        let one = Rational::from_integer(1.into());
        let multipliers = (0..self.num_rows())
            .map(|i| {
                let y = &one - &self.cost[self.n_std + i];
                if self.row_flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        PhaseOne::Infeasible(FarkasCertificate {
            row_multipliers: multipliers,
        })
    }

    /// Pivot artificials out of the basis (dropping redundant rows), strip
    /// the artificial block, price the real objective, and re-optimize.
    fn phase_two(&mut self, objective: &[Rational]) -> RunOutcome {
        let mut redundant = Vec::new();
        for i in 0..self.num_rows() {
            if self.basis[i] < self.n_std {
                continue;
            }
            match (0..self.n_std).find(|&j| !self.rows[i][j].is_zero()) {
                // Degenerate pivot: the row's rhs is zero, feasibility is
                // preserved regardless of the pivot element's sign.
                Some(col) => self.pivot(i, col),
                None => redundant.push(i),
            }
        }
        for &i in redundant.iter().rev() {
            self.rows.remove(i);
            self.rhs.remove(i);
            self.basis.remove(i);
            self.row_flipped.remove(i);
        }
        for row in &mut self.rows {
            row.truncate(self.n_std);
        }

        // Split objective onto structural columns, then price out the basis.
        let std_cost: Vec<Rational> = self
            .col_var
            .iter()
            .map(|&(var, negated)| {
                if negated {
                    -&objective[var]
                } else {
                    objective[var].clone()
                }
            })
            .collect();
        let mut cost = std_cost.clone();
        for (i, row) in self.rows.iter().enumerate() {
            let basic_cost = &std_cost[self.basis[i]];
            if basic_cost.is_zero() {
                continue;
            }
            for (c, a) in cost.iter_mut().zip(row) {
                *c -= basic_cost * a;
            }
        }
        self.cost = cost;
        self.run(self.n_std)
    }

    fn extract_solution(&self, lp: &LinearProgram) -> Vec<Rational> {
        let mut std_values = vec![Rational::zero(); self.n_std];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_std {
                std_values[b] = self.rhs[i].clone();
            }
        }
        let mut x = vec![Rational::zero(); lp.num_vars];
        for (value, &(var, negated)) in std_values.iter().zip(&self.col_var) {
            if negated {
                x[var] -= value;
            } else {
                x[var] += value;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};
    use proptest::prelude::*;

    fn feasibility(
        num_vars: usize,
        nonneg: usize,
        rows: Vec<(Vec<i64>, i64)>,
    ) -> (LinearProgram, LpOutcome) {
        let mut lp = LinearProgram::new(num_vars, nonneg).unwrap();
        for (coeffs, b) in rows {
            lp.add_row(coeffs.into_iter().map(integer).collect(), integer(b))
                .unwrap();
        }
        let out = lp.solve_feasibility();
        (lp, out)
    }

    #[test]
    fn one_variable_identity() {
        let (_, out) = feasibility(1, 1, vec![(vec![1], 1)]);
        assert_eq!(out.status, LpStatus::Feasible);
        assert_eq!(out.solution.unwrap(), vec![integer(1)]);
    }

    #[test]
    fn sign_contradiction_yields_unit_certificate() {
        let (lp, out) = feasibility(1, 1, vec![(vec![1], -1)]);
        assert_eq!(out.status, LpStatus::Infeasible);
        let cert = out.certificate.unwrap();
        assert_eq!(cert.row_multipliers, vec![integer(-1)]);
        assert!(cert.verifies(&lp));
    }

    #[test]
    fn filing_cabinet_membership_system_is_infeasible() {
        // lambda weights over {0,1}^2 reproducing p = (0.9744, 0.3077, 0.5263).
        // Columns are lambda_00, lambda_10, lambda_01, lambda_11.
        let mut lp = LinearProgram::new(4, 4).unwrap();
        let rows: [(Vec<i64>, Rational); 4] = [
            (vec![0, 1, 0, 1], ratio(9744, 10_000)),
            (vec![0, 0, 1, 1], ratio(3077, 10_000)),
            (vec![0, 0, 0, 1], ratio(5263, 10_000)),
            (vec![1, 1, 1, 1], integer(1)),
        ];
        for (coeffs, b) in rows {
            lp.add_row(coeffs.into_iter().map(integer).collect(), b).unwrap();
        }
        let out = lp.solve_feasibility();
        assert_eq!(out.status, LpStatus::Infeasible);
        assert!(out.certificate.unwrap().verifies(&lp));
    }

    #[test]
    fn forced_value_minimization() {
        let mut lp = LinearProgram::new(1, 1).unwrap();
        lp.add_row(vec![integer(1)], integer(5)).unwrap();
        lp.set_objective(vec![integer(1)]).unwrap();
        let out = lp.minimize().unwrap();
        assert_eq!(out.status, LpStatus::Feasible);
        assert_eq!(out.objective_value.unwrap(), integer(5));
    }

    #[test]
    fn free_variable_takes_negative_value() {
        let (_, out) = feasibility(1, 0, vec![(vec![1], -3)]);
        assert_eq!(out.status, LpStatus::Feasible);
        assert_eq!(out.solution.unwrap(), vec![integer(-3)]);
    }

    #[test]
    fn unbounded_objective_is_reported_distinctly() {
        let mut lp = LinearProgram::new(2, 2).unwrap();
        lp.add_row(vec![integer(1), integer(-1)], integer(0)).unwrap();
        lp.set_objective(vec![integer(-1), integer(0)]).unwrap();
        let out = lp.minimize().unwrap();
        assert_eq!(out.status, LpStatus::Unbounded);
        assert!(out.solution.is_none());
    }

    #[test]
    fn beale_cycling_example_terminates_at_optimum() {
        // Classic degenerate program that cycles under naive pivoting.
        let mut lp = LinearProgram::new(7, 7).unwrap();
        let rows = [
            (vec![ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(1, 4), ratio(-60, 1), ratio(-1, 25), ratio(9, 1)], integer(0)),
            (vec![ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(1, 2), ratio(-90, 1), ratio(-1, 50), ratio(3, 1)], integer(0)),
            (vec![ratio(0, 1), ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(1, 1), ratio(0, 1)], integer(1)),
        ];
        for (coeffs, b) in rows {
            lp.add_row(coeffs, b).unwrap();
        }
        lp.set_objective(vec![
            integer(0),
            integer(0),
            integer(0),
            ratio(-3, 4),
            integer(150),
            ratio(-1, 50),
            integer(6),
        ])
        .unwrap();
        let out = lp.minimize().unwrap();
        assert_eq!(out.status, LpStatus::Feasible);
        assert_eq!(out.objective_value.unwrap(), ratio(-1, 20));
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let (_, out) = feasibility(2, 2, vec![(vec![1, 1], 2), (vec![1, 1], 2), (vec![2, 2], 4)]);
        assert_eq!(out.status, LpStatus::Feasible);

        let mut lp = LinearProgram::new(2, 2).unwrap();
        lp.add_row(vec![integer(1), integer(1)], integer(2)).unwrap();
        lp.add_row(vec![integer(1), integer(1)], integer(2)).unwrap();
        lp.set_objective(vec![integer(1), integer(2)]).unwrap();
        let out = lp.minimize().unwrap();
        assert_eq!(out.status, LpStatus::Feasible);
        assert_eq!(out.objective_value.unwrap(), integer(2));
    }

    #[test]
    fn identical_programs_solve_identically() {
        let build = || {
            let mut lp = LinearProgram::new(4, 4).unwrap();
            lp.add_row(vec![integer(0), integer(1), integer(0), integer(1)], ratio(1, 1)).unwrap();
            lp.add_row(vec![integer(0), integer(0), integer(1), integer(1)], ratio(23, 40)).unwrap();
            lp.add_row(vec![integer(0), integer(0), integer(0), integer(1)], ratio(8421, 10_000)).unwrap();
            lp.add_row(vec![integer(1), integer(1), integer(1), integer(1)], integer(1)).unwrap();
            lp
        };
        let a = build().solve_feasibility();
        let b = build().solve_feasibility();
        assert_eq!(a, b);
    }

    #[test]
    fn structural_errors_are_reported() {
        assert!(matches!(
            LinearProgram::new(1, 2),
            Err(LpError::NonnegCount { .. })
        ));
        let mut lp = LinearProgram::new(2, 2).unwrap();
        assert!(matches!(
            lp.add_row(vec![integer(1)], integer(0)),
            Err(LpError::RowLength { .. })
        ));
        assert!(matches!(
            lp.set_objective(vec![integer(1)]),
            Err(LpError::ObjectiveLength { .. })
        ));
        assert!(matches!(lp.minimize(), Err(LpError::MissingObjective)));
    }

    proptest! {
        // Either outcome must self-verify exactly; feasibility of a system
        // built around a known nonnegative point must be detected.
        #[test]
        fn outcomes_verify_on_random_systems(
            entries in proptest::collection::vec(-5i64..=5, 1..=12),
            rhs in proptest::collection::vec(-6i64..=6, 1..=3),
            nonneg_split in 0usize..=4,
        ) {
            let m = rhs.len();
            let n = 1 + entries.len() / m.max(1);
            let n = n.min(4);
            let mut lp = LinearProgram::new(n, nonneg_split.min(n)).unwrap();
            for (i, b) in rhs.iter().enumerate() {
                let coeffs: Vec<Rational> = (0..n)
                    .map(|j| integer(*entries.get(i * n + j).unwrap_or(&1)))
                    .collect();
                lp.add_row(coeffs, integer(*b)).unwrap();
            }
            let out = lp.solve_feasibility();
            prop_assert!(lp.verify_outcome(&out));
        }

        #[test]
        fn systems_with_known_solutions_are_feasible(
            entries in proptest::collection::vec(-4i64..=4, 9),
            point in proptest::collection::vec(0i64..=5, 3),
        ) {
            let mut lp = LinearProgram::new(3, 3).unwrap();
            for i in 0..3 {
                let coeffs: Vec<Rational> = (0..3).map(|j| integer(entries[i * 3 + j])).collect();
                let b: Rational = coeffs
                    .iter()
                    .zip(&point)
                    .map(|(a, x)| a * integer(*x))
                    .sum();
                lp.add_row(coeffs, b).unwrap();
            }
            let out = lp.solve_feasibility();
            prop_assert_eq!(out.status, LpStatus::Feasible);
            prop_assert!(lp.is_satisfied_by(&out.solution.unwrap()));
        }
    }
}
