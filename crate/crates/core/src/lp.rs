//! Exact solvers for the packing/covering LP pair on a pattern's incidence
//! matrix.
//!
//! The packing problem maximizes `1'y` subject to `B'y <= 1, y >= 0` (one
//! constraint per pattern set); its optimal value is the effective number of
//! servers and every capacity statement flows from it. The covering problem
//! minimizes `1'x` subject to `Bx >= 1, x >= 0` (one constraint per server).
//! The two are LP duals and must agree exactly; [`verify_duality`] solves
//! both independently and certifies equality plus complementary slackness.
//!
//! Arithmetic is rational throughout. The solver is a dense two-phase primal
//! simplex with Bland's anti-cycling rule, which also pins down a unique,
//! reproducible optimal vertex when the optimum face is not a point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pattern::IncidenceMatrix;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error(
        "packing LP is unbounded: server {server} (1-based) lies in no pattern set; \
         complete coverage before solving"
    )]
    Unbounded { server: usize },
    #[error(
        "covering LP is infeasible: server {server} (1-based) lies in no pattern set; \
         complete coverage before solving"
    )]
    Infeasible { server: usize },
    #[error("packing and covering optima disagree: {packing} vs {covering}")]
    DualityGap { packing: Rational, covering: Rational },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// A basic optimal vertex with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpSolution {
    /// Structural variable values: length N for the packing LP, M for the
    /// covering LP.
    pub vector: Vec<Rational>,
    /// Objective value at `vector`.
    pub value: Rational,
    /// Indices of basic variables at the optimum: structural variables first
    /// (`0..n`), then one slack per constraint row.
    pub basis: Vec<usize>,
    pub status: LpStatus,
}

/// Primal/dual pair with equal objective values and complementary slackness
/// verified exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCertificate {
    pub value: Rational,
    pub packing: LpSolution,
    pub covering: LpSolution,
}

/// Maximize `1'y` subject to `B'y <= 1`, `y >= 0`.
///
/// Always optimal on a coverage-complete pattern: `y = 0` is feasible and
/// every variable is capped by some constraint. An uncovered server makes
/// the problem unbounded and is rejected, not patched.
pub fn solve_lp1(b: &IncidenceMatrix) -> Result<LpSolution, LpError> {
    if let Some(server) = uncovered_server(b) {
        return Err(LpError::Unbounded { server: server + 1 });
    }
    let n = b.rows();
    let m = b.cols();
    // One constraint per set: sum of y_n over the set's members <= 1.
    let constraints: Vec<Constraint> = (0..m)
        .map(|col| Constraint {
            coeffs: (0..n)
                .map(|row| {
                    if b.entry(row, col) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
            sense: Sense::Le,
            rhs: Rational::one(),
        })
        .collect();
    let objective = vec![Rational::one(); n];
    match maximize(&objective, &constraints) {
        Outcome::Optimal {
            values,
            objective,
            basis,
        } => Ok(LpSolution {
            vector: values,
            value: objective,
            basis,
            status: LpStatus::Optimal,
        }),
        // Unreachable after the coverage check; kept as a hard failure.
        Outcome::Unbounded => Err(LpError::Unbounded { server: 0 }),
        Outcome::Infeasible => unreachable!("y = 0 is always feasible for the packing LP"),
    }
}

/// Minimize `1'x` subject to `Bx >= 1`, `x >= 0`.
///
/// Always optimal on a coverage-complete pattern: `x = 1` is feasible. An
/// uncovered server has an unsatisfiable row and makes the problem
/// infeasible.
pub fn solve_lp2(b: &IncidenceMatrix) -> Result<LpSolution, LpError> {
    if let Some(server) = uncovered_server(b) {
        return Err(LpError::Infeasible { server: server + 1 });
    }
    let n = b.rows();
    let m = b.cols();
    // One constraint per server: sum of x_m over the sets containing it >= 1.
    let constraints: Vec<Constraint> = (0..n)
        .map(|row| Constraint {
            coeffs: (0..m)
                .map(|col| {
                    if b.entry(row, col) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
            sense: Sense::Ge,
            rhs: Rational::one(),
        })
        .collect();
    // Minimizing 1'x is maximizing -1'x.
    let objective = vec![-Rational::one(); m];
    match maximize(&objective, &constraints) {
        Outcome::Optimal {
            values,
            objective,
            basis,
        } => Ok(LpSolution {
            vector: values,
            value: -objective,
            basis,
            status: LpStatus::Optimal,
        }),
        Outcome::Infeasible => Err(LpError::Infeasible { server: 0 }),
        Outcome::Unbounded => unreachable!("the covering objective is bounded below by zero"),
    }
}

/// Solve both problems independently, assert exact equality of the optima,
/// and check complementary slackness of the returned pair.
///
/// A gap between the two values reports [`LpError::DualityGap`]. A
/// complementary-slackness violation with equal values cannot happen for
/// correct solvers and is treated as an internal assertion failure.
pub fn verify_duality(b: &IncidenceMatrix) -> Result<DualityCertificate, LpError> {
    let packing = solve_lp1(b)?;
    let covering = solve_lp2(b)?;
    if packing.value != covering.value {
        return Err(LpError::DualityGap {
            packing: packing.value,
            covering: covering.value,
        });
    }
    let y = &packing.vector;
    let x = &covering.vector;
    for col in 0..b.cols() {
        let slack = Rational::one() - column_sum(b, col, y);
        assert!(
            !slack.is_negative(),
            "packing vertex violates set constraint {col}"
        );
        assert!(
            x[col].is_zero() || slack.is_zero(),
            "complementary slackness fails on set {col}"
        );
    }
    for row in 0..b.rows() {
        let surplus = row_sum(b, row, x) - Rational::one();
        assert!(
            !surplus.is_negative(),
            "covering vertex violates server constraint {row}"
        );
        assert!(
            y[row].is_zero() || surplus.is_zero(),
            "complementary slackness fails on server {row}"
        );
    }
    Ok(DualityCertificate {
        value: packing.value.clone(),
        packing,
        covering,
    })
}

/// `sum of y_n over the support of column col` (a set constraint's LHS).
pub fn column_sum(b: &IncidenceMatrix, col: usize, y: &[Rational]) -> Rational {
    (0..b.rows())
        .filter(|&row| b.entry(row, col))
        .map(|row| &y[row])
        .sum()
}

/// `sum of x_m over the sets containing row` (a server constraint's LHS).
pub fn row_sum(b: &IncidenceMatrix, row: usize, x: &[Rational]) -> Rational {
    (0..b.cols())
        .filter(|&col| b.entry(row, col))
        .map(|col| &x[col])
        .sum()
}

/// Exact feasibility check for the packing LP: `B'y <= 1`, `y >= 0`.
pub fn is_packing_feasible(b: &IncidenceMatrix, y: &[Rational]) -> bool {
    y.len() == b.rows()
        && y.iter().all(|v| !v.is_negative())
        && (0..b.cols()).all(|col| !(column_sum(b, col, y) - Rational::one()).is_positive())
}

fn uncovered_server(b: &IncidenceMatrix) -> Option<usize> {
    (0..b.rows()).find(|&row| (0..b.cols()).all(|col| !b.entry(row, col)))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sense {
    Le,
    Ge,
}

struct Constraint {
    coeffs: Vec<Rational>,
    sense: Sense,
    rhs: Rational,
}

enum Outcome {
    Optimal {
        values: Vec<Rational>,
        objective: Rational,
        basis: Vec<usize>,
    },
    Infeasible,
    Unbounded,
}

/// Dense two-phase primal simplex, entirely in rational arithmetic.
///
/// Column layout: structural variables, then one slack (or surplus) per row,
/// then artificials for the rows that need them. Bland's rule everywhere:
/// entering variable is the lowest-index column with positive reduced cost,
/// the leaving row breaks ratio ties by lowest basic-variable index. That
/// rule excludes cycling and makes the returned vertex deterministic.
fn maximize(objective: &[Rational], constraints: &[Constraint]) -> Outcome {
    let n = objective.len();
    let m = constraints.len();
    let n_slack = m;
    let mut n_art = 0;

    // Normalize to nonnegative right-hand sides first; flipping a row's sign
    // flips its sense.
    let mut rows: Vec<(Vec<Rational>, Sense, Rational)> = Vec::with_capacity(m);
    for c in constraints {
        assert_eq!(c.coeffs.len(), n, "constraint arity mismatch");
        if c.rhs.is_negative() {
            let coeffs = c.coeffs.iter().map(|v| -v).collect();
            let sense = match c.sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
            };
            rows.push((coeffs, sense, -&c.rhs));
        } else {
            rows.push((c.coeffs.clone(), c.sense, c.rhs.clone()));
        }
    }
    for (_, sense, _) in &rows {
        if *sense == Sense::Ge {
            n_art += 1;
        }
    }

    let n_cols = n + n_slack + n_art;
    let mut tableau: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n_cols + 1]; m];
    let mut basis: Vec<usize> = vec![0; m];
    let mut art_columns: Vec<usize> = Vec::with_capacity(n_art);

    let mut next_art = n + n_slack;
    for (i, (coeffs, sense, rhs)) in rows.iter().enumerate() {
        for (j, v) in coeffs.iter().enumerate() {
            tableau[i][j] = v.clone();
        }
        match sense {
            Sense::Le => {
                tableau[i][n + i] = Rational::one();
                basis[i] = n + i;
            }
            Sense::Ge => {
                tableau[i][n + i] = -Rational::one();
                tableau[i][next_art] = Rational::one();
                basis[i] = next_art;
                art_columns.push(next_art);
                next_art += 1;
            }
        }
        tableau[i][n_cols] = rhs.clone();
    }

    let is_artificial = |j: usize| j >= n + n_slack;

    if n_art > 0 {
        // Phase 1: drive the artificial variables to zero.
        let mut phase1_cost = vec![Rational::zero(); n_cols];
        for &j in &art_columns {
            phase1_cost[j] = -Rational::one();
        }
        if !simplex_loop(&mut tableau, &mut basis, &phase1_cost, |_| true) {
            unreachable!("phase 1 objective is bounded above by zero");
        }
        let phase1_value: Rational = basis
            .iter()
            .zip(tableau.iter())
            .map(|(&bv, row)| &phase1_cost[bv] * &row[n_cols])
            .sum();
        if !phase1_value.is_zero() {
            return Outcome::Infeasible;
        }
        // Pivot any residual (zero-valued) artificial out of the basis, or
        // drop its row as redundant.
        let mut i = 0;
        while i < tableau.len() {
            if is_artificial(basis[i]) {
                let pivot_col = (0..n + n_slack).find(|&j| !tableau[i][j].is_zero());
                match pivot_col {
                    Some(j) => pivot(&mut tableau, &mut basis, i, j),
                    None => {
                        tableau.remove(i);
                        basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    // Phase 2 on the real objective, artificials barred from entering.
    let mut cost = vec![Rational::zero(); n_cols];
    cost[..n].clone_from_slice(objective);
    if !simplex_loop(&mut tableau, &mut basis, &cost, |j| !is_artificial(j)) {
        return Outcome::Unbounded;
    }

    let rhs_col = n_cols;
    let mut values = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            values[bv] = tableau[i][rhs_col].clone();
        }
    }
    let objective_value: Rational = values
        .iter()
        .zip(objective.iter())
        .map(|(v, c)| v * c)
        .sum();
    let mut basis_sorted = basis.clone();
    basis_sorted.sort_unstable();
    Outcome::Optimal {
        values,
        objective: objective_value,
        basis: basis_sorted,
    }
}

/// Run Bland-rule pivots until no reduced cost is positive. Returns false on
/// unboundedness.
fn simplex_loop(
    tableau: &mut Vec<Vec<Rational>>,
    basis: &mut Vec<usize>,
    cost: &[Rational],
    allowed: impl Fn(usize) -> bool,
) -> bool {
    let n_cols = cost.len();
    loop {
        let mut entering = None;
        for j in 0..n_cols {
            if !allowed(j) || basis.contains(&j) {
                continue;
            }
            // Reduced cost c_j - z_j, recomputed exactly each round; the
            // instances are small enough that clarity wins over incremental
            // updates.
            let z: Rational = basis
                .iter()
                .zip(tableau.iter())
                .map(|(&bv, row)| &cost[bv] * &row[j])
                .sum();
            if (&cost[j] - &z).is_positive() {
                entering = Some(j);
                break;
            }
        }
        let Some(s) = entering else {
            return true;
        };

        let mut leaving: Option<(usize, Rational)> = None;
        for (i, row) in tableau.iter().enumerate() {
            if row[s].is_positive() {
                let ratio = &row[n_cols] / &row[s];
                let better = match &leaving {
                    None => true,
                    Some((best_i, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && basis[i] < basis[*best_i])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leaving else {
            return false;
        };
        pivot(tableau, basis, r, s);
    }
}

fn pivot(tableau: &mut [Vec<Rational>], basis: &mut [usize], pivot_row: usize, pivot_col: usize) {
    let divisor = tableau[pivot_row][pivot_col].clone();
    assert!(!divisor.is_zero(), "pivot on zero element");
    for v in tableau[pivot_row].iter_mut() {
        *v = &*v / &divisor;
    }
    let pivot_vals = tableau[pivot_row].clone();
    for (i, row) in tableau.iter_mut().enumerate() {
        if i == pivot_row {
            continue;
        }
        let factor = row[pivot_col].clone();
        if factor.is_zero() {
            continue;
        }
        for (v, p) in row.iter_mut().zip(pivot_vals.iter()) {
            *v = &*v - &(&factor * p);
        }
    }
    basis[pivot_row] = pivot_col;
}
