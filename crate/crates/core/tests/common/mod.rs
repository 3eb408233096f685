//! Shared test support: an LP oracle that is deliberately independent of the
//! simplex implementation. It enumerates every basic point of the constraint
//! system by solving square rational subsystems, filters the feasible ones,
//! and takes the best objective. Exponential and proud of it; instances in
//! these tests are tiny.

use itertools::Itertools;
use spir_core::pattern::IncidenceMatrix;
use spir_core::Rational;

/// Solve a square rational system by Gauss-Jordan. None when singular.
fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

struct HalfSpace {
    coeffs: Vec<Rational>,
    rhs: Rational,
    // True when the constraint is `coeffs . x >= rhs`; false for `<=`.
    at_least: bool,
}

impl HalfSpace {
    fn satisfied(&self, x: &[Rational]) -> bool {
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(x.iter())
            .map(|(c, v)| c * v)
            .sum();
        if self.at_least {
            !(self.rhs.clone() - lhs).is_positive()
        } else {
            !(lhs - self.rhs.clone()).is_positive()
        }
    }
}

/// Enumerate all vertices of the polyhedron and return the optimal objective
/// value of `sum(x)` (max or min). Panics if no feasible vertex exists;
/// callers only pass bounded feasible systems.
fn brute_force_optimum(n_vars: usize, constraints: &[HalfSpace], maximize: bool) -> Rational {
    let mut best: Option<Rational> = None;
    for subset in (0..constraints.len()).combinations(n_vars) {
        let a: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| constraints[i].coeffs.clone())
            .collect();
        let b: Vec<Rational> = subset.iter().map(|&i| constraints[i].rhs.clone()).collect();
        let Some(x) = solve_square(&a, &b) else {
            continue;
        };
        if !constraints.iter().all(|h| h.satisfied(&x)) {
            continue;
        }
        let value: Rational = x.iter().sum();
        best = Some(match best {
            None => value,
            Some(cur) => {
                if (maximize && value > cur) || (!maximize && value < cur) {
                    value
                } else {
                    cur
                }
            }
        });
    }
    best.expect("the system has a feasible vertex")
}

/// Independent optimum of `max 1'y : B'y <= 1, y >= 0`.
pub fn brute_force_packing_value(b: &IncidenceMatrix) -> Rational {
    let n = b.rows();
    let mut constraints = Vec::new();
    for col in 0..b.cols() {
        constraints.push(HalfSpace {
            coeffs: (0..n)
                .map(|row| {
                    if b.entry(row, col) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
            rhs: Rational::one(),
            at_least: false,
        });
    }
    for var in 0..n {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[var] = Rational::one();
        constraints.push(HalfSpace {
            coeffs,
            rhs: Rational::zero(),
            at_least: true,
        });
    }
    brute_force_optimum(n, &constraints, true)
}

/// Independent optimum of `min 1'x : Bx >= 1, x >= 0`.
pub fn brute_force_covering_value(b: &IncidenceMatrix) -> Rational {
    let m = b.cols();
    let mut constraints = Vec::new();
    for row in 0..b.rows() {
        constraints.push(HalfSpace {
            coeffs: (0..m)
                .map(|col| {
                    if b.entry(row, col) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
            rhs: Rational::one(),
            at_least: true,
        });
    }
    for var in 0..m {
        let mut coeffs = vec![Rational::zero(); m];
        coeffs[var] = Rational::one();
        constraints.push(HalfSpace {
            coeffs,
            rhs: Rational::zero(),
            at_least: true,
        });
    }
    brute_force_optimum(m, &constraints, false)
}

/// A coverage-complete random joint pattern over 2..=max_n servers.
pub fn random_covered_joint(
    rng: &mut impl rand::Rng,
    max_n: usize,
) -> spir_core::pattern::Pattern {
    use spir_core::pattern::{Pattern, PatternKind};
    let n = rng.gen_range(2..=max_n);
    let pc = Pattern::sample(rng, n, PatternKind::Collusion);
    let pe = Pattern::sample(rng, n, PatternKind::Eavesdropping);
    let (joint, _) = pc.join(&pe).expect("same n").complete_coverage();
    joint
}
