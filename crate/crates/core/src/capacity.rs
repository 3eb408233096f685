//! Capacity statements on top of the exact LP layer.
//!
//! The capacity under a collusion pattern and an eavesdropping pattern
//! depends on them only through their joint pattern: it is `1 - 1/F*` when
//! the servers' common randomness satisfies `rho >= 1/(F* - 1)`, and zero
//! otherwise, where `F*` is the packing-LP optimum on the joint incidence
//! matrix. The report keeps the optimal vertex `y*` so that scheme planning
//! consumes the same LP run the capacity was computed from.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use itertools::Itertools;

use crate::lp::{self, LpError};
use crate::pattern::{Pattern, PatternError, PatternKind, ServerSet};
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CapacityError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Everything the capacity theorem yields for one pattern pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityReport {
    /// Packing-LP optimum on the joint pattern; the effective server count.
    pub f_star: Rational,
    /// `1 - 1/f_star` when achievable, zero otherwise.
    pub capacity: Rational,
    /// Minimum common randomness per message symbol: `1/(f_star - 1)`.
    pub rho_threshold: Rational,
    /// The randomness amount the caller asked about, if any.
    pub rho_given: Option<Rational>,
    /// Whether `rho_given` meets the threshold. When no `rho` was supplied
    /// the report is conditional: `achievable` is true and `capacity` is the
    /// value attained once `rho >= rho_threshold`.
    pub achievable: bool,
    /// Coverage-completed joint pattern the LP ran on.
    pub joint_pattern: Pattern,
    /// Optimal packing vertex; scheme planning starts from exactly this.
    pub y_star: Vec<Rational>,
    /// 1-based servers whose singletons were added to complete coverage.
    pub added_singletons: Vec<usize>,
    pub notes: Vec<String>,
}

/// Capacity under arbitrary collusion and eavesdropping patterns.
///
/// Joins the patterns, completes coverage on the joint (reporting any added
/// singletons), solves the packing LP exactly, and evaluates the threshold
/// condition. `rho` equal to the threshold counts as achievable. The message
/// count does not enter the formula; the model needs at least two messages
/// and the report notes that assumption.
pub fn spir_capacity(
    pc: &Pattern,
    pe: &Pattern,
    rho: Option<&Rational>,
) -> Result<CapacityReport, CapacityError> {
    pc.validate()?;
    pe.validate()?;
    let joint = pc.join(pe)?;
    joint.validate()?;
    let (joint, added) = joint.complete_coverage();
    report_for_joint(joint, added, rho, Vec::new())
}

fn report_for_joint(
    joint: Pattern,
    added: Vec<usize>,
    rho: Option<&Rational>,
    mut notes: Vec<String>,
) -> Result<CapacityReport, CapacityError> {
    let solution = lp::solve_lp1(&joint.incidence_matrix())?;
    let f_star = solution.value.clone();
    assert!(
        (&f_star - &Rational::one()).is_positive(),
        "no full set present, so the packing optimum exceeds 1"
    );
    let rho_threshold = (&f_star - &Rational::one()).recip();
    let conditional_capacity = Rational::one() - f_star.recip();
    let (achievable, capacity) = match rho {
        None => (true, conditional_capacity),
        Some(r) => {
            if *r >= rho_threshold {
                (true, conditional_capacity)
            } else {
                (false, Rational::zero())
            }
        }
    };
    notes.push("model assumes at least two messages; the capacity is independent of the message count".to_string());
    if rho.is_none() {
        notes.push(
            "no randomness amount given; capacity is conditional on rho >= threshold".to_string(),
        );
    }
    if !added.is_empty() {
        notes.push(format!(
            "added singleton sets for otherwise uncovered servers: {}",
            added.iter().map(|n| (n + 1).to_string()).join(", ")
        ));
    }
    Ok(CapacityReport {
        f_star,
        capacity,
        rho_threshold,
        rho_given: rho.cloned(),
        achievable,
        joint_pattern: joint,
        y_star: solution.vector,
        added_singletons: added.iter().map(|n| n + 1).collect(),
        notes,
    })
}

/// Capacity when any `t` servers may collude and any `e` servers may be
/// tapped, computed by building both symmetric patterns and running the LP
/// pipeline. The closed form `1 - max(t,e)/n` is a test oracle, not a code
/// path.
pub fn t_espir_capacity(
    n: usize,
    t: usize,
    e: usize,
    rho: &Rational,
) -> Result<CapacityReport, CapacityError> {
    if n < 2 || t == 0 || e == 0 || t > n || e > n {
        return Err(CapacityError::InvalidParameter(format!(
            "need n >= 2 and 1 <= t, e <= n; got n={n}, t={t}, e={e}"
        )));
    }
    let pc = symmetric_pattern(n, t, PatternKind::Collusion)?;
    let pe = symmetric_pattern(n, e, PatternKind::Eavesdropping)?;
    spir_capacity(&pc, &pe, Some(rho))
}

/// All `size`-subsets of `[1..n]`.
pub fn symmetric_pattern(
    n: usize,
    size: usize,
    kind: PatternKind,
) -> Result<Pattern, CapacityError> {
    let sets = (0..n)
        .combinations(size)
        .map(|members| ServerSet::from_zero_based(&members))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Pattern::new(n, kind, sets)?)
}

/// Capacity of plain (non-symmetric) retrieval under an eavesdropping
/// pattern: the same LP on the eavesdropping pattern joined with the
/// singleton collusion pattern, since user privacy must hold at every single
/// server. Protecting the database against the user costs nothing here; the
/// report says so.
pub fn pir_eavesdrop_capacity(
    pe: &Pattern,
    rho: &Rational,
) -> Result<CapacityReport, CapacityError> {
    pe.validate()?;
    let pc = Pattern::singletons(pe.n_servers(), PatternKind::Collusion)?;
    let joint = pc.join(pe)?;
    joint.validate()?;
    let (joint, added) = joint.complete_coverage();
    debug_assert!(added.is_empty(), "singleton join already covers everything");
    let uncovered_by_pe: Vec<usize> = pe.validate()?.uncovered;
    let mut notes = vec![
        "database privacy against the user comes for free: the symmetric scheme achieves the plain retrieval capacity".to_string(),
    ];
    if !uncovered_by_pe.is_empty() {
        notes.push(format!(
            "servers {} lie in no eavesdropping set; the LP on the eavesdropping pattern alone would be unbounded, so their singleton user-privacy constraints enter via the joint pattern",
            uncovered_by_pe.iter().map(|n| (n + 1).to_string()).join(", ")
        ));
    }
    report_for_joint(joint, Vec::new(), Some(rho), notes)
}
