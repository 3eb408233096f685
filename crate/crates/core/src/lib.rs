//! Exact capacity and verifiable schemes for symmetric private information
//! retrieval under arbitrary collusion and eavesdropping patterns.
//!
//! The pipeline, end to end:
//!
//! 1. [`pattern`] — represent families of colluding / tapped server sets in
//!    maximal-set form, join them, complete coverage, build incidence
//!    matrices.
//! 2. [`lp`] — solve the packing LP (`max 1'y : B'y <= 1, y >= 0`) and the
//!    covering LP (`min 1'x : Bx >= 1, x >= 0`) exactly over the rationals
//!    and certify that their optima agree.
//! 3. [`capacity`] — turn the LP optimum `F*` into the capacity statement
//!    `1 - 1/F*` with randomness threshold `1/(F* - 1)`.
//! 4. [`field`], [`grs`] — prime-field linear algebra and MDS-certified
//!    generalized Reed-Solomon generators.
//! 5. [`protocol`] — plan a scheme from the LP vertex, generate queries,
//!    answer, decode; sessions are reproducible from a seed.
//! 6. [`verifier`] — certify correctness and all three privacy constraints,
//!    by rank arguments at any scale and by exhaustive distribution
//!    enumeration at micro scale.
//!
//! All values on the exact paths are [`rational::Rational`]; nothing is ever
//! rounded.

pub mod capacity;
pub mod field;
pub mod grs;
pub mod lp;
pub mod pattern;
pub mod protocol;
pub mod rational;
pub mod verifier;

pub use capacity::{pir_eavesdrop_capacity, spir_capacity, t_espir_capacity, CapacityReport};
pub use field::{choose_field, FieldElement, FieldMatrix, PrimeField};
pub use grs::{build_grs, GrsGenerator};
pub use lp::{solve_lp1, solve_lp2, verify_duality, DualityCertificate, LpSolution};
pub use pattern::{IncidenceMatrix, Pattern, PatternKind, PatternSpec, ServerSet};
pub use protocol::{
    decode, generate_queries, measure_rate, plan_scheme, run_session, MessageStore, SchemeParams,
    Transcript,
};
pub use rational::Rational;
pub use verifier::{
    exhaustive_privacy, overload_counts, verify_correctness_sweep, verify_db_privacy_user,
    verify_eve_privacy_rank, verify_user_privacy_rank, Observer, PrivacyCertificate, PrivacyCheck,
};
