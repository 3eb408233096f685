//! Certification of a planned scheme instance.
//!
//! Two independent routes:
//!
//! * **Rank certificates** work at any scale. A set of servers observes some
//!   block of query indices; if the block has at most `k` entries and the
//!   matching generator columns have full column rank, the observed queries
//!   (resp. the randomness masks on the observed answers) are jointly
//!   uniform, so the view carries nothing about the retrieval index (resp.
//!   the messages).
//! * **Exhaustive certificates** enumerate every value of the user
//!   randomness, the shared secret and the messages on micro instances and
//!   compare exact rational distribution tables. No tolerance: tables either
//!   match entry-for-entry or the check fails.
//!
//! The two routes must never disagree where both run. To prove the
//! certificates have teeth, [`overload_counts`] manufactures instances where
//! one pattern set sees one query too many; at least one certificate must
//! flip to fail on every such instance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldMatrix;
use crate::pattern::{Pattern, ServerSet};
use crate::protocol::{
    answer_server, common_randomness_from_secret, queries_from_randomness, run_session,
    MessageStore, ProtocolError, SchemeParams,
};
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifierError {
    #[error("exhaustive enumeration needs {needed} states, over the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("unsupported observer/check combination: {0}")]
    UnsupportedCheck(String),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
}

/// Which model constraint a certificate speaks to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// The user reconstructs the requested message from all answers.
    Correctness,
    /// The user learns nothing about the other messages.
    DbPrivacyUser,
    /// A colluding set learns nothing about the retrieval index.
    UserPrivacy,
    /// An eavesdropped set's queries and answers reveal nothing about the
    /// messages.
    DbPrivacyEve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    Rank,
    Exhaustive,
    Sweep,
}

/// Per-set rank evidence: how many query indices the set observes and the
/// rank of the matching generator columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetWitness {
    pub set: ServerSet,
    pub queries_seen: usize,
    pub column_rank: usize,
    pub bound: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrivacyCertificate {
    pub constraint: ConstraintKind,
    pub method: CheckMethod,
    pub pass: bool,
    /// Per-set evidence for rank certificates; empty otherwise.
    pub set_witnesses: Vec<SetWitness>,
    /// For the database-privacy certificate: which secret coordinate masks
    /// which decodable side value. A bijection or the check fails.
    pub mask_map: Vec<(usize, usize)>,
    pub notes: Vec<String>,
}

impl PrivacyCertificate {
    fn from_witnesses(
        constraint: ConstraintKind,
        witnesses: Vec<SetWitness>,
        notes: Vec<String>,
    ) -> Self {
        PrivacyCertificate {
            constraint,
            method: CheckMethod::Rank,
            pass: witnesses.iter().all(|w| w.pass),
            set_witnesses: witnesses,
            mask_map: Vec::new(),
            notes,
        }
    }
}

fn rank_witnesses(params: &SchemeParams, pattern: &Pattern) -> Vec<SetWitness> {
    let g = params.grs().matrix();
    let bound = params.code_dim();
    pattern
        .sets()
        .iter()
        .map(|set| {
            let cols: Vec<usize> = set
                .members()
                .iter()
                .flat_map(|&n| params.server_range(n))
                .collect();
            let queries_seen = cols.len();
            let column_rank = g.select_columns(&cols).rank();
            SetWitness {
                set: set.clone(),
                queries_seen,
                column_rank,
                bound,
                pass: queries_seen <= bound && column_rank == queries_seen,
            }
        })
        .collect()
}

/// For every set in `pattern`: the observed query block has at most `k`
/// vectors and the matching generator columns are independent, so the block
/// is jointly uniform whatever the retrieval index. An empty pattern passes
/// vacuously.
pub fn verify_user_privacy_rank(params: &SchemeParams, pattern: &Pattern) -> PrivacyCertificate {
    PrivacyCertificate::from_witnesses(
        ConstraintKind::UserPrivacy,
        rank_witnesses(params, pattern),
        Vec::new(),
    )
}

/// For every set in `pattern`: the observed answers are masked by encoded
/// randomness symbols whose generator columns are independent, so the masks
/// are jointly uniform and the answers say nothing about the messages.
pub fn verify_eve_privacy_rank(params: &SchemeParams, pattern: &Pattern) -> PrivacyCertificate {
    PrivacyCertificate::from_witnesses(
        ConstraintKind::DbPrivacyEve,
        rank_witnesses(params, pattern),
        Vec::new(),
    )
}

/// The user's decodable surplus is exactly the `k` side values, and side
/// value `l` is masked by secret coordinate `l` alone: replaying seeded
/// sessions, `side_l - W'U_l` must reproduce `S_l` for every `l`. With the
/// identity mask map each side value hides behind one fresh uniform symbol,
/// which is what keeps the undesired messages dark.
pub fn verify_db_privacy_user(params: &SchemeParams) -> PrivacyCertificate {
    if params.code_dim() == 0 {
        return PrivacyCertificate {
            constraint: ConstraintKind::DbPrivacyUser,
            method: CheckMethod::Rank,
            pass: false,
            set_witnesses: Vec::new(),
            mask_map: Vec::new(),
            notes: vec!["no common randomness: side values are unmasked".to_string()],
        };
    }
    let mut pass = true;
    let mut notes = Vec::new();
    'outer: for seed in 0..4u64 {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let store = MessageStore::random(params, &mut rng);
        for theta in 1..=params.n_messages() {
            let transcript = match run_session(params, &store, theta, seed) {
                Ok(t) => t,
                Err(e) => {
                    pass = false;
                    notes.push(format!("session replay failed: {e}"));
                    break 'outer;
                }
            };
            let field = params.field();
            let stacked = store.stacked();
            for l in 0..params.code_dim() {
                let inner = (0..stacked.len()).fold(field.zero(), |acc, i| {
                    acc + field.element(transcript.user_randomness[l][i]) * stacked[i]
                });
                let mask = field.element(transcript.side_values[l]) - inner;
                if mask.value() != transcript.common_randomness[l] {
                    pass = false;
                    notes.push(format!(
                        "side value {l} is not masked by secret coordinate {l} (seed {seed}, theta {theta})"
                    ));
                    break 'outer;
                }
            }
        }
    }
    PrivacyCertificate {
        constraint: ConstraintKind::DbPrivacyUser,
        method: CheckMethod::Rank,
        pass,
        set_witnesses: Vec::new(),
        mask_map: (0..params.code_dim()).map(|l| (l, l)).collect(),
        notes,
    }
}

/// Run full sessions over random messages and indices; pass iff decoding is
/// exact every time.
pub fn verify_correctness_sweep(
    params: &SchemeParams,
    trials: usize,
    seed: u64,
) -> PrivacyCertificate {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut pass = true;
    let mut notes = Vec::new();
    for trial in 0..trials {
        let store = MessageStore::random(params, &mut rng);
        let theta = (trial % params.n_messages()) + 1;
        match run_session(params, &store, theta, seed.wrapping_add(trial as u64)) {
            Ok(t) => {
                let expected: Vec<u64> =
                    store.message(theta).iter().map(|e| e.value()).collect();
                if t.decoded != expected {
                    pass = false;
                    notes.push(format!("trial {trial}: decoded wrong message for theta {theta}"));
                    break;
                }
            }
            Err(e) => {
                pass = false;
                notes.push(format!("trial {trial}: session failed: {e}"));
                break;
            }
        }
    }
    PrivacyCertificate {
        constraint: ConstraintKind::Correctness,
        method: CheckMethod::Sweep,
        pass,
        set_witnesses: Vec::new(),
        mask_map: Vec::new(),
        notes,
    }
}

/// Whose view the exhaustive check reconstructs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Observer {
    /// A colluding set: its query vectors, its answers, plus the messages
    /// and the secret (the strongest reading of the indistinguishability
    /// requirement).
    Colluders(ServerSet),
    /// A tapped set: its query vectors and answers only.
    Eavesdropper(ServerSet),
    /// The user: every query vector and every answer.
    User,
}

/// What to compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrivacyCheck {
    /// The observer's view distribution must be identical for the two
    /// retrieval indices.
    ThetaIndistinguishability { theta_a: usize, theta_b: usize },
    /// The observer's view must be exactly independent of the messages (all
    /// of them for an eavesdropper, the undesired ones for the user).
    MessageIndependence { theta: usize },
}

/// Exact distribution over serialized view tuples; probabilities always sum
/// to one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionTable {
    entries: BTreeMap<Vec<u64>, Rational>,
}

impl DistributionTable {
    fn from_counts(counts: BTreeMap<Vec<u64>, u64>, total: u64) -> Self {
        let total_rat = Rational::from(total as usize);
        let entries = counts
            .into_iter()
            .map(|(key, c)| (key, Rational::from(c as usize) / total_rat.clone()))
            .collect();
        DistributionTable { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn probability(&self, key: &[u64]) -> Rational {
        self.entries.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total(&self) -> Rational {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u64>, &Rational)> {
        self.entries.iter()
    }
}

/// Outcome of one exhaustive comparison: the two tables and the verdict.
/// For theta comparisons the tables are the two views; for independence
/// checks they are the exact joint and the product of the marginals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveCertificate {
    pub constraint: ConstraintKind,
    pub pass: bool,
    pub table_a: DistributionTable,
    pub table_b: DistributionTable,
    pub states_enumerated: u64,
}

impl ExhaustiveCertificate {
    pub fn to_privacy_certificate(&self) -> PrivacyCertificate {
        PrivacyCertificate {
            constraint: self.constraint,
            method: CheckMethod::Exhaustive,
            pass: self.pass,
            set_witnesses: Vec::new(),
            mask_map: Vec::new(),
            notes: vec![format!(
                "enumerated {} states; {} vs {} table entries",
                self.states_enumerated,
                self.table_a.len(),
                self.table_b.len()
            )],
        }
    }
}

/// Enumerate every `(user randomness, secret, messages)` assignment with
/// exact uniform weights and compare distribution tables. Refuses instances
/// whose state count exceeds `budget`.
pub fn exhaustive_privacy(
    params: &SchemeParams,
    observer: &Observer,
    check: &PrivacyCheck,
    budget: u64,
) -> Result<ExhaustiveCertificate, VerifierError> {
    let q = params.field().modulus();
    let kl = params.stacked_len();
    let digits = kl * params.code_dim() + params.code_dim() + kl;
    let states = checked_pow(q, digits).filter(|&s| s <= budget).ok_or_else(|| {
        VerifierError::BudgetExceeded {
            needed: format!("{q}^{digits}"),
            budget,
        }
    })?;

    match (observer, check) {
        (Observer::Colluders(set) | Observer::Eavesdropper(set), PrivacyCheck::ThetaIndistinguishability { theta_a, theta_b }) => {
            let constraint = match observer {
                Observer::Colluders(_) => ConstraintKind::UserPrivacy,
                _ => ConstraintKind::DbPrivacyEve,
            };
            let include_secrets = true;
            let table_a = view_table(params, set, *theta_a, include_secrets, states)?;
            let table_b = view_table(params, set, *theta_b, include_secrets, states)?;
            Ok(ExhaustiveCertificate {
                constraint,
                pass: table_a == table_b,
                table_a,
                table_b,
                states_enumerated: 2 * states,
            })
        }
        (Observer::Eavesdropper(set), PrivacyCheck::MessageIndependence { theta }) => {
            let cols: Vec<usize> = set
                .members()
                .iter()
                .flat_map(|&n| params.server_range(n))
                .collect();
            independence_tables(params, *theta, states, ConstraintKind::DbPrivacyEve, &cols, false)
        }
        (Observer::User, PrivacyCheck::MessageIndependence { theta }) => {
            let cols: Vec<usize> = (0..params.blocklength()).collect();
            independence_tables(params, *theta, states, ConstraintKind::DbPrivacyUser, &cols, true)
        }
        (Observer::User, PrivacyCheck::ThetaIndistinguishability { .. }) => {
            Err(VerifierError::UnsupportedCheck(
                "the user knows its own retrieval index".to_string(),
            ))
        }
        (Observer::Colluders(_), PrivacyCheck::MessageIndependence { .. }) => {
            Err(VerifierError::UnsupportedCheck(
                "colluding servers hold the messages; compare retrieval indices instead"
                    .to_string(),
            ))
        }
    }
}

/// Distribution of a server set's view under retrieval index `theta`. The
/// view is its query vectors and answers, joined with the messages and the
/// secret when `include_secrets` is set.
fn view_table(
    params: &SchemeParams,
    set: &ServerSet,
    theta: usize,
    include_secrets: bool,
    states: u64,
) -> Result<DistributionTable, VerifierError> {
    let cols: Vec<usize> = set
        .members()
        .iter()
        .flat_map(|&n| params.server_range(n))
        .collect();
    let mut counts: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    enumerate_states(params, theta, |view| {
        let mut key = view.observed_key(&cols);
        if include_secrets {
            key.extend_from_slice(&view.messages);
            key.extend_from_slice(&view.secret);
        }
        *counts.entry(key).or_insert(0) += 1;
    })?;
    Ok(DistributionTable::from_counts(counts, states))
}

/// Joint table over (view, message slice) against the product of its
/// marginals. `undesired_only` drops the retrieved message from the slice,
/// which is the user-side reading of independence.
fn independence_tables(
    params: &SchemeParams,
    theta: usize,
    states: u64,
    constraint: ConstraintKind,
    cols: &[usize],
    undesired_only: bool,
) -> Result<ExhaustiveCertificate, VerifierError> {
    let mut joint: BTreeMap<(Vec<u64>, Vec<u64>), u64> = BTreeMap::new();
    enumerate_states(params, theta, |view| {
        let key = view.observed_key(cols);
        let w_part = if undesired_only {
            view.undesired_messages(theta)
        } else {
            view.messages.clone()
        };
        *joint.entry((key, w_part)).or_insert(0) += 1;
    })?;

    let mut view_marginal: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    let mut w_marginal: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for ((v, w), c) in &joint {
        *view_marginal.entry(v.clone()).or_insert(0) += c;
        *w_marginal.entry(w.clone()).or_insert(0) += c;
    }

    // Exact product of marginals over the full cartesian support.
    let total = Rational::from(states as usize);
    let mut product_entries: BTreeMap<Vec<u64>, Rational> = BTreeMap::new();
    for (v, cv) in &view_marginal {
        for (w, cw) in &w_marginal {
            let mut key = v.clone();
            key.extend_from_slice(w);
            let p = (Rational::from(*cv as usize) / total.clone())
                * (Rational::from(*cw as usize) / total.clone());
            product_entries.insert(key, p);
        }
    }
    let product = DistributionTable {
        entries: product_entries,
    };

    let joint_entries: BTreeMap<Vec<u64>, Rational> = joint
        .into_iter()
        .map(|((v, w), c)| {
            let mut key = v;
            key.extend_from_slice(&w);
            (key, Rational::from(c as usize) / total.clone())
        })
        .collect();
    let joint_table = DistributionTable {
        entries: joint_entries,
    };

    Ok(ExhaustiveCertificate {
        constraint,
        pass: joint_table == product,
        table_a: joint_table,
        table_b: product,
        states_enumerated: states,
    })
}

/// One enumerated state, everything an observer key could need.
struct StateView {
    /// All query vectors, flattened per column.
    query_columns: Vec<Vec<u64>>,
    answers: Vec<u64>,
    messages: Vec<u64>,
    secret: Vec<u64>,
    msg_len: usize,
}

impl StateView {
    fn observed_key(&self, cols: &[usize]) -> Vec<u64> {
        let mut key = Vec::new();
        for &j in cols {
            key.extend_from_slice(&self.query_columns[j]);
        }
        for &j in cols {
            key.push(self.answers[j]);
        }
        key
    }

    fn undesired_messages(&self, theta: usize) -> Vec<u64> {
        let l = self.msg_len;
        self.messages
            .iter()
            .enumerate()
            .filter(|(i, _)| i / l != theta - 1)
            .map(|(_, &v)| v)
            .collect()
    }
}

fn enumerate_states(
    params: &SchemeParams,
    theta: usize,
    mut visit: impl FnMut(&StateView),
) -> Result<(), VerifierError> {
    let field = params.field();
    let q = field.modulus();
    let kl = params.stacked_len();
    let k = params.code_dim();
    let n_digits = kl * k + k + kl;
    let mut digits = vec![0u64; n_digits];
    loop {
        // Layout: user randomness (row-major KL x k), then secret, then
        // stacked messages.
        let u = FieldMatrix::from_values(field, kl, k, &digits[..kl * k])
            .expect("digit count matches");
        let secret_digits = &digits[kl * k..kl * k + k];
        let message_digits = &digits[kl * k + k..];

        let queries = queries_from_randomness(params, theta, u)?;
        let secret = secret_digits.iter().map(|&v| field.element(v)).collect();
        let cr = common_randomness_from_secret(params, secret);
        let store = MessageStore::from_values(params, message_digits)?;
        let mut answers = Vec::with_capacity(params.blocklength());
        for n in 0..params.n_servers() {
            answers.extend(answer_server(params, n, &queries, &store, &cr));
        }

        let view = StateView {
            query_columns: (0..params.blocklength())
                .map(|j| queries.query_vector(j).iter().map(|e| e.value()).collect())
                .collect(),
            answers: answers.iter().map(|e| e.value()).collect(),
            messages: message_digits.to_vec(),
            secret: secret_digits.to_vec(),
            msg_len: params.msg_len(),
        };
        visit(&view);

        // Odometer step.
        let mut pos = 0;
        loop {
            if pos == n_digits {
                return Ok(());
            }
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Per-server counts that overload `set` by one query: one extra query for a
/// member, one fewer for some donor outside the set. Returns `None` when no
/// donor has a query to give. Feeding the result to
/// [`SchemeParams::with_per_server_counts`] yields an instance every sound
/// certificate suite must reject.
pub fn overload_counts(params: &SchemeParams, set: &ServerSet) -> Option<Vec<usize>> {
    let mut counts = params.per_server_counts().to_vec();
    let donor = (0..params.n_servers()).find(|n| !set.contains(*n) && counts[*n] > 0)?;
    let receiver = set.members().first().copied()?;
    counts[donor] -= 1;
    counts[receiver] += 1;
    Some(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::PatternKind;
    use crate::protocol::plan_scheme;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn worked_example() -> (SchemeParams, Pattern, Pattern) {
        let pc = Pattern::from_one_based(
            5,
            PatternKind::Collusion,
            &[&[1, 2], &[1, 4], &[2, 4], &[3, 4], &[5]],
        )
        .unwrap();
        let pe =
            Pattern::from_one_based(5, PatternKind::Eavesdropping, &[&[1, 2, 3], &[2, 4], &[5]])
                .unwrap();
        let joint = pc.join(&pe).unwrap();
        let y = vec![rat(1, 3), rat(1, 3), rat(1, 3), rat(2, 3), rat(1, 1)];
        let params = plan_scheme(&y, 3, &joint).unwrap();
        (params, pc, pe)
    }

    fn micro() -> (SchemeParams, Pattern) {
        let joint = Pattern::singletons(2, PatternKind::Joint).unwrap();
        let params = plan_scheme(&[Rational::one(), Rational::one()], 2, &joint).unwrap();
        (params, joint)
    }

    #[test]
    fn user_privacy_rank_on_worked_example() {
        let (params, pc, _) = worked_example();
        let cert = verify_user_privacy_rank(&params, &pc);
        assert!(cert.pass);
        // {1,2} sees 2 queries, every other set 3; all blocks full rank.
        let by_set: Vec<(String, usize, usize)> = cert
            .set_witnesses
            .iter()
            .map(|w| (w.set.to_string(), w.queries_seen, w.column_rank))
            .collect();
        assert!(by_set.contains(&("{1,2}".to_string(), 2, 2)));
        assert!(by_set.contains(&("{5}".to_string(), 3, 3)));
        assert!(by_set.contains(&("{3,4}".to_string(), 3, 3)));
    }

    #[test]
    fn eve_privacy_rank_on_worked_example() {
        let (params, _, pe) = worked_example();
        let cert = verify_eve_privacy_rank(&params, &pe);
        assert!(cert.pass);
        assert!(cert.set_witnesses.iter().all(|w| w.queries_seen == 3));
    }

    #[test]
    fn eve_privacy_vacuous_on_empty_pattern() {
        let (params, _, _) = worked_example();
        let empty = Pattern::new(5, PatternKind::Eavesdropping, vec![]).unwrap();
        let cert = verify_eve_privacy_rank(&params, &empty);
        assert!(cert.pass);
        assert!(cert.set_witnesses.is_empty());
    }

    #[test]
    fn overloaded_assignment_fails_rank_check() {
        let (params, _, _) = worked_example();
        // Give server 5 a fourth query at server 4's expense: the singleton
        // set {5} now sees more blocks than the code dimension.
        let tampered = params
            .clone()
            .with_per_server_counts(vec![1, 1, 1, 1, 4])
            .unwrap();
        let p5 = Pattern::from_one_based(5, PatternKind::Collusion, &[&[5]]).unwrap();
        let cert = verify_user_privacy_rank(&tampered, &p5);
        assert!(!cert.pass);
        assert_eq!(cert.set_witnesses[0].queries_seen, 4);
    }

    #[test]
    fn checking_against_a_larger_pattern_fails() {
        // Planned for the worked-example joint, then asked about {4,5},
        // which sees 5 > 3 answers.
        let (params, _, _) = worked_example();
        let bigger = Pattern::from_one_based(5, PatternKind::Eavesdropping, &[&[4, 5]]).unwrap();
        let cert = verify_eve_privacy_rank(&params, &bigger);
        assert!(!cert.pass);
    }

    #[test]
    fn singleton_pattern_single_queries_pass() {
        let (params, joint) = micro();
        let cert = verify_user_privacy_rank(&params, &joint);
        assert!(cert.pass);
        assert!(cert
            .set_witnesses
            .iter()
            .all(|w| w.queries_seen == 1 && w.column_rank == 1));
    }

    #[test]
    fn db_privacy_user_passes_with_identity_mask_map() {
        let (params, _, _) = worked_example();
        let cert = verify_db_privacy_user(&params);
        assert!(cert.pass);
        assert_eq!(cert.mask_map, vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn db_privacy_fails_without_masks() {
        let (params, _) = micro();
        let degenerate = params.zero_code_dim_for_tests();
        let cert = verify_db_privacy_user(&degenerate);
        assert!(!cert.pass);
        assert!(cert.mask_map.is_empty());
    }

    #[test]
    fn correctness_sweep_passes() {
        let (params, _, _) = worked_example();
        let cert = verify_correctness_sweep(&params, 50, 11);
        assert!(cert.pass, "{:?}", cert.notes);
    }

    #[test]
    fn exhaustive_theta_tables_match_on_micro() {
        let (params, _) = micro();
        for server in 0..2 {
            let observer =
                Observer::Colluders(ServerSet::from_zero_based(&[server]).unwrap());
            let cert = exhaustive_privacy(
                &params,
                &observer,
                &PrivacyCheck::ThetaIndistinguishability {
                    theta_a: 1,
                    theta_b: 2,
                },
                1 << 20,
            )
            .unwrap();
            assert!(cert.pass, "server {server} view distinguishes theta");
            assert!(cert.table_a.total().is_one());
            assert!(cert.table_b.total().is_one());
        }
    }

    #[test]
    fn exhaustive_eve_independence_on_micro() {
        let (params, _) = micro();
        for server in 0..2 {
            for theta in 1..=2 {
                let observer =
                    Observer::Eavesdropper(ServerSet::from_zero_based(&[server]).unwrap());
                let cert = exhaustive_privacy(
                    &params,
                    &observer,
                    &PrivacyCheck::MessageIndependence { theta },
                    1 << 20,
                )
                .unwrap();
                assert!(cert.pass);
                assert!(cert.table_a.total().is_one());
            }
        }
    }

    #[test]
    fn exhaustive_user_independence_on_micro() {
        let (params, _) = micro();
        for theta in 1..=2 {
            let cert = exhaustive_privacy(
                &params,
                &Observer::User,
                &PrivacyCheck::MessageIndependence { theta },
                1 << 20,
            )
            .unwrap();
            assert!(cert.pass);
        }
    }

    #[test]
    fn exhaustive_check_refuses_large_instances() {
        let (params, _, _) = worked_example();
        let observer = Observer::User;
        let err = exhaustive_privacy(
            &params,
            &observer,
            &PrivacyCheck::MessageIndependence { theta: 1 },
            1 << 20,
        )
        .unwrap_err();
        assert!(matches!(err, VerifierError::BudgetExceeded { .. }));
    }

    #[test]
    fn rank_and_exhaustive_agree_on_tampered_micro() {
        // Moving both queries to server 2 overloads {2}: the rank
        // certificate fails and the exhaustive table comparison fails too.
        let (params, joint) = micro();
        let tampered = params.with_per_server_counts(vec![0, 2]).unwrap();
        let rank_cert = verify_user_privacy_rank(&tampered, &joint);
        assert!(!rank_cert.pass);

        let observer = Observer::Colluders(ServerSet::from_zero_based(&[1]).unwrap());
        let exhaustive = exhaustive_privacy(
            &tampered,
            &observer,
            &PrivacyCheck::ThetaIndistinguishability {
                theta_a: 1,
                theta_b: 2,
            },
            1 << 20,
        )
        .unwrap();
        assert!(!exhaustive.pass);
    }

    #[test]
    fn overload_counts_shift_one_query() {
        let (params, _, _) = worked_example();
        for set in params.joint_pattern().sets() {
            let counts = overload_counts(&params, set).unwrap();
            assert_eq!(counts.iter().sum::<usize>(), params.blocklength());
            let load: usize = set.members().iter().map(|&n| counts[n]).sum();
            assert_eq!(load, params.code_dim() + 1);
        }
    }

    #[test]
    fn unsupported_combinations_are_rejected() {
        let (params, _) = micro();
        let colluders = Observer::Colluders(ServerSet::from_zero_based(&[0]).unwrap());
        assert!(matches!(
            exhaustive_privacy(
                &params,
                &colluders,
                &PrivacyCheck::MessageIndependence { theta: 1 },
                1 << 20
            ),
            Err(VerifierError::UnsupportedCheck(_))
        ));
        assert!(matches!(
            exhaustive_privacy(
                &params,
                &Observer::User,
                &PrivacyCheck::ThetaIndistinguishability { theta_a: 1, theta_b: 2 },
                1 << 20
            ),
            Err(VerifierError::UnsupportedCheck(_))
        ));
    }
}
