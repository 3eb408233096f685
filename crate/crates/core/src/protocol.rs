//! The achievable retrieval scheme.
//!
//! Planning starts from any rational vector `y` that is feasible for the
//! packing LP of the joint pattern and sums to `f > 1`. The blocklength
//! `l_bar` is the least integer making `l_bar`, `l_bar/f` and every
//! `y_n * l_bar / f` integral; messages have `L = l_bar - k` symbols with
//! `k = l_bar / f`. The user hides its index inside `l_bar` query vectors
//! built from `k` uniform vectors encoded by an `(l_bar, k)` GRS code plus
//! unit-vector offsets; servers answer inner products masked by the encoded
//! common randomness; the user inverts the stacked code-plus-identity matrix
//! to recover the message and `k` masked side values, and nothing else.
//!
//! Every instance is exactly reproducible from `(params, messages, theta,
//! seed)`.

use std::ops::Range;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::field::{choose_field, FieldElement, FieldError, FieldMatrix, PrimeField};
use crate::grs::{build_grs, GrsError, GrsGenerator};
use crate::lp::is_packing_feasible;
use crate::pattern::Pattern;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProtocolError {
    #[error("the model needs at least two messages, got {given}")]
    TooFewMessages { given: usize },
    #[error("query allocation vector has {given} entries for {expected} servers")]
    WrongAllocationArity { given: usize, expected: usize },
    #[error("allocation vector is not feasible for the joint pattern (some set sums above 1 or an entry is negative)")]
    InfeasibleAllocation,
    #[error("allocation sums to {f} <= 1, leaving no room for message symbols")]
    AllocationNotAboveOne { f: Rational },
    #[error("retrieval index {theta} out of range 1..={n_messages}")]
    ThetaOutOfRange { theta: usize, n_messages: usize },
    #[error("planned blocklength {l_bar} exceeds the supported bound {bound}")]
    BlocklengthTooLarge { l_bar: String, bound: usize },
    #[error("count override must keep the total at {expected} queries, got {given}")]
    WrongCountTotal { given: usize, expected: usize },
    #[error("expected {expected} answers, got {given}")]
    WrongAnswerCount { given: usize, expected: usize },
    #[error(transparent)]
    Grs(#[from] GrsError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Largest blocklength the planner will accept. Keeps pathological inputs
/// from allocating huge query matrices.
pub const MAX_BLOCKLENGTH: usize = 1 << 20;

/// Everything a scheme instance is made of. Immutable once planned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeParams {
    n_servers: usize,
    n_messages: usize,
    y: Vec<Rational>,
    f: Rational,
    l_bar: usize,
    msg_len: usize,
    code_dim: usize,
    field: PrimeField,
    per_server_counts: Vec<usize>,
    grs: GrsGenerator,
    joint: Pattern,
}

/// Plan a scheme instance from a feasible allocation vector over the joint
/// pattern.
///
/// The blocklength is minimal: the lcm of the reduced denominators of `1/f`
/// and of each `y_n / f`. The field is the smallest prime with `l_bar`
/// evaluation points and the generator matrix is MDS-certified before the
/// parameters are released.
pub fn plan_scheme(
    y: &[Rational],
    n_messages: usize,
    joint: &Pattern,
) -> Result<SchemeParams, ProtocolError> {
    if n_messages < 2 {
        return Err(ProtocolError::TooFewMessages { given: n_messages });
    }
    let n_servers = joint.n_servers();
    if y.len() != n_servers {
        return Err(ProtocolError::WrongAllocationArity {
            given: y.len(),
            expected: n_servers,
        });
    }
    let b = joint.incidence_matrix();
    if !is_packing_feasible(&b, y) {
        return Err(ProtocolError::InfeasibleAllocation);
    }
    let f: Rational = y.iter().sum();
    if !(&f - &Rational::one()).is_positive() {
        return Err(ProtocolError::AllocationNotAboveOne { f });
    }

    // l_bar = lcm of the denominators of 1/f and y_n/f, all in lowest terms.
    let mut l_bar_big: BigInt = f.recip().denom().clone();
    for y_n in y {
        l_bar_big = l_bar_big.lcm((y_n / &f).denom());
    }
    let l_bar = l_bar_big
        .to_usize()
        .filter(|&v| v <= MAX_BLOCKLENGTH)
        .ok_or(ProtocolError::BlocklengthTooLarge {
            l_bar: l_bar_big.to_string(),
            bound: MAX_BLOCKLENGTH,
        })?;

    let l_bar_rat = Rational::from(l_bar);
    let code_dim_rat = &l_bar_rat / &f;
    let code_dim = code_dim_rat
        .to_integer()
        .expect("l_bar/f is integral by the lcm construction")
        .to_usize()
        .expect("code dimension fits below the blocklength bound");
    let msg_len = l_bar - code_dim;
    debug_assert!(msg_len >= 1, "f > 1 forces at least one message symbol");

    let per_server_counts: Vec<usize> = y
        .iter()
        .map(|y_n| {
            (y_n * &code_dim_rat)
                .to_integer()
                .expect("y_n * l_bar / f is integral by the lcm construction")
                .to_usize()
                .expect("counts are bounded by the blocklength")
        })
        .collect();
    debug_assert_eq!(per_server_counts.iter().sum::<usize>(), l_bar);
    debug_assert!(joint.sets().iter().all(|set| {
        set.members()
            .iter()
            .map(|&n| per_server_counts[n])
            .sum::<usize>()
            <= code_dim
    }));

    let field = choose_field(l_bar);
    let grs = build_grs(l_bar, code_dim, field)?;
    assert!(grs.check_mds(), "classical RS generators are MDS");

    Ok(SchemeParams {
        n_servers,
        n_messages,
        y: y.to_vec(),
        f,
        l_bar,
        msg_len,
        code_dim,
        field,
        per_server_counts,
        grs,
        joint: joint.clone(),
    })
}

impl SchemeParams {
    pub fn n_servers(&self) -> usize {
        self.n_servers
    }

    pub fn n_messages(&self) -> usize {
        self.n_messages
    }

    pub fn allocation(&self) -> &[Rational] {
        &self.y
    }

    /// Sum of the allocation vector; the effective server count the instance
    /// was planned against.
    pub fn f(&self) -> &Rational {
        &self.f
    }

    pub fn blocklength(&self) -> usize {
        self.l_bar
    }

    pub fn msg_len(&self) -> usize {
        self.msg_len
    }

    pub fn code_dim(&self) -> usize {
        self.code_dim
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn per_server_counts(&self) -> &[usize] {
        &self.per_server_counts
    }

    pub fn grs(&self) -> &GrsGenerator {
        &self.grs
    }

    pub fn joint_pattern(&self) -> &Pattern {
        &self.joint
    }

    /// Stacked message length `K * L`.
    pub fn stacked_len(&self) -> usize {
        self.n_messages * self.msg_len
    }

    /// Query indices assigned to `server` (0-based): contiguous blocks in
    /// server order.
    pub fn server_range(&self, server: usize) -> Range<usize> {
        let start: usize = self.per_server_counts[..server].iter().sum();
        start..start + self.per_server_counts[server]
    }

    /// Common-randomness amount per message symbol: `k / L`, always equal to
    /// `1 / (f - 1)`.
    pub fn rho(&self) -> Rational {
        Rational::from(self.code_dim) / Rational::from(self.msg_len)
    }

    /// Exact download rate `L / l_bar`, always equal to `1 - 1/f`.
    pub fn rate(&self) -> Rational {
        Rational::from(self.msg_len) / Rational::from(self.l_bar)
    }

    /// Same plan over a caller-chosen field (still needs `l_bar` distinct
    /// points). The default plan takes the smallest usable prime.
    pub fn with_field(mut self, field: PrimeField) -> Result<Self, ProtocolError> {
        let grs = build_grs(self.l_bar, self.code_dim, field)?;
        assert!(grs.check_mds(), "classical RS generators are MDS");
        self.field = field;
        self.grs = grs;
        Ok(self)
    }

    /// Test-only degenerate block: pretends the scheme has no common
    /// randomness at all, which planning forbids.
    #[cfg(test)]
    pub(crate) fn zero_code_dim_for_tests(mut self) -> Self {
        self.code_dim = 0;
        self
    }

    /// Replace the per-server query counts, keeping the total. This
    /// deliberately skips the per-set load checks: it exists so the verifier
    /// can manufacture overloaded instances and prove its certificates catch
    /// them.
    pub fn with_per_server_counts(
        mut self,
        counts: Vec<usize>,
    ) -> Result<Self, ProtocolError> {
        if counts.len() != self.n_servers {
            return Err(ProtocolError::WrongAllocationArity {
                given: counts.len(),
                expected: self.n_servers,
            });
        }
        let total: usize = counts.iter().sum();
        if total != self.l_bar {
            return Err(ProtocolError::WrongCountTotal {
                given: total,
                expected: self.l_bar,
            });
        }
        self.per_server_counts = counts;
        Ok(self)
    }
}

/// Exact download rate of a planned instance.
pub fn measure_rate(params: &SchemeParams) -> Rational {
    params.rate()
}

/// The database contents: `K` messages of `L` symbols each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageStore {
    n_messages: usize,
    msg_len: usize,
    symbols: FieldMatrix,
}

impl MessageStore {
    pub fn random<R: Rng + ?Sized>(params: &SchemeParams, rng: &mut R) -> Self {
        let field = params.field();
        let symbols = FieldMatrix::from_fn(field, params.n_messages, params.msg_len, |_, _| {
            field.sample(rng)
        })
        .expect("sampled in the scheme field");
        MessageStore {
            n_messages: params.n_messages,
            msg_len: params.msg_len,
            symbols,
        }
    }

    /// Row-major values: message 1's symbols first.
    pub fn from_values(params: &SchemeParams, values: &[u64]) -> Result<Self, ProtocolError> {
        let symbols = FieldMatrix::from_values(
            params.field(),
            params.n_messages,
            params.msg_len,
            values,
        )?;
        Ok(MessageStore {
            n_messages: params.n_messages,
            msg_len: params.msg_len,
            symbols,
        })
    }

    pub fn n_messages(&self) -> usize {
        self.n_messages
    }

    pub fn msg_len(&self) -> usize {
        self.msg_len
    }

    /// Message `theta` (1-based) as a symbol vector.
    pub fn message(&self, theta: usize) -> Vec<FieldElement> {
        self.symbols.row(theta - 1)
    }

    /// All messages stacked into one `K*L` column: symbol `j` of message `t`
    /// sits at position `(t-1)*L + j`.
    pub fn stacked(&self) -> Vec<FieldElement> {
        (0..self.n_messages)
            .flat_map(|t| self.symbols.row(t))
            .collect()
    }
}

/// The user's query side of one session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySet {
    theta: usize,
    user_randomness: FieldMatrix, // KL x k, columns are U_1..U_k
    query_matrix: FieldMatrix,    // KL x l_bar, columns are the query vectors
    assignment: Vec<Range<usize>>,
}

impl QuerySet {
    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn n_queries(&self) -> usize {
        self.query_matrix.cols()
    }

    pub fn query_vector(&self, index: usize) -> Vec<FieldElement> {
        self.query_matrix.column(index)
    }

    pub fn query_matrix(&self) -> &FieldMatrix {
        &self.query_matrix
    }

    pub fn user_randomness(&self) -> &FieldMatrix {
        &self.user_randomness
    }

    pub fn server_range(&self, server: usize) -> Range<usize> {
        self.assignment[server].clone()
    }
}

/// Sample the user randomness and derive the query vectors.
pub fn generate_queries<R: Rng + ?Sized>(
    params: &SchemeParams,
    theta: usize,
    rng: &mut R,
) -> Result<QuerySet, ProtocolError> {
    let field = params.field();
    let u = FieldMatrix::from_fn(field, params.stacked_len(), params.code_dim, |_, _| {
        field.sample(rng)
    })
    .expect("sampled in the scheme field");
    queries_from_randomness(params, theta, u)
}

/// Deterministic query derivation from explicit user randomness `u`
/// (`KL x k`). Query `j` is column `j` of `u * G` plus, for the last `L`
/// columns, the unit vector selecting symbol `j - (l_bar - L)` of message
/// `theta`.
pub fn queries_from_randomness(
    params: &SchemeParams,
    theta: usize,
    u: FieldMatrix,
) -> Result<QuerySet, ProtocolError> {
    if theta == 0 || theta > params.n_messages {
        return Err(ProtocolError::ThetaOutOfRange {
            theta,
            n_messages: params.n_messages,
        });
    }
    if u.rows() != params.stacked_len() || u.cols() != params.code_dim {
        return Err(ProtocolError::WrongAllocationArity {
            given: u.rows() * u.cols(),
            expected: params.stacked_len() * params.code_dim,
        });
    }
    let mut query_matrix = u.mul(params.grs.matrix())?;
    let offset_start = params.l_bar - params.msg_len;
    let one = params.field.one();
    for j in 0..params.msg_len {
        let row = (theta - 1) * params.msg_len + j;
        let col = offset_start + j;
        let v = query_matrix.get(row, col) + one;
        query_matrix.set(row, col, v);
    }
    let assignment = (0..params.n_servers)
        .map(|n| params.server_range(n))
        .collect();
    Ok(QuerySet {
        theta,
        user_randomness: u,
        query_matrix,
        assignment,
    })
}

/// The servers' shared secret for one session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonRandomness {
    s: Vec<FieldElement>,     // length k
    s_bar: Vec<FieldElement>, // length l_bar, the GRS encoding of s
}

impl CommonRandomness {
    pub fn secret(&self) -> &[FieldElement] {
        &self.s
    }

    pub fn encoded(&self) -> &[FieldElement] {
        &self.s_bar
    }
}

/// Draw `S` uniformly and precompute its GRS encoding.
pub fn sample_common_randomness<R: Rng + ?Sized>(
    params: &SchemeParams,
    rng: &mut R,
) -> CommonRandomness {
    let field = params.field();
    let s: Vec<FieldElement> = (0..params.code_dim).map(|_| field.sample(rng)).collect();
    common_randomness_from_secret(params, s)
}

/// Deterministic variant for enumeration and replay.
pub fn common_randomness_from_secret(
    params: &SchemeParams,
    s: Vec<FieldElement>,
) -> CommonRandomness {
    assert_eq!(s.len(), params.code_dim);
    let field = params.field();
    let g = params.grs.matrix();
    let s_bar = (0..params.l_bar)
        .map(|j| {
            (0..params.code_dim).fold(field.zero(), |acc, i| acc + s[i] * g.get(i, j))
        })
        .collect();
    CommonRandomness { s, s_bar }
}

/// Answers of one server: for each assigned query, the inner product of the
/// query vector with the stacked messages plus the matching encoded
/// randomness symbol. The server reads only its own block of the query set.
pub fn answer_server(
    params: &SchemeParams,
    server: usize,
    queries: &QuerySet,
    store: &MessageStore,
    cr: &CommonRandomness,
) -> Vec<FieldElement> {
    let stacked = store.stacked();
    let field = params.field();
    queries
        .server_range(server)
        .map(|j| {
            let inner = (0..stacked.len()).fold(field.zero(), |acc, i| {
                acc + queries.query_matrix.get(i, j) * stacked[i]
            });
            inner + cr.encoded()[j]
        })
        .collect()
}

/// Invert the stacked `[G; 0 I]` matrix and split the answer vector into the
/// `k` masked side values and the `L` message symbols.
pub fn decode(
    params: &SchemeParams,
    answers: &[FieldElement],
) -> Result<(Vec<FieldElement>, Vec<FieldElement>), ProtocolError> {
    if answers.len() != params.l_bar {
        return Err(ProtocolError::WrongAnswerCount {
            given: answers.len(),
            expected: params.l_bar,
        });
    }
    let stacked = stacked_decoding_matrix(params);
    // Row vector equation x * M = answers, solved as M' x' = answers'.
    let rhs = FieldMatrix::from_fn(params.field, params.l_bar, 1, |r, _| answers[r])?;
    let solved = stacked
        .transpose()
        .solve(&rhs)
        .expect("stacked matrix is invertible whenever the generator is MDS");
    let x: Vec<FieldElement> = (0..params.l_bar).map(|r| solved.get(r, 0)).collect();
    let side = x[..params.code_dim].to_vec();
    let message = x[params.code_dim..].to_vec();
    Ok((message, side))
}

/// `[G on top of (0 | I)]`, the l_bar x l_bar matrix the decoder inverts.
pub fn stacked_decoding_matrix(params: &SchemeParams) -> FieldMatrix {
    let field = params.field();
    let g = params.grs.matrix();
    let k = params.code_dim;
    FieldMatrix::from_fn(field, params.l_bar, params.l_bar, |r, c| {
        if r < k {
            g.get(r, c)
        } else if c == r {
            // The identity block sits in the last L columns: row k + j has
            // its one at column k + j.
            field.one()
        } else {
            field.zero()
        }
    })
    .expect("built in the scheme field")
}

/// Complete record of one session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub seed: u64,
    pub theta: usize,
    pub modulus: u64,
    pub n_servers: usize,
    pub n_messages: usize,
    pub msg_len: usize,
    pub code_dim: usize,
    /// Per server: the half-open `[start, end)` block of query indices.
    pub assignment: Vec<(usize, usize)>,
    /// Columns `U_1..U_k`, each of length `K * L`.
    pub user_randomness: Vec<Vec<u64>>,
    /// Query vectors `Q_1..Q_l_bar`, each of length `K * L`.
    pub queries: Vec<Vec<u64>>,
    /// The servers' shared secret `S`.
    pub common_randomness: Vec<u64>,
    /// GRS encoding of `S`, one mask per answer.
    pub encoded_randomness: Vec<u64>,
    pub answers: Vec<u64>,
    pub decoded: Vec<u64>,
    pub side_values: Vec<u64>,
}

/// Run one full session: queries, per-server answers, decoding. Everything
/// is derived from the seed, so identical inputs give identical transcripts.
pub fn run_session(
    params: &SchemeParams,
    store: &MessageStore,
    theta: usize,
    seed: u64,
) -> Result<Transcript, ProtocolError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let queries = generate_queries(params, theta, &mut rng)?;
    let cr = sample_common_randomness(params, &mut rng);
    let mut answers: Vec<FieldElement> = Vec::with_capacity(params.l_bar);
    for server in 0..params.n_servers {
        answers.extend(answer_server(params, server, &queries, store, &cr));
    }
    let (decoded, side_values) = decode(params, &answers)?;
    Ok(Transcript {
        seed,
        theta,
        modulus: params.field.modulus(),
        n_servers: params.n_servers,
        n_messages: params.n_messages,
        msg_len: params.msg_len,
        code_dim: params.code_dim,
        assignment: (0..params.n_servers)
            .map(|n| {
                let r = params.server_range(n);
                (r.start, r.end)
            })
            .collect(),
        user_randomness: (0..params.code_dim)
            .map(|l| {
                (0..params.stacked_len())
                    .map(|i| queries.user_randomness.get(i, l).value())
                    .collect()
            })
            .collect(),
        queries: (0..params.l_bar)
            .map(|j| queries.query_vector(j).iter().map(|e| e.value()).collect())
            .collect(),
        common_randomness: cr.secret().iter().map(|e| e.value()).collect(),
        encoded_randomness: cr.encoded().iter().map(|e| e.value()).collect(),
        answers: answers.iter().map(|e| e.value()).collect(),
        decoded: decoded.iter().map(|e| e.value()).collect(),
        side_values: side_values.iter().map(|e| e.value()).collect(),
    })
}
