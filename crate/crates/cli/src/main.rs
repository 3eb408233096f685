//! `spir` — capacity reports, scheme planning, simulation and verification
//! for symmetric private information retrieval under arbitrary collusion and
//! eavesdropping patterns.
//!
//! Exit codes: 0 success, 2 invalid pattern or malformed input, 3 randomness
//! below the threshold, 4 verification failure, 1 internal error.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spir_core::capacity::{spir_capacity, symmetric_pattern, CapacityError, CapacityReport};
use spir_core::pattern::{Pattern, PatternError, PatternKind, PatternSpec};
use spir_core::protocol::{plan_scheme, run_session, MessageStore, SchemeParams, Transcript};
use spir_core::verifier::{
    exhaustive_privacy, verify_correctness_sweep, verify_db_privacy_user, verify_eve_privacy_rank,
    verify_user_privacy_rank, CheckMethod, Observer, PrivacyCheck, VerifierError,
};
use spir_core::{verify_duality, Rational};

#[derive(Parser)]
#[command(
    name = "spir",
    version,
    about = "Exact SPIR capacity and verifiable retrieval schemes under arbitrary collusion/eavesdropping patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct PatternArgs {
    /// Pattern file path, "-" for stdin, or an inline JSON object like
    /// {"n":5,"collusion":[[1,2]],"eavesdropping":[]}
    #[arg(long)]
    pattern: String,
}

#[derive(Args)]
#[command(group(ArgGroup::new("randomness").required(true).args(["rho", "force_threshold"])))]
struct RandomnessArgs {
    /// Available common randomness per message symbol, as an exact fraction
    /// "num/den" (floats are rejected)
    #[arg(long)]
    rho: Option<String>,
    /// Use exactly the threshold 1/(F*-1) as the randomness amount
    #[arg(long)]
    force_threshold: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Joint pattern, F*, optimal allocation, capacity and randomness threshold
    Capacity {
        #[command(flatten)]
        pattern: PatternArgs,
        /// Optional randomness amount "num/den"; without it the report is
        /// conditional on meeting the threshold
        #[arg(long)]
        rho: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Plan a scheme instance: blocklength, message length, code dimension,
    /// field, per-server query counts
    Scheme {
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        randomness: RandomnessArgs,
        /// Number of messages stored by the servers (at least 2)
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run seeded retrieval sessions and emit transcripts; the last output
    /// line is the exact download rate
    Simulate {
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        randomness: RandomnessArgs,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sessions; the retrieval index cycles through 1..=k
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Write the transcript array to this file instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Run every certificate against a planned instance
    Verify {
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        randomness: RandomnessArgs,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials for the correctness sweep
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// State budget for exhaustive distribution checks; instances above
        /// it are skipped, not failed
        #[arg(long, default_value_t = 1 << 20)]
        budget: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Duality spot-checks on random patterns plus the symmetric closed-form
    /// sweep
    Selftest {
        /// Number of random patterns
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on the random pattern size (2..=6)
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

enum CliError {
    InvalidInput(String),
    InsufficientRho { given: Rational, threshold: Rational },
    VerificationFailed(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidInput(_) => 2,
            CliError::InsufficientRho { .. } => 3,
            CliError::VerificationFailed(_) => 4,
            CliError::Internal(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::InvalidInput(m) => format!("error: {m}"),
            CliError::InsufficientRho { given, threshold } => format!(
                "error: rho = {given} is below the threshold {threshold}; \
                 with less shared randomness than 1/(F*-1) per message symbol the capacity is zero \
                 and no scheme exists"
            ),
            CliError::VerificationFailed(m) => format!("verification failed: {m}"),
            CliError::Internal(m) => format!("internal error: {m}"),
        }
    }
}

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        CliError::InvalidInput(e.to_string())
    }
}

impl From<CapacityError> for CliError {
    fn from(e: CapacityError) -> Self {
        match e {
            CapacityError::Pattern(p) => p.into(),
            CapacityError::InvalidParameter(m) => CliError::InvalidInput(m),
            CapacityError::Lp(l) => CliError::Internal(l.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Capacity {
            pattern,
            rho,
            format,
        } => cmd_capacity(&pattern.pattern, rho.as_deref(), format),
        Command::Scheme {
            pattern,
            randomness,
            k,
            format,
        } => cmd_scheme(&pattern.pattern, &randomness, k, format),
        Command::Simulate {
            pattern,
            randomness,
            k,
            seed,
            trials,
            out,
        } => cmd_simulate(&pattern.pattern, &randomness, k, seed, trials, out.as_deref()),
        Command::Verify {
            pattern,
            randomness,
            k,
            seed,
            trials,
            budget,
            format,
        } => cmd_verify(&pattern.pattern, &randomness, k, seed, trials, budget, format),
        Command::Selftest {
            trials,
            seed,
            max_n,
        } => cmd_selftest(trials, seed, max_n),
    }
}

fn load_patterns(source: &str) -> Result<(Pattern, Pattern), CliError> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::InvalidInput(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(source)
            .map_err(|e| CliError::InvalidInput(format!("cannot read {source}: {e}")))?
    };
    let spec = PatternSpec::from_json(&text)
        .map_err(|e| CliError::InvalidInput(format!("bad pattern JSON: {e}")))?;
    let pc = spec.collusion_pattern()?;
    let pe = spec.eavesdropping_pattern()?;
    Ok((pc, pe))
}

fn parse_rho(text: &str) -> Result<Rational, CliError> {
    Rational::from_str(text).map_err(|e| CliError::InvalidInput(format!("bad rho {text:?}: {e}")))
}

fn display_rational(r: &Rational) -> String {
    format!("{r} (~{:.4})", r.to_f64())
}

fn cmd_capacity(pattern: &str, rho: Option<&str>, format: Format) -> Result<(), CliError> {
    let (pc, pe) = load_patterns(pattern)?;
    let rho = rho.map(parse_rho).transpose()?;
    let report = spir_capacity(&pc, &pe, rho.as_ref())?;
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(internal)?
        ),
        Format::Table => print!("{}", render_capacity_table(&report)),
    }
    Ok(())
}

fn render_capacity_table(report: &CapacityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "joint pattern     {}", report.joint_pattern);
    let added = if report.added_singletons.is_empty() {
        "(none)".to_string()
    } else {
        report
            .added_singletons
            .iter()
            .map(|n| format!("{{{n}}}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let _ = writeln!(out, "added singletons  {added}");
    let _ = writeln!(out, "F*                {}", display_rational(&report.f_star));
    let _ = writeln!(
        out,
        "y*                ({})",
        report
            .y_star
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(out, "capacity          {}", display_rational(&report.capacity));
    let _ = writeln!(
        out,
        "rho threshold     {}",
        display_rational(&report.rho_threshold)
    );
    match &report.rho_given {
        Some(r) => {
            let verdict = if report.achievable {
                "achievable"
            } else {
                "NOT achievable (capacity zero)"
            };
            let _ = writeln!(out, "rho given         {} -> {verdict}", display_rational(r));
        }
        None => {
            let _ = writeln!(out, "rho given         (none; capacity conditional on threshold)");
        }
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

/// Shared front half of scheme/simulate/verify: capacity report, threshold
/// gate, instance planning.
fn plan_instance(
    pattern: &str,
    randomness: &RandomnessArgs,
    k: usize,
) -> Result<(CapacityReport, SchemeParams, Rational), CliError> {
    let (pc, pe) = load_patterns(pattern)?;
    let report = spir_capacity(&pc, &pe, None)?;
    let rho_used = match (&randomness.rho, randomness.force_threshold) {
        (Some(text), _) => {
            let given = parse_rho(text)?;
            if given < report.rho_threshold {
                return Err(CliError::InsufficientRho {
                    given,
                    threshold: report.rho_threshold.clone(),
                });
            }
            given
        }
        (None, true) => report.rho_threshold.clone(),
        (None, false) => unreachable!("clap enforces the randomness group"),
    };
    let params = plan_scheme(&report.y_star, k, &report.joint_pattern)
        .map_err(|e| CliError::InvalidInput(e.to_string()))?;
    Ok((report, params, rho_used))
}

#[derive(serde::Serialize, serde::Deserialize)]
struct SchemeSummary {
    blocklength: usize,
    msg_len: usize,
    code_dim: usize,
    modulus: u64,
    per_server_counts: Vec<usize>,
    allocation: Vec<Rational>,
    rho_available: Rational,
    rho_consumed: Rational,
    rate: Rational,
}

fn scheme_summary(params: &SchemeParams, rho_available: &Rational) -> SchemeSummary {
    SchemeSummary {
        blocklength: params.blocklength(),
        msg_len: params.msg_len(),
        code_dim: params.code_dim(),
        modulus: params.field().modulus(),
        per_server_counts: params.per_server_counts().to_vec(),
        allocation: params.allocation().to_vec(),
        rho_available: rho_available.clone(),
        rho_consumed: params.rho(),
        rate: params.rate(),
    }
}

fn cmd_scheme(
    pattern: &str,
    randomness: &RandomnessArgs,
    k: usize,
    format: Format,
) -> Result<(), CliError> {
    let (_, params, rho_used) = plan_instance(pattern, randomness, k)?;
    let summary = scheme_summary(&params, &rho_used);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&summary).map_err(internal)?
        ),
        Format::Table => {
            println!("blocklength        {}", summary.blocklength);
            println!("message length     {}", summary.msg_len);
            println!("code dimension     {}", summary.code_dim);
            println!("field modulus      {}", summary.modulus);
            println!(
                "per-server counts  ({})",
                summary
                    .per_server_counts
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            println!("rho available      {}", display_rational(&summary.rho_available));
            println!("rho consumed       {}", display_rational(&summary.rho_consumed));
            println!("rate               {}", display_rational(&summary.rate));
        }
    }
    Ok(())
}

fn cmd_simulate(
    pattern: &str,
    randomness: &RandomnessArgs,
    k: usize,
    seed: u64,
    trials: usize,
    out: Option<&str>,
) -> Result<(), CliError> {
    use rand::SeedableRng;
    let (_, params, _) = plan_instance(pattern, randomness, k)?;
    let mut store_rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut transcripts: Vec<Transcript> = Vec::with_capacity(trials);
    for trial in 0..trials {
        let store = MessageStore::random(&params, &mut store_rng);
        let theta = (trial % params.n_messages()) + 1;
        let transcript = run_session(&params, &store, theta, seed.wrapping_add(trial as u64))
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let expected: Vec<u64> = store.message(theta).iter().map(|e| e.value()).collect();
        if transcript.decoded != expected {
            return Err(CliError::Internal(format!(
                "session {trial} decoded the wrong message"
            )));
        }
        transcripts.push(transcript);
    }
    let body = serde_json::to_string_pretty(&transcripts).map_err(internal)?;
    match out {
        Some(path) => {
            fs::write(path, body)
                .map_err(|e| CliError::Internal(format!("cannot write {path}: {e}")))?;
            println!("wrote {} transcripts to {}", transcripts.len(), path);
        }
        None => println!("{body}"),
    }
    // The exact download rate, always the last line.
    println!("{}", params.rate());
    Ok(())
}

struct CertLine {
    name: String,
    method: CheckMethod,
    outcome: Outcome,
    informational: bool,
    notes: Vec<String>,
}

enum Outcome {
    Pass,
    Fail,
    Skipped(String),
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    pattern: &str,
    randomness: &RandomnessArgs,
    k: usize,
    seed: u64,
    trials: usize,
    budget: u64,
    format: Format,
) -> Result<(), CliError> {
    let (pc, pe) = load_patterns(pattern)?;
    let (_, params, _) = plan_instance(pattern, randomness, k)?;
    let mut lines: Vec<CertLine> = Vec::new();

    let push_rank = |lines: &mut Vec<CertLine>,
                     name: String,
                     cert: spir_core::PrivacyCertificate,
                     informational: bool| {
        lines.push(CertLine {
            name,
            method: cert.method,
            outcome: if cert.pass { Outcome::Pass } else { Outcome::Fail },
            informational,
            notes: cert.notes,
        });
    };

    push_rank(
        &mut lines,
        "user privacy against colluding sets".to_string(),
        verify_user_privacy_rank(&params, &pc),
        false,
    );
    if !pe.sets().is_empty() {
        push_rank(
            &mut lines,
            "user privacy against eavesdropped sets (informational)".to_string(),
            verify_user_privacy_rank(&params, &pe),
            true,
        );
    }
    push_rank(
        &mut lines,
        "database privacy against the eavesdropper".to_string(),
        verify_eve_privacy_rank(&params, &pe),
        false,
    );
    push_rank(
        &mut lines,
        "database privacy against the user".to_string(),
        verify_db_privacy_user(&params),
        false,
    );
    push_rank(
        &mut lines,
        format!("correctness sweep ({trials} sessions)"),
        verify_correctness_sweep(&params, trials, seed),
        false,
    );

    // Exhaustive checks where the budget allows; a refusal is a skip, not a
    // failure.
    let exhaustive =
        |lines: &mut Vec<CertLine>, name: String, observer: Observer, check: PrivacyCheck| {
            match exhaustive_privacy(&params, &observer, &check, budget) {
                Ok(cert) => lines.push(CertLine {
                    name,
                    method: CheckMethod::Exhaustive,
                    outcome: if cert.pass { Outcome::Pass } else { Outcome::Fail },
                    informational: false,
                    notes: Vec::new(),
                }),
                Err(VerifierError::BudgetExceeded { needed, budget }) => lines.push(CertLine {
                    name,
                    method: CheckMethod::Exhaustive,
                    outcome: Outcome::Skipped(format!("needs {needed} states, budget {budget}")),
                    informational: false,
                    notes: Vec::new(),
                }),
                Err(e) => lines.push(CertLine {
                    name,
                    method: CheckMethod::Exhaustive,
                    outcome: Outcome::Fail,
                    informational: false,
                    notes: vec![e.to_string()],
                }),
            }
        };

    for set in pc.sets() {
        for theta in 2..=params.n_messages() {
            exhaustive(
                &mut lines,
                format!("exhaustive view-identity for colluders {set}, index 1 vs {theta}"),
                Observer::Colluders(set.clone()),
                PrivacyCheck::ThetaIndistinguishability {
                    theta_a: 1,
                    theta_b: theta,
                },
            );
        }
    }
    for set in pe.sets() {
        for theta in 1..=params.n_messages() {
            exhaustive(
                &mut lines,
                format!("exhaustive message independence for eavesdropper {set}, index {theta}"),
                Observer::Eavesdropper(set.clone()),
                PrivacyCheck::MessageIndependence { theta },
            );
        }
    }
    for theta in 1..=params.n_messages() {
        exhaustive(
            &mut lines,
            format!("exhaustive undesired-message independence for the user, index {theta}"),
            Observer::User,
            PrivacyCheck::MessageIndependence { theta },
        );
    }

    let n_failed = lines
        .iter()
        .filter(|l| matches!(l.outcome, Outcome::Fail))
        .count();
    let verdict_pass = n_failed == 0;

    match format {
        Format::Json => {
            let entries: Vec<serde_json::Value> = lines
                .iter()
                .map(|l| {
                    json!({
                        "name": l.name,
                        "method": method_name(l.method),
                        "result": match &l.outcome {
                            Outcome::Pass => "pass".to_string(),
                            Outcome::Fail => "fail".to_string(),
                            Outcome::Skipped(reason) => format!("skipped: {reason}"),
                        },
                        "informational": l.informational,
                        "notes": l.notes,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "certificates": entries,
                    "pass": verdict_pass,
                }))
                .map_err(internal)?
            );
        }
        Format::Table => {
            for l in &lines {
                let result = match &l.outcome {
                    Outcome::Pass => "pass".to_string(),
                    Outcome::Fail => "FAIL".to_string(),
                    Outcome::Skipped(reason) => format!("skipped ({reason})"),
                };
                println!("[{:>10}] {:<70} {}", method_name(l.method), l.name, result);
                for note in &l.notes {
                    println!("             note: {note}");
                }
            }
            println!("verdict: {}", if verdict_pass { "PASS" } else { "FAIL" });
        }
    }

    if verdict_pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(format!(
            "{n_failed} certificate(s) failed"
        )))
    }
}

fn method_name(m: CheckMethod) -> &'static str {
    match m {
        CheckMethod::Rank => "rank",
        CheckMethod::Exhaustive => "exhaustive",
        CheckMethod::Sweep => "sweep",
    }
}

fn cmd_selftest(trials: usize, seed: u64, max_n: usize) -> Result<(), CliError> {
    use rand::Rng;
    use rand::SeedableRng;
    if !(2..=6).contains(&max_n) {
        return Err(CliError::InvalidInput(format!(
            "max-n must be between 2 and 6, got {max_n}"
        )));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut duality_ok = 0usize;
    for _ in 0..trials {
        let n = rng.gen_range(2..=max_n);
        let pc = Pattern::sample(&mut rng, n, PatternKind::Collusion);
        let pe = Pattern::sample(&mut rng, n, PatternKind::Eavesdropping);
        let (joint, _) = pc
            .join(&pe)
            .map_err(|e| CliError::Internal(e.to_string()))?
            .complete_coverage();
        match verify_duality(&joint.incidence_matrix()) {
            Ok(_) => duality_ok += 1,
            Err(e) => {
                println!("duality: FAILED on {joint:?}: {e}");
            }
        }
    }
    println!("duality: {duality_ok}/{trials} random patterns agree exactly");

    // Symmetric closed forms: F* = n/max(t,e), capacity 1 - max(t,e)/n,
    // threshold max(t,e)/(n - max(t,e)); singletons give 1 - 1/n.
    let mut sweep_total = 0usize;
    let mut sweep_ok = 0usize;
    for n in 2..=max_n {
        for t in 1..n {
            for e in 1..n {
                sweep_total += 1;
                let m = t.max(e);
                let pc = symmetric_pattern(n, t, PatternKind::Collusion)
                    .map_err(|err| CliError::Internal(err.to_string()))?;
                let pe = symmetric_pattern(n, e, PatternKind::Eavesdropping)
                    .map_err(|err| CliError::Internal(err.to_string()))?;
                let report = spir_capacity(&pc, &pe, None)
                    .map_err(|err| CliError::Internal(err.to_string()))?;
                let expected_f = Rational::new(n as i64, m as i64);
                let expected_capacity = Rational::one() - Rational::new(m as i64, n as i64);
                let expected_threshold = Rational::new(m as i64, (n - m) as i64);
                if report.f_star == expected_f
                    && report.capacity == expected_capacity
                    && report.rho_threshold == expected_threshold
                {
                    sweep_ok += 1;
                } else {
                    println!(
                        "closed-form sweep: MISMATCH at n={n}, t={t}, e={e}: F*={}, capacity={}",
                        report.f_star, report.capacity
                    );
                }
            }
        }
    }
    // Singleton baseline per size.
    let mut singleton_ok = true;
    for n in 2..=max_n {
        let pc = Pattern::singletons(n, PatternKind::Collusion)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let pe = Pattern::new(n, PatternKind::Eavesdropping, vec![])
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let report =
            spir_capacity(&pc, &pe, None).map_err(|e| CliError::Internal(e.to_string()))?;
        if report.capacity != Rational::one() - Rational::new(1, n as i64) {
            singleton_ok = false;
            println!("singleton baseline: MISMATCH at n={n}");
        }
    }
    println!("closed-form sweep: {sweep_ok}/{sweep_total} cases match");

    // Tamper sanity: overloading any tight set of a planned instance must
    // trip a rank certificate.
    let joint = Pattern::from_one_based(
        5,
        PatternKind::Joint,
        &[&[1, 2, 3], &[1, 4], &[2, 4], &[3, 4], &[5]],
    )
    .map_err(|e| CliError::Internal(e.to_string()))?;
    let y = vec![
        Rational::new(1, 3),
        Rational::new(1, 3),
        Rational::new(1, 3),
        Rational::new(2, 3),
        Rational::new(1, 1),
    ];
    let params = plan_scheme(&y, 3, &joint).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut tamper_ok = true;
    for set in joint.sets() {
        let Some(counts) = spir_core::overload_counts(&params, set) else {
            tamper_ok = false;
            continue;
        };
        let tampered = params
            .clone()
            .with_per_server_counts(counts)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let cert = verify_user_privacy_rank(
            &tampered,
            &Pattern::new(5, PatternKind::Collusion, vec![set.clone()])
                .map_err(|e| CliError::Internal(e.to_string()))?,
        );
        if cert.pass {
            tamper_ok = false;
            println!("tamper check: overloading {set} went undetected");
        }
    }
    println!(
        "tamper check: {}",
        if tamper_ok { "overloads detected" } else { "FAILED" }
    );

    let all_pass = duality_ok == trials && sweep_ok == sweep_total && singleton_ok && tamper_ok;
    println!("selftest: {}", if all_pass { "PASS" } else { "FAIL" });
    if all_pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(
            "selftest found mismatches".to_string(),
        ))
    }
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}
