//! Collusion / eavesdropping pattern algebra.
//!
//! A pattern is a family of server subsets in maximal-set form: no set
//! contains another, because any subset of a colluding (eavesdropping) set is
//! itself colluding (eavesdropping). Patterns combine by union followed by
//! maximal reduction, and the resulting joint pattern is the only object the
//! capacity LPs ever see, via its 0/1 incidence matrix.
//!
//! Server indices are 1-based at every text boundary (JSON, display, CLI) and
//! 0-based everywhere inside the library.

use std::fmt;

use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("server index {index} out of range for {n_servers} servers (indices are 1-based)")]
    IndexOutOfRange { index: usize, n_servers: usize },
    #[error("server sets must be non-empty")]
    EmptySet,
    #[error("a collusion pattern must contain at least one set")]
    EmptyCollusionPattern,
    #[error(
        "pattern contains the set of all {n_servers} servers; no scheme can protect both the \
         user and the database in that case, and the capacity is zero"
    )]
    FullSetPresent { n_servers: usize },
    #[error("patterns disagree on server count: {left} vs {right}")]
    MismatchedServerCount { left: usize, right: usize },
    #[error("a pattern needs at least one server")]
    ZeroServers,
}

/// Non-empty set of server indices, stored 0-based, sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ServerSet {
    members: Vec<usize>,
}

impl ServerSet {
    /// From 0-based indices. Sorts and deduplicates.
    pub fn from_zero_based(indices: &[usize]) -> Result<Self, PatternError> {
        if indices.is_empty() {
            return Err(PatternError::EmptySet);
        }
        let mut members = indices.to_vec();
        members.sort_unstable();
        members.dedup();
        Ok(ServerSet { members })
    }

    /// From 1-based indices as they appear in pattern files.
    pub fn from_one_based(indices: &[usize]) -> Result<Self, PatternError> {
        if indices.iter().any(|&i| i == 0) {
            return Err(PatternError::IndexOutOfRange {
                index: 0,
                n_servers: 0,
            });
        }
        let zero: Vec<usize> = indices.iter().map(|&i| i - 1).collect();
        Self::from_zero_based(&zero)
    }

    /// 0-based members, sorted ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, server: usize) -> bool {
        self.members.binary_search(&server).is_ok()
    }

    /// True when every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &ServerSet) -> bool {
        self.members.iter().all(|m| other.contains(*m))
    }

    fn max_index(&self) -> usize {
        *self.members.last().expect("sets are non-empty")
    }
}

/// Canonical order: cardinality first, then lexicographic on the sorted
/// member lists. Fixes incidence-matrix column order and therefore makes LP
/// bases and scheme transcripts reproducible.
impl Ord for ServerSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl PartialOrd for ServerSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ServerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", m + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ServerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ServerSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.members.iter().map(|m| m + 1).collect();
        one_based.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ServerSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let one_based = Vec::<usize>::deserialize(deserializer)?;
        ServerSet::from_one_based(&one_based).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Collusion,
    Eavesdropping,
    Joint,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::Collusion => write!(f, "collusion"),
            PatternKind::Eavesdropping => write!(f, "eavesdropping"),
            PatternKind::Joint => write!(f, "joint"),
        }
    }
}

/// A pattern in maximal-set form over `n_servers` servers, sets in canonical
/// order. Construction reduces to maximal sets; it does not reject a full set
/// or incomplete coverage — that is [`Pattern::validate`]'s job, so that
/// diagnostics can point at the offending input instead of a constructor.
#[derive(Clone, PartialEq, Eq)]
pub struct Pattern {
    n_servers: usize,
    kind: PatternKind,
    sets: Vec<ServerSet>,
}

/// Which sets a maximal reduction kept and which it dropped as redundant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub kept: Vec<ServerSet>,
    pub dropped: Vec<ServerSet>,
}

/// Keep only the inclusion-maximal sets, deduplicated, in canonical order.
pub fn reduce_maximal(sets: &[ServerSet]) -> Reduction {
    let mut kept: Vec<ServerSet> = Vec::new();
    let mut dropped: Vec<ServerSet> = Vec::new();
    let mut sorted = sets.to_vec();
    sorted.sort();
    sorted.dedup();
    for set in &sorted {
        let strictly_inside_other = sorted
            .iter()
            .any(|other| other != set && set.is_subset_of(other));
        if strictly_inside_other {
            dropped.push(set.clone());
        } else {
            kept.push(set.clone());
        }
    }
    Reduction { kept, dropped }
}

/// Validation outcome for a pattern that passed the hard checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    /// 0-based servers that appear in no set. Empty means fully covered.
    pub uncovered: Vec<usize>,
}

impl Diagnostics {
    pub fn is_fully_covered(&self) -> bool {
        self.uncovered.is_empty()
    }
}

impl Pattern {
    /// Build a pattern from raw sets: range-check, reduce to maximal form,
    /// canonical order. An empty family is allowed only for eavesdropping
    /// patterns (no eavesdropper) and joints of such.
    pub fn new(
        n_servers: usize,
        kind: PatternKind,
        sets: Vec<ServerSet>,
    ) -> Result<Self, PatternError> {
        if n_servers == 0 {
            return Err(PatternError::ZeroServers);
        }
        if sets.is_empty() && kind == PatternKind::Collusion {
            return Err(PatternError::EmptyCollusionPattern);
        }
        for set in &sets {
            if set.max_index() >= n_servers {
                return Err(PatternError::IndexOutOfRange {
                    index: set.max_index() + 1,
                    n_servers,
                });
            }
        }
        let reduction = reduce_maximal(&sets);
        Ok(Pattern {
            n_servers,
            kind,
            sets: reduction.kept,
        })
    }

    /// Convenience constructor from 1-based member lists.
    pub fn from_one_based(
        n_servers: usize,
        kind: PatternKind,
        sets: &[&[usize]],
    ) -> Result<Self, PatternError> {
        let sets = sets
            .iter()
            .map(|s| ServerSet::from_one_based(s))
            .collect::<Result<Vec<_>, _>>()?;
        Pattern::new(n_servers, kind, sets)
    }

    /// The pattern `{{1},...,{N}}`: privacy against each single server.
    pub fn singletons(n_servers: usize, kind: PatternKind) -> Result<Self, PatternError> {
        let sets = (0..n_servers)
            .map(|i| ServerSet::from_zero_based(&[i]).expect("singleton is non-empty"))
            .collect();
        Pattern::new(n_servers, kind, sets)
    }

    pub fn n_servers(&self) -> usize {
        self.n_servers
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn sets(&self) -> &[ServerSet] {
        &self.sets
    }

    pub fn n_sets(&self) -> usize {
        self.sets.len()
    }

    /// Maximal-set form of the union of two patterns over the same servers.
    pub fn join(&self, other: &Pattern) -> Result<Pattern, PatternError> {
        if self.n_servers != other.n_servers {
            return Err(PatternError::MismatchedServerCount {
                left: self.n_servers,
                right: other.n_servers,
            });
        }
        let mut union = self.sets.clone();
        union.extend(other.sets.iter().cloned());
        Pattern::new(self.n_servers, PatternKind::Joint, union)
    }

    /// Hard checks plus coverage diagnostics.
    ///
    /// A pattern containing the full server set is rejected: against it no
    /// scheme can protect the user and the database at once, so the capacity
    /// is zero and downstream planning is meaningless. Uncovered servers are
    /// reported, not fixed; see [`Pattern::complete_coverage`].
    pub fn validate(&self) -> Result<Diagnostics, PatternError> {
        if self.kind == PatternKind::Collusion && self.sets.is_empty() {
            return Err(PatternError::EmptyCollusionPattern);
        }
        if self.sets.iter().any(|s| s.len() == self.n_servers) {
            return Err(PatternError::FullSetPresent {
                n_servers: self.n_servers,
            });
        }
        let uncovered = (0..self.n_servers)
            .filter(|&n| !self.sets.iter().any(|s| s.contains(n)))
            .collect();
        Ok(Diagnostics { uncovered })
    }

    /// Add the singleton `{n}` for every uncovered server `n`, re-normalize,
    /// and report which singletons were added (0-based). User privacy must
    /// hold at each single server at the very least, so the LPs only ever see
    /// coverage-complete patterns.
    pub fn complete_coverage(&self) -> (Pattern, Vec<usize>) {
        let mut added = Vec::new();
        let mut sets = self.sets.clone();
        for n in 0..self.n_servers {
            if !self.sets.iter().any(|s| s.contains(n)) {
                sets.push(ServerSet::from_zero_based(&[n]).expect("singleton is non-empty"));
                added.push(n);
            }
        }
        if added.is_empty() {
            return (self.clone(), added);
        }
        let completed =
            Pattern::new(self.n_servers, self.kind, sets).expect("completion preserves validity");
        (completed, added)
    }

    /// N x M 0/1 matrix: entry `(n, m)` is 1 iff server `n` is in set `m`.
    /// Column order is the canonical set order.
    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let rows = self.n_servers;
        let cols = self.sets.len();
        let mut entries = vec![false; rows * cols];
        for (m, set) in self.sets.iter().enumerate() {
            for &n in set.members() {
                entries[n * cols + m] = true;
            }
        }
        IncidenceMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Random maximal pattern for self-tests: 1..=6 proper non-empty subsets
    /// over `n_servers` servers. Eavesdropping patterns come out empty one
    /// time in five.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, n_servers: usize, kind: PatternKind) -> Pattern {
        assert!(n_servers >= 2, "need at least two servers");
        if kind == PatternKind::Eavesdropping && rng.gen_range(0..5) == 0 {
            return Pattern::new(n_servers, kind, Vec::new()).expect("empty eavesdropping is valid");
        }
        let n_sets = rng.gen_range(1..=6);
        let mut sets = Vec::with_capacity(n_sets);
        for _ in 0..n_sets {
            let size = rng.gen_range(1..n_servers);
            let mut members: Vec<usize> = (0..n_servers).collect();
            for i in 0..size {
                let j = rng.gen_range(i..n_servers);
                members.swap(i, j);
            }
            members.truncate(size);
            sets.push(ServerSet::from_zero_based(&members).expect("size >= 1"));
        }
        Pattern::new(n_servers, kind, sets).expect("sampled sets are in range")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, set) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{set}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern[n={}, {}, {}]", self.n_servers, self.kind, self)
    }
}

#[derive(Serialize, Deserialize)]
struct PatternWire {
    n_servers: usize,
    kind: PatternKind,
    sets: Vec<ServerSet>,
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PatternWire {
            n_servers: self.n_servers,
            kind: self.kind,
            sets: self.sets.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = PatternWire::deserialize(deserializer)?;
        Pattern::new(wire.n_servers, wire.kind, wire.sets).map_err(D::Error::custom)
    }
}

/// 0/1 incidence matrix of a pattern: rows are servers, columns are sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<bool>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols);
        self.entries[row * self.cols + col]
    }

    /// Row as 0/1 integers, for display and tests.
    pub fn row_bits(&self, row: usize) -> Vec<u8> {
        (0..self.cols).map(|c| self.entry(row, c) as u8).collect()
    }

    /// 0-based servers of column `col`.
    pub fn column_support(&self, col: usize) -> Vec<usize> {
        (0..self.rows).filter(|&r| self.entry(r, col)).collect()
    }

    /// Inverse of [`Pattern::incidence_matrix`]: columns back to sets.
    pub fn to_pattern(&self, kind: PatternKind) -> Result<Pattern, PatternError> {
        let sets = (0..self.cols)
            .map(|c| ServerSet::from_zero_based(&self.column_support(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Pattern::new(self.rows, kind, sets)
    }
}

impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// On-disk pattern description: `{"n": 5, "collusion": [[1,2],...],
/// "eavesdropping": [[1,2,3],...]}` with 1-based indices. `eavesdropping`
/// may be empty or absent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatternSpec {
    pub n: usize,
    pub collusion: Vec<Vec<usize>>,
    #[serde(default)]
    pub eavesdropping: Vec<Vec<usize>>,
}

impl PatternSpec {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn collusion_pattern(&self) -> Result<Pattern, PatternError> {
        let sets = self
            .collusion
            .iter()
            .map(|s| ServerSet::from_one_based(s))
            .collect::<Result<Vec<_>, _>>()?;
        Pattern::new(self.n, PatternKind::Collusion, sets)
    }

    pub fn eavesdropping_pattern(&self) -> Result<Pattern, PatternError> {
        let sets = self
            .eavesdropping
            .iter()
            .map(|s| ServerSet::from_one_based(s))
            .collect::<Result<Vec<_>, _>>()?;
        Pattern::new(self.n, PatternKind::Eavesdropping, sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(members: &[usize]) -> ServerSet {
        ServerSet::from_one_based(members).unwrap()
    }

    fn pattern(n: usize, kind: PatternKind, sets: &[&[usize]]) -> Pattern {
        Pattern::from_one_based(n, kind, sets).unwrap()
    }

    #[test]
    fn reduce_drops_contained_sets() {
        let p = pattern(3, PatternKind::Collusion, &[&[1, 2, 3], &[1, 2]]);
        assert_eq!(p.sets(), &[set(&[1, 2, 3])]);
    }

    #[test]
    fn reduce_keeps_antichain() {
        let p = pattern(3, PatternKind::Collusion, &[&[1], &[2], &[3]]);
        assert_eq!(p.sets(), &[set(&[1]), set(&[2]), set(&[3])]);
    }

    #[test]
    fn reduce_dedups_and_drops_subsets() {
        let p = pattern(3, PatternKind::Collusion, &[&[1, 2], &[2, 3], &[1, 2], &[2]]);
        assert_eq!(p.sets(), &[set(&[1, 2]), set(&[2, 3])]);
    }

    #[test]
    fn reduction_reports_dropped_sets() {
        let raw = vec![set(&[1, 2]), set(&[2, 3]), set(&[2])];
        let reduction = reduce_maximal(&raw);
        assert_eq!(reduction.kept, vec![set(&[1, 2]), set(&[2, 3])]);
        assert_eq!(reduction.dropped, vec![set(&[2])]);
    }

    #[test]
    fn join_absorbs_subsets() {
        let pc = pattern(4, PatternKind::Collusion, &[&[1, 2], &[3, 4]]);
        let pe = pattern(4, PatternKind::Eavesdropping, &[&[1, 2, 3], &[4]]);
        let joint = pc.join(&pe).unwrap();
        assert_eq!(joint.kind(), PatternKind::Joint);
        assert_eq!(joint.sets(), &[set(&[3, 4]), set(&[1, 2, 3])]);
    }

    #[test]
    fn join_reproduces_worked_example() {
        let pc = pattern(
            5,
            PatternKind::Collusion,
            &[&[1, 2], &[1, 4], &[2, 4], &[3, 4], &[5]],
        );
        let pe = pattern(5, PatternKind::Eavesdropping, &[&[1, 2, 3], &[2, 4], &[5]]);
        let joint = pc.join(&pe).unwrap();
        assert_eq!(
            joint.sets(),
            &[
                set(&[5]),
                set(&[1, 4]),
                set(&[2, 4]),
                set(&[3, 4]),
                set(&[1, 2, 3]),
            ]
        );
    }

    #[test]
    fn join_with_empty_is_identity() {
        let pc = pattern(3, PatternKind::Collusion, &[&[1, 2], &[3]]);
        let pe = Pattern::new(3, PatternKind::Eavesdropping, vec![]).unwrap();
        let joint = pc.join(&pe).unwrap();
        assert_eq!(joint.sets(), pc.sets());
    }

    #[test]
    fn join_rejects_mismatched_n() {
        let a = pattern(3, PatternKind::Collusion, &[&[1]]);
        let b = pattern(4, PatternKind::Eavesdropping, &[&[1]]);
        assert_eq!(
            a.join(&b),
            Err(PatternError::MismatchedServerCount { left: 3, right: 4 })
        );
    }

    #[test]
    fn coverage_adds_missing_singletons() {
        let p = pattern(3, PatternKind::Joint, &[&[1, 2]]);
        let (completed, added) = p.complete_coverage();
        assert_eq!(completed.sets(), &[set(&[3]), set(&[1, 2])]);
        assert_eq!(added, vec![2]);
    }

    #[test]
    fn coverage_for_eavesdropping_baseline() {
        let p = pattern(4, PatternKind::Joint, &[&[1, 2, 3]]);
        let (completed, added) = p.complete_coverage();
        assert_eq!(completed.sets(), &[set(&[4]), set(&[1, 2, 3])]);
        assert_eq!(added, vec![3]);
    }

    #[test]
    fn coverage_noop_when_covered() {
        let joint = pattern(
            5,
            PatternKind::Joint,
            &[&[1, 2, 3], &[1, 4], &[2, 4], &[3, 4], &[5]],
        );
        let (completed, added) = joint.complete_coverage();
        assert_eq!(completed, joint);
        assert!(added.is_empty());
    }

    #[test]
    fn incidence_matches_four_server_example() {
        let p = pattern(
            4,
            PatternKind::Joint,
            &[&[1, 2], &[2, 3], &[2, 4], &[1, 3, 4]],
        );
        let b = p.incidence_matrix();
        assert_eq!(b.row_bits(0), vec![1, 0, 0, 1]);
        assert_eq!(b.row_bits(1), vec![1, 1, 1, 0]);
        assert_eq!(b.row_bits(2), vec![0, 1, 0, 1]);
        assert_eq!(b.row_bits(3), vec![0, 0, 1, 1]);
    }

    #[test]
    fn incidence_of_singletons_is_identity() {
        let p = Pattern::singletons(4, PatternKind::Collusion).unwrap();
        let b = p.incidence_matrix();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(b.entry(r, c), r == c);
            }
        }
    }

    /// The five-server worked example's matrix, with columns permuted into
    /// canonical order ({5},{1,4},{2,4},{3,4},{1,2,3}).
    #[test]
    fn incidence_of_worked_example_joint() {
        let joint = pattern(
            5,
            PatternKind::Joint,
            &[&[1, 2, 3], &[1, 4], &[2, 4], &[3, 4], &[5]],
        );
        let b = joint.incidence_matrix();
        assert_eq!(b.row_bits(0), vec![0, 1, 0, 0, 1]);
        assert_eq!(b.row_bits(1), vec![0, 0, 1, 0, 1]);
        assert_eq!(b.row_bits(2), vec![0, 0, 0, 1, 1]);
        assert_eq!(b.row_bits(3), vec![0, 1, 1, 1, 0]);
        assert_eq!(b.row_bits(4), vec![1, 0, 0, 0, 0]);

        // Same columns as the published matrix, up to the canonical reorder.
        let published = [
            vec![1, 1, 0, 0, 0],
            vec![1, 0, 1, 0, 0],
            vec![1, 0, 0, 1, 0],
            vec![0, 1, 1, 1, 0],
            vec![0, 0, 0, 0, 1],
        ];
        let mut ours: Vec<Vec<u8>> = (0..5)
            .map(|c| (0..5).map(|r| b.entry(r, c) as u8).collect())
            .collect();
        let mut theirs: Vec<Vec<u8>> = (0..5)
            .map(|c| (0..5).map(|r| published[r][c]).collect())
            .collect();
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs);
    }

    #[test]
    fn validate_rejects_full_set() {
        let p = pattern(3, PatternKind::Collusion, &[&[1, 2, 3]]);
        assert_eq!(
            p.validate(),
            Err(PatternError::FullSetPresent { n_servers: 3 })
        );
    }

    #[test]
    fn validate_accepts_two_server_singletons() {
        let p = pattern(2, PatternKind::Collusion, &[&[1], &[2]]);
        let diag = p.validate().unwrap();
        assert!(diag.is_fully_covered());
    }

    #[test]
    fn validate_accepts_symmetric_pairs() {
        let p = pattern(
            4,
            PatternKind::Collusion,
            &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]],
        );
        assert!(p.validate().unwrap().is_fully_covered());
    }

    #[test]
    fn validate_reports_uncovered() {
        let p = pattern(4, PatternKind::Joint, &[&[1, 2]]);
        assert_eq!(p.validate().unwrap().uncovered, vec![2, 3]);
    }

    #[test]
    fn empty_collusion_rejected() {
        assert_eq!(
            Pattern::new(3, PatternKind::Collusion, vec![]),
            Err(PatternError::EmptyCollusionPattern)
        );
    }

    #[test]
    fn out_of_range_rejected() {
        assert_eq!(
            Pattern::from_one_based(3, PatternKind::Collusion, &[&[1, 4]]),
            Err(PatternError::IndexOutOfRange {
                index: 4,
                n_servers: 3
            })
        );
    }

    #[test]
    fn incidence_round_trips_to_pattern() {
        let p = pattern(
            5,
            PatternKind::Joint,
            &[&[1, 2, 3], &[1, 4], &[2, 4], &[3, 4], &[5]],
        );
        let back = p.incidence_matrix().to_pattern(PatternKind::Joint).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn spec_file_round_trip() {
        let text = r#"{"n": 4, "collusion": [[1,2],[3,4]], "eavesdropping": [[1,2,3],[4]]}"#;
        let spec = PatternSpec::from_json(text).unwrap();
        let pc = spec.collusion_pattern().unwrap();
        let pe = spec.eavesdropping_pattern().unwrap();
        assert_eq!(pc.sets(), &[set(&[1, 2]), set(&[3, 4])]);
        assert_eq!(pe.sets(), &[set(&[4]), set(&[1, 2, 3])]);
    }

    #[test]
    fn spec_file_eavesdropping_optional() {
        let spec = PatternSpec::from_json(r#"{"n": 2, "collusion": [[1],[2]]}"#).unwrap();
        assert!(spec.eavesdropping_pattern().unwrap().sets().is_empty());
    }

    #[test]
    fn pattern_json_round_trip() {
        let p = pattern(5, PatternKind::Joint, &[&[1, 2, 3], &[2, 4], &[5]]);
        let json = serde_json::to_string(&p).unwrap();
        let back: Pattern = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
