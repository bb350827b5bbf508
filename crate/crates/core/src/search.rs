//! Exhaustive verification over bounded windows of canonical sets.
//!
//! The harness enumerates every set `{a_1 < ... < a_k}` inside a window
//! `[0, M]` (or `[1, M]` for all-positive sweeps) in lexicographic order,
//! evaluates every applicable lower bound, records violations, and
//! harvests the equality cases together with their structural
//! classification.
//!
//! Work is partitioned by the first two elements of a set. Workers process
//! partitions independently and a single merger commits their results in
//! lexicographic order, so a report is identical for any worker count.
//! A run can checkpoint after each committed partition; the checkpoint is
//! a JSON cursor (the last committed set) plus the accumulated tallies,
//! and resuming neither repeats nor skips sets.

use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{BoundError, BoundKind, BoundSubject};
use crate::inverse::{classify, predicted_structures, StructureClass};
use crate::set::{gcd, IntegerSet, SetError};
use crate::sumset::{restricted_signed_sumset, restricted_sumset, EngineError};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search config: {0}")]
    InvalidConfig(String),
    #[error("checkpoint does not match the requested run: {0}")]
    CheckpointMismatch(String),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("checkpoint io: {0}")]
    Io(#[from] std::io::Error),
    #[error("checkpoint encoding: {0}")]
    Json(#[from] serde_json::Error),
}

/// Window constraint for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constraint {
    /// `0 ∈ A`, elements in `[0, M]`.
    #[serde(rename = "zero")]
    ContainsZero,
    /// Elements in `[1, M]`.
    #[serde(rename = "positive")]
    AllPositive,
    /// `A ∩ (-A) = {0}`; over the nonnegative window this forces `0 ∈ A`
    /// and coincides with `ContainsZero`.
    #[serde(rename = "absdisjoint")]
    AbsDisjoint,
}

impl Constraint {
    pub fn name(self) -> &'static str {
        match self {
            Constraint::ContainsZero => "zero",
            Constraint::AllPositive => "positive",
            Constraint::AbsDisjoint => "absdisjoint",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "zero" => Some(Constraint::ContainsZero),
            "positive" => Some(Constraint::AllPositive),
            "absdisjoint" => Some(Constraint::AbsDisjoint),
            _ => None,
        }
    }

    fn forces_zero(self) -> bool {
        matches!(self, Constraint::ContainsZero | Constraint::AbsDisjoint)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    Direct,
    Inverse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub k: usize,
    pub h: u32,
    pub max_element: i64,
    pub constraint: Constraint,
    pub canonical_only: bool,
    pub jobs: usize,
}

impl SearchConfig {
    pub fn new(k: usize, h: u32, max_element: i64, constraint: Constraint) -> Self {
        SearchConfig {
            k,
            h,
            max_element,
            constraint,
            canonical_only: true,
            jobs: 1,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.k == 0 {
            return Err(SearchError::InvalidConfig("k must be at least 1".into()));
        }
        if self.h == 0 {
            return Err(SearchError::InvalidConfig("h must be at least 1".into()));
        }
        if self.h as usize > self.k {
            return Err(SearchError::InvalidConfig(format!(
                "h = {} exceeds k = {}",
                self.h, self.k
            )));
        }
        let needed = if self.constraint.forces_zero() {
            self.k as i64 - 1
        } else {
            self.k as i64
        };
        if self.max_element < needed {
            return Err(SearchError::InvalidConfig(format!(
                "window [.., {}] cannot hold {} elements under constraint {}",
                self.max_element,
                self.k,
                self.constraint.name()
            )));
        }
        // Desk-scale tool: refuse windows that could never finish instead
        // of grinding on them.
        if self.max_element > 10_000 {
            return Err(SearchError::InvalidConfig(format!(
                "window bound {} exceeds the supported maximum of 10000",
                self.max_element
            )));
        }
        if self.jobs == 0 {
            return Err(SearchError::InvalidConfig("jobs must be at least 1".into()));
        }
        Ok(())
    }
}

/// A bound that failed, or (in inverse mode) an equality case whose
/// classification missed every predicted family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub set: IntegerSet,
    pub kind: BoundKind,
    pub bound: i64,
    pub actual: u64,
}

/// A set attaining one or more applicable bounds exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityCase {
    pub set: IntegerSet,
    pub kinds: Vec<BoundKind>,
    pub bound: i64,
    pub actual: u64,
    pub classes: Vec<StructureClass>,
    pub prediction_matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: SearchConfig,
    pub mode: VerifyMode,
    pub sets_checked: u64,
    pub violations: Vec<Violation>,
    pub equality_cases: Vec<EqualityCase>,
    pub elapsed_ms: u64,
    pub partial: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Distinct sets among the equality cases, in lexicographic order.
    pub fn equality_sets(&self) -> Vec<&IntegerSet> {
        let mut sets: Vec<&IntegerSet> = self.equality_cases.iter().map(|c| &c.set).collect();
        sets.dedup();
        sets
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// One row per equality case: set, h, bound, actual, classes.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("set,h,bound,actual,classes\n");
        for case in &self.equality_cases {
            let classes = case
                .classes
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(";");
            out.push_str(&format!(
                "\"{}\",{},{},{},\"{}\"\n",
                case.set, self.config.h, case.bound, case.actual, classes
            ));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

fn window_min(constraint: Constraint) -> i64 {
    if constraint.forces_zero() {
        0
    } else {
        1
    }
}

/// Every admissible set in lexicographic order. Small windows only; the
/// harness holds one partition in memory at a time, but this helper
/// collects everything for callers that want the plain stream.
pub fn enumerate_canonical_sets(config: &SearchConfig) -> Result<Vec<IntegerSet>, SearchError> {
    config.validate()?;
    let mut out = Vec::new();
    for prefix in partitions(config) {
        extend_partition(config, &prefix, &mut out);
    }
    Ok(out)
}

/// Work partitions: the fixed leading elements (two of them when k >= 2).
fn partitions(config: &SearchConfig) -> Vec<Vec<i64>> {
    let lo = window_min(config.constraint);
    let m = config.max_element;
    let k = config.k as i64;
    let first_lo = if config.constraint.forces_zero() { 0 } else { lo };
    let first_hi = if config.constraint.forces_zero() { 0 } else { m - (k - 1) };

    let mut prefixes = Vec::new();
    for a1 in first_lo..=first_hi {
        if config.k == 1 {
            prefixes.push(vec![a1]);
            continue;
        }
        // Second element leaves room for the remaining k - 2.
        for a2 in (a1 + 1)..=(m - (k - 2)) {
            prefixes.push(vec![a1, a2]);
        }
    }
    prefixes
}

/// Appends every completion of `prefix` admissible under the config, in
/// lexicographic order.
fn extend_partition(config: &SearchConfig, prefix: &[i64], out: &mut Vec<IntegerSet>) {
    fn rec(config: &SearchConfig, stack: &mut Vec<i64>, out: &mut Vec<IntegerSet>) {
        if stack.len() == config.k {
            let g = stack.iter().fold(0i64, |g, &a| gcd(g, a));
            if !config.canonical_only || g == 1 {
                out.push(IntegerSet::new(stack.clone()).expect("window sets are guarded"));
            }
            return;
        }
        let remaining = (config.k - stack.len()) as i64;
        let next_lo = stack.last().map_or(window_min(config.constraint), |&a| a + 1);
        for next in next_lo..=(config.max_element - remaining + 1) {
            stack.push(next);
            rec(config, stack, out);
            stack.pop();
        }
    }
    let mut stack = prefix.to_vec();
    rec(config, &mut stack, out);
}

// ---------------------------------------------------------------------------
// Verification sweeps
// ---------------------------------------------------------------------------

#[derive(Default)]
struct PartitionOutcome {
    sets_checked: u64,
    violations: Vec<Violation>,
    equality_cases: Vec<EqualityCase>,
    last_set: Option<IntegerSet>,
}

/// Evaluates one set against every applicable bound grouped by subject
/// sumset, recording violations and equality cases.
fn check_one(set: &IntegerSet, h: u32, mode: VerifyMode, out: &mut PartitionOutcome) -> Result<(), SearchError> {
    let k = set.len();
    let kinds: Vec<BoundKind> = BoundKind::ALL
        .into_iter()
        .filter(|kind| kind.hypothesis().admits(set, h))
        .collect();
    if kinds.is_empty() {
        return Ok(());
    }

    let mut signed_card: Option<u64> = None;
    let mut restricted_card: Option<u64> = None;
    for subject in [BoundSubject::RestrictedSigned, BoundSubject::Restricted] {
        let subject_kinds: Vec<BoundKind> = kinds.iter().copied().filter(|k| k.subject() == subject).collect();
        if subject_kinds.is_empty() {
            continue;
        }
        let actual = match subject {
            BoundSubject::RestrictedSigned => *signed_card
                .get_or_insert_with(|| restricted_signed_sumset(set, h).expect("hypothesis admits h <= k").cardinality()),
            BoundSubject::Restricted => *restricted_card
                .get_or_insert_with(|| restricted_sumset(set, h).expect("hypothesis admits h <= k").cardinality()),
        };

        let mut equality_kinds = Vec::new();
        let mut bound_at_equality = 0;
        for kind in subject_kinds {
            let bound = kind.formula(h as u64, k as u64);
            if (actual as i128) < bound as i128 {
                out.violations.push(Violation {
                    set: set.clone(),
                    kind,
                    bound,
                    actual,
                });
            } else if actual as i128 == bound as i128 {
                equality_kinds.push(kind);
                bound_at_equality = bound;
            }
        }
        if equality_kinds.is_empty() {
            continue;
        }

        let classes = classify(set);
        let mut matched = true;
        for &kind in &equality_kinds {
            let Ok(prediction) = predicted_structures(kind, h, k) else {
                continue; // no characterisation encoded for this cell
            };
            let hit = classes
                .iter()
                .any(|c| prediction.allowed_structures.contains(&c.family()));
            if !hit {
                matched = false;
                if mode == VerifyMode::Inverse {
                    out.violations.push(Violation {
                        set: set.clone(),
                        kind,
                        bound: bound_at_equality,
                        actual,
                    });
                }
            }
        }
        out.equality_cases.push(EqualityCase {
            set: set.clone(),
            kinds: equality_kinds,
            bound: bound_at_equality,
            actual,
            classes,
            prediction_matched: matched,
        });
    }
    Ok(())
}

/// Checkpoint state: cursor plus accumulated tallies. All sets
/// lexicographically at or below `cursor` are accounted for.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Checkpoint {
    pub k: usize,
    pub h: u32,
    pub max_element: i64,
    pub constraint: Constraint,
    pub canonical_only: bool,
    pub mode: VerifyMode,
    pub cursor: IntegerSet,
    pub sets_checked: u64,
    pub violations: Vec<Violation>,
    pub equality_cases: Vec<EqualityCase>,
}

impl Checkpoint {
    fn matches(&self, config: &SearchConfig, mode: VerifyMode) -> bool {
        self.k == config.k
            && self.h == config.h
            && self.max_element == config.max_element
            && self.constraint == config.constraint
            && self.canonical_only == config.canonical_only
            && self.mode == mode
    }
}

pub fn verify_direct(config: &SearchConfig) -> Result<VerificationReport, SearchError> {
    run_verify(config, VerifyMode::Direct, None)
}

pub fn verify_inverse(config: &SearchConfig) -> Result<VerificationReport, SearchError> {
    run_verify(config, VerifyMode::Inverse, None)
}

/// Runs a sweep, optionally resuming from / persisting to a checkpoint
/// file. Partitions are processed by `config.jobs` workers and committed
/// in lexicographic order, so the report does not depend on scheduling.
pub fn run_verify(
    config: &SearchConfig,
    mode: VerifyMode,
    checkpoint_path: Option<&Path>,
) -> Result<VerificationReport, SearchError> {
    config.validate()?;
    let start = Instant::now();

    let mut sets_checked = 0u64;
    let mut violations = Vec::new();
    let mut equality_cases = Vec::new();
    let mut resume_cursor: Option<IntegerSet> = None;

    if let Some(path) = checkpoint_path {
        if path.exists() {
            let loaded: Checkpoint = serde_json::from_str(&fs::read_to_string(path)?)?;
            if !loaded.matches(config, mode) {
                return Err(SearchError::CheckpointMismatch(format!(
                    "checkpoint at {} was written by a different run",
                    path.display()
                )));
            }
            sets_checked = loaded.sets_checked;
            violations = loaded.violations;
            equality_cases = loaded.equality_cases;
            resume_cursor = Some(loaded.cursor);
        }
    }
    let mut cursor = resume_cursor.clone();

    let prefixes = partitions(config);
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, PartitionOutcome)>();
    let workers = config.jobs.min(prefixes.len().max(1));

    std::thread::scope(|scope| -> Result<(), SearchError> {
        for _ in 0..workers {
            let tx = tx.clone();
            let prefixes = &prefixes;
            let next = &next;
            let cursor = resume_cursor.as_ref();
            scope.spawn(move || {
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= prefixes.len() {
                        break;
                    }
                    let mut sets = Vec::new();
                    extend_partition(config, &prefixes[idx], &mut sets);
                    let mut outcome = PartitionOutcome::default();
                    for set in sets {
                        // Resume semantics: everything at or below the
                        // cursor is already accounted for.
                        if let Some(done) = cursor {
                            if set <= *done {
                                continue;
                            }
                        }
                        check_one(&set, config.h, mode, &mut outcome).expect("enumerated sets satisfy preconditions");
                        outcome.sets_checked += 1;
                        outcome.last_set = Some(set);
                    }
                    if tx.send((idx, outcome)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);

        // Commit partition results strictly in order.
        let mut pending: std::collections::BTreeMap<usize, PartitionOutcome> = Default::default();
        let mut frontier = 0usize;
        for (idx, outcome) in rx {
            pending.insert(idx, outcome);
            while let Some(outcome) = pending.remove(&frontier) {
                frontier += 1;
                sets_checked += outcome.sets_checked;
                violations.extend(outcome.violations);
                equality_cases.extend(outcome.equality_cases);
                if let Some(last) = outcome.last_set {
                    cursor = Some(last);
                    if let Some(path) = checkpoint_path {
                        let snapshot = Checkpoint {
                            k: config.k,
                            h: config.h,
                            max_element: config.max_element,
                            constraint: config.constraint,
                            canonical_only: config.canonical_only,
                            mode,
                            cursor: cursor.clone().unwrap(),
                            sets_checked,
                            violations: violations.clone(),
                            equality_cases: equality_cases.clone(),
                        };
                        write_checkpoint(path, &snapshot)?;
                    }
                }
            }
        }
        Ok(())
    })?;

    Ok(VerificationReport {
        config: config.clone(),
        mode,
        sets_checked,
        violations,
        equality_cases,
        elapsed_ms: start.elapsed().as_millis() as u64,
        partial: false,
    })
}

fn write_checkpoint(path: &Path, checkpoint: &Checkpoint) -> Result<(), SearchError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string_pretty(checkpoint)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Reduction lemma cross-check
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReductionOutcome {
    /// Surplus of the leading-segment sumset over `h² + h + 1`.
    pub t: i64,
    pub holds: bool,
    /// True when `t < 0` made the check vacuous (cannot happen when the
    /// segment bound holds, but recorded rather than asserted).
    pub vacuous: bool,
}

/// Cross-checks the segment reduction: with `B` the first `h + 1`
/// elements of `A` and `t = |h^±B| - (h² + h + 1)`, the whole set obeys
/// `|h^±A| >= 2hk - h² - h + 1 + t`. Requires `0 ∈ A`, `3 <= h <= k - 2`
/// and `k >= 5` (the segment must be proper).
pub fn lemma_reduction_check(a: &IntegerSet, h: u32) -> Result<LemmaReductionOutcome, SearchError> {
    let k = a.len();
    if !(a.contains_zero() && a.is_all_nonnegative()) || h < 3 || (h as usize) + 2 > k || k < 5 {
        return Err(SearchError::InvalidConfig(format!(
            "segment reduction needs 0 ∈ A, 3 <= h <= k - 2, k >= 5; got h = {h}, k = {k}"
        )));
    }
    let segment = IntegerSet::new(a.elements()[..h as usize + 1].to_vec()).expect("proper prefix of a guarded set");
    let segment_card = restricted_signed_sumset(&segment, h)?.cardinality() as i64;
    let h_i = h as i64;
    let t = segment_card - (h_i * h_i + h_i + 1);
    if t < 0 {
        return Ok(LemmaReductionOutcome {
            t,
            holds: true,
            vacuous: true,
        });
    }
    let whole = restricted_signed_sumset(a, h)?.cardinality() as i64;
    let needed = 2 * h_i * k as i64 - h_i * h_i - h_i + 1 + t;
    Ok(LemmaReductionOutcome {
        t,
        holds: whole >= needed,
        vacuous: false,
    })
}

// ---------------------------------------------------------------------------
// Fixture suite
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "expect", rename_all = "kebab-case")]
pub enum FixtureExpectation {
    Cardinality { value: u64 },
    CardinalityAtLeast { value: u64 },
    /// The sumset equals the integer interval `[lo, hi]` as a set.
    IntervalSet { lo: i64, hi: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub set: IntegerSet,
    pub h: u32,
    pub expectation: FixtureExpectation,
    pub actual_cardinality: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub rows: Vec<FixtureRow>,
}

impl FixtureReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture report serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("set,h,expectation,actual,pass\n");
        for row in &self.rows {
            let expect = match &row.expectation {
                FixtureExpectation::Cardinality { value } => format!("= {value}"),
                FixtureExpectation::CardinalityAtLeast { value } => format!(">= {value}"),
                FixtureExpectation::IntervalSet { lo, hi } => format!("set = [{lo}, {hi}]"),
            };
            out.push_str(&format!(
                "\"{}\",{},\"{}\",{},{}\n",
                row.set, row.h, expect, row.actual_cardinality, row.pass
            ));
        }
        out
    }
}

/// The fixed table of known sumset values and interval identities.
pub fn fixture_suite() -> FixtureReport {
    let mut rows = Vec::new();

    let exact: [(&[i64], u32, u64); 5] = [
        (&[0, 1, 2, 3, 4], 4, 21),
        (&[0, 1, 2, 3, 5], 4, 23),
        (&[0, 1, 2, 3, 6], 4, 25),
        (&[0, 1, 2, 4, 6], 4, 21),
        (&[0, 1, 2, 4, 5], 4, 23),
    ];
    for (elems, h, value) in exact {
        rows.push(fixture_row(
            IntegerSet::new(elems.to_vec()).unwrap(),
            h,
            FixtureExpectation::Cardinality { value },
        ));
    }

    let at_least: [(&[i64], u32, u64); 3] = [
        (&[0, 1, 2, 4, 5, 6], 5, 32),
        (&[0, 1, 2, 3, 5, 7], 5, 32),
        (&[0, 1, 2, 4, 6, 7], 4, 30),
    ];
    for (elems, h, value) in at_least {
        rows.push(fixture_row(
            IntegerSet::new(elems.to_vec()).unwrap(),
            h,
            FixtureExpectation::CardinalityAtLeast { value },
        ));
    }

    // h^±[0, h] fills the whole interval [-h(h+1)/2, h(h+1)/2] for h >= 5.
    for h in 5..=10i64 {
        let half = h * (h + 1) / 2;
        rows.push(fixture_row(
            IntegerSet::interval(0, h).unwrap(),
            h as u32,
            FixtureExpectation::IntervalSet { lo: -half, hi: half },
        ));
    }

    // |h^±[0, k-1]| = 2hk - h² - h + 1.
    for (h, k) in [(3i64, 5i64), (4, 6), (5, 7)] {
        rows.push(fixture_row(
            IntegerSet::interval(0, k - 1).unwrap(),
            h as u32,
            FixtureExpectation::Cardinality {
                value: (2 * h * k - h * h - h + 1) as u64,
            },
        ));
    }

    FixtureReport { rows }
}

fn fixture_row(set: IntegerSet, h: u32, expectation: FixtureExpectation) -> FixtureRow {
    let result = restricted_signed_sumset(&set, h).expect("fixture parameters are feasible");
    let actual = result.cardinality();
    let pass = match &expectation {
        FixtureExpectation::Cardinality { value } => actual == *value,
        FixtureExpectation::CardinalityAtLeast { value } => actual >= *value,
        FixtureExpectation::IntervalSet { lo, hi } => {
            result.sums == IntegerSet::interval(*lo, *hi).expect("fixture interval is valid")
        }
    };
    FixtureRow {
        set,
        h,
        expectation,
        actual_cardinality: actual,
        pass,
    }
}
