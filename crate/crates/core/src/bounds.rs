//! Closed-form lower bounds on sumset cardinalities.
//!
//! Each [`BoundKind`] names one lower-bound formula together with the
//! hypothesis under which it is proved. `RestrictedDirect` bounds the
//! restricted sumset `|h^A|`; every other kind bounds the restricted
//! signed sumset `|h^±A|`. [`check_bounds`] evaluates every bound whose
//! hypothesis a concrete `(A, h)` satisfies against the actual computed
//! cardinality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::IntegerSet;
use crate::sumset::{restricted_signed_sumset, restricted_sumset, EngineError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("{kind} does not apply to h = {h}, k = {k}")]
    Inapplicable { kind: BoundKind, h: u32, k: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// The sumset a bound constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSubject {
    Restricted,
    RestrictedSigned,
}

/// One lower-bound formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// `|h^A| >= hk - h² + 1` for any integer set. The hypothesis range
    /// used for dispatch is the one under which the matching inverse
    /// statement holds: `2 <= h <= k-2`, `k >= 5`.
    RestrictedDirect,
    /// `|h^±A| >= 2(hk - h²) + h(h+1)/2 + 1` for positive sets, `h <= k`.
    SignedPositiveGeneral,
    /// `|h^±A| >= 2(hk - h²) + h(h-1)/2 + 1` for nonnegative sets with
    /// `0 ∈ A`, `h <= k`.
    SignedNonnegGeneral,
    /// `|h^±A| >= 2hk - h² + 1` for positive sets, `3 <= h <= k-1`.
    PositiveMidRange,
    /// `|h^±A| >= 2hk - h(h+1) + 1` for sets with `0 ∈ A`,
    /// `3 <= h <= k-1`, `k >= 5`.
    NonnegMidRange,
    /// `|h^±A| >= h(h+1)/2 + 1` for positive sets with `h = k >= 3`.
    PositiveFullK,
    /// `|h^±A| >= h(h-1)/2 + 1` for sets with `0 ∈ A` and `h = k >= 3`.
    NonnegFullK,
    /// `|h^±A| >= h² + h + 1` for sets with `0 ∈ A` and `k = h + 1`,
    /// `h >= 4`. The h = 3 cell is genuinely uncovered: {0, 1, 2, 4}
    /// reaches only 12 of the 13 required sums.
    HPlusOneCase,
}

/// How a hypothesis relates `h` to `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HRelation {
    AtMostK,
    AtMostKMinusOne,
    AtMostKMinusTwo,
    EqualsK,
    EqualsKMinusOne,
}

/// Hypothesis clause of a bound: sign requirements plus the admissible
/// `(h, k)` region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    /// `0 ∈ A` and all elements nonnegative.
    pub requires_zero: bool,
    /// All elements strictly positive.
    pub requires_positive: bool,
    pub h_min: u32,
    pub h_relation: HRelation,
    pub k_min: usize,
}

impl Hypothesis {
    pub fn admits_hk(&self, h: u32, k: usize) -> bool {
        if h < self.h_min || k < self.k_min {
            return false;
        }
        let h = h as usize;
        match self.h_relation {
            HRelation::AtMostK => h <= k,
            HRelation::AtMostKMinusOne => h < k,
            HRelation::AtMostKMinusTwo => h + 2 <= k,
            HRelation::EqualsK => h == k,
            HRelation::EqualsKMinusOne => h + 1 == k,
        }
    }

    pub fn admits(&self, a: &IntegerSet, h: u32) -> bool {
        if self.requires_zero && !(a.contains_zero() && a.is_all_nonnegative()) {
            return false;
        }
        if self.requires_positive && !a.is_all_positive() {
            return false;
        }
        self.admits_hk(h, a.len())
    }
}

impl BoundKind {
    pub const ALL: [BoundKind; 8] = [
        BoundKind::RestrictedDirect,
        BoundKind::SignedPositiveGeneral,
        BoundKind::SignedNonnegGeneral,
        BoundKind::PositiveMidRange,
        BoundKind::NonnegMidRange,
        BoundKind::PositiveFullK,
        BoundKind::NonnegFullK,
        BoundKind::HPlusOneCase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::RestrictedDirect => "restricted-direct",
            BoundKind::SignedPositiveGeneral => "signed-positive-general",
            BoundKind::SignedNonnegGeneral => "signed-nonneg-general",
            BoundKind::PositiveMidRange => "positive-mid-range",
            BoundKind::NonnegMidRange => "nonneg-mid-range",
            BoundKind::PositiveFullK => "positive-full-k",
            BoundKind::NonnegFullK => "nonneg-full-k",
            BoundKind::HPlusOneCase => "h-plus-one-case",
        }
    }

    pub fn subject(self) -> BoundSubject {
        match self {
            BoundKind::RestrictedDirect => BoundSubject::Restricted,
            _ => BoundSubject::RestrictedSigned,
        }
    }

    /// Whether the bound is a proved theorem. A violation of a proved
    /// bound indicates an engine bug; a violation of a conjectured bound
    /// would be a discovery. Every current kind is proved.
    pub fn is_proved(self) -> bool {
        true
    }

    pub fn hypothesis(self) -> Hypothesis {
        use HRelation::*;
        let (requires_zero, requires_positive, h_min, h_relation, k_min) = match self {
            BoundKind::RestrictedDirect => (false, false, 2, AtMostKMinusTwo, 5),
            BoundKind::SignedPositiveGeneral => (false, true, 1, AtMostK, 1),
            BoundKind::SignedNonnegGeneral => (true, false, 1, AtMostK, 1),
            BoundKind::PositiveMidRange => (false, true, 3, AtMostKMinusOne, 4),
            BoundKind::NonnegMidRange => (true, false, 3, AtMostKMinusOne, 5),
            BoundKind::PositiveFullK => (false, true, 3, EqualsK, 3),
            BoundKind::NonnegFullK => (true, false, 3, EqualsK, 3),
            BoundKind::HPlusOneCase => (true, false, 4, EqualsKMinusOne, 5),
        };
        Hypothesis {
            requires_zero,
            requires_positive,
            h_min,
            h_relation,
            k_min,
        }
    }

    /// Raw formula value, with no hypothesis gating. Intended for
    /// algebraic identity checks; use [`lower_bound`] for gated access.
    pub fn formula(self, h: u64, k: u64) -> i64 {
        let h = h as i64;
        let k = k as i64;
        match self {
            BoundKind::RestrictedDirect => h * k - h * h + 1,
            BoundKind::SignedPositiveGeneral => 2 * (h * k - h * h) + h * (h + 1) / 2 + 1,
            BoundKind::SignedNonnegGeneral => 2 * (h * k - h * h) + h * (h - 1) / 2 + 1,
            BoundKind::PositiveMidRange => 2 * h * k - h * h + 1,
            BoundKind::NonnegMidRange => 2 * h * k - h * (h + 1) + 1,
            BoundKind::PositiveFullK => h * (h + 1) / 2 + 1,
            BoundKind::NonnegFullK => h * (h - 1) / 2 + 1,
            BoundKind::HPlusOneCase => h * h + h + 1,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundKind::ALL
            .into_iter()
            .find(|kind| kind.name() == s)
            .ok_or_else(|| format!("unknown bound kind `{s}`"))
    }
}

/// The exact formula value, provided `(h, k)` satisfies the kind's
/// hypothesis range.
pub fn lower_bound(kind: BoundKind, h: u32, k: usize) -> Result<i64, BoundError> {
    if h == 0 {
        return Err(EngineError::ZeroH.into());
    }
    if !kind.hypothesis().admits_hk(h, k) {
        return Err(BoundError::Inapplicable { kind, h, k });
    }
    Ok(kind.formula(h as u64, k as u64))
}

/// Every bound kind whose hypothesis `(A, h)` satisfies, in declaration
/// order.
pub fn applicable_bounds(a: &IntegerSet, h: u32) -> Result<Vec<BoundKind>, BoundError> {
    if h == 0 {
        return Err(EngineError::ZeroH.into());
    }
    if h as usize > a.len() {
        return Err(EngineError::InfeasibleH { h, k: a.len() }.into());
    }
    Ok(BoundKind::ALL
        .into_iter()
        .filter(|kind| kind.hypothesis().admits(a, h))
        .collect())
}

/// One evaluated bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub kind: BoundKind,
    pub bound: i64,
    pub actual: u64,
    pub satisfied: bool,
    pub is_equality: bool,
}

/// Every applicable bound evaluated against the computed cardinalities.
///
/// A `satisfied = false` row on a proved bound indicates an engine bug,
/// not a mathematical discovery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub set: IntegerSet,
    pub h: u32,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn row(&self, kind: BoundKind) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.kind == kind)
    }

    pub fn all_satisfied(&self) -> bool {
        self.rows.iter().all(|r| r.satisfied)
    }
}

/// Checks `(A, h)` against every applicable bound. `RestrictedDirect` is
/// compared with `|h^A|`; all other kinds with `|h^±A|`.
pub fn check_bounds(a: &IntegerSet, h: u32) -> Result<BoundReport, BoundError> {
    let kinds = applicable_bounds(a, h)?;
    let mut restricted_card: Option<u64> = None;
    let mut signed_card: Option<u64> = None;
    let mut rows = Vec::with_capacity(kinds.len());
    for kind in kinds {
        let actual = match kind.subject() {
            BoundSubject::Restricted => match restricted_card {
                Some(c) => c,
                None => {
                    let c = restricted_sumset(a, h)?.cardinality();
                    restricted_card = Some(c);
                    c
                }
            },
            BoundSubject::RestrictedSigned => match signed_card {
                Some(c) => c,
                None => {
                    let c = restricted_signed_sumset(a, h)?.cardinality();
                    signed_card = Some(c);
                    c
                }
            },
        };
        let bound = kind.formula(h as u64, a.len() as u64);
        rows.push(BoundRow {
            kind,
            bound,
            actual,
            satisfied: actual as i128 >= bound as i128,
            is_equality: actual as i128 == bound as i128,
        });
    }
    Ok(BoundReport {
        set: a.clone(),
        h,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elems: &[i64]) -> IntegerSet {
        IntegerSet::new(elems.to_vec()).unwrap()
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(BoundKind::NonnegMidRange, 4, 5).unwrap(), 21);
        assert_eq!(lower_bound(BoundKind::HPlusOneCase, 5, 6).unwrap(), 31);
        assert_eq!(lower_bound(BoundKind::RestrictedDirect, 2, 5).unwrap(), 7);
        assert_eq!(lower_bound(BoundKind::PositiveMidRange, 3, 4).unwrap(), 16);
        assert_eq!(lower_bound(BoundKind::NonnegMidRange, 4, 6).unwrap(), 29);
    }

    #[test]
    fn lower_bound_gates_on_hypothesis() {
        assert!(matches!(
            lower_bound(BoundKind::NonnegMidRange, 4, 4),
            Err(BoundError::Inapplicable { .. })
        ));
        assert!(matches!(
            lower_bound(BoundKind::PositiveFullK, 4, 5),
            Err(BoundError::Inapplicable { .. })
        ));
        assert!(matches!(
            lower_bound(BoundKind::RestrictedDirect, 4, 5),
            Err(BoundError::Inapplicable { .. })
        ));
        assert!(matches!(
            lower_bound(BoundKind::NonnegMidRange, 0, 5),
            Err(BoundError::Engine(EngineError::ZeroH))
        ));
        assert!(matches!(
            lower_bound(BoundKind::HPlusOneCase, 3, 4),
            Err(BoundError::Inapplicable { .. })
        ));
    }

    #[test]
    fn h_plus_one_bound_fails_at_h3() {
        // The reason the k = h + 1 bound is gated at h >= 4: this set
        // reaches only 12 sums, below h² + h + 1 = 13.
        let a = set(&[0, 1, 2, 4]);
        let actual = crate::sumset::restricted_signed_sumset(&a, 3).unwrap();
        assert_eq!(actual.cardinality(), 12);
        assert!(
            (actual.cardinality() as i64) < BoundKind::HPlusOneCase.formula(3, 4),
            "the h = 3 cell would violate the formula"
        );
    }

    #[test]
    fn applicable_bounds_examples() {
        assert_eq!(
            applicable_bounds(&set(&[0, 1, 2, 3, 4]), 4).unwrap(),
            vec![BoundKind::SignedNonnegGeneral, BoundKind::NonnegMidRange, BoundKind::HPlusOneCase]
        );
        assert_eq!(
            applicable_bounds(&set(&[1, 3, 5, 7]), 4).unwrap(),
            vec![BoundKind::SignedPositiveGeneral, BoundKind::PositiveFullK]
        );
        assert_eq!(
            applicable_bounds(&set(&[0, 2, 3]), 3).unwrap(),
            vec![BoundKind::SignedNonnegGeneral, BoundKind::NonnegFullK]
        );
        // Sets with negative elements satisfy no sign hypothesis; only the
        // restricted-direct range could admit them.
        assert_eq!(applicable_bounds(&set(&[-2, 1, 3]), 2).unwrap(), vec![]);
    }

    #[test]
    fn check_bounds_examples() {
        let report = check_bounds(&set(&[0, 1, 2, 3, 4]), 4).unwrap();
        let row = report.row(BoundKind::NonnegMidRange).unwrap();
        assert_eq!((row.bound, row.actual, row.is_equality), (21, 21, true));
        assert!(report.all_satisfied());

        let report = check_bounds(&set(&[0, 1, 2, 3, 5]), 4).unwrap();
        let row = report.row(BoundKind::NonnegMidRange).unwrap();
        assert_eq!((row.bound, row.actual, row.is_equality), (21, 23, false));
        assert!(row.satisfied);

        let report = check_bounds(&set(&[1, 2, 3]), 3).unwrap();
        let row = report.row(BoundKind::PositiveFullK).unwrap();
        assert_eq!(row.bound, 7);
        assert_eq!(row.actual, set(&[1, 2, 3]).subset_sums().len() as u64);
        assert!(row.is_equality);
    }

    #[test]
    fn formulas_coincide_at_k_equals_h_plus_one() {
        for h in 3..=64u64 {
            assert_eq!(
                BoundKind::NonnegMidRange.formula(h, h + 1),
                BoundKind::HPlusOneCase.formula(h, h + 1),
                "h = {h}"
            );
        }
    }

    #[test]
    fn general_bounds_differ_by_h() {
        for h in 1..=40u64 {
            for k in h..=40 {
                let diff = BoundKind::SignedPositiveGeneral.formula(h, k)
                    - BoundKind::SignedNonnegGeneral.formula(h, k);
                assert_eq!(diff, h as i64, "h = {h}, k = {k}");
            }
        }
    }

    #[test]
    fn formulas_nondecreasing_in_k() {
        for kind in BoundKind::ALL {
            for h in 1..=20u64 {
                let mut prev = i64::MIN;
                for k in h..=30 {
                    if kind.hypothesis().admits_hk(h as u32, k as usize) {
                        let v = kind.formula(h, k);
                        assert!(v >= prev, "{kind} decreased at h = {h}, k = {k}");
                        prev = v;
                    }
                }
            }
        }
    }

    #[test]
    fn bound_kind_names_roundtrip() {
        for kind in BoundKind::ALL {
            assert_eq!(kind.name().parse::<BoundKind>().unwrap(), kind);
        }
        assert!("no-such-bound".parse::<BoundKind>().is_err());
    }

    #[test]
    fn sign_requirements_are_mutually_exclusive() {
        for kind in BoundKind::ALL {
            let hyp = kind.hypothesis();
            assert!(!(hyp.requires_zero && hyp.requires_positive), "{kind}");
        }
    }
}
