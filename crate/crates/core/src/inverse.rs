//! Structural classification of extremal sets.
//!
//! Each lower bound that is attained pins the attaining set to a small
//! family: a dilated interval, a dilated odd progression, one sporadic
//! five-element set, or a sum-closed triple. [`classify`] tests a set
//! against every family by generating the candidate family member from
//! its witness and comparing exactly — no pattern heuristics, so no
//! false positives. [`predicted_structures`] maps a bound kind and an
//! `(h, k)` cell to the families its inverse statement allows, and
//! [`verify_inverse_instance`] checks the implication
//! "equality ⟹ predicted structure" on one concrete instance.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::{lower_bound, BoundError, BoundKind, BoundSubject};
use crate::set::IntegerSet;
use crate::sumset::{restricted_signed_sumset, restricted_sumset};

/// A structural family membership, with its dilation witness where the
/// family is parametric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum StructureClass {
    /// `A = d * {0, 1, ..., k-1}`.
    DilatedInterval { d: i64 },
    /// `A = d * {1, 2, ..., k}`.
    DilatedIntervalFromOne { d: i64 },
    /// `A = d * {1, 3, ..., 2k-1}`.
    DilatedOddAp { d: i64 },
    /// `A = d * {0, 1, 2, 4, 6}`.
    ExceptionalH4K5 { d: i64 },
    /// `A = {a, b, a+b}` with `0 < a < b`.
    TriplePlusSum,
    /// `A = {0, a, b, a+b}` with `0 < a < b`.
    ZeroTriplePlusSum,
    /// A `k`-term arithmetic progression with difference `d`.
    PlainAp { d: i64 },
    /// None of the named families.
    Other,
}

/// Family name without the witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureFamily {
    DilatedInterval,
    DilatedIntervalFromOne,
    DilatedOddAp,
    ExceptionalH4K5,
    TriplePlusSum,
    ZeroTriplePlusSum,
    PlainAp,
    Other,
}

impl StructureClass {
    pub fn family(&self) -> StructureFamily {
        match self {
            StructureClass::DilatedInterval { .. } => StructureFamily::DilatedInterval,
            StructureClass::DilatedIntervalFromOne { .. } => StructureFamily::DilatedIntervalFromOne,
            StructureClass::DilatedOddAp { .. } => StructureFamily::DilatedOddAp,
            StructureClass::ExceptionalH4K5 { .. } => StructureFamily::ExceptionalH4K5,
            StructureClass::TriplePlusSum => StructureFamily::TriplePlusSum,
            StructureClass::ZeroTriplePlusSum => StructureFamily::ZeroTriplePlusSum,
            StructureClass::PlainAp { .. } => StructureFamily::PlainAp,
            StructureClass::Other => StructureFamily::Other,
        }
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureClass::DilatedInterval { d } => write!(f, "DilatedInterval({d})"),
            StructureClass::DilatedIntervalFromOne { d } => write!(f, "DilatedIntervalFromOne({d})"),
            StructureClass::DilatedOddAp { d } => write!(f, "DilatedOddAp({d})"),
            StructureClass::ExceptionalH4K5 { d } => write!(f, "ExceptionalH4K5({d})"),
            StructureClass::TriplePlusSum => write!(f, "TriplePlusSum"),
            StructureClass::ZeroTriplePlusSum => write!(f, "ZeroTriplePlusSum"),
            StructureClass::PlainAp { d } => write!(f, "PlainAp({d})"),
            StructureClass::Other => write!(f, "Other"),
        }
    }
}

fn matches_dilated_pattern(a: &IntegerSet, d: i64, pattern: impl Iterator<Item = i64>) -> bool {
    if d <= 0 {
        return false;
    }
    let mut elems = a.elements().iter();
    for p in pattern {
        match (elems.next(), p.checked_mul(d)) {
            (Some(&e), Some(scaled)) if e == scaled => {}
            _ => return false,
        }
    }
    elems.next().is_none()
}

/// Every named family containing `A`, each with its witness; `[Other]`
/// when no family matches. A set may belong to several families (for
/// example `d * [0, k-1]` is also a plain AP).
pub fn classify(a: &IntegerSet) -> Vec<StructureClass> {
    let k = a.len();
    let elems = a.elements();
    let mut out = Vec::new();

    // d * [0, k-1]: the witness is the second element (d * 1), or 1 for
    // the degenerate singleton {0}.
    if elems[0] == 0 {
        let d = if k >= 2 { elems[1] } else { 1 };
        if matches_dilated_pattern(a, d, 0..k as i64) {
            out.push(StructureClass::DilatedInterval { d });
        }
    }

    // d * [1, k]: the witness is the smallest element (d * 1).
    if elems[0] > 0 && matches_dilated_pattern(a, elems[0], 1..=k as i64) {
        out.push(StructureClass::DilatedIntervalFromOne { d: elems[0] });
    }

    // d * {1, 3, ..., 2k-1}.
    if elems[0] > 0 && matches_dilated_pattern(a, elems[0], (0..k as i64).map(|i| 2 * i + 1)) {
        out.push(StructureClass::DilatedOddAp { d: elems[0] });
    }

    // d * {0, 1, 2, 4, 6}.
    if k == 5 && elems[0] == 0 && matches_dilated_pattern(a, elems[1], [0, 1, 2, 4, 6].into_iter()) {
        out.push(StructureClass::ExceptionalH4K5 { d: elems[1] });
    }

    // {a, b, a+b} with 0 < a < b.
    if k == 3 && elems[0] > 0 && elems[0] + elems[1] == elems[2] {
        out.push(StructureClass::TriplePlusSum);
    }

    // {0, a, b, a+b} with 0 < a < b.
    if k == 4 && elems[0] == 0 && elems[1] + elems[2] == elems[3] {
        out.push(StructureClass::ZeroTriplePlusSum);
    }

    if let Some(witness) = a.is_ap() {
        out.push(StructureClass::PlainAp {
            d: witness.common_difference,
        });
    }

    if out.is_empty() {
        out.push(StructureClass::Other);
    }
    out
}

/// The families an inverse theorem allows for equality at `(kind, h, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversePrediction {
    pub kind: BoundKind,
    pub h: u32,
    pub k: usize,
    pub allowed_structures: Vec<StructureFamily>,
}

/// Maps a bound kind and `(h, k)` cell to its predicted extremal
/// families. Errors when the cell is outside the kind's hypothesis or
/// the kind has no proved inverse characterisation (the two general
/// signed bounds, and the `k = h + 1` case at `h = 3`).
pub fn predicted_structures(kind: BoundKind, h: u32, k: usize) -> Result<InversePrediction, BoundError> {
    if !kind.hypothesis().admits_hk(h, k) {
        return Err(BoundError::Inapplicable { kind, h, k });
    }
    let allowed: Vec<StructureFamily> = match kind {
        BoundKind::RestrictedDirect => vec![StructureFamily::PlainAp],
        BoundKind::PositiveMidRange => vec![StructureFamily::DilatedOddAp],
        BoundKind::NonnegMidRange => {
            if h == 4 && k == 5 {
                vec![StructureFamily::DilatedInterval, StructureFamily::ExceptionalH4K5]
            } else {
                vec![StructureFamily::DilatedInterval]
            }
        }
        BoundKind::HPlusOneCase => {
            // Same extremal families as the mid-range bound at k = h + 1.
            if h == 4 {
                vec![StructureFamily::DilatedInterval, StructureFamily::ExceptionalH4K5]
            } else {
                vec![StructureFamily::DilatedInterval]
            }
        }
        BoundKind::PositiveFullK => {
            if h == 3 {
                vec![StructureFamily::TriplePlusSum]
            } else {
                vec![StructureFamily::DilatedIntervalFromOne]
            }
        }
        BoundKind::NonnegFullK => match h {
            3 => return Err(BoundError::Inapplicable { kind, h, k }),
            4 => vec![StructureFamily::ZeroTriplePlusSum],
            _ => vec![StructureFamily::DilatedInterval],
        },
        BoundKind::SignedPositiveGeneral | BoundKind::SignedNonnegGeneral => {
            // Best possible only at h = 1, 2, k; no structural
            // characterisation is encoded.
            return Err(BoundError::Inapplicable { kind, h, k });
        }
    };
    Ok(InversePrediction {
        kind,
        h,
        k,
        allowed_structures: allowed,
    })
}

/// Checks the inverse implication on one instance: true iff the
/// cardinality misses the bound (implication vacuous) or the set's
/// classification intersects the predicted families.
pub fn verify_inverse_instance(a: &IntegerSet, h: u32, kind: BoundKind) -> Result<bool, BoundError> {
    let k = a.len();
    if !kind.hypothesis().admits(a, h) {
        return Err(BoundError::Inapplicable { kind, h, k });
    }
    let bound = lower_bound(kind, h, k)?;
    let actual = match kind.subject() {
        BoundSubject::Restricted => restricted_sumset(a, h)?.cardinality(),
        BoundSubject::RestrictedSigned => restricted_signed_sumset(a, h)?.cardinality(),
    };
    if actual as i128 != bound as i128 {
        return Ok(true);
    }
    let prediction = predicted_structures(kind, h, k)?;
    Ok(classify(a)
        .iter()
        .any(|class| prediction.allowed_structures.contains(&class.family())))
}
