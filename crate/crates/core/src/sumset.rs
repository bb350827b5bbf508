//! The four sumset variants of a finite integer set.
//!
//! Every variant is computed by a layered bitset dynamic program. Sums are
//! kept in an offset-indexed window `[-S, S]` (index = sum + S) where `S`
//! bounds every reachable partial sum, so a DP transition is a single
//! shifted-OR of one layer into another.
//!
//! The restricted signed variant additionally has an exponential
//! brute-force oracle ([`restricted_signed_sumset_oracle`]) that iterates
//! every support and sign pattern; it exists solely so the DP can be
//! checked against an independent computation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitRow;
use crate::set::IntegerSet;

/// Default cap on oracle workload `C(k,h) * 2^h`.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("h must be a positive integer")]
    ZeroH,
    #[error("h = {h} is infeasible for a set of cardinality k = {k}")]
    InfeasibleH { h: u32, k: usize },
    #[error("sum range exceeds the supported integer range")]
    Overflow,
    #[error("oracle workload {required} exceeds budget {budget}")]
    OracleBudget { required: u128, budget: u64 },
}

/// Which of the four sumset definitions to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumsetKind {
    /// `hA`: coefficients in `[0, h]` summing to exactly `h`.
    Ordinary,
    /// `h^A`: sums of `h` pairwise distinct elements.
    Restricted,
    /// `h±A`: integer coefficients with total absolute value exactly `h`.
    Signed,
    /// `h^±A`: coefficients in `{-1, 0, 1}`, exactly `h` nonzero.
    RestrictedSigned,
}

impl SumsetKind {
    pub const ALL: [SumsetKind; 4] = [
        SumsetKind::Ordinary,
        SumsetKind::Restricted,
        SumsetKind::Signed,
        SumsetKind::RestrictedSigned,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SumsetKind::Ordinary => "ordinary",
            SumsetKind::Restricted => "restricted",
            SumsetKind::Signed => "signed",
            SumsetKind::RestrictedSigned => "restricted-signed",
        }
    }
}

impl fmt::Display for SumsetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SumsetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ordinary" => Ok(SumsetKind::Ordinary),
            "restricted" => Ok(SumsetKind::Restricted),
            "signed" => Ok(SumsetKind::Signed),
            "restricted-signed" => Ok(SumsetKind::RestrictedSigned),
            other => Err(format!("unknown sumset kind `{other}`")),
        }
    }
}

/// A computed sumset together with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumsetResult {
    pub sums: IntegerSet,
    pub kind: SumsetKind,
    pub h: u32,
    pub source_cardinality: usize,
}

impl SumsetResult {
    pub fn cardinality(&self) -> u64 {
        self.sums.len() as u64
    }

    /// Closed under negation, i.e. symmetric about 0.
    pub fn is_symmetric(&self) -> bool {
        self.sums.elements().iter().all(|&s| self.sums.contains(-s))
    }
}

/// Dispatches to the sumset operation named by `kind`.
pub fn compute(kind: SumsetKind, a: &IntegerSet, h: u32) -> Result<SumsetResult, EngineError> {
    match kind {
        SumsetKind::Ordinary => hfold_sumset(a, h),
        SumsetKind::Restricted => restricted_sumset(a, h),
        SumsetKind::Signed => signed_sumset(a, h),
        SumsetKind::RestrictedSigned => restricted_signed_sumset(a, h),
    }
}

fn require_positive_h(h: u32) -> Result<(), EngineError> {
    if h == 0 {
        Err(EngineError::ZeroH)
    } else {
        Ok(())
    }
}

fn require_h_at_most_k(h: u32, k: usize) -> Result<(), EngineError> {
    if h as usize > k {
        Err(EngineError::InfeasibleH { h, k })
    } else {
        Ok(())
    }
}

fn checked_width(span: i128) -> Result<usize, EngineError> {
    // span = number of representable sums - 1; cap the bitset at 2^31 bits.
    if !(0..1i128 << 31).contains(&span) {
        return Err(EngineError::Overflow);
    }
    Ok(span as usize + 1)
}

/// Sum of the `h` largest absolute values; bounds every partial sum of the
/// restricted signed DP.
fn sum_of_largest_abs(a: &IntegerSet, h: usize) -> Result<i64, EngineError> {
    let mut abs: Vec<i64> = a.elements().iter().map(|&x| x.abs()).collect();
    abs.sort_unstable_by(|x, y| y.cmp(x));
    let s: i128 = abs.iter().take(h).map(|&x| x as i128).sum();
    if s > i64::MAX as i128 {
        return Err(EngineError::Overflow);
    }
    Ok(s as i64)
}

fn collect_layer(layer: &BitRow, offset: i64) -> IntegerSet {
    let elements: Vec<i64> = layer.iter_ones().map(|i| i as i64 - offset).collect();
    IntegerSet::new(elements).expect("DP layer is nonempty and within the guarded range")
}

/// The ordinary `h`-fold sumset `hA`: all sums of `h` elements with
/// repetition allowed.
pub fn hfold_sumset(a: &IntegerSet, h: u32) -> Result<SumsetResult, EngineError> {
    require_positive_h(h)?;
    let k = a.len();
    // Translate to a nonnegative set so partial sums grow monotonically:
    // h(A + c) = hA + h·c.
    let base = a.min_element();
    let shifted: Vec<i64> = a.elements().iter().map(|&x| x - base).collect();
    let top = (h as i128) * (*shifted.last().unwrap() as i128);
    let width = checked_width(top)?;

    let mut layers: Vec<BitRow> = (0..=h as usize).map(|_| BitRow::new(width)).collect();
    layers[0].set(0);
    for &x in &shifted {
        for j in (1..=h as usize).rev() {
            // Element multiplicity m is bounded by the remaining weight j;
            // lower layers are still untouched for this element because j
            // descends.
            for m in 1..=j {
                let (lower, upper) = layers.split_at_mut(j);
                upper[0].or_shifted(&lower[j - m], m as i64 * x);
            }
        }
    }

    let back = (h as i128) * (base as i128);
    if back.abs() > i64::MAX as i128 {
        return Err(EngineError::Overflow);
    }
    Ok(SumsetResult {
        sums: collect_layer(&layers[h as usize], -(back as i64)),
        kind: SumsetKind::Ordinary,
        h,
        source_cardinality: k,
    })
}

/// The restricted sumset `h^A`: all sums of `h` pairwise distinct elements.
pub fn restricted_sumset(a: &IntegerSet, h: u32) -> Result<SumsetResult, EngineError> {
    require_positive_h(h)?;
    let k = a.len();
    require_h_at_most_k(h, k)?;
    let base = a.min_element();
    let shifted: Vec<i64> = a.elements().iter().map(|&x| x - base).collect();
    let mut sorted = shifted.clone();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    let top: i128 = sorted.iter().take(h as usize).map(|&x| x as i128).sum();
    let width = checked_width(top)?;

    let mut layers: Vec<BitRow> = (0..=h as usize).map(|_| BitRow::new(width)).collect();
    layers[0].set(0);
    for &x in &shifted {
        for j in (1..=h as usize).rev() {
            let (lower, upper) = layers.split_at_mut(j);
            upper[0].or_shifted(&lower[j - 1], x);
        }
    }

    let back = (h as i128) * (base as i128);
    if back.abs() > i64::MAX as i128 {
        return Err(EngineError::Overflow);
    }
    Ok(SumsetResult {
        sums: collect_layer(&layers[h as usize], -(back as i64)),
        kind: SumsetKind::Restricted,
        h,
        source_cardinality: k,
    })
}

/// The signed sumset `h±A`: sums `Σ λᵢaᵢ` with integer coefficients of
/// total absolute value exactly `h`. Always symmetric about 0.
pub fn signed_sumset(a: &IntegerSet, h: u32) -> Result<SumsetResult, EngineError> {
    require_positive_h(h)?;
    let k = a.len();
    let max_abs = a.elements().iter().map(|&x| x.abs()).max().unwrap();
    let s = (h as i128) * (max_abs as i128);
    let width = checked_width(2 * s)?;
    let offset = s as i64;

    let mut layers: Vec<BitRow> = (0..=h as usize).map(|_| BitRow::new(width)).collect();
    layers[0].set(offset as usize);
    for &x in a.elements() {
        for j in (1..=h as usize).rev() {
            // λ = ±m for this element spends m units of weight at once.
            for m in 1..=j {
                let shift = m as i64 * x;
                let (lower, upper) = layers.split_at_mut(j);
                upper[0].or_shifted(&lower[j - m], shift);
                upper[0].or_shifted(&lower[j - m], -shift);
            }
        }
    }

    Ok(SumsetResult {
        sums: collect_layer(&layers[h as usize], offset),
        kind: SumsetKind::Signed,
        h,
        source_cardinality: k,
    })
}

/// The restricted signed sumset `h^±A`: sign vectors over `{-1, 0, 1}`
/// with exactly `h` nonzero entries on distinct elements.
///
/// Layer `j` holds every partial sum reachable with `j` nonzero
/// coefficients among the elements processed so far; the window is
/// `[-S, S]` with `S` the sum of the `h` largest absolute values. If
/// `0 ∈ A` it may carry a nonzero coefficient, spending one unit of
/// weight without moving the sum.
pub fn restricted_signed_sumset(a: &IntegerSet, h: u32) -> Result<SumsetResult, EngineError> {
    require_positive_h(h)?;
    let k = a.len();
    require_h_at_most_k(h, k)?;
    let s = sum_of_largest_abs(a, h as usize)?;
    let width = checked_width(2 * s as i128)?;

    let mut layers: Vec<BitRow> = (0..=h as usize).map(|_| BitRow::new(width)).collect();
    layers[0].set(s as usize);
    for &x in a.elements() {
        for j in (1..=h as usize).rev() {
            let (lower, upper) = layers.split_at_mut(j);
            upper[0].or_shifted(&lower[j - 1], x);
            upper[0].or_shifted(&lower[j - 1], -x);
        }
    }

    Ok(SumsetResult {
        sums: collect_layer(&layers[h as usize], s),
        kind: SumsetKind::RestrictedSigned,
        h,
        source_cardinality: k,
    })
}

/// Budget for the oracle, read from `SUMSET_ORACLE_BUDGET` when set.
pub fn oracle_budget_from_env() -> u64 {
    std::env::var("SUMSET_ORACLE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BUDGET)
}

/// Brute-force restricted signed sumset: iterates all `C(k,h)` supports
/// and `2^h` sign patterns. Independent of the DP by construction.
pub fn restricted_signed_sumset_oracle(a: &IntegerSet, h: u32) -> Result<SumsetResult, EngineError> {
    restricted_signed_sumset_oracle_with_budget(a, h, oracle_budget_from_env())
}

pub fn restricted_signed_sumset_oracle_with_budget(
    a: &IntegerSet,
    h: u32,
    budget: u64,
) -> Result<SumsetResult, EngineError> {
    require_positive_h(h)?;
    let k = a.len();
    require_h_at_most_k(h, k)?;
    let required = binomial(k as u128, h as u128).saturating_mul(1u128 << h.min(127));
    if required > budget as u128 {
        return Err(EngineError::OracleBudget { required, budget });
    }

    let h = h as usize;
    let elems = a.elements();
    let mut sums = Vec::new();
    let mut support: Vec<usize> = (0..h).collect();
    loop {
        for signs in 0..1u64 << h {
            let mut total: i64 = 0;
            for (bit, &idx) in support.iter().enumerate() {
                if signs >> bit & 1 == 1 {
                    total -= elems[idx];
                } else {
                    total += elems[idx];
                }
            }
            sums.push(total);
        }
        // Advance the support combination in lexicographic order.
        let mut i = h;
        loop {
            if i == 0 {
                sums.sort_unstable();
                sums.dedup();
                return Ok(SumsetResult {
                    sums: IntegerSet::new(sums).expect("oracle produced at least one sum"),
                    kind: SumsetKind::RestrictedSigned,
                    h: h as u32,
                    source_cardinality: k,
                });
            }
            i -= 1;
            if support[i] != i + k - h {
                break;
            }
        }
        support[i] += 1;
        for j in i + 1..h {
            support[j] = support[j - 1] + 1;
        }
    }
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elems: &[i64]) -> IntegerSet {
        IntegerSet::new(elems.to_vec()).unwrap()
    }

    fn sums(result: &SumsetResult) -> &[i64] {
        result.sums.elements()
    }

    #[test]
    fn hfold_examples() {
        assert_eq!(sums(&hfold_sumset(&set(&[0, 1]), 2).unwrap()), &[0, 1, 2]);
        assert_eq!(sums(&hfold_sumset(&set(&[0, 1, 3]), 2).unwrap()), &[0, 1, 2, 3, 4, 6]);
        assert_eq!(sums(&hfold_sumset(&set(&[5]), 4).unwrap()), &[20]);
        let r = hfold_sumset(&set(&[-2, 1, 3]), 3).unwrap();
        assert_eq!(r.sums.min_element(), -6);
        assert_eq!(r.sums.max_element(), 9);
    }

    #[test]
    fn restricted_examples() {
        assert_eq!(sums(&restricted_sumset(&set(&[0, 1, 3]), 2).unwrap()), &[1, 3, 4]);
        let r = restricted_sumset(&set(&[0, 1, 2, 3, 4]), 2).unwrap();
        assert_eq!(sums(&r), &[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(r.cardinality(), 7); // = 2*5 - 4 + 1
        assert_eq!(sums(&restricted_sumset(&set(&[0, 1, 2]), 3).unwrap()), &[3]);
        assert_eq!(
            restricted_sumset(&set(&[0, 1]), 5),
            Err(EngineError::InfeasibleH { h: 5, k: 2 })
        );
    }

    #[test]
    fn signed_examples() {
        assert_eq!(sums(&signed_sumset(&set(&[1]), 2).unwrap()), &[-2, 2]);
        assert_eq!(sums(&signed_sumset(&set(&[0, 1]), 2).unwrap()), &[-2, -1, 0, 1, 2]);
        // Weight-1 vectors pick one element with a sign: A ∪ (-A).
        let a = set(&[2, 3, 7]);
        let r = signed_sumset(&a, 1).unwrap();
        assert_eq!(sums(&r), &[-7, -3, -2, 2, 3, 7]);
    }

    #[test]
    fn restricted_signed_examples() {
        assert_eq!(
            sums(&restricted_signed_sumset(&set(&[0, 1, 2]), 2).unwrap()),
            &[-3, -2, -1, 1, 2, 3]
        );
        assert_eq!(sums(&restricted_signed_sumset(&set(&[1, 2]), 2).unwrap()), &[-3, -1, 1, 3]);
        // One nonzero coefficient: A ∪ (-A).
        let a = set(&[0, 1, 4]);
        assert_eq!(sums(&restricted_signed_sumset(&a, 1).unwrap()), &[-4, -1, 0, 1, 4]);
        assert_eq!(
            restricted_signed_sumset(&set(&[0, 1]), 5),
            Err(EngineError::InfeasibleH { h: 5, k: 2 })
        );
    }

    #[test]
    fn fixture_cardinalities() {
        let cases: [(&[i64], u32, u64); 5] = [
            (&[0, 1, 2, 3, 4], 4, 21),
            (&[0, 1, 2, 3, 5], 4, 23),
            (&[0, 1, 2, 3, 6], 4, 25),
            (&[0, 1, 2, 4, 6], 4, 21),
            (&[0, 1, 2, 4, 5], 4, 23),
        ];
        for (elems, h, expected) in cases {
            let r = restricted_signed_sumset(&set(elems), h).unwrap();
            assert_eq!(r.cardinality(), expected, "h^±{{{:?}}}", elems);
        }
    }

    #[test]
    fn full_interval_for_initial_segments() {
        // h^±[0,h] = [-h(h+1)/2, h(h+1)/2] for h >= 5.
        for h in 5..=8i64 {
            let a = IntegerSet::interval(0, h).unwrap();
            let r = restricted_signed_sumset(&a, h as u32).unwrap();
            let half = h * (h + 1) / 2;
            assert_eq!(r.sums, IntegerSet::interval(-half, half).unwrap());
            assert_eq!(r.cardinality() as i64, h * h + h + 1);
        }
    }

    #[test]
    fn kind_names_roundtrip() {
        for kind in SumsetKind::ALL {
            assert_eq!(kind.name().parse::<SumsetKind>().unwrap(), kind);
        }
        assert!("diagonal".parse::<SumsetKind>().is_err());
    }

    #[test]
    fn h_zero_rejected_everywhere() {
        let a = set(&[0, 1, 2]);
        assert_eq!(hfold_sumset(&a, 0), Err(EngineError::ZeroH));
        assert_eq!(restricted_sumset(&a, 0), Err(EngineError::ZeroH));
        assert_eq!(signed_sumset(&a, 0), Err(EngineError::ZeroH));
        assert_eq!(restricted_signed_sumset(&a, 0), Err(EngineError::ZeroH));
        assert_eq!(restricted_signed_sumset_oracle(&a, 0), Err(EngineError::ZeroH));
    }

    #[test]
    fn oracle_matches_dp_on_small_sets() {
        let sets: [&[i64]; 5] = [
            &[0, 1, 2, 3, 4],
            &[0, 1, 2, 4, 6],
            &[1, 3, 5, 7],
            &[-3, -1, 0, 2, 5],
            &[0, 2, 3, 7, 9, 10],
        ];
        for elems in sets {
            let a = set(elems);
            for h in 1..=a.len() as u32 {
                let dp = restricted_signed_sumset(&a, h).unwrap();
                let oracle = restricted_signed_sumset_oracle(&a, h).unwrap();
                assert_eq!(dp.sums, oracle.sums, "A = {a:?}, h = {h}");
            }
        }
    }

    #[test]
    fn oracle_budget_enforced() {
        let a = IntegerSet::interval(0, 29).unwrap();
        let err = restricted_signed_sumset_oracle_with_budget(&a, 15, 1 << 10).unwrap_err();
        assert!(matches!(err, EngineError::OracleBudget { .. }));
    }

    #[test]
    fn signed_kinds_are_symmetric() {
        for elems in [&[0i64, 1, 2, 4][..], &[2, 5, 9][..], &[-4, 1, 3][..]] {
            let a = set(elems);
            for h in 1..=3u32 {
                assert!(signed_sumset(&a, h).unwrap().is_symmetric());
                if h as usize <= a.len() {
                    assert!(restricted_signed_sumset(&a, h).unwrap().is_symmetric());
                }
            }
        }
    }

    #[test]
    fn zero_absorption_superset() {
        // 0 ∈ A: h^±A contains (h-1)^±(A \ {0}).
        let a = set(&[0, 1, 2, 4, 7]);
        for h in 2..=5u32 {
            let whole = restricted_signed_sumset(&a, h).unwrap();
            let dropped = restricted_signed_sumset(&a.remove(0).unwrap(), h - 1).unwrap();
            assert!(dropped.sums.is_subset_of(&whole.sums), "h = {h}");
        }
        // Equality on the full-support odd-element shape {0} ∪ odds.
        let odd = set(&[0, 1, 3, 5]);
        let whole = restricted_signed_sumset(&odd, 4).unwrap();
        let dropped = restricted_signed_sumset(&odd.remove(0).unwrap(), 3).unwrap();
        assert_eq!(whole.sums, dropped.sums);
    }

    #[test]
    fn full_support_identity() {
        // k = h over nonnegative sets: h^±A = min(h^±A) + 2*Σ(A).
        for elems in [&[1i64, 2, 3][..], &[0, 2, 5, 6][..], &[1, 4, 9, 10][..]] {
            let a = set(elems);
            let h = a.len() as u32;
            let r = restricted_signed_sumset(&a, h).unwrap();
            let rebuilt = a
                .subset_sums()
                .dilate(2)
                .unwrap()
                .elements()
                .iter()
                .map(|&s| s + r.sums.min_element())
                .collect::<Vec<_>>();
            assert_eq!(r.sums.elements(), &rebuilt[..]);
        }
        // For arbitrary signs the anchor is -sum(A) rather than the
        // minimum: every full-support sum is -ΣA + 2·(subset sum).
        for elems in [&[-2i64, 1, 4][..], &[-5, -3, 2, 7][..]] {
            let a = set(elems);
            let h = a.len() as u32;
            let r = restricted_signed_sumset(&a, h).unwrap();
            let total: i64 = a.elements().iter().sum();
            let rebuilt = a
                .subset_sums()
                .dilate(2)
                .unwrap()
                .elements()
                .iter()
                .map(|&s| s - total)
                .collect::<Vec<_>>();
            assert_eq!(r.sums.elements(), &rebuilt[..]);
        }
    }
}
