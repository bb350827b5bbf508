//! Finite integer sets and the structural operations applied to them:
//! dilation, negation, absolute values, element removal, arithmetic
//! progression detection, subset sums and the canonical gcd form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bitset::BitRow;

/// Cap on materialised set sizes; keeps `interval` and parsing from
/// allocating absurd amounts of memory before the arithmetic guard
/// would even matter.
const MAX_CARDINALITY: usize = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("invalid interval: {0} > {1}")]
    InvalidInterval(i64, i64),
    #[error("dilation factor must be nonzero")]
    ZeroDilation,
    #[error("duplicate element {0}")]
    DuplicateElement(i64),
    #[error("element {0} not in set")]
    ElementNotFound(i64),
    #[error("removing the last element would leave the set empty")]
    WouldBeEmpty,
    #[error("set has no nonzero element, so no canonical form")]
    NoCanonicalForm,
    #[error("set must be nonempty")]
    Empty,
    #[error("worst-case sum magnitude exceeds the supported integer range")]
    OverflowGuard,
    #[error("cannot parse set literal: {0}")]
    Parse(String),
}

/// A nonempty, strictly increasing finite set of integers.
///
/// All operations are pure; values are `Send + Sync` and freely shared
/// between threads. Construction enforces the overflow guard: the
/// worst-case sum magnitude `k * max|a|` must fit in an `i64`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntegerSet {
    elements: Vec<i64>,
}

impl IntegerSet {
    /// Builds a set from arbitrary elements, sorting them and rejecting
    /// duplicates.
    pub fn new(elements: impl Into<Vec<i64>>) -> Result<Self, SetError> {
        let mut elements = elements.into();
        elements.sort_unstable();
        for pair in elements.windows(2) {
            if pair[0] == pair[1] {
                return Err(SetError::DuplicateElement(pair[0]));
            }
        }
        Self::from_sorted(elements)
    }

    /// Like [`IntegerSet::new`] but collapses duplicates instead of
    /// rejecting them; used by operations such as `abs_set` where
    /// collisions are expected.
    fn new_dedup(mut elements: Vec<i64>) -> Result<Self, SetError> {
        elements.sort_unstable();
        elements.dedup();
        Self::from_sorted(elements)
    }

    fn from_sorted(elements: Vec<i64>) -> Result<Self, SetError> {
        if elements.is_empty() {
            return Err(SetError::Empty);
        }
        if elements.len() > MAX_CARDINALITY {
            return Err(SetError::OverflowGuard);
        }
        let k = elements.len() as i128;
        let max_abs = elements.iter().map(|&a| (a as i128).abs()).max().unwrap_or(0);
        if k * max_abs > i64::MAX as i128 {
            return Err(SetError::OverflowGuard);
        }
        Ok(IntegerSet { elements })
    }

    /// The interval of integers `{a, a+1, ..., b}`.
    pub fn interval(a: i64, b: i64) -> Result<Self, SetError> {
        if a > b {
            return Err(SetError::InvalidInterval(a, b));
        }
        let len = (b as i128) - (a as i128) + 1;
        if len > MAX_CARDINALITY as i128 {
            return Err(SetError::OverflowGuard);
        }
        Self::from_sorted((a..=b).collect())
    }

    pub fn singleton(a: i64) -> Self {
        IntegerSet { elements: vec![a] }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    #[inline]
    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    #[inline]
    pub fn min_element(&self) -> i64 {
        self.elements[0]
    }

    #[inline]
    pub fn max_element(&self) -> i64 {
        *self.elements.last().unwrap()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0)
    }

    pub fn is_all_positive(&self) -> bool {
        self.min_element() > 0
    }

    pub fn is_all_nonnegative(&self) -> bool {
        self.min_element() >= 0
    }

    /// `A ∩ (-A) ⊆ {0}`: no nonzero element appears together with its
    /// negation.
    pub fn abs_disjoint(&self) -> bool {
        self.elements.iter().all(|&a| a == 0 || !self.contains(-a))
    }

    pub fn is_subset_of(&self, other: &IntegerSet) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }

    /// The dilation `c * A = {c·a : a ∈ A}` for nonzero `c`.
    pub fn dilate(&self, c: i64) -> Result<Self, SetError> {
        if c == 0 {
            return Err(SetError::ZeroDilation);
        }
        let mut scaled = Vec::with_capacity(self.len());
        for &a in &self.elements {
            scaled.push(a.checked_mul(c).ok_or(SetError::OverflowGuard)?);
        }
        if c < 0 {
            scaled.reverse();
        }
        Self::from_sorted(scaled)
    }

    /// `-A`, i.e. `(-1) * A`.
    pub fn negate(&self) -> Self {
        self.dilate(-1).expect("negation cannot overflow a guarded set")
    }

    /// `{|a| : a ∈ A}`, collapsing collisions like `{-2, 2}`.
    pub fn abs_set(&self) -> Self {
        Self::new_dedup(self.elements.iter().map(|&a| a.abs()).collect())
            .expect("absolute values of a guarded set stay guarded")
    }

    /// The set with `a` removed; the set must keep at least one element.
    pub fn remove(&self, a: i64) -> Result<Self, SetError> {
        let idx = self
            .elements
            .binary_search(&a)
            .map_err(|_| SetError::ElementNotFound(a))?;
        if self.len() == 1 {
            return Err(SetError::WouldBeEmpty);
        }
        let mut elements = self.elements.clone();
        elements.remove(idx);
        Ok(IntegerSet { elements })
    }

    /// Detects whether the set is an arithmetic progression.
    ///
    /// Sets of one or two elements always report a witness: a two-element
    /// set uses its single gap, and a singleton uses difference 1 by
    /// convention, so that downstream classifiers get a total answer.
    pub fn is_ap(&self) -> Option<ApWitness> {
        let k = self.len();
        if k == 1 {
            return Some(ApWitness {
                first_term: self.elements[0],
                common_difference: 1,
                length: 1,
            });
        }
        let d = self.elements[1] - self.elements[0];
        for pair in self.elements.windows(2) {
            if pair[1] - pair[0] != d {
                return None;
            }
        }
        Some(ApWitness {
            first_term: self.elements[0],
            common_difference: d,
            length: k,
        })
    }

    /// The set `Σ(A)` of all subset sums, including 0 for the empty subset.
    pub fn subset_sums(&self) -> Self {
        let neg: i64 = self.elements.iter().filter(|&&a| a < 0).sum();
        let pos: i64 = self.elements.iter().filter(|&&a| a > 0).sum();
        // Both sums fit: |neg| + pos <= k * max|a| <= i64::MAX by the guard.
        let width = (pos - neg + 1) as usize;
        let offset = -neg;
        let mut row = BitRow::new(width);
        row.set(offset as usize);
        for &a in &self.elements {
            row.or_shifted_in_place(a);
        }
        let elements: Vec<i64> = row.iter_ones().map(|i| i as i64 - offset).collect();
        Self::from_sorted(elements).expect("subset sums of a guarded set stay guarded")
    }

    /// Factors out the gcd `d` of the elements (zeros ignored), returning
    /// `(d, A')` with `A = d * A'` and `gcd(A') = 1`.
    pub fn canonical_form(&self) -> Result<(i64, Self), SetError> {
        let d = self.elements_gcd();
        if d == 0 {
            return Err(SetError::NoCanonicalForm);
        }
        let reduced = IntegerSet {
            elements: self.elements.iter().map(|&a| a / d).collect(),
        };
        Ok((d, reduced))
    }

    /// gcd of all elements, ignoring zeros; 0 when every element is zero.
    pub fn elements_gcd(&self) -> i64 {
        self.elements.iter().fold(0i64, |g, &a| gcd(g, a.abs()))
    }

    /// Parses the set literal format: comma-separated integers with
    /// optional whitespace, e.g. `0,1,2,4,6`. Elements are sorted;
    /// duplicates are rejected.
    pub fn parse(text: &str) -> Result<Self, SetError> {
        let mut elements = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return Err(SetError::Parse(format!("empty element in `{text}`")));
            }
            let value: i64 = token
                .parse()
                .map_err(|_| SetError::Parse(format!("`{token}` is not an integer")))?;
            elements.push(value);
        }
        Self::new(elements)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Witness that a set is the arithmetic progression
/// `{first_term + i·d : 0 ≤ i < length}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApWitness {
    pub first_term: i64,
    pub common_difference: i64,
    pub length: usize,
}

impl ApWitness {
    pub fn reconstruct(&self) -> IntegerSet {
        let elements = (0..self.length as i64)
            .map(|i| self.first_term + i * self.common_difference)
            .collect();
        IntegerSet { elements }
    }
}

impl fmt::Display for IntegerSet {
    /// Ascending, comma-separated, no spaces: `0,1,2,4,6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for IntegerSet {
    type Err = SetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for IntegerSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntegerSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        IntegerSet::parse(&text).map_err(serde::de::Error::custom)
    }
}
