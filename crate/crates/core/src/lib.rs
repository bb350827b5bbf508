//! Sumset computation and verification for finite sets of integers.
//!
//! The crate is organised around a single value type, [`IntegerSet`], and
//! four sumset variants of an `h` parameter over such a set:
//!
//! * the ordinary `h`-fold sumset (coefficients in `[0, h]` summing to `h`),
//! * the restricted sumset (sums of `h` distinct elements),
//! * the signed sumset (integer coefficients of total absolute value `h`),
//! * the restricted signed sumset (coefficients in `{-1, 0, 1}`, exactly
//!   `h` of them nonzero).
//!
//! On top of the engine sit three layers: closed-form lower bounds on the
//! sumset cardinalities ([`bounds`]), structural classification of the sets
//! attaining those bounds ([`inverse`]), and an exhaustive search harness
//! that sweeps bounded windows of canonical sets, checking every applicable
//! bound and harvesting the equality cases ([`search`]).

pub mod bitset;
pub mod bounds;
pub mod inverse;
pub mod search;
pub mod set;
pub mod sumset;

pub use bounds::{applicable_bounds, check_bounds, lower_bound, BoundError, BoundKind, BoundReport, BoundRow, BoundSubject, Hypothesis};
pub use inverse::{classify, predicted_structures, verify_inverse_instance, InversePrediction, StructureClass, StructureFamily};
pub use search::{
    enumerate_canonical_sets, fixture_suite, lemma_reduction_check, run_verify, verify_direct, verify_inverse, Checkpoint,
    Constraint, EqualityCase, FixtureExpectation, FixtureReport, FixtureRow, LemmaReductionOutcome, SearchConfig, SearchError,
    VerificationReport, VerifyMode, Violation,
};
pub use set::{ApWitness, IntegerSet, SetError};
pub use sumset::{
    compute, hfold_sumset, restricted_signed_sumset, restricted_signed_sumset_oracle, restricted_signed_sumset_oracle_with_budget,
    restricted_sumset, signed_sumset, EngineError, SumsetKind, SumsetResult, DEFAULT_ORACLE_BUDGET,
};
