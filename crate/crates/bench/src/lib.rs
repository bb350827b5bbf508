//! Benchmark-only crate; the benchmarks live in `benches/dp.rs`.
//!
//! Shared inputs for the benchmarks are defined here so the numbers are
//! reproducible across runs and machines.

use sumset_core::set::IntegerSet;

/// The documented performance target: k = 40 elements, none above 1000.
pub fn performance_target_set() -> IntegerSet {
    IntegerSet::new((1..=40i64).map(|i| 25 * i).collect::<Vec<_>>()).expect("benchmark set is valid")
}

/// A denser irregular set exercising non-AP windows.
pub fn irregular_set(k: usize) -> IntegerSet {
    // Deterministic quadratic residue spread.
    let elems: Vec<i64> = (1..=k as i64).map(|i| (i * i * 7 + i * 3) % 997 + i).collect();
    let mut dedup: Vec<i64> = elems;
    dedup.sort_unstable();
    dedup.dedup();
    IntegerSet::new(dedup).expect("benchmark set is valid")
}
