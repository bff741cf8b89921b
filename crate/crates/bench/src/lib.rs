//! Fixed workloads shared by the benchmarks.

use cqsym::combinat::enumerate_compositions;
use cqsym::poset::enumerate_canonical;
use cqsym::{ColoredComposition, ColoredPoset};

/// Canonical posets of exactly `n` elements, relabeled with spread-out
/// values so canonicalization has real work to do.
pub fn relabeled_posets(m: u32, n: usize) -> Vec<ColoredPoset> {
    enumerate_canonical(m, n)
        .iter()
        .map(|p| {
            let vals: Vec<u32> = p.elements().iter().map(|l| 7 * l.value + 2).collect();
            p.with_values(&vals).expect("distinct values")
        })
        .collect()
}

/// Every `m`-colored peak composition of `n`.
pub fn peak_compositions(m: u32, n: u32) -> Vec<ColoredComposition> {
    enumerate_compositions(m, n).into_iter().filter(|a| a.is_peak_composition()).collect()
}

/// Every `m`-colored composition of `n`.
pub fn compositions(m: u32, n: u32) -> Vec<ColoredComposition> {
    enumerate_compositions(m, n)
}
