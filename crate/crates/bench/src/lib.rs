//! Fixed instance suites for the solver benchmarks.

use matchmanip::hardness::{gen_random, gen_reduction, ReductionParams};
use matchmanip::{Instance, Side};

/// `count` random markets of size `k` with `voters` honest ballots.
pub fn random_suite(k: usize, voters: usize, manipulators: usize, side: Side, count: usize) -> Vec<Instance> {
    (0..count as u64)
        .map(|seed| gen_random(k, voters, manipulators, side, seed).expect("k >= 1"))
        .collect()
}

/// The YES gadget for `X = (3, 3)`.
pub fn gadget(side: Side) -> Instance {
    gen_reduction(&[3, 3], side, ReductionParams::default()).expect("valid X")
}
