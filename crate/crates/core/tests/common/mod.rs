#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::test_runner::{Config, RngSeed};

pub const SEED: u64 = 0x4b33_a7e1;

/// Deterministic proptest configuration: fixed seed, no persistence files.
pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Parameters in `5..=200` for which `b_a` represents `−2` but not `0`,
/// computed independently with sympy's `diop_DN` and unit orbits.
pub const NODAL_NONELLIPTIC: [i64; 20] =
    [7, 13, 15, 23, 37, 47, 55, 63, 77, 85, 93, 103, 117, 125, 127, 133, 135, 167, 175, 183];

/// Parameters in `5..=200` for which `4x² + 2axy + 4y² − 2z²` has a nontrivial
/// integer zero, from the same independent computation.
pub const Q_ISOTROPIC: [i64; 24] =
    [5, 12, 13, 21, 27, 32, 45, 60, 67, 68, 75, 77, 85, 93, 96, 117, 123, 132, 140, 157, 165, 171, 192, 195];
