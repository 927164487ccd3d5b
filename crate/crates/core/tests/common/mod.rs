//! Shared helpers for the integration suites: a deterministic generator
//! for scalars and matrices over the entry alphabet the constructions
//! actually use.
#![allow(dead_code)] // each test target uses its own subset

use minor_designs::matrix::ExactMatrix;
use minor_designs::scalar::Scalar;

/// SplitMix64: tiny, deterministic, good enough for test streams.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// A scalar drawn from the matrix-entry alphabet: small rationals plus
/// the roots of unity and their halves.
pub fn entry_scalar(rng: &mut SplitMix64) -> Scalar {
    match rng.below(12) {
        0 => Scalar::zero(),
        1 => Scalar::one(),
        2 => Scalar::from_int(-1),
        3 => Scalar::from_int(2),
        4 => Scalar::from_int(-2),
        5 => Scalar::rational(1, 2),
        6 => Scalar::rational(-1, 2),
        7 => Scalar::i(),
        8 => -Scalar::i(),
        9 => Scalar::omega(),
        10 => Scalar::omega2(),
        _ => &Scalar::i() * &Scalar::rational(1, 2),
    }
}

/// A general field element with bounded coordinates, exercising the
/// denominators.
pub fn general_scalar(rng: &mut SplitMix64) -> Scalar {
    let coord = |rng: &mut SplitMix64| num_bigint::BigInt::from(rng.below(11) as i64 - 5);
    let num = [coord(rng), coord(rng), coord(rng), coord(rng)];
    let den = num_bigint::BigUint::from(rng.below(6) + 1);
    Scalar::from_parts(num, den).expect("nonzero denominator")
}

pub fn random_entry_matrix(rng: &mut SplitMix64, n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, |_, _| entry_scalar(rng))
}
