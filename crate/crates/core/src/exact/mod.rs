//! Exact integer and rational arithmetic: small dense matrices, polynomials,
//! cyclotomic factor detection and certified real-root enclosures.

mod interval;
mod matrix;
mod poly;

pub use interval::{brackets_sign_change, spectral_radius_bounds, RationalInterval};
pub use matrix::{is_isometry, IntMatrix};
pub use poly::{cyclotomic, cyclotomic_root_of_unity_part, strip_cyclotomic, CyclotomicFactor, IntPolynomial};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_traits::Signed;

use crate::error::Result;

/// `det(tI − M)`.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial> {
    m.char_poly()
}

/// Exact square root of a nonnegative perfect square, `None` otherwise.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}
