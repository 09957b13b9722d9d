use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Hilb2Lattice, NsClass};
use crate::error::{Error, Result};
use crate::exact::{cyclotomic_root_of_unity_part, strip_cyclotomic, IntMatrix, IntPolynomial};

/// A class in `H⁴(X, Q)` of the form `Σ cᵢ·αᵢβᵢ + s·Σ`, where `αᵢ, βᵢ` are
/// divisor classes and `Σ` is the class of the surface `T_p = {ξ ∋ p}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FourClass {
    products: Vec<(BigInt, NsClass, NsClass)>,
    sigma: BigInt,
}

impl FourClass {
    pub fn product(a: NsClass, b: NsClass) -> Self {
        FourClass { products: vec![(BigInt::one(), a, b)], sigma: BigInt::zero() }
    }

    pub fn square(a: NsClass) -> Self {
        Self::product(a.clone(), a)
    }

    pub fn sigma(coefficient: impl Into<BigInt>) -> Self {
        FourClass { products: Vec::new(), sigma: coefficient.into() }
    }

    pub fn add(&self, other: &FourClass) -> FourClass {
        let mut products = self.products.clone();
        products.extend(other.products.iter().cloned());
        FourClass { products, sigma: &self.sigma + &other.sigma }
    }

    pub fn scale(&self, k: &BigInt) -> FourClass {
        FourClass {
            products: self.products.iter().map(|(c, a, b)| (c * k, a.clone(), b.clone())).collect(),
            sigma: &self.sigma * k,
        }
    }

    pub fn sigma_coefficient(&self) -> &BigInt {
        &self.sigma
    }

    /// `self · γ · δ` as an integer.
    pub fn intersect(&self, lattice: &Hilb2Lattice, g: &NsClass, d: &NsClass) -> BigInt {
        let divisorial: BigInt = self.products.iter().map(|(c, a, b)| c * lattice.fujiki_product(a, b, g, d)).sum();
        divisorial + &self.sigma * lattice.surface_class_product(g, d)
    }

    pub fn intersect_square(&self, lattice: &Hilb2Lattice, b: &NsClass) -> BigInt {
        self.intersect(lattice, b, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaInvariance {
    pub with_e_squared: BigInt,
    pub image_of_e: NsClass,
    pub with_image_squared: BigInt,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityReport {
    /// Characteristic polynomial of the action on `S²(V) ⊕ V ⊕ 1`.
    pub spectrum: IntPolynomial,
    /// Indices `n` of the cyclotomic factors `Φ_n` of `spectrum`.
    pub root_of_unity_orders: Vec<u64>,
    /// Some eigenvalue of the action on `V` lies off the unit circle.
    pub has_expanding_eigenvalue: bool,
    pub holds: bool,
}

/// For an isometry `g` of `V` with characteristic polynomial `p`, decides
/// whether every `g`-periodic class in `S²(V) ⊕ V ⊕ 1` is already invariant,
/// i.e. whether `1` is the only root of unity among the eigenvalues there.
///
/// Only the spectrum matters, so the companion matrix of `p` stands in for
/// `g`. A spectrum lying entirely on the unit circle is rejected outright.
pub fn periodicity_reduces_to_invariance(p: &IntPolynomial) -> Result<PeriodicityReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let companion = IntMatrix::from_rows(&p.companion_rows()?);
    let sym = companion.symmetric_square()?.char_poly()?;
    let spectrum = sym.mul(p).mul(&IntPolynomial::linear_root(BigInt::one()));

    let mut rest = strip_cyclotomic(p)?;
    while rest.coeff(0).is_zero() && !rest.is_zero() {
        rest = IntPolynomial::new(rest.coeffs()[1..].to_vec());
    }
    let has_expanding_eigenvalue = rest.degree().is_some_and(|d| d > 0);

    let root_of_unity_orders: Vec<u64> =
        cyclotomic_root_of_unity_part(&spectrum)?.into_iter().map(|f| f.index).collect();
    let holds = has_expanding_eigenvalue && root_of_unity_orders.iter().all(|&n| n == 1);
    Ok(PeriodicityReport { spectrum, root_of_unity_orders, has_expanding_eigenvalue, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn salem_type_spectrum_reduces() {
        let p = IntPolynomial::from_i64(&[-1, 24, -24, 1]);
        let r = periodicity_reduces_to_invariance(&p).unwrap();
        assert!(r.holds);
        assert_eq!(r.root_of_unity_orders, vec![1]);
        assert_eq!(r.spectrum.degree(), Some(10));
    }

    #[test]
    fn minus_one_eigenvalue_blocks_reduction() {
        // (t + 1)(t² − 3t + 1): the −1 eigenvector is 2-periodic, not fixed.
        let p = IntPolynomial::linear_root(BigInt::from(-1)).mul(&IntPolynomial::from_i64(&[1, -3, 1]));
        let r = periodicity_reduces_to_invariance(&p).unwrap();
        assert!(r.has_expanding_eigenvalue);
        assert!(!r.holds);
        assert!(r.root_of_unity_orders.contains(&2));
    }

    #[test]
    fn finite_order_is_rejected() {
        let p = IntPolynomial::from_i64(&[-1, 0, 0, 1]); // t³ − 1
        let r = periodicity_reduces_to_invariance(&p).unwrap();
        assert!(!r.has_expanding_eigenvalue);
        assert!(!r.holds);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(periodicity_reduces_to_invariance(&IntPolynomial::zero()), Err(Error::ZeroPolynomial));
    }
}
