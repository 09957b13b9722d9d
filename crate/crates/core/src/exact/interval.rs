use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Closed interval with exact rational endpoints, `lower ≤ upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lower: BigRational,
    upper: BigRational,
}

impl RationalInterval {
    pub fn new(lower: BigRational, upper: BigRational) -> Result<Self> {
        if lower > upper {
            return Err(Error::Internal(format!("empty interval [{lower}, {upper}]")));
        }
        Ok(RationalInterval { lower, upper })
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lower: x.clone(), upper: x }
    }

    pub fn lower(&self) -> &BigRational {
        &self.lower
    }

    pub fn upper(&self) -> &BigRational {
        &self.upper
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    /// True iff this interval sits inside the open interval `(lo, hi)`.
    pub fn within_open(&self, lo: &BigRational, hi: &BigRational) -> bool {
        lo < &self.lower && &self.upper < hi
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// Polynomial with rational coefficients, ascending; only what the Sturm
/// chain needs.
#[derive(Clone, Debug)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn from_int(p: &IntPolynomial) -> Self {
        RatPoly(p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Self {
        RatPoly(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect(),
        )
        .trimmed()
    }

    fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let mut rem = self.0.clone();
        let dd = d.degree();
        let lead = d.0.last().expect("nonzero divisor").clone();
        if rem.len() <= dd {
            return (RatPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (RatPoly(quot).trimmed(), RatPoly(rem).trimmed())
    }

    fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }
}

/// Sturm chain of the squarefree part of a polynomial.
struct SturmChain(Vec<RatPoly>);

impl SturmChain {
    fn new(p: &RatPoly) -> Self {
        let dp = p.derivative();
        let g = p.gcd(&dp);
        let sq = if g.degree() == 0 { p.clone() } else { p.div_rem(&g).0 };
        let mut chain = vec![sq.clone(), sq.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            let neg = RatPoly(r.0.into_iter().map(|c| -c).collect());
            chain.push(neg);
        }
        chain.pop();
        SturmChain(chain)
    }

    fn squarefree(&self) -> &RatPoly {
        &self.0[0]
    }

    fn sign_changes(&self, x: &BigRational) -> usize {
        let mut changes = 0;
        let mut prev: Option<bool> = None;
        for p in &self.0 {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if prev.is_some_and(|s| s != pos) {
                changes += 1;
            }
            prev = Some(pos);
        }
        changes
    }

    /// Number of distinct real roots in `(lo, hi]`.
    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_changes(lo).saturating_sub(self.sign_changes(hi))
    }
}

/// Cauchy bound: every root has modulus below `1 + max |c_i / c_n|`.
fn cauchy_bound(p: &IntPolynomial) -> BigRational {
    let lead = BigRational::from_integer(p.leading().expect("nonzero").abs());
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| BigRational::from_integer(c.abs()) / &lead)
        .fold(BigRational::zero(), |m, c| if c > m { c } else { m });
    BigRational::one() + max
}

/// Encloses the largest real root of `p` (which must exceed 1) in an interval
/// of width at most `width`, by Sturm-counted bisection on `(1, B]`.
pub fn spectral_radius_bounds(p: &IntPolynomial, width: &BigRational) -> Result<RationalInterval> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !width.is_positive() {
        return Err(Error::NonPositiveWidth);
    }
    let chain = SturmChain::new(&RatPoly::from_int(p));
    let mut lo = BigRational::one();
    let mut hi = cauchy_bound(p);
    if chain.count(&lo, &hi) == 0 {
        return Err(Error::NoRootAboveOne);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let sq = chain.squarefree();
    // invariant: the largest root lies in (lo, hi]
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        if sq.eval(&mid).is_zero() && chain.count(&mid, &hi) == 0 {
            return Ok(RationalInterval::point(mid));
        }
        if chain.count(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if sq.eval(&hi).is_zero() {
        return Ok(RationalInterval::point(hi));
    }
    RationalInterval::new(lo, hi)
}

/// True iff `p` takes values of opposite strict sign at the two endpoints, or
/// vanishes at a degenerate point interval.
pub fn brackets_sign_change(p: &IntPolynomial, iv: &RationalInterval) -> bool {
    let a = p.eval_rational(iv.lower());
    let b = p.eval_rational(iv.upper());
    if iv.lower() == iv.upper() {
        return a.is_zero();
    }
    (a.is_negative() && b.is_positive()) || (a.is_positive() && b.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn linear_root_is_exact() {
        let p = IntPolynomial::from_i64(&[-2, 1]);
        let iv = spectral_radius_bounds(&p, &rat(1, 1000)).unwrap();
        assert_eq!(iv, RationalInterval::point(rat(2, 1)));
    }

    #[test]
    fn quadratic_dynamical_degree() {
        // (23 + sqrt 525)/2 = 22.95643923...
        let p = IntPolynomial::from_i64(&[1, -23, 1]);
        let iv = spectral_radius_bounds(&p, &rat(1, 1000)).unwrap();
        assert!(iv.width() <= rat(1, 1000));
        assert!(brackets_sign_change(&p, &iv));
        assert!(iv.contains(&rat(229_564, 10_000)));
        let fine = spectral_radius_bounds(&p, &rat(1, 10_000)).unwrap();
        assert!(fine.within_open(&rat(229_560, 10_000), &rat(229_570, 10_000)));
    }

    #[test]
    fn cubic_with_unit_root_gives_same_enclosure() {
        let p = IntPolynomial::from_i64(&[-1, 24, -24, 1]);
        let coarse = spectral_radius_bounds(&p, &rat(1, 1000)).unwrap();
        assert!(brackets_sign_change(&p, &coarse));
        let iv = spectral_radius_bounds(&p, &rat(1, 10_000)).unwrap();
        assert!(iv.within_open(&rat(229_560, 10_000), &rat(229_570, 10_000)));
    }

    #[test]
    fn repeated_roots_are_handled() {
        // (t - 3)^2 (t - 1)
        let p = IntPolynomial::from_i64(&[-9, 15, -7, 1]);
        let iv = spectral_radius_bounds(&p, &rat(1, 100)).unwrap();
        assert!(iv.contains(&rat(3, 1)));
    }

    #[test]
    fn no_root_above_one() {
        let p = IntPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(spectral_radius_bounds(&p, &rat(1, 10)), Err(Error::NoRootAboveOne));
        let p = IntPolynomial::from_i64(&[-1, 1]);
        assert_eq!(spectral_radius_bounds(&p, &rat(1, 10)), Err(Error::NoRootAboveOne));
    }

    #[test]
    fn width_must_be_positive() {
        let p = IntPolynomial::from_i64(&[-2, 1]);
        assert_eq!(spectral_radius_bounds(&p, &rat(0, 1)), Err(Error::NonPositiveWidth));
    }
}
