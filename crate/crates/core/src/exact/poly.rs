use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial in `t`, coefficients in ascending degree.
///
/// Trailing zero coefficients are stripped on construction, so the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `t − r`
    pub fn linear_root(r: BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn mul(&self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> IntPolynomial {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Division by a monic polynomial; quotient and remainder are integral.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        if !divisor.is_monic() {
            return Err(Error::Unsupported("division by a non-monic polynomial".into()));
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// True iff `divisor` (monic) divides `self` exactly.
    pub fn divisible_by(&self, divisor: &IntPolynomial) -> Result<bool> {
        Ok(self.div_rem_monic(divisor)?.1.is_zero())
    }

    /// Companion matrix rows of a monic polynomial; used for spectral
    /// constructions on bare polynomials.
    pub fn companion_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_monic() {
            return Err(Error::Unsupported("companion matrix of a non-monic polynomial".into()));
        }
        let n = self.coeffs.len() - 1;
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for i in 1..n {
            rows[i][i - 1] = BigInt::one();
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row[n - 1] = -self.coeffs[i].clone();
        }
        Ok(rows)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}t^{i}")?,
            }
        }
        Ok(())
    }
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i8 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `t^d − 1`
fn t_pow_minus_one(d: u64) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); d as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[d as usize] = BigInt::one();
    IntPolynomial::new(coeffs)
}

/// The `n`-th cyclotomic polynomial `∏_{d | n} (t^d − 1)^{μ(n/d)}`: the
/// factors with `μ = 1` are multiplied out, then those with `μ = −1` divided
/// off exactly.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index starts at 1");
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut p = IntPolynomial::one();
    for &d in &divisors {
        if mobius(n / d) == 1 {
            p = p.mul(&t_pow_minus_one(d));
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            p = p.div_rem_monic(&t_pow_minus_one(d)).expect("monic").0;
        }
    }
    p
}

/// A cyclotomic factor `Φ_n` found in a polynomial, with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactor {
    pub index: u64,
    pub multiplicity: usize,
    pub polynomial: IntPolynomial,
}

/// Every cyclotomic polynomial dividing `p`, by trial division over all `n`
/// with `φ(n) ≤ deg p`. Since `φ(n) ≥ √(n/2)`, scanning `n ≤ 2·deg² + 2`
/// covers every candidate.
pub fn cyclotomic_root_of_unity_part(p: &IntPolynomial) -> Result<Vec<CyclotomicFactor>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)? as u64;
    let mut out = Vec::new();
    let limit = 2 * deg * deg + 2;
    for n in 1..=limit {
        if euler_phi(n) > deg {
            continue;
        }
        let phi = cyclotomic(n);
        let mut rest = p.clone();
        let mut mult = 0;
        loop {
            let (q, r) = rest.div_rem_monic(&phi)?;
            if !r.is_zero() {
                break;
            }
            mult += 1;
            rest = q;
        }
        if mult > 0 {
            out.push(CyclotomicFactor { index: n, multiplicity: mult, polynomial: phi });
        }
    }
    Ok(out)
}

/// Removes every cyclotomic factor (with multiplicity).
pub fn strip_cyclotomic(p: &IntPolynomial) -> Result<IntPolynomial> {
    let mut rest = p.clone();
    for f in cyclotomic_root_of_unity_part(p)? {
        for _ in 0..f.multiplicity {
            rest = rest.div_rem_monic(&f.polynomial)?.0;
        }
    }
    Ok(rest)
}
