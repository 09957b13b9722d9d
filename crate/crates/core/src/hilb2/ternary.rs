//! Isotropy of integral ternary quadratic forms.
//!
//! The form is diagonalized over `Q`, reduced to squarefree pairwise coprime
//! coefficients, and tested place by place with Hilbert symbols. When every
//! local test passes, an explicit zero is found inside Holzer's box and
//! pulled back to the original coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NsClass;
use crate::error::{Error, Result};
use crate::exact::{exact_sqrt, isqrt, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(BigInt),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyVerdict {
    Isotropic {
        zero: NsClass,
    },
    /// No nonzero rational zero: the diagonal form `⟨d₁, d₂, d₃⟩` fails to be
    /// isotropic over `Q_p` (or `R`), witnessed by the Hilbert symbol
    /// `(−d₁d₃, −d₂d₃)_p = −1`.
    Anisotropic {
        place: Place,
        diagonal: [BigInt; 3],
        hilbert_symbol: i8,
    },
}

impl IsotropyVerdict {
    pub fn is_anisotropic(&self) -> bool {
        matches!(self, IsotropyVerdict::Anisotropic { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    gram: IntMatrix,
}

type RatVec = [BigRational; 3];

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

impl TernaryForm {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if gram.rows() != 3 || gram.cols() != 3 {
            return Err(Error::Dimension(format!(
                "ternary form needs a 3x3 Gram matrix, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::Dimension("Gram matrix is not symmetric".into()));
        }
        Ok(TernaryForm { gram })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn value(&self, v: &NsClass) -> BigInt {
        let x = v.to_vec();
        let gx = self.gram.apply(&x).expect("3x3");
        x.iter().zip(&gx).map(|(a, b)| a * b).sum()
    }

    fn pair_rat(&self, u: &RatVec, v: &RatVec) -> BigRational {
        let mut s = BigRational::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                s += ui * rat(self.gram.get(i, j).clone()) * vj;
            }
        }
        s
    }

    /// Decides isotropy over `Q` and returns either a primitive integral zero
    /// or a local obstruction.
    pub fn isotropy(&self) -> Result<IsotropyVerdict> {
        if self.gram.det()?.is_zero() {
            return Err(Error::DegenerateForm);
        }

        // q-orthogonal basis by Gram–Schmidt; an isotropic basis vector ends
        // the search early.
        let mut basis: Vec<RatVec> = Vec::with_capacity(3);
        let mut diag: Vec<BigRational> = Vec::with_capacity(3);
        for i in 0..3 {
            let mut b: RatVec = std::array::from_fn(|j| if i == j { BigRational::one() } else { BigRational::zero() });
            for (prev, d) in basis.iter().zip(&diag) {
                let c = self.pair_rat(&b, prev) / d;
                for j in 0..3 {
                    b[j] = &b[j] - &c * &prev[j];
                }
            }
            let d = self.pair_rat(&b, &b);
            if d.is_zero() {
                return self.integral_zero(&b).map(|zero| IsotropyVerdict::Isotropic { zero });
            }
            basis.push(b);
            diag.push(d);
        }

        // d_i = r_i² s_i with s_i squarefree; w_i = scale_i · X_i where X
        // are the coordinates of the squarefree form.
        let mut coeffs: Vec<BigInt> = Vec::with_capacity(3);
        let mut scale: Vec<BigRational> = Vec::with_capacity(3);
        for d in &diag {
            let (f, s) = squarefree_decompose(&(d.numer() * d.denom()))?;
            coeffs.push(s);
            scale.push(rat(d.denom().clone()) / rat(f));
        }

        // Make the coefficients pairwise coprime.
        loop {
            let pair = [(0, 1, 2), (0, 2, 1), (1, 2, 0)].into_iter().find_map(|(i, j, k)| {
                let g = coeffs[i].gcd(&coeffs[j]);
                (g > BigInt::one()).then_some((i, j, k, g))
            });
            let Some((i, j, k, g)) = pair else { break };
            coeffs[i] = &coeffs[i] / &g;
            coeffs[j] = &coeffs[j] / &g;
            let (h, s) = squarefree_decompose(&(&coeffs[k] * &g))?;
            coeffs[k] = s;
            scale[i] = &scale[i] / rat(g.clone());
            scale[j] = &scale[j] / rat(g);
            scale[k] = &scale[k] / rat(h);
        }
        let diagonal = [coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone()];

        if let Some((place, symbol)) = local_obstruction(&diagonal)? {
            return Ok(IsotropyVerdict::Anisotropic { place, diagonal, hilbert_symbol: symbol });
        }

        let x = holzer_zero(&diagonal)
            .ok_or_else(|| Error::Internal("locally isotropic form has no zero in Holzer's box".into()))?;
        let mut v: RatVec = std::array::from_fn(|_| BigRational::zero());
        for i in 0..3 {
            let w = &scale[i] * rat(x[i].clone());
            for j in 0..3 {
                v[j] = &v[j] + &w * &basis[i][j];
            }
        }
        let zero = self.integral_zero(&v)?;
        Ok(IsotropyVerdict::Isotropic { zero })
    }

    fn integral_zero(&self, v: &RatVec) -> Result<NsClass> {
        let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = v.iter().map(|c| (c * rat(den.clone())).to_integer()).collect();
        let zero = NsClass::from_vec(&ints).primitive();
        if zero.is_zero() || !self.value(&zero).is_zero() {
            return Err(Error::Internal(format!("{zero} is not a nonzero zero of the form")));
        }
        Ok(zero)
    }

    /// Exhaustive search for a nonzero zero with every coordinate in
    /// `[−bound, bound]`. The outer loop runs over coordinates 0 and 2 and
    /// the middle coordinate is solved from the resulting quadratic.
    pub fn exhaustive_zero_search(&self, bound: u32) -> Option<NsClass> {
        let g: Vec<i128> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| self.gram.get(i, j).to_i128())
            .collect::<Option<Vec<_>>>()?;
        if g.iter().any(|c| c.unsigned_abs() > 1 << 40) {
            return None;
        }
        let at = |i: usize, j: usize| g[3 * i + j];
        let b = i128::from(bound);
        for x in 0..=b {
            let y_lo = if x == 0 { 0 } else { -b };
            for y in y_lo..=b {
                let qa = at(1, 1);
                let qb = 2 * (at(0, 1) * x + at(1, 2) * y);
                let qc = at(0, 0) * x * x + 2 * at(0, 2) * x * y + at(2, 2) * y * y;
                for z in solve_quadratic(qa, qb, qc) {
                    if z.abs() <= b && (x, y, z) != (0, 0, 0) {
                        return Some(NsClass::new(x, z, y));
                    }
                }
            }
        }
        None
    }
}

/// Integer roots of `a z² + b z + c = 0` (for `a = 0`, of the linear equation).
fn solve_quadratic(a: i128, b: i128, c: i128) -> Vec<i128> {
    if a == 0 {
        if b == 0 {
            return if c == 0 { vec![0] } else { Vec::new() };
        }
        return if c % b == 0 { vec![-c / b] } else { Vec::new() };
    }
    let disc = b * b - 4 * a * c;
    if disc < 0 {
        return Vec::new();
    }
    let s = disc.isqrt();
    if s * s != disc {
        return Vec::new();
    }
    [-b + s, -b - s].into_iter().filter(|n| n % (2 * a) == 0).map(|n| n / (2 * a)).collect()
}

/// Prime factors of `|n|` with multiplicity, by trial division.
fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut m = n.abs().to_u128().ok_or_else(|| Error::Unsupported(format!("factoring {n}")))?;
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((BigInt::from(p), e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((BigInt::from(m), 1));
    }
    Ok(out)
}

/// `n = f²·s` with `s` squarefree, carrying the sign of `n`.
fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let mut f = BigInt::one();
    let mut s = if n.is_negative() { BigInt::from(-1) } else { BigInt::one() };
    for (p, e) in factor(n)? {
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok((f, s))
}

fn legendre(u: &BigInt, p: &BigInt) -> i8 {
    let r = u.mod_floor(p).modpow(&((p - 1u32) / 2u32), p);
    if r.is_one() {
        1
    } else if r.is_zero() {
        0
    } else {
        -1
    }
}

/// Strip the `p`-part: `n = p^α · u`.
fn split(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut u = n.clone();
    let mut alpha = 0;
    while u.is_multiple_of(p) {
        u /= p;
        alpha += 1;
    }
    (alpha, u)
}

/// Hilbert symbol `(a, b)_p` for nonzero integers and a prime `p`.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, place: &Place) -> i8 {
    let p = match place {
        Place::Real => return if a.is_negative() && b.is_negative() { -1 } else { 1 },
        Place::Prime(p) => p,
    };
    let (alpha, u) = split(a, p);
    let (beta, v) = split(b, p);
    if p == &BigInt::from(2) {
        let eps = |x: &BigInt| (x.mod_floor(&BigInt::from(4)) == BigInt::from(3)) as u32;
        let omega = |x: &BigInt| {
            let r = x.mod_floor(&BigInt::from(8));
            (r == BigInt::from(3) || r == BigInt::from(5)) as u32
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let eps_p = ((p - 1u32) / 2u32).is_odd() as u32;
    let mut s: i8 = if (alpha * beta * eps_p).is_multiple_of(2) { 1 } else { -1 };
    if beta % 2 == 1 {
        s *= legendre(&u, p);
    }
    if alpha % 2 == 1 {
        s *= legendre(&v, p);
    }
    s
}

/// First place (real, then primes in increasing order) where `⟨d₁, d₂, d₃⟩`
/// is anisotropic, with the offending Hilbert symbol.
fn local_obstruction(d: &[BigInt; 3]) -> Result<Option<(Place, i8)>> {
    let a = -(&d[0] * &d[2]);
    let b = -(&d[1] * &d[2]);
    let mut places = vec![Place::Real, Place::Prime(BigInt::from(2))];
    let mut primes: Vec<BigInt> = Vec::new();
    for c in d {
        primes.extend(factor(c)?.into_iter().map(|(p, _)| p));
    }
    primes.sort();
    primes.dedup();
    places.extend(primes.into_iter().filter(|p| p != &BigInt::from(2)).map(Place::Prime));
    for place in places {
        let s = hilbert_symbol(&a, &b, &place);
        if s == -1 {
            return Ok(Some((place, s)));
        }
    }
    Ok(None)
}

/// Nonzero zero of a squarefree, pairwise coprime, indefinite diagonal form
/// with `|X_i| ≤ √|d_j d_k|`. Loops over the two coordinates with the
/// smallest bounds and solves for the third.
fn holzer_zero(d: &[BigInt; 3]) -> Option<[BigInt; 3]> {
    let bounds: Vec<BigInt> = (0..3).map(|i| isqrt(&(&d[(i + 1) % 3] * &d[(i + 2) % 3]).abs())).collect();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| bounds[i].cmp(&bounds[j]));
    let (u, v, t) = (order[0], order[1], order[2]);
    let bu = bounds[u].to_u64()?;
    let bv = bounds[v].to_u64()?;
    for xu in 0..=bu {
        for xv in 0..=bv {
            let (xu, xv) = (BigInt::from(xu), BigInt::from(xv));
            let rest = -(&d[u] * &xu * &xu + &d[v] * &xv * &xv);
            if !rest.is_multiple_of(&d[t]) {
                continue;
            }
            let sq = &rest / &d[t];
            if sq.is_negative() {
                continue;
            }
            let Some(xt) = exact_sqrt(&sq) else { continue };
            if xu.is_zero() && xv.is_zero() && xt.is_zero() {
                continue;
            }
            let mut x: [BigInt; 3] = std::array::from_fn(|_| BigInt::zero());
            x[u] = xu;
            x[v] = xv;
            x[t] = xt;
            return Some(x);
        }
    }
    None
}
