//! `NS(X) = NS(S) ⊕ Z·E` for the Hilbert square, with the Beauville–Bogomolov
//! form `q` in the basis `(H₁, E, H₂)`:
//!
//! ```text
//! [[4, 0, a],
//!  [0,−2, 0],
//!  [a, 0, 4]]
//! ```
//!
//! The two Beauville involutions act as reflections in `A_k = H_k − E`
//! (`q(A_k) = 2`); their product drives everything downstream.

mod intersection;
mod ternary;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use intersection::{periodicity_reduces_to_invariance, DeltaInvariance, FourClass, PeriodicityReport};
pub use ternary::{hilbert_symbol, IsotropyVerdict, Place, TernaryForm};

use crate::error::{Error, Result};
use crate::exact::{is_isometry, spectral_radius_bounds, IntMatrix, IntPolynomial, RationalInterval};
use crate::surface::{check_parameter, Polarization, SurfaceClass, SurfaceLattice};

/// `x·H₁ + m·E + y·H₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NsClass {
    pub h1: BigInt,
    pub e: BigInt,
    pub h2: BigInt,
}

impl NsClass {
    pub fn new(h1: impl Into<BigInt>, e: impl Into<BigInt>, h2: impl Into<BigInt>) -> Self {
        NsClass { h1: h1.into(), e: e.into(), h2: h2.into() }
    }

    pub fn h1() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn e() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn h2() -> Self {
        Self::new(0, 0, 1)
    }

    pub fn polarization(k: Polarization) -> Self {
        match k {
            Polarization::H1 => Self::h1(),
            Polarization::H2 => Self::h2(),
        }
    }

    pub fn from_vec(v: &[BigInt]) -> Self {
        assert_eq!(v.len(), 3, "NS(X) has rank 3");
        NsClass { h1: v[0].clone(), e: v[1].clone(), h2: v[2].clone() }
    }

    pub fn to_vec(&self) -> Vec<BigInt> {
        vec![self.h1.clone(), self.e.clone(), self.h2.clone()]
    }

    pub fn surface_part(&self) -> SurfaceClass {
        SurfaceClass::new(self.h1.clone(), self.h2.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.h1.is_zero() && self.e.is_zero() && self.h2.is_zero()
    }

    pub fn add(&self, o: &NsClass) -> NsClass {
        NsClass { h1: &self.h1 + &o.h1, e: &self.e + &o.e, h2: &self.h2 + &o.h2 }
    }

    pub fn scale(&self, k: &BigInt) -> NsClass {
        NsClass { h1: &self.h1 * k, e: &self.e * k, h2: &self.h2 * k }
    }

    /// Divides by the content and makes the first nonzero coordinate positive.
    pub fn primitive(&self) -> NsClass {
        let g = self.h1.gcd(&self.e).gcd(&self.h2);
        if g.is_zero() {
            return self.clone();
        }
        let mut v = NsClass { h1: &self.h1 / &g, e: &self.e / &g, h2: &self.h2 / &g };
        let lead_negative = [&v.h1, &v.e, &v.h2].into_iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        if lead_negative {
            v = v.scale(&BigInt::from(-1));
        }
        v
    }
}

impl fmt::Display for NsClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h1, self.e, self.h2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hilb2Lattice {
    a: BigInt,
    gram: IntMatrix,
    surface: SurfaceLattice,
}

/// Where an isometry came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Reflection `x ↦ −x + q(x, A)·A` in a class with `q(A) = 2`.
    Reflection { root: NsClass },
    /// `ι₁* · ι₂*`, the action of `ι₂ι₁` by pullback.
    Composite,
}

/// Integer matrix acting on `NS(X)`; columns are images of `H₁, E, H₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    pub matrix: IntMatrix,
    pub provenance: Provenance,
}

impl Isometry {
    pub fn apply(&self, v: &NsClass) -> NsClass {
        NsClass::from_vec(&self.matrix.apply(&v.to_vec()).expect("3x3 action"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposedAction {
    pub isometry: Isometry,
    pub char_poly: IntPolynomial,
    pub det: BigInt,
    /// `(a − 2)² − 2`, the trace of the non-unit eigenvalue pair.
    pub salem_trace: BigInt,
    pub invariant: NsClass,
    /// Enclosure of the largest eigenvalue (the dynamical degree).
    pub spectral_radius: RationalInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Effectivity {
    /// Pairs to zero with an ample class, so neither it nor its negative is effective.
    NotEffective,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantClass {
    /// Primitive generator with positive `H₁`-coefficient.
    pub class: NsClass,
    /// `2H₁ − (a+4)E + 2H₂`, the same line with `H₁`-coefficient 2 (equal to
    /// `class` for odd `a`, twice it for even `a`).
    pub formula_class: NsClass,
    pub ample_class: NsClass,
    pub pairing_with_ample: BigInt,
    pub verdict: Effectivity,
}

/// Width of the dynamical-degree enclosure reported by [`Hilb2Lattice::composed_action`].
pub fn default_spectral_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000))
}

impl Hilb2Lattice {
    pub fn build(a: impl Into<BigInt>) -> Result<Self> {
        let a = a.into();
        check_parameter(&a)?;
        let gram = IntMatrix::from_rows(&[
            vec![BigInt::from(4), BigInt::zero(), a.clone()],
            vec![BigInt::zero(), BigInt::from(-2), BigInt::zero()],
            vec![a.clone(), BigInt::zero(), BigInt::from(4)],
        ]);
        let surface = SurfaceLattice::build(a.clone())?;
        Ok(Hilb2Lattice { a, gram, surface })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn surface(&self) -> &SurfaceLattice {
        &self.surface
    }

    /// Beauville–Bogomolov pairing `q(v, w)`.
    pub fn q(&self, v: &NsClass, w: &NsClass) -> BigInt {
        (&v.h1 * &w.h1 + &v.h2 * &w.h2) * 4 + &self.a * (&v.h1 * &w.h2 + &v.h2 * &w.h1) - &v.e * &w.e * 2
    }

    pub fn norm(&self, v: &NsClass) -> BigInt {
        self.q(v, v)
    }

    /// `A_k = H_k − E`, the class fixed by `ι_k*`.
    pub fn reflection_root(k: Polarization) -> NsClass {
        NsClass::polarization(k).add(&NsClass::e().scale(&BigInt::from(-1)))
    }

    /// Matrix of `ι_k*`, built as the reflection in `A_k` and checked to be an
    /// involutive isometry of `q`.
    pub fn beauville_matrix(&self, k: Polarization) -> Result<Isometry> {
        let root = Self::reflection_root(k);
        if self.norm(&root) != BigInt::from(2) {
            return Err(Error::Internal("reflection root must have q = 2".into()));
        }
        let columns: Vec<Vec<BigInt>> = [NsClass::h1(), NsClass::e(), NsClass::h2()]
            .iter()
            .map(|b| {
                let c = self.q(b, &root);
                b.scale(&BigInt::from(-1)).add(&root.scale(&c)).to_vec()
            })
            .collect();
        let matrix = IntMatrix::from_columns(&columns);
        if &matrix * &matrix != IntMatrix::identity(3) {
            return Err(Error::Internal(format!("iota_{}^* is not an involution", k.index())));
        }
        if !is_isometry(&matrix, &self.gram)? {
            return Err(Error::Internal(format!("iota_{}^* does not preserve q", k.index())));
        }
        Ok(Isometry { matrix, provenance: Provenance::Reflection { root } })
    }

    /// `(ι₂ι₁)* = M₁·M₂` with its spectrum.
    pub fn composed_action(&self) -> Result<ComposedAction> {
        let m1 = self.beauville_matrix(Polarization::H1)?;
        let m2 = self.beauville_matrix(Polarization::H2)?;
        let matrix = &m1.matrix * &m2.matrix;
        if !is_isometry(&matrix, &self.gram)? {
            return Err(Error::Internal("composed action does not preserve q".into()));
        }
        let det = matrix.det()?;
        if !det.is_one() {
            return Err(Error::Internal(format!("composed action has determinant {det}")));
        }
        let char_poly = matrix.char_poly()?;
        let shifted: BigInt = &self.a - 2;
        let salem_trace: BigInt = &shifted * &shifted - 2;
        let expected = IntPolynomial::linear_root(BigInt::one()).mul(&IntPolynomial::new(vec![
            BigInt::one(),
            -salem_trace.clone(),
            BigInt::one(),
        ]));
        if char_poly != expected {
            return Err(Error::Internal(format!("characteristic polynomial {char_poly} differs from {expected}")));
        }
        let invariant = fixed_vector(&matrix)?;
        let spectral_radius = spectral_radius_bounds(&char_poly, &default_spectral_width())?;
        Ok(ComposedAction {
            isometry: Isometry { matrix, provenance: Provenance::Composite },
            char_poly,
            det,
            salem_trace,
            invariant,
            spectral_radius,
        })
    }

    /// Generator of the invariant classes of `(ι₂ι₁)*`, and whether it can be
    /// effective, tested against the ample class `H₁ − E`.
    pub fn invariant_class(&self) -> Result<InvariantClass> {
        self.invariant_class_of(&self.composed_action()?)
    }

    /// As [`Hilb2Lattice::invariant_class`], reusing an action already computed.
    pub fn invariant_class_of(&self, action: &ComposedAction) -> Result<InvariantClass> {
        let class = action.invariant.clone();
        if action.isometry.apply(&class) != class {
            return Err(Error::Internal("invariant class is not fixed".into()));
        }
        let formula_class = NsClass::new(2, -(&self.a + BigInt::from(4)), 2);
        if formula_class.primitive() != class {
            return Err(Error::Internal(format!("invariant class {class} is not a multiple of {formula_class}")));
        }
        let ample_class = Self::reflection_root(Polarization::H1);
        let pairing = self.q(&ample_class, &class);
        let verdict =
            if pairing.is_zero() && !class.is_zero() { Effectivity::NotEffective } else { Effectivity::Undecided };
        Ok(InvariantClass { class, formula_class, ample_class, pairing_with_ample: pairing, verdict })
    }

    /// The ternary form `q` itself, for isotropy testing.
    pub fn ternary_form(&self) -> TernaryForm {
        TernaryForm::new(self.gram.clone()).expect("symmetric 3x3 Gram")
    }

    /// Decides whether `q` represents zero on `NS(X)`; a zero is a necessary
    /// condition for a (rational) abelian fibration.
    pub fn abelian_fibration_obstruction(&self) -> Result<IsotropyVerdict> {
        if let Some(v) = self.surface.has_elliptic_pencil().isotropic {
            return Ok(IsotropyVerdict::Isotropic { zero: NsClass::new(v.x, 0, v.y) });
        }
        self.ternary_form().isotropy()
    }

    /// `q(α,β)q(γ,δ) + q(α,γ)q(β,δ) + q(α,δ)q(β,γ)`: the degree-4
    /// intersection number `α·β·γ·δ` on `X`.
    pub fn fujiki_product(&self, a: &NsClass, b: &NsClass, c: &NsClass, d: &NsClass) -> BigInt {
        self.q(a, b) * self.q(c, d) + self.q(a, c) * self.q(b, d) + self.q(a, d) * self.q(b, c)
    }

    /// `Σ·α·β`, computed on `T_p ≅ Bl_p S`: pullbacks pair by the surface
    /// form and the exceptional curve has self-intersection `−1`.
    pub fn surface_class_product(&self, a: &NsClass, b: &NsClass) -> BigInt {
        self.surface.pair(&a.surface_part(), &b.surface_part()) - &a.e * &b.e
    }

    /// `Δ_k = H_k² − q(H_k)·Σ`, the class of `C ∗ C` for a nodal hyperplane
    /// section `C` in the `k`-th quartic model.
    pub fn delta_class(&self, k: Polarization) -> FourClass {
        let h = NsClass::polarization(k);
        let qh = self.norm(&h);
        FourClass::square(h).add(&FourClass::sigma(-qh))
    }

    /// Compares `Δ₁·E²` with `Δ₁·(ι₂*E)²`; they differ, so `Δ₁` is not
    /// `ι₂*`-invariant and hence not `(ι₂ι₁)*`-invariant.
    pub fn delta_invariance_test(&self) -> Result<DeltaInvariance> {
        let delta = self.delta_class(Polarization::H1);
        let e = NsClass::e();
        let image = self.beauville_matrix(Polarization::H2)?.apply(&e);
        let with_e = delta.intersect_square(self, &e);
        let with_image = delta.intersect_square(self, &image);
        Ok(DeltaInvariance {
            equal: with_e == with_image,
            with_e_squared: with_e,
            image_of_e: image,
            with_image_squared: with_image,
        })
    }

    /// Whether periodicity of a class in `H⁴ ≅ S²H²` forces invariance.
    pub fn periodicity_reduction(&self) -> Result<PeriodicityReport> {
        periodicity_reduces_to_invariance(&self.composed_action()?.char_poly)
    }
}

/// Primitive generator of `ker(M − I)` for a 3×3 matrix whose fixed space is
/// a line, normalized with its first nonzero coordinate positive.
fn fixed_vector(m: &IntMatrix) -> Result<NsClass> {
    let shifted = m.add(&IntMatrix::identity(3).scale(&BigInt::from(-1)))?;
    let rows = shifted.to_rows();
    let cross = |u: &[BigInt], v: &[BigInt]| {
        NsClass::new(&u[1] * &v[2] - &u[2] * &v[1], &u[2] * &v[0] - &u[0] * &v[2], &u[0] * &v[1] - &u[1] * &v[0])
    };
    if !shifted.det()?.is_zero() {
        return Err(Error::Internal("1 is not an eigenvalue".into()));
    }
    let candidate = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| cross(&rows[i], &rows[j]))
        .find(|v| !v.is_zero())
        .ok_or_else(|| Error::Internal("eigenvalue 1 has a fixed space of dimension > 1".into()))?;
    Ok(candidate.primitive())
}
