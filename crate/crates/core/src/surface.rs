//! The Néron–Severi lattice of the K3 surface: `Z²` with Gram `[[4, a], [a, 4]]`
//! in the basis `h₁ = (1, 0)`, `h₂ = (0, 1)`.
//!
//! Nodal classes (`v² = −2`) are found through the Pell equation obtained by
//! completing the square: `4·b(x, y) = (4x + a·y)² − (a² − 16)·y²`, so
//! `b(v) = −2` becomes `t² − D·y² = −8` with `t = 4x + a·y = h₁·v` and the
//! integrality condition `t ≡ a·y (mod 4)`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{exact_sqrt, isqrt, IntMatrix};
use crate::pell::{
    enumerate_solutions, fundamental_unit, minimal_window, unit_period_mod, CongruenceFilter, PellProblem,
    PellSolutionClass, Solution,
};

/// A class `x·h₁ + y·h₂` in `NS(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceClass {
    pub x: BigInt,
    pub y: BigInt,
}

impl SurfaceClass {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        SurfaceClass { x: x.into(), y: y.into() }
    }

    pub fn h1() -> Self {
        Self::new(1, 0)
    }

    pub fn h2() -> Self {
        Self::new(0, 1)
    }

    /// The swap `(x, y) ↦ (y, x)`, an isometry of every `b_a`.
    pub fn swapped(&self) -> Self {
        SurfaceClass { x: self.y.clone(), y: self.x.clone() }
    }

    pub fn neg(&self) -> Self {
        SurfaceClass { x: -self.x.clone(), y: -self.y.clone() }
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceLattice {
    a: BigInt,
    gram: IntMatrix,
    discriminant: BigInt,
    window: WindowCache,
}

/// Memoized [`SurfaceLattice::nodal_window`]; ignored by equality.
#[derive(Clone, Debug, Default)]
struct WindowCache(OnceLock<Result<Vec<NodalClass>>>);

impl PartialEq for WindowCache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for WindowCache {}

/// Rejects `|a| ≤ 4`: the form must be hyperbolic.
pub(crate) fn check_parameter(a: &BigInt) -> Result<()> {
    if a.abs() < BigInt::from(5) {
        return Err(Error::InvalidParameter(a.clone()));
    }
    Ok(())
}

impl SurfaceLattice {
    pub fn build(a: impl Into<BigInt>) -> Result<Self> {
        let a = a.into();
        check_parameter(&a)?;
        let gram = IntMatrix::from_rows(&[vec![BigInt::from(4), a.clone()], vec![a.clone(), BigInt::from(4)]]);
        let discriminant = &a * &a - 16;
        Ok(SurfaceLattice { a, gram, discriminant, window: WindowCache::default() })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// `D = a² − 16`.
    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn pair(&self, v: &SurfaceClass, w: &SurfaceClass) -> BigInt {
        (&v.x * &w.x + &v.y * &w.y) * 4 + &self.a * (&v.x * &w.y + &v.y * &w.x)
    }

    pub fn norm(&self, v: &SurfaceClass) -> BigInt {
        self.pair(v, v)
    }

    /// `h_k · v` for `k ∈ {1, 2}`.
    pub fn degree(&self, k: Polarization, v: &SurfaceClass) -> BigInt {
        match k {
            Polarization::H1 => &v.x * 4 + &self.a * &v.y,
            Polarization::H2 => &self.a * &v.x + &v.y * 4,
        }
    }

    fn nodal_problem(&self) -> Result<PellProblem> {
        PellProblem::new(self.discriminant.clone(), -8)?.with_filter(CongruenceFilter::new(4, self.a.clone()))
    }

    fn to_nodal(&self, (t, y): &Solution) -> NodalClass {
        let x = (t - &self.a * y) / 4;
        let v = SurfaceClass::new(x, y.clone());
        debug_assert_eq!(self.norm(&v), BigInt::from(-2));
        debug_assert_eq!(&self.degree(Polarization::H1, &v), t);
        NodalClass { degree_h1: t.clone(), degree_h2: self.degree(Polarization::H2, &v), class: v }
    }

    /// Whether `b_a` represents zero, i.e. `S` carries an elliptic pencil.
    pub fn has_elliptic_pencil(&self) -> EllipticPencil {
        let d = &self.discriminant;
        match exact_sqrt(d) {
            Some(s) => {
                // (4x + a·y)² = s²·y²  ⇒  4x = (s − a)·y
                let v = primitive_positive(&(&s - &self.a), &BigInt::from(4));
                debug_assert!(self.norm(&v).is_zero());
                EllipticPencil { present: true, isotropic: Some(v), sqrt_floor: s }
            }
            None => EllipticPencil { present: false, isotropic: None, sqrt_floor: isqrt(d) },
        }
    }

    /// All nodal classes with `|y| ≤ y_bound`, ordered by `(|y|, y, t)`.
    pub fn nodal_classes(&self, y_bound: &BigInt) -> Result<Vec<NodalClass>> {
        if self.has_elliptic_pencil().present {
            return Ok(self.nodal_classes_isotropic(y_bound));
        }
        let sols = enumerate_solutions(&self.nodal_problem()?, y_bound)?;
        Ok(sols.iter().map(|s| self.to_nodal(s)).collect())
    }

    /// When `D` is a square the Pell route degenerates; the form factors as
    /// `(4x + (a−s)y)(4x + (a+s)y)/4 = −2`, a finite divisor problem.
    fn nodal_classes_isotropic(&self, y_bound: &BigInt) -> Vec<NodalClass> {
        let s = exact_sqrt(&self.discriminant).expect("square discriminant");
        let mut out = Vec::new();
        // (t − s·y)(t + s·y) = −8 with t = 4x + a·y
        for p in [-8i64, -4, -2, -1, 1, 2, 4, 8] {
            let p = BigInt::from(p);
            let q = BigInt::from(-8) / &p;
            // t − s·y = p, t + s·y = q
            let two_t = &p + &q;
            let two_sy = &q - &p;
            if two_t.is_odd() || s.is_zero() || !two_sy.is_multiple_of(&(&s * 2)) {
                continue;
            }
            let t: BigInt = two_t / 2;
            let y: BigInt = two_sy / (&s * 2);
            if y.abs() > *y_bound || !(&t - &self.a * &y).mod_floor(&BigInt::from(4)).is_zero() {
                continue;
            }
            out.push(self.to_nodal(&(t, y)));
        }
        out.sort_by_key(|n| (n.class.y.abs(), n.class.y.clone(), n.degree_h1.clone()));
        out.dedup();
        out
    }

    /// Filtered nodal solutions near the bottom of every Pell orbit; empty iff
    /// there are no nodal classes at all.
    fn nodal_window(&self) -> Result<Vec<NodalClass>> {
        self.window.0.get_or_init(|| self.compute_nodal_window()).clone()
    }

    fn compute_nodal_window(&self) -> Result<Vec<NodalClass>> {
        if self.has_elliptic_pencil().present {
            return Ok(self.nodal_classes_isotropic(&BigInt::from(8)));
        }
        Ok(minimal_window(&self.nodal_problem()?)?.iter().map(|s| self.to_nodal(s)).collect())
    }

    pub fn has_nodal_classes(&self) -> Result<bool> {
        Ok(!self.nodal_window()?.is_empty())
    }

    /// Largest `|y|` with `16·D·y² ≤ 8·a²`: outside this range the identity
    /// `(a·t)² − (D·y)² = 16·D·y² − 8·a²` forces `|a·t| > |D·y|`.
    fn boundary_y(&self) -> BigInt {
        let d = &self.discriminant;
        let rhs = &self.a * &self.a * 8;
        let mut y = isqrt(&(&rhs / (d * 16)));
        while d * &y * &y * 16 > rhs {
            y -= 1;
        }
        y
    }

    /// Decides whether `h₁` and `h₂` pair with the same nonzero sign against
    /// every nodal class, so that one common sequence of Picard–Lefschetz
    /// reflections makes both ample.
    pub fn ample_pair_certificate(&self) -> Result<AmpleCertificate> {
        let witness = &self.a * &self.a * 8 - 256;
        let boundary = self.boundary_y();
        let window = self.nodal_window()?;
        if window.is_empty() {
            return Ok(AmpleCertificate {
                pass: true,
                asymptotic_witness: witness,
                boundary_y: boundary,
                boundary_checked: Vec::new(),
                counterexample: None,
                note: Some("no nodal classes: both generators lie in the unique chamber".into()),
            });
        }
        let checked = self.nodal_classes(&boundary)?;
        for n in &checked {
            let t = &n.degree_h1;
            let y = &n.class.y;
            let lhs = (&self.a * t).pow(2) - (&self.discriminant * y).pow(2);
            let rhs = &self.discriminant * y * y * 16 - &self.a * &self.a * 8;
            if lhs != rhs {
                return Err(Error::Internal("degree identity violated".into()));
            }
        }
        let mut failing: Vec<NodalClass> = checked.iter().filter(|n| !n.same_sign()).cloned().collect();
        if failing.is_empty() && self.a.is_negative() && !self.has_elliptic_pencil().present {
            // off the boundary sign(h₂·v) = sign(a)·sign(h₁·v); push one
            // nodal class outwards by ε^P, which preserves the residue filter
            let unit = fundamental_unit(&self.discriminant)?;
            let period = unit_period_mod(&unit, &self.discriminant, &BigInt::from(4));
            let class =
                PellSolutionClass { fundamental: (window[0].degree_h1.clone(), window[0].class.y.clone()), unit };
            let mut cur = class.fundamental.clone();
            while cur.1.abs() <= boundary {
                for _ in 0..period {
                    cur = class.step(&self.discriminant, &cur);
                }
            }
            let far = self.to_nodal(&cur);
            failing.push(far);
        }
        let counterexample = failing.into_iter().next();
        Ok(AmpleCertificate {
            pass: counterexample.is_none(),
            asymptotic_witness: witness,
            boundary_y: boundary,
            boundary_checked: checked,
            counterexample,
            note: None,
        })
    }

    /// Minimum of `|h_k·v|` over all nodal classes, with a class attaining it.
    ///
    /// For `h₁` this is `min |t|`, and `t² = D·y² − 8` makes it the filtered
    /// solution of least `|y|`, which lies in the orbit window. For `h₂` the
    /// swap isometry exchanges `h₁·v` and `h₂·v` and preserves the nodal set.
    pub fn min_nodal_degree(&self, k: Polarization) -> Result<Option<MinDegree>> {
        let window = self.nodal_window()?;
        let best = window
            .into_iter()
            .min_by_key(|n| (n.degree_h1.abs(), n.class.y.abs(), n.class.y.clone(), n.degree_h1.clone()));
        Ok(best.map(|n| match k {
            Polarization::H1 => MinDegree { degree: n.degree_h1.abs(), attained_at: n.class },
            Polarization::H2 => {
                let v = n.class.swapped();
                MinDegree { degree: self.degree(Polarization::H2, &v).abs(), attained_at: v }
            }
        }))
    }

    /// Hypothesis checklist for `h_k` being very ample with a line-free image.
    pub fn very_ample_checklist(&self, k: Polarization) -> Result<VeryAmpleChecklist> {
        let hk = k.class();
        let self_int = self.norm(&hk);
        let pencil = self.has_elliptic_pencil();
        let min_deg = self.min_nodal_degree(k)?;
        let min_str = min_deg
            .as_ref()
            .map_or_else(|| "none (no nodal classes)".to_string(), |m| format!("{} at {}", m.degree, m.attained_at));
        let items = vec![
            ChecklistItem {
                label: "self-intersection at least 4".into(),
                pass: self_int >= BigInt::from(4),
                detail: format!("h{}^2 = {}", k.index(), self_int),
            },
            ChecklistItem {
                label: "no isotropic classes (no elliptic pencil)".into(),
                pass: !pencil.present,
                detail: match &pencil.isotropic {
                    Some(v) => format!("isotropic class {v}"),
                    None => format!(
                        "D = {} is not a square ({}^2 < D < {}^2)",
                        self.discriminant,
                        pencil.sqrt_floor,
                        &pencil.sqrt_floor + 1
                    ),
                },
            },
            ChecklistItem {
                label: "no nodal class orthogonal to the polarization".into(),
                pass: min_deg.as_ref().is_none_or(|m| !m.degree.is_zero()),
                detail: format!("min |h{}.v| = {}", k.index(), min_str),
            },
            ChecklistItem {
                label: "no lines (every nodal class has degree at least 2)".into(),
                pass: min_deg.as_ref().is_none_or(|m| m.degree >= BigInt::from(2)),
                detail: format!("min |h{}.v| = {}", k.index(), min_str),
            },
        ];
        let verdict = if items.iter().all(|i| i.pass) {
            VeryAmpleVerdict::VeryAmpleAndLineFree
        } else {
            VeryAmpleVerdict::NotEstablished
        };
        Ok(VeryAmpleChecklist { polarization: k, items, verdict })
    }

    /// Picard–Lefschetz reflection `w ↦ w + (w·v)·v` in a nodal class `v`.
    pub fn reflect_nodal(&self, w: &SurfaceClass, v: &SurfaceClass) -> Result<SurfaceClass> {
        if self.norm(v) != BigInt::from(-2) {
            return Err(Error::NotNodal(v.x.clone(), v.y.clone()));
        }
        let c = self.pair(w, v);
        Ok(SurfaceClass { x: &w.x + &c * &v.x, y: &w.y + &c * &v.y })
    }
}

/// `(p, q) / gcd`, sign-normalized so the first nonzero entry is positive.
fn primitive_positive(x: &BigInt, y: &BigInt) -> SurfaceClass {
    let g = x.gcd(y);
    let (mut x, mut y) = if g.is_zero() { (x.clone(), y.clone()) } else { (x / &g, y / &g) };
    if x.is_negative() || (x.is_zero() && y.is_negative()) {
        x = -x;
        y = -y;
    }
    SurfaceClass { x, y }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarization {
    H1,
    H2,
}

impl Polarization {
    pub fn from_index(k: u8) -> Option<Self> {
        match k {
            1 => Some(Polarization::H1),
            2 => Some(Polarization::H2),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Polarization::H1 => 1,
            Polarization::H2 => 2,
        }
    }

    pub fn class(self) -> SurfaceClass {
        match self {
            Polarization::H1 => SurfaceClass::h1(),
            Polarization::H2 => SurfaceClass::h2(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticPencil {
    pub present: bool,
    /// Primitive isotropic class when `D` is a square.
    pub isotropic: Option<SurfaceClass>,
    /// `⌊√D⌋`; when `D` is not a square, `⌊√D⌋² ≠ D` is the witness.
    pub sqrt_floor: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalClass {
    pub class: SurfaceClass,
    pub degree_h1: BigInt,
    pub degree_h2: BigInt,
}

impl NodalClass {
    pub fn same_sign(&self) -> bool {
        !self.degree_h1.is_zero()
            && !self.degree_h2.is_zero()
            && self.degree_h1.is_positive() == self.degree_h2.is_positive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleCertificate {
    pub pass: bool,
    /// `8a² − 256`; positive means the degree identity settles every `|y| ≥ 1`.
    pub asymptotic_witness: BigInt,
    /// Nodal classes with `|y|` up to this value were checked explicitly.
    pub boundary_y: BigInt,
    pub boundary_checked: Vec<NodalClass>,
    pub counterexample: Option<NodalClass>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDegree {
    pub degree: BigInt,
    pub attained_at: SurfaceClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChecklistItem {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VeryAmpleVerdict {
    VeryAmpleAndLineFree,
    NotEstablished,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeryAmpleChecklist {
    pub polarization: Polarization,
    pub items: Vec<ChecklistItem>,
    pub verdict: VeryAmpleVerdict,
}

impl VeryAmpleChecklist {
    pub fn all_pass(&self) -> bool {
        self.verdict == VeryAmpleVerdict::VeryAmpleAndLineFree
    }
}
