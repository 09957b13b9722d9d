//! The ordered certificate chain behind the density verdict.
//!
//! Eight stages are evaluated for every parameter, each recording the exact
//! integers that make it re-checkable. Stage 5 (anisotropy of `q` on `NS(X)`)
//! is reported but does not block the verdict: the argument only needs the
//! composed automorphism to move the `C ∗ C` classes, and some parameters
//! with isotropic `q` (for instance `a = 13`) still pass every other stage.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, RationalInterval};
use crate::hilb2::{periodicity_reduces_to_invariance, Effectivity, Hilb2Lattice, IsotropyVerdict, NsClass};
use crate::surface::{NodalClass, Polarization, SurfaceClass};

/// How many nodal classes to list in stage 1.
const NODAL_SAMPLE: usize = 6;

/// A re-checkable piece of evidence attached to a stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Int(BigInt),
    Bool(bool),
    Text(String),
    Vector(Vec<BigInt>),
    Matrix(Vec<Vec<BigInt>>),
    Interval(RationalInterval),
    List(Vec<Witness>),
    None,
}

impl Witness {
    pub fn int(v: impl Into<BigInt>) -> Self {
        Witness::Int(v.into())
    }

    pub fn surface(c: &SurfaceClass) -> Self {
        Witness::Vector(vec![c.x.clone(), c.y.clone()])
    }

    pub fn ns(c: &NsClass) -> Self {
        Witness::Vector(c.to_vec())
    }

    pub fn matrix(m: &IntMatrix) -> Self {
        Witness::Matrix(m.to_rows())
    }

    fn nodal(n: &NodalClass) -> Self {
        Witness::List(vec![
            Witness::surface(&n.class),
            Witness::Int(n.degree_h1.clone()),
            Witness::Int(n.degree_h2.clone()),
        ])
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match self {
            Witness::Int(v) => write!(f, "{v}"),
            Witness::Bool(b) => write!(f, "{b}"),
            Witness::Text(s) => write!(f, "{s}"),
            Witness::Vector(v) => write!(f, "({})", join(v)),
            Witness::Matrix(rows) => {
                let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
                write!(f, "[{}]", rows.join(", "))
            }
            Witness::Interval(iv) => write!(f, "{iv}"),
            Witness::List(items) => {
                let items: Vec<String> = items.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", items.join(", "))
            }
            Witness::None => write!(f, "none"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    /// Whether a failure here prevents a positive verdict.
    pub blocking: bool,
    pub witnesses: Vec<(&'static str, Witness)>,
    pub anchor: &'static str,
}

impl Stage {
    pub fn witness(&self, key: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|(k, _)| *k == key).map(|(_, w)| w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    PotentiallyDense,
    /// `b_a` represents zero: `S` is elliptic and the argument is different.
    EllipticCase,
    NotEstablished,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::PotentiallyDense => "POTENTIALLY_DENSE",
            Verdict::EllipticCase => "ELLIPTIC_CASE",
            Verdict::NotEstablished => "NOT_ESTABLISHED",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Verdict::PotentiallyDense, Verdict::EllipticCase, Verdict::NotEstablished]
            .into_iter()
            .find(|v| v.as_str() == s)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub a: BigInt,
    pub stages: Vec<Stage>,
    pub verdict: Verdict,
    /// First failing blocking stage when the verdict is not positive.
    pub failing_stage: Option<u8>,
    pub elapsed: Duration,
}

impl DensityReport {
    pub fn stage(&self, id: u8) -> Option<&Stage> {
        self.stages.iter().find(|s| s.id == id)
    }

    pub fn passed(&self) -> usize {
        self.stages.iter().filter(|s| s.pass).count()
    }
}

/// Knobs for the sanity layers; none of them changes a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictOptions {
    /// Box for the exhaustive zero search on `q`.
    pub search_bound: u32,
    /// `|y|` bound when listing sample nodal classes.
    pub y_bound: BigInt,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions { search_bound: 200, y_bound: BigInt::from(100) }
    }
}

pub const STAGE_NAMES: [&str; 8] = [
    "nodal_classes_exist",
    "no_elliptic_pencil",
    "ample_pair",
    "very_ample_line_free",
    "ternary_form_anisotropic",
    "invariant_class_not_effective",
    "periodicity_reduces_to_invariance",
    "delta_not_invariant",
];

const ANCHORS: [&str; 8] = [
    "nodal classes: b_a represents -2",
    "elliptic pencil: b_a does not represent 0",
    "ampleness of h1 and h2 via nodal degrees",
    "very ampleness and no lines, so both involutions are regular",
    "abelian fibration: q does not represent 0 on NS(X)",
    "invariant divisor classes pair to zero with H1 - E",
    "periodicity in H^4 = S^2 H^2 means invariance",
    "Delta_1 . E^2 differs from Delta_1 . (iota_2^* E)^2",
];

/// Note attached to the involution matrices.
pub const INVOLUTION_NOTE: &str = "iota1 with +3 instead of -3 in entry (2,2) is neither an \
involution nor an isometry of q; both matrices are minus the reflections in H_k - E, and their \
product at a = 7 is [[32, 8, 13], [-24, -5, -9], [-7, -2, -3]]";

fn stage(id: u8, pass: bool, witnesses: Vec<(&'static str, Witness)>) -> Stage {
    let i = usize::from(id - 1);
    Stage { id, name: STAGE_NAMES[i], pass, blocking: id != 5, witnesses, anchor: ANCHORS[i] }
}

pub fn density_verdict(a: impl Into<BigInt>) -> Result<DensityReport> {
    density_verdict_with(a, &VerdictOptions::default())
}

pub fn density_verdict_with(a: impl Into<BigInt>, opts: &VerdictOptions) -> Result<DensityReport> {
    let start = Instant::now();
    let a = a.into();
    let x = Hilb2Lattice::build(a.clone())?;
    let s = x.surface();
    let mut stages = Vec::with_capacity(8);

    // 1. nodal classes
    let has_nodal = s.has_nodal_classes()?;
    let sample: Vec<Witness> =
        s.nodal_classes(&opts.y_bound)?.iter().take(NODAL_SAMPLE).map(|n| Witness::surface(&n.class)).collect();
    stages.push(stage(
        1,
        has_nodal,
        vec![
            ("discriminant", Witness::Int(s.discriminant().clone())),
            ("pell_rhs", Witness::int(-8)),
            ("y_bound", Witness::Int(opts.y_bound.clone())),
            ("sample", Witness::List(sample)),
        ],
    ));

    // 2. elliptic pencil
    let pencil = s.has_elliptic_pencil();
    stages.push(stage(
        2,
        !pencil.present,
        vec![
            ("discriminant", Witness::Int(s.discriminant().clone())),
            ("sqrt_floor", Witness::Int(pencil.sqrt_floor.clone())),
            ("isotropic_class", pencil.isotropic.as_ref().map_or(Witness::None, Witness::surface)),
        ],
    ));

    // 3. ampleness
    let ample = s.ample_pair_certificate()?;
    stages.push(stage(
        3,
        ample.pass,
        vec![
            ("asymptotic_witness", Witness::Int(ample.asymptotic_witness.clone())),
            ("boundary_y", Witness::Int(ample.boundary_y.clone())),
            ("boundary_checked", Witness::int(ample.boundary_checked.len())),
            ("counterexample", ample.counterexample.as_ref().map_or(Witness::None, Witness::nodal)),
        ],
    ));

    // 4. very ampleness, lines, regular involutions
    let mut pass4 = true;
    let mut w4 = Vec::new();
    for (k, key_min, key_items) in
        [(Polarization::H1, "min_degree_h1", "checklist_h1"), (Polarization::H2, "min_degree_h2", "checklist_h2")]
    {
        let list = s.very_ample_checklist(k)?;
        pass4 &= list.all_pass();
        let min = s.min_nodal_degree(k)?;
        w4.push((key_min, min.map_or(Witness::None, |m| Witness::Int(m.degree))));
        w4.push((key_items, Witness::List(list.items.iter().map(|i| Witness::Bool(i.pass)).collect())));
    }
    let m1 = x.beauville_matrix(Polarization::H1)?;
    let m2 = x.beauville_matrix(Polarization::H2)?;
    w4.push(("iota1", Witness::matrix(&m1.matrix)));
    w4.push(("iota2", Witness::matrix(&m2.matrix)));
    w4.push(("note", Witness::Text(INVOLUTION_NOTE.into())));
    stages.push(stage(4, pass4, w4));

    // 5. ternary isotropy, with the exhaustive search as a sanity layer
    let form = x.ternary_form();
    let obstruction = x.abelian_fibration_obstruction()?;
    let brute = form.exhaustive_zero_search(opts.search_bound);
    if let (true, Some(zero)) = (obstruction.is_anisotropic(), &brute) {
        return Err(Error::Internal(format!("q declared anisotropic but {zero} is a zero")));
    }
    let mut w5 = Vec::new();
    match &obstruction {
        IsotropyVerdict::Anisotropic { place, diagonal, hilbert_symbol } => {
            w5.push(("place", Witness::Text(place.to_string())));
            w5.push(("diagonal", Witness::Vector(diagonal.to_vec())));
            w5.push(("hilbert_symbol", Witness::int(*hilbert_symbol)));
        }
        IsotropyVerdict::Isotropic { zero } => w5.push(("zero", Witness::ns(zero))),
    }
    w5.push(("search_bound", Witness::int(opts.search_bound)));
    w5.push(("search_zero", brute.as_ref().map_or(Witness::None, Witness::ns)));
    stages.push(stage(5, obstruction.is_anisotropic(), w5));

    // 6. invariant class
    let action = x.composed_action()?;
    let inv = x.invariant_class_of(&action)?;
    stages.push(stage(
        6,
        inv.verdict == Effectivity::NotEffective,
        vec![
            ("invariant_class", Witness::ns(&inv.class)),
            ("formula_class", Witness::ns(&inv.formula_class)),
            ("ample_class", Witness::ns(&inv.ample_class)),
            ("pairing", Witness::Int(inv.pairing_with_ample.clone())),
        ],
    ));

    // 7. periodicity
    let periodic = periodicity_reduces_to_invariance(&action.char_poly)?;
    stages.push(stage(
        7,
        periodic.holds,
        vec![
            ("product", Witness::matrix(&action.isometry.matrix)),
            ("char_poly", Witness::Text(action.char_poly.to_string())),
            ("salem_trace", Witness::Int(action.salem_trace.clone())),
            ("spectral_radius", Witness::Interval(action.spectral_radius.clone())),
            (
                "root_of_unity_orders",
                Witness::Vector(periodic.root_of_unity_orders.iter().map(|&n| BigInt::from(n)).collect()),
            ),
        ],
    ));

    // 8. Δ₁ moves
    let delta = x.delta_invariance_test()?;
    stages.push(stage(
        8,
        !delta.equal,
        vec![
            ("delta_e2", Witness::Int(delta.with_e_squared.clone())),
            ("delta_image_e2", Witness::Int(delta.with_image_squared.clone())),
            ("image_of_e", Witness::ns(&delta.image_of_e)),
        ],
    ));

    let failing_stage = stages.iter().find(|s| s.blocking && !s.pass).map(|s| s.id);
    let verdict = if !stages[1].pass {
        Verdict::EllipticCase
    } else if failing_stage.is_none() {
        Verdict::PotentiallyDense
    } else {
        Verdict::NotEstablished
    };
    Ok(DensityReport { a, stages, verdict, failing_stage, elapsed: start.elapsed() })
}
