//! Rendering of reports for the command line.
//!
//! JSON output is built as a `serde_json::Value`. Objects keep their keys
//! sorted, every number is a decimal string (rationals as `"p/q"`), and the
//! text is pretty-printed, so parsing a report and printing it again gives
//! the same bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::RationalInterval;
use crate::hilb2::Hilb2Lattice;
use crate::surface::Polarization;
use crate::verdict::{density_verdict_with, DensityReport, Verdict, VerdictOptions, Witness, INVOLUTION_NOTE};

pub const SCAN_MIN: i64 = 5;
pub const SCAN_MAX: i64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r` truncated toward zero to `digits` decimal places, computed exactly.
fn decimal(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).trunc().to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let (int, frac) = scaled.abs().div_rem(&scale);
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
}

fn interval_json(iv: &RationalInterval) -> Value {
    json!({ "lower": rational(iv.lower()), "upper": rational(iv.upper()) })
}

fn interval_text(iv: &RationalInterval) -> String {
    format!(
        "[{}, {}] (~ {} .. {})",
        rational(iv.lower()),
        rational(iv.upper()),
        decimal(iv.lower(), 6),
        decimal(iv.upper(), 6)
    )
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Int(v) => Value::String(v.to_string()),
        Witness::Bool(b) => Value::Bool(*b),
        Witness::Text(s) => Value::String(s.clone()),
        Witness::Vector(v) => ints(v),
        Witness::Matrix(rows) => Value::Array(rows.iter().map(|r| ints(r)).collect()),
        Witness::Interval(iv) => interval_json(iv),
        Witness::List(items) => Value::Array(items.iter().map(witness_json).collect()),
        Witness::None => Value::Null,
    }
}

/// The report without timing, which is the part that must agree between runs.
pub fn report_value(r: &DensityReport) -> Value {
    let stages: Vec<Value> = r
        .stages
        .iter()
        .map(|s| {
            let witnesses: Map<String, Value> =
                s.witnesses.iter().map(|(k, w)| ((*k).to_string(), witness_json(w))).collect();
            json!({
                "id": s.id.to_string(),
                "name": s.name,
                "pass": s.pass,
                "blocking": s.blocking,
                "witnesses": witnesses,
                "anchor": s.anchor,
            })
        })
        .collect();
    json!({
        "a": r.a.to_string(),
        "stages": stages,
        "verdict": r.verdict.as_str(),
        "failing_stage": r.failing_stage.map(|id| id.to_string()),
    })
}

pub fn report_json(r: &DensityReport) -> String {
    let mut v = report_value(r);
    v["timing"] = json!({ "elapsed_us": r.elapsed.as_micros().to_string() });
    to_pretty(&v)
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable value")
}

/// Parses JSON and prints it again in canonical form.
pub fn canonicalize(text: &str) -> Result<String> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Internal(format!("bad JSON: {e}")))?;
    if contains_float(&v) {
        return Err(Error::Internal("report JSON must not contain bare numbers".into()));
    }
    Ok(to_pretty(&v))
}

fn contains_float(v: &Value) -> bool {
    match v {
        Value::Number(_) => true,
        Value::Array(xs) => xs.iter().any(contains_float),
        Value::Object(m) => m.values().any(contains_float),
        _ => false,
    }
}

pub fn report_text(r: &DensityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "a = {}", r.a);
    for s in &r.stages {
        let status = if s.pass { "PASS" } else { "FAIL" };
        let tag = if s.blocking { "" } else { " (informational)" };
        let _ = writeln!(out, "  [{}] {:<36} {status}{tag}", s.id, s.name);
        let _ = writeln!(out, "      {}", s.anchor);
        for (k, w) in &s.witnesses {
            let shown = match w {
                Witness::Interval(iv) => interval_text(iv),
                other => other.to_string(),
            };
            let _ = writeln!(out, "      {k}: {shown}");
        }
    }
    let _ = write!(out, "verdict: {} ({}/{} stages pass", r.verdict, r.passed(), r.stages.len());
    match r.failing_stage {
        Some(id) if r.verdict == Verdict::NotEstablished => {
            let _ = writeln!(out, ", first blocking failure at stage {id})");
        }
        _ => {
            let _ = writeln!(out, ")");
        }
    }
    let _ = writeln!(out, "elapsed: {} us", r.elapsed.as_micros());
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub a: BigInt,
    pub has_nodal: bool,
    /// `b_a` represents zero (elliptic pencil).
    pub has_isotropic: bool,
    /// `q` represents zero on `NS(X)`.
    pub q_isotropic: bool,
    pub min_degrees: [Option<BigInt>; 2],
    pub spectral_radius: RationalInterval,
    pub verdict: Verdict,
    pub failing_stage: Option<u8>,
}

impl ScanRow {
    pub fn from_report(r: &DensityReport) -> Result<Self> {
        let stage = |id| r.stage(id).ok_or_else(|| Error::Internal(format!("report lacks stage {id}")));
        let min = |key| match stage(4)?.witness(key) {
            Some(Witness::Int(d)) => Ok(Some(d.clone())),
            Some(Witness::None) | None => Ok(None),
            Some(other) => Err(Error::Internal(format!("unexpected {key}: {other}"))),
        };
        let spectral_radius = match stage(7)?.witness("spectral_radius") {
            Some(Witness::Interval(iv)) => iv.clone(),
            _ => return Err(Error::Internal("report lacks the spectral radius".into())),
        };
        Ok(ScanRow {
            a: r.a.clone(),
            has_nodal: stage(1)?.pass,
            has_isotropic: !stage(2)?.pass,
            q_isotropic: !stage(5)?.pass,
            min_degrees: [min("min_degree_h1")?, min("min_degree_h2")?],
            spectral_radius,
            verdict: r.verdict,
            failing_stage: r.failing_stage,
        })
    }
}

pub fn validate_range(from: i64, to: i64) -> Result<()> {
    if !(SCAN_MIN <= from && from <= to && to <= SCAN_MAX) {
        return Err(Error::InvalidRange { from, to });
    }
    Ok(())
}

/// One row per parameter in `from..=to`, evaluated in parallel and returned
/// in increasing order of `a`.
pub fn scan(from: i64, to: i64, opts: &VerdictOptions) -> Result<Vec<ScanRow>> {
    validate_range(from, to)?;
    (from..=to).into_par_iter().map(|a| ScanRow::from_report(&density_verdict_with(a, opts)?)).collect()
}

pub fn scan_summary(rows: &[ScanRow]) -> BTreeMap<&'static str, usize> {
    let mut counts = BTreeMap::new();
    for v in [Verdict::PotentiallyDense, Verdict::EllipticCase, Verdict::NotEstablished] {
        counts.insert(v.as_str(), rows.iter().filter(|r| r.verdict == v).count());
    }
    counts
}

fn opt_int(v: &Option<BigInt>) -> Value {
    v.as_ref().map_or(Value::Null, |d| Value::String(d.to_string()))
}

pub fn scan_row_value(r: &ScanRow) -> Value {
    json!({
        "a": r.a.to_string(),
        "has_nodal": r.has_nodal,
        "has_isotropic": r.has_isotropic,
        "q_isotropic": r.q_isotropic,
        "min_degrees": [opt_int(&r.min_degrees[0]), opt_int(&r.min_degrees[1])],
        "spectral_radius": interval_json(&r.spectral_radius),
        "verdict": r.verdict.as_str(),
        "failing_stage": r.failing_stage.map(|id| id.to_string()),
    })
}

pub fn scan_json(rows: &[ScanRow]) -> String {
    let summary: Map<String, Value> =
        scan_summary(rows).into_iter().map(|(k, n)| (k.to_string(), Value::String(n.to_string()))).collect();
    to_pretty(&json!({
        "rows": rows.iter().map(scan_row_value).collect::<Vec<_>>(),
        "summary": summary,
    }))
}

pub fn scan_text(rows: &[ScanRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>6}  {:>5}  {:>6}  {:>5}  {:>8}  {:>8}  {:>16}  verdict",
        "a", "nodal", "pencil", "q=0", "min_h1", "min_h2", "lambda"
    );
    let show = |d: &Option<BigInt>| d.as_ref().map_or("-".to_string(), ToString::to_string);
    let yn = |b: bool| if b { "yes" } else { "no" };
    for r in rows {
        let verdict = match (r.verdict, r.failing_stage) {
            (Verdict::NotEstablished, Some(id)) => format!("{} (stage {id})", r.verdict),
            (v, _) => v.to_string(),
        };
        let _ = writeln!(
            out,
            "{:>6}  {:>5}  {:>6}  {:>5}  {:>8}  {:>8}  {:>16}  {verdict}",
            r.a,
            yn(r.has_nodal),
            yn(r.has_isotropic),
            yn(r.q_isotropic),
            show(&r.min_degrees[0]),
            show(&r.min_degrees[1]),
            decimal(r.spectral_radius.lower(), 6),
        );
    }
    let summary: Vec<String> = scan_summary(rows).into_iter().map(|(k, n)| format!("{k}={n}")).collect();
    let _ = writeln!(out, "summary: {} parameters; {}", rows.len(), summary.join(", "));
    out
}

/// Gram matrix, involutions, their product and its spectrum.
pub fn matrix_value(a: &BigInt) -> Result<Value> {
    let x = Hilb2Lattice::build(a.clone())?;
    let m1 = x.beauville_matrix(Polarization::H1)?;
    let m2 = x.beauville_matrix(Polarization::H2)?;
    let action = x.composed_action()?;
    let inv = x.invariant_class()?;
    let mat = |m: &crate::exact::IntMatrix| witness_json(&Witness::matrix(m));
    let mut v = json!({
        "a": a.to_string(),
        "basis": ["H1", "E", "H2"],
        "gram": mat(x.gram()),
        "iota1": mat(&m1.matrix),
        "iota2": mat(&m2.matrix),
        "product": mat(&action.isometry.matrix),
        "char_poly": action.char_poly.to_string(),
        "invariant_class": witness_json(&Witness::ns(&inv.class)),
        "formula_class": witness_json(&Witness::ns(&inv.formula_class)),
        "spectral_radius": interval_json(&action.spectral_radius),
    });
    if a == &BigInt::from(7) {
        v["note"] = Value::String(INVOLUTION_NOTE.to_string());
    }
    Ok(v)
}

pub fn matrix_text(a: &BigInt) -> Result<String> {
    let x = Hilb2Lattice::build(a.clone())?;
    let m1 = x.beauville_matrix(Polarization::H1)?;
    let m2 = x.beauville_matrix(Polarization::H2)?;
    let action = x.composed_action()?;
    let inv = x.invariant_class()?;
    let mut out = String::new();
    let _ = writeln!(out, "a = {a}, basis (H1, E, H2)");
    let _ = writeln!(out, "gram:    {}", x.gram());
    let _ = writeln!(out, "iota1^*: {}", m1.matrix);
    let _ = writeln!(out, "iota2^*: {}", m2.matrix);
    let _ = writeln!(out, "product: {}", action.isometry.matrix);
    let _ = writeln!(out, "char poly: {}", action.char_poly);
    let _ = writeln!(out, "invariant class: {} (line of {})", inv.class, inv.formula_class);
    let _ = writeln!(out, "spectral radius: {}", interval_text(&action.spectral_radius));
    if a == &BigInt::from(7) {
        let _ = writeln!(out, "note: {INVOLUTION_NOTE}");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::density_verdict;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimals_are_truncated_exactly() {
        assert_eq!(decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(decimal(&rat(-7, 2), 2), "-3.50");
        assert_eq!(decimal(&rat(5, 1), 1), "5.0");
        assert_eq!(rational(&rat(6, 4)), "3/2");
        assert_eq!(rational(&rat(4, 2)), "2");
    }

    #[test]
    fn json_is_canonical() {
        let r = density_verdict(7).unwrap();
        let text = report_json(&r);
        assert_eq!(canonicalize(&text).unwrap(), text);
        assert!(!contains_float(&serde_json::from_str(&text).unwrap()));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["verdict"], "POTENTIALLY_DENSE");
        assert_eq!(v["stages"][7]["witnesses"]["delta_image_e2"], "356");
        assert_eq!(v["a"], "7");
    }

    #[test]
    fn floats_are_rejected() {
        assert!(canonicalize("{\"a\": 1.5}").is_err());
    }

    #[test]
    fn scan_small_range() {
        let rows = scan(5, 13, &VerdictOptions::default()).unwrap();
        let dense: Vec<i64> = rows
            .iter()
            .filter(|r| r.verdict == Verdict::PotentiallyDense)
            .map(|r| i64::try_from(&r.a).unwrap())
            .collect();
        assert_eq!(dense, vec![7, 13]);
        assert_eq!(rows[0].verdict, Verdict::EllipticCase);
        let summary = scan_summary(&rows);
        assert_eq!(summary["NOT_ESTABLISHED"], 6);
        assert!(scan_text(&rows).contains("summary: 9 parameters"));
    }

    #[test]
    fn range_validation() {
        assert!(validate_range(5, 5).is_ok());
        assert!(validate_range(5, 10_000).is_ok());
        assert_eq!(validate_range(13, 5), Err(Error::InvalidRange { from: 13, to: 5 }));
        assert!(validate_range(4, 10).is_err());
        assert!(validate_range(5, 10_001).is_err());
    }

    #[test]
    fn matrix_dump_for_a7() {
        let v = matrix_value(&BigInt::from(7)).unwrap();
        assert_eq!(v["product"][0], json!(["32", "8", "13"]));
        assert_eq!(v["invariant_class"], json!(["2", "-11", "2"]));
        assert!(v.get("note").is_some());
        assert!(matrix_text(&BigInt::from(7)).unwrap().contains("[[32, 8, 13], [-24, -5, -9], [-7, -2, -3]]"));
        assert!(matrix_value(&BigInt::from(9)).unwrap().get("note").is_none());
    }
}
