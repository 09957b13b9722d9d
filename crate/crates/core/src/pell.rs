//! Generalized Pell equations `t² − D·y² = N`.
//!
//! Solutions come in classes under multiplication by `±εᵏ`, where
//! `ε = u + v√D` is the fundamental solution of `u² − D·v² = 1`. A class is
//! stored through one representative (the element of smallest positive `y`,
//! ties broken towards `t > 0`) together with `ε`, and every solution in a
//! `|y|` window is regenerated by walking the orbits.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{exact_sqrt, is_square, isqrt};

/// Classical search boxes larger than this switch to the continued-fraction method.
const BOX_SEARCH_LIMIT: u64 = 200_000;

/// Keep only solutions with `t ≡ multiplier·y (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceFilter {
    pub modulus: BigInt,
    pub multiplier: BigInt,
}

impl CongruenceFilter {
    pub fn new(modulus: impl Into<BigInt>, multiplier: impl Into<BigInt>) -> Self {
        CongruenceFilter { modulus: modulus.into(), multiplier: multiplier.into() }
    }

    pub fn accepts(&self, t: &BigInt, y: &BigInt) -> bool {
        (t - &self.multiplier * y).mod_floor(&self.modulus).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellProblem {
    d: BigInt,
    n: BigInt,
    filter: Option<CongruenceFilter>,
}

impl PellProblem {
    pub fn new(d: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Self> {
        let (d, n) = (d.into(), n.into());
        if d < BigInt::from(2) {
            return Err(Error::InvalidPell(format!("D = {d} must be at least 2")));
        }
        if is_square(&d) {
            return Err(Error::PerfectSquare(d));
        }
        if n.is_zero() {
            return Err(Error::InvalidPell("N must be nonzero".into()));
        }
        Ok(PellProblem { d, n, filter: None })
    }

    pub fn with_filter(mut self, filter: CongruenceFilter) -> Result<Self> {
        if !filter.modulus.is_positive() {
            return Err(Error::InvalidPell("filter modulus must be positive".into()));
        }
        self.filter = Some(filter);
        Ok(self)
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn filter(&self) -> Option<&CongruenceFilter> {
        self.filter.as_ref()
    }

    pub fn is_solution(&self, t: &BigInt, y: &BigInt) -> bool {
        t * t - &self.d * y * y == self.n
    }

    fn passes(&self, t: &BigInt, y: &BigInt) -> bool {
        self.filter.as_ref().is_none_or(|f| f.accepts(t, y))
    }
}

/// A solution of `t² − D·y² = N`.
pub type Solution = (BigInt, BigInt);

/// One class of solutions: `{±εᵏ·(t₀ + y₀√D)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolutionClass {
    pub fundamental: Solution,
    pub unit: Solution,
}

impl PellSolutionClass {
    /// `(t, y) ↦ (u·t + D·v·y, v·t + u·y)`, i.e. multiplication by `ε`.
    pub fn step(&self, d: &BigInt, s: &Solution) -> Solution {
        unit_step(&self.unit, d, s)
    }

    /// Multiplication by `ε⁻¹ = u − v√D`.
    pub fn step_back(&self, d: &BigInt, s: &Solution) -> Solution {
        let inv = (self.unit.0.clone(), -self.unit.1.clone());
        unit_step(&inv, d, s)
    }
}

fn unit_step(unit: &Solution, d: &BigInt, (t, y): &Solution) -> Solution {
    let (u, v) = unit;
    (u * t + d * v * y, v * t + u * y)
}

/// Partial quotients of the periodic continued fraction of `√D`: returns
/// `a₀` and one full period.
fn sqrt_continued_fraction(d: &BigInt) -> (BigInt, Vec<BigInt>) {
    let a0 = isqrt(d);
    let mut period = Vec::new();
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let two_a0 = &a0 * 2;
    loop {
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        period.push(a.clone());
        if a == two_a0 {
            break;
        }
    }
    (a0, period)
}

/// Convergents `p/q` of `√D` over two full periods.
fn convergents(d: &BigInt) -> Vec<Solution> {
    let (a0, period) = sqrt_continued_fraction(d);
    let mut out = Vec::with_capacity(2 * period.len() + 1);
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    out.push((p.clone(), q.clone()));
    for a in period.iter().chain(period.iter()) {
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push((p.clone(), q.clone()));
    }
    out
}

/// Fundamental solution `(u, v)` of `u² − D·v² = 1`, `u, v > 0` minimal.
pub fn fundamental_unit(d: &BigInt) -> Result<Solution> {
    if d < &BigInt::from(2) {
        return Err(Error::InvalidPell(format!("D = {d} must be at least 2")));
    }
    if is_square(d) {
        return Err(Error::PerfectSquare(d.clone()));
    }
    // the first convergent with norm +1 is the fundamental unit; it appears
    // at the end of the first period (even length) or second period (odd)
    convergents(d)
        .into_iter()
        .find(|(p, q)| p * p - d * q * q == BigInt::one())
        .ok_or_else(|| Error::Internal(format!("no unit found for D = {d}")))
}

/// Same class iff `ξ/ξ'` lies in `Z[√D]`, i.e. both coordinates of `ξ·ξ̄'`
/// are divisible by `N`.
fn same_class(d: &BigInt, n: &BigInt, a: &Solution, b: &Solution) -> bool {
    let re = &a.0 * &b.0 - d * &a.1 * &b.1;
    let im = &b.0 * &a.1 - &a.0 * &b.1;
    re.mod_floor(n).is_zero() && im.mod_floor(n).is_zero()
}

/// Upper bound (doubled) on `y` for a class representative:
/// `√(|N|(u+1)/(2D))` for `N < 0`, `√(N(u−1)/(2D))` for `N > 0`.
fn classical_bound(p: &PellProblem, unit: &Solution) -> BigInt {
    let num = if p.n.is_negative() { -&p.n * (&unit.0 + 1) } else { &p.n * (&unit.0 - 1) };
    (isqrt(&(num / (&p.d * 2))) + 1) * 2
}

fn box_candidates(p: &PellProblem, bound: &BigInt) -> Vec<Solution> {
    let mut out = Vec::new();
    let mut y = BigInt::zero();
    while &y <= bound {
        if let Some(t) = exact_sqrt(&(&p.n + &p.d * &y * &y)) {
            out.push((t.clone(), y.clone()));
            if !t.is_zero() {
                out.push((-t, y.clone()));
            }
        }
        y += 1;
    }
    out
}

/// `⌊(P + √D)/Q⌋` for `Q ≠ 0`, with `s = ⌊√D⌋` and `D` not a square.
fn cf_digit(p: &BigInt, q: &BigInt, s: &BigInt) -> BigInt {
    if q.is_positive() {
        (p + s).div_floor(q)
    } else {
        (p + s + BigInt::one()).div_floor(q)
    }
}

/// Lagrange–Matthews–Mollin: every primitive solution of `t² − D·y² = m`
/// with `t ≡ z·y (mod |m|)` is, up to units, a convergent `G/B` of the
/// continued fraction of `(z + √D)/|m|`, where `z² ≡ D (mod |m|)` and
/// `−|m|/2 < z ≤ |m|/2`. Non-primitive solutions come from `N = f²·m`.
fn lmm_candidates(p: &PellProblem) -> Vec<Solution> {
    let s = isqrt(&p.d);
    let abs_n = p.n.abs();
    let mut out = Vec::new();
    let mut f = BigInt::one();
    while &f * &f <= abs_n {
        let f2 = &f * &f;
        if !p.n.is_multiple_of(&f2) {
            f += 1;
            continue;
        }
        let m = &p.n / &f2;
        let am = m.abs();
        let half: BigInt = (&am - BigInt::one()) / 2;
        let mut z = -half;
        while z <= &am / 2 {
            if (&z * &z - &p.d).is_multiple_of(&am) {
                if let Some((g, b)) = lmm_expand(&p.d, &s, &m, &z) {
                    out.push((&g * &f, &b * &f));
                    out.push((-(&g * &f), &b * &f));
                }
            }
            z += 1;
        }
        f += 1;
    }
    out
}

/// Walks the continued fraction of `(z + √D)/|m|` through its pre-period and
/// two full periods, returning the first `(G, B)` with `G² − D·B² = m`.
fn lmm_expand(d: &BigInt, s: &BigInt, m: &BigInt, z: &BigInt) -> Option<Solution> {
    let q0 = m.abs();
    let (mut pp, mut qq) = (z.clone(), q0.clone());
    let (mut a_prev, mut a_cur) = (BigInt::zero(), BigInt::one());
    let (mut b_prev, mut b_cur) = (BigInt::one(), BigInt::zero());
    let mut seen = std::collections::HashMap::new();
    let mut remaining: Option<usize> = None;
    for i in 0usize.. {
        match remaining {
            Some(0) => return None,
            Some(ref mut r) => *r -= 1,
            None => {
                if let Some(first) = seen.insert((pp.clone(), qq.clone()), i) {
                    remaining = Some(2 * (i - first));
                }
            }
        }
        let digit = cf_digit(&pp, &qq, s);
        let a_next = &digit * &a_cur + &a_prev;
        let b_next = &digit * &b_cur + &b_prev;
        a_prev = std::mem::replace(&mut a_cur, a_next);
        b_prev = std::mem::replace(&mut b_cur, b_next);
        let g = &q0 * &a_cur - z * &b_cur;
        if &(&g * &g - d * &b_cur * &b_cur) == m {
            return Some((g, b_cur));
        }
        let p_next = &digit * &qq - &pp;
        qq = (d - &p_next * &p_next) / &qq;
        pp = p_next;
    }
    unreachable!("the loop only exits by returning")
}

/// Class representative: smallest positive `y`, then `t > 0`.
///
/// Along an orbit `|y|` is unimodal and changes sign at most once, so the
/// smallest positive `y` of `±εᵏ·s` sits within one step of the minimum of
/// `|y|` on the orbit of `s` or of `−s`.
fn normalize_representative(d: &BigInt, unit: &Solution, s: &Solution) -> Solution {
    let class = PellSolutionClass { fundamental: s.clone(), unit: unit.clone() };
    let key = |s: &Solution| (s.1.clone(), s.0.is_negative());
    let mut best: Option<Solution> = None;
    for start in [s.clone(), (-s.0.clone(), -s.1.clone())] {
        let centre = descend_to_minimum(&class, d, &start);
        let mut window = vec![centre.clone()];
        let (mut f, mut b) = (centre.clone(), centre);
        for _ in 0..2 {
            f = class.step(d, &f);
            b = class.step_back(d, &b);
            window.push(f.clone());
            window.push(b.clone());
        }
        for cand in window {
            if cand.1.is_positive() && best.as_ref().is_none_or(|bst| key(&cand) < key(bst)) {
                best = Some(cand);
            }
        }
    }
    best.expect("every orbit contains an element with positive y")
}

/// One representative per class of solutions, sorted by `(y, t < 0)`.
/// Empty iff the equation has no integer solutions. The congruence filter is
/// not applied here.
pub fn solution_classes(p: &PellProblem) -> Result<Vec<PellSolutionClass>> {
    let unit = fundamental_unit(&p.d)?;
    let bound = classical_bound(p, &unit);
    let candidates =
        if bound <= BigInt::from(BOX_SEARCH_LIMIT) { box_candidates(p, &bound) } else { lmm_candidates(p) };

    let mut reps: Vec<Solution> = Vec::new();
    for c in &candidates {
        if !p.is_solution(&c.0, &c.1) {
            return Err(Error::Internal(format!("candidate ({}, {}) is not a solution", c.0, c.1)));
        }
        if !reps.iter().any(|r| same_class(&p.d, &p.n, r, c)) {
            reps.push(c.clone());
        }
    }

    // closure: ε and ε⁻¹ images of box candidates fall into known classes
    for c in &candidates {
        for img in [unit_step(&unit, &p.d, c), unit_step(&(unit.0.clone(), -unit.1.clone()), &p.d, c)] {
            if !reps.iter().any(|r| same_class(&p.d, &p.n, r, &img)) {
                return Err(Error::Internal("class set not closed under the unit".into()));
            }
        }
    }

    let mut classes: Vec<PellSolutionClass> = reps
        .iter()
        .map(|r| PellSolutionClass { fundamental: normalize_representative(&p.d, &unit, r), unit: unit.clone() })
        .collect();
    classes.sort_by(|a, b| {
        (&a.fundamental.1, a.fundamental.0.is_negative(), a.fundamental.0.abs()).cmp(&(
            &b.fundamental.1,
            b.fundamental.0.is_negative(),
            b.fundamental.0.abs(),
        ))
    });
    Ok(classes)
}

/// Orbit of `start` under `ε^k`, restricted to `|y| ≤ y_bound`. Walks both
/// directions until `|y|` has passed its minimum and left the window.
fn orbit_within(class: &PellSolutionClass, d: &BigInt, start: &Solution, y_bound: &BigInt) -> Vec<Solution> {
    let mut out = Vec::new();
    if start.1.abs() <= *y_bound {
        out.push(start.clone());
    }
    for forward in [true, false] {
        let mut prev_abs = start.1.abs();
        let mut cur = start.clone();
        loop {
            cur = if forward { class.step(d, &cur) } else { class.step_back(d, &cur) };
            let abs = cur.1.abs();
            if abs <= *y_bound {
                out.push(cur.clone());
            } else if abs > prev_abs {
                break;
            }
            prev_abs = abs;
        }
    }
    out
}

fn sort_key(s: &Solution) -> (BigInt, BigInt, BigInt) {
    (s.1.abs(), s.1.clone(), s.0.clone())
}

/// All solutions with `|y| ≤ y_bound` (both signs), filtered, sorted by
/// `(|y|, y, t)`. Generated from the class orbits; no scanning over `y`.
pub fn enumerate_solutions(p: &PellProblem, y_bound: &BigInt) -> Result<Vec<Solution>> {
    let mut seen = BTreeSet::new();
    for class in solution_classes(p)? {
        let neg = (-class.fundamental.0.clone(), -class.fundamental.1.clone());
        for start in [class.fundamental.clone(), neg] {
            for s in orbit_within(&class, &p.d, &start, y_bound) {
                if p.passes(&s.0, &s.1) {
                    seen.insert(s);
                }
            }
        }
    }
    let mut out: Vec<Solution> = seen.into_iter().collect();
    for s in &out {
        assert!(p.is_solution(&s.0, &s.1), "emitted non-solution");
    }
    out.sort_by_key(sort_key);
    Ok(out)
}

/// Order of the unit's action matrix `[[u, Dv], [v, u]]` modulo `m`.
pub fn unit_period_mod(unit: &Solution, d: &BigInt, m: &BigInt) -> usize {
    let reduce = |x: &BigInt| x.mod_floor(m);
    let a = [[reduce(&unit.0), reduce(&(d * &unit.1))], [reduce(&unit.1), reduce(&unit.0)]];
    let one = reduce(&BigInt::one());
    let zero = BigInt::zero();
    let id = [[one.clone(), zero.clone()], [zero, one]];
    let mut cur = a.clone();
    let mut k = 1;
    while cur != id {
        let next = [
            [
                reduce(&(&cur[0][0] * &a[0][0] + &cur[0][1] * &a[1][0])),
                reduce(&(&cur[0][0] * &a[0][1] + &cur[0][1] * &a[1][1])),
            ],
            [
                reduce(&(&cur[1][0] * &a[0][0] + &cur[1][1] * &a[1][0])),
                reduce(&(&cur[1][0] * &a[0][1] + &cur[1][1] * &a[1][1])),
            ],
        ];
        cur = next;
        k += 1;
    }
    k
}

/// Filtered solutions lying within one residue period (on each side) of the
/// `|y|`-minimum of every class orbit, for both signs.
///
/// Since `|y|` along an orbit is unimodal and the filter residues repeat with
/// the period of the unit modulo the filter modulus, this window contains the
/// filtered solution of smallest `|y|` in every orbit. In particular the set
/// is empty iff the filtered equation has no solutions at all.
pub fn minimal_window(p: &PellProblem) -> Result<Vec<Solution>> {
    let classes = solution_classes(p)?;
    let mut out = BTreeSet::new();
    for class in &classes {
        let period = match p.filter() {
            Some(f) => unit_period_mod(&class.unit, &p.d, &f.modulus),
            None => 1,
        };
        let neg = (-class.fundamental.0.clone(), -class.fundamental.1.clone());
        for start in [class.fundamental.clone(), neg] {
            let centre = descend_to_minimum(class, &p.d, &start);
            let mut fwd = centre.clone();
            let mut back = centre.clone();
            if p.passes(&centre.0, &centre.1) {
                out.insert(centre.clone());
            }
            for _ in 0..period {
                fwd = class.step(&p.d, &fwd);
                back = class.step_back(&p.d, &back);
                for s in [&fwd, &back] {
                    if p.passes(&s.0, &s.1) {
                        out.insert(s.clone());
                    }
                }
            }
        }
    }
    let mut out: Vec<Solution> = out.into_iter().collect();
    out.sort_by_key(sort_key);
    Ok(out)
}

fn descend_to_minimum(class: &PellSolutionClass, d: &BigInt, start: &Solution) -> Solution {
    let mut cur = start.clone();
    loop {
        let f = class.step(d, &cur);
        let b = class.step_back(d, &cur);
        if f.1.abs() < cur.1.abs() {
            cur = f;
        } else if b.1.abs() < cur.1.abs() {
            cur = b;
        } else {
            return cur;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pairs(v: &[(i64, i64)]) -> Vec<Solution> {
        v.iter().map(|&(t, y)| (big(t), big(y))).collect()
    }

    /// Independent oracle: brute force over |y| ≤ bound.
    fn brute(d: i64, n: i64, filter: Option<(i64, i64)>, bound: i64) -> Vec<Solution> {
        let mut out = Vec::new();
        for y in -bound..=bound {
            let rhs = n as i128 + d as i128 * (y as i128) * (y as i128);
            if rhs < 0 {
                continue;
            }
            let r = (rhs as f64).sqrt() as i128;
            for t in [r - 1, r, r + 1] {
                if t >= 0 && t * t == rhs {
                    for tt in if t == 0 { vec![0] } else { vec![t, -t] } {
                        let ok = filter.is_none_or(|(m, c)| (tt - c as i128 * y as i128).rem_euclid(m as i128) == 0);
                        if ok {
                            out.push((BigInt::from(tt), big(y)));
                        }
                    }
                }
            }
        }
        out.sort_by_key(sort_key);
        out.dedup();
        out
    }

    #[test]
    fn fundamental_units() {
        assert_eq!(fundamental_unit(&big(33)).unwrap(), (big(23), big(4)));
        assert_eq!(fundamental_unit(&big(2)).unwrap(), (big(3), big(2)));
        assert_eq!(fundamental_unit(&big(48)).unwrap(), (big(7), big(1)));
        // odd period: D = 13 has unit 649 + 180√13
        assert_eq!(fundamental_unit(&big(13)).unwrap(), (big(649), big(180)));
        assert_eq!(fundamental_unit(&big(49)), Err(Error::PerfectSquare(big(49))));
    }

    #[test]
    fn fundamental_unit_matches_brute_force() {
        for d in 2..200i64 {
            if is_square(&big(d)) {
                continue;
            }
            let (u, v) = fundamental_unit(&big(d)).unwrap();
            if v > big(100_000) {
                continue;
            }
            let v = i64::try_from(&v).unwrap();
            let brute_v = (1..=v).find(|&w| is_square(&(big(d) * big(w) * big(w) + 1))).unwrap();
            assert_eq!(brute_v, v, "D = {d}");
            assert_eq!(&u * &u, big(d) * big(v) * big(v) + 1);
        }
    }

    #[test]
    fn classes_for_nodal_equation() {
        let p = PellProblem::new(33, -8).unwrap();
        let classes = solution_classes(&p).unwrap();
        let reps: Vec<_> = classes.iter().map(|c| c.fundamental.clone()).collect();
        assert_eq!(reps, pairs(&[(5, 1), (-5, 1)]));
        assert!(classes.iter().all(|c| c.unit == (big(23), big(4))));
    }

    #[test]
    fn classes_empty_when_obstructed() {
        let p = PellProblem::new(48, -8).unwrap();
        assert!(solution_classes(&p).unwrap().is_empty());
    }

    #[test]
    fn unit_equation_has_one_class() {
        let p = PellProblem::new(33, 1).unwrap();
        let classes = solution_classes(&p).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].fundamental, (big(23), big(4)));
    }

    #[test]
    fn enumerate_with_filter() {
        let p = PellProblem::new(33, -8).unwrap().with_filter(CongruenceFilter::new(4, 7)).unwrap();
        let got = enumerate_solutions(&p, &big(5)).unwrap();
        assert_eq!(got, pairs(&[(5, -1), (-5, 1), (-17, -3), (17, 3)]));
    }

    #[test]
    fn enumerate_without_filter_small_bound() {
        let p = PellProblem::new(33, -8).unwrap();
        let got = enumerate_solutions(&p, &big(1)).unwrap();
        assert_eq!(got, pairs(&[(-5, -1), (5, -1), (-5, 1), (5, 1)]));
        assert!(enumerate_solutions(&p, &big(0)).unwrap().is_empty());
    }

    #[test]
    fn enumerate_matches_brute_force_grid() {
        for d in [2i64, 3, 5, 7, 12, 20, 33, 48, 65, 84, 153, 209] {
            for n in [-8i64, -4, -2, -1, 1, 2, 4, 8, 9] {
                let Ok(p) = PellProblem::new(d, n) else { continue };
                for bound in [0i64, 1, 7, 60, 200] {
                    let got = enumerate_solutions(&p, &big(bound)).unwrap();
                    assert_eq!(got, brute(d, n, None, bound), "D={d} N={n} bound={bound}");
                }
            }
        }
    }

    #[test]
    fn continued_fraction_route_agrees_with_box_route() {
        for d in [2i64, 3, 13, 33, 61, 65, 94, 153, 181, 209, 425, 1353] {
            for n in [-60i64, -27, -8, -4, -1, 1, 4, 8, 12, 45, 51, 96] {
                let p = PellProblem::new(d, n).unwrap();
                let bound = classical_bound(&p, &fundamental_unit(p.d()).unwrap());
                if bound > big(200_000) {
                    continue;
                }
                let boxed = box_candidates(&p, &bound);
                let lmm = lmm_candidates(&p);
                assert!(lmm.iter().all(|s| p.is_solution(&s.0, &s.1)));
                for s in &boxed {
                    assert!(lmm.iter().any(|c| same_class(p.d(), p.n(), c, s)), "D={d} N={n} {s:?}");
                }
                for s in &lmm {
                    assert!(boxed.iter().any(|c| same_class(p.d(), p.n(), c, s)), "D={d} N={n} {s:?}");
                }
            }
        }
    }

    #[test]
    fn large_unit_with_large_n() {
        // ε = 1111225770 + 82596761·√181, far beyond the classical box
        for n in [15i64, 51, -60] {
            let p = PellProblem::new(181, n).unwrap();
            let got = enumerate_solutions(&p, &big(200)).unwrap();
            assert_eq!(got, brute(181, n, None, 200), "N = {n}");
        }
        let p = PellProblem::new(181, 15).unwrap();
        assert_eq!(solution_classes(&p).unwrap()[0].fundamental.1, big(1));
    }

    #[test]
    fn minimal_window_finds_filtered_minimum() {
        let p = PellProblem::new(33, -8).unwrap().with_filter(CongruenceFilter::new(4, 7)).unwrap();
        let w = minimal_window(&p).unwrap();
        let min_t = w.iter().map(|s| s.0.abs()).min().unwrap();
        assert_eq!(min_t, big(5));
    }

    #[test]
    fn rejects_square_discriminant() {
        assert_eq!(PellProblem::new(9, -8), Err(Error::PerfectSquare(big(9))));
        assert!(PellProblem::new(33, 0).is_err());
    }
}
