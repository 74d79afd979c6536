//! Hecke parameters, reducibility points, inertial reducibility multisets,
//! Jordan sets and parameter shapes of a cuspidal datum.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cuspdata::CuspidalDatum;
use crate::error::{Error, Result};
use crate::ffpoly::{FieldSpec, Linear, SelfDualClass};
use crate::groups::{Case, Family, FiniteFactor};

/// An element of ½ℤ, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_twice(t: i64) -> Self {
        HalfInt(t)
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// ⌊s²⌋ for s ≥ 0.
    pub fn floor_square(self) -> i64 {
        self.0 * self.0 / 4
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// The unordered pair {s, s′}, stored with hi ≥ lo.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SPair {
    pub hi: HalfInt,
    pub lo: HalfInt,
}

impl SPair {
    pub fn new(a: HalfInt, b: HalfInt) -> Self {
        SPair { hi: a.max(b), lo: a.min(b) }
    }

    pub fn values(self) -> [HalfInt; 2] {
        [self.hi, self.lo]
    }
}

impl fmt::Display for SPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.hi, self.lo)
    }
}

/// f_τ for the P-block with multiplicity parameter m on a factor.
pub fn finite_parameter(spec: FieldSpec, f: &FiniteFactor, class: &SelfDualClass, m: u32) -> Result<HalfInt> {
    let case = f.case();
    if (case == Case::U) != spec.is_quadratic() {
        return Err(Error::Domain(format!("case {case:?} factor over {spec}")));
    }
    let m = m as i64;
    let general = HalfInt((2 * m + 1) * class.degree() as i64);
    let twice = |x: i64| HalfInt(2 * x);
    Ok(match (case, class.linear(spec)) {
        (Case::I, Some(_)) | (Case::Ii, Some(Linear::MinusOne)) => twice(2 * m + 1),
        (Case::Ii, Some(Linear::PlusOne)) | (Case::Iii, Some(_)) => twice(2 * m),
        _ => general,
    })
}

fn f_pair(d: &CuspidalDatum, class: &SelfDualClass) -> [HalfInt; 2] {
    let spec = d.spec();
    let m = d.m_pair(class);
    let p = d.parahoric();
    [0, 1].map(|i| finite_parameter(spec, &p.factors[i], class, m[i]).expect("datum factors match its field"))
}

/// {(f₁+f₂)/2n, |f₁−f₂|/2n}.
pub fn reducibility_pair(d: &CuspidalDatum, class: &SelfDualClass) -> SPair {
    let [f1, f2] = f_pair(d, class);
    let n2 = 2 * class.degree() as i64;
    let (a, b) = (f1.0 + f2.0, (f1.0 - f2.0).abs());
    debug_assert!(a % n2 == 0 && b % n2 == 0, "f-values {f1}, {f2} not divisible by {n2}");
    SPair::new(HalfInt(a / n2), HalfInt(b / n2))
}

/// Which of the two self-dual members of an inertial class carries a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Member {
    Base,
    Twist,
}

pub fn member_name(spec: FieldSpec, class: &SelfDualClass, member: Member) -> String {
    match (class.linear(spec), member) {
        (Some(Linear::MinusOne), Member::Base) => "1".into(),
        (Some(Linear::MinusOne), Member::Twist) => "ω0".into(),
        (Some(Linear::PlusOne), Member::Base) => "ω1".into(),
        (Some(Linear::PlusOne), Member::Twist) => "ω2".into(),
        (None, Member::Base) => format!("ρ[{}]", class.render(spec)),
        (None, Member::Twist) => format!("ρ'[{}]", class.render(spec)),
    }
}

/// The ways of distributing {s, s′} over the two members of a class.
///
/// X∓1 over a trivial pair admit both orders. For every other class exactly one of
/// s, s′ is an integer and which member carries it is intrinsic; `Base` names the
/// member with the non-integral value.
fn assignments(spec: FieldSpec, class: &SelfDualClass, pair: SPair) -> Vec<[(Member, HalfInt); 2]> {
    let straight = [(Member::Base, pair.hi), (Member::Twist, pair.lo)];
    let swapped = [(Member::Base, pair.lo), (Member::Twist, pair.hi)];
    if class.linear(spec).is_some() {
        if pair.hi == pair.lo {
            vec![straight]
        } else {
            vec![straight, swapped]
        }
    } else if pair.hi.is_integral() {
        vec![swapped]
    } else {
        vec![straight]
    }
}

/// Jordan block sizes m = 2s−1, 2s−3, … ≥ 1 of a member with value s.
pub fn jordan_sizes(s: HalfInt) -> Vec<u32> {
    let top = s.0 - 1;
    (1..=top.max(0)).rev().filter(|m| (top - m) % 2 == 0).map(|m| m as u32).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPair {
    pub poly: SelfDualClass,
    pub f2: [HalfInt; 2],
    pub s2_pair: [HalfInt; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IredEntry {
    pub poly: SelfDualClass,
    pub s2: HalfInt,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct JordanEntry {
    pub poly: SelfDualClass,
    pub s2: HalfInt,
    pub member_ambiguous: bool,
    pub m: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub lhs: i64,
    pub rhs: i64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Summand {
    pub poly: SelfDualClass,
    pub member: Member,
    pub m: u32,
}

/// φ = ⊕ φ_ρ ⊗ st_m at the level of inertial classes, members and block sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParamShape {
    pub summands: Vec<Summand>,
    pub dual_dim: u32,
}

impl ParamShape {
    pub fn render(&self, spec: FieldSpec) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.summands.len() {
            let head = &self.summands[i];
            let mut ms = Vec::new();
            while i < self.summands.len() && self.summands[i].poly == head.poly && self.summands[i].member == head.member {
                ms.push(self.summands[i].m);
                i += 1;
            }
            let name = member_name(spec, &head.poly, head.member);
            parts.push(if ms == [1] {
                name
            } else if ms.len() == 1 {
                format!("{name}⊗st{}", ms[0])
            } else {
                let st: Vec<String> = ms.iter().map(|m| format!("st{m}")).collect();
                format!("{name}⊗({})", st.join("⊕"))
            });
        }
        parts.join(" ⊕ ")
    }
}

/// Character of a degree-one member in (ℤ/2)², with ω₀ = (1,0), ω₁ = (0,1).
fn gl1_character(spec: FieldSpec, class: &SelfDualClass, member: Member) -> Option<(u32, u32)> {
    Some(match (class.linear(spec)?, member) {
        (Linear::MinusOne, Member::Base) => (0, 0),
        (Linear::MinusOne, Member::Twist) => (1, 0),
        (Linear::PlusOne, Member::Base) => (0, 1),
        (Linear::PlusOne, Member::Twist) => (1, 1),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducibilityReport {
    pub per_class: Vec<ClassPair>,
    pub ired: Vec<IredEntry>,
    pub jordan: Vec<JordanEntry>,
    pub identity: Identity,
    pub shapes: Vec<ParamShape>,
    pub notes: Vec<String>,
}

pub fn per_class(d: &CuspidalDatum) -> Vec<(SelfDualClass, SPair)> {
    d.domain().into_iter().map(|k| {
        let pair = reducibility_pair(d, &k);
        (k, pair)
    }).collect()
}

/// IRed: one entry per member value s ≥ 1, over the support classes and X∓1.
///
/// A class absent from both supports has f₁ = f₂ equal to the table minimum
/// (n/2 for general classes), so s = ½ and s′ = 0 there and nothing is lost.
pub fn ired(d: &CuspidalDatum) -> Vec<IredEntry> {
    let mut out: Vec<IredEntry> = per_class(d)
        .into_iter()
        .flat_map(|(k, p)| p.values().into_iter().filter(|s| s.0 >= 2).map(move |s| IredEntry { poly: k.clone(), s2: s }))
        .collect();
    out.sort();
    out
}

pub fn jordan(d: &CuspidalDatum) -> Vec<JordanEntry> {
    let spec = d.spec();
    let mut out = Vec::new();
    for (k, p) in per_class(d) {
        let ambiguous = k.linear(spec).is_some() && p.hi != p.lo;
        for s in p.values() {
            for m in jordan_sizes(s) {
                out.push(JordanEntry { poly: k.clone(), s2: s, member_ambiguous: ambiguous, m });
            }
        }
    }
    out
}

/// Σ (⌊s²⌋ + ⌊s′²⌋)·deg against N_Ĝ.
pub fn verify_identity(d: &CuspidalDatum) -> Identity {
    let lhs = per_class(d).iter().map(|(k, p)| (p.hi.floor_square() + p.lo.floor_square()) * k.degree() as i64).sum();
    let rhs = d.group().dual_dimension() as i64;
    Identity { lhs, rhs, ok: lhs == rhs }
}

/// The set of parameter shapes compatible with the reducibility data.
///
/// For Sp only, shapes whose degree-one part has nontrivial determinant are dropped;
/// the determinant of each even-degree summand does not depend on the choices made
/// here, since the members of those classes are fixed.
pub fn parameter_shapes(d: &CuspidalDatum) -> Vec<ParamShape> {
    let spec = d.spec();
    let dual_dim = d.group().dual_dimension();
    let mut shapes: Vec<Vec<Summand>> = vec![Vec::new()];
    for (k, pair) in per_class(d) {
        let opts = assignments(spec, &k, pair);
        let mut next = Vec::new();
        for base in &shapes {
            for opt in &opts {
                let mut s = base.clone();
                for &(member, value) in opt {
                    s.extend(jordan_sizes(value).into_iter().map(|m| Summand { poly: k.clone(), member, m }));
                }
                next.push(s);
            }
        }
        shapes = next;
    }
    let mut out = BTreeSet::new();
    for mut s in shapes {
        if d.group().family() == Family::Sp {
            let det = s.iter().filter_map(|x| gl1_character(spec, &x.poly, x.member).map(|(a, b)| (a * x.m, b * x.m))).fold((0, 0), |acc, c| ((acc.0 + c.0) % 2, (acc.1 + c.1) % 2));
            if det != (0, 0) {
                continue;
            }
        }
        s.sort_by(|a, b| (&a.poly, a.member, std::cmp::Reverse(a.m)).cmp(&(&b.poly, b.member, std::cmp::Reverse(b.m))));
        debug_assert_eq!(s.iter().map(|x| x.m * x.poly.degree()).sum::<u32>(), dual_dim);
        out.insert(ParamShape { summands: s, dual_dim });
    }
    out.into_iter().collect()
}

pub fn notes(d: &CuspidalDatum) -> Vec<String> {
    let p = d.parahoric();
    let mut out = Vec::new();
    if p.group.family() == Family::Uramified && p.factors.iter().any(|f| f.case() == Case::I && f.space_dim() > 1) {
        out.push("odd orthogonal factor inside a ramified unitary group: its cuspidal count 1 is a modelling assumption".into());
    }
    out
}

pub fn describe(d: &CuspidalDatum) -> ReducibilityReport {
    let per_class = per_class(d)
        .into_iter()
        .map(|(k, p)| {
            let f2 = f_pair(d, &k);
            ClassPair { poly: k, f2, s2_pair: p.values() }
        })
        .collect();
    ReducibilityReport { per_class, ired: ired(d), jordan: jordan(d), identity: verify_identity(d), shapes: parameter_shapes(d), notes: notes(d) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspdata::FactorSupport;
    use crate::ffpoly::Field;
    use crate::groups::GroupSpec;

    fn f3() -> FieldSpec {
        FieldSpec::of_order(3).unwrap()
    }

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn p2() -> SelfDualClass {
        SelfDualClass::from_coeffs(&Field::new(f3()), vec![1, 0, 1]).unwrap()
    }

    fn sp6() -> CuspidalDatum {
        let s = f3();
        let g = GroupSpec::new(Family::Sp, -1, 3, [0, 0], s).unwrap();
        CuspidalDatum::new(
            g,
            [2, 1],
            [FactorSupport::from_pairs([(SelfDualClass::minus_one(s), 1)]), FactorSupport::from_pairs([(SelfDualClass::plus_one(s), 1)])],
        )
        .unwrap()
    }

    fn u14() -> CuspidalDatum {
        let g = GroupSpec::new(Family::Uramified, 1, 6, [2, 0], f3()).unwrap();
        CuspidalDatum::new(g, [0, 6], [FactorSupport::from_pairs([(p2(), 1)]), FactorSupport::from_pairs([(p2(), 3)])]).unwrap()
    }

    #[test]
    fn half_integers() {
        assert_eq!(h(5).to_string(), "5/2");
        assert_eq!(h(4).to_string(), "2");
        assert_eq!(h(5).floor_square(), 6);
        assert_eq!(h(1).floor_square(), 0);
        assert_eq!(h(6).floor_square(), 9);
    }

    #[test]
    fn finite_parameter_table() {
        let s = f3();
        let xm1 = SelfDualClass::minus_one(s);
        assert_eq!(finite_parameter(s, &FiniteFactor::Sp(4), &xm1, 1), Ok(h(6)));
        assert_eq!(finite_parameter(s, &FiniteFactor::SOeven(8, 1), &xm1, 2), Ok(h(8)));
        assert_eq!(finite_parameter(s, &FiniteFactor::Sp(12), &p2(), 3), Ok(h(14)));
        let f27 = FieldSpec::quadratic_over(3).unwrap();
        let k = Field::new(f27);
        let cubic = crate::ffpoly::enumerate_self_dual_classes(&k, 3).remove(0);
        assert_eq!(finite_parameter(f27, &FiniteFactor::U(3), &cubic, 0), Ok(h(3)));
        assert!(finite_parameter(s, &FiniteFactor::U(3), &xm1, 0).is_err());
        assert!(finite_parameter(f27, &FiniteFactor::Sp(2), &cubic, 0).is_err());
    }

    #[test]
    fn sp6_report() {
        let d = sp6();
        let s = f3();
        assert_eq!(reducibility_pair(&d, &SelfDualClass::minus_one(s)), SPair::new(h(4), h(2)));
        assert_eq!(reducibility_pair(&d, &SelfDualClass::plus_one(s)), SPair::new(h(2), h(2)));
        assert_eq!(verify_identity(&d), Identity { lhs: 7, rhs: 7, ok: true });
        assert_eq!(jordan(&d).len(), 5);
        let shapes = parameter_shapes(&d);
        assert_eq!(shapes.len(), 1);
        assert_eq!(shapes[0].render(s), "ω1 ⊕ ω2 ⊕ 1⊗(st3⊕st1) ⊕ ω0");
    }

    #[test]
    fn u14_report() {
        let d = u14();
        assert_eq!(f_pair(&d, &p2()), [h(6), h(14)]);
        assert_eq!(reducibility_pair(&d, &p2()), SPair::new(h(5), h(2)));
        assert_eq!(ired(&d), vec![IredEntry { poly: p2(), s2: h(2) }, IredEntry { poly: p2(), s2: h(5) }]);
        assert_eq!(verify_identity(&d), Identity { lhs: 14, rhs: 14, ok: true });
        let shapes = parameter_shapes(&d);
        assert_eq!(shapes.len(), 1);
        assert_eq!(shapes[0].render(f3()), "ρ[X^2+1]⊗(st4⊕st2) ⊕ ρ'[X^2+1]");
    }

    #[test]
    fn jordan_block_sizes() {
        assert_eq!(jordan_sizes(h(4)), vec![3, 1]);
        assert_eq!(jordan_sizes(h(5)), vec![4, 2]);
        assert!(jordan_sizes(h(1)).is_empty());
        assert!(jordan_sizes(h(0)).is_empty());
        assert_eq!(jordan_sizes(h(2)), vec![1]);
    }
}
