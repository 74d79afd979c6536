//! Depth-zero cuspidal data: a maximal parahoric together with the semisimple
//! support P ↦ m_P of a cuspidal representation on each factor of its quotient.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{enumerate_self_dual_classes, Field, FieldSpec, Linear, SelfDualClass};
use crate::groups::{Case, FiniteFactor, GroupSpec, Parahoric};

/// m-values of the eigenvalue blocks of one factor; absent classes have m = 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorSupport(BTreeMap<SelfDualClass, u32>);

impl FactorSupport {
    pub fn new() -> Self {
        FactorSupport(BTreeMap::new())
    }

    pub fn from_pairs<I: IntoIterator<Item = (SelfDualClass, u32)>>(pairs: I) -> Self {
        let mut s = FactorSupport::new();
        for (k, m) in pairs {
            s.set(k, m);
        }
        s
    }

    pub fn m(&self, class: &SelfDualClass) -> u32 {
        self.0.get(class).copied().unwrap_or(0)
    }

    pub fn set(&mut self, class: SelfDualClass, m: u32) {
        if m == 0 {
            self.0.remove(&class);
        } else {
            self.0.insert(class, m);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SelfDualClass, u32)> {
        self.0.iter().map(|(k, &m)| (k, m))
    }

    pub fn classes(&self) -> impl Iterator<Item = &SelfDualClass> {
        self.0.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Multiplicity a_P of the P-block of s given m_P.
pub fn block_multiplicity(case: Case, linear: Option<Linear>, m: u32) -> u32 {
    match (case, linear) {
        (Case::I, Some(_)) => 2 * (m * m + m),
        (Case::Ii, Some(Linear::MinusOne)) => 2 * (m * m + m) + 1,
        (Case::Ii, Some(Linear::PlusOne)) | (Case::Iii, Some(_)) => 2 * m * m,
        _ => m * (m + 1) / 2,
    }
}

/// Classes every support is evaluated on: its own keys plus X∓1 over a trivial pair.
pub fn domain<'a, I: IntoIterator<Item = &'a SelfDualClass>>(spec: FieldSpec, classes: I) -> Vec<SelfDualClass> {
    let mut out: Vec<SelfDualClass> = classes.into_iter().cloned().collect();
    if !spec.is_quadratic() {
        out.push(SelfDualClass::minus_one(spec));
        out.push(SelfDualClass::plus_one(spec));
    }
    out.sort();
    out.dedup();
    out
}

/// Σ a_P deg P, counting the forced X−1 block of a symplectic factor.
pub fn support_degree(spec: FieldSpec, f: &FiniteFactor, s: &FactorSupport) -> u32 {
    domain(spec, s.classes())
        .iter()
        .map(|k| block_multiplicity(f.case(), k.linear(spec), s.m(k)) * k.degree())
        .sum()
}

/// Type of the orthogonal space dual to an even orthogonal factor carrying `s`.
///
/// The ±1-eigenspaces have type (−1)^{m±}. An even-degree block P^a is a hermitian
/// space of dimension a over the degree-deg/2 subfield, which has type (−1)^a.
pub fn support_sign(spec: FieldSpec, s: &FactorSupport) -> i8 {
    let odd: u32 = s.iter().map(|(k, m)| if k.linear(spec).is_some() { m } else { m * (m + 1) / 2 }).sum();
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The blocks a factor carries regardless of its support.
pub fn implicit_linear_entries(spec: FieldSpec, f: &FiniteFactor) -> BTreeMap<SelfDualClass, u32> {
    let mut out = BTreeMap::new();
    if f.case() == Case::Ii {
        out.insert(SelfDualClass::minus_one(spec), 1);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Violation {
    /// The class cannot occur for this factor's field.
    ClassField { class: Vec<u32>, case: Case },
    TotalDegree { expected: u32, actual: u32 },
    SignLaw { expected: i8, actual: i8 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ClassField { class, case } => write!(f, "class {class:?} does not occur in case {case:?}"),
            Violation::TotalDegree { expected, actual } => {
                write!(f, "characteristic polynomial has degree {actual}, the dual space has dimension {expected}")
            }
            Violation::SignLaw { expected, actual } => write!(f, "support forces type {actual:+}, factor has type {expected:+}"),
        }
    }
}

/// Checks the block-multiplicity, total degree and type constraints of one factor.
pub fn validate_support(spec: FieldSpec, f: &FiniteFactor, s: &FactorSupport) -> std::result::Result<(), Vec<Violation>> {
    let mut bad = Vec::new();
    let unitary = f.case() == Case::U;
    for (k, _) in s.iter() {
        let ok = if unitary { spec.is_quadratic() && k.degree() % 2 == 1 } else { !spec.is_quadratic() && (k.linear(spec).is_some() || k.degree() % 2 == 0) };
        if !ok {
            bad.push(Violation::ClassField { class: k.poly().coeffs().to_vec(), case: f.case() });
        }
    }
    let actual = support_degree(spec, f, s);
    if actual != f.dual_dim() {
        bad.push(Violation::TotalDegree { expected: f.dual_dim(), actual });
    }
    if let Some(expected) = f.sign() {
        let actual = support_sign(spec, s);
        if actual != expected {
            bad.push(Violation::SignLaw { expected, actual });
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// A depth-zero cuspidal datum: maximal parahoric plus one support per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspidalDatum {
    parahoric: Parahoric,
    supports: [FactorSupport; 2],
}

impl CuspidalDatum {
    pub fn new(group: GroupSpec, n: [u32; 2], supports: [FactorSupport; 2]) -> Result<Self> {
        let parahoric = group
            .parahoric(n[0], n[1])
            .ok_or_else(|| Error::Datum(format!("J_{{{},{}}} does not exist in {group}", n[0], n[1])))?;
        if !parahoric.maximal {
            return Err(Error::Datum(format!("{parahoric} is not maximal")));
        }
        let spec = group.field();
        let mut bad = Vec::new();
        for (f, s) in parahoric.factors.iter().zip(&supports) {
            if let Err(v) = validate_support(spec, f, s) {
                bad.extend(v);
            }
        }
        if !bad.is_empty() {
            return Err(Error::Support(bad));
        }
        Ok(CuspidalDatum { parahoric, supports })
    }

    pub fn group(&self) -> GroupSpec {
        self.parahoric.group
    }

    pub fn parahoric(&self) -> &Parahoric {
        &self.parahoric
    }

    pub fn supports(&self) -> &[FactorSupport; 2] {
        &self.supports
    }

    pub fn spec(&self) -> FieldSpec {
        self.parahoric.group.field()
    }

    /// The pair (m⁽¹⁾, m⁽²⁾) at a class.
    pub fn m_pair(&self, class: &SelfDualClass) -> [u32; 2] {
        [self.supports[0].m(class), self.supports[1].m(class)]
    }

    /// Classes in either support, plus X∓1 over a trivial pair.
    pub fn domain(&self) -> Vec<SelfDualClass> {
        domain(self.spec(), self.supports[0].classes().chain(self.supports[1].classes()))
    }

    /// Reads the JSON form against a group.
    pub fn from_json(group: GroupSpec, value: &serde_json::Value) -> Result<Self> {
        let raw: DatumJson = serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
        let field = Field::new(group.field());
        let mut supports = [FactorSupport::new(), FactorSupport::new()];
        for (slot, entries) in raw.supports.into_iter().enumerate() {
            for e in entries {
                let class = SelfDualClass::from_coeffs(&field, e.poly)?;
                if supports[slot].m(&class) != 0 {
                    return Err(Error::Datum(format!("class {} listed twice", class.render(group.field()))));
                }
                supports[slot].set(class, e.m);
            }
        }
        CuspidalDatum::new(group, [raw.parahoric.n1, raw.parahoric.n2], supports)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let supports: Vec<Vec<EntryJson>> = self
            .supports
            .iter()
            .map(|s| s.iter().map(|(k, m)| EntryJson { poly: k.poly().coeffs().to_vec(), m }).collect())
            .collect();
        let raw = DatumJson {
            parahoric: SlotJson { n1: self.parahoric.n[0], n2: self.parahoric.n[1] },
            supports: [supports[0].clone(), supports[1].clone()],
        };
        serde_json::to_value(raw).expect("plain data")
    }

    pub fn render(&self) -> String {
        let spec = self.spec();
        let side = |i: usize| {
            let s = &self.supports[i];
            let body: Vec<String> = s.iter().map(|(k, m)| format!("{}:{m}", k.render(spec))).collect();
            format!("{}{{{}}}", self.parahoric.factors[i], body.join(", "))
        };
        format!("J_{{{},{}}} {} x {}", self.parahoric.n[0], self.parahoric.n[1], side(0), side(1))
    }
}

/// Outcome of one validation clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Clause {
    fn pass() -> Self {
        Clause { ok: true, detail: None }
    }

    fn fail(detail: String) -> Self {
        Clause { ok: false, detail: Some(detail) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorVerdict {
    pub factor: String,
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Clause-by-clause verdict on a datum given as JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub classes: Clause,
    pub parahoric: Clause,
    pub factors: Vec<FactorVerdict>,
}

/// Checks every clause instead of stopping at the first failure; errors only on unreadable input.
pub fn validate_json(group: GroupSpec, value: &serde_json::Value) -> Result<Verdict> {
    let raw: DatumJson = serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
    let spec = group.field();
    let field = Field::new(spec);
    let mut supports = [FactorSupport::new(), FactorSupport::new()];
    let mut problems = Vec::new();
    for (slot, entries) in raw.supports.into_iter().enumerate() {
        for e in entries {
            match SelfDualClass::from_coeffs(&field, e.poly.clone()) {
                Ok(k) if supports[slot].m(&k) != 0 => problems.push(format!("{} listed twice", k.render(spec))),
                Ok(k) => supports[slot].set(k, e.m),
                Err(err) => problems.push(format!("{:?}: {err}", e.poly)),
            }
        }
    }
    let classes = if problems.is_empty() { Clause::pass() } else { Clause::fail(problems.join("; ")) };
    let n = [raw.parahoric.n1, raw.parahoric.n2];
    let (parahoric, factors) = match group.parahoric(n[0], n[1]) {
        None => (Clause::fail(format!("J_{{{},{}}} does not exist in {group}", n[0], n[1])), Vec::new()),
        Some(p) => {
            let clause = if p.maximal { Clause::pass() } else { Clause::fail(format!("{p} is not maximal")) };
            let factors = p
                .factors
                .iter()
                .zip(&supports)
                .map(|(f, s)| {
                    let violations = validate_support(spec, f, s).err().unwrap_or_default();
                    FactorVerdict { factor: f.to_string(), ok: violations.is_empty(), violations }
                })
                .collect();
            (clause, factors)
        }
    };
    let valid = classes.ok && parahoric.ok && !factors.is_empty() && factors.iter().all(|f: &FactorVerdict| f.ok);
    Ok(Verdict { valid, classes, parahoric, factors })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumJson {
    parahoric: SlotJson,
    supports: [Vec<EntryJson>; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SlotJson {
    n1: u32,
    n2: u32,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    poly: Vec<u32>,
    m: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitStructure {
    AllFixed,
    Swapped,
}

/// How many inequivalent representations of G carry a datum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepCount {
    pub per_factor_series: [u32; 2],
    pub orbit_structure: OrbitStructure,
    pub total: u32,
    /// Count for the full orthogonal group, for even orthogonal G.
    pub full_orthogonal: Option<u32>,
}

/// Number of cuspidals of the factor in the series of s, and whether an element of
/// the full orthogonal group of the factor swaps them.
fn factor_series(spec: FieldSpec, f: &FiniteFactor, s: &FactorSupport) -> (u32, bool) {
    let mp = s.m(&SelfDualClass::minus_one(spec));
    let mm = s.m(&SelfDualClass::plus_one(spec));
    match f.case() {
        Case::Ii => (if mm > 0 { 2 } else { 1 }, false),
        Case::Iii if mp > 0 && mm > 0 => (2, false),
        Case::Iii if mp == 0 && mm == 0 && f.dual_dim() > 0 => (2, true),
        _ => (1, false),
    }
}

/// Σ over orbits of the stabilizer order, for a group of order `order` whose orbits on
/// the labels all have size `orbit`.
fn orbit_sum(labels: u32, order: u32, orbit: u32) -> u32 {
    labels * order / (orbit * orbit)
}

pub fn count_representations(d: &CuspidalDatum) -> RepCount {
    let spec = d.spec();
    let p = d.parahoric();
    let series: Vec<(u32, bool)> = p.factors.iter().zip(&d.supports).map(|(f, s)| factor_series(spec, f, s)).collect();
    let labels = series[0].0 * series[1].0;
    let order = p.component_group_order();
    let swaps = order == 2 && series.iter().any(|x| x.1);
    let total = orbit_sum(labels, order, if swaps { 2 } else { 1 });
    let full_orthogonal = (p.group.family() == crate::groups::Family::SOeven).then(|| {
        let live: Vec<usize> = (0..2).filter(|&i| p.factors[i].space_dim() > 0).collect();
        let orbit: u32 = live.iter().map(|&i| if series[i].1 { 2 } else { 1 }).product();
        orbit_sum(labels, 1 << live.len(), orbit)
    });
    RepCount {
        per_factor_series: [series[0].0, series[1].0],
        orbit_structure: if swaps { OrbitStructure::Swapped } else { OrbitStructure::AllFixed },
        total,
        full_orthogonal,
    }
}

/// Every support of total degree `f.dual_dim()` built from `classes`.
pub fn enumerate_supports(spec: FieldSpec, f: &FiniteFactor, classes: &[SelfDualClass]) -> Vec<FactorSupport> {
    let case = f.case();
    let mut keys: Vec<SelfDualClass> = domain(spec, classes.iter());
    keys.retain(|k| {
        if case == Case::U {
            k.degree() % 2 == 1
        } else {
            k.linear(spec).is_some() || k.degree() % 2 == 0
        }
    });
    let mut out = Vec::new();
    let mut cur = FactorSupport::new();
    fill(spec, case, &keys, f.dual_dim(), &mut cur, &mut out);
    if let Some(sign) = f.sign() {
        out.retain(|s| support_sign(spec, s) == sign);
    }
    out
}

fn fill(spec: FieldSpec, case: Case, keys: &[SelfDualClass], left: u32, cur: &mut FactorSupport, out: &mut Vec<FactorSupport>) {
    let Some((k, rest)) = keys.split_first() else {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    };
    let lin = k.linear(spec);
    for m in 0.. {
        let used = block_multiplicity(case, lin, m) * k.degree();
        if used > left {
            break;
        }
        cur.set(k.clone(), m);
        fill(spec, case, rest, left - used, cur, out);
    }
    cur.set(k.clone(), 0);
}

/// Self-dual classes of degree at most `bound` (degree 1 always included).
pub fn classes_up_to(field: &Field, bound: u32) -> Vec<SelfDualClass> {
    (1..=bound.max(1)).flat_map(|d| enumerate_self_dual_classes(field, d)).collect()
}

/// All cuspidal data of G whose supports use only `classes` (and X∓1).
pub fn enumerate_data_with(group: GroupSpec, classes: &[SelfDualClass]) -> Vec<CuspidalDatum> {
    let spec = group.field();
    let mut out = Vec::new();
    for p in group.parahorics().into_iter().filter(|p| p.maximal) {
        let a = enumerate_supports(spec, &p.factors[0], classes);
        let b = enumerate_supports(spec, &p.factors[1], classes);
        for s1 in &a {
            for s2 in &b {
                out.push(CuspidalDatum { parahoric: p, supports: [s1.clone(), s2.clone()] });
            }
        }
    }
    out
}

/// All cuspidal data of G with classes of degree at most `degree_bound`.
pub fn enumerate_data(group: GroupSpec, degree_bound: u32) -> Vec<CuspidalDatum> {
    let field = Field::new(group.field());
    enumerate_data_with(group, &classes_up_to(&field, degree_bound))
}
