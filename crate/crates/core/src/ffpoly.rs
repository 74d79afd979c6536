//! Odd finite fields and the calculus of (conjugate-)self-dual monic polynomials.
//!
//! An element of F_q = F_p[t]/(g) is encoded as the integer whose base-p digits are
//! its coefficients in the basis 1, t, t², ... . The defining polynomial g is the
//! first monic irreducible of degree e in the order of those integer codes, so the
//! encoding is fixed once (p, e) is known.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order the table-driven arithmetic accepts.
pub const MAX_ORDER: u32 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ext {
    Trivial,
    Quadratic,
}

/// The pair F_q ⊇ F_{q₀}; with `Ext::Quadratic`, q = q₀².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFieldSpec")]
pub struct FieldSpec {
    p: u32,
    e: u32,
    ext: Ext,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawFieldSpec {
    p: u32,
    e: u32,
    ext: Ext,
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = Error;
    fn try_from(r: RawFieldSpec) -> Result<Self> {
        FieldSpec::new(r.p, r.e, r.ext)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl FieldSpec {
    /// Reads `{p, e, ext}`, separating shape errors from invalid parameters.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let r: RawFieldSpec = serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
        FieldSpec::try_from(r)
    }

    pub fn new(p: u32, e: u32, ext: Ext) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::Field(format!("characteristic {p} is not an odd prime")));
        }
        if e == 0 {
            return Err(Error::Field("exponent must be positive".into()));
        }
        if ext == Ext::Quadratic && e % 2 == 1 {
            return Err(Error::Field(format!("F_{p}^{e} has no subfield of index 2")));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(Error::Field(format!("order {p}^{e} exceeds {MAX_ORDER}")));
        }
        Ok(FieldSpec { p, e, ext })
    }

    /// F_q with q₀ = q, for an odd prime power q.
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        FieldSpec::new(p, e, Ext::Trivial)
    }

    /// F_{q₀²} over F_{q₀}.
    pub fn quadratic_over(q0: u32) -> Result<Self> {
        let (p, e) = prime_power(q0).ok_or_else(|| Error::Field(format!("{q0} is not a prime power")))?;
        FieldSpec::new(p, 2 * e, Ext::Quadratic)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn ext(&self) -> Ext {
        self.ext
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.e)
    }

    pub fn q0(&self) -> u32 {
        match self.ext {
            Ext::Trivial => self.q(),
            Ext::Quadratic => self.p.pow(self.e / 2),
        }
    }

    pub fn is_quadratic(&self) -> bool {
        self.ext == Ext::Quadratic
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ext {
            Ext::Trivial => write!(f, "F_{}", self.q()),
            Ext::Quadratic => write!(f, "F_{}/F_{}", self.q(), self.q0()),
        }
    }
}

/// Splits q = p^e; `None` unless q is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Table-driven arithmetic in F_q.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    frob: Vec<u32>,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let (p, e) = (spec.p, spec.e);
        let q = spec.q();
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            let prime = Field::new(FieldSpec { p, e: 1, ext: Ext::Trivial });
            (0..q)
                .map(|code| {
                    let mut c = digits(code, p, e);
                    c.push(1);
                    c
                })
                .find(|c| prime.poly_is_irreducible(c))
                .expect("an irreducible polynomial of every degree exists")
        };
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p);
                mul[(a * q + b) as usize] = undigits(&mul_mod(&da, &db, &modulus, p), p);
            }
        }
        let neg = (0..q)
            .map(|a| undigits(&digits(a, p, e).iter().map(|x| (p - x) % p).collect::<Vec<_>>(), p))
            .collect();
        let mut inv = vec![0; n];
        for a in 1..q {
            inv[a as usize] = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).expect("field");
        }
        let mut field = Field { spec, modulus, add, mul, neg, inv, frob: Vec::new() };
        let q0 = spec.q0();
        field.frob = (0..q).map(|a| field.pow(a, q0 as u64)).collect();
        field
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn q(&self) -> u32 {
        self.spec.q()
    }

    /// Coefficients over F_p of the defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn describe(&self) -> String {
        let g = render_coeffs(&self.modulus, 1, 't');
        if self.spec.e == 1 {
            format!("F_{}", self.q())
        } else {
            format!("F_{} = F_{}[t]/({})", self.q(), self.spec.p, g)
        }
    }

    pub fn minus_one(&self) -> u32 {
        self.spec.p - 1
    }

    fn idx(&self, a: u32, b: u32) -> usize {
        debug_assert!(a < self.q() && b < self.q());
        (a * self.q() + b) as usize
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[self.idx(a, b)]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[self.idx(a, b)]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse(self.q()));
        }
        Ok(self.inv[a as usize])
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// x ↦ x^{q₀}: the nontrivial involution σ for a quadratic pair, the identity otherwise.
    pub fn frobenius_q0(&self, a: u32) -> u32 {
        self.frob[a as usize]
    }

    pub fn poly_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        out
    }

    /// Remainder of `a` modulo the monic polynomial `m`, with trailing zeros trimmed.
    pub fn poly_rem(&self, a: &[u32], m: &[u32]) -> Vec<u32> {
        debug_assert_eq!(m.last(), Some(&1));
        let d = m.len() - 1;
        let mut r = a.to_vec();
        while r.len() > d {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - d;
            if lead != 0 {
                for (k, &c) in m.iter().enumerate() {
                    r[shift + k] = self.sub(r[shift + k], self.mul(lead, c));
                }
            }
            r.pop();
        }
        while r.last() == Some(&0) {
            r.pop();
        }
        r
    }

    pub fn eval(&self, poly: &[u32], x: u32) -> u32 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Trial division by every monic polynomial of degree at most deg/2.
    fn poly_is_irreducible(&self, poly: &[u32]) -> bool {
        let n = poly.len() - 1;
        if n <= 1 {
            return true;
        }
        if (0..self.q()).any(|x| self.eval(poly, x) == 0) {
            return false;
        }
        for k in 2..=n / 2 {
            let count = (self.q() as u64).pow(k as u32);
            for code in 0..count {
                let mut d = digits64(code, self.q(), k);
                d.push(1);
                if self.poly_rem(poly, &d).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn digits(mut x: u32, p: u32, len: u32) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn digits64(mut x: u64, base: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (x % base as u64) as u32;
            x /= base as u64;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let e = m.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (e..prod.len()).rev() {
        let lead = prod[top];
        if lead == 0 {
            continue;
        }
        for (k, &mk) in m.iter().enumerate().take(e + 1) {
            let at = top - e + k;
            prod[at] = (prod[at] + p - lead * mk % p) % p;
        }
    }
    prod.truncate(e);
    prod.resize(e, 0);
    prod
}

fn render_coeffs(c: &[u32], e: u32, var: char) -> String {
    let mut terms = Vec::new();
    for (k, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let coeff = if e == 1 { a.to_string() } else { format!("{{{a}}}") };
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        terms.push(match (k, a) {
            (0, _) => coeff,
            (_, 1) => mono,
            _ => format!("{coeff}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// A monic polynomial over F_q, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    /// Rejects empty, out-of-range or non-monic coefficient lists.
    pub fn monic(field: &Field, coeffs: Vec<u32>) -> Result<Poly> {
        match coeffs.last() {
            None => return Err(Error::Poly("the zero polynomial is not allowed".into())),
            Some(&1) => {}
            Some(_) => return Err(Error::Poly(format!("{coeffs:?} is not monic"))),
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= field.q()) {
            return Err(Error::Poly(format!("coefficient {c} is not an element of F_{}", field.q())));
        }
        Ok(Poly { coeffs })
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn constant(&self) -> u32 {
        self.coeffs[0]
    }

    pub fn render(&self, spec: FieldSpec) -> String {
        let c = self.coeffs.clone();
        if spec.e == 1 && c.len() == 2 && c[0] == spec.p - 1 {
            return "X-1".into();
        }
        render_coeffs(&c, spec.e, 'X')
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        Poly { coeffs: field.poly_mul(&self.coeffs, &other.coeffs) }
    }
}

/// Decides irreducibility over F_q; degree 0 is outside the domain.
pub fn is_irreducible(field: &Field, poly: &Poly) -> Result<bool> {
    if poly.degree() == 0 {
        return Err(Error::Domain("irreducibility of a constant".into()));
    }
    Ok(field.poly_is_irreducible(&poly.coeffs))
}

/// P^σ(X) = σ(P(0))⁻¹ X^{deg P} σ(P)(1/X).
pub fn sigma_dual(field: &Field, poly: &Poly) -> Result<Poly> {
    let c0 = poly.constant();
    if c0 == 0 {
        return Err(Error::Domain("duality needs P(0) != 0".into()));
    }
    let scale = field.inv(field.frobenius_q0(c0))?;
    let coeffs = poly.coeffs.iter().rev().map(|&c| field.mul(scale, field.frobenius_q0(c))).collect();
    Ok(Poly { coeffs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Linear {
    MinusOne,
    PlusOne,
}

/// A monic irreducible self-dual polynomial: one inertial class of self-dual cuspidals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SelfDualClass {
    poly: Poly,
}

impl SelfDualClass {
    pub fn new(field: &Field, poly: Poly) -> Result<Self> {
        if poly.degree() == 0 {
            return Err(Error::Poly("a class needs positive degree".into()));
        }
        if poly.constant() == 0 || sigma_dual(field, &poly)? != poly {
            return Err(Error::Poly(format!("{} is not self-dual", poly.render(field.spec()))));
        }
        if !is_irreducible(field, &poly)? {
            return Err(Error::Poly(format!("{} is reducible", poly.render(field.spec()))));
        }
        Ok(SelfDualClass { poly })
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<u32>) -> Result<Self> {
        SelfDualClass::new(field, Poly::monic(field, coeffs)?)
    }

    pub fn minus_one(spec: FieldSpec) -> Self {
        SelfDualClass { poly: Poly { coeffs: vec![spec.p - 1, 1] } }
    }

    pub fn plus_one(_spec: FieldSpec) -> Self {
        SelfDualClass { poly: Poly { coeffs: vec![1, 1] } }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree()
    }

    /// X∓1 over a trivial pair; over a quadratic pair linear classes are not special.
    pub fn linear(&self, spec: FieldSpec) -> Option<Linear> {
        if spec.ext == Ext::Quadratic || self.degree() != 1 {
            return None;
        }
        match self.poly.constant() {
            1 => Some(Linear::PlusOne),
            c if c == spec.p - 1 => Some(Linear::MinusOne),
            _ => None,
        }
    }

    pub fn render(&self, spec: FieldSpec) -> String {
        self.poly.render(spec)
    }
}

/// All self-dual monic irreducibles of the given degree, in canonical order.
///
/// Self-duality pins c_{d−j} = σ(c_j)·c₀ and c₀·σ(c₀) = 1, so only the lower half of
/// the coefficients is searched.
pub fn enumerate_self_dual_classes(field: &Field, degree: u32) -> Vec<SelfDualClass> {
    let d = degree as usize;
    if d == 0 {
        return Vec::new();
    }
    let q = field.q();
    let sigma = |x| field.frobenius_q0(x);
    let starts: Vec<u32> = (1..q).filter(|&c| field.mul(c, sigma(c)) == 1).collect();
    let free = (d - 1) / 2;
    let mut out = Vec::new();
    for &c0 in &starts {
        let middles: Vec<Option<u32>> = if d % 2 == 0 {
            let s0 = field.inv(sigma(c0)).expect("c0 is nonzero");
            (0..q).filter(|&m| field.mul(s0, sigma(m)) == m).map(Some).collect()
        } else {
            vec![None]
        };
        for code in 0..(q as u64).pow(free as u32) {
            let low = digits64(code, q, free);
            for mid in &middles {
                let mut c = vec![0; d + 1];
                c[0] = c0;
                c[d] = 1;
                for (j, &x) in low.iter().enumerate() {
                    c[j + 1] = x;
                    c[d - j - 1] = field.mul(sigma(x), c0);
                }
                if let Some(m) = mid {
                    c[d / 2] = *m;
                }
                if field.poly_is_irreducible(&c) {
                    out.push(SelfDualClass { poly: Poly { coeffs: c } });
                }
            }
        }
    }
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|k| sigma_dual(field, &k.poly).ok().as_ref() == Some(&k.poly)));
    out
}

pub fn count_self_dual_classes(field: &Field, degree: u32) -> usize {
    enumerate_self_dual_classes(field, degree).len()
}
