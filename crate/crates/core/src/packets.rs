//! Inversion of reducibility data, packet statistics, ε-maps and the census of
//! all cuspidal data sharing an inertial reducibility multiset.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cuspdata::{count_representations, enumerate_data_with, support_degree, CuspidalDatum, FactorSupport, RepCount};
use crate::ffpoly::{FieldSpec, Linear, SelfDualClass};
use crate::groups::{Family, GroupSpec};
use crate::hecke::{ired, jordan, per_class, SPair};

/// The unordered pair {m⁽¹⁾, m⁽²⁾} (larger first) read back from {s, s′}.
pub fn recover_m_pair(spec: FieldSpec, class: &SelfDualClass, pair: SPair) -> [u32; 2] {
    let sum = (pair.hi.twice() + pair.lo.twice()) as u32;
    let diff = (pair.hi.twice() - pair.lo.twice()) as u32;
    let div = if class.linear(spec).is_some() { 4 } else { 2 };
    let (a, b) = (sum / div, diff / div);
    [a.max(b), a.min(b)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PacketStats {
    pub ell: u32,
    pub e: u32,
    pub e0: u32,
    pub q: u32,
    pub delta: u32,
    pub expected_packet_size: u64,
    pub expected_cuspidals: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QSets {
    /// Classes where the two factors carry different m.
    pub raw: Vec<SelfDualClass>,
    /// `raw` after the family-specific removal of X∓1.
    pub q: Vec<SelfDualClass>,
    pub q_prime: Vec<SelfDualClass>,
    pub q0: Vec<SelfDualClass>,
    pub delta: u32,
}

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

pub fn q_sets(d: &CuspidalDatum) -> QSets {
    let g = d.group();
    let spec = d.spec();
    let raw: Vec<SelfDualClass> = d.domain().into_iter().filter(|k| d.m_pair(k)[0] != d.m_pair(k)[1]).collect();
    let drop = |k: &SelfDualClass| -> bool {
        let lin = k.linear(spec);
        match g.family() {
            Family::Uramified if g.dimension() % 2 == 0 => lin == Some(Linear::MinusOne),
            Family::Uramified => lin == Some(Linear::PlusOne),
            Family::SOodd => lin.is_some(),
            _ => false,
        }
    };
    let q: Vec<SelfDualClass> = raw.iter().filter(|k| !drop(k)).cloned().collect();
    let q_prime: Vec<SelfDualClass> = match g.family() {
        Family::SOeven | Family::Uunramified => q.clone(),
        _ => q.iter().filter(|k| k.linear(spec).is_none()).cloned().collect(),
    };
    let q0 = match g.family() {
        Family::Sp => Vec::new(),
        fam => q_prime
            .iter()
            .filter(|k| {
                let f = if fam == Family::Uunramified || k.degree() > 1 { 2 } else { 1 };
                let [a, b] = d.m_pair(k);
                ceil_div(a, f) % 2 != ceil_div(b, f) % 2
            })
            .cloned()
            .collect(),
    };
    let delta = match g.family() {
        Family::Sp => {
            let m = d.m_pair(&SelfDualClass::plus_one(spec));
            m.iter().filter(|&&x| x != 0).count() as u32
        }
        _ => 0,
    };
    QSets { raw, q, q_prime, q0, delta }
}

pub fn packet_stats(d: &CuspidalDatum) -> PacketStats {
    let values: Vec<i64> = per_class(d).iter().flat_map(|(_, p)| p.values()).map(|s| s.twice()).collect();
    let e = values.iter().filter(|&&t| t >= 2 && t % 2 == 0).count() as u32;
    let e0 = values.iter().any(|&t| t % 4 == 2) as u32;
    let ell = jordan(d).len() as u32;
    let qs = q_sets(d);
    PacketStats {
        ell,
        e,
        e0,
        q: qs.q.len() as u32,
        delta: qs.delta,
        expected_packet_size: 1 << ell.saturating_sub(1),
        expected_cuspidals: 1 << (e - e0),
    }
}

/// ε: Q(π) → {1, 2}, recorded as the set of classes sent to 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct EpsilonMap {
    pub swapped: Vec<SelfDualClass>,
}

fn subsets(classes: &[SelfDualClass]) -> Vec<EpsilonMap> {
    (0u64..1 << classes.len())
        .map(|mask| EpsilonMap { swapped: classes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, k)| k.clone()).collect() })
        .collect()
}

/// The ε-maps the parity rules allow.
pub fn enumerate_epsilon(d: &CuspidalDatum) -> Vec<EpsilonMap> {
    let qs = q_sets(d);
    let all = subsets(&qs.q);
    if d.group().family() == Family::Sp {
        return all;
    }
    all.into_iter().filter(|e| e.swapped.iter().filter(|k| qs.q0.contains(k)).count() % 2 == 0).collect()
}

/// m_P⁽ⁱ⁾(ε) = m_P^{(i·ε(P) mod 3)}.
pub fn swap_supports(d: &CuspidalDatum, eps: &EpsilonMap) -> [FactorSupport; 2] {
    let mut out = d.supports().clone();
    for k in &eps.swapped {
        let [a, b] = d.m_pair(k);
        out[0].set(k.clone(), b);
        out[1].set(k.clone(), a);
    }
    out
}

/// The datum of G on the parahoric whose factors have the dual dimensions `supports` need.
pub fn realize(group: GroupSpec, supports: [FactorSupport; 2]) -> Option<CuspidalDatum> {
    let spec = group.field();
    let p = group.parahorics().into_iter().find(|p| (0..2).all(|i| support_degree(spec, &p.factors[i], &supports[i]) == p.factors[i].dual_dim()))?;
    CuspidalDatum::new(group, p.n, supports).ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Companion {
    pub datum: CuspidalDatum,
    pub epsilon: Option<EpsilonMap>,
    pub count: RepCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub agrees: bool,
    pub generated: Vec<EpsilonMap>,
    pub predicted: Vec<EpsilonMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionCensus {
    pub group: GroupSpec,
    pub reference: CuspidalDatum,
    pub stats: PacketStats,
    pub companions: Vec<Companion>,
    pub total_reps: u64,
    pub packet_multiple: Ratio<u64>,
    /// Representations of the full orthogonal group and their multiple of the expected count.
    pub full_orthogonal: Option<(u64, Ratio<u64>)>,
    pub closed_form: Option<ClosedFormCheck>,
    pub notes: Vec<String>,
}

fn census(group: GroupSpec, reference: &CuspidalDatum, companions: Vec<Companion>, closed_form: Option<ClosedFormCheck>) -> CompanionCensus {
    let stats = packet_stats(reference);
    let total_reps: u64 = companions.iter().map(|c| c.count.total as u64).sum();
    let packet_multiple = Ratio::new(total_reps, stats.expected_cuspidals);
    let full_orthogonal = (group.family() == Family::SOeven).then(|| {
        let n: u64 = companions.iter().map(|c| c.count.full_orthogonal.unwrap_or(0) as u64).sum();
        (n, Ratio::new(n, stats.expected_cuspidals))
    });
    let mut notes = vec![format!(
        "expected counts assume the packet of this parameter has 2^(l-1) = {} members of which 2^(e-e0) = {} are cuspidal",
        stats.expected_packet_size, stats.expected_cuspidals
    )];
    if let Some((n, m)) = full_orthogonal {
        notes.push(format!("full orthogonal group: each extendable representation doubles, giving {n} representations, {} times the expected count", show_ratio(m)));
    }
    if let Some(c) = &closed_form {
        if !c.agrees {
            notes.push("the parity rule for epsilon-maps disagrees with direct validation on this datum".into());
        }
    }
    CompanionCensus { group, reference: reference.clone(), stats, companions, total_reps, packet_multiple, full_orthogonal, closed_form, notes }
}

pub fn show_ratio(r: Ratio<u64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// All data of G with IRed equal to that of `d`, by swapping blocks across the factors.
///
/// Every swap of the classes in Q is tried and kept when it
/// lands on a valid datum of G; the parity rule is recorded next to the result.
pub fn companions(d: &CuspidalDatum) -> CompanionCensus {
    let group = d.group();
    let qs = q_sets(d);
    let mut kept = Vec::new();
    let mut generated = Vec::new();
    for eps in subsets(&qs.q) {
        if let Some(datum) = realize(group, swap_supports(d, &eps)) {
            let count = count_representations(&datum);
            generated.push(eps.clone());
            kept.push(Companion { datum, epsilon: Some(eps), count });
        }
    }
    let mut predicted = enumerate_epsilon(d);
    generated.sort();
    predicted.sort();
    let check = ClosedFormCheck { agrees: generated == predicted, generated, predicted };
    census(group, d, kept, Some(check))
}

/// Companion censuses over every form of the same family, sign, field and dimension.
pub fn cross_form_companions(d: &CuspidalDatum) -> Vec<(GroupSpec, CompanionCensus)> {
    let g = d.group();
    let classes = d.domain();
    let target = ired(d);
    GroupSpec::forms(g.family(), g.epsilon(), g.field(), g.dimension())
        .into_par_iter()
        .filter_map(|h| {
            let found: Vec<Companion> = enumerate_data_with(h, &classes)
                .into_iter()
                .filter(|x| ired(x) == target)
                .map(|datum| {
                    let count = count_representations(&datum);
                    Companion { datum, epsilon: None, count }
                })
                .collect();
            (!found.is_empty()).then(|| (h, census(h, d, found, None)))
        })
        .collect()
}

fn ratio_json(r: Ratio<u64>) -> Value {
    json!({"num": r.numer(), "den": r.denom()})
}

impl CompanionCensus {
    pub fn to_json(&self) -> Value {
        let companions: Vec<Value> = self
            .companions
            .iter()
            .map(|c| {
                let mut v = json!({"datum": c.datum.to_json(), "count": c.count});
                if let Some(e) = &c.epsilon {
                    v["epsilon"] = json!(e);
                }
                v
            })
            .collect();
        let s = &self.stats;
        let mut v = json!({
            "group": self.group,
            "reference": self.reference.to_json(),
            "stats": {"ell": s.ell, "e": s.e, "e0": s.e0, "q": s.q, "delta": s.delta,
                      "expected_packet_size": s.expected_packet_size, "expected_cuspidals": s.expected_cuspidals},
            "companions": companions,
            "total_reps": self.total_reps,
            "packet_multiple": ratio_json(self.packet_multiple),
            "notes": self.notes,
        });
        if let Some((n, m)) = self.full_orthogonal {
            v["full_orthogonal"] = json!({"total_reps": n, "packet_multiple": ratio_json(m)});
        }
        if let Some(c) = &self.closed_form {
            v["closed_form"] = json!(c);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::Field;
    use crate::hecke::{reducibility_pair, HalfInt};

    fn f3() -> FieldSpec {
        FieldSpec::of_order(3).unwrap()
    }

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn pair(a: i64, b: i64) -> SPair {
        SPair::new(h(a), h(b))
    }

    #[test]
    fn recover_examples() {
        let s = f3();
        let p2 = SelfDualClass::from_coeffs(&Field::new(s), vec![1, 0, 1]).unwrap();
        assert_eq!(recover_m_pair(s, &SelfDualClass::minus_one(s), pair(4, 2)), [1, 0]);
        assert_eq!(recover_m_pair(s, &p2, pair(5, 2)), [3, 1]);
        assert_eq!(recover_m_pair(s, &p2, pair(0, 0)), [0, 0]);
        assert_eq!(recover_m_pair(s, &SelfDualClass::plus_one(s), pair(0, 0)), [0, 0]);
    }

    fn sp(n: u32, at: [u32; 2], mp: [u32; 2], mm: [u32; 2]) -> CuspidalDatum {
        let s = f3();
        let g = GroupSpec::new(Family::Sp, -1, n, [0, 0], s).unwrap();
        let sup = |i: usize| FactorSupport::from_pairs([(SelfDualClass::minus_one(s), mp[i]), (SelfDualClass::plus_one(s), mm[i])]);
        CuspidalDatum::new(g, at, [sup(0), sup(1)]).unwrap()
    }

    #[test]
    fn sp6_census() {
        let d = sp(3, [2, 1], [1, 0], [0, 1]);
        let qs = q_sets(&d);
        assert_eq!(qs.q.len(), 2);
        assert_eq!(qs.delta, 1);
        assert_eq!(enumerate_epsilon(&d).len(), 4);
        let c = companions(&d);
        assert_eq!(c.companions.len(), 4);
        assert_eq!(c.total_reps, 8);
        assert_eq!(c.packet_multiple, Ratio::from_integer(1));
        let mut at: Vec<[u32; 2]> = c.companions.iter().map(|x| x.datum.parahoric().n).collect();
        at.sort();
        assert_eq!(at, vec![[0, 3], [1, 2], [2, 1], [3, 0]]);
        assert!(c.closed_form.unwrap().agrees);
    }

    #[test]
    fn sp4_census() {
        let d = sp(2, [1, 1], [0, 0], [1, 1]);
        let qs = q_sets(&d);
        assert!(qs.q.is_empty());
        assert_eq!(qs.delta, 2);
        let c = companions(&d);
        assert_eq!(c.total_reps, 4);
        assert_eq!(c.stats.expected_cuspidals, 2);
    }

    #[test]
    fn swap_round_trip_preserves_pairs() {
        let d = sp(3, [2, 1], [1, 0], [0, 1]);
        for c in companions(&d).companions {
            for k in d.domain() {
                assert_eq!(reducibility_pair(&c.datum, &k), reducibility_pair(&d, &k));
            }
        }
    }
}
