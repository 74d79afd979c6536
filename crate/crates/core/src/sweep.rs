//! Exhaustive checks over every group and datum within small bounds.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::cuspdata::{count_representations, enumerate_data, CuspidalDatum};
use crate::error::Result;
use crate::ffpoly::FieldSpec;
use crate::groups::{Family, GroupSpec};
use crate::hecke::{ired, reducibility_pair, verify_identity};
use crate::packets::{companions, recover_m_pair, show_ratio};

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Residue field orders; unramified unitary groups use the quadratic extension of each.
    pub qs: Vec<u32>,
    pub max_dual: u32,
    pub degree_bound: u32,
    /// Skip the companion censuses (identity and round trip only).
    pub skip_companions: bool,
    /// Tighter dual-dimension bounds for (family, q) pairs.
    pub caps: Vec<(Family, u32, u32)>,
}

impl SweepConfig {
    pub fn new(qs: Vec<u32>, max_dual: u32, degree_bound: u32) -> Self {
        SweepConfig { qs, max_dual, degree_bound, skip_companions: false, caps: Vec::new() }
    }

    fn bound(&self, family: Family, q: u32) -> u32 {
        self.caps.iter().filter(|c| c.0 == family && c.1 == q).map(|c| c.2).fold(self.max_dual, u32::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Identity,
    RoundTrip,
    RepCountRange,
    IredPreserved,
    SpClosedForm,
    ParityRule,
    CountLaw,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub check: Check,
    pub group: GroupSpec,
    pub datum: Value,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub groups: usize,
    pub data: usize,
    /// Data checked per family.
    pub per_family: BTreeMap<String, usize>,
    /// Number of data failing each check.
    pub failures_by_check: BTreeMap<String, usize>,
    /// Failing data per (check, family).
    pub failures_by_family: BTreeMap<String, usize>,
    /// Failing data per (check, family, anisotropic split, sign).
    pub failures_by_form: BTreeMap<String, usize>,
    /// Up to a few reproducers per check, in canonical order.
    pub examples: Vec<Failure>,
}

impl SweepReport {
    pub fn count(&self, check: Check) -> usize {
        self.failures_by_check.get(&name(check)).copied().unwrap_or(0)
    }
}

fn name(c: Check) -> String {
    serde_json::to_value(c).unwrap().as_str().unwrap().to_string()
}

pub fn groups(cfg: &SweepConfig) -> Result<Vec<GroupSpec>> {
    let mut out = Vec::new();
    for &q in &cfg.qs {
        let base = FieldSpec::of_order(q)?;
        let quad = FieldSpec::quadratic_over(q)?;
        for fam in Family::ALL {
            let field = if fam == Family::Uunramified { quad } else { base };
            out.extend(GroupSpec::all_up_to(fam, field, cfg.bound(fam, q)));
        }
    }
    Ok(out)
}

fn allowed_multiple(family: Family, m: Ratio<u64>) -> bool {
    let ok = [1, 2, 4].map(Ratio::from_integer).contains(&m);
    ok || (family.is_orthogonal() && m == Ratio::new(1, 2))
}

/// Every check on one datum.
pub fn check_datum(d: &CuspidalDatum, with_companions: bool) -> Vec<(Check, String)> {
    let mut bad = Vec::new();
    let spec = d.spec();
    let id = verify_identity(d);
    if !id.ok {
        bad.push((Check::Identity, format!("{} != {}", id.lhs, id.rhs)));
    }
    for k in d.domain() {
        let mut m = d.m_pair(&k);
        m.sort_by(|a, b| b.cmp(a));
        let back = recover_m_pair(spec, &k, reducibility_pair(d, &k));
        if back != m {
            bad.push((Check::RoundTrip, format!("{}: {m:?} read back as {back:?}", k.render(spec))));
        }
    }
    let total = count_representations(d).total;
    if ![1, 2, 4, 8].contains(&total) {
        bad.push((Check::RepCountRange, format!("{total} representations")));
    }
    if !with_companions {
        return bad;
    }
    let c = companions(d);
    let target = ired(d);
    if c.companions.iter().any(|x| ired(&x.datum) != target) {
        bad.push((Check::IredPreserved, "a companion changes IRed".into()));
    }
    let fam = d.group().family();
    if fam == Family::Sp {
        let want = 1u64 << (c.stats.q + c.stats.delta);
        if c.total_reps != want {
            bad.push((Check::SpClosedForm, format!("{} representations, 2^(q+delta) = {want}", c.total_reps)));
        }
    }
    if let Some(cf) = &c.closed_form {
        if !cf.agrees {
            let show = |v: &Vec<crate::packets::EpsilonMap>| {
                v.iter().map(|e| format!("{{{}}}", e.swapped.iter().map(|k| k.render(spec)).collect::<Vec<_>>().join(","))).collect::<Vec<_>>().join(" ")
            };
            bad.push((Check::ParityRule, format!("valid swaps {} vs parity rule {}", show(&cf.generated), show(&cf.predicted))));
        }
    }
    if !allowed_multiple(fam, c.packet_multiple) {
        bad.push((Check::CountLaw, format!("{} representations = {} x expected", c.total_reps, show_ratio(c.packet_multiple))));
    }
    bad
}

const KEEP: usize = 3;

pub fn form_key(check: Check, g: &GroupSpec) -> String {
    format!("{}/{:?} aniso {:?} eps {}", name(check), g.family(), g.aniso(), g.epsilon())
}

pub fn run(cfg: &SweepConfig) -> Result<SweepReport> {
    let groups = groups(cfg)?;
    let mut report = SweepReport { groups: groups.len(), ..Default::default() };
    for g in &groups {
        let data = enumerate_data(*g, cfg.degree_bound);
        let results: Vec<Vec<(Check, String)>> = data.par_iter().map(|d| check_datum(d, !cfg.skip_companions)).collect();
        report.data += data.len();
        *report.per_family.entry(format!("{:?}", g.family())).or_default() += data.len();
        for (d, bad) in data.iter().zip(results) {
            let mut seen = Vec::new();
            for (check, detail) in bad {
                if seen.contains(&check) {
                    continue;
                }
                seen.push(check);
                *report.failures_by_check.entry(name(check)).or_default() += 1;
                *report.failures_by_family.entry(format!("{}/{:?}", name(check), g.family())).or_default() += 1;
                *report.failures_by_form.entry(form_key(check, g)).or_default() += 1;
                if report.examples.iter().filter(|f| f.check == check).count() < KEEP {
                    report.examples.push(Failure { check, group: *g, datum: d.to_json(), detail: format!("{}: {detail}", d.render()) });
                }
            }
        }
    }
    Ok(report)
}
