//! Brute-force cross-checks of support enumeration, companion search and parameter shapes.

use std::collections::BTreeSet;

use depthzero::cuspdata::{classes_up_to, domain, enumerate_data, enumerate_supports, validate_support, CuspidalDatum, FactorSupport};
use depthzero::ffpoly::{Field, FieldSpec, SelfDualClass};
use depthzero::groups::{Family, GroupSpec};
use depthzero::hecke::{describe, ired};
use depthzero::packets::companions;
use depthzero::sweep::{groups, SweepConfig};

fn small_groups() -> Vec<GroupSpec> {
    groups(&SweepConfig::new(vec![3], 7, 2)).unwrap()
}

/// Every map from `keys` into 0..=bound, as supports.
fn boxes(keys: &[SelfDualClass], bound: u32) -> Vec<FactorSupport> {
    let mut out = vec![FactorSupport::new()];
    for k in keys {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..=bound).map(move |m| {
                    let mut t = s.clone();
                    t.set(k.clone(), m);
                    t
                })
            })
            .collect();
    }
    out
}

#[test]
fn support_enumeration_matches_box_search() {
    for g in small_groups() {
        let spec = g.field();
        let classes = classes_up_to(&Field::new(spec), 2);
        let keys = domain(spec, classes.iter());
        let candidates = boxes(&keys, 4);
        for p in g.parahorics() {
            for f in &p.factors {
                let want: BTreeSet<FactorSupport> = candidates.iter().filter(|s| validate_support(spec, f, s).is_ok()).cloned().collect();
                let got: BTreeSet<FactorSupport> = enumerate_supports(spec, f, &classes).into_iter().collect();
                assert_eq!(got, want, "{g} {f}");
            }
        }
    }
}

#[test]
fn sp2_has_the_series_of_minus_identity() {
    let s = FieldSpec::of_order(3).unwrap();
    let g = GroupSpec::new(Family::Sp, -1, 1, [0, 0], s).unwrap();
    let d = CuspidalDatum::new(g, [1, 0], [FactorSupport::from_pairs([(SelfDualClass::plus_one(s), 1)]), FactorSupport::new()]).unwrap();
    assert!(enumerate_data(g, 2).contains(&d));
}

#[test]
fn companions_match_ired_search() {
    for g in small_groups() {
        let all = enumerate_data(g, 2);
        for d in &all {
            let target = ired(d);
            let want: BTreeSet<&CuspidalDatum> = all.iter().filter(|x| ired(x) == target).collect();
            let census = companions(d);
            let got: BTreeSet<&CuspidalDatum> = census.companions.iter().map(|c| &c.datum).collect();
            assert_eq!(got, want, "{g} {}", d.render());
        }
    }
}

#[test]
fn shapes_have_the_dual_dimension() {
    for g in small_groups() {
        for d in enumerate_data(g, 2) {
            let r = describe(&d);
            assert!(!r.shapes.is_empty(), "{}", d.render());
            for s in &r.shapes {
                let dim: u32 = s.summands.iter().map(|x| x.m * x.poly.degree()).sum();
                assert_eq!(dim, g.dual_dimension(), "{}", d.render());
            }
        }
    }
}
