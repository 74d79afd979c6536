use std::fmt::Write;

use depthzero::cuspdata::{CuspidalDatum, Verdict};
use depthzero::fixtures::{render_ired, Fixture, Row};
use depthzero::groups::GroupSpec;
use depthzero::hecke::ReducibilityReport;
use depthzero::packets::{show_ratio, CompanionCensus};
use depthzero::sweep::SweepReport;

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn verdict(g: &GroupSpec, v: &Verdict) -> String {
    let mut s = format!("# Validation: {}\n\n{g}\n\n| clause | verdict | detail |\n|---|---|---|\n", if v.valid { "valid" } else { "rejected" });
    let _ = writeln!(s, "| classes | {} | {} |", mark(v.classes.ok), v.classes.detail.as_deref().unwrap_or(""));
    let _ = writeln!(s, "| parahoric | {} | {} |", mark(v.parahoric.ok), v.parahoric.detail.as_deref().unwrap_or(""));
    for f in &v.factors {
        let detail: Vec<String> = f.violations.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "| factor {} | {} | {} |", f.factor, mark(f.ok), detail.join("; "));
    }
    s
}

pub fn report(d: &CuspidalDatum, r: &ReducibilityReport) -> String {
    let spec = d.spec();
    let mut s = format!("# {}\n\n{}\n\n## Reducibility pairs\n\n| class | f1 | f2 | {{s, s'}} |\n|---|---|---|---|\n", d.group(), d.render());
    for c in &r.per_class {
        let _ = writeln!(s, "| {} | {} | {} | {{{}, {}}} |", c.poly.render(spec), c.f2[0], c.f2[1], c.s2_pair[0], c.s2_pair[1]);
    }
    let _ = writeln!(s, "\nIRed = {}\n", render_ired(spec, &r.ired));
    let _ = writeln!(s, "## Jordan set\n\n| class | s | m | member fixed |\n|---|---|---|---|");
    for j in &r.jordan {
        let _ = writeln!(s, "| {} | {} | {} | {} |", j.poly.render(spec), j.s2, j.m, if j.member_ambiguous { "no" } else { "yes" });
    }
    let _ = writeln!(s, "\nidentity: {} = {} ({})\n", r.identity.lhs, r.identity.rhs, mark(r.identity.ok));
    let _ = writeln!(s, "## Parameter shapes ({})\n", r.shapes.len());
    for p in &r.shapes {
        let _ = writeln!(s, "- {}", p.render(spec));
    }
    for n in &r.notes {
        let _ = writeln!(s, "\nnote: {n}");
    }
    s
}

pub fn census(c: &CompanionCensus) -> String {
    let spec = c.reference.spec();
    let st = &c.stats;
    let mut s = format!("# Companions of {}\n\n{}\n\n", c.reference.render(), c.group);
    let _ = writeln!(s, "l = {}, e = {}, e0 = {}, q = {}, delta = {}\n", st.ell, st.e, st.e0, st.q, st.delta);
    let _ = writeln!(s, "| datum | swapped | representations |\n|---|---|---|");
    for x in &c.companions {
        let sw = x.epsilon.as_ref().map(|e| e.swapped.iter().map(|k| k.render(spec)).collect::<Vec<_>>().join(", ")).unwrap_or_default();
        let _ = writeln!(s, "| {} | {} | {} |", x.datum.render(), sw, x.count.total);
    }
    let _ = writeln!(s, "\ntotal {} = {} x expected {}", c.total_reps, show_ratio(c.packet_multiple), st.expected_cuspidals);
    if let Some((n, m)) = c.full_orthogonal {
        let _ = writeln!(s, "full orthogonal: {n} = {} x expected", show_ratio(m));
    }
    if let Some(cf) = &c.closed_form {
        let _ = writeln!(s, "parity rule: {}", if cf.agrees { "agrees" } else { "DISAGREES" });
    }
    for n in &c.notes {
        let _ = writeln!(s, "\nnote: {n}");
    }
    s
}

pub fn cross_form(d: &CuspidalDatum, all: &[(GroupSpec, CompanionCensus)]) -> String {
    let mut s = format!("# Forms sharing IRed with {}\n\n", d.render());
    if all.is_empty() {
        s.push_str("none\n");
    }
    for (g, c) in all {
        let _ = writeln!(s, "## {g}\n\nconstructible descriptor; {} data, {} representations\n", c.companions.len(), c.total_reps);
        for x in &c.companions {
            let _ = writeln!(s, "- {} ({})", x.datum.render(), x.count.total);
        }
        s.push('\n');
    }
    s
}

pub fn listing(g: &GroupSpec, data: &[CuspidalDatum]) -> String {
    let mut s = format!("# {g}: {} data\n\n", data.len());
    for d in data {
        let _ = writeln!(s, "- {}", d.render());
    }
    s
}

pub fn sweep(r: &SweepReport) -> String {
    let mut s = format!("# Self-check\n\n{} groups, {} data\n\n| family | data |\n|---|---|\n", r.groups, r.data);
    for (f, n) in &r.per_family {
        let _ = writeln!(s, "| {f} | {n} |");
    }
    if r.failures_by_check.is_empty() {
        s.push_str("\nno failures\n");
        return s;
    }
    s.push_str("\n| check | failing data |\n|---|---|\n");
    for (c, n) in &r.failures_by_family {
        let _ = writeln!(s, "| {c} | {n} |");
    }
    s.push_str("\n## Reproducers\n\n");
    for f in &r.examples {
        let _ = writeln!(s, "- {:?} on {}: {}", f.check, f.group, f.detail);
    }
    s
}

pub fn examples(results: &[(Fixture, Vec<Row>)]) -> String {
    let mut s = String::from("# Examples\n");
    for (f, rows) in results {
        let _ = writeln!(s, "\n## {}: {}\n\n{}\n\n| quantity | origin | expected | computed | |\n|---|---|---|---|---|", f.name, f.title, f.datum.render());
        for r in rows {
            let _ = writeln!(s, "| {} | {:?} | {} | {} | {} |", r.metric, r.origin, r.expected, r.actual, mark(r.ok));
        }
        if let Some(d) = f.divergence {
            let _ = writeln!(s, "\ndivergence: {d}");
        }
    }
    s
}
