//! Command-line front end for the depth-zero engine.

mod markdown;

use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use depthzero::cuspdata::{enumerate_data, validate_json, CuspidalDatum};
use depthzero::ffpoly::FieldSpec;
use depthzero::fixtures;
use depthzero::groups::{Family, GroupSpec};
use depthzero::hecke::describe;
use depthzero::packets::{companions, cross_form_companions};
use depthzero::sweep::{self, SweepConfig};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "depthzero", version, about = "Reducibility points and packet censuses for depth-zero cuspidal data")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a datum clause by clause
    Validate(Input),
    /// Hecke parameters, reducibility points, IRed, Jordan set and parameter shapes
    Describe(Input),
    /// Companion census on the same group
    Packet(Input),
    /// Companion censuses on every form of the same family and dimension
    Crossform(Input),
    /// List every cuspidal datum of a group
    Enumerate {
        /// GroupSpec as a path, inline JSON or `-` for stdin; `{"group": ...}` is also accepted
        group: String,
        /// Largest degree of a non-linear class
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Exhaustive identity, round-trip and closed-form checks within bounds
    Selfcheck(Bounds),
    /// Recompute the built-in examples and compare with stored expectations
    Examples {
        /// Only this example
        #[arg(long)]
        fixture: Option<String>,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// `{"group": ..., "datum": ...}` as a path, inline JSON or `-` for stdin
    input: Option<String>,
    /// Use a built-in example instead
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
}

#[derive(Args, Debug)]
struct Bounds {
    /// Residue field orders (odd prime powers); repeat for several
    #[arg(long = "q", default_values_t = [3])]
    q: Vec<u32>,
    /// Largest dual dimension N
    #[arg(long, default_value_t = 9)]
    dualdim: u32,
    /// Largest degree of a non-linear class
    #[arg(long, default_value_t = 2)]
    degree: u32,
    /// Restrict to these families
    #[arg(long, value_enum)]
    family: Vec<FamilyArg>,
    /// Skip companion censuses
    #[arg(long)]
    no_census: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Sp,
    SoOdd,
    SoEven,
    UUnramified,
    URamified,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Sp => Family::Sp,
            FamilyArg::SoOdd => Family::SOodd,
            FamilyArg::SoEven => Family::SOeven,
            FamilyArg::UUnramified => Family::Uunramified,
            FamilyArg::URamified => Family::Uramified,
        }
    }
}

enum Fail {
    /// Exit 2.
    Usage(String),
    /// Exit 1, after printing the report.
    Rejected(String),
}

fn usage(e: impl ToString) -> Fail {
    Fail::Usage(e.to_string())
}

fn engine(e: depthzero::Error) -> Fail {
    if e.is_malformed() {
        Fail::Usage(e.to_string())
    } else {
        Fail::Rejected(e.to_string())
    }
}

fn read_json(src: &str) -> Result<Value, Fail> {
    let text = if src == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(usage)?;
        buf
    } else if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        fs::read_to_string(src).map_err(|e| usage(format!("{src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("malformed JSON: {e}")))
}

fn read_input(input: &Input) -> Result<(GroupSpec, Value), Fail> {
    if let Some(name) = &input.fixture {
        let f = fixtures::fixture(name).ok_or_else(|| usage(format!("unknown fixture {name}; known: {}", fixtures::NAMES.join(", "))))?;
        return Ok((f.datum.group(), f.datum.to_json()));
    }
    let src = input.input.as_deref().ok_or_else(|| usage("an input or --fixture is required"))?;
    let v = read_json(src)?;
    let group = v.get("group").ok_or_else(|| usage("input has no \"group\""))?;
    let datum = v.get("datum").ok_or_else(|| usage("input has no \"datum\""))?;
    Ok((GroupSpec::from_json(group).map_err(engine)?, datum.clone()))
}

fn read_datum(input: &Input) -> Result<CuspidalDatum, Fail> {
    let (g, v) = read_input(input)?;
    CuspidalDatum::from_json(g, &v).map_err(engine)
}

fn emit(format: Format, value: &Value, md: impl FnOnce() -> String) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Md => md(),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<(), Fail> {
    let fmt = cli.format;
    match cli.command {
        Command::Validate(input) => {
            let (g, v) = read_input(&input)?;
            let verdict = validate_json(g, &v).map_err(engine)?;
            emit(fmt, &json!(verdict), || markdown::verdict(&g, &verdict));
            if !verdict.valid {
                return Err(Fail::Rejected("datum rejected".into()));
            }
        }
        Command::Describe(input) => {
            let d = read_datum(&input)?;
            let r = describe(&d);
            let v = json!({"group": d.group(), "datum": d.to_json(), "report": r});
            emit(fmt, &v, || markdown::report(&d, &r));
        }
        Command::Packet(input) => {
            let d = read_datum(&input)?;
            let c = companions(&d);
            emit(fmt, &c.to_json(), || markdown::census(&c));
        }
        Command::Crossform(input) => {
            let d = read_datum(&input)?;
            let all = cross_form_companions(&d);
            let v: Vec<Value> = all.iter().map(|(g, c)| json!({"group": g, "census": c.to_json()})).collect();
            emit(fmt, &json!(v), || markdown::cross_form(&d, &all));
        }
        Command::Enumerate { group, degree } => {
            let v = read_json(&group)?;
            let g = GroupSpec::from_json(v.get("group").unwrap_or(&v)).map_err(engine)?;
            let data = enumerate_data(g, degree);
            let list: Vec<Value> = data.iter().map(|d| d.to_json()).collect();
            emit(fmt, &json!({"group": g, "count": data.len(), "data": list}), || markdown::listing(&g, &data));
        }
        Command::Selfcheck(b) => {
            for &q in &b.q {
                if q % 2 == 0 {
                    return Err(usage(format!("--q {q}: residue characteristic must be odd")));
                }
                FieldSpec::of_order(q).map_err(usage)?;
            }
            if b.dualdim == 0 || b.degree == 0 {
                return Err(usage("bounds must be positive"));
            }
            let mut cfg = SweepConfig::new(b.q.clone(), b.dualdim, b.degree);
            cfg.skip_companions = b.no_census;
            if !b.family.is_empty() {
                let keep: Vec<Family> = b.family.iter().map(|&f| f.into()).collect();
                for fam in Family::ALL.into_iter().filter(|f| !keep.contains(f)) {
                    for &q in &b.q {
                        cfg.caps.push((fam, q, 0));
                    }
                }
            }
            let report = sweep::run(&cfg).map_err(engine)?;
            emit(fmt, &json!(report), || markdown::sweep(&report));
            if !report.failures_by_check.is_empty() {
                return Err(Fail::Rejected(format!("{} checks failed", report.failures_by_check.len())));
            }
        }
        Command::Examples { fixture } => {
            let chosen = match fixture {
                Some(name) => vec![fixtures::fixture(&name).ok_or_else(|| usage(format!("unknown fixture {name}")))?],
                None => fixtures::all(),
            };
            let results: Vec<(fixtures::Fixture, Vec<fixtures::Row>)> = chosen.into_iter().map(|f| {
                let rows = f.verify();
                (f, rows)
            }).collect();
            let v: Vec<Value> = results
                .iter()
                .map(|(f, rows)| json!({"name": f.name, "title": f.title, "input": f.to_json(), "divergence": f.divergence, "rows": rows}))
                .collect();
            emit(fmt, &json!(v), || markdown::examples(&results));
            let bad = results.iter().flat_map(|(_, r)| r).filter(|r| !r.ok).count();
            if bad > 0 {
                return Err(Fail::Rejected(format!("{bad} expectations differ")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Rejected(msg)) => {
            eprintln!("depthzero: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("depthzero: {msg}");
            ExitCode::from(2)
        }
    }
}
