//! Command-line front end: every verification is a subcommand emitting JSON
//! with sorted keys, so identical invocations are byte-identical. `--expect
//! path=value` turns any command into a self-checking assertion (exit 1 on
//! mismatch); usage problems exit 2.

use clap::{Parser, Subcommand};
use fano_core::exact::{Cyclo, Rat};
use fano_core::families::{
    d4_nonexistence_scan, family_membership, smoothness_scan, D4ScanReport,
};
use fano_core::gamma::{
    gamma_quintic, genus2_classification, harmonic_inversion_test, line_normal_form,
    normalize_line_coords, Genus2Kind, LineSelector,
};
use fano_core::group::{build_representation, enumerate_group, rep_trace_table};
use fano_core::lattice::factorize;
use fano_core::poly::{parse_poly, smooth_cubic, MPoly, Smoothness};
use fano_core::surface::{
    group_lattice_report, klein_report, lambda_survey, numeric_identities, scaled_lattice_report,
};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "fano", version, about = "Exact verification toolkit for cubic-threefold line surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Assert that the JSON value at a dotted path equals VALUE (exit 1 on mismatch)
    #[arg(long = "expect", global = true, value_name = "PATH=VALUE")]
    expect: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Census of a finite symmetry group; accepts "name" or "name:decomposition"
    Group {
        #[arg(long)]
        name: String,
    },
    /// Invariants of a named involution-class lattice (d2, d3, d5, d6, a5, l0002, l0020)
    Lattice {
        #[arg(long)]
        name: String,
    },
    /// Rank of the 55-class lattice under every rule tuple in {0,1,2}^4
    Survey,
    /// Lattice chain of the most symmetric cubic: rank, discriminants, index
    Klein,
    /// Intersection numbers of the incidence-divisor splitting
    Identities,
    /// Trivial-character eigenspace dimension and family membership
    #[command(name = "invariant-cubics")]
    InvariantCubics {
        #[arg(long)]
        name: String,
    },
    /// Smoothness verdict for a cubic, or a seeded scan of a named family
    Smooth {
        /// Polynomial text of a homogeneous cubic in x1..x5
        #[arg(long, allow_hyphen_values = true)]
        cubic: Option<String>,
        /// Family name to scan for a smooth member
        #[arg(long)]
        scan: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Normal form along a line, the plane quintic, and its classification
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        cubic: String,
        /// Line as three vanishing coordinates, e.g. "1,2,5"
        #[arg(long)]
        line: Option<String>,
        /// Line as two spanning points, rows separated by ';', e.g. "0,0,1,0,0;0,0,0,1,0"
        #[arg(long)]
        span: Option<String>,
    },
    /// Twelve-cell scan for smooth cubics with dihedral-order-8 symmetry
    #[command(name = "scan-d4")]
    ScanD4,
}

fn bigint_json(v: &BigInt) -> Value {
    match v.to_string().parse::<i64>() {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

fn factored_json(v: &BigInt) -> Value {
    let mut m = Map::new();
    for (p, e) in factorize(v) {
        m.insert(p.to_string(), json!(e));
    }
    Value::Object(m)
}

fn rat_int_json(r: &Rat) -> Result<Value, String> {
    if !r.is_integer() {
        return Err(format!("expected an integer, got {}", fano_core::exact::rat_to_text(r)));
    }
    Ok(bigint_json(r.numer()))
}

fn cyclo_int_json(c: &Cyclo) -> Result<Value, String> {
    match c.to_rat() {
        Some(r) => rat_int_json(&r),
        None => Err("value is irrational".to_string()),
    }
}

fn histogram_json(h: &std::collections::BTreeMap<u32, u64>) -> Value {
    let mut m = Map::new();
    for (k, v) in h {
        m.insert(k.to_string(), json!(v));
    }
    Value::Object(m)
}

fn run_group(name: &str) -> Result<Value, String> {
    let (base, decomp) = match name.split_once(':') {
        Some((b, d)) => (b, Some(d)),
        None => (name, None),
    };
    let group = enumerate_group(base)?;
    let invs = group.involutions();
    let mut out = Map::new();
    out.insert("group".into(), json!(base));
    out.insert("order".into(), json!(group.order()));
    out.insert("involutions".into(), json!(invs.len()));
    out.insert(
        "order_histogram".into(),
        histogram_json(&group.order_histogram()),
    );
    out.insert(
        "pair_orders".into(),
        histogram_json(&group.pair_order_histogram(&invs)),
    );
    if let Some(d) = decomp {
        let rep = build_representation(base, d)?;
        let table = rep_trace_table(&rep)?;
        let mut tm = Map::new();
        for (order, trace) in &table {
            tm.insert(order.to_string(), cyclo_int_json(trace)?);
        }
        out.insert("decomposition".into(), json!(d));
        out.insert("trace_table".into(), Value::Object(tm));
    }
    Ok(Value::Object(out))
}

fn signature_json(s: (usize, usize, usize)) -> Value {
    json!([s.0, s.1, s.2])
}

fn run_lattice(name: &str) -> Result<Value, String> {
    let mut out = Map::new();
    out.insert("name".into(), json!(name));
    match name {
        "l0002" | "l0020" => {
            let xyzw = if name == "l0002" { [0, 0, 0, 2] } else { [0, 0, 2, 0] };
            let r = scaled_lattice_report(xyzw);
            out.insert("rank".into(), json!(r.invariants.rank));
            out.insert("signature".into(), signature_json(r.invariants.signature));
            out.insert("discriminant".into(), json!(r.invariants.disc.to_string()));
            out.insert(
                "discriminant_factored".into(),
                factored_json(&r.invariants.disc),
            );
            match r.half_invariants {
                Ok(h) => {
                    out.insert(
                        "half".into(),
                        json!({
                            "rank": h.rank,
                            "signature": signature_json(h.signature),
                            "discriminant": h.disc.to_string(),
                            "discriminant_factored": factored_json(&h.disc),
                        }),
                    );
                }
                Err(e) => {
                    out.insert("half_error".into(), json!(e));
                }
            }
        }
        _ => {
            let r = group_lattice_report(name)?;
            out.insert("involutions".into(), json!(r.involutions));
            out.insert("rank".into(), json!(r.rank));
            out.insert("signature".into(), signature_json(r.signature));
            out.insert("discriminant".into(), json!(r.disc.to_string()));
            out.insert("discriminant_factored".into(), factored_json(&r.disc));
            if let Some(iso) = &r.all_ones_isotropy {
                out.insert("all_ones_isotropy".into(), bigint_json(iso));
            }
            if let Some(f) = &r.fibration {
                out.insert(
                    "fibration".into(),
                    json!({
                        "class_sizes": [f.class_sizes.0, f.class_sizes.1],
                        "f1_self": bigint_json(&f.f1_self),
                        "f2_self": bigint_json(&f.f2_self),
                        "f1_f2": bigint_json(&f.f1_f2),
                        "central_f1": bigint_json(&f.central_f1),
                        "central_f2": bigint_json(&f.central_f2),
                    }),
                );
            }
        }
    }
    Ok(Value::Object(out))
}

fn run_survey() -> Value {
    let recs: Vec<Value> = lambda_survey()
        .iter()
        .map(|r| json!({"xyzw": r.xyzw, "rank": r.rank}))
        .collect();
    Value::Array(recs)
}

fn run_klein() -> Value {
    let r = klein_report();
    json!({
        "rank": r.rank,
        "signature": signature_json(r.signature),
        "disc_lambda_factored": factored_json(&r.disc_lambda),
        "disc_ns_factored": factored_json(&r.disc_ns),
        "index": bigint_json(&r.index),
        "incidence_in_lambda": r.incidence_in_lambda,
    })
}

fn run_identities() -> Value {
    let r = numeric_identities();
    json!({
        "CD": r.cd,
        "D2": r.d2,
        "R2": r.r2,
        "CR": r.cr,
        "genusR": r.genus_r,
    })
}

fn run_invariant_cubics(name: &str) -> Result<Value, String> {
    let r = family_membership(name)?;
    Ok(json!({
        "name": r.name,
        "dimension": r.dimension,
        "family_size": r.family_size,
        "members": r.members,
        "all_members": r.all_members,
    }))
}

fn run_smooth(cubic: &Option<String>, scan: &Option<String>, seed: u64) -> Result<Value, String> {
    match (cubic, scan) {
        (Some(text), None) => {
            let f: MPoly<Rat> = parse_poly(text, 5).map_err(|e| e.to_string())?;
            if !f.is_homogeneous() || f.total_degree() != Some(3) {
                return Err("input is not a homogeneous cubic".to_string());
            }
            let verdict = match smooth_cubic(&f) {
                Smoothness::Smooth => "smooth",
                Smoothness::Singular => "singular",
            };
            Ok(json!({"verdict": verdict}))
        }
        (None, Some(family)) => {
            let r = smoothness_scan(family, seed)?;
            Ok(json!({
                "name": r.name,
                "seed": r.seed,
                "attempts": r.attempts,
                "params": r.params,
                "smooth": true,
                "cubic": r.cubic.to_text(),
            }))
        }
        _ => Err("pass exactly one of --cubic or --scan".to_string()),
    }
}

fn parse_line_spec(line: &Option<String>, span: &Option<String>) -> Result<Option<LineSelector>, String> {
    match (line, span) {
        (None, None) => Ok(None),
        (Some(_), Some(_)) => Err("pass at most one of --line or --span".to_string()),
        (Some(t), None) => {
            let idx: Vec<usize> = t
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|e| format!("bad line index '{s}': {e}")))
                .collect::<Result<_, _>>()?;
            if idx.len() != 3 {
                return Err("--line needs exactly three comma-separated indices".to_string());
            }
            Ok(Some(LineSelector::VanishingTriple([idx[0], idx[1], idx[2]])))
        }
        (None, Some(t)) => {
            let rows: Vec<Vec<Rat>> = t
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|s| {
                            s.trim()
                                .parse::<Rat>()
                                .map_err(|e| format!("bad coordinate '{s}': {e}"))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?;
            Ok(Some(LineSelector::Span(rows)))
        }
    }
}

fn run_gamma(cubic: &str, line: &Option<String>, span: &Option<String>) -> Result<Value, String> {
    let f: MPoly<Rat> = parse_poly(cubic, 5).map_err(|e| e.to_string())?;
    let normalized = match parse_line_spec(line, span)? {
        Some(spec) => normalize_line_coords(&f, &spec)?,
        None => f,
    };
    let nf = line_normal_form(&normalized)?;
    let harmonic = harmonic_inversion_test(&nf);
    let classification = if harmonic {
        match genus2_classification(&nf)? {
            Genus2Kind::SmoothGenus2 => json!("smooth_genus_2"),
            Genus2Kind::SumOfTwoElliptic => json!("sum_of_two_elliptic"),
        }
    } else {
        Value::Null
    };
    Ok(json!({
        "quintic": gamma_quintic(&nf).to_text(),
        "harmonic": harmonic,
        "classification": classification,
    }))
}

fn d4_report_json(r: &D4ScanReport) -> Value {
    let cases: Vec<Value> = r
        .cases
        .iter()
        .map(|case| {
            let cells: Vec<Value> = case
                .cells
                .iter()
                .map(|c| {
                    json!({
                        "character": c.character,
                        "chi_a": c.chi_a,
                        "chi_b": c.chi_b,
                        "dimension": c.dimension,
                        "base_singular_point_found": c.base_singular_point_found,
                        "sampled_members_all_singular": c.sampled_members_all_singular,
                        "smooth_member_found": c.smooth_member_found,
                    })
                })
                .collect();
            json!({
                "decomposition": case.decomposition,
                "trace_a": case.trace_a,
                "trace_a2": case.trace_a2,
                "cells": cells,
            })
        })
        .collect();
    let mut containment = Map::new();
    for (order, contains) in &r.containment_orders {
        containment.insert(order.to_string(), json!(contains));
    }
    json!({
        "cases": cases,
        "containment_orders": containment,
        "control_d5_smooth_found": r.control_d5_smooth_found,
    })
}

fn run(cmd: &Cmd) -> Result<Value, String> {
    Ok(match cmd {
        Cmd::Group { name } => run_group(name)?,
        Cmd::Lattice { name } => run_lattice(name)?,
        Cmd::Survey => run_survey(),
        Cmd::Klein => run_klein(),
        Cmd::Identities => run_identities(),
        Cmd::InvariantCubics { name } => run_invariant_cubics(name)?,
        Cmd::Smooth { cubic, scan, seed } => run_smooth(cubic, scan, *seed)?,
        Cmd::Gamma { cubic, line, span } => run_gamma(cubic, line, span)?,
        Cmd::ScanD4 => d4_report_json(&d4_nonexistence_scan()),
    })
}

fn lookup<'a>(value: &'a Value, path: &str) -> Option<&'a Value> {
    let mut cur = value;
    for part in path.split('.') {
        cur = match cur {
            Value::Object(m) => m.get(part)?,
            Value::Array(a) => a.get(part.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    Some(cur)
}

fn expectation_matches(found: &Value, want_text: &str) -> bool {
    if let Ok(want) = serde_json::from_str::<Value>(want_text) {
        if &want == found {
            return true;
        }
    }
    match found {
        Value::String(s) => s == want_text,
        other => other.to_string() == want_text,
    }
}

fn check_expectations(value: &Value, expects: &[String]) -> Result<(), String> {
    for e in expects {
        let (path, want) = e
            .split_once('=')
            .ok_or_else(|| format!("--expect needs PATH=VALUE, got '{e}'"))?;
        match lookup(value, path) {
            None => return Err(format!("expect failed: no value at '{path}'")),
            Some(found) => {
                if !expectation_matches(found, want) {
                    return Err(format!(
                        "expect failed at '{path}': found {found}, expected {want}"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let value = match run(&cli.command) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    };
    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    if let Err(msg) = check_expectations(&value, &cli.expect) {
        if msg.starts_with("--expect needs") {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        eprintln!("{msg}");
        std::process::exit(1);
    }
}
