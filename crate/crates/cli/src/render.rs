//! JSON values and text lines for the command outputs.
//!
//! All JSON goes through `serde_json::Value`, whose maps keep keys sorted, so
//! output is canonical and survives a parse/print cycle unchanged.

use serde_json::{json, Value};

use qplane_core::cyclotomic::CycNum;
use qplane_core::lifting::{LiftingDatum, Sector, SectorData};
use qplane_core::linalg::{Matrix, MatrixRep};
use qplane_core::pipeline::{Check, Report, SectorReport};
use qplane_core::reps::{IrrepDescriptor, Regenerated};

use crate::document::InputDocument;

pub fn input(d: &LiftingDatum) -> Value {
    serde_json::to_value(InputDocument::canonical(d)).expect("document serializes")
}

pub fn check(c: &Check) -> Value {
    match c {
        Check::Pass => json!({ "status": "pass" }),
        Check::Fail(m) => json!({ "status": "fail", "detail": m }),
        Check::Skipped(m) => json!({ "status": "skipped", "detail": m }),
    }
}

pub fn check_word(c: &Check) -> &'static str {
    match c {
        Check::Pass => "pass",
        Check::Fail(_) => "FAIL",
        Check::Skipped(_) => "skipped",
    }
}

pub fn xi_values(d: &LiftingDatum, s: &Sector) -> Value {
    let members = d.lambda().members();
    Value::Array(
        members
            .iter()
            .zip(s.xi.values())
            .map(|(g, &v)| json!({ "element": g.exponents(), "value": CycNum::zeta_pow(d.level(), v as i64).to_string() }))
            .collect(),
    )
}

fn xi_text(d: &LiftingDatum, s: &Sector) -> String {
    let parts: Vec<String> = d
        .lambda()
        .members()
        .iter()
        .zip(s.xi.values())
        .map(|(g, &v)| format!("{g}: {}", CycNum::zeta_pow(d.level(), v as i64)))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn sector_basic(d: &LiftingDatum, s: &Sector) -> Value {
    json!({
        "index": s.index,
        "xi_values": xi_values(d, s),
        "eta_canonical": s.eta_canonical.exponents(),
        "fiber_size": s.fiber.len(),
        "dim": s.dim,
    })
}

pub fn scalars(sd: &SectorData) -> Value {
    json!({
        "alpha": sd.alpha.to_string(),
        "beta": sd.beta.to_string(),
        "nu": sd.nu.to_string(),
        "nu_effective": sd.nu_effective.as_ref().map(|v| v.to_string()),
        "q": sd.q.to_string(),
        "w": sd.w.to_string(),
        "r": sd.r,
        "s": sd.s,
    })
}

pub fn irrep(desc: &IrrepDescriptor) -> Value {
    let mut v = json!({
        "case": desc.case.name(),
        "dim": desc.dim,
        "eta_exponents": desc.eta.exponents(),
    });
    if let Some(n) = desc.length {
        v["N"] = json!(n);
    }
    if let Some(p) = &desc.parameter {
        let key = if desc.case == qplane_core::lifting::Case::III { "lambda" } else { "c" };
        v[key] = json!({
            "poly": p.poly.to_string(),
            "root_index": p.index,
            "value": p.value.to_string(),
        });
    }
    v
}

fn matrix<E: Clone>(m: &Matrix<E>, show: impl Fn(&E) -> String) -> Value {
    Value::Array(
        (0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| json!(show(m.get(i, j)))).collect())).collect(),
    )
}

fn rep_value<E: Clone>(rep: &MatrixRep<E>, show: impl Fn(&E) -> String + Copy) -> Value {
    json!({
        "x": rep.xs.iter().map(|m| matrix(m, show)).collect::<Vec<_>>(),
        "h": rep.hs.iter().map(|m| matrix(m, show)).collect::<Vec<_>>(),
    })
}

pub fn module(m: &Regenerated) -> Value {
    match m {
        Regenerated::Exact(rep) => rep_value(rep, |e| e.to_string()),
        Regenerated::Numeric(rep) => rep_value(rep, |e| e.to_string()),
    }
}

pub struct SectorOptions {
    pub oracle: bool,
    pub matrices: bool,
}

pub fn sector_report(d: &LiftingDatum, s: &SectorReport, idempotents: &Check, opts: &SectorOptions) -> Value {
    let mut v = sector_basic(d, &s.sector);
    v["case_tag"] = json!(s.case.map(|c| c.name()));
    v["swapped"] = json!(s.swapped);
    v["exceptional"] = json!(s.exceptional);
    if let Some(sd) = &s.classification {
        v["scalars"] = scalars(sd);
    }
    let mut irreps: Vec<Value> = s.irreps.iter().map(irrep).collect();
    if opts.matrices {
        for (val, m) in irreps.iter_mut().zip(&s.modules) {
            val["matrices"] = module(m);
        }
    }
    v["irreps"] = Value::Array(irreps);
    if !s.polynomials.is_empty() {
        v["polynomials"] = Value::Array(
            s.polynomials
                .iter()
                .map(
                    |(eta, p, sf)| json!({ "eta_exponents": eta.exponents(), "poly": p.to_string(), "squarefree": sf }),
                )
                .collect(),
        );
    }
    v["max_residual"] = json!(s.max_residual);
    v["notes"] = json!(s.notes);
    let mut checks = serde_json::Map::new();
    for (name, c) in s.checks.all() {
        if (name == "completeness" || name == "oracle") && !opts.oracle {
            continue;
        }
        checks.insert(name.to_string(), check(c));
    }
    if opts.oracle {
        checks.insert("idempotents".into(), check(idempotents));
        match &s.oracle {
            Some(o) => {
                v["radical_dim"] = json!(o.radical_dim);
                v["simple_count"] = json!(o.simple_count);
                v["semisimple"] = json!(o.semisimple());
                v["verified"] = json!(true);
            }
            None => {
                v["radical_dim"] = Value::Null;
                v["simple_count"] = Value::Null;
                v["semisimple"] = Value::Null;
                v["verified"] = json!(false);
            }
        }
    }
    v["checks"] = Value::Object(checks);
    v
}

pub fn report(command: &str, r: &Report, opts: &SectorOptions) -> Value {
    json!({
        "command": command,
        "input": input(&r.datum),
        "dim_A": r.datum.dim(),
        "sector_dim_sum": r.sector_dim_sum,
        "idempotents": check(&r.idempotents),
        "sectors": r.sectors.iter().map(|s| sector_report(&r.datum, s, &r.idempotents, opts)).collect::<Vec<_>>(),
        "pass": !r.failed(),
    })
}

pub fn sector_header(d: &LiftingDatum, s: &Sector) -> String {
    format!("sector {}  xi = {}  dim {}  fiber {}", s.index, xi_text(d, s), s.dim, s.fiber.len())
}

pub fn irrep_text(desc: &IrrepDescriptor) -> String {
    let mut out = format!("{} dim {} eta={}", desc.case, desc.dim, desc.eta);
    if let Some(n) = desc.length {
        out.push_str(&format!(" N={n}"));
    }
    if let Some(p) = &desc.parameter {
        let name = if desc.case == qplane_core::lifting::Case::III { "lambda" } else { "c" };
        out.push_str(&format!(" {name}=root#{} of {} ≈ {}", p.index, p.poly, p.value));
    }
    out
}

pub fn report_text(r: &Report, opts: &SectorOptions) -> Vec<String> {
    let d = &r.datum;
    let mut lines = vec![format!("group {:?}, rank {}, dim A = {}", d.group().invariant_factors(), d.theta(), d.dim())];
    for s in &r.sectors {
        lines.push(sector_header(d, &s.sector));
        let case = s.case.map(|c| c.name().to_string()).unwrap_or_else(|| "-".into());
        lines.push(format!(
            "  case {case}{}{}",
            if s.swapped { " (swapped)" } else { "" },
            if s.exceptional { " exceptional" } else { "" }
        ));
        for (desc, m) in s.irreps.iter().zip(&s.modules) {
            lines.push(format!("  simple: {}", irrep_text(desc)));
            if opts.matrices {
                let rendered = module(m);
                lines.push(format!("    {rendered}"));
            }
        }
        for (eta, p, sf) in &s.polynomials {
            lines.push(format!("  P[eta={eta}] = {p}{}", if *sf { "" } else { " (repeated root)" }));
        }
        if opts.oracle {
            match &s.oracle {
                Some(o) => lines.push(format!(
                    "  oracle: radical {}, simple classes {}, semisimple {}",
                    o.radical_dim,
                    o.simple_count,
                    o.semisimple()
                )),
                None => lines.push("  oracle: unverified".into()),
            }
        }
        let checks: Vec<String> = s
            .checks
            .all()
            .iter()
            .filter(|(n, _)| opts.oracle || (*n != "completeness" && *n != "oracle"))
            .map(|(n, c)| format!("{n} {}", check_word(c)))
            .collect();
        lines.push(format!("  checks: {}", checks.join(", ")));
        for (n, c) in s.checks.all() {
            if let Check::Fail(m) = c {
                lines.push(format!("    {n}: {m}"));
            }
        }
        for note in &s.notes {
            lines.push(format!("  note: {note}"));
        }
    }
    if opts.oracle {
        lines.push(format!("idempotents: {}", check_word(&r.idempotents)));
    }
    lines.push(format!("sector dimensions sum to {} (dim A = {})", r.sector_dim_sum, d.dim()));
    lines.push(if r.failed() { "result: FAIL".into() } else { "result: PASS".into() });
    lines
}
