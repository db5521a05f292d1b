//! Output in human, CSV and JSON-lines form.
//!
//! graph6 never contains commas or quotes, so CSV fields are written bare.
//! Roots are printed 1-based everywhere.

use std::io::{self, Write};

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::json;

use walkdet_core::search::{FamilyStage, SearchResult, SweepReport};
use walkdet_core::{emit_graph6, f_certificate, Graph, PreserverReport, WalkReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Json,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn h_text(h: &Option<walkdet_core::IntPoly>) -> String {
    h.as_ref().map_or_else(|| "not computed".to_string(), |p| p.display_with("λ"))
}

pub fn walk_report(out: &mut impl Write, format: Format, r: &WalkReport) -> io::Result<()> {
    match format {
        Format::Human => {
            writeln!(out, "kind            {}", r.kind)?;
            if r.scale != BigInt::from(1) {
                writeln!(out, "                (determinants of {}·M, which has integer entries)", r.scale)?;
            }
            writeln!(out, "n, m, root      {}, {}, {}", r.n, r.m, r.root + 1)?;
            writeln!(out, "det W(G∘H)      {}", r.lhs)?;
            writeln!(out, "Res             {}", r.res_factor)?;
            writeln!(out, "h(λ) = {}", r.h.display_with("λ"))?;
            writeln!(out, "det h(M(G))     {}", r.det_h_of_mg)?;
            writeln!(out, "det W(G)        {}", r.det_w_of_g)?;
            writeln!(out, "|rhs|           {}", r.rhs_abs)?;
            writeln!(out, "verdict         {}", if r.verdict { "equal up to sign" } else { "MISMATCH" })?;
        }
        Format::Csv => {
            writeln!(out, "kind,n,m,root,lhs,res,h,det_h_of_mg,det_w_of_g,rhs_abs,verdict")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.kind,
                r.n,
                r.m,
                r.root + 1,
                r.lhs,
                r.res_factor,
                r.h.display_with("x"),
                r.det_h_of_mg,
                r.det_w_of_g,
                r.rhs_abs,
                r.verdict
            )?;
        }
        Format::Json => {
            let mut v = serde_json::to_value(r).map_err(io::Error::other)?;
            v["root"] = json!(r.root + 1);
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

pub fn preserver_report(out: &mut impl Write, format: Format, graph6: &str, r: &PreserverReport) -> io::Result<()> {
    match format {
        Format::Human => {
            writeln!(out, "H = {graph6}, root {}, m = {}", r.root + 1, r.order)?;
            writeln!(out, "det A(H) = {}, det A^(v)(H) = {}  [{}]", r.det_a, r.det_a_deleted, mark(r.cond_dets))?;
            writeln!(out, "Res = {}  [{}]", opt(&r.resultant), mark(r.cond_res))?;
            writeln!(out, "h(λ) = {}  [{}]", h_text(&r.h), mark(r.monomial_exponent.is_some()))?;
            if r.is_preserver {
                let k = r.monomial_exponent.unwrap_or_default();
                let conj = if r.conjecture_ok == Some(true) {
                    "k = ⌊m/2⌋"
                } else {
                    "k ≠ ⌊m/2⌋, conjecture counterexample"
                };
                writeln!(out, "F-preserver, k = {k} ({conj})")?;
            } else {
                writeln!(out, "not shown to be an F-preserver")?;
            }
        }
        Format::Csv => {
            search_header(out, format, false)?;
            preserver_csv(out, graph6, r)?;
            writeln!(out)?;
        }
        Format::Json => writeln!(out, "{}", preserver_json(graph6, r, None))?,
    }
    Ok(())
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "fails"
    }
}

fn preserver_csv(out: &mut impl Write, graph6: &str, r: &PreserverReport) -> io::Result<()> {
    write!(
        out,
        "{},{},{},{},{},{},{},{},{}",
        graph6,
        r.root + 1,
        r.order,
        opt(&r.resultant),
        opt(&r.monomial_exponent),
        r.det_a,
        r.det_a_deleted,
        r.is_preserver,
        opt(&r.conjecture_ok)
    )
}

fn preserver_json(graph6: &str, r: &PreserverReport, orbit_size: Option<usize>) -> serde_json::Value {
    let mut v = json!({
        "graph6": graph6,
        "root": r.root + 1,
        "m": r.order,
        "res": r.resultant.as_ref().map(BigInt::to_string),
        "k": r.monomial_exponent,
        "detA_H": r.det_a.to_string(),
        "detA_Hv": r.det_a_deleted.to_string(),
        "h": r.h.as_ref().map(|p| p.display_with("x")),
        "is_preserver": r.is_preserver,
        "conjecture_ok": r.conjecture_ok,
    });
    if let Some(size) = orbit_size {
        v["orbit_size"] = json!(size);
    }
    v
}

pub fn search_header(out: &mut impl Write, format: Format, probing: bool) -> io::Result<()> {
    if format == Format::Csv {
        write!(out, "graph6,root,m,res,k,detA_H,detA_Hv,is_preserver,conjecture_ok")?;
        writeln!(out, "{}", if probing { ",probe_preserved" } else { "" })?;
    }
    Ok(())
}

pub fn search_row(out: &mut impl Write, format: Format, probing: bool, r: &SearchResult) -> io::Result<()> {
    let p = &r.report;
    match format {
        Format::Human => {
            let verdict = match (p.is_preserver, p.conjecture_ok, r.probe_preserved) {
                (true, Some(false), _) => "preserver, COUNTEREXAMPLE to k = ⌊m/2⌋",
                (true, _, _) => "preserver",
                (false, _, Some(true)) => "rejected, but every probe product stayed in F",
                (false, _, _) => "rejected",
            };
            writeln!(out, "{} root {}: h(λ) = {}, {verdict}", r.graph6, r.root + 1, h_text(&p.h))?;
        }
        Format::Csv => {
            preserver_csv(out, &r.graph6, p)?;
            if probing {
                write!(out, ",{}", opt(&r.probe_preserved))?;
            }
            writeln!(out)?;
        }
        Format::Json => {
            let mut v = preserver_json(&r.graph6, p, Some(r.orbit_size));
            if probing {
                v["probe_preserved"] = json!(r.probe_preserved);
            }
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

pub fn members(out: &mut impl Write, format: Format, graphs: &[Graph]) -> io::Result<()> {
    if format == Format::Csv {
        writeln!(out, "graph6,n,detA,detW")?;
    }
    for g in graphs {
        let c = f_certificate(g);
        let g6 = emit_graph6(g);
        match format {
            Format::Human => writeln!(out, "{g6}  n = {}, det A = {}, det W = {}", c.order, c.det_a, c.det_w)?,
            Format::Csv => writeln!(out, "{g6},{},{},{}", c.order, c.det_a, c.det_w)?,
            Format::Json => writeln!(
                out,
                "{}",
                json!({"graph6": g6, "n": c.order, "detA": c.det_a.to_string(), "detW": c.det_w.to_string()})
            )?,
        }
    }
    Ok(())
}

pub fn family_header(out: &mut impl Write, format: Format) -> io::Result<()> {
    if format == Format::Csv {
        writeln!(out, "step,n,applied,root,detA,detW,member,graph6")?;
    }
    Ok(())
}

pub fn family_stage(out: &mut impl Write, format: Format, s: &FamilyStage) -> io::Result<()> {
    let c = &s.certificate;
    let (applied, root) = match &s.applied {
        Some((g6, r)) => (g6.as_str(), (r + 1).to_string()),
        None => ("", String::new()),
    };
    match format {
        Format::Human => {
            let via = if applied.is_empty() { "seed".to_string() } else { format!("∘ {applied} rooted at {root}") };
            writeln!(out, "step {}: n = {}, {via}, det A = {}, det W = {}", s.step, s.order, c.det_a, c.det_w)?;
        }
        Format::Csv => {
            writeln!(out, "{},{},{applied},{root},{},{},{},{}", s.step, s.order, c.det_a, c.det_w, c.member, s.graph6)?
        }
        Format::Json => {
            let mut v = serde_json::to_value(s).map_err(io::Error::other)?;
            v["applied"] = s.applied.as_ref().map_or(json!(null), |(g6, r)| json!({"graph6": g6, "root": r + 1}));
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

pub fn sweep(out: &mut impl Write, format: Format, r: &SweepReport) -> io::Result<()> {
    match format {
        Format::Human => {
            writeln!(out, "m = {}, comparing against |det A(G)|^{}·|det W(G)|^{}", r.order, r.exponent, r.order)?;
            for row in &r.rows {
                let tag = if row.equal { "" } else { "  DIFFERS" };
                writeln!(out, "{}  {} vs {}{tag}", row.graph6, row.lhs_abs, row.rhs_abs)?;
            }
        }
        Format::Csv => {
            writeln!(out, "graph6,lhs_abs,rhs_abs,equal")?;
            for row in &r.rows {
                writeln!(out, "{},{},{},{}", row.graph6, row.lhs_abs, row.rhs_abs, row.equal)?;
            }
        }
        Format::Json => {
            for row in &r.rows {
                writeln!(out, "{}", serde_json::to_value(row).map_err(io::Error::other)?)?;
            }
        }
    }
    Ok(())
}
