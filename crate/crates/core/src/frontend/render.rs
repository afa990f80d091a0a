//! Text and JSON renderings of results.

use std::fmt::Write;

use serde_json::json;

use crate::analyze::{AnalysisReport, Status, Verdict};
use crate::coeffs::HilbertSeries;
use crate::dg::{BigradedHomology, FullHomology};
use crate::ganea::GaneaState;
use crate::present::PresentedAlgebra;
use crate::schreier::ReducedGenerator;

pub fn status_text(v: &Verdict) -> String {
    match &v.status {
        Status::CertifiedUpToCutoff { reason: None } => "CertifiedUpToCutoff".into(),
        Status::CertifiedUpToCutoff { reason: Some(r) } => format!("CertifiedUpToCutoff ({r:?})"),
        Status::ConsistentUpToCutoff => "ConsistentUpToCutoff".into(),
        Status::RefutedAtDim { dim, witness } => format!("RefutedAtDim {dim}: {witness}"),
        Status::ConditionalOnPrimes { primes, reason } => {
            let list: Vec<String> = primes.iter().map(u64::to_string).collect();
            match reason {
                Some(r) => format!("ConditionalOnPrimes [{}] ({r:?})", list.join(",")),
                None => format!("ConditionalOnPrimes [{}]", list.join(",")),
            }
        }
        Status::Inapplicable { dim, witness } => format!("Inapplicable at dim {dim}: {witness}"),
    }
}

pub fn series_text(r: &AnalysisReport) -> String {
    let s = &r.series;
    let mut out = String::new();
    for (label, h) in [
        ("UL₀(z)", &s.ul0),
        ("U(HẼL)₀(z)", &s.uhel0),
        ("(HẼL)₁(z)", &s.hel1),
        ("H A(z)⁻¹", &s.ha_inv),
        ("K′(z)", &s.kprime),
    ] {
        writeln!(out, "{label:<12} = {h}").unwrap();
    }
    out
}

pub fn series_json(r: &AnalysisReport) -> String {
    serde_json::to_string_pretty(&json!({ "cutoff": r.cutoff, "series": r.series })).expect("series serialize")
}

pub fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    write!(out, "ring {}, cutoff {}", r.ring, r.cutoff).unwrap();
    if !r.primes.is_empty() {
        let list: Vec<String> = r.primes.iter().map(u64::to_string).collect();
        write!(out, ", primes {}", list.join(",")).unwrap();
    }
    out.push('\n');
    writeln!(out, "free:       {}", status_text(&r.verdicts.free)).unwrap();
    writeln!(out, "inert:      {}", status_text(&r.verdicts.inert)).unwrap();
    writeln!(out, "semi-inert: {}", status_text(&r.verdicts.semi_inert)).unwrap();
    out.push_str(&series_text(r));
    if !r.witnesses.is_empty() {
        out.push_str("module generators of (HẼL)₁:\n");
        for w in &r.witnesses {
            writeln!(out, "  dim {}: {}", w.dim, w.element).unwrap();
        }
    }
    if !r.structure.is_empty() {
        out.push_str("structure:\n");
        for s in &r.structure {
            writeln!(out, "  {s}").unwrap();
        }
    }
    if !r.notes.is_empty() {
        out.push_str("notes:\n");
        for s in &r.notes {
            writeln!(out, "  {s}").unwrap();
        }
    }
    out
}

fn deg1_classes(alg: &PresentedAlgebra, h: &BigradedHomology) -> Vec<(u32, String)> {
    let mut out = Vec::new();
    for n in 0..=h.cutoff {
        for r in &h.component(n, 1).representatives {
            out.push((n, alg.display_vec(n, 1, r)));
        }
    }
    out
}

pub fn homology_text(alg: &PresentedAlgebra, h: &BigradedHomology) -> String {
    let mut out = String::new();
    writeln!(out, "(HẼL)₀(z) = {}", h.series(0)).unwrap();
    writeln!(out, "(HẼL)₁(z) = {}", h.series(1)).unwrap();
    let classes = deg1_classes(alg, h);
    if !classes.is_empty() {
        out.push_str("(HẼL)₁ classes:\n");
        for (n, e) in classes {
            writeln!(out, "  dim {n}: {e}").unwrap();
        }
    }
    out
}

pub fn homology_json(alg: &PresentedAlgebra, h: &BigradedHomology) -> String {
    let classes: Vec<_> = deg1_classes(alg, h).into_iter().map(|(n, e)| json!({ "dim": n, "element": e })).collect();
    serde_json::to_string_pretty(&json!({
        "HeL0": h.series(0),
        "HeL1": h.series(1),
        "HeL1_classes": classes,
    }))
    .expect("homology serializes")
}

pub fn full_homology_text(full: &FullHomology) -> String {
    let mut out = String::new();
    writeln!(out, "H(UẼL)(z) = {}", full.series()).unwrap();
    for (n, row) in full.dims.iter().enumerate() {
        let cells: Vec<String> = row.iter().filter(|t| t.1 > 0).map(|&(k, c, h)| format!("k={k}: {h}/{c}")).collect();
        if !cells.is_empty() {
            writeln!(out, "  dim {n}: {}", cells.join(", ")).unwrap();
        }
    }
    out
}

pub fn full_homology_json(full: &FullHomology) -> String {
    let rows: Vec<_> = full
        .dims
        .iter()
        .enumerate()
        .map(|(n, row)| {
            let cells: Vec<_> =
                row.iter().map(|&(k, c, h)| json!({ "degree": k, "chains": c, "homology": h })).collect();
            json!({ "dim": n, "degrees": cells })
        })
        .collect();
    serde_json::to_string_pretty(&json!({ "series": full.series(), "dims": rows })).expect("homology serializes")
}

/// One JSON object per line.
pub fn ganea_json_lines(states: &[GaneaState]) -> String {
    states.iter().map(|s| serde_json::to_string(s).expect("state serializes") + "\n").collect()
}

pub fn ganea_text(states: &[GaneaState]) -> String {
    let mut out = String::new();
    for s in states {
        writeln!(out, "step {}", s.step).unwrap();
        writeln!(out, "  agreement dim: {}", s.agreement_dim).unwrap();
        writeln!(out, "  free:          {}", status_text(&s.free)).unwrap();
        writeln!(out, "  semi-inert:    {}", s.semi_inert).unwrap();
        writeln!(out, "  split SES:     {}", if s.split_ses { "holds" } else { "fails" }).unwrap();
        writeln!(out, "  (HL)₀(z) = {}", s.target).unwrap();
        writeln!(out, "  (HL)₁(z) = {}", s.hel1).unwrap();
        writeln!(out, "  UL′(z)   = {}", s.series).unwrap();
        for n in &s.notes {
            writeln!(out, "  note: {n}").unwrap();
        }
    }
    out
}

pub fn subalgebra_text(gens: &[ReducedGenerator], dims: &HilbertSeries, verdict: &Verdict) -> String {
    let mut out = String::new();
    writeln!(out, "J(z) = {dims}").unwrap();
    out.push_str("reduced generators:\n");
    for g in gens {
        writeln!(out, "  dim {} filtration {}: {}", g.dim, g.filtration, g.display).unwrap();
    }
    writeln!(out, "free: {}", status_text(verdict)).unwrap();
    out
}

pub fn subalgebra_json(gens: &[ReducedGenerator], dims: &HilbertSeries, verdict: &Verdict) -> String {
    let list: Vec<_> =
        gens.iter().map(|g| json!({ "dim": g.dim, "filtration": g.filtration, "element": g.display })).collect();
    serde_json::to_string_pretty(&json!({ "dims": dims, "generators": list, "free": verdict }))
        .expect("subalgebra serializes")
}
