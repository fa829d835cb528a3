//! Human-readable and JSON reports. Edge and part indices are 1-based here.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bolle::{BolleReport, EdgeVerdict, Lemma5, PipelineOutcome, TauStar, Theorem1Certificate};
use crate::verify::{Mode, Status, TilingCertificate};

/// Identifies the layout of JSON reports.
pub const SCHEMA: &str = "multitile-report/1";

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    kind: &'a str,
    result: &'a T,
}

/// `{"schema": ..., "kind": kind, "result": value}`, pretty-printed.
pub fn json_report<T: Serialize>(kind: &str, value: &T) -> String {
    let mut out = serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        kind,
        result: value,
    })
    .expect("report types serialize");
    out.push('\n');
    out
}

/// JSON report for a failed command.
pub fn error_json(code: &str, message: &str) -> String {
    json_report("error", &serde_json::json!({ "code": code, "message": message }))
}

pub fn certificate_text(c: &TilingCertificate) -> String {
    let mut out = String::new();
    match &c.status {
        Status::Verified => {
            let k = c.k.expect("verified certificates carry k");
            let _ = writeln!(out, "Verified k={k}");
        }
        Status::NotATiling {
            witness,
            closed,
            open,
            reference,
            reference_open,
        } => {
            let _ = writeln!(out, "NotATiling");
            let _ = writeln!(out, "  {witness} lies in {open} open and {closed} closed translates");
            let _ = writeln!(out, "  {reference} lies in {reference_open} open translates");
        }
        Status::Inconclusive => {
            let _ = writeln!(out, "Inconclusive");
        }
    }
    match c.mode {
        Mode::Exact => {
            let _ = writeln!(out, "mode: exact, {} cells checked", c.cells_checked);
        }
        Mode::Sampled => {
            let _ = writeln!(out, "mode: sampled, {} probes checked", c.samples_checked);
            if c.status == Status::Verified {
                let _ = writeln!(out, "note: sampled agreement is evidence, not a proof");
            }
        }
    }
    if let Some(d) = &c.fundamental_domain {
        let _ = writeln!(
            out,
            "fundamental domain: {} + s {} + t {}, 0 <= s, t <= 1",
            d.origin, d.u, d.v
        );
    }
    out
}

pub fn bolle_text(r: &BolleReport) -> String {
    let mut out = String::new();
    let verdict = if r.passed { "passed" } else { "failed" };
    let _ = writeln!(out, "Bolle criterion {verdict} for lattice {}", r.lattice);
    match &r.k {
        Some(k) => {
            let _ = writeln!(out, "k = area / det = {k}");
        }
        None => {
            let _ = writeln!(out, "area / det = {} is not a positive integer", r.density);
        }
    }
    if !r.applied_centering.is_zero() {
        let _ = writeln!(out, "polygon translated by {} to centre it", r.applied_centering);
    }
    let _ = writeln!(
        out,
        "{:>4}  {:<10}  {:<24}  {:<7}  verdict",
        "edge", "mid in L/2", "L/2 point inside", "in L"
    );
    for e in &r.per_edge {
        let witness = e
            .interior_witness
            .as_ref()
            .map_or("none".to_string(), |w| w.to_string());
        let in_lattice = match e.edge_is_lattice_vector {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        let verdict = match e.verdict {
            EdgeVerdict::Ok => "ok",
            EdgeVerdict::NoHalfLatticePoint => "no L/2 point in open edge",
            EdgeVerdict::NotLatticeVector => "edge not a lattice vector",
        };
        let mid = if e.midpoint_in_half_lattice { "yes" } else { "no" };
        let _ = writeln!(
            out,
            "{:>4}  {:<10}  {:<24}  {:<7}  {verdict}",
            e.index + 1,
            mid,
            witness,
            in_lattice
        );
    }
    out
}

fn theorem1_text(c: &Theorem1Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Lattice tiling found");
    let _ = writeln!(out, "lattice: {}", c.lattice);
    let _ = writeln!(
        out,
        "from part {} scaled by 1/{} (escalation {})",
        c.chosen_j + 1,
        c.beta,
        c.escalation
    );
    let _ = writeln!(out, "beta = {}", c.beta);
    let _ = writeln!(out, "k_lattice = {}", c.k_lattice);
    let source = match c.source_certificate.mode {
        Mode::Exact => "exact",
        Mode::Sampled => "sampled (evidence only)",
    };
    let _ = writeln!(
        out,
        "source tiling: k = {}, {source}",
        c.source_certificate.k.map_or("?".into(), |k| k.to_string())
    );
    let _ = writeln!(
        out,
        "exact re-verification of the lattice tiling: k = {}",
        c.cross_check.k.map_or("?".into(), |k| k.to_string())
    );
    out
}

pub fn pipeline_text(o: &PipelineOutcome) -> String {
    match o {
        PipelineOutcome::Certificate(c) => theorem1_text(c),
        PipelineOutcome::NoLatticeFound(attempts) => {
            let mut out = String::from("No lattice found\n");
            for a in attempts {
                let _ = writeln!(out, "part {} ({}):", a.j + 1, a.lattice);
                match &a.lemma5 {
                    Lemma5::Fails(i) => {
                        let _ = writeln!(
                            out,
                            "  edge {}: neither e nor e* is commensurate with the lattice",
                            i + 1
                        );
                    }
                    Lemma5::Beta { beta, .. } => {
                        let _ = writeln!(out, "  beta = {beta}");
                        for r in &a.bolle_reports {
                            for line in bolle_text(r).lines() {
                                let _ = writeln!(out, "  {line}");
                            }
                        }
                    }
                }
            }
            out
        }
    }
}

pub fn tau_star_text(t: &TauStar) -> String {
    match t {
        TauStar::Found { k, lattice, .. } => {
            format!("Found lattice tiling with k = {k} (an upper bound for the least lattice multiplicity)\nlattice: {lattice}\n")
        }
        TauStar::NotFoundWithinBounds => "No passing lattice within the search bounds\n".to_string(),
    }
}
