//! Rendering of reports as `key: value` text or as a JSON tree.
//!
//! Text reports always end with a single `result: ...` line.

use std::fmt::Write as _;

use serde::Serialize;

use crate::search::SearchOutcome;
use crate::tiling::{AuditReport, NonexistenceCertificate, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Tree,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

fn points<'a>(pts: impl IntoIterator<Item = &'a crate::geometry::Point>) -> String {
    let s: Vec<String> = pts.into_iter().map(|p| p.to_string()).collect();
    if s.is_empty() {
        "none".into()
    } else {
        s.join(" ")
    }
}

/// Body lines of a verification report, without the summary line.
pub fn verification_lines(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n: {}", r.n);
    let _ = writeln!(out, "p: {}", r.p);
    let _ = writeln!(out, "codewords: {}", r.codewords);
    let _ = writeln!(out, "shape_size: {}", r.shape_size);
    let _ = writeln!(out, "cells_total: {}", r.cells_total);
    let _ = writeln!(out, "multiply_covered: {}", r.multiply_covered);
    let _ = writeln!(out, "uncovered: {}", r.uncovered);
    let _ = writeln!(out, "is_tiling: {}", r.is_tiling);
    match &r.first_witness {
        Some(w) => {
            let _ = writeln!(out, "witness_cell: {}", w.cell);
            let _ = writeln!(out, "witness_index: {}", w.cell_index);
            let _ = writeln!(out, "witness_covering: {}", points(&w.covering));
        }
        None => {
            let _ = writeln!(out, "witness_cell: none");
        }
    }
    out
}

pub fn verification_summary(r: &VerificationReport) -> String {
    if r.is_tiling {
        format!("result: tiling, {} cells covered exactly once", r.cells_total)
    } else {
        let w = r.first_witness.as_ref().expect("failing report has a witness");
        format!(
            "result: not a tiling, cell {} covered {} times",
            w.cell,
            w.covering.len()
        )
    }
}

pub fn min_distance_line(r: &VerificationReport) -> String {
    format!("min_cross_distance: {}\n", opt(&r.min_cross_distance))
}

pub fn audit_lines(a: &AuditReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "audit_profile: {}", a.profile);
    let f1: Vec<String> = a.f1.iter().map(|(r, s)| format!("({r},{s})")).collect();
    let f2: Vec<String> = a
        .f2
        .iter()
        .map(|t| format!("{{{},{},{}}}", t[0], t[1], t[2]))
        .collect();
    let _ = writeln!(out, "audit_f1: {}", if f1.is_empty() { "none".into() } else { f1.join(" ") });
    let _ = writeln!(out, "audit_f2: {}", if f2.is_empty() { "none".into() } else { f2.join(" ") });
    let _ = writeln!(out, "audit_f2_size: {}", a.f2.len());
    let _ = writeln!(out, "audit_spencer_bound: {}", a.spencer_bound);
    let _ = writeln!(out, "audit_periodic_4: {}", opt(&a.periodic_4));
    let _ = writeln!(out, "audit_periodic_12: {}", opt(&a.periodic_12));
    for c in &a.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        if c.detail.is_empty() {
            let _ = writeln!(out, "check {}: {status}", c.name);
        } else {
            let _ = writeln!(out, "check {}: {status} ({})", c.name, c.detail);
        }
    }
    let _ = writeln!(out, "audit_passed: {}", a.passed());
    out
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    verification: &'a VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<&'a AuditReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit_error: Option<&'a str>,
    result: String,
}

/// Full `verify` output: report, optional audit, summary line.
pub fn render_verification(
    r: &VerificationReport,
    audit: Option<Result<&AuditReport, &str>>,
    with_min_dist: bool,
    format: ReportFormat,
) -> String {
    let summary = verification_summary(r);
    match format {
        ReportFormat::Text => {
            let mut out = verification_lines(r);
            if with_min_dist {
                out.push_str(&min_distance_line(r));
            }
            match audit {
                Some(Ok(a)) => out.push_str(&audit_lines(a)),
                Some(Err(e)) => {
                    let _ = writeln!(out, "audit: skipped ({e})");
                }
                None => {}
            }
            out.push_str(&summary);
            out.push('\n');
            out
        }
        ReportFormat::Tree => {
            let mut v = r.clone();
            if !with_min_dist {
                v.min_cross_distance = None;
            }
            let doc = VerifyDocument {
                verification: &v,
                audit: audit.and_then(|a| a.ok()),
                audit_error: audit.and_then(|a| a.err()),
                result: summary.trim_start_matches("result: ").to_string(),
            };
            tree(&doc)
        }
    }
}

pub fn render_certificate(c: &NonexistenceCertificate, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "n: {}", c.n);
            let _ = writeln!(out, "forced_period: {}", c.forced_period);
            let _ = writeln!(out, "shape_size: {}", c.shape_size);
            let _ = writeln!(out, "window_size: {}", c.window_size);
            let _ = writeln!(out, "divides: {}", c.divides);
            out
        }
        ReportFormat::Tree => tree(c),
    }
}

#[derive(Serialize)]
struct SearchDocument<'a> {
    n: usize,
    p: u64,
    status: crate::search::SearchStatus,
    solutions: usize,
    nodes: u64,
    backtracks: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'a str>,
}

/// Search statistics. Elapsed time is printed only when `with_time` is set,
/// since it is the one nondeterministic field.
pub fn render_search(
    n: usize,
    p: u64,
    s: &SearchOutcome,
    with_time: bool,
    format: ReportFormat,
) -> String {
    match format {
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "n: {n}");
            let _ = writeln!(out, "p: {p}");
            let _ = writeln!(out, "status: {}", status_name(s.status));
            let _ = writeln!(out, "solutions: {}", s.solutions.len());
            let _ = writeln!(out, "nodes: {}", s.stats.nodes);
            let _ = writeln!(out, "backtracks: {}", s.stats.backtracks);
            if with_time {
                let _ = writeln!(out, "time_ms: {}", s.stats.elapsed.as_millis());
            }
            if let Some(c) = &s.certificate {
                let _ = writeln!(out, "certificate: {c}");
            }
            out
        }
        ReportFormat::Tree => tree(&SearchDocument {
            n,
            p,
            status: s.status,
            solutions: s.solutions.len(),
            nodes: s.stats.nodes,
            backtracks: s.stats.backtracks,
            certificate: s.certificate.as_deref(),
        }),
    }
}

pub fn status_name(s: crate::search::SearchStatus) -> &'static str {
    use crate::search::SearchStatus::*;
    match s {
        Complete => "complete",
        SolutionLimit => "solution-limit",
        BudgetExhausted => "budget-exhausted",
        Infeasible => "infeasible",
    }
}

/// Pretty JSON with a trailing newline.
pub fn tree<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}
