//! Command implementations behind the `midring` binary.
//!
//! Each command returns an [`Outcome`] holding what to print and the exit
//! code, so the binary stays a thin shell and tests can drive commands
//! in-process.
//!
//! Exit codes: 0 success, 1 gate failed, 2 parse/semantic/usage error,
//! 3 order cap or lattice budget exceeded, 4 internal invariant violation,
//! 5 no unique minimal prime.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ideals::{quotient_ring, DEFAULT_LATTICE_BUDGET};
use crate::mid::{certify_domain, gate_check, mid, z_ideal, zero_divisors, MidOptions};
use crate::ring::{units, FiniteRing, DEFAULT_ORDER_CAP};
use crate::ringspec::{eval_ring_expr, format_ring_expr, parse_ring_spec, RingExpr};

pub const EXIT_OK: i32 = 0;
pub const EXIT_GATE_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_NON_UNIQUE: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GateFailed { .. } => EXIT_GATE_FAILED,
        Error::Spec(_)
        | Error::NonzeroRingRequired { .. }
        | Error::MonicModulusRequired(_)
        | Error::UnsupportedBaseRing(_) => EXIT_INPUT,
        Error::OrderCapExceeded { .. } | Error::LatticeBudgetExceeded { .. } => EXIT_LIMIT,
        Error::NonUniqueMinimalPrime { .. } => EXIT_NON_UNIQUE,
        Error::PropositionViolated { .. }
        | Error::MalformedTables(_)
        | Error::ImproperIdealQuotient => EXIT_INTERNAL,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub json: bool,
    pub max_order: usize,
    pub certify: bool,
    pub table_limit: usize,
    pub lattice_budget: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            json: false,
            max_order: DEFAULT_ORDER_CAP,
            certify: true,
            table_limit: 32,
            lattice_budget: DEFAULT_LATTICE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn failure(e: &Error) -> Outcome {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateRecord {
    pub passes: bool,
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MidRecord {
    pub order: usize,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_domain: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs_checked: Option<u64>,
}

/// Everything `analyze` learns about one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub ring: String,
    pub order: usize,
    pub unit_count: usize,
    pub zero_divisors: Vec<String>,
    pub gate: GateRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_ideal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mid: Option<MidRecord>,
}

fn names(r: &FiniteRing, xs: &[crate::ring::ElementId]) -> Vec<String> {
    xs.iter().map(|&x| r.name(x).to_string()).collect()
}

/// Runs the whole pipeline on `r`. The error, if any, is also recorded in
/// the record's `error` field.
pub fn analyze_ring(r: &FiniteRing, settings: &Settings) -> (AnalysisRecord, Option<Error>) {
    let zd = zero_divisors(r);
    let gate = gate_check(r);
    let mut record = AnalysisRecord {
        ring: r.label().to_string(),
        order: r.order(),
        unit_count: units(r).len(),
        zero_divisors: names(r, &zd.divisors),
        gate: GateRecord {
            passes: gate.passes,
            ideal: gate.ideal.element_names(r),
            unit_witness: gate.unit_witness.map(|u| r.name(u).to_string()),
        },
        z_ideal: None,
        error: None,
        mid: None,
    };
    let opts = MidOptions {
        lattice_budget: settings.lattice_budget,
        certify: settings.certify,
    };
    match mid(r, opts) {
        Ok(m) => {
            let q = &m.quotient.quotient;
            record.z_ideal = Some(m.z_ideal.element_names(r));
            record.mid = Some(MidRecord {
                order: q.order(),
                elements: q.names().to_vec(),
                is_domain: m.certificate.as_ref().map(|c| c.is_domain),
                pairs_checked: m.certificate.as_ref().map(|c| c.pairs_checked),
            });
            (record, None)
        }
        Err(e) => {
            record.error = Some(e.kind().to_string());
            (record, Some(e))
        }
    }
}

fn load_ring(spec: &str, settings: &Settings) -> Result<FiniteRing, Error> {
    let expr = parse_ring_spec(spec)?;
    eval_ring_expr(&expr, settings.max_order)
}

fn braces(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

fn render_record(rec: &AnalysisRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ring:           {}", rec.ring);
    let _ = writeln!(s, "order:          {}", rec.order);
    let _ = writeln!(s, "units:          {}", rec.unit_count);
    let _ = writeln!(s, "zero-divisors:  {}", braces(&rec.zero_divisors));
    let gate = if rec.gate.passes {
        format!("passes, ideal {}", braces(&rec.gate.ideal))
    } else {
        format!(
            "fails, ideal {} contains unit {}",
            braces(&rec.gate.ideal),
            rec.gate.unit_witness.as_deref().unwrap_or("?")
        )
    };
    let _ = writeln!(s, "gate:           {gate}");
    match (&rec.z_ideal, &rec.error) {
        (Some(z), _) => {
            let _ = writeln!(s, "z(R):           {}", braces(z));
        }
        (None, Some(e)) => {
            let _ = writeln!(s, "z(R):           none ({e})");
        }
        (None, None) => {}
    }
    if let Some(m) = &rec.mid {
        let _ = writeln!(s, "mid(R) order:   {}", m.order);
        let _ = writeln!(s, "mid(R):         {}", braces(&m.elements));
        match (m.is_domain, m.pairs_checked) {
            (Some(d), Some(p)) => {
                let _ = writeln!(s, "integral domain: {d} ({p} pairs checked)");
            }
            _ => {
                let _ = writeln!(s, "integral domain: not certified");
            }
        }
    }
    s
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

pub fn cmd_analyze(spec: &str, settings: &Settings) -> Outcome {
    let ring = match load_ring(spec, settings) {
        Ok(r) => r,
        Err(e) => return Outcome::failure(&e),
    };
    let (record, err) = analyze_ring(&ring, settings);
    let stdout = if settings.json {
        to_json(&record)
    } else {
        render_record(&record)
    };
    let (stderr, code) = match err {
        None => (String::new(), EXIT_OK),
        Some(e) => (format!("{e}\n"), exit_code(&e)),
    };
    Outcome { stdout, stderr, code }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MidOutput {
    pub ring: String,
    pub z_ideal: Vec<String>,
    pub order: usize,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_domain: Option<bool>,
}

fn table(q: &FiniteRing, op: impl Fn(&FiniteRing, crate::ring::ElementId, crate::ring::ElementId) -> crate::ring::ElementId) -> Vec<Vec<String>> {
    q.elements()
        .map(|a| q.elements().map(|b| q.name(op(q, a, b)).to_string()).collect())
        .collect()
}

fn render_table(s: &mut String, symbol: &str, header: &[String], rows: &[Vec<String>]) {
    let width = header.iter().map(String::len).max().unwrap_or(1).max(symbol.len());
    let _ = write!(s, "{symbol:>width$} |");
    for h in header {
        let _ = write!(s, " {h:>width$}");
    }
    s.push('\n');
    let _ = writeln!(s, "{}", "-".repeat((width + 1) * (header.len() + 1) + 1));
    for (h, row) in header.iter().zip(rows) {
        let _ = write!(s, "{h:>width$} |");
        for cell in row {
            let _ = write!(s, " {cell:>width$}");
        }
        s.push('\n');
    }
}

pub fn cmd_mid(spec: &str, settings: &Settings) -> Outcome {
    let ring = match load_ring(spec, settings) {
        Ok(r) => r,
        Err(e) => return Outcome::failure(&e),
    };
    let opts = MidOptions {
        lattice_budget: settings.lattice_budget,
        certify: settings.certify,
    };
    let m = match mid(&ring, opts) {
        Ok(m) => m,
        Err(e) => return Outcome::failure(&e),
    };
    let q = &m.quotient.quotient;
    let small = q.order() <= settings.table_limit;
    let out = MidOutput {
        ring: ring.label().to_string(),
        z_ideal: m.z_ideal.element_names(&ring),
        order: q.order(),
        elements: q.names().to_vec(),
        add: small.then(|| table(q, FiniteRing::add)),
        mul: small.then(|| table(q, FiniteRing::mul)),
        is_domain: m.certificate.as_ref().map(|c| c.is_domain),
    };
    let stdout = if settings.json {
        to_json(&out)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "ring:     {}", out.ring);
        let _ = writeln!(s, "z(R):     {}", braces(&out.z_ideal));
        let _ = writeln!(s, "mid(R):   order {}", out.order);
        let _ = writeln!(s, "elements: {}", braces(&out.elements));
        if let Some(d) = out.is_domain {
            let _ = writeln!(s, "integral domain: {d}");
        }
        if let (Some(add), Some(mul)) = (&out.add, &out.mul) {
            s.push('\n');
            render_table(&mut s, "+", &out.elements, add);
            s.push('\n');
            render_table(&mut s, "*", &out.elements, mul);
        } else {
            let _ = writeln!(s, "(tables omitted: order exceeds {})", settings.table_limit);
        }
        s
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Zn,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Zn => "zn",
        }
    }

    fn spec(self, n: u64) -> RingExpr {
        match self {
            Family::Zn => RingExpr::Modular(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: String,
    pub max: u64,
    pub total: usize,
    pub gate_passed: usize,
    pub records: Vec<AnalysisRecord>,
}

pub fn cmd_scan(family: Family, max: u64, settings: &Settings) -> Outcome {
    if max < 2 {
        return Outcome {
            stderr: format!("error: scan needs max >= 2, got {max}\n"),
            code: EXIT_INPUT,
            ..Default::default()
        };
    }
    if max > settings.max_order as u64 {
        return Outcome::failure(&Error::OrderCapExceeded {
            order: max as u128,
            cap: settings.max_order,
        });
    }
    let results: Vec<(AnalysisRecord, Option<Error>)> = (2..=max)
        .into_par_iter()
        .map(|n| {
            let ring = eval_ring_expr(&family.spec(n), settings.max_order)
                .expect("family member within cap");
            analyze_ring(&ring, settings)
        })
        .collect();
    let violated = results
        .iter()
        .any(|(_, e)| matches!(e, Some(Error::PropositionViolated { .. })));
    let records: Vec<AnalysisRecord> = results.into_iter().map(|(r, _)| r).collect();
    let report = ScanReport {
        family: family.name().to_string(),
        max,
        total: records.len(),
        gate_passed: records.iter().filter(|r| r.gate.passes).count(),
        records,
    };
    let stdout = if settings.json {
        to_json(&report)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "{:<12} {:>5} {:>5} {:>6}  {:<24} {:>4}", "ring", "order", "units", "gate", "z(R)", "mid");
        for r in &report.records {
            let z = match (&r.z_ideal, &r.error) {
                (Some(z), _) => braces(z),
                (None, Some(e)) => e.clone(),
                _ => "-".into(),
            };
            let mid_order = r.mid.as_ref().map_or("-".to_string(), |m| m.order.to_string());
            let gate = if r.gate.passes { "pass" } else { "fail" };
            let _ = writeln!(s, "{:<12} {:>5} {:>5} {:>6}  {:<24} {:>4}", r.ring, r.order, r.unit_count, gate, z, mid_order);
        }
        let _ = writeln!(s, "gate passed: {} of {}", report.gate_passed, report.total);
        s
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if violated { EXIT_INTERNAL } else { EXIT_OK },
    }
}

/// The default verification corpus: ℤₙ for 2 ≤ n ≤ 64, ℤₐ × ℤᵦ for
/// 2 ≤ a, b ≤ 8, and every monic polynomial quotient over ℤ₂ and ℤ₃ of
/// degree 1 to 3.
pub fn builtin_corpus() -> Vec<RingExpr> {
    let mut corpus: Vec<RingExpr> = (2..=64).map(RingExpr::Modular).collect();
    for a in 2..=8 {
        for b in 2..=8 {
            corpus.push(RingExpr::product(RingExpr::Modular(a), RingExpr::Modular(b)));
        }
    }
    for p in [2u64, 3] {
        for degree in 1..=3u32 {
            for idx in 0..p.pow(degree) {
                let mut modulus: Vec<u64> = (0..degree).map(|k| idx / p.pow(k) % p).collect();
                modulus.push(1);
                corpus.push(RingExpr::poly(RingExpr::Modular(p), modulus));
            }
        }
    }
    corpus
}

/// Parses a corpus file: one spec per line, `#` starts a comment, blank
/// lines are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<RingExpr>, String> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then_some((i + 1, line))
        })
        .map(|(lineno, line)| parse_ring_spec(line).map_err(|e| format!("line {lineno}: {line:?}: {e}")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub gate_passes: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mid_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs_checked: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_domain: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub total: usize,
    pub gate_passed: usize,
    pub certified: usize,
    pub failed: usize,
    pub errors: usize,
    pub rings: Vec<VerifyRecord>,
}

/// Gate, z(R), quotient and exhaustive domain check for one corpus entry.
pub fn verify_ring(expr: &RingExpr, settings: &Settings) -> (VerifyRecord, Option<i32>) {
    let mut rec = VerifyRecord {
        ring: format_ring_expr(expr),
        order: None,
        gate_passes: false,
        mid_order: None,
        pairs_checked: None,
        is_domain: None,
        counterexample: None,
        error: None,
    };
    let fail = |mut rec: VerifyRecord, e: Error| {
        rec.error = Some(e.kind().to_string());
        let code = exit_code(&e);
        (rec, Some(code))
    };
    let ring = match eval_ring_expr(expr, settings.max_order) {
        Ok(r) => r,
        Err(e) => return fail(rec, e),
    };
    rec.order = Some(ring.order());
    let z = match z_ideal(&ring, settings.lattice_budget) {
        Ok(z) => z,
        Err(Error::GateFailed { .. }) => return (rec, None),
        Err(e) => {
            rec.gate_passes = true;
            return fail(rec, e);
        }
    };
    rec.gate_passes = true;
    let q = match quotient_ring(&ring, &z) {
        Ok(q) => q,
        Err(e) => return fail(rec, e),
    };
    let cert = certify_domain(&q.quotient);
    rec.mid_order = Some(q.quotient.order());
    rec.pairs_checked = Some(cert.pairs_checked);
    rec.is_domain = Some(cert.is_domain);
    if let Some((a, b)) = cert.counterexample {
        rec.counterexample = Some([q.quotient.name(a).to_string(), q.quotient.name(b).to_string()]);
        return (rec, Some(EXIT_INTERNAL));
    }
    (rec, None)
}

pub fn cmd_verify(corpus: &str, settings: &Settings) -> Outcome {
    let exprs = if corpus == "builtin" {
        builtin_corpus()
    } else {
        let text = match std::fs::read_to_string(corpus) {
            Ok(t) => t,
            Err(e) => {
                return Outcome {
                    stderr: format!("error: cannot read corpus {corpus}: {e}\n"),
                    code: EXIT_INPUT,
                    ..Default::default()
                }
            }
        };
        match parse_corpus(&text) {
            Ok(exprs) => exprs,
            Err(msg) => {
                return Outcome {
                    stderr: format!("error: {msg}\n"),
                    code: EXIT_INPUT,
                    ..Default::default()
                }
            }
        }
    };
    let results: Vec<(VerifyRecord, Option<i32>)> =
        exprs.par_iter().map(|e| verify_ring(e, settings)).collect();

    // Worst outcome wins: a counterexample outranks a missing z(R), which
    // outranks hitting a size limit.
    let rank = |c: i32| match c {
        EXIT_INTERNAL => 3,
        EXIT_NON_UNIQUE => 2,
        EXIT_OK => 0,
        _ => 1,
    };
    let code = results
        .iter()
        .filter_map(|(_, c)| *c)
        .max_by_key(|&c| rank(c))
        .unwrap_or(EXIT_OK);

    let rings: Vec<VerifyRecord> = results.into_iter().map(|(r, _)| r).collect();
    let summary = VerifySummary {
        total: rings.len(),
        gate_passed: rings.iter().filter(|r| r.gate_passes).count(),
        certified: rings.iter().filter(|r| r.is_domain == Some(true)).count(),
        failed: rings.iter().filter(|r| r.is_domain == Some(false)).count(),
        errors: rings.iter().filter(|r| r.error.is_some()).count(),
        rings,
    };

    let mut stderr = String::new();
    for r in &summary.rings {
        if let Some([a, b]) = &r.counterexample {
            let _ = writeln!(stderr, "counterexample in mid({}): {a} * {b} = 0", r.ring);
        }
        if let Some(e) = &r.error {
            let _ = writeln!(stderr, "{}: {e}", r.ring);
        }
    }
    let stdout = if settings.json {
        to_json(&summary)
    } else {
        let mut s = String::new();
        for r in &summary.rings {
            let status = match (&r.error, r.gate_passes, r.is_domain) {
                (Some(e), _, _) => format!("error {e}"),
                (None, false, _) => "gate fails".to_string(),
                (None, true, Some(true)) => format!(
                    "certified: mid order {}, {} pairs",
                    r.mid_order.unwrap_or(0),
                    r.pairs_checked.unwrap_or(0)
                ),
                (None, true, _) => "NOT A DOMAIN".to_string(),
            };
            let _ = writeln!(s, "{:<28} {status}", r.ring);
        }
        let _ = writeln!(
            s,
            "total {}, gate-passed {}, certified {}",
            summary.total, summary.gate_passed, summary.certified
        );
        s
    };
    Outcome { stdout, stderr, code }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_size() {
        // 63 cyclic + 49 products + (2+4+8) + (3+9+27) polynomial quotients
        assert_eq!(builtin_corpus().len(), 63 + 49 + 14 + 39);
    }

    #[test]
    fn corpus_comments_and_blanks() {
        let c = parse_corpus("# header\n\nZn(6)  # six\n  Zn(5)\n").unwrap();
        assert_eq!(c, vec![RingExpr::Modular(6), RingExpr::Modular(5)]);
        let err = parse_corpus("Zn(5)\nZn(x)\n").unwrap_err();
        assert!(err.starts_with("line 2"), "{err}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::LatticeBudgetExceeded { budget: 1 }), 3);
        assert_eq!(exit_code(&Error::NonUniqueMinimalPrime { primes: vec![] }), 5);
        assert_eq!(exit_code(&Error::ImproperIdealQuotient), 4);
    }

    #[test]
    fn analyze_budget_exceeded() {
        let s = Settings { lattice_budget: 1, ..Default::default() };
        let out = cmd_analyze("Zn(8)", &s);
        assert_eq!(out.code, EXIT_LIMIT);
    }
}
