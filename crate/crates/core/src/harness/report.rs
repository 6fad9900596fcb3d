use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use super::Params;

/// One verified congruence.
///
/// `lhs` and `rhs` are the least residues modulo `p^j` (or exact rationals
/// for identities checked over `Q`); `elapsed` is not serialized.
#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub family: String,
    pub p: u64,
    pub params: Params,
    pub j: u32,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// A cell outside a statement's hypotheses.
#[derive(Clone, Debug, Serialize)]
pub struct SkipRecord {
    pub family: String,
    pub p: u64,
    pub params: Params,
    pub reason: String,
}

/// A cell whose evaluation failed; counted as a failure.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorRecord {
    pub family: String,
    pub p: u64,
    pub params: Params,
    pub j: u32,
    pub error: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub error: usize,
}

impl Counts {
    pub fn failures(&self) -> usize {
        self.fail + self.error
    }
}

/// Everything a sweep produced, sorted canonically.
#[derive(Clone, Debug, Default)]
pub struct Summary {
    pub reports: Vec<CongruenceReport>,
    pub skipped: Vec<SkipRecord>,
    pub errors: Vec<ErrorRecord>,
    pub counts: BTreeMap<String, Counts>,
}

fn key(family: &str, p: u64, params: &Params, j: u32) -> (String, u64, String, u32) {
    let params = serde_json::to_string(params).expect("params serialize");
    (family.to_string(), p, params, j)
}

#[derive(Serialize)]
struct Totals<'a> {
    families: &'a BTreeMap<String, Counts>,
    total: Counts,
}

#[derive(Serialize)]
struct Document<'a> {
    reports: &'a [CongruenceReport],
    skipped: &'a [SkipRecord],
    errors: &'a [ErrorRecord],
    summary: Totals<'a>,
}

impl Summary {
    pub(super) fn push_report(&mut self, r: CongruenceReport) {
        let c = self.counts.entry(r.family.clone()).or_default();
        if r.pass {
            c.pass += 1;
        } else {
            c.fail += 1;
        }
        self.reports.push(r);
    }

    pub(super) fn push_skip(&mut self, s: SkipRecord) {
        self.counts.entry(s.family.clone()).or_default().skip += 1;
        self.skipped.push(s);
    }

    pub(super) fn push_error(&mut self, e: ErrorRecord) {
        self.counts.entry(e.family.clone()).or_default().error += 1;
        self.errors.push(e);
    }

    pub(super) fn sort(&mut self) {
        self.reports.sort_by_cached_key(|r| key(&r.family, r.p, &r.params, r.j));
        self.skipped.sort_by_cached_key(|s| key(&s.family, s.p, &s.params, 0));
        self.errors.sort_by_cached_key(|e| key(&e.family, e.p, &e.params, e.j));
    }

    pub fn total(&self) -> Counts {
        self.counts.values().fold(Counts::default(), |a, c| Counts {
            pass: a.pass + c.pass,
            fail: a.fail + c.fail,
            skip: a.skip + c.skip,
            error: a.error + c.error,
        })
    }

    /// Number of failed or errored cells.
    pub fn failures(&self) -> usize {
        self.total().failures()
    }

    pub fn success(&self) -> bool {
        self.failures() == 0
    }

    pub fn failed_reports(&self) -> impl Iterator<Item = &CongruenceReport> {
        self.reports.iter().filter(|r| !r.pass)
    }

    /// Canonical JSON: `{"reports", "skipped", "errors", "summary"}`.
    pub fn to_json(&self) -> String {
        let doc = Document {
            reports: &self.reports,
            skipped: &self.skipped,
            errors: &self.errors,
            summary: Totals {
                families: &self.counts,
                total: self.total(),
            },
        };
        serde_json::to_string_pretty(&doc).expect("summary serializes")
    }

    /// Human-readable table of the same data.
    pub fn to_table(&self) -> String {
        let mut rows = vec![[
            "family".to_string(),
            "p".into(),
            "j".into(),
            "params".into(),
            "result".into(),
            "lhs".into(),
            "rhs".into(),
        ]];
        for r in &self.reports {
            rows.push([
                r.family.clone(),
                r.p.to_string(),
                r.j.to_string(),
                compact(&r.params),
                if r.pass { "pass" } else { "FAIL" }.into(),
                r.lhs.clone(),
                r.rhs.clone(),
            ]);
        }
        for e in &self.errors {
            rows.push([
                e.family.clone(),
                e.p.to_string(),
                e.j.to_string(),
                compact(&e.params),
                "ERROR".into(),
                e.error.clone(),
                String::new(),
            ]);
        }
        let widths: Vec<usize> = (0..7)
            .map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &rows {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<14} {:>6} {:>6} {:>6} {:>6}",
            "family", "pass", "fail", "skip", "error"
        );
        for (name, c) in &self.counts {
            let _ = writeln!(
                out,
                "{name:<14} {:>6} {:>6} {:>6} {:>6}",
                c.pass, c.fail, c.skip, c.error
            );
        }
        let t = self.total();
        let _ = writeln!(
            out,
            "{:<14} {:>6} {:>6} {:>6} {:>6}",
            "total", t.pass, t.fail, t.skip, t.error
        );
        out
    }
}

fn compact(params: &Params) -> String {
    params
        .iter()
        .map(|(k, v)| match v {
            serde_json::Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(",")
}
