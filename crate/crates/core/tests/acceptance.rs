//! Acceptance run: one line per criterion, exact equality throughout.
//!
//! Built with `harness = false`; exits nonzero if any criterion fails.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use congruence_core::harness::{self, Params, PrimeRange, RunOptions, Summary};

/// One slice of a family sweep: a prime window and the forms it covers
/// (all forms when empty).
struct Part {
    family: &'static str,
    lo: u64,
    hi: u64,
    forms: &'static [&'static str],
}

const fn part(family: &'static str, lo: u64, hi: u64, forms: &'static [&'static str]) -> Part {
    Part { family, lo, hi, forms }
}

impl Part {
    fn selects(&self, p: u64, params: &Params) -> bool {
        let form = params.get("form").and_then(|v| v.as_str()).unwrap_or("");
        (self.lo..=self.hi).contains(&p) && (self.forms.is_empty() || self.forms.contains(&form))
    }
}

struct Verdict {
    pass: bool,
    detail: String,
}

/// Sweeps are shared between criteria; each family runs once over the
/// widest window any criterion asks of it.
struct Sweeps {
    cache: HashMap<&'static str, Summary>,
}

impl Sweeps {
    fn get(&mut self, family: &'static str) -> &Summary {
        self.cache.entry(family).or_insert_with(|| {
            let (lo, hi) = window(family);
            let range = PrimeRange::new(lo, hi).expect("valid range");
            harness::run_family(family, range, None, RunOptions::default()).expect("known family")
        })
    }

    fn check(&mut self, parts: &[Part]) -> Verdict {
        let mut pass = true;
        let mut notes = Vec::new();
        for part in parts {
            let s = self.get(part.family);
            let chosen: Vec<_> = s.reports.iter().filter(|r| part.selects(r.p, &r.params)).collect();
            let failed: Vec<_> = chosen.iter().filter(|r| !r.pass).collect();
            let errors: Vec<_> = s.errors.iter().filter(|e| part.selects(e.p, &e.params)).collect();
            let label = if part.forms.is_empty() {
                part.family.to_string()
            } else {
                format!("{}[{}]", part.family, part.forms.join(","))
            };
            if chosen.is_empty() || !failed.is_empty() || !errors.is_empty() {
                pass = false;
            }
            let mut note = format!(
                "{label} {}..{}: {}/{}",
                part.lo,
                part.hi,
                chosen.len() - failed.len(),
                chosen.len()
            );
            if let Some(r) = failed.first() {
                note += &format!(
                    " (first failure p={} j={} {})",
                    r.p,
                    r.j,
                    serde_json::Value::Object(r.params.clone())
                );
            }
            if let Some(e) = errors.first() {
                note += &format!(" ({} errors, first: {})", errors.len(), e.error);
            }
            notes.push(note);
        }
        Verdict {
            pass,
            detail: notes.join("; "),
        }
    }
}

/// The union of the windows the criteria ask of each family.
fn window(family: &str) -> (u64, u64) {
    match family {
        "wilson" => (5, 100),
        "glaisher" | "main4k" => (11, 100),
        "cc5" => (11, 50),
        "hmhs" => (13, 60),
        _ => (5, 200),
    }
}

fn property(outcome: common::Outcome) -> Verdict {
    match outcome {
        Ok(n) => Verdict {
            pass: true,
            detail: format!("{n} cases"),
        },
        Err(e) => Verdict { pass: false, detail: e },
    }
}

fn wilson(sweeps: &mut Sweeps) -> Verdict {
    let start = Instant::now();
    let s = harness::run_family("wilson", PrimeRange::new(5, 100).unwrap(), None, RunOptions::default()).unwrap();
    let elapsed = start.elapsed();
    sweeps.cache.insert("wilson", s);
    let mut v = sweeps.check(&[part("wilson", 5, 100, &[])]);
    v.pass &= elapsed < Duration::from_secs(10);
    v.detail += &format!(" in {elapsed:.2?}");
    v
}

fn full_sweep() -> Verdict {
    let start = Instant::now();
    let s = harness::run_all(PrimeRange::new(5, 100).unwrap(), None, RunOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let t = s.total();
    let mut detail = format!(
        "{} passed, {} failed, {} errors in {elapsed:.2?}",
        t.pass, t.fail, t.error
    );
    let bad: Vec<&str> = s
        .counts
        .iter()
        .filter(|(_, c)| c.failures() > 0)
        .map(|(n, _)| n.as_str())
        .collect();
    if !bad.is_empty() {
        detail += &format!(" (failing: {})", bad.join(", "));
    }
    Verdict {
        pass: s.success() && elapsed < Duration::from_secs(300),
        detail,
    }
}

type Criterion = (&'static str, Box<dyn FnOnce(&mut Sweeps) -> Verdict>);

fn main() -> ExitCode {
    let mut sweeps = Sweeps { cache: HashMap::new() };
    let criteria: Vec<Criterion> = vec![
        ("Wilson quotient chain to p^4", Box::new(wilson)),
        (
            "half factorial sign and fourth-order form",
            Box::new(|s| {
                s.check(&[
                    part("dirichlet", 5, 200, &["sign"]),
                    part("dirichlet", 7, 100, &["fourth"]),
                ])
            }),
        ),
        (
            "Gauss binomial chain",
            Box::new(|s| s.check(&[part("gauss", 13, 200, &[])])),
        ),
        (
            "Jacobi binomial chain",
            Box::new(|s| s.check(&[part("jacobi", 7, 200, &[])])),
        ),
        (
            "harmonic sums and Glaisher quotients",
            Box::new(|s| {
                s.check(&[
                    part("wolstenholme", 11, 100, &["harmonic", "square", "finite"]),
                    part("glaisher", 11, 100, &[]),
                ])
            }),
        ),
        (
            "binomial ratios",
            Box::new(|s| {
                s.check(&[
                    part("wolstenholme", 5, 200, &["binomial"]),
                    part("cc5", 11, 50, &["series", "product", "closed"]),
                    part("morley", 7, 200, &["morley"]),
                    part("morley", 11, 50, &["half"]),
                    part("morley", 7, 50, &["quarter", "quarter-series"]),
                ])
            }),
        ),
        (
            "Lehmer sums and partial harmonic sums",
            Box::new(|s| {
                s.check(&[
                    part("lemher", 7, 200, &["classical"]),
                    part("lemher", 11, 100, &["finite", "euler"]),
                    part("main4k", 11, 100, &[]),
                ])
            }),
        ),
        (
            "homogeneous multiple harmonic sums",
            Box::new(|s| s.check(&[part("hmhs", 13, 60, &["full", "half"])])),
        ),
        (
            "p-adic L-function properties",
            Box::new(|_| property(common::lfunction_properties())),
        ),
        ("p-adic kernel properties", Box::new(|_| property(common::kernel(200)))),
        ("full default sweep under 5 minutes", Box::new(|_| full_sweep())),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let v = run(&mut sweeps);
        let mark = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {mark} {name}: {}", i + 1, v.detail);
        if !v.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
