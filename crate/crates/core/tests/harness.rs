use congruence_core::arith::{rat_int, BigRational};
use congruence_core::bernoulli::bernoulli_number;
use congruence_core::harness::{self, Cell, Family, Outcome, PrimeRange, RunOptions};
use congruence_core::oracle;
use congruence_core::padic::PadicInt;
use congruence_core::Error;
use serde_json::{json, Value};

fn range(lo: u64, hi: u64) -> PrimeRange {
    PrimeRange::new(lo, hi).unwrap()
}

fn opts() -> RunOptions {
    RunOptions::default()
}

#[test]
fn wilson_chain_passes_at_precision_three() {
    let s = harness::run_family("wilson", range(5, 30), Some(3), opts()).unwrap();
    assert!(s.success());
    assert_eq!(s.reports.len(), 8 * 6);
    assert!(s.reports.iter().all(|r| r.j <= 3));
    assert!(s.skipped.is_empty());
}

#[test]
fn gauss_skips_other_residue_classes() {
    let s = harness::run_family("gauss", range(5, 100), Some(2), opts()).unwrap();
    assert!(s.success());
    for r in &s.reports {
        assert_eq!(r.p % 4, 1, "report for p = {}", r.p);
    }
    for k in &s.skipped {
        assert_eq!(k.p % 4, 3);
    }
    let covered: std::collections::BTreeSet<u64> = s.reports.iter().map(|r| r.p).collect();
    let want: Vec<u64> = range(5, 100).primes().into_iter().filter(|p| p % 4 == 1).collect();
    assert_eq!(covered.into_iter().collect::<Vec<_>>(), want);
}

#[test]
fn kummer_properties_at_seven() {
    let s = harness::run_family("kummer", range(7, 7), Some(2), opts()).unwrap();
    assert!(s.success(), "{}", s.to_table());
    assert!(s.reports.len() > 50);
}

#[test]
fn empty_range_is_an_empty_success() {
    let s = harness::run_all(range(24, 28), None, opts()).unwrap();
    assert!(s.reports.is_empty() && s.skipped.is_empty() && s.errors.is_empty());
    assert!(s.success());
    assert_eq!(s.counts.len(), harness::registry().len());
}

#[test]
fn small_primes_are_skipped_not_passed() {
    let s = harness::run_all(range(2, 3), None, opts()).unwrap();
    assert!(s.reports.is_empty());
    assert_eq!(s.skipped.len(), 2 * harness::registry().len());
}

#[test]
fn configuration_errors() {
    assert!(matches!(
        harness::run_family("fermat", range(5, 7), None, opts()),
        Err(Error::UnknownFamily(_))
    ));
    assert!(matches!(PrimeRange::new(9, 5), Err(Error::InvalidRange(_))));
    assert!(matches!("5-9".parse::<PrimeRange>(), Err(Error::InvalidRange(_))));
    assert_eq!("5:9".parse::<PrimeRange>().unwrap(), range(5, 9));
    assert_eq!("5..9".parse::<PrimeRange>().unwrap(), range(5, 9));
    assert_eq!("7".parse::<PrimeRange>().unwrap(), range(7, 7));
    assert!(harness::run_family("wilson", range(5, 7), Some(0), opts()).is_err());
}

#[test]
fn registry_names_are_unique_and_sorted() {
    let names: Vec<&str> = harness::registry().iter().map(|f| f.name).collect();
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(names, sorted);
    for n in names {
        assert_eq!(harness::family(n).unwrap().name, n);
    }
}

#[test]
fn output_is_deterministic() {
    let a = harness::run_family("lemher", range(5, 23), None, RunOptions { jobs: 1 }).unwrap();
    let b = harness::run_family("lemher", range(5, 23), None, RunOptions { jobs: 3 }).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_table(), b.to_table());
}

#[test]
fn json_schema() {
    let s = harness::run_family("glaisher", range(5, 11), None, opts()).unwrap();
    let doc: Value = serde_json::from_str(&s.to_json()).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        let mut keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["family", "j", "lhs", "p", "params", "pass", "rhs"]);
        assert!(r["lhs"].as_str().unwrap().parse::<u128>().is_ok());
    }
    assert_eq!(doc["skipped"][0]["params"], json!({"m": 3}));
    assert_eq!(doc["skipped"][0]["p"], json!(5));
    assert_eq!(doc["summary"]["total"]["pass"], json!(reports.len()));
}

#[test]
fn exact_identities_report_rationals() {
    let s = harness::run_family("lemma1", range(5, 5), None, opts()).unwrap();
    assert!(s.success());
    assert!(s.reports.iter().all(|r| r.j == 0));
    assert!(s.reports.iter().all(|r| r.lhs == r.rhs));
}

/// `(p-1)! ≡ pB_{p-1} - p (mod p²)` with the sign of `pB_{p-1}` flipped.
fn corrupted(p: u64, _: Option<u32>) -> Vec<Cell> {
    vec![Cell::run(json!({"form": "corrupted"}), 2, move || {
        let v: BigRational = -rat_int(p) * bernoulli_number(p as usize - 1) - rat_int(p);
        let lhs = oracle::factorial_mod(p - 1, p, 2, false)?.value;
        Ok(Outcome::residues(lhs, PadicInt::from_rational(&v, p, 2)?))
    })]
}

#[test]
fn corrupted_rhs_is_reported() {
    let fam = Family {
        name: "corrupted",
        summary: "",
        applies: |_| None,
        cells: corrupted,
    };
    let s = harness::run_families(&[fam], range(5, 30), None, opts()).unwrap();
    assert!(!s.success());
    assert_eq!(s.failed_reports().count(), s.reports.len());
    assert_eq!(s.counts["corrupted"].fail, 8);
}
