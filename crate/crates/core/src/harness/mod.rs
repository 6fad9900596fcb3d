//! Verification families and the sweep runner.
//!
//! A [`Family`] turns a prime into a list of [`Cell`]s. Each cell pairs a
//! theorem's right-hand side with a brute-force left-hand side at a fixed
//! modulus `p^j`. The runner evaluates cells on a thread pool and collects
//! them into a canonically sorted [`Summary`].

mod families;
mod report;

use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::Value;

use crate::arith::{self, BigRational};
use crate::error::{Error, Result};
use crate::padic::PadicInt;

pub use families::registry;
pub use report::{CongruenceReport, Counts, ErrorRecord, SkipRecord, Summary};

/// Cell parameters, serialized as a JSON object with sorted keys.
pub type Params = serde_json::Map<String, Value>;

/// Upper end accepted for a prime range; the modular oracles work in `u64`.
pub const MAX_PRIME: u64 = 100_000;

/// The two sides of one congruence.
#[derive(Clone, Debug)]
pub enum Outcome {
    /// Residues compared modulo `p^j`.
    Residues { lhs: PadicInt, rhs: PadicInt },
    /// Rationals compared exactly.
    Exact { lhs: BigRational, rhs: BigRational },
}

impl Outcome {
    pub fn residues(lhs: PadicInt, rhs: PadicInt) -> Self {
        Outcome::Residues { lhs, rhs }
    }

    /// A left-hand side that should vanish modulo `p^j`.
    pub fn vanishes(lhs: PadicInt) -> Self {
        let rhs = PadicInt::zero(lhs.prime(), lhs.precision());
        Outcome::Residues { lhs, rhs }
    }
}

type Eval = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

enum Check {
    Run(Eval),
    Skip(String),
}

/// One `(prime, parameters)` work item.
pub struct Cell {
    params: Params,
    j: u32,
    check: Check,
}

impl Cell {
    /// `params` must be a JSON object.
    pub fn run(params: Value, j: u32, eval: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Self {
        Cell {
            params: object(params),
            j,
            check: Check::Run(Box::new(eval)),
        }
    }

    pub fn skip(params: Value, j: u32, reason: impl Into<String>) -> Self {
        Cell {
            params: object(params),
            j,
            check: Check::Skip(reason.into()),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn j(&self) -> u32 {
        self.j
    }
}

fn object(v: Value) -> Params {
    match v {
        Value::Object(m) => m,
        other => panic!("cell parameters must be an object, got {other}"),
    }
}

/// A named family of congruences.
///
/// `applies` returns `None` when the family covers `p` and otherwise the
/// reason it does not; `cells` receives the optional precision override.
#[derive(Clone, Copy)]
pub struct Family {
    pub name: &'static str,
    pub summary: &'static str,
    pub applies: fn(u64) -> Option<&'static str>,
    pub cells: fn(u64, Option<u32>) -> Vec<Cell>,
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Family").field("name", &self.name).finish()
    }
}

/// Looks a family up by name.
pub fn family(name: &str) -> Result<&'static Family> {
    registry()
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

/// An inclusive range of integers, of which the primes are swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeRange {
    lo: u64,
    hi: u64,
}

impl PrimeRange {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidRange(format!("{lo}:{hi} has lo > hi")));
        }
        if hi > MAX_PRIME {
            return Err(Error::InvalidRange(format!("upper end {hi} exceeds {MAX_PRIME}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn primes(&self) -> Vec<u64> {
        arith::primes_between(self.lo, self.hi)
    }
}

impl std::str::FromStr for PrimeRange {
    type Err = Error;

    /// Accepts `lo:hi`, `lo..hi` (both inclusive) or a single prime.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRange(format!("cannot parse {s:?}; expected lo:hi"));
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        let (lo, hi) = if let Some((a, b)) = s.split_once(':') {
            (num(a)?, num(b)?)
        } else if let Some((a, b)) = s.split_once("..") {
            (num(a)?, num(b.trim_start_matches('='))?)
        } else {
            let v = num(s)?;
            (v, v)
        };
        Self::new(lo, hi)
    }
}

/// Knobs that do not change results.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Worker threads; `0` uses the rayon default.
    pub jobs: usize,
}

/// Largest precision override accepted.
pub const MAX_PRECISION: u32 = 12;

fn check_precision(precision: Option<u32>) -> Result<()> {
    match precision {
        Some(j) if j == 0 || j > MAX_PRECISION => Err(Error::OutOfRange(format!(
            "precision must lie in 1..={MAX_PRECISION}, got {j}"
        ))),
        _ => Ok(()),
    }
}

/// Runs one registered family over the primes in `range`.
///
/// `precision` replaces the default modulus exponent of open-ended
/// expansions and caps that of fixed-modulus statements.
pub fn run_family(name: &str, range: PrimeRange, precision: Option<u32>, opts: RunOptions) -> Result<Summary> {
    let fam = family(name)?;
    run_families(&[*fam], range, precision, opts)
}

/// Runs every registered family.
pub fn run_all(range: PrimeRange, precision: Option<u32>, opts: RunOptions) -> Result<Summary> {
    run_families(registry(), range, precision, opts)
}

enum Entry {
    Report(CongruenceReport),
    Skip(SkipRecord),
    Error(ErrorRecord),
}

/// Runs an arbitrary list of families, registered or not.
pub fn run_families(fams: &[Family], range: PrimeRange, precision: Option<u32>, opts: RunOptions) -> Result<Summary> {
    check_precision(precision)?;
    let primes = range.primes();
    let mut items = Vec::new();
    for fam in fams {
        for &p in &primes {
            match (fam.applies)(p) {
                Some(reason) => items.push((fam.name, p, Cell::skip(Value::Object(Params::new()), 0, reason))),
                None => items.extend((fam.cells)(p, precision).into_iter().map(|c| (fam.name, p, c))),
            }
        }
    }
    let work = || -> Vec<Entry> {
        items
            .par_iter()
            .map(|(name, p, cell)| evaluate(name, *p, cell))
            .collect()
    };
    let entries = if opts.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?
            .install(work)
    };
    let mut summary = Summary::default();
    for fam in fams {
        summary.counts.entry(fam.name.to_string()).or_default();
    }
    for e in entries {
        match e {
            Entry::Report(r) => summary.push_report(r),
            Entry::Skip(s) => summary.push_skip(s),
            Entry::Error(e) => summary.push_error(e),
        }
    }
    summary.sort();
    Ok(summary)
}

fn evaluate(family: &str, p: u64, cell: &Cell) -> Entry {
    let eval = match &cell.check {
        Check::Skip(reason) => {
            return Entry::Skip(SkipRecord {
                family: family.to_string(),
                p,
                params: cell.params.clone(),
                reason: reason.clone(),
            })
        }
        Check::Run(f) => f,
    };
    let start = Instant::now();
    let res = eval().and_then(|o| compare(o, cell.j));
    let elapsed = start.elapsed();
    match res {
        Ok((lhs, rhs, pass)) => Entry::Report(CongruenceReport {
            family: family.to_string(),
            p,
            params: cell.params.clone(),
            j: cell.j,
            lhs,
            rhs,
            pass,
            elapsed,
        }),
        Err(e) => Entry::Error(ErrorRecord {
            family: family.to_string(),
            p,
            params: cell.params.clone(),
            j: cell.j,
            error: e.to_string(),
        }),
    }
}

fn residue_mod(x: &PadicInt, j: u32) -> Result<BigUint> {
    if x.precision() < j {
        return Err(Error::PrecisionExhausted {
            needed: j as i64,
            available: x.precision() as i64,
        });
    }
    Ok(x.truncate(j).residue().clone())
}

fn compare(o: Outcome, j: u32) -> Result<(String, String, bool)> {
    match o {
        Outcome::Residues { lhs, rhs } => {
            if lhs.prime() != rhs.prime() {
                return Err(Error::PrimeMismatch {
                    left: lhs.prime(),
                    right: rhs.prime(),
                });
            }
            let (a, b) = (residue_mod(&lhs, j)?, residue_mod(&rhs, j)?);
            let pass = a == b;
            Ok((a.to_string(), b.to_string(), pass))
        }
        Outcome::Exact { lhs, rhs } => {
            let pass = lhs == rhs;
            Ok((lhs.to_string(), rhs.to_string(), pass))
        }
    }
}
