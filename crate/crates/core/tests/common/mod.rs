//! Property checks shared by the property tests and the acceptance run.
//!
//! Every check returns the number of cases it ran, or a description of the
//! first counterexample.

#![allow(dead_code)]

use congruence_core::arith::{self, rat_int, BigRational};
use congruence_core::bernoulli::{bp_operator, power_sum_identity_check};
use congruence_core::characters::{eta, phi, trivial_character, DirichletCharacter, Parity};
use congruence_core::expansions::vpi_lemma_check;
use congruence_core::lfunction::{
    bernoulli_quotient, kummer_check, lp_eval, lp_special, lp_value, parity, LSeriesContext, QuotientRoute,
};
use congruence_core::padic::{angle, pexp, plog, teichmuller, PadicContext, PadicInt, PadicNumber};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type Outcome = Result<usize, String>;

pub const KERNEL_PRIMES: [u64; 4] = [5, 7, 11, 13];

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn ctx(p: u64, n: u32) -> PadicContext {
    PadicContext::new(p, n).unwrap()
}

fn fail<E: std::fmt::Display>(what: &str, p: u64) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{what}, p = {p}: {e}")
}

fn err(e: congruence_core::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

/// `1 + p·u` at precision `n`.
fn one_plus_p(p: u64, n: u32, u: u64) -> PadicInt {
    PadicInt::new(p, n, &(BigInt::from(p) * u + 1))
}

fn unit(p: u64) -> impl Strategy<Value = u64> {
    (1u64..u64::MAX).prop_filter("unit", move |a| a % p != 0)
}

pub fn exp_log_round_trip(p: u64, cases: u32) -> Outcome {
    runner(cases)
        .run(&(any::<u64>(), 1u32..=8), |(u, n)| {
            let s = PadicInt::new(p, n, &(BigInt::from(p) * u));
            prop_assert_eq!(plog(&pexp(&s).map_err(err)?).map_err(err)?, s);
            let x = one_plus_p(p, n, u);
            prop_assert_eq!(pexp(&plog(&x).map_err(err)?).map_err(err)?, x);
            Ok(())
        })
        .map(|_| cases as usize)
        .map_err(fail("exp/log round trip", p))
}

pub fn log_additivity(p: u64, cases: u32) -> Outcome {
    runner(cases)
        .run(&(any::<u64>(), any::<u64>(), 1u32..=8), |(u, v, n)| {
            let (x, y) = (one_plus_p(p, n, u), one_plus_p(p, n, v));
            let lhs = plog(&x.checked_mul(&y).map_err(err)?).map_err(err)?;
            let rhs = plog(&x)
                .map_err(err)?
                .checked_add(&plog(&y).map_err(err)?)
                .map_err(err)?;
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map(|_| cases as usize)
        .map_err(fail("log additivity", p))
}

pub fn teichmuller_laws(p: u64, cases: u32) -> Outcome {
    runner(cases)
        .run(&(unit(p), unit(p), 1u32..=8), |(a, b, n)| {
            let c = ctx(p, n);
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let wa = teichmuller(&a, &c).map_err(err)?;
            let wb = teichmuller(&b, &c).map_err(err)?;
            let wab = teichmuller(&(&a * &b), &c).map_err(err)?;
            prop_assert_eq!(wab, wa.checked_mul(&wb).map_err(err)?);
            prop_assert_eq!(wa.pow(p - 1), PadicInt::one(p, n));
            prop_assert!(wa.congruent(&PadicInt::new(p, 1, &a), 1));
            let back = wa.checked_mul(&angle(&a, &c).map_err(err)?).map_err(err)?;
            prop_assert_eq!(back, PadicInt::new(p, n, &a));
            Ok(())
        })
        .map(|_| cases as usize)
        .map_err(fail("Teichmüller laws", p))
}

fn rational(p: u64) -> impl Strategy<Value = BigRational> {
    (any::<i64>(), 1i64..1_000_000, -3i32..=3).prop_map(move |(a, b, k)| {
        let pk = rat_int(BigInt::from(p).pow(k.unsigned_abs()));
        let q = BigRational::new(a.into(), b.into());
        if k >= 0 {
            q * pk
        } else {
            q / pk
        }
    })
}

/// Results computed at low precision agree with exact arithmetic to every
/// digit they claim.
pub fn precision_honesty(p: u64, cases: u32) -> Outcome {
    runner(cases)
        .run(&(rational(p), rational(p), unit(p), 1u32..=6), |(q1, q2, a, n)| {
            let exact = |q: &BigRational| PadicNumber::from_rational(p, 64, q);
            let (x, y) = (
                PadicNumber::from_rational(p, n as i64, &q1),
                PadicNumber::from_rational(p, n as i64, &q2),
            );
            let honest =
                |v: &PadicNumber, want: &BigRational| v.precision() <= 0 || v.congruent(&exact(want), v.precision());
            prop_assert!(honest(&(&x * &y), &(&q1 * &q2)));
            prop_assert!(honest(&(&x + &y), &(&q1 + &q2)));
            prop_assert!(honest(&(&(&x + &y) - &y), &q1));
            if !x.is_zero() {
                prop_assert!(honest(&x.inverse().map_err(err)?, &(rat_int(1) / &q1)));
            }
            let a = BigInt::from(a);
            let lo = teichmuller(&a, &ctx(p, n)).map_err(err)?;
            let hi = teichmuller(&a, &ctx(p, n + 3)).map_err(err)?;
            prop_assert_eq!(hi.truncate(n), lo);
            let lo = plog(&angle(&a, &ctx(p, n)).map_err(err)?).map_err(err)?;
            let hi = plog(&angle(&a, &ctx(p, n + 3)).map_err(err)?).map_err(err)?;
            prop_assert_eq!(hi.truncate(n), lo);
            Ok(())
        })
        .map(|_| cases as usize)
        .map_err(fail("precision honesty", p))
}

pub fn kernel(cases: u32) -> Outcome {
    let mut n = 0;
    for p in KERNEL_PRIMES {
        n += exp_log_round_trip(p, cases)?;
        n += log_additivity(p, cases)?;
        n += teichmuller_laws(p, cases)?;
        n += precision_honesty(p, cases)?;
    }
    Ok(n)
}

pub fn characters() -> [DirichletCharacter; 3] {
    [trivial_character(), eta(), phi()]
}

fn trivial(psi: &DirichletCharacter, e: i64, p: u64) -> bool {
    psi.is_principal() && e.rem_euclid(p as i64 - 1) == 0
}

/// Series against the closed special values at `s ≤ 0`, precision 4.
pub fn special_values(p: u64) -> Outcome {
    let c = ctx(p, 4);
    let mut n = 0;
    for psi in characters() {
        for s in -3i64..=0 {
            let e = 1 - s;
            if parity(&psi, e) == Parity::Odd {
                continue;
            }
            let lsc = LSeriesContext::new(&c, &psi).map_err(|e| e.to_string())?;
            let a = lp_eval(s, &psi, e, &lsc).map_err(|e| e.to_string())?;
            let b = lp_special(s, &psi, e, &c).map_err(|e| e.to_string())?;
            if !a.congruent(&b, 4) {
                return Err(format!(
                    "L_p({s}, {psi}ω^{e}) at p = {p}: series {a}, special value {b}"
                ));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// The series does not depend on the admissible `D`.
pub fn d_independence(p: u64) -> Outcome {
    let c = ctx(p, 4);
    let other = if p == 5 { 7 } else { 5 };
    let mut n = 0;
    for psi in characters() {
        let f = psi.modulus();
        for e in 0..(p as i64 - 1).min(4) {
            for s in [-2i64, -1, 0, 2, 3] {
                let at = |d: u64| -> Result<PadicNumber, String> {
                    let lsc = LSeriesContext::with_d(&c, &psi, d).map_err(|e| e.to_string())?;
                    lp_eval(s, &psi, e, &lsc).map_err(|e| e.to_string())
                };
                let base = at(p * f)?;
                for k in [3, other] {
                    let v = at(k * p * f)?;
                    if !base.congruent(&v, 4) {
                        return Err(format!(
                            "L_p({s}, {psi}ω^{e}) at p = {p}: D = {} gives {base}, D = {} gives {v}",
                            p * f,
                            k * p * f
                        ));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// Odd characters vanish at ten random integers each.
pub fn odd_vanishing(p: u64) -> Outcome {
    let c = ctx(p, 4);
    let mut n = 0;
    for psi in characters() {
        for e in 0..(p as i64 - 1) {
            if parity(&psi, e) != Parity::Odd {
                continue;
            }
            let lsc = LSeriesContext::new(&c, &psi).map_err(|e| e.to_string())?;
            runner(10)
                .run(&(-500i64..500), |s| {
                    let v = lp_eval(s, &psi, e, &lsc).map_err(err)?;
                    prop_assert!(v.congruent(&PadicNumber::zero(p, 4), 4), "L_p({}) = {}", s, v);
                    Ok(())
                })
                .map_err(fail("odd vanishing", p))?;
            n += 10;
        }
    }
    Ok(n)
}

/// Both Kummer congruences for every nontrivial `ψω^e` with `e < 4`.
pub fn kummer(p: u64) -> Outcome {
    let mut n = 0;
    for psi in characters() {
        for e in 0..4i64 {
            if trivial(&psi, e, p) {
                continue;
            }
            for k in 1..=3u32 {
                let c = ctx(p, k);
                for s in [-2i64, 0, 2, 3] {
                    for t in 0..=3i64 {
                        let ok = kummer_check(s, t, k, &psi, e, &c).map_err(|e| e.to_string())?;
                        if !ok {
                            return Err(format!("Kummer fails: p = {p}, {psi}ω^{e}, s = {s}, t = {t}, k = {k}"));
                        }
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(n)
}

/// `L_p(m, ψω^{1-m}) ≡ B_p(m,k;ψ) ≡ -B_{N,ψ}/N (mod p^k)` for `m + k ≤ p - 1`.
pub fn three_way(p: u64) -> Outcome {
    let mut n = 0;
    for psi in characters() {
        for m in 1..p - 1 {
            for k in 1..=3u32 {
                if m + k as u64 > p - 1 || (psi.is_principal() && m == 1) {
                    continue;
                }
                let c = ctx(p, k);
                let l = lp_value(m as i64, &psi, 1 - m as i64, &c)
                    .and_then(|v| v.to_padic_int(k))
                    .map_err(|e| e.to_string())?;
                let b = bp_operator(m, k as u64, &psi, &c).map_err(|e| e.to_string())?;
                let q = bernoulli_quotient(k, m as i64, &psi, &c).map_err(|e| e.to_string())?;
                if q.route == QuotientRoute::LFunction {
                    continue;
                }
                let q = (-q.value).to_padic_int(k).map_err(|e| e.to_string())?;
                if l != b || l != q {
                    return Err(format!(
                        "p = {p}, {psi}, m = {m}, k = {k}: L_p {l}, operator {b}, quotient {q}"
                    ));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Nontrivial `L_p` values are integral; `p(1-s)L_p(s, 1)` is integral.
pub fn integrality(p: u64) -> Outcome {
    let c = ctx(p, 4);
    let mut n = 0;
    for psi in characters() {
        let lsc = LSeriesContext::new(&c, &psi).map_err(|e| e.to_string())?;
        for e in 0..(p as i64 - 1) {
            for s in -4i64..=4 {
                if s == 1 && trivial(&psi, e, p) {
                    continue;
                }
                let mut v = lp_eval(s, &psi, e, &lsc).map_err(|e| e.to_string())?;
                if trivial(&psi, e, p) {
                    v = v.mul_rational(&rat_int(p as i64 * (1 - s)));
                }
                if v.integral_precision().is_none() {
                    return Err(format!("L_p({s}, {psi}ω^{e}) = {v} is not integral at p = {p}"));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

/// The power-sum identity over a grid of at least twenty cells.
pub fn power_sums() -> Outcome {
    let mut n = 0;
    for chi in characters() {
        let d = chi.modulus();
        for mult in [5u64, 7] {
            let big_n = d * mult;
            for m in 1..=3usize {
                for r in [1u64, 2, 3, 4, 6] {
                    if arith::gcd_u64(r, big_n) != 1 {
                        continue;
                    }
                    if !power_sum_identity_check(&chi, big_n, m, r).map_err(|e| e.to_string())? {
                        return Err(format!("identity fails for {chi}, N = {big_n}, m = {m}, r = {r}"));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

pub fn vpi_upto(hi: u64) -> Outcome {
    let primes = arith::primes_between(5, hi);
    match primes.iter().find(|&&p| !vpi_lemma_check(p)) {
        Some(p) => Err(format!("V_(p,i) congruences fail at p = {p}")),
        None => Ok(primes.len()),
    }
}

/// Every L-function property at once.
pub fn lfunction_properties() -> Outcome {
    let mut n = 0;
    for p in KERNEL_PRIMES {
        n += special_values(p)?;
        n += d_independence(p)?;
        n += odd_vanishing(p)?;
        n += integrality(p)?;
    }
    for p in [7u64, 11, 13] {
        n += kummer(p)?;
    }
    for p in [7u64, 11] {
        n += three_way(p)?;
    }
    n += power_sums()?;
    n += vpi_upto(50)?;
    Ok(n)
}
