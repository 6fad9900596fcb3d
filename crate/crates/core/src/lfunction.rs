//! The Kubota–Leopoldt p-adic L-function at integer arguments.
//!
//! A character argument is a pair `(ψ, e)`: a primitive real character `ψ`
//! of conductor `f` prime to `p`, and an exponent `e` of the Teichmüller
//! character, read modulo `p - 1`. The value is Washington's series
//!
//! ```text
//! L_p(s, χ) = 1/(D(s-1)) Σ_{a≤D, p∤a} χ(a) ⟨a⟩^{1-s} Σ_{n≥0} C(1-s, n) B_n (D/a)^n
//! ```
//!
//! rearranged so that no step divides by `s - 1` or by `p`: the `n = 0`
//! column is expanded through `⟨a⟩^{1-s} = exp((1-s) log⟨a⟩)`, which leaves
//! the pole `(p-1)/(p(s-1))` as an exact rational (present only when `χ` is
//! trivial) plus a power series in `1 - s` with integral coefficients.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{self, pow_u, rat_int, BigRational};
use crate::bernoulli;
use crate::characters::{DirichletCharacter, Parity};
use crate::error::{Error, Result};
use crate::padic::{angle, plog, PadicContext, PadicNumber};

/// Indices up to this bound use exact generalized Bernoulli numbers.
pub const EXACT_INDEX_LIMIT: u64 = 600;
/// Indices up to this bound use the Euler/`φ` recurrences modulo `p^k`.
pub const RECURRENCE_INDEX_LIMIT: u64 = 3000;

/// Parameters of one series evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSeriesContext {
    ctx: PadicContext,
    d: u64,
    truncation_order: u32,
}

impl LSeriesContext {
    /// Default context: `D = p·f_ψ`.
    pub fn new(ctx: &PadicContext, psi: &DirichletCharacter) -> Result<Self> {
        Self::with_d(ctx, psi, ctx.prime() * psi.modulus())
    }

    pub fn with_d(ctx: &PadicContext, psi: &DirichletCharacter, d: u64) -> Result<Self> {
        let p = ctx.prime();
        check_tame(psi, p)?;
        if !d.is_multiple_of(p) || !d.is_multiple_of(psi.modulus()) || d.is_multiple_of(p * p) {
            return Err(Error::BadContext(format!(
                "D = {d} must be a multiple of {p} and {} not divisible by {p}^2",
                psi.modulus()
            )));
        }
        Ok(Self {
            ctx: ctx.clone(),
            d,
            truncation_order: bernoulli_terms(p, series_digits(ctx)),
        })
    }

    /// Raises the Bernoulli-series cut above the automatic bound.
    pub fn with_truncation_order(mut self, order: u32) -> Self {
        self.truncation_order = self.truncation_order.max(order);
        self
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn truncation_order(&self) -> u32 {
        self.truncation_order
    }
}

fn check_tame(psi: &DirichletCharacter, p: u64) -> Result<()> {
    if !psi.is_primitive() {
        return Err(Error::UnsupportedCharacter(format!("{psi} is not primitive")));
    }
    if psi.modulus().is_multiple_of(p) {
        return Err(Error::UnsupportedCharacter(format!(
            "conductor of {psi} is divisible by {p}"
        )));
    }
    Ok(())
}

/// Digits carried inside the series; one more than the reported precision.
fn series_digits(ctx: &PadicContext) -> u32 {
    ctx.internal_precision() + 1
}

/// Last `n` whose Bernoulli term can be nonzero modulo `p^{w-1}`.
fn bernoulli_terms(p: u64, w: u32) -> u32 {
    // term n has valuation ≥ n - 2 - floor(log_p n), nondecreasing in n
    (1u32..)
        .find(|&n| n as i64 - 2 - crate::padic::ilog(p, n as u64) as i64 >= w as i64 - 1)
        .unwrap()
        - 1
}

/// Last `k` whose `log⟨a⟩^k` term can be nonzero modulo `p^{w-1}`.
fn log_power_terms(p: u64, w: u32) -> u32 {
    // v(p^{k-1}/k!) ≥ (k-1) - (k-1)/(p-1)
    (1u32..)
        .find(|&k| (k as u64 - 1) - (k as u64 - 1) / (p - 1) >= w as u64 - 1)
        .unwrap()
        - 1
}

/// Sign of `χ(-1)` for `χ = ψω^e`.
pub fn parity(psi: &DirichletCharacter, e: i64) -> Parity {
    let odd = (psi.parity() == Parity::Odd) != (e.rem_euclid(2) == 1);
    if odd {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn is_trivial(psi: &DirichletCharacter, e: i64, p: u64) -> bool {
    psi.modulus() == 1 && e.rem_euclid(p as i64 - 1) == 0
}

type MemoKey = (i64, DirichletCharacter, i64, u64, u32);

/// Per-`(p, w)` tables shared by every evaluation at that precision.
struct Evaluator {
    p: u64,
    w: u32,
    m: BigUint,
    m1: BigUint,
    teich: RwLock<HashMap<u64, BigUint>>,
    lambda: RwLock<HashMap<u64, BigUint>>,
    memo: RwLock<HashMap<MemoKey, PadicNumber>>,
}

type Registry = RwLock<HashMap<(u64, u32), Arc<Evaluator>>>;

fn evaluator(p: u64, w: u32) -> Arc<Evaluator> {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    let reg = REGISTRY.get_or_init(Default::default);
    if let Some(e) = reg.read().expect("registry lock").get(&(p, w)) {
        return e.clone();
    }
    let ev = Arc::new(Evaluator {
        p,
        w,
        m: pow_u(p, w),
        m1: pow_u(p, w - 1),
        teich: Default::default(),
        lambda: Default::default(),
        memo: Default::default(),
    });
    reg.write().expect("registry lock").entry((p, w)).or_insert(ev).clone()
}

impl Evaluator {
    /// `ω(a) mod p^w`, cached by `a mod p`.
    fn omega(&self, a: u64) -> BigUint {
        let key = a % self.p;
        if let Some(v) = self.teich.read().expect("cache lock").get(&key) {
            return v.clone();
        }
        let v = BigUint::from(key).modpow(&pow_u(self.p, self.w - 1), &self.m);
        self.teich.write().expect("cache lock").insert(key, v.clone());
        v
    }

    /// `log⟨a⟩ / p mod p^{w-1}`.
    fn lambda(&self, a: u64) -> Result<BigUint> {
        if let Some(v) = self.lambda.read().expect("cache lock").get(&a) {
            return Ok(v.clone());
        }
        let ctx = PadicContext::new(self.p, self.w)?;
        let l = plog(&angle(&BigInt::from(a), &ctx)?)?;
        let v = l.divide_by_p(1)?.residue().clone();
        self.lambda.write().expect("cache lock").insert(a, v.clone());
        Ok(v)
    }

    fn eval(&self, s: i64, psi: &DirichletCharacter, e: i64, lsc: &LSeriesContext) -> Result<PadicNumber> {
        let p = self.p;
        let e = e.rem_euclid(p as i64 - 1);
        let key = (s, psi.clone(), e, lsc.d, lsc.truncation_order);
        if let Some(v) = self.memo.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let (m, m1) = (&self.m, &self.m1);
        let d = lsc.d;
        let kmax = log_power_terms(p, self.w);
        let tmax = lsc.truncation_order;

        let mut big_lambda = vec![BigUint::zero(); kmax as usize + 1];
        let mut sums = vec![BigUint::zero(); tmax as usize + 1];
        for a in (1..=d).filter(|a| a % p != 0) {
            let sign = psi.value(a as i64);
            if sign == 0 {
                continue;
            }
            let w = self.omega(a);
            let chi = {
                let c = w.modpow(&BigUint::from(e as u64), m);
                if sign < 0 {
                    (m - c) % m
                } else {
                    c
                }
            };
            let w_inv = arith::mod_inverse(&BigInt::from(w), m)?;
            let ang = (BigUint::from(a) * w_inv) % m;
            let ang_pow = if s <= 1 {
                ang.modpow(&BigUint::from((1 - s) as u64), m)
            } else {
                arith::mod_inverse(&BigInt::from(ang), m)?.modpow(&BigUint::from((s - 1) as u64), m)
            };

            let lam = self.lambda(a)?;
            let mut pw = chi.clone() % m1;
            for slot in big_lambda.iter_mut().skip(1) {
                pw = (pw * &lam) % m1;
                *slot = (&*slot + &pw) % m1;
            }

            let u = (chi * ang_pow) % m1;
            let a_inv = arith::mod_inverse(&BigInt::from(a), m1)?;
            let mut pw = u;
            for slot in sums.iter_mut().skip(1) {
                pw = (pw * &a_inv) % m1;
                *slot = (&*slot + &pw) % m1;
            }
        }

        // Σ_k (1-s)^{k-1} p^k/(k! D) · Λ_k
        let mut log_part = BigUint::zero();
        let mut coeff = BigRational::new(BigInt::one(), BigInt::from(d / p));
        for (k, lam_k) in big_lambda.iter().enumerate().skip(1) {
            if k > 1 {
                coeff = coeff * rat_int(BigInt::from(1 - s) * BigInt::from(p)) / rat_int(k as u64);
            }
            if coeff.is_zero() {
                break;
            }
            let r = arith::rational_to_residue(&coeff, p, self.w - 1)?;
            log_part = (log_part + r * lam_k) % m1;
        }

        // Σ_n C(-s, n-1) (B_n/n) D^{n-1} · Σ_a χ(a)⟨a⟩^{1-s} a^{-n}
        let mut bern_part = BigUint::zero();
        for (n, s_n) in sums.iter().enumerate().skip(1) {
            let b = bernoulli::bernoulli_number(n);
            if b.is_zero() {
                continue;
            }
            let c = rat_int(arith::binomial_signed(-s, n as u64 - 1))
                * b
                * BigRational::new(BigInt::from(d).pow(n as u32 - 1), BigInt::from(n));
            if c.is_zero() {
                continue;
            }
            let r = arith::rational_to_residue(&c, p, self.w - 1)?;
            bern_part = (bern_part + r * s_n) % m1;
        }

        let body = (m1 + m1 - &log_part - &bern_part) % m1;
        let prec = self.w as i64 - 1;
        let mut value = PadicNumber::from_int(p, prec, &BigInt::from(body));
        if is_trivial(psi, e, p) {
            let pole = BigRational::new(BigInt::from(p - 1), BigInt::from(p) * BigInt::from(s - 1));
            value = &value + &PadicNumber::from_rational(p, prec, &pole);
        }
        self.memo.write().expect("cache lock").insert(key, value.clone());
        Ok(value)
    }
}

/// Washington's series for `L_p(s, ψω^e)`, always evaluated (no parity shortcut).
///
/// The result is known to absolute precision `ctx.internal_precision()`.
pub fn lp_eval(s: i64, psi: &DirichletCharacter, e: i64, lsc: &LSeriesContext) -> Result<PadicNumber> {
    let p = lsc.ctx.prime();
    check_tame(psi, p)?;
    if !lsc.d.is_multiple_of(psi.modulus()) {
        return Err(Error::BadContext(format!(
            "D = {} is not a multiple of {}",
            lsc.d,
            psi.modulus()
        )));
    }
    if s == 1 && is_trivial(psi, e, p) {
        return Err(Error::PoleAtOne);
    }
    evaluator(p, series_digits(&lsc.ctx)).eval(s, psi, e, lsc)
}

/// `L_p(s, ψω^e)` with the default `D`; odd characters give zero directly.
pub fn lp_value(s: i64, psi: &DirichletCharacter, e: i64, ctx: &PadicContext) -> Result<PadicNumber> {
    if parity(psi, e) == Parity::Odd {
        check_tame(psi, ctx.prime())?;
        return Ok(PadicNumber::zero(ctx.prime(), ctx.internal_precision() as i64));
    }
    lp_eval(s, psi, e, &LSeriesContext::new(ctx, psi)?)
}

/// `L_p(1-n, ψω^e) = -(1 - ψ(p)p^{n-1}) B_{n,ψ}/n`, valid when `e ≡ n (mod p-1)`.
pub fn lp_special(one_minus_n: i64, psi: &DirichletCharacter, e: i64, ctx: &PadicContext) -> Result<PadicNumber> {
    let p = ctx.prime();
    check_tame(psi, p)?;
    let n = 1 - one_minus_n;
    if n < 1 {
        return Err(Error::OutOfRange(format!(
            "special values need s ≤ 0, got s = {one_minus_n}"
        )));
    }
    if (e - n).rem_euclid(p as i64 - 1) != 0 {
        return Err(Error::UnsupportedCharacter(format!(
            "{psi}·ω^{} at s = {one_minus_n} leaves a nonreal twist",
            e
        )));
    }
    let euler = rat_int(1) - rat_int(psi.value(p as i64)) * rat_int(BigInt::from(p).pow(n as u32 - 1));
    let b = bernoulli::gen_bernoulli(n as usize, psi);
    let v = -(euler * b / rat_int(n));
    Ok(PadicNumber::from_rational(p, ctx.internal_precision() as i64, &v))
}

/// Both congruences of the generalized Kummer lemma at level `k`:
/// `L_p(s) ≡ L_p(s + p^{k-1} t)` and `Δ_t^k L_p(s) ≡ 0` modulo `p^k`.
pub fn kummer_check(s: i64, t: i64, k: u32, psi: &DirichletCharacter, e: i64, ctx: &PadicContext) -> Result<bool> {
    let p = ctx.prime();
    if is_trivial(psi, e, p) {
        return Err(Error::UnsupportedCharacter(
            "Kummer check needs a nontrivial character".into(),
        ));
    }
    if k == 0 || k > ctx.working_precision() {
        return Err(Error::OutOfRange(format!(
            "level k = {k} exceeds the working precision"
        )));
    }
    let lsc = LSeriesContext::new(ctx, psi)?;
    let l = |x: i64| lp_eval(x, psi, e, &lsc);
    let shift = (p as i64).pow(k - 1) * t;
    let first = l(s)?.congruent(&l(s + shift)?, k as i64);
    let mut diff = PadicNumber::exact_zero(p);
    for i in 0..=k as u64 {
        let c = arith::binomial(k as u64, i);
        let sign = if (k as u64 - i).is_multiple_of(2) { 1 } else { -1 };
        let term = l(s + i as i64 * t)?.mul_rational(&rat_int(BigInt::from(c) * sign));
        diff = &diff + &term;
    }
    let second = diff.congruent(&PadicNumber::zero(p, diff.precision()), k as i64);
    Ok(first && second)
}

/// How a big-index Bernoulli quotient was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientRoute {
    Exact,
    Recurrence,
    LFunction,
}

/// `B_{N,ψ}/N` with `N = p^{k-1}(p-1) + 1 - m`, modulo `p^k`.
#[derive(Clone, Debug)]
pub struct BernoulliQuotient {
    pub value: PadicNumber,
    pub index: Option<u64>,
    pub route: QuotientRoute,
}

fn quotient_index(p: u64, k: u32, m: i64) -> Option<i128> {
    let top = (p as i128).checked_pow(k - 1)?.checked_mul(p as i128 - 1)?;
    Some(top + 1 - m as i128)
}

/// The quotient `B_{N,ψ}/N` at level `k`, known modulo `p^k`.
///
/// Small indices are exact; mid-range `η`/`φ` indices use the integral
/// recurrences; beyond that the Kummer congruence
/// `B_{N,ψ}/N ≡ -L_p(m, ψω^{1-m}) (mod p^k)` supplies the value.
pub fn bernoulli_quotient(k: u32, m: i64, psi: &DirichletCharacter, ctx: &PadicContext) -> Result<BernoulliQuotient> {
    let p = ctx.prime();
    if k == 0 {
        return Err(Error::OutOfRange("level k must be positive".into()));
    }
    let n = quotient_index(p, k, m);
    if matches!(n, Some(n) if n < 1) {
        return Err(Error::OutOfRange(format!("index for k = {k}, m = {m} is not positive")));
    }
    let n = n.and_then(|n| u64::try_from(n).ok());
    let prec = k as i64;
    if let Some(n) = n {
        if n <= EXACT_INDEX_LIMIT {
            let q = bernoulli::gen_bernoulli(n as usize, psi) / rat_int(n);
            return Ok(BernoulliQuotient {
                value: PadicNumber::from_rational(p, prec, &q),
                index: Some(n),
                route: QuotientRoute::Exact,
            });
        }
        if n <= RECURRENCE_INDEX_LIMIT {
            if let Some(v) = bernoulli::gen_bernoulli_quotient_mod(n as usize, psi, p, k) {
                return Ok(BernoulliQuotient {
                    value: PadicNumber::from_padic_int(&v),
                    index: Some(n),
                    route: QuotientRoute::Recurrence,
                });
            }
        }
    }
    if k > ctx.internal_precision() {
        return Err(Error::PrecisionExhausted {
            needed: k as i64,
            available: ctx.internal_precision() as i64,
        });
    }
    let l = lp_value(m, psi, 1 - m, ctx)?;
    Ok(BernoulliQuotient {
        value: (-l).truncate(prec),
        index: n,
        route: QuotientRoute::LFunction,
    })
}

/// `B_{N,ψ}/(p^{k-1} + m - 1)`, the form in which the closed-form
/// congruences display these quotients.
pub fn bernoulli_quotient_display(k: u32, m: i64, psi: &DirichletCharacter, ctx: &PadicContext) -> Result<PadicNumber> {
    let p = ctx.prime();
    let q = bernoulli_quotient(k, m, psi, ctx)?;
    let n = quotient_index(p, k, m).expect("index computed above");
    let den = (p as i128).pow(k - 1) + m as i128 - 1;
    let ratio = BigRational::new(BigInt::from(n), BigInt::from(den));
    Ok(q.value.mul_rational(&ratio))
}

/// `E_{N-1} = -2 B_{N,η}/N`, the Euler number at the same big index.
pub fn euler_quotient(k: u32, m: i64, ctx: &PadicContext) -> Result<PadicNumber> {
    let q = bernoulli_quotient(k, m, &crate::characters::eta(), ctx)?;
    Ok(q.value.mul_int(-2))
}
