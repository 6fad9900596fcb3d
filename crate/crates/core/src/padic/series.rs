use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::{PadicContext, PadicInt, PadicNumber};
use crate::arith::{self, pow_u, rat};
use crate::error::{Error, Result};

/// `floor(log_p n)` for `n ≥ 1`.
pub(crate) fn ilog(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut q = p;
    while q <= n {
        k += 1;
        q = match q.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    k
}

/// Number of terms of `log(1+y)`, `v(y) ≥ 1`, needed for absolute precision `n`.
pub(crate) fn log_terms(p: u64, n: i64) -> u64 {
    (1..).find(|&k: &u64| k as i64 - ilog(p, k) as i64 >= n).unwrap()
}

/// Number of terms of `exp(s)`, `v(s) ≥ 1`, needed for absolute precision `n`.
pub(crate) fn exp_terms(p: u64, n: i64) -> u64 {
    (1..)
        .find(|&k: &u64| (k as f64) - (k as f64 - 1.0) / (p as f64 - 1.0) >= n as f64)
        .unwrap()
}

/// `log(1 + y)` for `v(y) ≥ 1`, accurate to absolute precision `target`.
pub(crate) fn log1p_number(y: &PadicNumber, target: i64) -> PadicNumber {
    let p = y.prime();
    debug_assert!(y.valuation().is_none_or(|v| v >= 1));
    let y = y.truncate(target);
    let mut acc = PadicNumber::zero(p, target);
    let mut pw = y.clone();
    for n in 1..=log_terms(p, target) {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        acc = &acc + &pw.mul_rational(&rat(sign, n as i64));
        pw = &pw * &y;
    }
    acc.truncate(target)
}

/// `exp(s)` for `v(s) ≥ 1`, accurate to absolute precision `target`.
pub(crate) fn exp_number(s: &PadicNumber, target: i64) -> PadicNumber {
    let p = s.prime();
    debug_assert!(s.valuation().is_none_or(|v| v >= 1));
    let s = s.truncate(target);
    let mut acc = PadicNumber::one(p, target);
    let mut term = PadicNumber::one(p, target);
    for n in 1..=exp_terms(p, target) {
        term = (&term * &s).mul_rational(&rat(1, n as i64));
        acc = &acc + &term;
    }
    acc.truncate(target)
}

/// The p-adic logarithm of `x ≡ 1 (mod p)`; precision is preserved.
pub fn plog(x: &PadicInt) -> Result<PadicInt> {
    let p = x.prime();
    if x.residue() % p != BigUint::one() % p || x.precision() == 0 {
        return Err(Error::OutOfDomain("plog"));
    }
    let n = x.precision() as i64;
    let y = &PadicNumber::from_padic_int(x) - &PadicNumber::one(p, n);
    log1p_number(&y, n).to_padic_int(x.precision())
}

/// The p-adic exponential of `s ≡ 0 (mod p)`; precision is preserved.
pub fn pexp(s: &PadicInt) -> Result<PadicInt> {
    let p = s.prime();
    if (s.residue() % p) != BigUint::from(0u32) {
        return Err(Error::OutOfDomain("pexp"));
    }
    let n = s.precision() as i64;
    exp_number(&PadicNumber::from_padic_int(s), n).to_padic_int(s.precision())
}

fn require_unit(a: &BigInt, ctx: &PadicContext) -> Result<()> {
    if !ctx.is_unit(a) {
        return Err(Error::NotCoprime {
            a: a.to_string(),
            m: ctx.prime(),
        });
    }
    Ok(())
}

/// `ω(a)`: the `(p-1)`-st root of unity congruent to `a`, as `a^{p^{N-1}} mod p^N`.
pub fn teichmuller(a: &BigInt, ctx: &PadicContext) -> Result<PadicInt> {
    require_unit(a, ctx)?;
    let (p, n) = (ctx.prime(), ctx.working_precision());
    let m = pow_u(p, n);
    let r = arith::reduce(a, &m).modpow(&pow_u(p, n - 1), &m);
    Ok(PadicInt::from_residue(p, n, r))
}

/// `⟨a⟩ = a / ω(a)`, always `≡ 1 (mod p)`.
pub fn angle(a: &BigInt, ctx: &PadicContext) -> Result<PadicInt> {
    let w = teichmuller(a, ctx)?.inverse()?;
    let x = PadicInt::new(ctx.prime(), ctx.working_precision(), a);
    x.checked_mul(&w)
}

/// `⟨a⟩^e = exp(e · log_p⟨a⟩)`.
pub fn angle_pow(a: &BigInt, e: i64, ctx: &PadicContext) -> Result<PadicInt> {
    let l = plog(&angle(a, ctx)?)?;
    let s = l.checked_mul(&PadicInt::from_i64(ctx.prime(), l.precision(), e))?;
    pexp(&s)
}
