//! Homogeneous multiple harmonic sums
//! `M = Σ_{k_1 < ... < k_n} (k_1...k_n)^{-m}` and the non-strict `M̄`.

use num_bigint::BigInt;

use super::{bern, sign, ExpansionResult, HarmonicSumSpec, Work};
use crate::arith::{self, rat, rat_int, BigRational};
use crate::characters::trivial_character;
use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicNumber};

/// Coefficient of `t^n` in `exp(Σ_i (±1)^{i-1} H(d, r; mi) t^i / i)`.
///
/// The power sums come from [`super::washington_rhs`] (`r = 1`) or
/// [`super::lemher_rhs`], and the exponential is unwound with Newton's
/// identities.
pub fn hmhs_rhs(d: u64, r: u64, m: u64, n: u64, j: u32, strict: bool, ctx: &PadicContext) -> Result<ExpansionResult> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let p = ctx.prime();
    // dividing by 1..n costs v_p(n!) digits
    let loss = (1..=n).map(|i| arith::valuation_u64(i, p)).sum::<u32>();
    let jj = j + loss;
    let mut w = Work::new(ctx, j)?;
    let mut power = Vec::with_capacity(n as usize);
    let mut cut = 0;
    for i in 1..=n {
        let spec = HarmonicSumSpec::new(d, r, m * i, jj);
        let h = if r == 1 {
            super::washington_rhs(&spec, ctx)?
        } else {
            super::lemher_rhs(&spec, ctx)?
        };
        cut = cut.max(h.truncation_orders.get("n").copied().unwrap_or(0));
        power.push(PadicNumber::from_padic_int(&h.value));
    }
    let mut coeff = vec![PadicNumber::one(p, jj as i64)];
    for k in 1..=n as usize {
        let mut acc = w.zero();
        for i in 1..=k {
            let term = &coeff[k - i] * &power[i - 1];
            let s = if strict { sign(i % 2 == 0) } else { 1 };
            acc = &acc + &term.mul_int(s);
        }
        coeff.push(acc.mul_rational(&rat(1, k as i64)));
    }
    w.record("n", cut);
    w.record("newton", n as u32);
    let tag = if strict { "hmhs-strict" } else { "hmhs-nonstrict" };
    w.finish(&coeff[n as usize], tag)
}

fn check_closed(m: u64, n: u64, p: u64) -> Result<()> {
    if n < 2 || m == 0 {
        return Err(Error::OutOfRange("needs n ≥ 2, m ≥ 1".into()));
    }
    if p <= m * n + 4 {
        return Err(Error::OutOfRange(format!(
            "needs p > mn + 4, got p = {p}, mn = {}",
            m * n
        )));
    }
    Ok(())
}

fn b(i: u64) -> BigRational {
    bern(i as i64)
}

fn pow_p(p: u64, e: u32) -> BigRational {
    rat_int(BigInt::from(p).pow(e))
}

/// Full-period closed forms (`r = 1`), modulo `p⁴` when `mn` is odd and `p³` otherwise.
///
/// In the non-strict `m` odd, `n` even branch the quotient term enters with
/// `+`, as `M̄(t) = 1/M(-t)` forces.
pub fn c5_closed(d: u64, m: u64, n: u64, strict: bool, ctx: &PadicContext) -> Result<ExpansionResult> {
    let p = ctx.prime();
    check_closed(m, n, p)?;
    let one = trivial_character();
    let (mi, ni, di) = (m as i64, n as i64, d as i64);
    if (m * n) % 2 == 1 {
        let w = Work::new(ctx, 4)?;
        let mut s = rat_int(0);
        for j in 1..n {
            let jj = j as i64;
            s += rat_int(mi * mi * (mi * jj + 1)) * b(p - m * j - 2) * b(p - m * (n - j) - 1)
                / rat_int(2 * (mi * jj + 2) * (mi * ni - mi * jj + 1));
        }
        s *= rat_int(di.pow(3)) * pow_p(p, 3);
        if !strict {
            s = -s;
        }
        let q = w.bq_disp(2, mi * ni + 2, &one)?;
        let t = q.mul_rational(&(rat(mi * (mi * ni + 1), 2) * rat_int(di * di) * pow_p(p, 2)));
        let v = &w.q(&s) - &t;
        return w.finish(&v, "hmhs-closed-odd");
    }
    let w = Work::new(ctx, 3)?;
    let mut s = rat_int(0);
    for j in 1..n {
        let jj = j as i64;
        s += rat_int(mi * mi) * b(p - m * j - 1) * b(p - m * (n - j) - 1)
            / rat_int(2 * (mi * jj + 1) * (mi * ni - mi * jj + 1));
    }
    s *= rat_int(di * di) * pow_p(p, 2);
    let t = w
        .bq_disp(2, mi * ni + 1, &one)?
        .mul_rational(&(rat_int(mi * di) * pow_p(p, 1)));
    let s = w.q(&s);
    let v = match (m.is_multiple_of(2), strict) {
        (true, true) => (&s - &t).mul_int(sign(n % 2 == 1)),
        (_, false) => &s + &t,
        (false, true) => &s - &t,
    };
    w.finish(&v, "hmhs-closed-even")
}

/// Half-period closed forms (`r = 2`, `d` odd), strict sums only, as stated:
/// `m > 1` with `mn` odd (mod `p²`), `m` even (mod `p³`), and `m = 1` with `n` odd (mod `p²`).
pub fn c5ug_closed(d: u64, m: u64, n: u64, ctx: &PadicContext) -> Result<ExpansionResult> {
    let p = ctx.prime();
    check_closed(m, n, p)?;
    if d.is_multiple_of(2) {
        return Err(Error::OutOfRange("needs d odd".into()));
    }
    let one = trivial_character();
    let (mi, ni, di) = (m as i64, n as i64, d as i64);
    let two = rat_int(2);
    let half = rat(1, 2);
    let p2 = |e: i64| super::rat_pow(&two, e);
    let dp = rat_int(di * p as i64);
    if m > 1 && (m * n) % 2 == 1 {
        let w = Work::new(ctx, 2)?;
        let mut s = rat_int(0);
        for j in 1..n {
            let jj = j as i64;
            s += (p2(mi * jj) - &two) * (p2(mi * (ni - jj)) - &half) * b(p - m * j) * b(p - m * (n - j) - 1)
                / rat_int(jj * jj * (mi * ni - mi * jj + 1));
        }
        s *= &dp;
        let q = w
            .bq_disp(2, mi * ni, &one)?
            .mul_rational(&((p2(mi * ni) - &two) / rat_int(ni)));
        let v = &w.q(&s) - &q;
        return w.finish(&v, "hmhs-half-odd");
    }
    if m > 1 && m.is_multiple_of(2) {
        let w = Work::new(ctx, 3)?;
        let mut s = rat_int(0);
        for j in 1..n {
            let jj = j as i64;
            s += rat_int(mi * mi)
                * (p2(mi * jj) - &half)
                * (p2(mi * (ni - jj)) - &half)
                * b(p - m * j - 1)
                * b(p - m * (n - j) - 1)
                / rat_int(2 * (mi * jj + 1) * (mi * ni - mi * jj + 1));
        }
        let sg = rat_int(sign(n % 2 == 1));
        s *= &sg * &dp * &dp;
        let q = w
            .bq_disp(2, mi * ni + 1, &one)?
            .mul_rational(&(&sg * rat_int(mi) * (p2(mi * ni) - &half) * &dp));
        let v = &w.q(&s) - &q;
        return w.finish(&v, "hmhs-half-even");
    }
    if m == 1 && n % 2 == 1 {
        let w = Work::new(ctx, 2)?;
        let mut s = rat_int(0);
        for j in 2..n.saturating_sub(1) {
            let jj = j as i64;
            s += (p2(jj) - &two) * (p2(ni - jj) - &half) * b(p - j) * b(p - n + j - 1)
                / rat_int(jj * jj * (ni - jj + 1));
        }
        let q2 = super::fermat_quotient_exact(2, p);
        s += q2 * (p2(ni) - rat_int(1)) * b(p - n) / rat_int(ni);
        s *= &dp;
        let q = w.bq_disp(2, ni, &one)?.mul_rational(&((p2(ni) - &two) / rat_int(ni)));
        let v = &w.q(&s) - &q;
        return w.finish(&v, "hmhs-half-one");
    }
    Err(Error::OutOfRange(format!(
        "no half-period closed form for m = {m}, n = {n}"
    )))
}
