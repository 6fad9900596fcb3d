//! Ratios of binomial coefficients at multiples of `p`.

use num_bigint::BigInt;

use super::harmonic::closed;
use super::{bern, sign, ExpansionResult, Work};
use crate::arith::{self, rat, rat_int, BigRational};
use crate::characters::{euler_factor_d_exact, real_characters_dividing, trivial_character};
use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicInt};

fn pk_over_k(p: u64, k: u32) -> BigRational {
    BigRational::new(BigInt::from(p).pow(k), BigInt::from(k))
}

/// `C(cp, dp)/C(c, d) = exp(-Σ_{k≥3} (c^k - (c-d)^k - d^k) L_p(k, ω^{1-k}) p^k/k)`.
///
/// Only odd `k` contribute: `L_p(k, ω^{1-k})` vanishes for even `k`.
pub fn binom_ratio_cc5(c: u64, d: u64, j: u32, ctx: &PadicContext) -> Result<ExpansionResult> {
    if !(c > d && d > 0) {
        return Err(Error::OutOfRange(format!("needs c > d > 0, got c = {c}, d = {d}")));
    }
    let mut w = Work::new(ctx, j)?;
    let p = w.p;
    let one = trivial_character();
    let cut = w.cut().max(3);
    let mut s = w.zero();
    for k in 3..=cut {
        let coeff = BigInt::from(c).pow(k) - BigInt::from(c - d).pow(k) - BigInt::from(d).pow(k);
        let l = w.l(k as i64, &one, 1 - k as i64)?;
        s = &s - &l.mul_rational(&(rat_int(coeff) * pk_over_k(p, k)));
    }
    w.record("k", cut);
    let v = w.exp(&s)?;
    w.finish(&v, "binomial-lfunction")
}

/// The same ratio as the finite product `Π_{k ≤ dp, p∤k} (1 + (c-d)p/k)`.
pub fn binom_ratio_product(c: u64, d: u64, p: u64, j: u32) -> Result<ExpansionResult> {
    if !(c > d && d > 0) {
        return Err(Error::OutOfRange(format!("needs c > d > 0, got c = {c}, d = {d}")));
    }
    let mut acc = PadicInt::one(p, j);
    for k in (1..=d * p).filter(|k| k % p != 0) {
        let f = PadicInt::from_rational(&(rat_int(1) + rat((c - d) as i64 * p as i64, k as i64)), p, j)?;
        acc = acc.checked_mul(&f)?;
    }
    Ok(ExpansionResult {
        value: acc,
        modulus_exponent: j,
        theorem_tag: "binomial-product".into(),
        truncation_orders: Default::default(),
    })
}

/// Closed form of `C(cp, dp)/C(c, d)` modulo `p^8`, for `p ≥ 11`.
pub fn binom_ratio_c4(c: u64, d: u64, ctx: &PadicContext) -> Result<ExpansionResult> {
    if !(c > d && d > 0) {
        return Err(Error::OutOfRange(format!("needs c > d > 0, got c = {c}, d = {d}")));
    }
    let w = Work::new(ctx, 8)?;
    let p = w.p;
    if p < 11 {
        return Err(Error::OutOfRange("this form needs p ≥ 11".into()));
    }
    let one = trivial_character();
    let (c, d) = (c as i64, d as i64);
    let pp = |e: u32| rat_int(BigInt::from(p).pow(e));
    let x3 = c * c * d - c * d * d;
    let x5 = c.pow(4) * d - 2 * c.pow(3) * d * d + 2 * c * c * d.pow(3) - c * d.pow(4);
    let x7 = c.pow(6) * d - 3 * c.pow(5) * d * d + 5 * c.pow(4) * d.pow(3) - 5 * c.pow(3) * d.pow(4)
        + 3 * c * c * d.pow(5)
        - c * d.pow(6);
    let b2 = w.bq_disp(2, 3, &one)?;
    let mut v = w.int(1);
    v = &v - &w.bq_disp(5, 3, &one)?.mul_rational(&(rat_int(x3) * pp(3)));
    v = &v - &w.bq_disp(3, 5, &one)?.mul_rational(&(rat_int(x5) * pp(5)));
    v = &v - &w.q(&(rat_int(x7) * bern(p as i64 - 7) / rat_int(7) * pp(7)));
    v = &v + &(&b2 * &b2).mul_rational(&(rat(x3 * x3, 2) * pp(6)));
    w.finish(&v, "binomial-closed")
}

/// `C(cp + [dp/r], [dp/r]) / C(c + [d/r], [d/r])` as a product of four exponentials.
pub fn binom_ratio_lemher(c: i64, d: u64, r: u64, j: u32, ctx: &PadicContext) -> Result<ExpansionResult> {
    if !matches!(r, 2 | 3 | 4 | 6) {
        return Err(Error::Unsupported(format!("r = {r} (takes r ∈ {{2, 3, 4, 6}})")));
    }
    if c == 0 || d == 0 {
        return Err(Error::OutOfRange("c and d must be nonzero".into()));
    }
    let mut w = Work::new(ctx, j)?;
    let p = w.p;
    if arith::gcd_u64(r, d * p) != 1 {
        return Err(Error::NotCoprime {
            a: r.to_string(),
            m: d * p,
        });
    }
    let one = trivial_character();
    let phi_r = arith::totient(r) as i64;
    let (ri, di) = (r as i64, d as i64);
    let spread = |k: u32| BigInt::from(c * ri + di).pow(k) - BigInt::from(di).pow(k);
    let cut = w.cut().max(3);

    let mut s = -w.log_correction(r)?.mul_int(c);
    for k in 3..=cut {
        let l = w.l(k as i64, &one, 1 - k as i64)?;
        let own = rat_int(BigInt::from(c).pow(k));
        let shared = euler_factor_d_exact(&one, r, -(k as i64)) * BigRational::new(spread(k), phi_r.into());
        s = &s + &l.mul_rational(&((own - shared) * pk_over_k(p, k)));
    }
    for psi in real_characters_dividing(r)?.into_iter().filter(|x| !x.is_principal()) {
        let chi_dp = psi.value((d * p) as i64) as i64;
        for k in 1..=cut {
            let l = w.l(k as i64, &psi, 1 - k as i64)?;
            let coeff = euler_factor_d_exact(&psi, r, -(k as i64))
                * BigRational::new(spread(k) * chi_dp, phi_r.into())
                * pk_over_k(p, k);
            s = &s - &l.mul_rational(&coeff);
        }
    }
    w.record("k", cut);
    let v = w.exp(&s)?;
    w.finish(&v, "binomial-partial-lfunction")
}

/// `(-1)^{(p-1)/2} 4^{1-p} C(p-1, (p-1)/2)` modulo `p^8`, for `p ≥ 11`.
pub fn morley_c_s1(ctx: &PadicContext) -> Result<ExpansionResult> {
    let w = Work::new(ctx, 8)?;
    let p = w.p;
    if p < 11 {
        return Err(Error::OutOfRange("this form needs p ≥ 11".into()));
    }
    let one = trivial_character();
    let pp = |e: u32| rat_int(BigInt::from(p).pow(e));
    let b2 = w.bq_disp(2, 3, &one)?;
    let mut v = w.int(1);
    v = &v + &w.bq_disp(5, 3, &one)?.mul_rational(&(rat(1, 4) * pp(3)));
    v = &v + &w.bq_disp(3, 5, &one)?.mul_rational(&(rat(3, 16) * pp(5)));
    v = &v + &(&b2 * &b2).mul_rational(&(rat(1, 32) * pp(6)));
    v = &v + &w.q(&(rat(9, 64) * bern(p as i64 - 7) / rat_int(7) * pp(7)));
    w.finish(&v, "morley-half")
}

/// `(-1)^{[p/4]} 2^{3-3p} C(p-1, [p/4])` modulo `p^6`, for `p ≥ 7`.
///
/// The two trailing terms enter with `+`.
pub fn morley_c_s1v(ctx: &PadicContext) -> Result<ExpansionResult> {
    let w = Work::new(ctx, 6)?;
    let p = w.p;
    if p < 7 {
        return Err(Error::OutOfRange("this form needs p ≥ 7".into()));
    }
    let one = trivial_character();
    let pi = p as i64;
    let s = sign(((p - 1) / 2) % 2 == 1);
    let pp = |e: u32| rat_int(BigInt::from(p).pow(e));
    let e_small = |n: i64| rat_int(crate::bernoulli::euler_number(n as usize));
    let mut v = w.int(1);
    v = &v - &w.euler_big(4, 2)?.mul_rational(&(rat_int(s) * pp(2)));
    v = &v + &w.bq_disp(3, 3, &one)?.mul_rational(&(rat(15, 4) * pp(3)));
    v = &v - &w.euler_big(2, 4)?.mul_rational(&(rat_int(5 * s) * pp(4)));
    let sq = rat_int(2) * e_small(pi - 3) - e_small(2 * pi - 4);
    let tail = rat(75, 16) * bern(pi - 5) * pp(5) + &sq * &sq / rat_int(2) * pp(4)
        - rat(5 * s, 4) * e_small(pi - 3) * bern(pi - 3) * pp(5);
    v = &v + &w.q(&tail);
    w.finish(&v, "morley-quarter")
}

/// `C(p-1, (p-1)/2) ≡ (-1)^{(p-1)/2} 4^{p-1} (mod p³)`.
pub fn morley_rhs(p: u64) -> Result<ExpansionResult> {
    if p < 5 {
        return Err(Error::OutOfRange("needs p ≥ 5".into()));
    }
    let v = rat_int(BigInt::from(sign(((p - 1) / 2) % 2 == 1)) * BigInt::from(4).pow(p as u32 - 1));
    closed(p, 3, &v, "morley")
}

/// `C(2p-1, p-1) ≡ 1 (mod p³)`.
pub fn wolstenholme_binomial_rhs(p: u64) -> Result<ExpansionResult> {
    if p < 5 {
        return Err(Error::OutOfRange("needs p ≥ 5".into()));
    }
    closed(p, 3, &rat_int(1), "wolstenholme-binomial")
}
