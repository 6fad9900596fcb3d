//! The central binomials `C((p-1)/2, (p-1)/4)` and `C(2(p-1)/3, (p-1)/3)`.

use num_bigint::BigInt;

use super::harmonic::closed;
use super::{fermat_quotient_exact, ExpansionResult, Work};
use crate::arith::{self, rat, rat_int, BigRational};
use crate::bernoulli::{bernoulli_poly, euler_number};
use crate::characters::{eta, phi, trivial_character};
use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicNumber};

/// `A - A Σ_{i=1}^{terms} (1/i) C(2i-2, i-1) x^i`, the expansion of `A(1+√(1-4x))/2`.
fn prefactor(a: i64, x: &BigRational, terms: u32) -> BigRational {
    let mut sum = rat_int(0);
    let mut xi = rat_int(1);
    for i in 1..=terms as u64 {
        xi *= x;
        sum += rat_int(BigInt::from(arith::binomial(2 * i - 2, i - 1))) / rat_int(i) * &xi;
    }
    rat_int(a) - rat_int(a) * sum
}

fn pk_over_k(p: u64, k: u32) -> BigRational {
    BigRational::new(BigInt::from(p).pow(k), BigInt::from(k))
}

/// `C((p-1)/2, (p-1)/4)` for `p ≡ 1 (mod 4)`, with `p = a² + b²`, `a ≡ 1 (mod 4)`.
pub fn gauss_expansion(p: u64, j: u32, ctx: &PadicContext) -> Result<ExpansionResult> {
    let rep = arith::two_square_rep(p)?;
    if ctx.prime() != p {
        return Err(Error::PrimeMismatch {
            left: p,
            right: ctx.prime(),
        });
    }
    let mut w = Work::new(ctx, j)?;
    let a = rep.a;
    let terms = j + ctx.guard();
    let pre = w.q(&prefactor(2 * a, &rat(p as i64, 4 * a * a), terms));
    let cut = w.cut().max(2);
    let mut s = w.log_fermat(2)?.mul_rational(&rat(1, 2));
    let e = eta();
    for k in 2..=cut {
        let l = w.l(k as i64, &e, 1 - k as i64)?;
        s = &s + &l.mul_rational(&pk_over_k(p, k));
    }
    w.record("prefactor", terms);
    w.record("k", cut);
    let v = &pre * &w.exp(&s)?;
    w.finish(&v, "gauss-lfunction")
}

/// `C(2(p-1)/3, (p-1)/3)` for `p ≡ 1 (mod 3)`, with `4p = r² + 27s²`, `r ≡ 1 (mod 3)`.
pub fn jacobi_expansion(p: u64, j: u32, ctx: &PadicContext) -> Result<ExpansionResult> {
    let rep = arith::eisenstein_rep(p)?;
    if ctx.prime() != p {
        return Err(Error::PrimeMismatch {
            left: p,
            right: ctx.prime(),
        });
    }
    let mut w = Work::new(ctx, j)?;
    let r = rep.r;
    let terms = j + ctx.guard();
    let pre = w.q(&prefactor(-r, &rat(p as i64, r * r), terms));
    let cut = w.cut().max(3);
    let (one, f) = (trivial_character(), phi());
    let two = |e: u32| rat_int(BigInt::from(2).pow(e));
    let mut s: PadicNumber = w.zero();
    for k in 3..=cut {
        let l = w.l(k as i64, &one, 1 - k as i64)?;
        let c = (rat_int(1) - two(k - 1)) * (rat_int(1) - BigRational::new(1.into(), BigInt::from(3).pow(k)));
        s = &s + &l.mul_rational(&(c * pk_over_k(p, k)));
    }
    for k in 2..=cut {
        let l = w.l(k as i64, &f, 1 - k as i64)?;
        s = &s + &l.mul_rational(&((rat_int(1) + two(k - 1)) * pk_over_k(p, k)));
    }
    w.record("prefactor", terms);
    w.record("k", cut);
    let v = &pre * &w.exp(&s)?;
    w.finish(&v, "jacobi-lfunction")
}

/// The classical truncations of [`gauss_expansion`] modulo `p`, `p²` and `p³`.
pub fn gauss_closed(p: u64, j: u32) -> Result<ExpansionResult> {
    let a = arith::two_square_rep(p)?.a;
    let (pa, pr) = (rat(2 * a, 1), rat_int(p));
    let q2 = fermat_quotient_exact(2, p);
    let v = match j {
        1 => pa,
        2 => (rat_int(1) + &q2 * &pr / rat_int(2)) * (pa - &pr / rat(2 * a, 1)),
        3 => {
            let first = pa - &pr / rat(2 * a, 1) - &pr * &pr / rat_int(8 * a.pow(3));
            let second = rat_int(1) + &q2 * &pr / rat_int(2) - &q2 * &q2 * &pr * &pr / rat_int(8)
                + rat_int(euler_number(p as usize - 3)) / rat_int(4) * &pr * &pr;
            first * second
        }
        _ => return Err(Error::OutOfRange(format!("closed forms exist for j ≤ 3, got {j}"))),
    };
    closed(p, j, &v, &format!("gauss-closed-{j}"))
}

/// The classical truncations of [`jacobi_expansion`] modulo `p`, `p²` and `p³`.
pub fn jacobi_closed(p: u64, j: u32) -> Result<ExpansionResult> {
    let r = arith::eisenstein_rep(p)?.r;
    let pr = rat_int(p);
    let v = match j {
        1 => rat_int(-r),
        2 => rat_int(-r) + &pr / rat_int(r),
        3 => {
            let first = rat_int(-r) + &pr / rat_int(r) + &pr * &pr / rat_int(r.pow(3));
            let b = bernoulli_poly(p as usize - 2, &rat(1, 3));
            first * (rat_int(1) + b * &pr * &pr / rat_int(6))
        }
        _ => return Err(Error::OutOfRange(format!("closed forms exist for j ≤ 3, got {j}"))),
    };
    closed(p, j, &v, &format!("jacobi-closed-{j}"))
}
