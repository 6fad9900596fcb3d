//! Wilson quotients: `(p-1)!` and `((p-1)/2)!`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::harmonic::closed;
use super::{bern, ExpansionResult, Work};
use crate::arith::{self, rat, rat_int, BigRational};
use crate::error::{Error, Result};
use crate::padic::PadicContext;

fn check_p(p: u64) -> Result<()> {
    if p < 5 || !arith::is_prime(p) {
        return Err(Error::OutOfRange(format!("needs a prime p ≥ 5, got {p}")));
    }
    Ok(())
}

/// `V_{p,i} = p B_{i(p-1)}/(p-1) - 1`.
pub fn v_p(p: u64, i: u64) -> BigRational {
    rat_int(p) * bern((i * (p - 1)) as i64) / rat_int(p - 1) - rat_int(1)
}

/// The mod `p⁴` polynomial in `V_{p,1..3}`; `c` is the `B_{p-3}` coefficient.
fn fourth_order(p: u64, c: BigRational) -> BigRational {
    let (v1, v2, v3) = (v_p(p, 1), v_p(p, 2), v_p(p, 3));
    let pi = p as i64;
    let mix = rat_int(2) * &v1 - &v2 / rat_int(2);
    let bernoulli = c * bern(pi - 3) - rat(3, 2) * bern(2 * pi - 4) + rat(2, 3) * bern(3 * pi - 5);
    rat_int(-1) - rat_int(3) * &v1 + rat(3, 2) * &v2
        - &v3 / rat_int(3)
        - &mix * &mix / rat_int(2)
        - &v1 * &v1 * &v1 / rat_int(6)
        + bernoulli * rat_int(BigInt::from(p).pow(3))
}

/// `(p-1)!` modulo `p^m`.
///
/// For `m ≤ 4` this is the polynomial in `V_{p,i}` and three Bernoulli
/// numbers; beyond that the log expansion of [`wilson_log_rhs`] is used.
pub fn wilson_rhs(p: u64, m: u32, ctx: &PadicContext) -> Result<ExpansionResult> {
    check_p(p)?;
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    if m > 4 {
        return wilson_log_rhs(p, m, ctx);
    }
    closed(p, m, &fourth_order(p, rat_int(1)), "wilson-fourth")
}

/// The classical statements: `-1` mod `p`, `pB_{p-1} - p` mod `p²`, and the
/// mod `p³` form in `pB_{2p-2}/(2p-2)` and `pB_{p-1}/(p-1)`.
pub fn wilson_classical_rhs(p: u64, j: u32) -> Result<ExpansionResult> {
    check_p(p)?;
    let pr = rat_int(p);
    let v = match j {
        1 => rat_int(-1),
        2 => &pr * bern(p as i64 - 1) - &pr,
        3 => {
            let a = &pr * bern(2 * p as i64 - 2) / rat_int(2 * p - 2);
            let b = &pr * bern(p as i64 - 1) / rat_int(p - 1);
            a - &b - &b * &b / rat_int(2)
        }
        _ => return Err(Error::OutOfRange(format!("classical forms exist for j ≤ 3, got {j}"))),
    };
    closed(p, j, &v, &format!("wilson-classical-{j}"))
}

/// `log(-(p-1)!)` as an exact rational, accurate modulo `p^m`.
pub fn wilson_log_series(p: u64, m: u32) -> BigRational {
    let mut tot = rat_int(0);
    for n in 1..m as u64 {
        let mut inner = rat_int(0);
        for j in 1..=n {
            let big_n = j * (p - 1);
            let mut s = rat_int(0);
            for k in 0..=big_n.min(m as u64 + 1) {
                let b = bern((big_n - k) as i64);
                if b.is_zero() {
                    continue;
                }
                s += rat_int(BigInt::from(arith::binomial(big_n + 1, k + 1)))
                    * b
                    * rat_int(BigInt::from(p).pow(k as u32 + 1));
            }
            let c = BigInt::from(arith::binomial(n, j)) * if j % 2 == 1 { 1 } else { -1 };
            inner += rat_int(c) / rat_int(big_n + 1) * s;
        }
        tot += inner / rat_int(n);
    }
    tot /= rat_int(p - 1);
    for n in 1..m as i64 {
        tot -= rat(1, n);
    }
    tot
}

/// `(p-1)! = -exp(log(-(p-1)!))` modulo `p^m`.
pub fn wilson_log_rhs(p: u64, m: u32, ctx: &PadicContext) -> Result<ExpansionResult> {
    check_p(p)?;
    if ctx.prime() != p {
        return Err(Error::PrimeMismatch {
            left: p,
            right: ctx.prime(),
        });
    }
    let mut w = Work::new(ctx, m)?;
    let s = w.q(&wilson_log_series(p, m));
    w.record("n", m.saturating_sub(1));
    w.record("k", m + 1);
    let v = -w.exp(&s)?;
    w.finish(&v, "wilson-log")
}

/// `(-1)^{(p-1)/2} 4^{p-1} ((p-1)/2)!²` modulo `p⁴`.
pub fn half_factorial_square_rhs(p: u64) -> Result<ExpansionResult> {
    check_p(p)?;
    closed(p, 4, &fourth_order(p, rat(13, 12)), "half-factorial-square")
}

/// Number of quadratic nonresidues below `p/2`, as a sign `(-1)^N`.
fn nonresidue_sign(p: u64) -> i64 {
    if arith::nonresidue_count_below_half(p) % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `((p-1)/2)! ≡ (-1)^N (mod p)` for `p ≡ 3 (mod 4)`.
pub fn dirichlet_rhs(p: u64) -> Result<ExpansionResult> {
    if p % 4 != 3 || !arith::is_prime(p) {
        return Err(Error::BadResidueClass {
            p,
            requirement: "a prime congruent to 3 mod 4",
        });
    }
    closed(p, 1, &rat_int(nonresidue_sign(p)), "dirichlet")
}

/// `2^{p-1}((p-1)/2)!` modulo `p⁴` for `p ≡ 3 (mod 4)`, `p ≥ 7`.
pub fn dirichlet_half_factorial_rhs(p: u64, _ctx: &PadicContext) -> Result<ExpansionResult> {
    if p % 4 != 3 || !arith::is_prime(p) {
        return Err(Error::BadResidueClass {
            p,
            requirement: "a prime congruent to 3 mod 4",
        });
    }
    if p < 7 {
        return Err(Error::OutOfRange("this form needs p ≥ 7".into()));
    }
    let (v1, v2, v3) = (v_p(p, 1), v_p(p, 2), v_p(p, 3));
    let pi = p as i64;
    let mix = rat_int(2) * &v1 - &v2 / rat_int(2);
    let bernoulli = rat(13, 24) * bern(pi - 3) - rat(3, 4) * bern(2 * pi - 4) + rat(1, 3) * bern(3 * pi - 5);
    let body = rat_int(1) + rat(3, 2) * &v1 - rat(3, 4) * &v2
        + &v3 / rat_int(6)
        + &mix * &mix / rat_int(8)
        + &v1 * &v1 * &v1 / rat_int(48)
        - bernoulli * rat_int(BigInt::from(p).pow(3));
    closed(p, 4, &(rat_int(nonresidue_sign(p)) * body), "dirichlet-fourth")
}

/// The four congruences `V_{p,i} ≡ 0 (mod p)`, `2V_1 - V_2 ≡ 3V_2 - 2V_3 ≡ 0 (mod p²)`
/// and `3V_1 - 3V_2 + V_3 ≡ 0 (mod p³)`, in exact arithmetic.
pub fn vpi_lemma_check(p: u64) -> bool {
    if p < 5 || !arith::is_prime(p) {
        return false;
    }
    let (v1, v2, v3) = (v_p(p, 1), v_p(p, 2), v_p(p, 3));
    let at_least = |x: &BigRational, k: i64| arith::valuation_rat(x, p).is_none_or(|v| v >= k);
    [&v1, &v2, &v3].iter().all(|v| at_least(v, 1))
        && at_least(&(rat_int(2) * &v1 - &v2), 2)
        && at_least(&(rat_int(3) * &v2 - rat_int(2) * &v3), 2)
        && at_least(&(rat_int(3) * &v1 - rat_int(3) * &v2 + &v3), 3)
}
