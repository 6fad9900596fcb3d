//! Harmonic sums over full and partial periods.

use num_bigint::BigInt;

use super::{bern, binom_rat, fermat_quotient_exact, sign, ExpansionResult, HarmonicSumSpec, Work};
use crate::arith::{self, rat, rat_int, BigRational};
use crate::bernoulli::bp_operator_exact;
use crate::characters::{euler_factor_d_exact, real_characters_dividing, trivial_character, DirichletCharacter};
use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicNumber};

/// How the big-index Bernoulli data enters a finite expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BernoulliVariant {
    /// Alternating combinations `B_p(m, k; ψ)` of small-index quotients.
    Operator,
    /// Single quotients `B_N/(p^{k-1} + m - 1)` at big indices.
    SingleTerm,
}

fn check_spec(spec: &HarmonicSumSpec, p: u64) -> Result<()> {
    if spec.d == 0 || spec.m == 0 {
        return Err(Error::OutOfRange("d and m must be positive".into()));
    }
    if arith::gcd_u64(spec.r, spec.d * p) != 1 {
        return Err(Error::NotCoprime {
            a: spec.r.to_string(),
            m: spec.d * p,
        });
    }
    Ok(())
}

fn check_finite_bound(spec: &HarmonicSumSpec, p: u64) -> Result<()> {
    if spec.j as u64 + spec.m > p - 1 {
        return Err(Error::OutOfRange(format!(
            "j + m = {} exceeds p - 1 = {}",
            spec.j as u64 + spec.m,
            p - 1
        )));
    }
    Ok(())
}

fn dp_pow(d: u64, p: u64, n: u64) -> BigRational {
    rat_int(BigInt::from(d * p).pow(n as u32))
}

/// `Σ_{k ≤ dp, p∤k} k^{-m} = -Σ_{n≥1} C(-m, n) L_p(m+n, ω^{1-m-n}) (dp)^n`.
pub fn washington_rhs(spec: &HarmonicSumSpec, ctx: &PadicContext) -> Result<ExpansionResult> {
    let p = ctx.prime();
    if spec.r != 1 {
        return Err(Error::OutOfRange("full-period sums take r = 1".into()));
    }
    check_spec(spec, p)?;
    let mut w = Work::new(ctx, spec.j)?;
    let one = trivial_character();
    let m = spec.m as i64;
    let cut = w.cut();
    let mut acc = w.zero();
    for n in 1..=cut as u64 {
        let l = w.l(m + n as i64, &one, 1 - m - n as i64)?;
        let c = binom_rat(-m, n) * dp_pow(spec.d, p, n);
        acc = &acc - &l.mul_rational(&c);
    }
    w.record("n", cut);
    w.finish(&acc, "harmonic-lfunction")
}

/// `B_p(m, k; ψ)` or its single-quotient stand-in, both `≡ -B_{N,ψ}/N (mod p^k)`.
fn bernoulli_term(
    w: &Work,
    variant: BernoulliVariant,
    m: u64,
    k: u32,
    psi: &DirichletCharacter,
) -> Result<PadicNumber> {
    match variant {
        BernoulliVariant::Operator => Ok(w.q(&bp_operator_exact(w.p, m, k as u64, psi)?)),
        BernoulliVariant::SingleTerm => w.bq_disp(k, m as i64, psi),
    }
}

/// Finite form of the full-period sum: `-Σ_{n=1}^{j-1} X_n C(-m, n)(dp)^n`.
pub fn corollary_c1_rhs(
    spec: &HarmonicSumSpec,
    variant: BernoulliVariant,
    ctx: &PadicContext,
) -> Result<ExpansionResult> {
    let p = ctx.prime();
    if spec.r != 1 {
        return Err(Error::OutOfRange("full-period sums take r = 1".into()));
    }
    check_spec(spec, p)?;
    check_finite_bound(spec, p)?;
    let mut w = Work::new(ctx, spec.j)?;
    let one = trivial_character();
    let m = spec.m;
    let mut acc = w.zero();
    for n in 1..spec.j as u64 {
        let x = bernoulli_term(&w, variant, m + n, spec.j - n as u32, &one)?;
        acc = &acc - &x.mul_rational(&(binom_rat(-(m as i64), n) * dp_pow(spec.d, p, n)));
    }
    w.record("n", spec.j.saturating_sub(1));
    let tag = match variant {
        BernoulliVariant::Operator => "harmonic-operator",
        BernoulliVariant::SingleTerm => "harmonic-quotient",
    };
    w.finish(&acc, tag)
}

fn check_r(r: u64) -> Result<()> {
    if matches!(r, 2 | 3 | 4 | 6) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "r = {r} (partial sums take r ∈ {{2, 3, 4, 6}})"
        )))
    }
}

/// `Σ_{k ≤ [dp/r], p∤k} k^{-m}` through L-values of the characters of conductor dividing `r`.
pub fn lemher_rhs(spec: &HarmonicSumSpec, ctx: &PadicContext) -> Result<ExpansionResult> {
    let p = ctx.prime();
    check_r(spec.r)?;
    check_spec(spec, p)?;
    let mut w = Work::new(ctx, spec.j)?;
    let (r, m) = (spec.r, spec.m as i64);
    let phi_r = arith::totient(r) as i64;
    let dp = (spec.d * p) as i64;
    let cut = w.cut();
    let mut acc;
    if m == 1 {
        acc = -w.log_correction(r)?.mul_rational(&rat(1, p as i64));
        for psi in real_characters_dividing(r)? {
            let scale = rat(r as i64 * psi.value(-dp) as i64, phi_r);
            for n in 0..=cut as i64 {
                if n == 0 && psi.is_principal() {
                    continue;
                }
                let l = w.l(1 + n, &psi, -n)?;
                let c = euler_factor_d_exact(&psi, r, -1 - n)
                    * &scale
                    * rat_int(sign(n % 2 == 1))
                    * dp_pow(spec.d, p, n as u64);
                acc = &acc - &l.mul_rational(&c);
            }
        }
    } else {
        acc = w.l(m, &trivial_character(), 1 - m)?;
        for psi in real_characters_dividing(r)? {
            let scale = BigRational::new(BigInt::from(r).pow(m as u32) * psi.value(-dp), BigInt::from(phi_r));
            for n in 0..=cut as i64 {
                let l = w.l(m + n, &psi, 1 - m - n)?;
                let c = euler_factor_d_exact(&psi, r, -m - n)
                    * &scale
                    * binom_rat(-m, n as u64)
                    * dp_pow(spec.d, p, n as u64);
                acc = &acc - &l.mul_rational(&c);
            }
        }
    }
    w.record("n", cut);
    w.finish(&acc, "lemher-lfunction")
}

/// Finite form of the partial-period sum with Bernoulli data in place of L-values.
pub fn corollary_c2_rhs(
    spec: &HarmonicSumSpec,
    variant: BernoulliVariant,
    ctx: &PadicContext,
) -> Result<ExpansionResult> {
    let p = ctx.prime();
    check_r(spec.r)?;
    check_spec(spec, p)?;
    check_finite_bound(spec, p)?;
    let mut w = Work::new(ctx, spec.j)?;
    let (r, m, j) = (spec.r, spec.m, spec.j);
    let phi_r = arith::totient(r) as i64;
    let dp = (spec.d * p) as i64;
    let mut acc;
    if m == 1 {
        acc = -w.log_correction(r)?.mul_rational(&rat(1, p as i64));
        for psi in real_characters_dividing(r)? {
            for n in 0..j as u64 {
                if n == 0 && psi.is_principal() {
                    continue;
                }
                let x = bernoulli_term(&w, variant, 1 + n, j - n as u32, &psi)?;
                let c = euler_factor_d_exact(&psi, r, -1 - n as i64)
                    * rat(r as i64 * psi.value(-dp) as i64, phi_r)
                    * rat_int(BigInt::from(-dp).pow(n as u32));
                acc = &acc - &x.mul_rational(&c);
            }
        }
    } else {
        acc = bernoulli_term(&w, variant, m, j, &trivial_character())?;
        for psi in real_characters_dividing(r)? {
            let scale = BigRational::new(BigInt::from(r).pow(m as u32) * psi.value(-dp), BigInt::from(phi_r));
            for n in 0..j as u64 {
                let x = bernoulli_term(&w, variant, m + n, j - n as u32, &psi)?;
                let c = euler_factor_d_exact(&psi, r, -(m as i64) - n as i64)
                    * &scale
                    * binom_rat(-(m as i64), n)
                    * dp_pow(spec.d, p, n);
                acc = &acc - &x.mul_rational(&c);
            }
        }
    }
    w.record("n", j.saturating_sub(1));
    let tag = match variant {
        BernoulliVariant::Operator => "lemher-operator",
        BernoulliVariant::SingleTerm => "lemher-quotient",
    };
    w.finish(&acc, tag)
}

/// Closed forms for `r ∈ {2, 4}` in terms of ordinary Bernoulli and Euler quotients.
pub fn corollary_cj2_rhs(spec: &HarmonicSumSpec, ctx: &PadicContext) -> Result<ExpansionResult> {
    let p = ctx.prime();
    if !matches!(spec.r, 2 | 4) {
        return Err(Error::Unsupported(format!(
            "r = {} (this form takes r ∈ {{2, 4}})",
            spec.r
        )));
    }
    check_spec(spec, p)?;
    check_finite_bound(spec, p)?;
    let mut w = Work::new(ctx, spec.j)?;
    let (r, m, j) = (spec.r, spec.m as i64, spec.j);
    let one = trivial_character();
    let dp = (spec.d * p) as i64;
    let eta_sign = rat_int(sign(((dp - 1) / 2) % 2 == 1));
    let two = rat_int(2);
    let mut acc;
    if m > 1 {
        acc = w.bq_disp(j, m, &one)?;
        for n in 0..j as i64 {
            let c1 = if r == 2 {
                super::rat_pow(&two, m) - super::rat_pow(&two, -n)
            } else {
                super::rat_pow(&two, 2 * m - 1) - super::rat_pow(&two, m - n - 1)
            };
            let base = binom_rat(-m, n as u64) * dp_pow(spec.d, p, n as u64);
            let b = w.bq_disp(j - n as u32, m + n, &one)?;
            acc = &acc - &b.mul_rational(&(c1 * &base));
            if r == 4 {
                let e = w.euler_big(j - n as u32, m + n)?;
                acc = &acc + &e.mul_rational(&(&eta_sign * super::rat_pow(&two, 2 * m - 2) * &base));
            }
        }
    } else {
        let c = if r == 2 { 2 } else { 3 };
        acc = -w.log_fermat(2)?.mul_rational(&rat(c, p as i64));
        for n in 1..j as i64 {
            let b = w.bq_disp(j - n as u32, n + 1, &one)?;
            let c = (&two - super::rat_pow(&two, -n)) * rat_int(BigInt::from(-dp).pow(n as u32));
            acc = &acc - &b.mul_rational(&c);
        }
        if r == 4 {
            for n in 0..j as i64 {
                let e = w.euler_big(j - n as u32, n + 1)?;
                acc = &acc - &e.mul_rational(&(&eta_sign * dp_pow(spec.d, p, n as u64)));
            }
        }
    }
    w.record("n", j.saturating_sub(1));
    w.finish(&acc, "lemher-closed")
}

/// The four classical partial sums modulo `p²`, written with Fermat quotients:
/// `r = 2` is `Σ_{k ≤ p/2} 1/k`, the others are `Σ_{k ≤ p/r} 1/(p - rk)`.
pub fn lemher_classical_rhs(p: u64, r: u64) -> Result<ExpansionResult> {
    if p < 5 || p <= r {
        return Err(Error::OutOfRange(format!("p = {p} is too small for r = {r}")));
    }
    let q2 = fermat_quotient_exact(2, p);
    let q3 = fermat_quotient_exact(3, p);
    let pr = rat_int(p);
    let v = match r {
        2 => rat(-2, 1) * &q2 + &pr * &q2 * &q2,
        3 => &q3 / rat(2, 1) - &pr * &q3 * &q3 / rat(4, 1),
        4 => rat(3, 4) * &q2 - rat(3, 8) * &pr * &q2 * &q2,
        6 => &q3 / rat(4, 1) + &q2 / rat(3, 1) - &pr * &q3 * &q3 / rat(8, 1) - &pr * &q2 * &q2 / rat(6, 1),
        _ => return Err(Error::Unsupported(format!("r = {r}"))),
    };
    closed(p, 2, &v, &format!("lemher-classical-r{r}"))
}

/// `Σ_{k<p} k^{-m}`: `m/(m+1) p B_{p-m-1}` mod `p²` for even `m`,
/// `-m(m+1)/(2(m+2)) p² B_{p-m-2}` mod `p³` for odd `m`.
pub fn glaisher_rhs(p: u64, m: u64) -> Result<ExpansionResult> {
    if p < m + 3 {
        return Err(Error::OutOfRange(format!("needs p ≥ m + 3, got p = {p}, m = {m}")));
    }
    let (pi, mi) = (p as i64, m as i64);
    if m.is_multiple_of(2) {
        let v = rat(mi, mi + 1) * rat_int(pi) * bern(pi - mi - 1);
        closed(p, 2, &v, "glaisher-even")
    } else {
        let v = rat(-mi * (mi + 1), 2 * (mi + 2)) * rat_int(pi * pi) * bern(pi - mi - 2);
        closed(p, 3, &v, "glaisher-odd")
    }
}

/// Reduces an exact rational right-hand side modulo `p^j`.
pub(crate) fn closed(p: u64, j: u32, v: &BigRational, tag: &str) -> Result<ExpansionResult> {
    Ok(ExpansionResult {
        value: crate::padic::PadicInt::from_rational(v, p, j)?,
        modulus_exponent: j,
        theorem_tag: tag.to_string(),
        truncation_orders: Default::default(),
    })
}
