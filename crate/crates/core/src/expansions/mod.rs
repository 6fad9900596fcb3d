//! Right-hand sides of the expansion theorems and their closed forms.
//!
//! Every evaluator returns an [`ExpansionResult`]: a residue modulo `p^j`
//! together with the series cuts that produced it. Internally all values are
//! [`PadicNumber`]s carried at `j + guard + 2` digits, and every
//! `exp(Σ ...)` is formed by summing the logarithmic series first and
//! applying the exponential once.

mod binomial;
mod gamma;
mod gauss;
mod harmonic;
mod hmhs;
mod wilson;

pub use binomial::*;
pub use gamma::*;
pub use gauss::*;
pub use harmonic::*;
pub use hmhs::*;
pub use wilson::*;

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::arith::{self, rat_int, BigRational};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::lfunction;
use crate::padic::{exp_number, ilog, log1p_number, PadicContext, PadicInt, PadicNumber};

/// An evaluated right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionResult {
    pub value: PadicInt,
    pub modulus_exponent: u32,
    pub theorem_tag: String,
    pub truncation_orders: BTreeMap<String, u32>,
}

/// Parameters of a harmonic sum `Σ_{k ≤ [dp/r], p∤k} k^{-m}` modulo `p^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarmonicSumSpec {
    pub d: u64,
    pub r: u64,
    pub m: u64,
    pub j: u32,
}

impl HarmonicSumSpec {
    pub fn new(d: u64, r: u64, m: u64, j: u32) -> Self {
        Self { d, r, m, j }
    }
}

/// Shared precision bookkeeping for one evaluation.
pub(crate) struct Work {
    pub p: u64,
    pub j: u32,
    pub prec: i64,
    pub ctx: PadicContext,
    cuts: BTreeMap<String, u32>,
}

impl Work {
    pub fn new(ctx: &PadicContext, j: u32) -> Result<Self> {
        if j == 0 {
            return Err(Error::OutOfRange("target exponent must be positive".into()));
        }
        let p = ctx.prime();
        let w = j + ctx.guard() + 2;
        let inner = PadicContext::with_guard(p, w, ctx.guard())?;
        Ok(Self {
            p,
            j,
            prec: w as i64,
            ctx: inner,
            cuts: BTreeMap::new(),
        })
    }

    /// Cut for series whose `k`-th term is `p^k/k` times an L-value.
    ///
    /// Such a term has valuation at least `k - 1 - 2 floor(log_p k)` (the
    /// L-value can carry a simple pole), so everything past the cut vanishes
    /// modulo `p^j`; the guard adds a few spare terms.
    pub fn cut(&self) -> u32 {
        let bound = |k: u32| k as i64 - 1 - 2 * ilog(self.p, k as u64) as i64;
        let mut k = 1u32;
        // the bound dips at powers of p, so require it on a full window
        while !(k..k + self.p as u32 * 2).all(|x| bound(x) >= self.j as i64) {
            k += 1;
        }
        k.saturating_sub(1) + self.ctx.guard()
    }

    pub fn record(&mut self, name: &str, order: u32) {
        self.cuts.insert(name.to_string(), order);
    }

    pub fn q(&self, x: &BigRational) -> PadicNumber {
        PadicNumber::from_rational(self.p, self.prec, x)
    }

    pub fn int(&self, x: impl Into<BigInt>) -> PadicNumber {
        PadicNumber::from_int(self.p, self.prec, &x.into())
    }

    pub fn zero(&self) -> PadicNumber {
        PadicNumber::zero(self.p, self.prec)
    }

    pub fn l(&self, s: i64, psi: &DirichletCharacter, e: i64) -> Result<PadicNumber> {
        lfunction::lp_value(s, psi, e, &self.ctx)
    }

    /// `log_p x` for an integer `x ≡ 1 (mod p)`.
    pub fn log_int(&self, x: &BigInt) -> Result<PadicNumber> {
        let y = self.int(x - 1);
        if y.valuation().is_some_and(|v| v < 1) {
            return Err(Error::OutOfDomain("log_p"));
        }
        Ok(log1p_number(&y, self.prec))
    }

    /// `log_p(a^{p-1})`.
    pub fn log_fermat(&self, a: u64) -> Result<PadicNumber> {
        self.log_int(&BigInt::from(a).pow(self.p as u32 - 1))
    }

    /// `log_p r^{p-1} + Σ_{q | r} log_p q^{p-1}/(q-1)`.
    pub fn log_correction(&self, r: u64) -> Result<PadicNumber> {
        let mut lg = self.log_fermat(r)?;
        for q in arith::factorize(r) {
            lg = &lg + &self.log_fermat(q)?.mul_rational(&arith::rat(1, q as i64 - 1));
        }
        Ok(lg)
    }

    pub fn exp(&self, s: &PadicNumber) -> Result<PadicNumber> {
        if s.valuation().is_some_and(|v| v < 1) {
            return Err(Error::OutOfDomain("exp"));
        }
        Ok(exp_number(s, self.prec.min(s.precision())))
    }

    pub fn bq_disp(&self, k: u32, m: i64, psi: &DirichletCharacter) -> Result<PadicNumber> {
        lfunction::bernoulli_quotient_display(k, m, psi, &self.ctx)
    }

    pub fn euler_big(&self, k: u32, m: i64) -> Result<PadicNumber> {
        lfunction::euler_quotient(k, m, &self.ctx)
    }

    pub fn finish(self, v: &PadicNumber, tag: &str) -> Result<ExpansionResult> {
        Ok(ExpansionResult {
            value: v.to_padic_int(self.j)?,
            modulus_exponent: self.j,
            theorem_tag: tag.to_string(),
            truncation_orders: self.cuts,
        })
    }
}

/// `(a^{p-1} - 1)/p` as an exact rational.
pub(crate) fn fermat_quotient_exact(a: u64, p: u64) -> BigRational {
    BigRational::new(BigInt::from(a).pow(p as u32 - 1) - 1, BigInt::from(p))
}

pub(crate) fn bern(n: i64) -> BigRational {
    assert!(n >= 0, "Bernoulli index must be non-negative");
    crate::bernoulli::bernoulli_number(n as usize)
}

pub(crate) fn rat_pow(base: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::new(base.numer().pow(e as u32), base.denom().pow(e as u32))
    } else {
        BigRational::new(base.denom().pow((-e) as u32), base.numer().pow((-e) as u32))
    }
}

pub(crate) fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// `C(x, n)` for integer `x` as a rational.
pub(crate) fn binom_rat(x: i64, n: u64) -> BigRational {
    rat_int(arith::binomial_signed(x, n))
}
