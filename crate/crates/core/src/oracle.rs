//! Brute-force left-hand sides: direct sums and products modulo `p^N`.
//!
//! Nothing here uses a series, a Bernoulli number or an L-value.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::arith::{self, BigRational};
use crate::error::{Error, Result};
use crate::padic::PadicInt;

/// Upper bound on `n` for exact binomial coefficients.
pub const BINOMIAL_LIMIT: u64 = 200_000;

/// Default number of tuples the HMHS enumeration may visit.
pub const ENUMERATION_BUDGET: u64 = 2_000_000;

/// A residue computed by direct arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleValue {
    pub value: PadicInt,
    pub description: String,
}

impl OracleValue {
    fn new(p: u64, n: u32, residue: u64, description: String) -> Self {
        Self {
            value: PadicInt::from_residue(p, n, BigUint::from(residue)),
            description,
        }
    }

    pub fn prime(&self) -> u64 {
        self.value.prime()
    }

    pub fn precision(&self) -> u32 {
        self.value.precision()
    }
}

/// Modular arithmetic with a modulus below `2^64`.
#[derive(Clone, Copy)]
struct Ring {
    m: u64,
}

impl Ring {
    fn new(p: u64, n: u32) -> Result<Self> {
        let m = p
            .checked_pow(n)
            .ok_or_else(|| Error::RangeTooLarge(format!("{p}^{n} does not fit in 64 bits")))?;
        Ok(Self { m })
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.m as u128) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.m as u128) as u64
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.m - b % self.m)
    }

    fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.m;
        b %= self.m;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> Result<u64> {
        let r = arith::mod_inverse(&BigInt::from(a), &BigUint::from(self.m))?;
        Ok(r.to_u64().expect("below modulus"))
    }
}

/// Range of summation `k ≤ [dp/r]`, `p ∤ k`.
fn partial_range(d: u64, r: u64, p: u64) -> Result<impl Iterator<Item = u64>> {
    if r == 0 || arith::gcd_u64(r, d * p) != 1 {
        return Err(Error::NotCoprime {
            a: r.to_string(),
            m: d * p,
        });
    }
    Ok((1..=d * p / r).filter(move |k| k % p != 0))
}

/// `Σ_{k ≤ [dp/r], p∤k} k^{-m}` modulo `p^N`.
pub fn harmonic_sum_mod(d: u64, r: u64, m: u64, p: u64, n: u32) -> Result<OracleValue> {
    let ring = Ring::new(p, n)?;
    let mut acc = 0;
    for k in partial_range(d, r, p)? {
        acc = ring.add(acc, ring.inv(ring.pow(k, m))?);
    }
    Ok(OracleValue::new(p, n, acc, format!("H(d={d},r={r};m={m})")))
}

/// `Σ_{k=1}^{[p/r]} 1/(p - rk)` modulo `p^N`.
pub fn lemher_shifted_sum_mod(r: u64, p: u64, n: u32) -> Result<OracleValue> {
    if r >= p {
        return Err(Error::OutOfRange(format!("needs p > r, got p = {p}, r = {r}")));
    }
    let ring = Ring::new(p, n)?;
    let mut acc = 0;
    for k in 1..=p / r {
        acc = ring.add(acc, ring.inv(p - r * k)?);
    }
    Ok(OracleValue::new(p, n, acc, format!("S(r={r})")))
}

/// How [`hmhs_mod_with`] evaluates a multiple harmonic sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HmhsMethod {
    /// Expand `Π (1 ± x_k t)^{±1}` term by term.
    Product,
    /// Newton's identities from the power sums.
    Newton,
    /// Visit every index tuple, up to the given number of tuples.
    Enumerate { budget: u64 },
}

/// Strict (`k_1 < ... < k_n`) or non-strict (`≤`) homogeneous sum of `(k_1...k_n)^{-m}`
/// over `k_i ≤ [dp/r]`, `p ∤ k_i`, modulo `p^N`.
pub fn hmhs_mod(d: u64, r: u64, m: u64, n: u64, strict: bool, p: u64, big_n: u32) -> Result<OracleValue> {
    hmhs_mod_with(d, r, m, n, strict, p, big_n, HmhsMethod::Product)
}

#[allow(clippy::too_many_arguments)]
pub fn hmhs_mod_with(
    d: u64,
    r: u64,
    m: u64,
    n: u64,
    strict: bool,
    p: u64,
    big_n: u32,
    method: HmhsMethod,
) -> Result<OracleValue> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let ring = Ring::new(p, big_n)?;
    let xs = partial_range(d, r, p)?
        .map(|k| ring.inv(ring.pow(k, m)))
        .collect::<Result<Vec<_>>>()?;
    let n = n as usize;
    let value = match method {
        HmhsMethod::Product => {
            let mut e = vec![0u64; n + 1];
            e[0] = 1;
            for &x in &xs {
                if strict {
                    for i in (1..=n).rev() {
                        e[i] = ring.add(e[i], ring.mul(e[i - 1], x));
                    }
                } else {
                    for i in 1..=n {
                        e[i] = ring.add(e[i], ring.mul(e[i - 1], x));
                    }
                }
            }
            e[n]
        }
        HmhsMethod::Newton => {
            let power: Vec<u64> = (1..=n as u64)
                .map(|i| xs.iter().fold(0, |acc, &x| ring.add(acc, ring.pow(x, i))))
                .collect();
            let mut e = vec![1u64];
            for k in 1..=n {
                let mut acc = 0;
                for i in 1..=k {
                    let t = ring.mul(e[k - i], power[i - 1]);
                    acc = if strict && i % 2 == 0 {
                        ring.sub(acc, t)
                    } else {
                        ring.add(acc, t)
                    };
                }
                e.push(ring.mul(acc, ring.inv(k as u64)?));
            }
            e[n]
        }
        HmhsMethod::Enumerate { budget } => enumerate(&xs, n, strict, ring, budget)?,
    };
    let kind = if strict { "M" } else { "Mbar" };
    Ok(OracleValue::new(
        p,
        big_n,
        value,
        format!("{kind}(d={d},r={r},m={m};n={n})"),
    ))
}

fn enumerate(xs: &[u64], n: usize, strict: bool, ring: Ring, budget: u64) -> Result<u64> {
    let len = xs.len() as u64;
    let count = if strict {
        arith::binomial(len, n as u64)
    } else {
        arith::binomial(len + n as u64 - 1, n as u64)
    };
    if count > BigUint::from(budget) {
        return Err(Error::RangeTooLarge(format!(
            "{count} index tuples exceed the budget {budget}"
        )));
    }
    fn walk(xs: &[u64], start: usize, left: usize, strict: bool, acc: u64, ring: Ring, total: &mut u64) {
        if left == 0 {
            *total = ring.add(*total, acc);
            return;
        }
        for i in start..xs.len() {
            let next = if strict { i + 1 } else { i };
            walk(xs, next, left - 1, strict, ring.mul(acc, xs[i]), ring, total);
        }
    }
    let mut total = 0;
    walk(xs, 0, n, strict, 1 % ring.m, ring, &mut total);
    Ok(total)
}

/// `Π_{j ≤ k} j` modulo `p^N`, optionally skipping multiples of `p`.
pub fn factorial_mod(k: u64, p: u64, n: u32, omit_p_multiples: bool) -> Result<OracleValue> {
    let ring = Ring::new(p, n)?;
    let acc = (1..=k)
        .filter(|j| !omit_p_multiples || j % p != 0)
        .fold(1 % ring.m, |acc, j| ring.mul(acc, j % ring.m));
    let tag = if omit_p_multiples {
        "prime-to-p factorial"
    } else {
        "factorial"
    };
    Ok(OracleValue::new(p, n, acc, format!("{tag}({k})")))
}

/// Exact `C(n, k)` reduced modulo `p^N`.
pub fn binomial_mod(n: u64, k: u64, p: u64, big_n: u32) -> Result<OracleValue> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    if n > BINOMIAL_LIMIT {
        return Err(Error::RangeTooLarge(format!("n = {n} exceeds {BINOMIAL_LIMIT}")));
    }
    let ring = Ring::new(p, big_n)?;
    let c = arith::binomial(n, k) % ring.m;
    Ok(OracleValue::new(
        p,
        big_n,
        c.to_u64().expect("reduced"),
        format!("C({n},{k})"),
    ))
}

/// An exact rational quantity (a ratio of binomials, a signed power...) modulo `p^N`.
pub fn rational_mod(q: &BigRational, p: u64, n: u32, description: &str) -> Result<OracleValue> {
    Ok(OracleValue {
        value: PadicInt::from_rational(q, p, n)?,
        description: description.to_string(),
    })
}

/// `C(x, k)` for any integer `x`, exactly.
pub fn generalized_binomial(x: i64, k: u64) -> Result<BigInt> {
    if x.unsigned_abs() + k > BINOMIAL_LIMIT {
        return Err(Error::RangeTooLarge(format!("C({x}, {k})")));
    }
    Ok(arith::binomial_signed(x, k))
}
