//! Morita's `p`-adic gamma function on integer representatives.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use super::ExpansionResult;
use crate::arith::{self, pow_u, rat, rat_int, BigRational};
use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicInt};

/// Largest `p^N` for which the prefix table behind `Γ_p` is built.
pub const GAMMA_PRODUCT_LIMIT: u64 = 10_000_000;

/// Prefix products of the integers prime to `p`, modulo `p^n`.
///
/// Enough to get `Γ_p` at any integer and the unit part and valuation of any
/// factorial, since a full block of `p^n` consecutive units multiplies to `-1`.
struct FreeProducts {
    p: u64,
    n: u32,
    m: u64,
    prefix: Vec<u64>,
}

impl FreeProducts {
    fn new(p: u64, n: u32) -> Result<Self> {
        let m = pow_u(p, n)
            .to_u64()
            .filter(|&m| m <= GAMMA_PRODUCT_LIMIT)
            .ok_or_else(|| Error::RangeTooLarge(format!("p^N = {p}^{n} exceeds {GAMMA_PRODUCT_LIMIT}")))?;
        let mut prefix = Vec::with_capacity(m as usize);
        let mut acc = 1u64;
        prefix.push(1);
        for j in 1..m {
            if j % p != 0 {
                acc = arith::mul_mod(acc, j, m);
            }
            prefix.push(acc);
        }
        Ok(Self { p, n, m, prefix })
    }

    /// `Π_{j ≤ x, p∤j} j mod p^n`.
    fn upto(&self, x: u64) -> u64 {
        let v = self.prefix[(x % self.m) as usize];
        if (x / self.m) % 2 == 1 {
            self.m - v
        } else {
            v
        }
    }

    /// `Γ_p(k)` for `1 ≤ k ≤ p^n`.
    fn gamma(&self, k: u64) -> u64 {
        let v = self.upto(k - 1);
        if k % 2 == 1 {
            (self.m - v) % self.m
        } else {
            v
        }
    }

    /// `x! = u p^e`, returned as `(u mod p^n, e)`.
    fn factorial(&self, mut x: u64) -> (u64, u64) {
        let (mut u, mut e) = (1u64, 0u64);
        while x > 0 {
            u = arith::mul_mod(u, self.upto(x), self.m);
            x /= self.p;
            e += x;
        }
        (u, e)
    }

    /// Unit part and valuation of `Π C(n_i, k_i)^{±1}`.
    fn binomial_ratio(&self, num: &[(u64, u64)], den: &[(u64, u64)]) -> Result<PadicInt> {
        let (mut top, mut bottom, mut v) = (1u64, 1u64, 0i64);
        let mut fold = |n: u64, k: u64, up: bool| {
            let (a, ea) = self.factorial(n);
            let (b, eb) = self.factorial(k);
            let (c, ec) = self.factorial(n - k);
            let e = ea as i64 - eb as i64 - ec as i64;
            let (x, y) = if up {
                (&mut top, &mut bottom)
            } else {
                (&mut bottom, &mut top)
            };
            *x = arith::mul_mod(*x, a, self.m);
            *y = arith::mul_mod(arith::mul_mod(*y, b, self.m), c, self.m);
            v += if up { e } else { -e };
        };
        num.iter().for_each(|&(n, k)| fold(n, k, true));
        den.iter().for_each(|&(n, k)| fold(n, k, false));
        if v < 0 {
            return Err(Error::NotDivisible {
                p: self.p,
                k: (-v) as u32,
            });
        }
        let unit = PadicInt::from_residue(self.p, self.n, BigUint::from(top))
            .checked_mul(&PadicInt::from_residue(self.p, self.n, BigUint::from(bottom)).inverse()?)?;
        let scale = PadicInt::new(self.p, self.n, &BigInt::from(self.p).pow(v.min(self.n as i64) as u32));
        unit.checked_mul(&scale)
    }
}

/// `Γ_p(k) = (-1)^k Π_{j<k, p∤j} j` modulo `p^n`, with `k` reduced into `[1, p^n]`.
pub fn gamma_p_int(k: &BigInt, p: u64, n: u32) -> Result<PadicInt> {
    let table = FreeProducts::new(p, n)?;
    Ok(gamma_from(&table, k))
}

fn gamma_from(table: &FreeProducts, k: &BigInt) -> PadicInt {
    let mut k = arith::reduce(k, &BigUint::from(table.m))
        .to_u64()
        .expect("reduced below p^n");
    if k == 0 {
        k = table.m;
    }
    PadicInt::from_residue(table.p, table.n, BigUint::from(table.gamma(k)))
}

/// `Γ_p(x)` for a `p`-integral rational `x`, at the context's working precision.
pub fn gamma_p(x: &BigRational, ctx: &PadicContext) -> Result<PadicInt> {
    let p = ctx.prime();
    let n = ctx.working_precision();
    let r = arith::rational_to_residue(x, p, n)?;
    gamma_p_int(&BigInt::from(r), p, n)
}

/// Right-hand side of
/// `C((a+b)(p-1)/m, a(p-1)/m) = -Γ_p(1-(a+b)/m)/(Γ_p(1-a/m)Γ_p(1-b/m)) · lim_k R_k`,
/// with the limit truncated at level `k = N + 1` for working precision `N`.
pub fn gamma_limit_rhs(a: u64, b: u64, m: u64, ctx: &PadicContext) -> Result<ExpansionResult> {
    let p = ctx.prime();
    let n = ctx.working_precision();
    if m == 0 || !(p - 1).is_multiple_of(m) || a == 0 || b == 0 || a + b > m {
        return Err(Error::OutOfRange(format!(
            "needs p ≡ 1 (mod m) and 1 ≤ a, b with a + b ≤ m; got a = {a}, b = {b}, m = {m}, p = {p}"
        )));
    }
    let k = n + 1;
    let pk = p
        .checked_pow(k)
        .ok_or_else(|| Error::RangeTooLarge(format!("{p}^{k}")))?;
    let pk1 = pk / p;
    let table = FreeProducts::new(p, n)?;
    let ratio = table.binomial_ratio(
        &[
            (a * (pk - 1) / m, a * (p - 1) / m),
            (b * (pk - 1) / m, b * (p - 1) / m),
            ((a + b) * (pk1 - 1) / m, a * (pk1 - 1) / m),
        ],
        &[
            ((a + b) * (pk - 1) / m, (a + b) * (p - 1) / m),
            ((a + b) * (pk - p) / m, a * (pk - p) / m),
        ],
    )?;
    let g = |x: BigRational| -> Result<PadicInt> {
        let r = arith::rational_to_residue(&x, p, n)?;
        Ok(gamma_from(&table, &BigInt::from(r)))
    };
    let one = rat_int(1);
    let top = g(&one - rat((a + b) as i64, m as i64))?;
    let bottom = g(&one - rat(a as i64, m as i64))?.checked_mul(&g(&one - rat(b as i64, m as i64))?)?;
    let prefactor = top.neg().checked_mul(&bottom.inverse()?)?;
    let value = prefactor.checked_mul(&ratio)?;
    Ok(ExpansionResult {
        value,
        modulus_exponent: n,
        theorem_tag: "gamma-limit".into(),
        truncation_orders: [("k".to_string(), k)].into_iter().collect(),
    })
}
