//! Truncated p-adic arithmetic.
//!
//! [`PadicInt`] is an element of `Z_p` known modulo `p^N` and follows the
//! min-rule for ring operations. [`PadicNumber`] is the `Q_p` companion used
//! inside evaluators where a `1/p` pole appears; it tracks absolute precision
//! through valuations so that cancellation never over-reports digits.

mod number;
mod series;

pub use number::PadicNumber;
pub use series::{angle, angle_pow, pexp, plog, teichmuller};
pub(crate) use series::{exp_number, ilog, log1p_number};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{self, pow_u, BigRational};
use crate::error::{Error, Result};

/// Default number of guard digits carried by evaluators.
pub const DEFAULT_GUARD: u32 = 2;

/// A `p`-adic integer known modulo `p^precision`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    precision: u32,
    residue: BigUint,
}

impl PadicInt {
    pub fn new(p: u64, precision: u32, value: &BigInt) -> Self {
        let residue = arith::reduce(value, &pow_u(p, precision));
        Self { p, precision, residue }
    }

    pub fn from_residue(p: u64, precision: u32, residue: BigUint) -> Self {
        let residue = residue % pow_u(p, precision);
        Self { p, precision, residue }
    }

    pub fn from_i64(p: u64, precision: u32, value: i64) -> Self {
        Self::new(p, precision, &BigInt::from(value))
    }

    pub fn from_rational(q: &BigRational, p: u64, precision: u32) -> Result<Self> {
        let residue = arith::rational_to_residue(q, p, precision)?;
        Ok(Self { p, precision, residue })
    }

    pub fn zero(p: u64, precision: u32) -> Self {
        Self::from_residue(p, precision, BigUint::zero())
    }

    pub fn one(p: u64, precision: u32) -> Self {
        Self::from_residue(p, precision, BigUint::one())
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        pow_u(self.p, self.precision)
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// `p`-adic valuation, capped at the precision for a zero residue.
    pub fn valuation(&self) -> u32 {
        if self.residue.is_zero() {
            return self.precision;
        }
        let mut v = 0;
        let mut r = self.residue.clone();
        while (&r % self.p).is_zero() {
            r /= self.p;
            v += 1;
        }
        v
    }

    /// Drops digits down to `precision` (a no-op when already coarser).
    pub fn truncate(&self, precision: u32) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        Self::from_residue(self.p, precision, self.residue.clone())
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let n = self.precision.min(other.precision);
        Ok(Self::from_residue(self.p, n, &self.residue + &other.residue))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let n = self.precision.min(other.precision);
        let m = pow_u(self.p, n);
        let a = &self.residue % &m;
        let b = &other.residue % &m;
        Ok(Self::from_residue(self.p, n, a + &m - b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let n = self.precision.min(other.precision);
        Ok(Self::from_residue(self.p, n, &self.residue * &other.residue))
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        Self::from_residue(self.p, self.precision, &m - &self.residue)
    }

    pub fn pow(&self, e: u64) -> Self {
        let m = self.modulus();
        Self {
            p: self.p,
            precision: self.precision,
            residue: self.residue.modpow(&BigUint::from(e), &m),
        }
    }

    /// Multiplicative inverse at the full precision of `self`.
    pub fn inverse(&self) -> Result<Self> {
        if (&self.residue % self.p).is_zero() {
            return Err(Error::NonUnit { p: self.p });
        }
        let inv = arith::mod_inverse(&BigInt::from(self.residue.clone()), &self.modulus())?;
        Ok(Self {
            p: self.p,
            precision: self.precision,
            residue: inv,
        })
    }

    /// Exact division by `p^k`; the result has `k` fewer guaranteed digits.
    pub fn divide_by_p(&self, k: u32) -> Result<Self> {
        let pk = pow_u(self.p, k);
        if !(&self.residue % &pk).is_zero() {
            return Err(Error::NotDivisible { p: self.p, k });
        }
        if self.precision <= k {
            return Err(Error::PrecisionExhausted {
                needed: k as i64 + 1,
                available: self.precision as i64,
            });
        }
        Ok(Self::from_residue(self.p, self.precision - k, &self.residue / pk))
    }

    /// Residue as a signed integer in `(-p^N/2, p^N/2]`.
    pub fn centered(&self) -> BigInt {
        let m = self.modulus();
        let r = BigInt::from(self.residue.clone());
        if &self.residue * 2u32 > m {
            r - BigInt::from(m)
        } else {
            r
        }
    }

    /// True when `self ≡ other (mod p^j)`, requiring both to carry `j` digits.
    pub fn congruent(&self, other: &Self, j: u32) -> bool {
        let m = pow_u(self.p, j);
        self.p == other.p
            && self.precision >= j
            && other.precision >= j
            && (&self.residue % &m) == (&other.residue % &m)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.p, self.precision)
    }
}

/// Prime and target precision shared by a computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    working_precision: u32,
    guard: u32,
}

impl PadicContext {
    pub fn new(p: u64, working_precision: u32) -> Result<Self> {
        Self::with_guard(p, working_precision, DEFAULT_GUARD)
    }

    pub fn with_guard(p: u64, working_precision: u32, guard: u32) -> Result<Self> {
        if p < 3 || !arith::is_prime(p) {
            return Err(Error::BadContext(format!("{p} is not an odd prime")));
        }
        if working_precision == 0 {
            return Err(Error::BadContext("working precision must be positive".into()));
        }
        Ok(Self {
            p,
            working_precision,
            guard,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn working_precision(&self) -> u32 {
        self.working_precision
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Precision used for intermediate values.
    pub fn internal_precision(&self) -> u32 {
        self.working_precision + self.guard
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        !a.mod_floor(&BigInt::from(self.p)).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(p: u64, n: u32, v: i64) -> PadicInt {
        PadicInt::from_i64(p, n, v)
    }

    #[test]
    fn ring_ops_follow_min_rule() {
        let x = pi(5, 3, 7);
        assert_eq!(x.checked_add(&pi(5, 3, 0)).unwrap(), x);
        let prod = pi(5, 2, 3).checked_mul(&pi(5, 2, 5)).unwrap();
        assert_eq!((prod.residue().clone(), prod.precision()), (15u32.into(), 2));
        let mixed = pi(5, 3, 7).checked_mul(&pi(5, 2, 3)).unwrap();
        assert_eq!(mixed.precision(), 2);
        assert_eq!(
            pi(5, 2, 1).checked_add(&pi(7, 2, 1)),
            Err(Error::PrimeMismatch { left: 5, right: 7 })
        );
        assert_eq!(pi(5, 2, 3).checked_sub(&pi(5, 2, 4)).unwrap(), pi(5, 2, -1));
    }

    #[test]
    fn inverses() {
        assert_eq!(pi(5, 3, 1).inverse().unwrap(), pi(5, 3, 1));
        assert_eq!(pi(5, 3, 24).inverse().unwrap().residue(), &BigUint::from(99u32));
        assert_eq!(pi(5, 3, 5).inverse(), Err(Error::NonUnit { p: 5 }));
    }

    #[test]
    fn division_by_p() {
        let z = pi(5, 3, 0).divide_by_p(1).unwrap();
        assert_eq!((z.is_zero(), z.precision()), (true, 2));
        let q = pi(5, 3, 50).divide_by_p(2).unwrap();
        assert_eq!((q.residue().clone(), q.precision()), (2u32.into(), 1));
        assert_eq!(pi(5, 3, 3).divide_by_p(1), Err(Error::NotDivisible { p: 5, k: 1 }));
        assert!(matches!(
            pi(5, 2, 0).divide_by_p(2),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn context_validation() {
        assert!(PadicContext::new(2, 3).is_err());
        assert!(PadicContext::new(9, 3).is_err());
        assert!(PadicContext::new(7, 0).is_err());
        assert_eq!(PadicContext::new(7, 3).unwrap().internal_precision(), 5);
    }

    #[test]
    fn centered_representative() {
        assert_eq!(pi(5, 2, -3).centered(), BigInt::from(-3));
        assert_eq!(pi(5, 2, 12).centered(), BigInt::from(12));
    }
}
