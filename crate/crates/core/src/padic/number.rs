use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::PadicInt;
use crate::arith::{self, pow_u, BigRational};
use crate::error::{Error, Result};

/// Precision carried by exact values such as `0` produced from an exact zero factor.
const EXACT: i64 = 1 << 40;

/// An element of `Q_p` known modulo `p^precision` (absolute precision).
///
/// Stored as `unit · p^val` with `unit` a `p`-adic unit known modulo
/// `p^(precision - val)`. Zero is `unit = 0, val = precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicNumber {
    p: u64,
    precision: i64,
    val: i64,
    unit: BigUint,
}

impl PadicNumber {
    pub fn zero(p: u64, precision: i64) -> Self {
        Self {
            p,
            precision,
            val: precision,
            unit: BigUint::zero(),
        }
    }

    /// The exact zero, absorbing under multiplication and neutral under addition.
    pub fn exact_zero(p: u64) -> Self {
        Self::zero(p, EXACT)
    }

    pub fn one(p: u64, precision: i64) -> Self {
        Self::from_int(p, precision, &BigInt::one())
    }

    fn normalized(p: u64, precision: i64, mut val: i64, mut unit: BigUint) -> Self {
        if unit.is_zero() || val >= precision {
            return Self::zero(p, precision);
        }
        while (&unit % p).is_zero() {
            unit /= p;
            val += 1;
        }
        if val >= precision {
            return Self::zero(p, precision);
        }
        let unit = unit % pow_u(p, (precision - val) as u32);
        Self {
            p,
            precision,
            val,
            unit,
        }
    }

    pub fn from_int(p: u64, precision: i64, value: &BigInt) -> Self {
        Self::from_rational(p, precision, &BigRational::from_integer(value.clone()))
    }

    pub fn from_i64(p: u64, precision: i64, value: i64) -> Self {
        Self::from_int(p, precision, &BigInt::from(value))
    }

    /// Embeds a rational of any valuation, known to absolute precision `precision`.
    pub fn from_rational(p: u64, precision: i64, q: &BigRational) -> Self {
        let Some((v, u)) = arith::split_rat(q, p) else {
            return Self::zero(p, precision);
        };
        if v >= precision {
            return Self::zero(p, precision);
        }
        let unit = arith::rational_to_residue(&u, p, (precision - v) as u32).expect("unit part is p-integral");
        Self {
            p,
            precision,
            val: v,
            unit,
        }
    }

    pub fn from_padic_int(x: &PadicInt) -> Self {
        Self::normalized(x.prime(), x.precision() as i64, 0, x.residue().clone())
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Valuation, or `None` if the value is zero to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Valuation with zero counted as its precision.
    fn v(&self) -> i64 {
        self.val
    }

    fn same_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing p-adic numbers of different primes");
    }

    /// Caps the precision at `precision`.
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        Self::normalized(self.p, precision, self.val, self.unit.clone())
    }

    /// Multiplies by an exact rational.
    pub fn mul_rational(&self, q: &BigRational) -> Self {
        let Some((v, u)) = arith::split_rat(q, self.p) else {
            return Self::exact_zero(self.p);
        };
        let precision = if self.precision >= EXACT {
            EXACT
        } else {
            self.precision + v
        };
        if self.is_zero() {
            return Self::zero(self.p, precision);
        }
        let rel = (self.precision - self.val) as u32;
        let u = arith::rational_to_residue(&u, self.p, rel).expect("unit part is p-integral");
        Self::normalized(self.p, precision, self.val + v, &self.unit * u)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.mul_rational(&arith::rat_int(k))
    }

    /// Multiplies by `p^k` exactly.
    pub fn shift(&self, k: i64) -> Self {
        let precision = if self.precision >= EXACT {
            EXACT
        } else {
            self.precision + k
        };
        if self.is_zero() {
            return Self::zero(self.p, precision);
        }
        Self {
            p: self.p,
            precision,
            val: self.val + k,
            unit: self.unit.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible {
                a: "0".into(),
                m: format!("{}^{}", self.p, self.precision),
            });
        }
        let rel = self.precision - self.val;
        let m = pow_u(self.p, rel as u32);
        let inv = arith::mod_inverse(&BigInt::from(self.unit.clone()), &m)?;
        Ok(Self {
            p: self.p,
            precision: rel - self.val,
            val: -self.val,
            unit: inv,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.p, self.precision);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = &acc * self;
        }
        acc
    }

    /// Reduction to `Z/p^n`; fails when the value is not integral or lacks digits.
    pub fn to_padic_int(&self, n: u32) -> Result<PadicInt> {
        if self.precision < n as i64 {
            return Err(Error::PrecisionExhausted {
                needed: n as i64,
                available: self.precision,
            });
        }
        if self.is_zero() {
            return Ok(PadicInt::zero(self.p, n));
        }
        if self.val < 0 {
            return Err(Error::PoleAtP { p: self.p });
        }
        if self.val >= n as i64 {
            return Ok(PadicInt::zero(self.p, n));
        }
        let r = &self.unit * pow_u(self.p, self.val as u32);
        Ok(PadicInt::from_residue(self.p, n, r))
    }

    /// True when both values carry `j` digits and agree modulo `p^j`.
    pub fn congruent(&self, other: &Self, j: i64) -> bool {
        if self.p != other.p || self.precision < j || other.precision < j {
            return false;
        }
        let d = self - other;
        d.is_zero() || d.val >= j
    }

    /// Largest `n` such that `to_padic_int(n)` succeeds, if the value is integral.
    pub fn integral_precision(&self) -> Option<u32> {
        if !self.is_zero() && self.val < 0 {
            return None;
        }
        Some(self.precision.clamp(0, u32::MAX as i64) as u32)
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O({}^{})", self.p, self.precision);
        }
        write!(
            f,
            "{}·{}^{} + O({}^{})",
            self.unit, self.p, self.val, self.p, self.precision
        )
    }
}

impl Add for &PadicNumber {
    type Output = PadicNumber;
    fn add(self, rhs: &PadicNumber) -> PadicNumber {
        self.same_prime(rhs);
        let p = self.p;
        let precision = self.precision.min(rhs.precision);
        let v = self.v().min(rhs.v());
        if v >= precision {
            return PadicNumber::zero(p, precision);
        }
        let lift = |x: &PadicNumber| -> BigUint {
            if x.is_zero() || x.val >= precision {
                BigUint::zero()
            } else {
                &x.unit * pow_u(p, (x.val - v) as u32)
            }
        };
        PadicNumber::normalized(p, precision, v, lift(self) + lift(rhs))
    }
}

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        if self.is_zero() {
            return self.clone();
        }
        let m = pow_u(self.p, (self.precision - self.val) as u32);
        PadicNumber {
            p: self.p,
            precision: self.precision,
            val: self.val,
            unit: &m - &self.unit,
        }
    }
}

impl Sub for &PadicNumber {
    type Output = PadicNumber;
    fn sub(self, rhs: &PadicNumber) -> PadicNumber {
        self + &(-rhs)
    }
}

impl Mul for &PadicNumber {
    type Output = PadicNumber;
    fn mul(self, rhs: &PadicNumber) -> PadicNumber {
        self.same_prime(rhs);
        let precision = (self.precision + rhs.v()).min(rhs.precision + self.v());
        let precision = precision.min(EXACT);
        if self.is_zero() || rhs.is_zero() {
            return PadicNumber::zero(self.p, precision);
        }
        PadicNumber::normalized(self.p, precision, self.val + rhs.val, &self.unit * &rhs.unit)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PadicNumber {
            type Output = PadicNumber;
            fn $m(self, rhs: PadicNumber) -> PadicNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $m(self, rhs: &PadicNumber) -> PadicNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn embedding_round_trip() {
        let x = PadicNumber::from_rational(5, 4, &rat(7, 3));
        let r = x.to_padic_int(4).unwrap();
        assert_eq!(r, PadicInt::from_rational(&rat(7, 3), 5, 4).unwrap());
    }

    #[test]
    fn poles_are_tracked() {
        let x = PadicNumber::from_rational(5, 3, &rat(1, 5));
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.to_padic_int(2), Err(Error::PoleAtP { p: 5 }));
        let y = x.mul_int(5);
        assert_eq!(y.to_padic_int(3).unwrap(), PadicInt::one(5, 3));
    }

    #[test]
    fn cancellation_loses_no_reported_digits() {
        // (1 + 5^3 u) - 1 known mod 5^4 only has one significant digit.
        let a = PadicNumber::from_i64(5, 4, 1 + 125 * 2);
        let b = PadicNumber::from_i64(5, 4, 1);
        let d = &a - &b;
        assert_eq!((d.valuation(), d.precision()), (Some(3), 4));
        // dividing by 5^3 leaves one digit
        let q = d.mul_rational(&rat(1, 125));
        assert_eq!(q.precision(), 1);
        assert_eq!(q.to_padic_int(1).unwrap(), PadicInt::from_i64(5, 1, 2));
        assert!(q.to_padic_int(2).is_err());
    }

    #[test]
    fn product_precision_uses_valuations() {
        let a = PadicNumber::from_i64(7, 3, 7);
        let b = PadicNumber::from_i64(7, 3, 49);
        let c = &a * &b;
        assert_eq!(c.precision(), 4);
        assert_eq!(c.valuation(), Some(3));
    }

    #[test]
    fn inverse_of_non_unit() {
        let a = PadicNumber::from_i64(5, 4, 10);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        let one = &a * &inv;
        assert_eq!(one.to_padic_int(2).unwrap(), PadicInt::one(5, 2));
    }

    #[test]
    fn exact_zero_is_neutral() {
        let a = PadicNumber::from_i64(5, 3, 17);
        let z = PadicNumber::exact_zero(5);
        assert_eq!(&a + &z, a);
        assert!((&a * &z).is_zero());
    }
}
