//! Exact integer and rational kernels.
//!
//! Everything here is a pure function on immutable values. Rationals are
//! `num_rational::BigRational`, which keeps lowest terms with a positive
//! denominator.

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};

pub use num_rational::BigRational;

use crate::error::{Error, Result};

/// `p = a² + b²` with `a ≡ 1 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoSquareRep {
    pub a: i64,
    pub b: u64,
    pub p: u64,
}

/// `4p = r² + 27s²` with `r ≡ 1 (mod 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EisensteinRep {
    pub r: i64,
    pub s: u64,
    pub p: u64,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `p^e` as a big integer.
pub fn pow_u(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

/// Least non-negative representative of `a mod m`.
pub fn reduce(a: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from(m.clone());
    a.mod_floor(&m).magnitude().clone()
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigUint) -> Result<BigUint> {
    let mi = BigInt::from(m.clone());
    let ar = a.mod_floor(&mi);
    let eg = ar.extended_gcd(&mi);
    if !eg.gcd.is_one() {
        return Err(Error::NotInvertible {
            a: a.to_string(),
            m: m.to_string(),
        });
    }
    Ok(eg.x.mod_floor(&mi).magnitude().clone())
}

/// Exponent of `p` in a nonzero integer.
pub fn valuation_int(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        y = q;
        v += 1;
    }
}

/// Exponent of `p` in a nonzero rational (may be negative).
pub fn valuation_rat(q: &BigRational, p: u64) -> Option<i64> {
    let vn = valuation_int(q.numer(), p)? as i64;
    let vd = valuation_int(q.denom(), p).unwrap_or(0) as i64;
    Some(vn - vd)
}

pub fn valuation_u64(mut x: u64, p: u64) -> u32 {
    assert!(x != 0, "valuation of zero");
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Splits a nonzero rational into `(v, u)` with `q = p^v · u` and `u` a `p`-unit.
pub fn split_rat(q: &BigRational, p: u64) -> Option<(i64, BigRational)> {
    let v = valuation_rat(q, p)?;
    let pk = rat_int(BigInt::from(p).pow(v.unsigned_abs() as u32));
    let u = if v >= 0 { q / pk } else { q * pk };
    Some((v, u))
}

/// Residue of a `p`-integral rational modulo `p^n`.
pub fn rational_to_residue(q: &BigRational, p: u64, n: u32) -> Result<BigUint> {
    let m = pow_u(p, n);
    if q.denom().mod_floor(&BigInt::from(p)).is_zero() {
        return Err(Error::PoleAtP { p });
    }
    let inv = mod_inverse(q.denom(), &m)?;
    Ok(reduce(&(q.numer() * BigInt::from(inv)), &m))
}

pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn totient(r: u64) -> u64 {
    assert!(r >= 1, "totient of zero");
    factorize(r).iter().fold(r, |acc, q| acc / q * (q - 1))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli–Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a as i64, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z as i64, p) == -1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn is_square(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Cornacchia descent for `x² + d·y² = m`, given `x0² ≡ -d (mod m)`.
fn cornacchia(d: u64, m: u64, x0: u64, bound: u64) -> Option<(u64, u64)> {
    let (mut a, mut b) = (m, x0);
    while b > bound {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = m.checked_sub(b * b)?;
    if rest % d != 0 {
        return None;
    }
    is_square(rest / d).map(|y| (b, y))
}

/// The representation `p = a² + b²` normalized by `a ≡ 1 (mod 4)`.
pub fn two_square_rep(p: u64) -> Result<TwoSquareRep> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(Error::BadResidueClass {
            p,
            requirement: "a prime congruent to 1 mod 4",
        });
    }
    let x0 = sqrt_mod(p - 1, p).expect("-1 is a square mod p ≡ 1 (4)");
    let (x, y) = cornacchia(1, p, x0, p.sqrt())
        .or_else(|| two_square_search(p))
        .expect("Fermat's two-square theorem");
    // exactly one of x, y is odd; the odd one is a up to sign
    let (a, b) = if x % 2 == 1 { (x, y) } else { (y, x) };
    let a = a as i64;
    let a = if a.rem_euclid(4) == 1 { a } else { -a };
    Ok(TwoSquareRep { a, b, p })
}

fn two_square_search(p: u64) -> Option<(u64, u64)> {
    (0..=p.sqrt()).find_map(|b| is_square(p - b * b).map(|a| (a, b)))
}

/// The representation `4p = r² + 27s²` normalized by `r ≡ 1 (mod 3)`.
pub fn eisenstein_rep(p: u64) -> Result<EisensteinRep> {
    if p % 3 != 1 || !is_prime(p) {
        return Err(Error::BadResidueClass {
            p,
            requirement: "a prime congruent to 1 mod 3",
        });
    }
    let m = 4 * p;
    // x0² ≡ -27 (mod p), then lifted to the right parity for modulus 4p
    let root = sqrt_mod((p - 27 % p) % p, p).expect("-27 is a square mod p ≡ 1 (3)");
    let x0 = if root % 2 == 1 { root } else { p - root };
    let bound = (m as f64).sqrt() as u64;
    let (r, s) = cornacchia_4p(x0, p, bound)
        .or_else(|| eisenstein_search(p))
        .expect("4p = r² + 27s² is solvable for p ≡ 1 (3)");
    let r = r as i64;
    let r = if r.rem_euclid(3) == 1 { r } else { -r };
    Ok(EisensteinRep { r, s, p })
}

fn cornacchia_4p(x0: u64, p: u64, bound: u64) -> Option<(u64, u64)> {
    let (mut a, mut b) = (2 * p, x0);
    while b > bound {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = (4 * p).checked_sub(b * b)?;
    if rest % 27 != 0 {
        return None;
    }
    is_square(rest / 27).map(|s| (b, s))
}

fn eisenstein_search(p: u64) -> Option<(u64, u64)> {
    (1..)
        .take_while(|s| 27 * s * s <= 4 * p)
        .find_map(|s| is_square(4 * p - 27 * s * s).map(|r| (r, s)))
}

/// Brute-force versions of the two representations, for cross-checks.
pub fn two_square_rep_brute(p: u64) -> Option<TwoSquareRep> {
    let (x, y) = two_square_search(p)?;
    let (a, b) = if x % 2 == 1 { (x as i64, y) } else { (y as i64, x) };
    Some(TwoSquareRep {
        a: if a.rem_euclid(4) == 1 { a } else { -a },
        b,
        p,
    })
}

pub fn eisenstein_rep_brute(p: u64) -> Option<EisensteinRep> {
    let (r, s) = eisenstein_search(p)?;
    let r = r as i64;
    Some(EisensteinRep {
        r: if r.rem_euclid(3) == 1 { r } else { -r },
        s,
        p,
    })
}

/// Number of quadratic nonresidues in `[1, (p-1)/2]`.
pub fn nonresidue_count_below_half(p: u64) -> u64 {
    (1..=(p - 1) / 2).filter(|&k| legendre(k as i64, p) == -1).count() as u64
}

/// Fermat quotient `(a^{p-1} - 1)/p` modulo `p^n`.
pub fn fermat_quotient(a: &BigInt, p: u64, n: u32) -> Result<BigUint> {
    if a.mod_floor(&BigInt::from(p)).is_zero() {
        return Err(Error::NotCoprime { a: a.to_string(), m: p });
    }
    let big = pow_u(p, n + 1);
    let x = reduce(a, &big).modpow(&BigUint::from(p - 1), &big);
    let num = (x + &big - 1u32) % &big;
    Ok(num / p)
}

/// Exact `C(n, k)` for non-negative `n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generalized binomial `C(x, k)` for any integer `x` and `k ≥ 0`.
pub fn binomial_signed(x: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc = acc * BigInt::from(x - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(&1.into(), &7u32.into()).unwrap(), 1u32.into());
        assert_eq!(mod_inverse(&24.into(), &125u32.into()).unwrap(), 99u32.into());
        assert!(matches!(
            mod_inverse(&5.into(), &10u32.into()),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn residue_embedding() {
        assert_eq!(rational_to_residue(&rat(1, 24), 5, 3).unwrap(), 99u32.into());
        assert_eq!(rational_to_residue(&rat(0, 1), 7, 4).unwrap(), BigUint::zero());
        assert_eq!(rational_to_residue(&rat(1, 5), 5, 2), Err(Error::PoleAtP { p: 5 }));
        assert_eq!(rational_to_residue(&rat(-1, 1), 5, 2).unwrap(), 24u32.into());
    }

    #[test]
    fn totients() {
        assert_eq!([1, 2, 3, 4, 6, 12, 97].map(totient), [1, 1, 2, 2, 2, 4, 96]);
    }

    #[test]
    fn representations() {
        assert_eq!(two_square_rep(5).unwrap(), TwoSquareRep { a: 1, b: 2, p: 5 });
        assert_eq!(two_square_rep(13).unwrap(), TwoSquareRep { a: -3, b: 2, p: 13 });
        assert!(matches!(two_square_rep(7), Err(Error::BadResidueClass { .. })));
        assert_eq!(eisenstein_rep(7).unwrap(), EisensteinRep { r: 1, s: 1, p: 7 });
        assert_eq!(eisenstein_rep(13).unwrap(), EisensteinRep { r: -5, s: 1, p: 13 });
        assert!(matches!(eisenstein_rep(5), Err(Error::BadResidueClass { .. })));
    }

    #[test]
    fn nonresidues_and_quotients() {
        assert_eq!(nonresidue_count_below_half(3), 0);
        assert_eq!(nonresidue_count_below_half(7), 1);
        assert_eq!(fermat_quotient(&1.into(), 11, 3).unwrap(), BigUint::zero());
        assert_eq!(fermat_quotient(&2.into(), 5, 1).unwrap(), 3u32.into());
        assert_eq!(fermat_quotient(&3.into(), 7, 1).unwrap(), 6u32.into());
        assert!(fermat_quotient(&14.into(), 7, 1).is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn square_roots() {
        for p in primes_between(3, 200) {
            for a in 1..p {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(mul_mod(r, r, p), a);
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), 252u32.into());
        assert_eq!(binomial_signed(-2, 3), BigInt::from(-4));
        assert_eq!(binomial_signed(-1, 4), BigInt::from(1));
        assert_eq!(binomial_signed(3, 5), BigInt::zero());
    }
}
