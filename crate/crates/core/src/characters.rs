//! Real Dirichlet characters.
//!
//! Only real-valued characters occur: every character group mod `r` for
//! `r ∈ {1, 2, 3, 4, 6}` is real, and the twists by powers of the Teichmüller
//! character are carried separately by the L-function layer.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{self, rat_int, BigRational};
use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A real character given by its table of values on `0..modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<i8>,
    conductor: u64,
}

impl DirichletCharacter {
    /// Builds a character from a value table, checking it is a real character.
    pub fn from_table(values: Vec<i8>) -> Result<Self> {
        let m = values.len() as u64;
        if m == 0 {
            return Err(Error::BadContext("empty character table".into()));
        }
        for a in 0..m {
            let unit = a.gcd(&m) == 1;
            let v = values[a as usize];
            if unit != (v != 0) || !(-1..=1).contains(&v) {
                return Err(Error::BadContext(format!("bad character value at {a} mod {m}")));
            }
        }
        for a in 0..m {
            for b in 0..m {
                let ab = values[((a * b) % m) as usize];
                if ab != values[a as usize] * values[b as usize] {
                    return Err(Error::BadContext(format!("table mod {m} is not multiplicative")));
                }
            }
        }
        let conductor = conductor_of(&values);
        Ok(Self {
            modulus: m,
            values,
            conductor,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value(&self, a: i64) -> i8 {
        self.values[a.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn value_big(&self, a: &BigInt) -> i8 {
        let r = a.mod_floor(&BigInt::from(self.modulus));
        self.values[u64::try_from(r).expect("reduced") as usize]
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    /// True for the character of conductor 1 at any modulus.
    pub fn is_principal(&self) -> bool {
        self.conductor == 1
    }

    pub fn parity(&self) -> Parity {
        if self.value(-1) == 1 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Complex conjugate; the identity on real characters.
    pub fn conj(&self) -> &Self {
        self
    }

    /// The character mod `modulus` induced by `self` (`modulus` must be a multiple).
    pub fn lift(&self, modulus: u64) -> Self {
        assert_eq!(modulus % self.modulus, 0, "lift to a non-multiple modulus");
        let values = (0..modulus)
            .map(|a| {
                if a.gcd(&modulus) == 1 {
                    self.values[(a % self.modulus) as usize]
                } else {
                    0
                }
            })
            .collect();
        Self {
            modulus,
            values,
            conductor: self.conductor,
        }
    }

    /// The primitive character inducing `self`.
    pub fn primitive(&self) -> Self {
        let f = self.conductor;
        let mut values = vec![0i8; f as usize];
        for a in 0..self.modulus {
            let v = self.values[a as usize];
            if v != 0 {
                values[(a % f) as usize] = v;
            }
        }
        Self {
            modulus: f,
            values,
            conductor: f,
        }
    }

    /// Product character modulo `lcm` of the two moduli.
    pub fn product(&self, other: &Self) -> Self {
        let m = self.modulus.lcm(&other.modulus);
        let values = (0..m as i64).map(|a| self.value(a) * other.value(a)).collect();
        Self::from_table(values).expect("product of characters is a character")
    }

    /// Short name used in reports.
    pub fn name(&self) -> String {
        match (self.modulus, self.values.as_slice()) {
            (1, _) => "1".into(),
            (4, [0, 1, 0, -1]) => "eta".into(),
            (3, [0, 1, -1]) => "phi".into(),
            _ if self.is_principal() => format!("1_mod{}", self.modulus),
            _ => format!("{}_mod{}", self.primitive().name(), self.modulus),
        }
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn conductor_of(values: &[i8]) -> u64 {
    let m = values.len() as u64;
    for f in (1..=m).filter(|f| m.is_multiple_of(*f)) {
        let consistent = (0..m).all(|a| {
            (0..m).all(|b| {
                values[a as usize] == 0
                    || values[b as usize] == 0
                    || a % f != b % f
                    || values[a as usize] == values[b as usize]
            })
        });
        if consistent {
            return f;
        }
    }
    m
}

pub fn trivial_character() -> DirichletCharacter {
    DirichletCharacter {
        modulus: 1,
        values: vec![1],
        conductor: 1,
    }
}

/// `η` (mod 4) or `φ` (mod 3).
pub fn quadratic_character(m: u64) -> Result<DirichletCharacter> {
    let values = match m {
        4 => vec![0, 1, 0, -1],
        3 => vec![0, 1, -1],
        _ => return Err(Error::Unsupported(format!("quadratic character mod {m}"))),
    };
    Ok(DirichletCharacter {
        modulus: m,
        values,
        conductor: m,
    })
}

pub fn eta() -> DirichletCharacter {
    quadratic_character(4).expect("mod 4")
}

pub fn phi() -> DirichletCharacter {
    quadratic_character(3).expect("mod 3")
}

fn check_r(r: u64) -> Result<()> {
    if matches!(r, 1 | 2 | 3 | 4 | 6) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("r = {r} (only 1, 2, 3, 4, 6)")))
    }
}

/// Primitive characters whose conductor divides `r`.
pub fn real_characters_dividing(r: u64) -> Result<Vec<DirichletCharacter>> {
    check_r(r)?;
    let mut out = vec![trivial_character()];
    if r.is_multiple_of(4) {
        out.push(eta());
    }
    if r.is_multiple_of(3) {
        out.push(phi());
    }
    Ok(out)
}

/// All characters modulo `r`, each as a table mod `r`.
pub fn characters_mod(r: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(real_characters_dividing(r)?.into_iter().map(|c| c.lift(r)).collect())
}

/// `d(ψ, r, n) = Π_{q | r/f_ψ} (1 - ψ(q) q^n)` as an exact rational.
pub fn euler_factor_d_exact(psi: &DirichletCharacter, r: u64, n: i64) -> BigRational {
    assert_eq!(r % psi.conductor(), 0, "conductor must divide r");
    arith::factorize(r / psi.conductor())
        .into_iter()
        .fold(rat_int(1), |acc, q| {
            let qn = if n >= 0 {
                rat_int(BigInt::from(q).pow(n as u32))
            } else {
                BigRational::new(1.into(), BigInt::from(q).pow((-n) as u32))
            };
            acc * (rat_int(1) - rat_int(psi.value(q as i64)) * qn)
        })
}

/// `d(ψ, r, n)` embedded in `Z/p^N`.
pub fn euler_factor_d(psi: &DirichletCharacter, r: u64, n: i64, ctx: &PadicContext) -> Result<PadicInt> {
    let p = ctx.prime();
    if r.is_multiple_of(p) {
        return Err(Error::NotCoprime { a: r.to_string(), m: p });
    }
    PadicInt::from_rational(&euler_factor_d_exact(psi, r, n), p, ctx.working_precision())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn basic_characters() {
        let one = trivial_character();
        assert_eq!((one.value(17), one.conductor(), one.parity()), (1, 1, Parity::Even));
        let e = quadratic_character(4).unwrap();
        assert_eq!((e.value(3), e.value(2), e.parity()), (-1, 0, Parity::Odd));
        let f = quadratic_character(3).unwrap();
        assert_eq!((f.value(2), f.parity()), (-1, Parity::Odd));
        assert!(quadratic_character(5).is_err());
    }

    #[test]
    fn characters_dividing() {
        let names = |r| {
            real_characters_dividing(r)
                .unwrap()
                .iter()
                .map(|c| c.name())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(1), ["1"]);
        assert_eq!(names(2), ["1"]);
        assert_eq!(names(3), ["1", "phi"]);
        assert_eq!(names(4), ["1", "eta"]);
        assert_eq!(names(6), ["1", "phi"]);
        assert!(real_characters_dividing(5).is_err());
    }

    #[test]
    fn tables_are_multiplicative_and_conductors_correct() {
        for r in [1, 2, 3, 4, 6] {
            for c in characters_mod(r).unwrap() {
                let rebuilt = DirichletCharacter::from_table(c.values().to_vec()).unwrap();
                assert_eq!(rebuilt.conductor(), c.conductor());
                assert_eq!(c.primitive().lift(r), c);
            }
        }
        assert!(DirichletCharacter::from_table(vec![0, 1, 1, -1, 0]).is_err());
    }

    /// Enumerates every ±1 table mod r and keeps the multiplicative ones.
    fn brute_force_count(r: u64) -> usize {
        let units: Vec<u64> = (0..r).filter(|a| a.gcd(&r) == 1).collect();
        (0..1u32 << units.len())
            .filter(|mask| {
                let mut t = vec![0i8; r as usize];
                for (i, &u) in units.iter().enumerate() {
                    t[u as usize] = if mask >> i & 1 == 1 { -1 } else { 1 };
                }
                DirichletCharacter::from_table(t).is_ok()
            })
            .count()
    }

    #[test]
    fn character_counts_match_enumeration() {
        for r in [1, 2, 3, 4, 6] {
            assert_eq!(characters_mod(r).unwrap().len(), brute_force_count(r));
        }
    }

    #[test]
    fn euler_factors() {
        let one = trivial_character();
        assert_eq!(euler_factor_d_exact(&one, 1, 5), rat(1, 1));
        assert_eq!(euler_factor_d_exact(&eta(), 4, -3), rat(1, 1));
        assert_eq!(euler_factor_d_exact(&one, 2, -1), rat(1, 2));
        assert_eq!(
            euler_factor_d_exact(&one, 6, -2),
            (rat(1, 1) - rat(1, 4)) * (rat(1, 1) - rat(1, 9))
        );
        assert_eq!(euler_factor_d_exact(&phi(), 6, 1), rat(3, 1));
        let ctx = PadicContext::new(7, 3).unwrap();
        assert_eq!(
            euler_factor_d(&one, 2, -1, &ctx).unwrap(),
            PadicInt::from_rational(&rat(1, 2), 7, 3).unwrap()
        );
        let ctx3 = PadicContext::new(3, 2).unwrap();
        assert!(euler_factor_d(&one, 6, -1, &ctx3).is_err());
    }
}
