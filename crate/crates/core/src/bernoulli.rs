//! Bernoulli numbers, Bernoulli polynomials, generalized Bernoulli numbers
//! and Euler numbers.
//!
//! `B_n` comes from the recurrence `Σ_{k≤n} C(n+1,k) B_k = 0`, run over the
//! integers `L·B_k` where `L` is the product of the primes up to `n + 1`
//! (von Staudt–Clausen bounds every denominator by it). Results are kept in a
//! process-wide append-only cache, optionally mirrored to disk through
//! `CONGRUENCE_CACHE_DIR`.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, rat_int, BigRational};
use crate::characters::{self, DirichletCharacter};
use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicInt};

/// Environment variable naming the directory of the on-disk Bernoulli cache.
pub const CACHE_DIR_ENV: &str = "CONGRUENCE_CACHE_DIR";
const CACHE_FILE: &str = "bernoulli.txt";

fn table() -> &'static RwLock<Vec<BigRational>> {
    static TABLE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(load_disk_cache().unwrap_or_else(|| vec![rat_int(1)])))
}

fn cache_path() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).map(|d| PathBuf::from(d).join(CACHE_FILE))
}

/// Reads the contiguous prefix `B_0, B_1, ...` from the disk cache.
fn load_disk_cache() -> Option<Vec<BigRational>> {
    let text = fs::read_to_string(cache_path()?).ok()?;
    let mut out = Vec::new();
    for line in text.lines() {
        let mut it = line.split_whitespace();
        let (Some(n), Some(num), Some(den)) = (it.next(), it.next(), it.next()) else {
            break;
        };
        let (Ok(n), Ok(num), Ok(den)) = (n.parse::<usize>(), num.parse::<BigInt>(), den.parse::<BigInt>()) else {
            break;
        };
        if n != out.len() || den.is_zero() {
            break;
        }
        out.push(BigRational::new(num, den));
    }
    (!out.is_empty() && out[0] == rat_int(1)).then_some(out)
}

/// Best effort: the disk cache is an accelerator, never a source of truth.
fn store_disk_cache(values: &[BigRational]) {
    let Some(path) = cache_path() else { return };
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let write = || -> std::io::Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
        for (n, b) in values.iter().enumerate() {
            writeln!(f, "{} {} {}", n, b.numer(), b.denom())?;
        }
        f.flush()?;
        drop(f);
        fs::rename(&tmp, &path)
    };
    if write().is_err() {
        let _ = fs::remove_file(&tmp);
    }
}

fn primorial(n: u64) -> BigInt {
    (2..=n)
        .filter(|&q| arith::is_prime(q))
        .fold(BigInt::one(), |acc, q| acc * q)
}

/// Extends `values` (holding `B_0..B_{len-1}`) up to index `n`.
fn extend(values: &mut Vec<BigRational>, n: usize) {
    if values.len() > n {
        return;
    }
    let l = primorial(n as u64 + 1);
    let mut scaled: Vec<BigInt> = values.iter().map(|b| (b * rat_int(l.clone())).to_integer()).collect();
    for m in values.len()..=n {
        if m > 1 && m % 2 == 1 {
            values.push(rat_int(0));
            scaled.push(BigInt::zero());
            continue;
        }
        // row of C(m+1, k) for k = 0..m
        let mut c = BigInt::one();
        let mut s = BigInt::zero();
        for (k, a) in scaled.iter().enumerate() {
            if !a.is_zero() {
                s += &c * a;
            }
            c = c * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let b = BigRational::new(-s, l.clone() * BigInt::from(m + 1));
        scaled.push((&b * rat_int(l.clone())).to_integer());
        values.push(b);
    }
}

/// Exact `B_n` (with `B_1 = -1/2`).
pub fn bernoulli_number(n: usize) -> BigRational {
    if let Some(b) = table().read().expect("cache lock").get(n) {
        return b.clone();
    }
    let mut w = table().write().expect("cache lock");
    if w.len() <= n {
        extend(&mut w, n);
        store_disk_cache(&w);
    }
    w[n].clone()
}

/// `B_n(x) = Σ_r C(n,r) B_r x^{n-r}`.
pub fn bernoulli_poly(n: usize, x: &BigRational) -> BigRational {
    let mut acc = rat_int(0);
    let mut c = BigInt::one();
    for r in 0..=n {
        let b = bernoulli_number(r);
        if !b.is_zero() {
            acc += rat_int(c.clone()) * b * pow_rat(x, (n - r) as u32);
        }
        c = c * BigInt::from(n - r) / BigInt::from(r + 1);
    }
    acc
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    BigRational::new(x.numer().pow(e), x.denom().pow(e))
}

fn gen_cache() -> &'static RwLock<HashMap<(usize, DirichletCharacter), BigRational>> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, DirichletCharacter), BigRational>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `m^{n-1} Σ_{a=1}^{m} χ(a) B_n(a/m)` for the character exactly as tabulated.
///
/// For the modulus-1 trivial character this is `B_n(1)`, i.e. `+1/2` at
/// `n = 1`; [`gen_bernoulli`] pins that case to `B_n` instead.
pub fn gen_bernoulli_summation(n: usize, chi: &DirichletCharacter) -> BigRational {
    let key = (n, chi.clone());
    if let Some(v) = gen_cache().read().expect("cache lock").get(&key) {
        return v.clone();
    }
    // Σ_r C(n,r) B_r m^{r-1} S_{n-r}, with S_k = Σ_{a=1}^{m} χ(a) a^k
    let m = chi.modulus();
    let power_sum = |k: usize| -> BigInt {
        (1..=m)
            .map(|a| BigInt::from(chi.value(a as i64)) * BigInt::from(a).pow(k as u32))
            .sum()
    };
    let mut acc = rat_int(0);
    let mut c = BigInt::one();
    for r in 0..=n {
        let b = bernoulli_number(r);
        if !b.is_zero() {
            let mr = if r == 0 {
                BigRational::new(1.into(), m.into())
            } else {
                rat_int(BigInt::from(m).pow(r as u32 - 1))
            };
            acc += rat_int(&c * power_sum(n - r)) * b * mr;
        }
        c = c * BigInt::from(n - r) / BigInt::from(r + 1);
    }
    gen_cache().write().expect("cache lock").insert(key, acc.clone());
    acc
}

/// Generalized Bernoulli number `B_{n,χ}`, with `B_{n,1} := B_n` for the
/// modulus-1 trivial character.
pub fn gen_bernoulli(n: usize, chi: &DirichletCharacter) -> BigRational {
    if chi.modulus() == 1 {
        return bernoulli_number(n);
    }
    gen_bernoulli_summation(n, chi)
}

/// `B_{m,χ}(t) = Σ_j C(m,j) B_{j,χ} t^{m-j}`, using the summation convention.
pub fn gen_bernoulli_poly(m: usize, chi: &DirichletCharacter, t: &BigRational) -> BigRational {
    let mut acc = rat_int(0);
    let mut c = BigInt::one();
    for j in 0..=m {
        acc += rat_int(c.clone()) * gen_bernoulli_summation(j, chi) * pow_rat(t, (m - j) as u32);
        c = c * BigInt::from(m - j) / BigInt::from(j + 1);
    }
    acc
}

fn euler_table() -> &'static RwLock<Vec<BigInt>> {
    static TABLE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// Euler number `E_n` from `2e^z/(e^{2z}+1) = Σ E_n z^n/n!`.
pub fn euler_number(n: usize) -> BigInt {
    if let Some(e) = euler_table().read().expect("cache lock").get(n) {
        return e.clone();
    }
    let mut w = euler_table().write().expect("cache lock");
    for m in w.len()..=n {
        if m % 2 == 1 {
            w.push(BigInt::zero());
            continue;
        }
        let mut c = BigInt::one();
        let mut s = BigInt::zero();
        for k in 0..m {
            if k % 2 == 0 {
                s += &c * &w[k];
            }
            c = c * BigInt::from(m - k) / BigInt::from(k + 1);
        }
        w.push(-s);
    }
    w[n].clone()
}

/// Largest modulus handled by the word-sized modular recurrences.
const WORD_MODULUS: u128 = 1 << 63;

/// Pascal rows modulo `m`, driving a recurrence that needs row `n` at step `n`.
struct PascalRows {
    row: Vec<u64>,
    m: u64,
}

impl PascalRows {
    fn new(m: u64) -> Self {
        Self { row: vec![1 % m], m }
    }

    /// Advances to the next row and returns it.
    fn advance(&mut self) -> &[u64] {
        self.row.push(0);
        for k in (1..self.row.len()).rev() {
            let v = self.row[k] + self.row[k - 1];
            self.row[k] = if v >= self.m { v - self.m } else { v };
        }
        &self.row
    }
}

fn word_modulus(p: u64, k: u32) -> Option<u64> {
    let m = arith::pow_u(p, k);
    m.to_u128().filter(|&m| m < WORD_MODULUS).map(|m| m as u64)
}

/// `E_0..E_n` modulo `p^k` by the recurrence, without ever forming the integers.
pub fn euler_numbers_mod(n: usize, p: u64, k: u32) -> Option<Vec<u64>> {
    let m = word_modulus(p, k)?;
    let mut e = vec![1 % m];
    let mut rows = PascalRows::new(m);
    for i in 1..=n {
        let row = rows.advance();
        if i % 2 == 1 {
            e.push(0);
            continue;
        }
        let s = (0..i)
            .step_by(2)
            .fold(0u64, |s, j| (s + arith::mul_mod(row[j], e[j], m)) % m);
        e.push((m - s) % m);
    }
    Some(e)
}

/// `g_0..g_n` modulo `p^k` with `Σ g_n t^n/n! = e^t/(e^{2t}+e^t+1)`, so that
/// `B_{n,φ}/n = -g_{n-1}`.
pub fn phi_sequence_mod(n: usize, p: u64, k: u32) -> Option<Vec<u64>> {
    if p == 3 {
        return None;
    }
    let m = word_modulus(p, k)?;
    let inv3 = arith::mod_inverse(&3.into(), &BigUint::from(m)).ok()?.to_u64()?;
    let mut g: Vec<u64> = Vec::with_capacity(n + 1);
    let mut rows = PascalRows::new(m);
    let mut pow2 = vec![1 % m];
    for i in 0..=n {
        let row: Vec<u64> = if i == 0 { vec![1 % m] } else { rows.advance().to_vec() };
        if i > 0 {
            pow2.push(pow2[i - 1] * 2 % m);
        }
        let mut s = 0u64;
        for j in 0..i {
            let w = (1 + pow2[i - j]) % m;
            s = (s + arith::mul_mod(arith::mul_mod(row[j], w, m), g[j], m)) % m;
        }
        g.push(arith::mul_mod((1 + m - s) % m, inv3, m));
    }
    Some(g)
}

type SequenceKey = (bool, u64, u32);

fn sequence_cache() -> &'static RwLock<HashMap<SequenceKey, Vec<u64>>> {
    static CACHE: OnceLock<RwLock<HashMap<SequenceKey, Vec<u64>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Entry `n` of the Euler (`eta = true`) or `φ` sequence mod `p^k`, memoized.
fn sequence_entry(eta: bool, n: usize, p: u64, k: u32) -> Option<u64> {
    let key = (eta, p, k);
    if let Some(v) = sequence_cache().read().expect("cache lock").get(&key) {
        if let Some(&x) = v.get(n) {
            return Some(x);
        }
    }
    let len = sequence_cache()
        .read()
        .expect("cache lock")
        .get(&key)
        .map_or(0, Vec::len);
    let target = n.max(2 * len);
    let v = if eta {
        euler_numbers_mod(target, p, k)?
    } else {
        phi_sequence_mod(target, p, k)?
    };
    let x = v[n];
    sequence_cache().write().expect("cache lock").insert(key, v);
    Some(x)
}

/// `B_{n,χ}/n` modulo `p^k` for `χ ∈ {η, φ}` via the integral recurrences.
///
/// Returns `None` when the character is not covered or the modulus is too wide.
pub fn gen_bernoulli_quotient_mod(n: usize, chi: &DirichletCharacter, p: u64, k: u32) -> Option<PadicInt> {
    if n == 0 {
        return None;
    }
    let m = arith::pow_u(p, k);
    let v = match chi.name().as_str() {
        "eta" => {
            // B_{n,η}/n = -E_{n-1}/2
            let e = sequence_entry(true, n - 1, p, k)?;
            let half = arith::mod_inverse(&2.into(), &m).ok()?;
            (&m - (BigUint::from(e) * half) % &m) % &m
        }
        "phi" => {
            let g = sequence_entry(false, n - 1, p, k)?;
            (&m - BigUint::from(g) % &m) % &m
        }
        _ => return None,
    };
    Some(PadicInt::from_residue(p, k, v))
}

/// `B_p(m,k;χ) = Σ_{i=1}^{k} (-1)^i C(k,i) B_{i(p-1)+1-m,χ}/(i(p-1)+1-m)` exactly.
pub fn bp_operator_exact(p: u64, m: u64, k: u64, chi: &DirichletCharacter) -> Result<BigRational> {
    if m == 0 || m >= p - 1 {
        return Err(Error::OutOfRange(format!(
            "B_p operator needs 0 < m < p - 1, got m = {m}"
        )));
    }
    let mut acc = rat_int(0);
    for i in 1..=k {
        let n = i * (p - 1) + 1 - m;
        let term = gen_bernoulli(n as usize, chi) / rat_int(n) * rat_int(arith::binomial(k, i));
        if i % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

/// [`bp_operator_exact`] embedded in `Z/p^N`.
pub fn bp_operator(m: u64, k: u64, chi: &DirichletCharacter, ctx: &PadicContext) -> Result<PadicInt> {
    let p = ctx.prime();
    let v = bp_operator_exact(p, m, k, chi)?;
    PadicInt::from_rational(&v, p, ctx.working_precision())
}

/// Exact check of the power-sum identity
/// `m r^{m-1} Σ_{n≤[N/r]} χ(n) n^{m-1}
///    = -r^{m-1} B_{m,χ} + (χ(r)/φ(r)) Σ_ψ ψ(-N) B_{m,χψ}(N)`,
/// with `ψ` running over the characters mod `r`.
pub fn power_sum_identity_check(chi: &DirichletCharacter, n: u64, m: usize, r: u64) -> Result<bool> {
    let (lhs, rhs) = power_sum_identity_sides(chi, n, m, r)?;
    Ok(lhs == rhs)
}

/// Both sides of the identity in [`power_sum_identity_check`].
pub fn power_sum_identity_sides(
    chi: &DirichletCharacter,
    n: u64,
    m: usize,
    r: u64,
) -> Result<(BigRational, BigRational)> {
    let d = chi.modulus();
    if n == 0 || !n.is_multiple_of(d) {
        return Err(Error::OutOfRange(format!("N = {n} must be a positive multiple of {d}")));
    }
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    if n.gcd(&r) != 1 {
        return Err(Error::NotCoprime { a: r.to_string(), m: n });
    }
    let psis = characters::characters_mod(r)?;
    let rm1 = rat_int(BigInt::from(r).pow(m as u32 - 1));
    let lhs = rat_int(m as u64)
        * &rm1
        * (1..=n / r)
            .map(|k| rat_int(BigInt::from(chi.value(k as i64)) * BigInt::from(k).pow(m as u32 - 1)))
            .fold(rat_int(0), |a, b| a + b);
    let nn = rat_int(n);
    let mut s = rat_int(0);
    for psi in &psis {
        let prod = chi.product(psi);
        s += rat_int(psi.value(-(n as i64))) * gen_bernoulli_poly(m, &prod, &nn);
    }
    let rhs = -rm1 * gen_bernoulli_summation(m, chi)
        + BigRational::new(chi.value(r as i64).into(), arith::totient(r).into()) * s;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::characters::{eta, phi, trivial_character};

    #[test]
    fn small_bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert!(bernoulli_number(13).is_zero());
    }

    #[test]
    fn polynomials() {
        assert_eq!(bernoulli_poly(2, &rat(1, 2)), rat(-1, 12));
        assert_eq!(bernoulli_poly(1, &rat(3, 7)), rat(3, 7) - rat(1, 2));
        for n in 0..10 {
            assert_eq!(bernoulli_poly(n, &rat(0, 1)), bernoulli_number(n));
        }
    }

    #[test]
    fn euler_numbers() {
        let want = [1i64, 0, -1, 0, 5, 0, -61, 0, 1385];
        for (n, &e) in want.iter().enumerate() {
            assert_eq!(euler_number(n), BigInt::from(e));
        }
    }

    #[test]
    fn euler_and_eta() {
        for n in (0..20).step_by(2) {
            let q = gen_bernoulli(n + 1, &eta()) / rat_int(n as u64 + 1);
            assert_eq!(q, rat_int(euler_number(n)) * rat(-1, 2));
        }
    }

    #[test]
    fn trivial_convention() {
        let one = trivial_character();
        assert_eq!(gen_bernoulli(1, &one), rat(-1, 2));
        assert_eq!(gen_bernoulli_summation(1, &one), rat(1, 2));
        assert_eq!(gen_bernoulli(6, &one), bernoulli_number(6));
    }

    #[test]
    fn modular_recurrences_match_exact() {
        for p in [5u64, 7, 11] {
            for n in 1..40usize {
                for chi in [eta(), phi()] {
                    let exact = gen_bernoulli(n, &chi) / rat_int(n as u64);
                    let want = PadicInt::from_rational(&exact, p, 4);
                    let got = gen_bernoulli_quotient_mod(n, &chi, p, 4);
                    match want {
                        Ok(w) => assert_eq!(got.unwrap(), w, "p={p} n={n} {chi}"),
                        Err(_) => assert!(n % (p as usize) == 0),
                    }
                }
            }
        }
    }

    #[test]
    fn bp_operator_examples() {
        let one = trivial_character();
        assert_eq!(bp_operator_exact(7, 2, 1, &one).unwrap(), rat(0, 1));
        assert_eq!(
            bp_operator_exact(11, 3, 1, &eta()).unwrap(),
            -gen_bernoulli(8, &eta()) / rat_int(8)
        );
        assert!(bp_operator_exact(7, 6, 1, &one).is_err());
    }

    #[test]
    fn power_sums() {
        let one = trivial_character();
        assert!(power_sum_identity_check(&one, 7, 3, 1).unwrap());
        assert!(power_sum_identity_check(&one, 7, 1, 2).unwrap());
        assert!(power_sum_identity_check(&phi(), 6, 2, 1).unwrap());
        assert!(power_sum_identity_check(&eta(), 12, 4, 1).unwrap());
        assert!(power_sum_identity_check(&one, 12, 3, 2).is_err());
    }
}
