use congruence_core::arith::{is_prime, rat, rat_int, BigRational};
use congruence_core::bernoulli::bernoulli_number;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Akiyama–Tanigawa, which yields `B_1 = +1/2`.
fn akiyama_tanigawa(n: usize) -> Vec<BigRational> {
    let mut row: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            row[j - 1] = rat_int(j as u64) * (&row[j - 1] - &row[j]);
        }
        out.push(row[0].clone());
    }
    out
}

#[test]
fn matches_akiyama_tanigawa() {
    let want = akiyama_tanigawa(80);
    for (n, w) in want.iter().enumerate() {
        let w = if n == 1 { -w } else { w.clone() };
        assert_eq!(bernoulli_number(n), w, "B_{n}");
    }
}

#[test]
fn von_staudt_clausen() {
    for k in 1..=120u64 {
        let b = bernoulli_number(2 * k as usize);
        let den: BigInt = (2..=2 * k + 1)
            .filter(|&q| is_prime(q) && (2 * k) % (q - 1) == 0)
            .map(BigInt::from)
            .product();
        assert_eq!(b.denom(), &den, "denominator of B_{}", 2 * k);
        // B_2k + Σ 1/q is an integer
        let s = (2..=2 * k + 1)
            .filter(|&q| is_prime(q) && (2 * k) % (q - 1) == 0)
            .fold(b, |acc, q| acc + rat(1, q as i64));
        assert!(s.is_integer(), "k = {k}");
    }
}

#[test]
fn faulhaber_power_sums() {
    // Σ_{a<N} a^m = Σ_k C(m+1, k) B_k N^{m+1-k} / (m+1)
    for m in 0..12u32 {
        for n in 1..30u64 {
            let direct: BigInt = (0..n).map(|a| BigInt::from(a).pow(m)).sum();
            let mut binom = BigRational::one();
            let mut s = BigRational::zero();
            for k in 0..=m as usize {
                s += &binom * bernoulli_number(k) * rat_int(BigInt::from(n).pow(m + 1 - k as u32));
                binom *= rat(m as i64 + 1 - k as i64, k as i64 + 1);
            }
            assert_eq!(s / rat_int(m as u64 + 1), rat_int(direct), "m = {m}, N = {n}");
        }
    }
}
