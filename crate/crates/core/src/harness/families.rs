use num_bigint::BigInt;
use serde_json::json;

use super::{Cell, Family, Outcome};
use crate::arith::{self, rat_int, BigRational};
use crate::bernoulli;
use crate::characters::{eta, phi, trivial_character, DirichletCharacter, Parity};
use crate::error::Result;
use crate::expansions::*;
use crate::lfunction::{self, LSeriesContext, QuotientRoute};
use crate::oracle;
use crate::padic::{PadicContext, PadicInt};

static REGISTRY: [Family; 16] = [
    Family {
        name: "cc5",
        summary: "C(cp, dp)/C(c, d) modulo p^8 and its partial-range analogue",
        applies: at_least_5,
        cells: cc5,
    },
    Family {
        name: "dirichlet",
        summary: "((p-1)/2)! for p ≡ 3 (mod 4), modulo p and p^4",
        applies: three_mod_four,
        cells: dirichlet,
    },
    Family {
        name: "gamma_p",
        summary: "binomial coefficients as Γ_p quotients times a p-adic limit",
        applies: at_least_5,
        cells: gamma,
    },
    Family {
        name: "gauss",
        summary: "C((p-1)/2, (p-1)/4) for p ≡ 1 (mod 4)",
        applies: one_mod_four,
        cells: gauss,
    },
    Family {
        name: "glaisher",
        summary: "H_{p-1}^{(m)} modulo p^2 or p^3",
        applies: at_least_5,
        cells: glaisher,
    },
    Family {
        name: "hmhs",
        summary: "homogeneous multiple harmonic sums",
        applies: at_least_5,
        cells: hmhs,
    },
    Family {
        name: "jacobi",
        summary: "C(2(p-1)/3, (p-1)/3) for p ≡ 1 (mod 3)",
        applies: one_mod_three,
        cells: jacobi,
    },
    Family {
        name: "kummer",
        summary: "L_p special values, Kummer congruences and the B_p operator",
        applies: at_least_5,
        cells: kummer,
    },
    Family {
        name: "lemher",
        summary: "harmonic sums over [1, p/r]",
        applies: at_least_5,
        cells: lemher,
    },
    Family {
        name: "lemma1",
        summary: "the power-sum identity over Q",
        applies: at_least_5,
        cells: lemma1,
    },
    Family {
        name: "main4",
        summary: "full-period harmonic sums via L_p series",
        applies: at_least_5,
        cells: main4,
    },
    Family {
        name: "main4k",
        summary: "partial harmonic sums via L_p series",
        applies: at_least_5,
        cells: main4k,
    },
    Family {
        name: "morley",
        summary: "C(p-1, (p-1)/2) and C(p-1, [p/4])",
        applies: at_least_5,
        cells: morley,
    },
    Family {
        name: "vpi",
        summary: "congruences between the V_{p,i}",
        applies: at_least_5,
        cells: vpi,
    },
    Family {
        name: "wilson",
        summary: "(p-1)! and ((p-1)/2)!^2",
        applies: at_least_5,
        cells: wilson,
    },
    Family {
        name: "wolstenholme",
        summary: "H_{p-1}, C(2p-1, p-1) and the finite Bernoulli forms",
        applies: at_least_5,
        cells: wolstenholme,
    },
];

/// All registered families, sorted by name.
pub fn registry() -> &'static [Family] {
    &REGISTRY
}

fn at_least_5(p: u64) -> Option<&'static str> {
    (p < 5).then_some("needs p ≥ 5")
}

fn one_mod_four(p: u64) -> Option<&'static str> {
    at_least_5(p).or((p % 4 != 1).then_some("needs p ≡ 1 (mod 4)"))
}

fn three_mod_four(p: u64) -> Option<&'static str> {
    at_least_5(p).or((p % 4 != 3).then_some("needs p ≡ 3 (mod 4)"))
}

fn one_mod_three(p: u64) -> Option<&'static str> {
    at_least_5(p).or((p % 3 != 1).then_some("needs p ≡ 1 (mod 3)"))
}

/// A statement proved modulo `p^nat`, checked at `min(nat, override)`.
fn capped(nat: u32, precision: Option<u32>) -> u32 {
    precision.map_or(nat, |q| q.min(nat))
}

/// An expansion valid at any level, checked at the override or `default`.
fn level(default: u32, precision: Option<u32>) -> u32 {
    precision.unwrap_or(default)
}

fn ctx(p: u64, j: u32) -> Result<PadicContext> {
    PadicContext::new(p, j)
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

fn frac(q: &BigRational, p: u64, j: u32) -> Result<PadicInt> {
    PadicInt::from_rational(q, p, j)
}

fn fact(k: u64, p: u64, j: u32) -> Result<PadicInt> {
    Ok(oracle::factorial_mod(k, p, j, false)?.value)
}

fn binom(n: u64, k: u64, p: u64, j: u32) -> Result<PadicInt> {
    Ok(oracle::binomial_mod(n, k, p, j)?.value)
}

fn hsum(d: u64, r: u64, m: u64, p: u64, j: u32) -> Result<PadicInt> {
    Ok(oracle::harmonic_sum_mod(d, r, m, p, j)?.value)
}

fn vs(lhs: Result<PadicInt>, rhs: Result<ExpansionResult>) -> Result<Outcome> {
    Ok(Outcome::residues(lhs?, rhs?.value))
}

fn wilson(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    for order in 1..=3 {
        let j = capped(order, prec);
        cells.push(Cell::run(json!({"form": "classical", "order": order}), j, move || {
            vs(fact(p - 1, p, j), wilson_classical_rhs(p, order))
        }));
    }
    let j = capped(4, prec);
    cells.push(Cell::run(json!({"form": "fourth"}), j, move || {
        vs(fact(p - 1, p, j), wilson_rhs(p, 4, &ctx(p, 4)?))
    }));
    let j = level(4, prec);
    cells.push(Cell::run(json!({"form": "log"}), j, move || {
        vs(fact(p - 1, p, j), wilson_log_rhs(p, j, &ctx(p, j)?))
    }));
    let j = capped(4, prec);
    cells.push(Cell::run(json!({"form": "half-square"}), j, move || {
        let h = fact((p - 1) / 2, p, j)?;
        let four = PadicInt::new(p, j, &(BigInt::from(4).pow(p as u32 - 1) * sign((p - 1) / 2 % 2 == 1)));
        vs(h.checked_mul(&h)?.checked_mul(&four), half_factorial_square_rhs(p))
    }));
    cells
}

fn dirichlet(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    let j = capped(1, prec);
    cells.push(Cell::run(json!({"form": "sign"}), j, move || {
        vs(fact((p - 1) / 2, p, j), dirichlet_rhs(p))
    }));
    let j = capped(4, prec);
    let params = json!({"form": "fourth"});
    if p < 7 {
        cells.push(Cell::skip(params, j, "needs p ≥ 7"));
    } else {
        cells.push(Cell::run(params, j, move || {
            let two = PadicInt::new(p, j, &BigInt::from(2).pow(p as u32 - 1));
            vs(
                two.checked_mul(&fact((p - 1) / 2, p, j)?),
                dirichlet_half_factorial_rhs(p, &ctx(p, 4)?),
            )
        }));
    }
    cells
}

type Closed = fn(u64, u32) -> Result<ExpansionResult>;
type Series = fn(u64, u32, &PadicContext) -> Result<ExpansionResult>;

fn binomial_chain(p: u64, prec: Option<u32>, n: u64, k: u64, closed: Closed, series: Series) -> Vec<Cell> {
    let mut cells = Vec::new();
    for order in 1..=3 {
        let j = capped(order, prec);
        cells.push(Cell::run(json!({"form": "closed", "order": order}), j, move || {
            vs(binom(n, k, p, j), closed(p, order))
        }));
    }
    let j = level(4, prec);
    cells.push(Cell::run(json!({"form": "series"}), j, move || {
        vs(binom(n, k, p, j), series(p, j, &ctx(p, j)?))
    }));
    cells
}

fn gauss(p: u64, prec: Option<u32>) -> Vec<Cell> {
    binomial_chain(p, prec, (p - 1) / 2, (p - 1) / 4, gauss_closed, gauss_expansion)
}

fn jacobi(p: u64, prec: Option<u32>) -> Vec<Cell> {
    binomial_chain(p, prec, 2 * (p - 1) / 3, (p - 1) / 3, jacobi_closed, jacobi_expansion)
}

fn variant_name(v: BernoulliVariant) -> &'static str {
    match v {
        BernoulliVariant::Operator => "operator",
        BernoulliVariant::SingleTerm => "quotient",
    }
}

const VARIANTS: [BernoulliVariant; 2] = [BernoulliVariant::Operator, BernoulliVariant::SingleTerm];

fn wolstenholme(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    let j = capped(2, prec);
    cells.push(Cell::run(json!({"form": "harmonic"}), j, move || {
        Ok(Outcome::vanishes(hsum(1, 1, 1, p, j)?))
    }));
    let j = capped(1, prec);
    cells.push(Cell::run(json!({"form": "square"}), j, move || {
        Ok(Outcome::vanishes(hsum(1, 1, 2, p, j)?))
    }));
    let j = capped(3, prec);
    cells.push(Cell::run(json!({"form": "binomial"}), j, move || {
        vs(binom(2 * p - 1, p - 1, p, j), wolstenholme_binomial_rhs(p))
    }));
    for d in 1..=3u64 {
        for m in 1..=4u64 {
            for j in 1..=level(5, prec) {
                for v in VARIANTS {
                    let params = json!({"form": "finite", "variant": variant_name(v), "d": d, "m": m});
                    if j as u64 + m > p - 1 {
                        cells.push(Cell::skip(params, j, "needs j + m ≤ p - 1"));
                        continue;
                    }
                    cells.push(Cell::run(params, j, move || {
                        let spec = HarmonicSumSpec::new(d, 1, m, j);
                        vs(hsum(d, 1, m, p, j), corollary_c1_rhs(&spec, v, &ctx(p, j)?))
                    }));
                }
            }
        }
    }
    cells
}

fn glaisher(p: u64, prec: Option<u32>) -> Vec<Cell> {
    (1..=6u64)
        .map(|m| {
            let j = capped(if m % 2 == 0 { 2 } else { 3 }, prec);
            let params = json!({"m": m});
            if p < m + 3 {
                return Cell::skip(params, j, "needs p ≥ m + 3");
            }
            Cell::run(params, j, move || vs(hsum(1, 1, m, p, j), glaisher_rhs(p, m)))
        })
        .collect()
}

fn main4(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    for d in 1..=3u64 {
        for m in 1..=4u64 {
            for j in 1..=level(5, prec) {
                cells.push(Cell::run(json!({"d": d, "m": m}), j, move || {
                    let spec = HarmonicSumSpec::new(d, 1, m, j);
                    vs(hsum(d, 1, m, p, j), washington_rhs(&spec, &ctx(p, j)?))
                }));
            }
        }
    }
    cells
}

/// `(r, d)` pairs for the partial-range families, with the reason a pair is
/// out of scope at `p`.
fn partial_pairs(p: u64, ds: &[u64]) -> Vec<(u64, u64, Option<&'static str>)> {
    let mut out = Vec::new();
    for r in [2u64, 3, 4, 6] {
        for &d in ds {
            if arith::gcd_u64(r, d) != 1 {
                continue;
            }
            let why = if p <= r {
                Some("needs p > r")
            } else if d % p == 0 {
                Some("needs p ∤ d")
            } else {
                None
            };
            out.push((r, d, why));
        }
    }
    out
}

fn main4k(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    for (r, d, why) in partial_pairs(p, &[1, 3]) {
        for m in 1..=3u64 {
            for j in 1..=level(4, prec) {
                let params = json!({"r": r, "d": d, "m": m});
                if let Some(why) = why {
                    cells.push(Cell::skip(params, j, why));
                    continue;
                }
                cells.push(Cell::run(params, j, move || {
                    let spec = HarmonicSumSpec::new(d, r, m, j);
                    vs(hsum(d, r, m, p, j), lemher_rhs(&spec, &ctx(p, j)?))
                }));
            }
        }
    }
    cells
}

fn lemher(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    for r in [2u64, 3, 4, 6] {
        let j = capped(2, prec);
        let params = json!({"form": "classical", "r": r});
        if p <= r {
            cells.push(Cell::skip(params, j, "needs p > r"));
            continue;
        }
        cells.push(Cell::run(params, j, move || {
            let lhs = if r == 2 {
                hsum(1, 2, 1, p, j)
            } else {
                oracle::lemher_shifted_sum_mod(r, p, j).map(|o| o.value)
            };
            vs(lhs, lemher_classical_rhs(p, r))
        }));
    }
    for (r, d, why) in partial_pairs(p, &[1, 3]) {
        for m in 1..=3u64 {
            for j in 1..=level(4, prec) {
                let mut forms: Vec<(&str, Option<BernoulliVariant>)> =
                    VARIANTS.iter().map(|&v| ("finite", Some(v))).collect();
                if r == 2 || r == 4 {
                    forms.push(("euler", None));
                }
                for (form, v) in forms {
                    let params = match v {
                        Some(v) => json!({"form": form, "variant": variant_name(v), "r": r, "d": d, "m": m}),
                        None => json!({"form": form, "r": r, "d": d, "m": m}),
                    };
                    let why = why.or((j as u64 + m > p - 1).then_some("needs j + m ≤ p - 1"));
                    if let Some(why) = why {
                        cells.push(Cell::skip(params, j, why));
                        continue;
                    }
                    cells.push(Cell::run(params, j, move || {
                        let spec = HarmonicSumSpec::new(d, r, m, j);
                        let c = ctx(p, j)?;
                        let rhs = match v {
                            Some(v) => corollary_c2_rhs(&spec, v, &c),
                            None => corollary_cj2_rhs(&spec, &c),
                        };
                        vs(hsum(d, r, m, p, j), rhs)
                    }));
                }
            }
        }
    }
    cells
}

fn inverse_power(base: u64, e: u32, p: u64, j: u32) -> Result<PadicInt> {
    PadicInt::new(p, j, &BigInt::from(base).pow(e)).inverse()
}

fn morley(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    let j = capped(3, prec);
    cells.push(Cell::run(json!({"form": "morley"}), j, move || {
        vs(binom(p - 1, (p - 1) / 2, p, j), morley_rhs(p))
    }));
    let half = move |j: u32| -> Result<PadicInt> {
        let c = binom(p - 1, (p - 1) / 2, p, j)?;
        let s = PadicInt::from_i64(p, j, sign((p - 1) / 2 % 2 == 1));
        c.checked_mul(&s)?.checked_mul(&inverse_power(4, p as u32 - 1, p, j)?)
    };
    let quarter = move |j: u32| -> Result<PadicInt> {
        let q = p / 4;
        let c = binom(p - 1, q, p, j)?;
        let s = PadicInt::from_i64(p, j, sign(q % 2 == 1));
        c.checked_mul(&s)?
            .checked_mul(&inverse_power(2, 3 * (p as u32 - 1), p, j)?)
    };
    let j = capped(8, prec);
    let params = json!({"form": "half"});
    if p < 11 {
        cells.push(Cell::skip(params, j, "needs p ≥ 11"));
    } else {
        cells.push(Cell::run(params, j, move || vs(half(j), morley_c_s1(&ctx(p, 8)?))));
    }
    let j = capped(6, prec);
    for form in ["quarter", "quarter-series"] {
        let params = json!({"form": form});
        if p < 7 {
            cells.push(Cell::skip(params, j, "needs p ≥ 7"));
            continue;
        }
        cells.push(Cell::run(params, j, move || {
            let c = ctx(p, 6)?;
            let rhs = if form == "quarter" {
                morley_c_s1v(&c)?.value
            } else {
                let route = binom_ratio_lemher(-1, 1, 4, 6, &c)?.value;
                route.checked_mul(&inverse_power(2, 3 * (p as u32 - 1), p, 6)?)?
            };
            Ok(Outcome::residues(quarter(j)?, rhs))
        }));
    }
    cells
}

fn ratio_oracle(c: u64, d: u64, p: u64, j: u32) -> Result<PadicInt> {
    let small = PadicInt::new(p, j, &BigInt::from(arith::binomial(c, d)));
    binom(c * p, d * p, p, j)?.checked_mul(&small.inverse()?)
}

fn cc5(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    for (c, d) in [(2u64, 1u64), (3, 1), (3, 2)] {
        let j = level(8, prec);
        cells.push(Cell::run(json!({"form": "series", "c": c, "d": d}), j, move || {
            vs(ratio_oracle(c, d, p, j), binom_ratio_cc5(c, d, j, &ctx(p, j)?))
        }));
        cells.push(Cell::run(json!({"form": "product", "c": c, "d": d}), j, move || {
            vs(ratio_oracle(c, d, p, j), binom_ratio_product(c, d, p, j))
        }));
        let j = capped(8, prec);
        let params = json!({"form": "closed", "c": c, "d": d});
        if p < 11 {
            cells.push(Cell::skip(params, j, "needs p ≥ 11"));
        } else {
            cells.push(Cell::run(params, j, move || {
                vs(ratio_oracle(c, d, p, j), binom_ratio_c4(c, d, &ctx(p, 8)?))
            }));
        }
    }
    for (r, d, why) in partial_pairs(p, &[1, 5]) {
        for c in [-1i64, 1, 2, -3] {
            let j = level(5, prec);
            let params = json!({"form": "partial", "r": r, "d": d, "c": c});
            if let Some(why) = why {
                cells.push(Cell::skip(params, j, why));
                continue;
            }
            let (big, small) = ((d * p / r) as i64, (d / r) as i64);
            let den = arith::binomial_signed(c + small, small as u64);
            if den == BigInt::from(0) {
                cells.push(Cell::skip(params, j, "C(c + [d/r], [d/r]) vanishes"));
                continue;
            }
            cells.push(Cell::run(params, j, move || {
                let num = oracle::generalized_binomial(c * p as i64 + big, big as u64)?;
                let lhs = frac(&BigRational::new(num, den.clone()), p, j);
                vs(lhs, binom_ratio_lemher(c, d, r, j, &ctx(p, j)?))
            }));
        }
    }
    cells
}

fn hmhs(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    for (d, r) in [(1u64, 1u64), (2, 1), (1, 2), (3, 2), (1, 3), (1, 4), (1, 6)] {
        for m in 1..=2u64 {
            for n in 1..=3u64 {
                for strict in [true, false] {
                    let j = level(3, prec);
                    let params = json!({"form": "series", "d": d, "r": r, "m": m, "n": n, "strict": strict});
                    if p <= r {
                        cells.push(Cell::skip(params, j, "needs p > r"));
                        continue;
                    }
                    cells.push(Cell::run(params, j, move || {
                        let lhs = oracle::hmhs_mod(d, r, m, n, strict, p, j).map(|o| o.value);
                        vs(lhs, hmhs_rhs(d, r, m, n, j, strict, &ctx(p, j)?))
                    }));
                }
            }
        }
    }
    for m in 1..=3u64 {
        for n in 2..=4u64 {
            let small = m * n + 4 >= p;
            for d in 1..=3u64 {
                for strict in [true, false] {
                    let j = capped(if (m * n) % 2 == 1 { 4 } else { 3 }, prec);
                    let params = json!({"form": "full", "d": d, "m": m, "n": n, "strict": strict});
                    if small {
                        cells.push(Cell::skip(params, j, "needs mn + 4 < p"));
                        continue;
                    }
                    cells.push(Cell::run(params, j, move || {
                        let lhs = oracle::hmhs_mod(d, 1, m, n, strict, p, j).map(|o| o.value);
                        vs(lhs, c5_closed(d, m, n, strict, &ctx(p, 4)?))
                    }));
                }
            }
            for d in [1u64, 3] {
                let j = capped(if m % 2 == 0 { 3 } else { 2 }, prec);
                let params = json!({"form": "half", "d": d, "m": m, "n": n, "strict": true});
                if small {
                    cells.push(Cell::skip(params, j, "needs mn + 4 < p"));
                    continue;
                }
                if !(m % 2 == 0 || (m * n) % 2 == 1) {
                    cells.push(Cell::skip(params, j, "no closed form for m odd and n even"));
                    continue;
                }
                cells.push(Cell::run(params, j, move || {
                    let lhs = oracle::hmhs_mod(d, 2, m, n, true, p, j).map(|o| o.value);
                    vs(lhs, c5ug_closed(d, m, n, &ctx(p, 3)?))
                }));
            }
        }
    }
    cells
}

fn gamma(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    let j = level(3, prec);
    for m in [3u64, 4, 6] {
        for a in 1..m {
            for b in 1..=m - a {
                if a > b {
                    continue;
                }
                let params = json!({"a": a, "b": b, "m": m});
                if !(p - 1).is_multiple_of(m) {
                    cells.push(Cell::skip(params, j, "needs p ≡ 1 (mod m)"));
                    continue;
                }
                if arith::pow_u(p, j) > GAMMA_PRODUCT_LIMIT.into() {
                    cells.push(Cell::skip(params, j, "p^j exceeds the Γ_p table limit"));
                    continue;
                }
                cells.push(Cell::run(params, j, move || {
                    let lhs = binom((a + b) * (p - 1) / m, a * (p - 1) / m, p, j);
                    vs(lhs, gamma_limit_rhs(a, b, m, &ctx(p, j)?))
                }));
            }
        }
    }
    cells
}

fn characters() -> [DirichletCharacter; 3] {
    [trivial_character(), eta(), phi()]
}

fn is_trivial(psi: &DirichletCharacter, e: i64, p: u64) -> bool {
    psi.is_principal() && e.rem_euclid(p as i64 - 1) == 0
}

fn l_int(s: i64, psi: &DirichletCharacter, e: i64, lsc: &LSeriesContext, j: u32) -> Result<PadicInt> {
    lfunction::lp_eval(s, psi, e, lsc)?.to_padic_int(j)
}

fn kummer(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    let top = level(3, prec);
    let wp = level(4, prec);
    for psi in characters() {
        let name = psi.name();
        for s in -3i64..=0 {
            let e = 1 - s;
            let params = json!({"form": "special", "psi": name, "s": s});
            if lfunction::parity(&psi, e) == Parity::Odd {
                cells.push(Cell::skip(params, wp, "odd character"));
                continue;
            }
            let psi = psi.clone();
            cells.push(Cell::run(params, wp, move || {
                let c = ctx(p, wp)?;
                let scale = if is_trivial(&psi, e, p) {
                    rat_int(p as i64 * (1 - s))
                } else {
                    rat_int(1)
                };
                let a = lfunction::lp_eval(s, &psi, e, &LSeriesContext::new(&c, &psi)?)?;
                let b = lfunction::lp_special(s, &psi, e, &c)?;
                let a = a.mul_rational(&scale).to_padic_int(wp)?;
                Ok(Outcome::residues(a, b.mul_rational(&scale).to_padic_int(wp)?))
            }));
        }
        for e in [0i64, 1] {
            let trivial = is_trivial(&psi, e, p);
            let odd = lfunction::parity(&psi, e) == Parity::Odd;
            for s in [-1i64, 2] {
                let params = json!({"form": "d-independence", "psi": name, "e": e, "s": s});
                let psi = psi.clone();
                cells.push(Cell::run(params, wp, move || {
                    let c = ctx(p, wp)?;
                    let f = psi.modulus();
                    // p(1-s)L_p(s, 1) is the integral quantity for the trivial character
                    let scale = if trivial {
                        rat_int(p as i64 * (1 - s))
                    } else {
                        rat_int(1)
                    };
                    let at = |d: u64| -> Result<PadicInt> {
                        let lsc = LSeriesContext::with_d(&c, &psi, d)?;
                        lfunction::lp_eval(s, &psi, e, &lsc)?
                            .mul_rational(&scale)
                            .to_padic_int(wp)
                    };
                    Ok(Outcome::residues(at(p * f)?, at(3 * p * f)?))
                }));
            }
            if odd {
                for s in [2i64, 3] {
                    let params = json!({"form": "odd", "psi": name, "e": e, "s": s});
                    let psi = psi.clone();
                    cells.push(Cell::run(params, wp, move || {
                        let c = ctx(p, wp)?;
                        Ok(Outcome::vanishes(l_int(
                            s,
                            &psi,
                            e,
                            &LSeriesContext::new(&c, &psi)?,
                            wp,
                        )?))
                    }));
                }
                continue;
            }
            for s in [-1i64, 2] {
                for t in [1i64, 2] {
                    for k in 1..=top {
                        for form in ["continuity", "difference"] {
                            let params = json!({"form": form, "psi": name, "e": e, "s": s, "t": t, "k": k});
                            if trivial {
                                cells.push(Cell::skip(params, k, "needs a nontrivial character"));
                                continue;
                            }
                            let psi = psi.clone();
                            cells.push(Cell::run(params, k, move || kummer_cell(form, s, t, k, &psi, e, p)));
                        }
                    }
                }
            }
        }
        for m in 1..=3u64 {
            for k in 1..=top {
                for form in ["operator", "quotient"] {
                    let params = json!({"form": form, "psi": name, "m": m, "k": k});
                    if m + 1 >= p {
                        cells.push(Cell::skip(params, k, "needs m < p - 1"));
                        continue;
                    }
                    if is_trivial(&psi, 1 - m as i64, p) {
                        cells.push(Cell::skip(params, k, "pole of L_p at s = 1"));
                        continue;
                    }
                    if form == "operator" && m + k as u64 > p - 1 {
                        cells.push(Cell::skip(params, k, "needs m + k ≤ p - 1"));
                        continue;
                    }
                    if form == "quotient" && !independent_quotient(&psi, p, k, m) {
                        cells.push(Cell::skip(params, k, "Bernoulli index beyond the independent routes"));
                        continue;
                    }
                    let psi = psi.clone();
                    cells.push(Cell::run(params, k, move || three_way(form, m, k, &psi, p)));
                }
            }
        }
    }
    cells
}

fn kummer_cell(form: &str, s: i64, t: i64, k: u32, psi: &DirichletCharacter, e: i64, p: u64) -> Result<Outcome> {
    let c = ctx(p, k)?;
    let lsc = LSeriesContext::new(&c, psi)?;
    let l = |x: i64| lfunction::lp_eval(x, psi, e, &lsc);
    if form == "continuity" {
        let shift = (p as i64).pow(k - 1) * t;
        return Ok(Outcome::residues(
            l(s)?.to_padic_int(k)?,
            l(s + shift)?.to_padic_int(k)?,
        ));
    }
    let mut diff = crate::padic::PadicNumber::exact_zero(p);
    for i in 0..=k as u64 {
        let coeff = BigInt::from(arith::binomial(k as u64, i)) * sign((k as u64 - i) % 2 == 1);
        diff = &diff + &l(s + i as i64 * t)?.mul_rational(&rat_int(coeff));
    }
    Ok(Outcome::vanishes(diff.to_padic_int(k)?))
}

/// Whether `B_{N,ψ}/N`, `N = p^{k-1}(p-1) + 1 - m`, is available without `L_p`.
fn independent_quotient(psi: &DirichletCharacter, p: u64, k: u32, m: u64) -> bool {
    let n = (p as u128).pow(k - 1) * (p as u128 - 1) + 1 - m as u128;
    n <= lfunction::EXACT_INDEX_LIMIT as u128 || (!psi.is_principal() && n <= lfunction::RECURRENCE_INDEX_LIMIT as u128)
}

fn three_way(form: &str, m: u64, k: u32, psi: &DirichletCharacter, p: u64) -> Result<Outcome> {
    let c = ctx(p, k)?;
    let l = lfunction::lp_value(m as i64, psi, 1 - m as i64, &c)?.to_padic_int(k)?;
    let lhs = if form == "operator" {
        bernoulli::bp_operator(m, k as u64, psi, &c)?
    } else {
        let q = lfunction::bernoulli_quotient(k, m as i64, psi, &c)?;
        debug_assert_ne!(q.route, QuotientRoute::LFunction);
        (-q.value).to_padic_int(k)?
    };
    Ok(Outcome::residues(lhs, l))
}

fn lemma1(p: u64, _prec: Option<u32>) -> Vec<Cell> {
    let mut cells = Vec::new();
    for chi in characters() {
        let n = chi.modulus() * p;
        for m in 1..=4usize {
            for r in [1u64, 2, 3, 4, 6] {
                let params = json!({"chi": chi.name(), "n": n, "m": m, "r": r});
                if arith::gcd_u64(r, n) != 1 {
                    cells.push(Cell::skip(params, 0, "needs gcd(r, N) = 1"));
                    continue;
                }
                let chi = chi.clone();
                cells.push(Cell::run(params, 0, move || {
                    let (lhs, rhs) = bernoulli::power_sum_identity_sides(&chi, n, m, r)?;
                    Ok(Outcome::Exact { lhs, rhs })
                }));
            }
        }
    }
    cells
}

fn vpi(p: u64, prec: Option<u32>) -> Vec<Cell> {
    let combos: [(&str, [i64; 3], u32); 6] = [
        ("V1", [1, 0, 0], 1),
        ("V2", [0, 1, 0], 1),
        ("V3", [0, 0, 1], 1),
        ("2V1-V2", [2, -1, 0], 2),
        ("3V2-2V3", [0, 3, -2], 2),
        ("3V1-3V2+V3", [3, -3, 1], 3),
    ];
    combos
        .into_iter()
        .map(|(name, coeffs, nat)| {
            let j = capped(nat, prec);
            Cell::run(json!({"combination": name}), j, move || {
                let mut acc = rat_int(0);
                for (i, c) in coeffs.iter().enumerate() {
                    acc += rat_int(*c) * v_p(p, i as u64 + 1);
                }
                Ok(Outcome::vanishes(frac(&acc, p, j)?))
            })
        })
        .collect()
}
