//! Closed counting formulas, evaluated in exact integer arithmetic.
//!
//! The `*_n5` functions hold for `C′_5`; the composed-word formulas take
//! their chunk counts as inputs and so apply for every `n`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::CensusError;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pow3(e: usize) -> BigUint {
    big(3).pow(e as u32)
}

/// `l_H(d) = 1 + 8d·3^{d−1}`.
pub fn l_h_n5(d: usize) -> BigUint {
    if d == 0 {
        return BigUint::one();
    }
    BigUint::one() + big(8 * d as u64) * pow3(d - 1)
}

/// Normal forms of length exactly `m ≥ 1`: `8·3^{m−1}`.
pub fn l_hs_n5(m: usize) -> BigUint {
    if m == 0 {
        return BigUint::one();
    }
    big(8) * pow3(m - 1)
}

/// `l_H^U(d) = 3^{d−1}(3 + 2d)`.
pub fn l_hu_n5(d: usize) -> BigUint {
    if d == 0 {
        return BigUint::one();
    }
    pow3(d - 1) * big(3 + 2 * d as u64)
}

/// `e(d) = 2(3^d − 1)`.
pub fn e_n5(d: usize) -> BigUint {
    big(2) * (pow3(d) - 1u32)
}

/// `e′(d) = 8(3^d − 1) − 4d(2 + d)`.
pub fn e_prime_n5(d: usize) -> BigUint {
    let d64 = d as u64;
    big(8) * (pow3(d) - 1u32) - big(4 * d64 * (2 + d64))
}

/// `l_U(d) = 1 + 2d(d + 1)`, for every `n`.
pub fn l_u(d: usize) -> BigUint {
    let d = d as u64;
    big(1 + 2 * d * (d + 1))
}

/// `l^i(d, k) = 2k·l_U(d)`.
pub fn l_i(d: usize, k: usize) -> BigUint {
    big(2 * k as u64) * l_u(d)
}

/// Type (ii) words for one composition into `r` parts: `2^r·b·a^{r−1}`.
pub fn l_ii_stratum(b: &BigUint, a: &BigUint, r: usize) -> BigUint {
    if r == 0 {
        return BigUint::zero();
    }
    (BigUint::one() << r) * b * a.pow(r as u32 - 1)
}

/// `(b/a)·[(2a + 1)^k − 1]`; the division has to be exact.
pub fn geometric_total(b: &BigUint, a: &BigUint, k: usize) -> Result<BigUint, CensusError> {
    if a.is_zero() {
        return Err(CensusError::NonIntegralFormula("division by zero".into()));
    }
    let num = b * ((a * 2u32 + 1u32).pow(k as u32) - 1u32);
    let (q, r) = num.div_rem(a);
    if !r.is_zero() {
        return Err(CensusError::NonIntegralFormula(format!("{num} / {a}")));
    }
    Ok(q)
}

/// The `t`-power bound for type (ii) words with `a = l_H^U(d)`, `b = l_H(d)`,
/// `c = 2d`, summed over `t`-lengths `1..=k`. `None` when `a ≤ c`.
pub fn t_power_bound(a: f64, b: f64, c: f64, k: usize) -> Option<f64> {
    if a <= c {
        return None;
    }
    let q = 2.0 * c.sqrt() * (a.sqrt() + c.sqrt());
    Some(2.0 * a.sqrt() * b * c * q.powi(k as i32) / ((a - c) * (q - 1.0)))
}

/// The same bound before the geometric sum is closed off.
pub fn t_power_bound_sum(a: f64, b: f64, c: f64, k: usize) -> Option<f64> {
    if a <= c {
        return None;
    }
    let s: f64 = (1..=k)
        .map(|p| 2f64.powi(p as i32) * c.powf((p as f64 + 1.0) / 2.0) * (a.sqrt() + c.sqrt()).powi(p as i32 - 1))
        .sum();
    Some(a.sqrt() * b / (a - c) * s)
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * big((n - i) as u64) / big((i + 1) as u64);
    }
    acc
}
