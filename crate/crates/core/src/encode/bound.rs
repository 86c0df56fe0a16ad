//! Finite-`n` evaluation of the upper bound on the number of even
//! delta-matroids obtained from the container encoding.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use super::record::{rn_alpha, Fraction};
use super::spectrum::lambda;
use crate::{DmError, Result};

/// Bell numbers `B(0..=k)` via the Bell triangle.
pub fn bell_numbers(k: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    let mut row = vec![BigUint::one()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("row is non-empty").clone());
        for x in &row {
            let v = next.last().expect("seeded") + x;
            next.push(v);
        }
        row = next;
        out.push(row[0].clone());
    }
    out
}

pub fn bell(k: usize) -> BigUint {
    bell_numbers(k).pop().expect("k + 1 entries")
}

/// `log2` of a big integer, exact to double precision.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64 bits");
    top.log2() + shift as f64
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub degree: u64,
    pub lambda: u64,
    pub alpha: Fraction,
    pub sigma: f64,
    pub sigma_prime: Fraction,
    /// `ceil(sigma * 2^(n-1))`.
    pub s_bound: u64,
    /// `B(n + 1)`, the number of possible local covers.
    pub bell: String,
    /// `B(n + 1) <= (n + 1)^(n + 1)`.
    pub bell_within_crude_bound: bool,
    /// `sigma <= sigma' <= sigma + 2^-(n-2)`.
    pub sigma_prime_in_range: bool,
    /// `log2` of `2 * sum_{i <= s_bound} C(2^(n-1), i) B(n+1)^i * 2^(2^(n-1)/n)`.
    pub log_sum_bound: f64,
    /// `log2` of `sigma' 2^n (e/sigma')^(sigma' 2^(n-1))
    /// (n+1)^((n+1) sigma' 2^(n-1)) 2^(2^(n-1)/n)`.
    pub log_e_n_bound: f64,
}

/// Evaluates the encoding bound at `n >= 3`.
pub fn bound_calculator(n: usize) -> Result<BoundReport> {
    if !(3..=24).contains(&n) {
        return Err(DmError::Precondition(format!(
            "the bound is evaluated for 3 <= n <= 24, got {n}"
        )));
    }
    let degree = (n * (n - 1) / 2) as u64;
    let lambda = lambda(n);
    let half = 1u64 << (n - 1);
    let sigma = (degree as f64 + 1.0).ln() / (degree + lambda) as f64;
    let s_bound = (sigma * half as f64).ceil() as u64;
    let sigma_prime = Ratio::new(1 + s_bound, half);
    let sp = *sigma_prime.numer() as f64 / *sigma_prime.denom() as f64;
    let sigma_prime_in_range = sigma <= sp && sp <= sigma + 1.0 / (1u64 << (n - 2)) as f64;

    let b = bell(n + 1);
    let crude: BigUint = Pow::pow(BigUint::from(n + 1), (n + 1) as u32);
    let bell_within_crude_bound = b <= crude;

    let nf = n as f64;
    let halff = half as f64;
    let mut sum = BigUint::zero();
    let mut b_pow = BigUint::one();
    for i in 0..=s_bound.min(half) {
        sum += binomial(half, i) * &b_pow;
        b_pow *= &b;
    }
    let log_sum_bound = 1.0 + log2_big(&sum) + halff / nf;

    let log_e = std::f64::consts::E.log2();
    let log_e_n_bound = sp.log2()
        + nf
        + sp * halff * (log_e - sp.log2())
        + (nf + 1.0) * sp * halff * (nf + 1.0).log2()
        + halff / nf;

    Ok(BoundReport {
        n,
        degree,
        lambda,
        alpha: Fraction(rn_alpha(n)),
        sigma,
        sigma_prime: Fraction(sigma_prime),
        s_bound,
        bell: b.to_string(),
        bell_within_crude_bound,
        sigma_prime_in_range,
        log_sum_bound,
        log_e_n_bound,
    })
}

/// Margin for comparing exact counts against the floating-point bound.
pub const BOUND_MARGIN: f64 = 1e-9;

/// Whether `log2 e_n` stays below the evaluated bound.
pub fn bound_dominates(e_n: u64, report: &BoundReport) -> bool {
    (e_n as f64).log2() <= report.log_e_n_bound + BOUND_MARGIN
}
