//! Compressed description of the infeasible even sets of an even
//! delta-matroid, and its decoder.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::container::{kw_encode, kw_reconstruct_a, s_bound, spectral_alpha, Alpha};
use super::cover::{cover_certifies, local_cover, Certificate, Partition};
use super::graph::{rn_component, Parity};
use super::spectrum::lambda;
use crate::{DmError, Mask, Result, SetSystem};

/// An exact fraction serialized as `"p/q"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction(pub Ratio<u64>);

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Fraction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (p, q) = s.split_once('/').ok_or_else(|| format!("`{s}` is not p/q"))?;
        let p: u64 = p.trim().parse().map_err(|e| format!("numerator: {e}"))?;
        let q: u64 = q.trim().parse().map_err(|e| format!("denominator: {e}"))?;
        if q == 0 {
            return Err("zero denominator".into());
        }
        Ok(Fraction(Ratio::new(p, q)))
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(de)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncodingRecord {
    pub n: usize,
    /// Parity of the encoded system's feasible sizes; odd systems are
    /// twisted by `{1}` before encoding.
    pub parity: Parity,
    /// Selected infeasible even sets, in selection order.
    pub s: Vec<Mask>,
    /// One local cover per member of `s`.
    pub covers: Vec<Partition>,
    /// Infeasible even sets left in `A`, ascending.
    pub residual: Vec<Mask>,
    pub alpha: Fraction,
    /// `(1 + ceil(sigma * 2^(n-1))) / 2^(n-1)`.
    pub sigma_prime: Fraction,
    /// `ceil(sigma * 2^(n-1))`, the bound on `|s|`.
    pub s_bound: u64,
}

/// `alpha = lambda / (d + lambda)` for a component of `R_n`.
pub fn rn_alpha(n: usize) -> Alpha {
    spectral_alpha((n * (n - 1) / 2) as u64, lambda(n))
}

/// `ceil(sigma * 2^(n-1))` with `sigma = ln(d + 1) / (d + lambda)`.
pub fn rn_s_bound(n: usize) -> u64 {
    s_bound(1 << (n - 1), (n * (n - 1) / 2) as u64, lambda(n))
}

/// Brings an even delta-matroid to all-even feasible sizes.
fn normalize(d: &SetSystem) -> Result<(SetSystem, Parity)> {
    match d.feasible_parity()? {
        Some(0) => Ok((d.clone(), Parity::Even)),
        Some(_) => Ok((d.twist(1)?, Parity::Odd)),
        None => Err(DmError::Parity(
            "feasible sets have mixed size parities".into(),
        )),
    }
}

/// Infeasible even masks of an all-even system, ascending.
pub fn infeasible_even(d: &SetSystem) -> Vec<Mask> {
    (0..(1 as Mask) << d.n())
        .filter(|&m| m.count_ones() % 2 == 0 && !d.contains(m))
        .collect()
}

pub fn encode_even_dm(d: &SetSystem) -> Result<EncodingRecord> {
    let n = d.n();
    if n < 2 {
        return Err(DmError::Precondition(format!("encoding needs n >= 2, got {n}")));
    }
    let (work, parity) = normalize(d)?;
    let g = rn_component(n, Parity::Even)?;
    let l: Vec<usize> = infeasible_even(&work)
        .into_iter()
        .map(|m| g.index_of(m).expect("even masks are vertices"))
        .collect();
    let alpha = rn_alpha(n);
    let run = kw_encode(&g, &l, alpha)?;
    let s: Vec<Mask> = run.s.iter().map(|&v| g.label(v)).collect();
    let covers = s
        .iter()
        .map(|&x| local_cover(&work, x))
        .collect::<Result<Vec<_>>>()?;
    let in_l: BTreeSet<usize> = l.into_iter().collect();
    let residual = run
        .a
        .iter()
        .filter(|v| in_l.contains(v))
        .map(|&v| g.label(v))
        .collect();
    let s_bound = rn_s_bound(n);
    let half = 1u64 << (n - 1);
    Ok(EncodingRecord {
        n,
        parity,
        s,
        covers,
        residual,
        alpha: Fraction(alpha),
        sigma_prime: Fraction(Ratio::new(1 + s_bound, half)),
        s_bound,
    })
}

/// The infeasible even sets of the all-even form of the encoded system,
/// ascending.
pub fn decode_even_dm(record: &EncodingRecord) -> Result<Vec<Mask>> {
    let n = record.n;
    if n < 2 {
        return Err(DmError::Precondition(format!("encoding needs n >= 2, got {n}")));
    }
    if record.covers.len() != record.s.len() {
        return Err(DmError::Format("one cover per member of s is required".into()));
    }
    let g = rn_component(n, Parity::Even)?;
    let index = |m: Mask| {
        g.index_of(m)
            .ok_or_else(|| DmError::Format(format!("mask {m} is not an even subset of [{n}]")))
    };
    let s_idx = record.s.iter().map(|&m| index(m)).collect::<Result<Vec<_>>>()?;
    let a: BTreeSet<usize> = kw_reconstruct_a(&g, &s_idx, record.alpha.0)?.into_iter().collect();
    let mut out: BTreeSet<Mask> = record.s.iter().copied().collect();
    for (&x, cover) in record.s.iter().zip(&record.covers) {
        if cover.n() != n {
            return Err(DmError::InvalidPartition(format!(
                "cover at {x} is over [{}], expected [{n}]",
                cover.n()
            )));
        }
        for a in 1..=n {
            for b in a + 1..=n {
                if cover_certifies(cover, a, b)? == Certificate::Infeasible {
                    out.insert(x ^ (1 << (a - 1)) ^ (1 << (b - 1)));
                }
            }
        }
    }
    for &m in &record.residual {
        if !a.contains(&index(m)?) {
            return Err(DmError::Format(format!("residual mask {m} lies outside A")));
        }
        out.insert(m);
    }
    Ok(out.into_iter().collect())
}

/// Rebuilds the encoded system itself.
pub fn decode_system(record: &EncodingRecord) -> Result<SetSystem> {
    let infeasible: BTreeSet<Mask> = decode_even_dm(record)?.into_iter().collect();
    let n = record.n;
    let even = SetSystem::from_masks(
        n,
        (0..(1 as Mask) << n).filter(|m| m.count_ones() % 2 == 0 && !infeasible.contains(m)),
    )?;
    match record.parity {
        Parity::Even => Ok(even),
        Parity::Odd => even.twist(1),
    }
}
