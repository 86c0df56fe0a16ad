//! Spectrum of `R_n` from the identity `2 A(R_n) = A(Q_n)^2 - n I`.

use serde::Serialize;

use crate::{DmError, Result};

/// Largest `n` for which the dense matrix identity is checked.
pub const MATRIX_LIMIT: usize = 8;

/// Eigenvalue `(mu^2 - n) / 2` of `R_n` induced by the `Q_n` eigenvalue `mu`,
/// with the multiplicity `C(n, k)` of `mu = n - 2k` in `Q_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub hypercube: i64,
    pub value: i64,
    pub multiplicity: u64,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// One entry per `Q_n` eigenvalue `-n, -n + 2, ..., n`.
pub fn rn_spectrum(n: usize) -> Result<Vec<SpectrumEntry>> {
    if n < 2 {
        return Err(DmError::Precondition(format!("R_n needs n >= 2, got {n}")));
    }
    let ni = n as i64;
    Ok((0..=n)
        .rev()
        .map(|k| {
            let mu = ni - 2 * k as i64;
            SpectrumEntry {
                hypercube: mu,
                value: (mu * mu - ni) / 2,
                multiplicity: binomial(n as u64, k as u64),
            }
        })
        .collect())
}

/// Distinct eigenvalues of one component with their multiplicities,
/// ascending. The two components are isomorphic, so each carries half of
/// every multiplicity of `R_n`.
pub fn component_spectrum(n: usize) -> Result<Vec<(i64, u64)>> {
    let mut out: Vec<(i64, u64)> = Vec::new();
    for e in rn_spectrum(n)? {
        match out.iter_mut().find(|(v, _)| *v == e.value) {
            Some(slot) => slot.1 += e.multiplicity,
            None => out.push((e.value, e.multiplicity)),
        }
    }
    out.sort_unstable();
    for slot in &mut out {
        slot.1 /= 2;
    }
    Ok(out)
}

/// Least eigenvalue of a component of `R_n`: `-n/2` for even `n`,
/// `(1 - n)/2` for odd `n`.
pub fn smallest_eigenvalue(n: usize) -> Result<i64> {
    Ok(rn_spectrum(n)?
        .iter()
        .map(|e| e.value)
        .min()
        .expect("n + 1 entries"))
}

/// `floor(n / 2)`, the negated least eigenvalue.
pub fn lambda(n: usize) -> u64 {
    (n / 2) as u64
}

fn hypercube_matrix(n: usize) -> Vec<Vec<i64>> {
    let size = 1usize << n;
    (0..size)
        .map(|u| {
            (0..size)
                .map(|v| i64::from((u ^ v).count_ones() == 1))
                .collect()
        })
        .collect()
}

fn distance_two_matrix(n: usize) -> Vec<Vec<i64>> {
    let size = 1usize << n;
    (0..size)
        .map(|u| {
            (0..size)
                .map(|v| i64::from((u ^ v).count_ones() == 2))
                .collect()
        })
        .collect()
}

/// Verifies `2 A(R_n) = A(Q_n)^2 - n I` in exact integer arithmetic.
pub fn rn_matrix_identity(n: usize) -> Result<bool> {
    if !(2..=MATRIX_LIMIT).contains(&n) {
        return Err(DmError::ResourceLimit {
            requested: n,
            limit: MATRIX_LIMIT,
        });
    }
    let q = hypercube_matrix(n);
    let r = distance_two_matrix(n);
    let size = q.len();
    for i in 0..size {
        for j in 0..size {
            let sq: i64 = (0..size).map(|k| q[i][k] * q[k][j]).sum();
            let rhs = sq - if i == j { n as i64 } else { 0 };
            if 2 * r[i][j] != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether every pair at distance two in `Q_n` has exactly two common
/// neighbours.
pub fn distance_two_common_neighbours(n: usize) -> bool {
    let size = 1u32 << n;
    (0..size).all(|u| {
        (0..size)
            .filter(|&v| (u ^ v).count_ones() == 2)
            .all(|v| {
                (0..size)
                    .filter(|&w| (u ^ w).count_ones() == 1 && (v ^ w).count_ones() == 1)
                    .count()
                    == 2
            })
    })
}
