//! Equivalence classes under "isomorphic to a twist", and level counts
//! computed from one representative per class.
//!
//! The group acting on `[n]` is generated by twists and relabellings, so it
//! has `2^n * n!` elements. Extending an element of it to `[n+1]` by fixing
//! `n+1` maps compatible pairs to compatible pairs, so the number of
//! compatible partners of a system depends only on its class.

use rayon::prelude::*;

use super::{minors_packed, LevelCache};
use crate::packed;
use crate::{DmError, Result, SetSystem};

/// All twist-then-relabel maps on masks of `[n]`, `n <= 5`.
pub struct SymmetryGroup {
    n: usize,
    tables: Vec<Vec<u8>>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

impl SymmetryGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n > 5 {
            return Err(DmError::ResourceLimit {
                requested: n,
                limit: 5,
            });
        }
        let size = 1usize << n;
        let mut tables = Vec::with_capacity(size * (1..=n).product::<usize>());
        for perm in permutations(n) {
            for twist in 0..size {
                tables.push(
                    (0..size)
                        .map(|m| {
                            let t = m ^ twist;
                            perm.iter()
                                .enumerate()
                                .filter(|&(i, _)| t >> i & 1 == 1)
                                .fold(0usize, |acc, (_, &j)| acc | 1 << j)
                                as u8
                        })
                        .collect(),
                );
            }
        }
        Ok(SymmetryGroup { n, tables })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.tables.len()
    }

    pub fn images(&self, bits: u64) -> impl Iterator<Item = u64> + '_ {
        self.tables.iter().map(move |t| packed::remap(bits, t))
    }

    /// Least bitvector over all images.
    pub fn canonical_form(&self, bits: u64) -> u64 {
        self.images(bits).min().expect("group is non-empty")
    }

    pub fn canonical_system(&self, s: &SetSystem) -> Result<SetSystem> {
        if s.n() != self.n {
            return Err(DmError::SizeMismatch {
                left: s.n(),
                right: self.n,
            });
        }
        let bits = s.to_packed().expect("n <= 5");
        SetSystem::from_packed(self.n, self.canonical_form(bits))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Class {
    /// Least member, which is also its canonical form.
    pub rep: u64,
    pub size: u64,
}

/// Partitions a complete level into classes, ordered by representative.
pub fn classes(cache: &LevelCache) -> Result<Vec<Class>> {
    let group = SymmetryGroup::new(cache.n())?;
    let mut seen = vec![false; cache.len()];
    let mut out = Vec::new();
    for i in 0..cache.len() {
        if seen[i] {
            continue;
        }
        let rep = cache.systems()[i];
        let mut size = 0;
        for image in group.images(rep) {
            let j = cache.index_of(image).ok_or_else(|| {
                DmError::IncompleteCache(format!("image {image:#x} of {rep:#x} missing"))
            })?;
            if !seen[j] {
                seen[j] = true;
                size += 1;
            }
        }
        out.push(Class { rep, size });
    }
    Ok(out)
}

/// Number of partners `D2` in `prev ∪ {improper}` compatible with `d1`.
///
/// Returns `(delta-matroids, even delta-matroids)` among the composed
/// systems.
pub fn compatible_count(d1: u64, prev: &LevelCache) -> (u64, u64) {
    let m = prev.n();
    let n = m + 1;
    let test = |d: u64| {
        if n >= 5 {
            minors_packed(d, n, prev)
        } else {
            SetSystem::from_packed(n, d).expect("in range").is_delta_matroid()
        }
    };
    let mut total = 0;
    let mut even = 0;
    let partners = std::iter::once(0).chain(prev.systems().iter().copied());
    for d2 in partners {
        if d1 == 0 && d2 == 0 {
            continue;
        }
        let d = packed::compose(d1, d2, m);
        if test(d) {
            total += 1;
            if packed::is_even(d) {
                even += 1;
            }
        }
    }
    (total, even)
}

/// Counts `(d_n, e_n)` at level `prev.n() + 1` using one class
/// representative per outer system.
pub fn count_next_by_classes(prev: &LevelCache) -> Result<(u64, u64)> {
    let cls = classes(prev)?;
    // Outer improper: D is D2 with n+1 in no feasible set.
    let base_total = prev.len() as u64;
    let base_even = prev.count_even();
    let (total, even) = cls
        .par_iter()
        .map(|c| {
            let (t, e) = compatible_count(c.rep, prev);
            (t * c.size, e * c.size)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok((total + base_total, even + base_even))
}
