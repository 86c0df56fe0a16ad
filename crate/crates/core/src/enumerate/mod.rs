//! Exhaustive enumeration of labelled delta-matroids, level by level.
//!
//! Every set system on `[n]` is determined by its contraction and deletion
//! of `n`, so level `n` is found by composing all ordered pairs drawn from
//! level `n - 1` plus the improper system, and keeping the delta-matroids.
//! For `n >= 5` a composed system is a delta-matroid iff all its
//! single-element minors are improper or delta-matroids and it is not an
//! antipodal pair `{F, [n] - F}`.

mod cache;
pub mod classes;

pub use cache::{CacheStore, LevelCache, MAGIC, MAX_LEVEL, VERSION};

use rayon::prelude::*;
use serde::Serialize;

use crate::packed;
use crate::{DmError, Mask, Result, SetSystem};

/// Largest level enumerated as an explicit list.
pub const LIST_LIMIT: usize = 5;

/// Level from which the minor-based test replaces the full exchange check.
pub const FAST_PATH_FROM: usize = 5;

/// Builds the complete level `prev.n() + 1`.
pub fn enumerate_level(prev: &LevelCache) -> Result<LevelCache> {
    let n = prev.n() + 1;
    if n > LIST_LIMIT {
        return Err(DmError::ResourceLimit {
            requested: n,
            limit: LIST_LIMIT,
        });
    }
    prev.verify_closure()?;
    if prev.n() <= 4 {
        prev.verify_axioms()?;
    }
    let m = prev.n();
    let outer: Vec<u64> = std::iter::once(0).chain(prev.systems().iter().copied()).collect();
    let mut found: Vec<u64> = outer
        .par_iter()
        .flat_map_iter(|&d1| {
            let outer = &outer;
            outer.iter().filter_map(move |&d2| {
                if d1 == 0 && d2 == 0 {
                    return None;
                }
                let d = packed::compose(d1, d2, m);
                compatible(d, n, prev).then_some(d)
            })
        })
        .collect();
    found.sort_unstable();
    LevelCache::from_sorted(n, found)
}

fn compatible(d: u64, n: usize, prev: &LevelCache) -> bool {
    if n >= FAST_PATH_FROM {
        minors_packed(d, n, prev)
    } else {
        SetSystem::from_packed(n, d)
            .expect("composed system is in range")
            .is_delta_matroid()
    }
}

/// Minor-based delta-matroid test on a packed proper system.
#[inline]
pub(crate) fn minors_packed(d: u64, n: usize, prev: &LevelCache) -> bool {
    if d == 0 {
        return false;
    }
    for k in 0..n {
        let del = packed::delete(d, k);
        if del != 0 && !prev.contains(del) {
            return false;
        }
        let con = packed::contract(d, k);
        if con != 0 && !prev.contains(con) {
            return false;
        }
    }
    !packed::is_antipodal(d, n)
}

/// Decides whether `d` is a delta-matroid from its minors and the complete
/// level below it. Requires `n >= 5`.
pub fn minor_fast_check(d: &SetSystem, prev: &LevelCache) -> Result<bool> {
    let n = d.n();
    if n < FAST_PATH_FROM {
        return Err(DmError::Precondition(format!(
            "the minor-based test needs n >= {FAST_PATH_FROM}, got {n}"
        )));
    }
    if prev.n() + 1 != n {
        return Err(DmError::SizeMismatch {
            left: n,
            right: prev.n() + 1,
        });
    }
    if !d.is_proper() {
        return Err(DmError::Improper);
    }
    let bits = d.to_packed().ok_or(DmError::ResourceLimit {
        requested: n,
        limit: MAX_LEVEL,
    })?;
    Ok(minors_packed(bits, n, prev))
}

/// All systems `{F, [n] - F}`; there are `2^(n-1)` of them.
pub fn antipodal_systems(n: usize) -> Result<Vec<SetSystem>> {
    if n == 0 {
        return Err(DmError::Precondition("antipodal systems need n >= 1".into()));
    }
    let full: Mask = (1 << n) - 1;
    (0..(1 as Mask) << (n - 1))
        .map(|f| SetSystem::from_masks(n, [f, full ^ f]))
        .collect()
}

/// One row of the count table.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CountReport {
    pub n: usize,
    pub d_n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_n: Option<u64>,
    pub gamma_n: f64,
}

/// `log2 log2 (d_n + 1) - (n - 1)`.
pub fn gamma(n: usize, d_n: u64) -> f64 {
    ((d_n as f64) + 1.0).log2().log2() - (n as f64 - 1.0)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CountOptions {
    pub with_even: bool,
    /// Admit level 6, computed from class representatives of level 5.
    pub allow_n6: bool,
}

/// Source of complete levels; [`CacheStore`] persists them between runs.
pub struct Levels<'a> {
    store: Option<&'a CacheStore>,
    levels: Vec<LevelCache>,
    /// Levels read from disk rather than computed.
    pub hits: Vec<usize>,
}

impl<'a> Levels<'a> {
    pub fn new(store: Option<&'a CacheStore>) -> Self {
        Levels {
            store,
            levels: vec![LevelCache::base()],
            hits: Vec::new(),
        }
    }

    /// Complete level `n <= 5`, loading or computing lower levels as needed.
    pub fn get(&mut self, n: usize) -> Result<&LevelCache> {
        if n > LIST_LIMIT {
            return Err(DmError::ResourceLimit {
                requested: n,
                limit: LIST_LIMIT,
            });
        }
        while self.levels.len() <= n {
            let k = self.levels.len();
            let cached = self.store.and_then(|s| s.load(k));
            let level = match cached {
                Some(c) => {
                    self.hits.push(k);
                    c
                }
                None => {
                    let c = enumerate_level(&self.levels[k - 1])?;
                    if let Some(s) = self.store {
                        s.save(&c)?;
                    }
                    c
                }
            };
            self.levels.push(level);
        }
        Ok(&self.levels[n])
    }
}

/// Exact counts for levels `1..=n_max`.
pub fn count_report(
    n_max: usize,
    opts: CountOptions,
    levels: &mut Levels<'_>,
) -> Result<Vec<CountReport>> {
    let limit = if opts.allow_n6 { 6 } else { LIST_LIMIT };
    if n_max > limit {
        return Err(DmError::ResourceLimit {
            requested: n_max,
            limit,
        });
    }
    let mut out = Vec::new();
    for n in 1..=n_max.min(LIST_LIMIT) {
        let level = levels.get(n)?;
        let d_n = level.len() as u64;
        out.push(CountReport {
            n,
            d_n,
            e_n: opts.with_even.then(|| level.count_even()),
            gamma_n: gamma(n, d_n),
        });
    }
    if n_max == 6 {
        let (d_n, e_n) = classes::count_next_by_classes(levels.get(5)?)?;
        out.push(CountReport {
            n: 6,
            d_n,
            e_n: opts.with_even.then_some(e_n),
            gamma_n: gamma(6, d_n),
        });
    }
    Ok(out)
}

/// Checks the structural facts every count series must satisfy: positive,
/// strictly decreasing `gamma_n` from `n = 2`, `d_n >= 2^(2^(n-1))` and
/// `d_{n+1} + 1 <= (d_n + 1)^2` with strict inequality from `n = 2`.
pub fn verify_series(reports: &[CountReport]) -> std::result::Result<(), String> {
    for r in reports {
        if r.gamma_n <= 0.0 {
            return Err(format!("gamma_{} = {} is not positive", r.n, r.gamma_n));
        }
        let floor = 1u128 << (1u32 << (r.n - 1));
        if u128::from(r.d_n) < floor {
            return Err(format!("d_{} = {} is below 2^(2^(n-1))", r.n, r.d_n));
        }
    }
    for w in reports.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if b.n != a.n + 1 {
            continue;
        }
        let sq = (u128::from(a.d_n) + 1).pow(2);
        let next = u128::from(b.d_n) + 1;
        if next > sq || (a.n >= 2 && next == sq) {
            return Err(format!("recurrence fails between n = {} and {}", a.n, b.n));
        }
        if a.n >= 2 && b.gamma_n >= a.gamma_n {
            return Err(format!("gamma does not decrease at n = {}", b.n));
        }
    }
    Ok(())
}

/// Number of even delta-matroids on `[n]`, `n <= 5`.
pub fn count_even(n: usize, levels: &mut Levels<'_>) -> Result<u64> {
    Ok(levels.get(n)?.count_even())
}
