//! Lower-bound constructions: complements of sparse vertex sets of the
//! hypercube, the cut construction, Johnson-graph stable sets, sparse paving
//! matroids and stacked even delta-matroids.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Pow;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{DmError, Mask, Matroid, Result, SetSystem, MAX_N};

/// A set of subsets of `[n]`, read as vertices of `Q_n` or `J(n, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    members: Vec<Mask>,
}

impl VertexSet {
    pub fn new<I: IntoIterator<Item = Mask>>(n: usize, members: I) -> Result<Self> {
        if n > MAX_N {
            return Err(DmError::GroundSetTooLarge(n));
        }
        let mut members: Vec<Mask> = members.into_iter().collect();
        if let Some(&m) = members.iter().find(|&&m| u64::from(m) >> n != 0) {
            return Err(DmError::MaskOutOfRange { mask: m.into(), n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet { n, members })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: Mask) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    fn as_system(&self) -> SetSystem {
        SetSystem::from_masks(self.n, self.members.iter().copied()).expect("validated masks")
    }

    /// Whether every member has `r` elements and no two share `r - 1`.
    pub fn is_johnson_stable(&self, r: usize) -> bool {
        if self.members.iter().any(|m| m.count_ones() as usize != r) {
            return false;
        }
        // Two r-sets meet in r - 1 elements iff their symmetric difference
        // has size two.
        self.members.iter().enumerate().all(|(i, &a)| {
            self.members[i + 1..]
                .iter()
                .all(|&b| (a ^ b).count_ones() != 2)
        })
    }
}

/// Maximum number of `Q_n`-neighbours inside `v` over members of `v`.
pub fn qn_degree(v: &VertexSet) -> usize {
    let lookup = v.as_system();
    v.members
        .iter()
        .map(|&m| (0..v.n).filter(|&i| lookup.contains(m ^ (1 << i))).count())
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplementMode {
    /// `v` is stable in `Q_n`.
    Stable,
    /// `Q_n[v]` has maximum degree at most one; needs `n >= 2`.
    DegreeOne,
}

/// The system whose feasible sets are the vertices of `Q_n` outside `v`.
pub fn dm_from_complement(v: &VertexSet, mode: ComplementMode) -> Result<SetSystem> {
    let allowed = match mode {
        ComplementMode::Stable => 0,
        ComplementMode::DegreeOne => {
            if v.n < 2 {
                return Err(DmError::Precondition(
                    "degree-one complements need n >= 2".into(),
                ));
            }
            1
        }
    };
    let found = qn_degree(v);
    if found > allowed {
        return Err(DmError::Degree { found, allowed });
    }
    let out = complement(&v.as_system());
    if !out.is_proper() {
        return Err(DmError::Improper);
    }
    Ok(out)
}

fn complement(s: &SetSystem) -> SetSystem {
    SetSystem::from_masks(s.n(), (0..(1 as Mask) << s.n()).filter(|&m| !s.contains(m)))
        .expect("same ground set")
}

/// `A` together with every odd-size subset of `[n]`.
pub fn dm_even_plus_odd(n: usize, a: &VertexSet) -> Result<SetSystem> {
    if a.n != n {
        return Err(DmError::SizeMismatch { left: a.n, right: n });
    }
    if let Some(&m) = a.members.iter().find(|m| m.count_ones() % 2 == 1) {
        return Err(DmError::Parity(format!("mask {m} has odd size")));
    }
    let odd = (0..(1 as Mask) << n).filter(|m| m.count_ones() % 2 == 1);
    SetSystem::from_masks(n, odd.chain(a.members.iter().copied()))
}

/// Removed vertices `A_e ∪ A_o` for one draw of the cut construction.
///
/// The cut is across coordinate `cut` (1-based). `A_e` takes each vertex with
/// that coordinate 0 and even size with probability 1/2; `A_o` takes each
/// vertex with that coordinate 1 and odd size with probability 1/2.
pub fn sample_cut_vertices<R: Rng>(n: usize, cut: usize, rng: &mut R) -> Result<VertexSet> {
    if n < 2 {
        return Err(DmError::Precondition("the cut construction needs n >= 2".into()));
    }
    if cut == 0 || cut > n {
        return Err(DmError::ElementOutOfRange { e: cut, n });
    }
    let bit = 1 << (cut - 1);
    let mut chosen = Vec::new();
    for m in 0..(1 as Mask) << n {
        let odd = m.count_ones() % 2 == 1;
        let upper = m & bit != 0;
        if odd == upper && rng.gen_bool(0.5) {
            chosen.push(m);
        }
    }
    VertexSet::new(n, chosen)
}

/// The delta-matroid obtained from one seeded draw of the cut construction.
pub fn sample_cut_construction(n: usize, cut: usize, seed: u64) -> Result<SetSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let removed = sample_cut_vertices(n, cut, &mut rng)?;
    dm_from_complement(&removed, ComplementMode::DegreeOne)
}

/// Cuts whose construction could have produced `removed`.
pub fn producing_cuts(removed: &VertexSet) -> Vec<usize> {
    (1..=removed.n)
        .filter(|&c| {
            let bit = 1 << (c - 1);
            removed
                .members
                .iter()
                .all(|&m| (m.count_ones() % 2 == 1) == (m & bit != 0))
        })
        .collect()
}

/// `n * 2^(2^(n-2)) * 2^(2^(n-2)) * (1 - (3/4)^(2^(n-2)))`, which is the
/// integer `n * (4^k - 3^k)` with `k = 2^(n-2)`.
pub fn cut_count_lower_bound(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(DmError::Precondition("the cut bound needs n >= 2".into()));
    }
    let k = 1u64 << (n - 2);
    let four: BigUint = Pow::pow(BigUint::from(4u32), k);
    let three: BigUint = Pow::pow(BigUint::from(3u32), k);
    Ok(BigUint::from(n) * (four - three))
}

/// Whether the cut bound reaches `(1 - eps) * n * 2^(2^(n-1))`, i.e.
/// whether `(3/4)^(2^(n-2)) <= eps`.
pub fn cut_bound_certifies(n: usize, eps: f64) -> Result<bool> {
    if n < 2 {
        return Err(DmError::Precondition("the cut bound needs n >= 2".into()));
    }
    let eps = BigRational::from_float(eps)
        .ok_or_else(|| DmError::Precondition(format!("epsilon {eps} is not finite")))?;
    let k = 1u64 << (n - 2);
    let lhs = BigRational::new(
        Pow::pow(BigInt::from(3), k),
        Pow::pow(BigInt::from(4), k),
    );
    Ok(lhs <= eps)
}

fn check_rank(n: usize, r: usize) -> Result<()> {
    if r == 0 || r >= n {
        Err(DmError::RankOutOfRange { r, n })
    } else {
        Ok(())
    }
}

fn r_sets(n: usize, r: usize) -> impl Iterator<Item = Mask> {
    (0..(1 as Mask) << n).filter(move |m| m.count_ones() as usize == r)
}

fn element_sum(m: Mask) -> usize {
    (0..32).filter(|i| m >> i & 1 == 1).map(|i| i + 1).sum()
}

/// The `r`-subsets of `[n]` whose element sum is `residue` mod `n`.
pub fn residue_class(n: usize, r: usize, residue: usize) -> Result<VertexSet> {
    check_rank(n, r)?;
    VertexSet::new(n, r_sets(n, r).filter(|&m| element_sum(m) % n == residue))
}

/// The largest residue class of `r`-sets by element sum mod `n`, ties going
/// to the smallest residue. It is stable in `J(n, r)` and has at least
/// `C(n, r) / n` members.
pub fn graham_sloane_stable_set(n: usize, r: usize) -> Result<VertexSet> {
    check_rank(n, r)?;
    let mut counts = vec![0usize; n];
    for m in r_sets(n, r) {
        counts[element_sum(m) % n] += 1;
    }
    let best = (0..n)
        .max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)))
        .expect("n > 0");
    residue_class(n, r, best)
}

/// Circuit-hyperplanes of a sparse paving matroid of rank `r` on `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePavingLayer {
    pub n: usize,
    pub r: usize,
    pub circuit_hyperplanes: VertexSet,
}

impl SparsePavingLayer {
    pub fn new(n: usize, r: usize, circuit_hyperplanes: VertexSet) -> Result<Self> {
        let layer = SparsePavingLayer {
            n,
            r,
            circuit_hyperplanes,
        };
        layer.validate()?;
        Ok(layer)
    }

    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, VertexSet::empty(n)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r > self.n {
            return Err(DmError::RankOutOfRange { r: self.r, n: self.n });
        }
        if self.circuit_hyperplanes.n != self.n {
            return Err(DmError::SizeMismatch {
                left: self.circuit_hyperplanes.n,
                right: self.n,
            });
        }
        if !self.circuit_hyperplanes.is_johnson_stable(self.r) {
            return Err(DmError::NotStable { n: self.n, r: self.r });
        }
        Ok(())
    }
}

/// The matroid whose bases are the `r`-sets that are not circuit-hyperplanes.
pub fn sparse_paving_matroid(layer: &SparsePavingLayer) -> Result<Matroid> {
    layer.validate()?;
    let ch = &layer.circuit_hyperplanes;
    let bases = SetSystem::from_masks(layer.n, r_sets(layer.n, layer.r).filter(|&m| !ch.contains(m)))?;
    if !bases.is_proper() {
        return Err(DmError::EmptyLayer(layer.r));
    }
    Matroid::new(bases)
}

/// Even ranks `0, 2, ..., 2 * floor(n / 2)`.
pub fn even_ranks(n: usize) -> impl Iterator<Item = usize> {
    (0..=n).step_by(2)
}

/// Union of the bases of one sparse paving matroid per even rank.
pub fn stacked_even_dm(n: usize, layers: &BTreeMap<usize, SparsePavingLayer>) -> Result<SetSystem> {
    if n > MAX_N {
        return Err(DmError::GroundSetTooLarge(n));
    }
    if let Some(&extra) = layers.keys().find(|&&r| r % 2 == 1 || r > n) {
        return Err(DmError::InvalidLayer {
            rank: extra,
            reason: "ranks must be even and at most n".into(),
        });
    }
    let mut feasible = Vec::new();
    for rank in even_ranks(n) {
        let layer = layers.get(&rank).ok_or(DmError::MissingLayer(rank))?;
        if layer.n != n || layer.r != rank {
            return Err(DmError::InvalidLayer {
                rank,
                reason: format!("layer describes rank {} on [{}]", layer.r, layer.n),
            });
        }
        let m = sparse_paving_matroid(layer).map_err(|e| match e {
            DmError::EmptyLayer(_) => e,
            other => DmError::InvalidLayer {
                rank,
                reason: other.to_string(),
            },
        })?;
        feasible.extend(m.bases().iter());
    }
    SetSystem::from_masks(n, feasible)
}

/// Random layers: each rank strictly between 0 and `n` takes a random subset
/// of a random residue class as its circuit-hyperplanes.
pub fn random_layers<R: Rng>(n: usize, rng: &mut R) -> Result<BTreeMap<usize, SparsePavingLayer>> {
    let mut out = BTreeMap::new();
    for rank in even_ranks(n) {
        let ch = if rank == 0 || rank == n {
            VertexSet::empty(n)?
        } else {
            let class = residue_class(n, rank, rng.gen_range(0..n))?;
            let picked: Vec<Mask> = class
                .members()
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            VertexSet::new(n, picked)?
        };
        out.insert(rank, SparsePavingLayer::new(n, rank, ch)?);
    }
    Ok(out)
}

pub fn sample_stacked_even_dm(n: usize, seed: u64) -> Result<SetSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    stacked_even_dm(n, &random_layers(n, &mut rng)?)
}

/// A stable set of `Q_n` grown by visiting vertices in random order and
/// keeping each with probability 1/2 when none of its neighbours is kept.
pub fn random_stable_set<R: Rng>(n: usize, rng: &mut R) -> Result<VertexSet> {
    if n > MAX_N {
        return Err(DmError::GroundSetTooLarge(n));
    }
    let size = 1usize << n;
    let mut order: Vec<Mask> = (0..size as Mask).collect();
    order.shuffle(rng);
    let mut taken = vec![false; size];
    for v in order {
        let free = (0..n).all(|i| !taken[(v ^ (1 << i)) as usize]);
        if free && rng.gen_bool(0.5) {
            taken[v as usize] = true;
        }
    }
    VertexSet::new(n, (0..size as Mask).filter(|&v| taken[v as usize]))
}

/// `n - 1 - log2 n`, the lower bound on `log2 log2 e_n`.
pub fn even_lower_bound(n: usize) -> f64 {
    n as f64 - 1.0 - (n as f64).log2()
}

/// Whether `log2 log2 e_n >= n - 1 - log2 n`.
///
/// For `n <= 2` the bound holds for any `e_n >= 2`; `n = 1` gives `-inf` on
/// the left when `e_1 = 2`, matched by a right-hand side of 0.
pub fn even_lower_bound_holds(n: usize, e_n: u64) -> bool {
    if n <= 2 {
        return e_n >= 2;
    }
    let lhs = (e_n as f64).log2().log2();
    lhs >= even_lower_bound(n) - 1e-12
}
