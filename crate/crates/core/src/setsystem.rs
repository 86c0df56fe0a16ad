//! Set systems, the symmetric exchange axiom and matroid primitives.

use std::fmt;

use crate::packed;
use crate::{DmError, Result};

/// Indicator mask of a subset of `[n]`; element `i` is bit `i - 1`.
pub type Mask = u32;

/// Largest supported ground set.
pub const MAX_N: usize = 16;

/// A set system `([n], F)` stored as a feasibility bitvector of length `2^n`.
///
/// The improper system (no feasible sets) is an ordinary value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetSystem {
    n: usize,
    words: Vec<u64>,
}

/// Outcome of [`SetSystem::check_symmetric_exchange`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exchange {
    Pass,
    Violation(ExchangeWitness),
}

impl Exchange {
    pub fn passed(&self) -> bool {
        matches!(self, Exchange::Pass)
    }
}

/// Feasible `x`, `y` and an element `e ∈ x △ y` such that `x △ {e, f}` is
/// infeasible for every `f ∈ x △ y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub x: Mask,
    pub y: Mask,
    /// Element label in `1..=n`.
    pub e: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorKind {
    Delete,
    Contract,
}

fn word_count(n: usize) -> usize {
    if n < 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        Err(DmError::GroundSetTooLarge(n))
    } else {
        Ok(())
    }
}

fn full_mask(n: usize) -> Mask {
    ((1u64 << n) - 1) as Mask
}

impl SetSystem {
    /// The improper system on `[n]`.
    pub fn improper(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(SetSystem {
            n,
            words: vec![0; word_count(n)],
        })
    }

    /// All subsets of `[n]` feasible.
    pub fn power_set(n: usize) -> Result<Self> {
        let mut s = Self::improper(n)?;
        for m in 0..(1u32 << n) {
            s.set(m);
        }
        Ok(s)
    }

    /// Builds a set system from feasible masks; duplicates are ignored.
    pub fn from_masks<I: IntoIterator<Item = Mask>>(n: usize, masks: I) -> Result<Self> {
        let mut s = Self::improper(n)?;
        for m in masks {
            if u64::from(m) >> n != 0 {
                return Err(DmError::MaskOutOfRange {
                    mask: m.into(),
                    n,
                });
            }
            s.set(m);
        }
        Ok(s)
    }

    /// Builds a set system on `[n]` (`n <= 6`) from a packed bitvector.
    pub fn from_packed(n: usize, bits: u64) -> Result<Self> {
        if n > 6 {
            return Err(DmError::Precondition(format!(
                "packed form needs n <= 6, got {n}"
            )));
        }
        if bits & !packed::len_mask(n) != 0 {
            return Err(DmError::MaskOutOfRange {
                mask: bits,
                n,
            });
        }
        Ok(SetSystem {
            n,
            words: vec![bits],
        })
    }

    /// Packed bitvector, available for `n <= 6`.
    pub fn to_packed(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.words[0])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground_mask(&self) -> Mask {
        full_mask(self.n)
    }

    /// Raw feasibility words, least significant mask first.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn set(&mut self, m: Mask) {
        self.words[(m >> 6) as usize] |= 1u64 << (m & 63);
    }

    pub fn contains(&self, m: Mask) -> bool {
        if u64::from(m) >> self.n != 0 {
            return false;
        }
        self.words[(m >> 6) as usize] >> (m & 63) & 1 == 1
    }

    /// Number of feasible sets.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        !self.is_proper()
    }

    pub fn is_proper(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    /// Feasible masks in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Mask> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = (i as Mask) << 6;
            BitIter(w).map(move |b| base | b)
        })
    }

    /// Checks the symmetric exchange axiom.
    ///
    /// The witness, if any, is the lexicographically least `(x, y, e)` with
    /// `x`, `y` ascending over feasible masks and `e` ascending over `x △ y`.
    pub fn check_symmetric_exchange(&self) -> Result<Exchange> {
        if !self.is_proper() {
            return Err(DmError::Improper);
        }
        let n = self.n;
        let feasible: Vec<Mask> = self.iter().collect();
        // reach[e]: the f with x △ {e, f} feasible.
        let mut reach = vec![0 as Mask; n];
        for &x in &feasible {
            for (e, slot) in reach.iter_mut().enumerate() {
                let mut r = 0;
                for f in 0..n {
                    if self.contains(x ^ ((1 << e) | (1 << f))) {
                        r |= 1 << f;
                    }
                }
                *slot = r;
            }
            for &y in &feasible {
                let diff = x ^ y;
                for e in BitIter(diff.into()) {
                    if reach[e as usize] & diff == 0 {
                        return Ok(Exchange::Violation(ExchangeWitness {
                            x,
                            y,
                            e: e as usize + 1,
                        }));
                    }
                }
            }
        }
        Ok(Exchange::Pass)
    }

    /// `true` iff the system is proper and satisfies the exchange axiom.
    pub fn is_delta_matroid(&self) -> bool {
        matches!(self.check_symmetric_exchange(), Ok(Exchange::Pass))
    }

    /// Whether all feasible sets have sizes of the same parity.
    pub fn is_even(&self) -> Result<bool> {
        let mut it = self.iter();
        let first = it.next().ok_or(DmError::Improper)?.count_ones() & 1;
        Ok(it.all(|m| m.count_ones() & 1 == first))
    }

    /// Parity shared by all feasible sizes (0 or 1), `None` for mixed.
    pub fn feasible_parity(&self) -> Result<Option<u32>> {
        let first = self.iter().next().ok_or(DmError::Improper)?.count_ones() & 1;
        Ok(self.is_even()?.then_some(first))
    }

    /// The twist `S * A`.
    pub fn twist(&self, a: Mask) -> Result<Self> {
        if u64::from(a) >> self.n != 0 {
            return Err(DmError::MaskOutOfRange {
                mask: a.into(),
                n: self.n,
            });
        }
        let mut out = Self::improper(self.n)?;
        for m in self.iter() {
            out.set(m ^ a);
        }
        Ok(out)
    }

    /// The dual `S * E`.
    pub fn dual(&self) -> Self {
        self.twist(self.ground_mask()).expect("ground mask is in range")
    }

    /// Set-system deletion or contraction of element `e` (1-based).
    ///
    /// The remaining elements are relabelled order-preservingly onto `[n-1]`.
    /// The result may be improper.
    pub fn minor(&self, e: usize, kind: MinorKind) -> Result<Self> {
        if e == 0 || e > self.n {
            return Err(DmError::ElementOutOfRange { e, n: self.n });
        }
        let k = e - 1;
        let mut out = Self::improper(self.n - 1)?;
        let low = (1 << k) - 1;
        for m in 0..(1 as Mask) << (self.n - 1) {
            let lifted = ((m >> k) << (k + 1)) | (m & low);
            let probe = match kind {
                MinorKind::Delete => lifted,
                MinorKind::Contract => lifted | (1 << k),
            };
            if self.contains(probe) {
                out.set(m);
            }
        }
        Ok(out)
    }

    pub fn delete(&self, e: usize) -> Result<Self> {
        self.minor(e, MinorKind::Delete)
    }

    pub fn contract(&self, e: usize) -> Result<Self> {
        self.minor(e, MinorKind::Contract)
    }

    /// The unique system `D` on `[n+1]` with `D // (n+1) = contracted` and
    /// `D \\ (n+1) = deleted`.
    pub fn compose(contracted: &SetSystem, deleted: &SetSystem) -> Result<Self> {
        if contracted.n != deleted.n {
            return Err(DmError::SizeMismatch {
                left: contracted.n,
                right: deleted.n,
            });
        }
        let n = contracted.n;
        let mut out = Self::improper(n + 1)?;
        for m in deleted.iter() {
            out.set(m);
        }
        for m in contracted.iter() {
            out.set(m | (1 << n));
        }
        Ok(out)
    }

    /// Sizes of feasible sets, ascending and deduplicated.
    pub fn feasible_sizes(&self) -> Vec<u32> {
        let mut seen = 0u32;
        for m in self.iter() {
            seen |= 1 << m.count_ones();
        }
        BitIter(seen.into()).collect()
    }

    /// The system formed by feasible sets of one size.
    pub fn layer(&self, size: u32) -> Self {
        let mut out = Self::improper(self.n).expect("same n");
        for m in self.iter().filter(|m| m.count_ones() == size) {
            out.set(m);
        }
        out
    }

    /// Matroid whose bases are the minimum-size feasible sets.
    ///
    /// Non-delta-matroid input is a contract violation, checked only in
    /// debug builds.
    pub fn min_feasible_matroid(&self) -> Result<Matroid> {
        let min = *self.feasible_sizes().first().ok_or(DmError::Improper)?;
        debug_assert!(self.is_delta_matroid(), "input must be a delta-matroid");
        Ok(Matroid {
            bases: self.layer(min),
            rank: min as usize,
        })
    }

    /// Whether the feasible sets are the bases of a matroid.
    pub fn is_matroid(&self) -> Result<bool> {
        if !self.is_proper() {
            return Err(DmError::Improper);
        }
        if self.feasible_sizes().len() != 1 {
            return Ok(false);
        }
        Ok(self.check_symmetric_exchange()?.passed())
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetSystem")
            .field("n", &self.n)
            .field("feasible", &self.iter().collect::<Vec<_>>())
            .finish()
    }
}

/// A matroid given by its bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    bases: SetSystem,
    rank: usize,
}

impl Matroid {
    pub fn new(bases: SetSystem) -> Result<Self> {
        if !bases.is_matroid()? {
            return Err(DmError::NotMatroid(
                "bases are not equicardinal or fail basis exchange".into(),
            ));
        }
        let rank = bases.iter().next().map_or(0, |b| b.count_ones() as usize);
        Ok(Matroid { bases, rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.bases.n
    }

    pub fn bases(&self) -> &SetSystem {
        &self.bases
    }

    pub fn into_bases(self) -> SetSystem {
        self.bases
    }

    pub fn is_basis(&self, m: Mask) -> bool {
        self.bases.contains(m)
    }

    pub fn dual(&self) -> Matroid {
        Matroid {
            bases: self.bases.dual(),
            rank: self.n() - self.rank,
        }
    }

    /// Elements in no basis.
    pub fn loops(&self) -> Mask {
        let covered = self.bases.iter().fold(0, |acc, b| acc | b);
        self.bases.ground_mask() & !covered
    }
}

/// Iterates set bit positions of a word, ascending.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sys(n: usize, masks: &[Mask]) -> SetSystem {
        SetSystem::from_masks(n, masks.iter().copied()).unwrap()
    }

    /// Direct triple loop over the axiom; shares nothing with the checker.
    fn raw_axiom(s: &SetSystem) -> bool {
        let f: Vec<Mask> = s.iter().collect();
        if f.is_empty() {
            return false;
        }
        for &x in &f {
            for &y in &f {
                let d = x ^ y;
                for e in 0..s.n() {
                    if d >> e & 1 == 0 {
                        continue;
                    }
                    let ok = (0..s.n())
                        .filter(|&g| d >> g & 1 == 1)
                        .any(|g| s.contains(x ^ ((1 << e) | (1 << g))));
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn all_systems(n: usize) -> impl Iterator<Item = SetSystem> {
        let len = 1u32 << n;
        (0..(1u64 << len)).map(move |bits| SetSystem::from_packed(n, bits).unwrap())
    }

    #[test]
    fn antipodal_full_ground_set_fails() {
        let s = sys(3, &[0, 0b111]);
        let r = s.check_symmetric_exchange().unwrap();
        assert_eq!(
            r,
            Exchange::Violation(ExchangeWitness { x: 0, y: 7, e: 1 })
        );
    }

    #[test]
    fn single_feasible_set_passes() {
        assert!(sys(1, &[0]).check_symmetric_exchange().unwrap().passed());
    }

    #[test]
    fn improper_is_rejected() {
        let s = SetSystem::improper(3).unwrap();
        assert!(matches!(s.check_symmetric_exchange(), Err(DmError::Improper)));
        assert!(matches!(s.is_even(), Err(DmError::Improper)));
        assert!(matches!(s.is_matroid(), Err(DmError::Improper)));
    }

    #[test]
    fn every_proper_system_on_two_elements_is_a_delta_matroid() {
        let proper: Vec<_> = all_systems(2).filter(|s| s.is_proper()).collect();
        assert_eq!(proper.len(), 15);
        assert!(proper.iter().all(|s| s.is_delta_matroid()));
    }

    #[test]
    fn checker_matches_raw_axiom_up_to_four() {
        for n in 0..=4 {
            for s in all_systems(n).filter(|s| s.is_proper()) {
                assert_eq!(s.is_delta_matroid(), raw_axiom(&s), "{s:?}");
            }
        }
    }

    #[test]
    fn twist_preserves_delta_matroids() {
        for n in 0..=3 {
            for s in all_systems(n).filter(|s| s.is_delta_matroid()) {
                for a in 0..(1 << n) {
                    assert!(s.twist(a).unwrap().is_delta_matroid());
                }
            }
        }
    }

    #[test]
    fn proper_minors_of_delta_matroids_are_delta_matroids() {
        for n in 1..=4 {
            for s in all_systems(n).filter(|s| s.is_delta_matroid()) {
                for e in 1..=n {
                    for kind in [MinorKind::Delete, MinorKind::Contract] {
                        let m = s.minor(e, kind).unwrap();
                        if m.is_proper() {
                            assert!(m.is_delta_matroid());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn evenness() {
        assert!(sys(2, &[0, 3]).is_even().unwrap());
        assert!(!sys(1, &[0, 1]).is_even().unwrap());
        let all_even = sys(3, &[0, 3, 5, 6]);
        let twisted = all_even.twist(1).unwrap();
        assert!(twisted.is_even().unwrap());
        assert!(twisted.iter().all(|m| m.count_ones() % 2 == 1));
    }

    #[test]
    fn twist_examples() {
        let s = sys(1, &[0]);
        assert_eq!(s.twist(0).unwrap(), s);
        assert_eq!(s.twist(1).unwrap(), sys(1, &[1]));
        assert!(matches!(s.twist(2), Err(DmError::MaskOutOfRange { .. })));
    }

    #[test]
    fn minors_of_antipodal_pair() {
        for n in 2..=6 {
            let full = (1 << (n + 1)) - 1;
            let s = sys(n + 1, &[0, full]);
            assert_eq!(s.contract(n + 1).unwrap(), sys(n, &[(1 << n) - 1]));
            assert_eq!(s.delete(n + 1).unwrap(), sys(n, &[0]));
        }
    }

    #[test]
    fn deleting_an_element_in_every_set_is_improper() {
        let s = sys(3, &[0b001, 0b011, 0b101]);
        assert!(!s.delete(1).unwrap().is_proper());
        assert!(s.contract(1).unwrap().is_proper());
        assert!(matches!(
            s.delete(4),
            Err(DmError::ElementOutOfRange { e: 4, n: 3 })
        ));
        assert!(matches!(s.delete(0), Err(DmError::ElementOutOfRange { .. })));
    }

    #[test]
    fn minors_on_distinct_elements_commute() {
        // Deleting a then contracting b (with b relabelled) equals the
        // reverse order.
        for n in 2..=4 {
            for s in all_systems(n) {
                for a in 1..=n {
                    for b in 1..=n {
                        if a == b {
                            continue;
                        }
                        let b_after = if b > a { b - 1 } else { b };
                        let a_after = if a > b { a - 1 } else { a };
                        let left = s.delete(a).unwrap().contract(b_after).unwrap();
                        let right = s.contract(b).unwrap().delete(a_after).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn compose_examples() {
        for n in 1..=6 {
            let d = SetSystem::compose(&sys(n - 1, &[(1 << (n - 1)) - 1]), &sys(n - 1, &[0])).unwrap();
            assert_eq!(d, sys(n, &[0, (1 << n) - 1]));
        }
        let imp = SetSystem::improper(2).unwrap();
        assert_eq!(
            SetSystem::compose(&imp, &imp).unwrap(),
            SetSystem::improper(3).unwrap()
        );
        assert!(matches!(
            SetSystem::compose(&imp, &SetSystem::improper(3).unwrap()),
            Err(DmError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn compose_is_a_bijection_on_three_elements() {
        let small: Vec<_> = all_systems(3).collect();
        let mut seen = std::collections::HashSet::new();
        for c in &small {
            for d in &small {
                let s = SetSystem::compose(c, d).unwrap();
                assert_eq!(&s.contract(4).unwrap(), c);
                assert_eq!(&s.delete(4).unwrap(), d);
                assert!(seen.insert(s));
            }
        }
        assert_eq!(seen.len(), 1 << 16);
        for s in all_systems(4) {
            let back = SetSystem::compose(&s.contract(4).unwrap(), &s.delete(4).unwrap()).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn min_feasible_matroid_examples() {
        let m = SetSystem::power_set(2).unwrap().min_feasible_matroid().unwrap();
        assert_eq!(m.rank(), 0);
        assert_eq!(m.bases(), &sys(2, &[0]));
        let u12 = sys(2, &[1, 2]).min_feasible_matroid().unwrap();
        assert_eq!(u12.rank(), 1);
        assert!(u12.bases().is_matroid().unwrap());
    }

    #[test]
    fn min_feasible_sets_form_matroids_up_to_four() {
        for n in 0..=4 {
            for s in all_systems(n).filter(|s| s.is_delta_matroid()) {
                let m = s.min_feasible_matroid().unwrap();
                assert!(m.bases().is_matroid().unwrap());
            }
        }
    }

    #[test]
    fn matroid_examples() {
        assert!(sys(3, &[0b011, 0b101, 0b110]).is_matroid().unwrap());
        assert!(!sys(3, &[0b001, 0b110]).is_matroid().unwrap());
        assert!(!sys(4, &[0b0011, 0b1100]).is_matroid().unwrap());
        assert!(Matroid::new(sys(4, &[0b0011, 0b1100])).is_err());
        let u23 = Matroid::new(sys(3, &[0b011, 0b101, 0b110])).unwrap();
        assert_eq!(u23.rank(), 2);
        assert_eq!(u23.dual().rank(), 1);
        assert_eq!(u23.loops(), 0);
    }

    #[test]
    fn large_ground_sets() {
        assert!(SetSystem::improper(17).is_err());
        let s = SetSystem::from_masks(10, [0, 1023, 512]).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 512, 1023]);
        assert_eq!(s.dual().iter().collect::<Vec<_>>(), vec![0, 511, 1023]);
        assert!(SetSystem::from_masks(10, [1024]).is_err());
    }

    fn arb_system(max_n: usize) -> impl Strategy<Value = SetSystem> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(0..(1u32 << n), 0..20)
                .prop_map(move |ms| SetSystem::from_masks(n, ms).unwrap())
        })
    }

    proptest! {
        #[test]
        fn twist_is_an_involution(s in arb_system(9), a in any::<u32>()) {
            let a = a & s.ground_mask();
            prop_assert_eq!(s.twist(a).unwrap().twist(a).unwrap(), s);
        }

        #[test]
        fn twist_parity(s in arb_system(7).prop_filter("proper", |s| s.is_proper()), a in any::<u32>()) {
            let a = a & s.ground_mask();
            let t = s.twist(a).unwrap();
            prop_assert_eq!(t.is_even().unwrap(), s.is_even().unwrap());
            if s.is_even().unwrap() {
                let p = s.feasible_parity().unwrap().unwrap();
                let q = t.feasible_parity().unwrap().unwrap();
                prop_assert_eq!(q, p ^ (a.count_ones() & 1));
            }
        }

        #[test]
        fn minor_matches_definition(s in arb_system(8).prop_filter("n>0", |s| s.n() > 0), e in 1usize..9) {
            let e = (e - 1) % s.n() + 1;
            let k = e - 1;
            let squeeze = |m: Mask| ((m >> (k + 1)) << k) | (m & ((1 << k) - 1));
            let del = SetSystem::from_masks(s.n() - 1, s.iter().filter(|m| m >> k & 1 == 0).map(squeeze)).unwrap();
            let con = SetSystem::from_masks(s.n() - 1, s.iter().filter(|m| m >> k & 1 == 1).map(squeeze)).unwrap();
            prop_assert_eq!(s.delete(e).unwrap(), del);
            prop_assert_eq!(s.contract(e).unwrap(), con);
        }
    }
}
