//! Local covers: partitions of `E ∪ {z}` that record which sets `X △ {a, b}`
//! are feasible around an infeasible even set `X`.
//!
//! A partition with at least three blocks stands for the rank-two matroid
//! whose loops are the elements sharing a block with `z` and whose parallel
//! classes are the other blocks. `X △ {a, b}` is feasible iff `{a, b}` is a
//! basis of that matroid. With fewer than three blocks every `X △ {a, b}`
//! is infeasible.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{DmError, Mask, Result, SetSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    /// Elements of `E` sharing the block of `z`.
    z_block: Mask,
    /// Remaining blocks, ordered by least element.
    blocks: Vec<Mask>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    Infeasible,
    Feasible,
}

impl Partition {
    pub fn new(n: usize, z_block: Mask, mut blocks: Vec<Mask>) -> Result<Self> {
        let bad = |why: &str| Err(DmError::InvalidPartition(why.to_string()));
        if n > 31 {
            return bad("ground set too large");
        }
        let full: Mask = ((1u64 << n) - 1) as Mask;
        let mut seen = z_block;
        if z_block & !full != 0 {
            return bad("z block leaves the ground set");
        }
        for &b in &blocks {
            if b == 0 {
                return bad("empty block");
            }
            if b & !full != 0 {
                return bad("block leaves the ground set");
            }
            if b & seen != 0 {
                return bad("blocks overlap");
            }
            seen |= b;
        }
        if seen != full {
            return bad("blocks do not cover the ground set");
        }
        blocks.sort_unstable_by_key(|b| b.trailing_zeros());
        Ok(Partition { n, z_block, blocks })
    }

    /// The one-block partition `{E ∪ z}`.
    pub fn trivial(n: usize) -> Self {
        Partition {
            n,
            z_block: ((1u64 << n) - 1) as Mask,
            blocks: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z_block(&self) -> Mask {
        self.z_block
    }

    pub fn blocks(&self) -> &[Mask] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        1 + self.blocks.len()
    }

    /// Blocks as element lists with `z` written as 0, `z`'s block first.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        let elems = |m: Mask| (0..self.n).filter(move |i| m >> i & 1 == 1).map(|i| i + 1);
        let mut out = vec![std::iter::once(0).chain(elems(self.z_block)).collect()];
        out.extend(self.blocks.iter().map(|&b| elems(b).collect()));
        out
    }

    /// Inverse of [`Partition::to_lists`]; `n` is the number of elements
    /// other than `z`.
    pub fn from_lists(lists: &[Vec<usize>]) -> Result<Self> {
        let n = lists.iter().map(Vec::len).sum::<usize>().saturating_sub(1);
        let mut z_block = None;
        let mut blocks = Vec::new();
        for list in lists {
            let mut mask: Mask = 0;
            let mut has_z = false;
            for &e in list {
                if e == 0 {
                    has_z = true;
                } else if e > n || e > 31 {
                    return Err(DmError::InvalidPartition(format!("element {e} out of range")));
                } else {
                    mask |= 1 << (e - 1);
                }
            }
            if has_z {
                if z_block.replace(mask).is_some() {
                    return Err(DmError::InvalidPartition("z appears twice".into()));
                }
            } else {
                blocks.push(mask);
            }
        }
        let z_block = z_block.ok_or_else(|| DmError::InvalidPartition("z is missing".into()))?;
        Self::new(n, z_block, blocks)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_lists().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let lists = Vec::<Vec<usize>>::deserialize(de)?;
        Partition::from_lists(&lists).map_err(serde::de::Error::custom)
    }
}

/// Reads off whether `X △ {a, b}` is feasible (elements 1-based, `a != b`).
pub fn cover_certifies(p: &Partition, a: usize, b: usize) -> Result<Certificate> {
    if a == b || a == 0 || b == 0 || a > p.n || b > p.n {
        return Err(DmError::Precondition(format!(
            "need two distinct elements of [{}], got {a} and {b}",
            p.n
        )));
    }
    if p.block_count() < 3 {
        return Ok(Certificate::Infeasible);
    }
    let block_of = |e: usize| p.blocks.iter().position(|&blk| blk >> (e - 1) & 1 == 1);
    Ok(match (block_of(a), block_of(b)) {
        (Some(i), Some(j)) if i != j => Certificate::Feasible,
        _ => Certificate::Infeasible,
    })
}

/// The local cover at an infeasible even set `x` of a delta-matroid whose
/// feasible sets all have even size.
pub fn local_cover(d: &SetSystem, x: Mask) -> Result<Partition> {
    let n = d.n();
    if u64::from(x) >> n != 0 {
        return Err(DmError::MaskOutOfRange { mask: x.into(), n });
    }
    if d.feasible_parity()? != Some(0) {
        return Err(DmError::Parity("feasible sets must all have even size".into()));
    }
    if x.count_ones() % 2 == 1 {
        return Err(DmError::Parity(format!("X = {x} has odd size")));
    }
    if d.contains(x) {
        return Err(DmError::Feasible(x));
    }
    let pair = |a: usize, b: usize| ((1 << a) | (1 << b)) as Mask;
    let any_feasible = (0..n).any(|a| (a + 1..n).any(|b| d.contains(x ^ pair(a, b))));
    if !any_feasible {
        return Ok(Partition::trivial(n));
    }
    // The minimum feasible sets of D * X are exactly the pairs {a, b} with
    // X △ {a, b} feasible, and they are the bases of a rank-two matroid.
    let m = d.twist(x)?.min_feasible_matroid()?;
    if m.rank() != 2 {
        return Err(DmError::Precondition(format!(
            "minimum feasible sets of D * X have size {}, expected 2",
            m.rank()
        )));
    }
    let loops = m.loops();
    let mut blocks: Vec<Mask> = Vec::new();
    for e in (0..n).filter(|&e| loops >> e & 1 == 0) {
        let home = blocks
            .iter_mut()
            .find(|blk| !m.is_basis(pair(e, blk.trailing_zeros() as usize)));
        match home {
            Some(blk) => *blk |= 1 << e,
            None => blocks.push(1 << e),
        }
    }
    let cover = Partition::new(n, loops, blocks)?;
    // Parallelism is an equivalence only for genuine matroids.
    for a in 1..=n {
        for b in a + 1..=n {
            let feasible = d.contains(x ^ pair(a - 1, b - 1));
            let said = cover_certifies(&cover, a, b)? == Certificate::Feasible;
            if feasible != said {
                return Err(DmError::NotDeltaMatroid);
            }
        }
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_empty_set_on_four() {
        let d = SetSystem::from_masks(4, [0]).unwrap();
        let p = local_cover(&d, 0b0011).unwrap();
        assert_eq!(p.to_lists(), vec![vec![0, 3, 4], vec![1], vec![2]]);
        assert_eq!(cover_certifies(&p, 1, 2).unwrap(), Certificate::Feasible);
        assert_eq!(cover_certifies(&p, 1, 3).unwrap(), Certificate::Infeasible);
        assert_eq!(cover_certifies(&p, 3, 4).unwrap(), Certificate::Infeasible);
    }

    #[test]
    fn certify_examples() {
        let one = Partition::trivial(4);
        for a in 1..=4 {
            for b in a + 1..=4 {
                assert_eq!(cover_certifies(&one, a, b).unwrap(), Certificate::Infeasible);
            }
        }
        let p = Partition::from_lists(&[vec![0], vec![1], vec![2, 3, 4]]).unwrap();
        assert_eq!(cover_certifies(&p, 1, 2).unwrap(), Certificate::Feasible);
        let q = Partition::from_lists(&[vec![0, 3], vec![1, 2], vec![4]]).unwrap();
        assert_eq!(cover_certifies(&q, 1, 2).unwrap(), Certificate::Infeasible);
        assert_eq!(cover_certifies(&q, 1, 4).unwrap(), Certificate::Feasible);
        assert_eq!(cover_certifies(&q, 3, 4).unwrap(), Certificate::Infeasible);
        assert!(cover_certifies(&q, 2, 2).is_err());
        assert!(cover_certifies(&q, 1, 5).is_err());
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::from_lists(&[vec![1], vec![2]]).is_err());
        assert!(Partition::from_lists(&[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_lists(&[vec![0, 1], vec![0, 2]]).is_err());
        assert!(Partition::new(3, 0b001, vec![0b010]).is_err());
        assert!(Partition::new(3, 0b001, vec![0b010, 0]).is_err());
    }

    #[test]
    fn preconditions() {
        let d = SetSystem::from_masks(3, [0, 3]).unwrap();
        assert!(matches!(local_cover(&d, 0), Err(DmError::Feasible(0))));
        assert!(matches!(local_cover(&d, 1), Err(DmError::Parity(_))));
        let odd = SetSystem::from_masks(3, [1]).unwrap();
        assert!(matches!(local_cover(&odd, 0), Err(DmError::Parity(_))));
        let mixed = SetSystem::from_masks(3, [0, 1]).unwrap();
        assert!(matches!(local_cover(&mixed, 3), Err(DmError::Parity(_))));
    }

    #[test]
    fn serde_uses_zero_for_z() {
        let p = Partition::from_lists(&[vec![0, 3], vec![1, 2], vec![4]]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, "[[0,3],[1,2],[4]]");
        let back: Partition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
