//! The sealed list of all labelled delta-matroids on `[n]` and its on-disk
//! form.
//!
//! File layout: magic `DMLC`, one version byte, one byte `n`, the record count
//! as a little-endian `u64`, then `count` records of `ceil(2^n / 8)` bytes
//! each (bit `m` = feasibility of mask `m`), sorted ascending.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::packed;
use crate::{DmError, Result, SetSystem};

pub const MAGIC: &[u8; 4] = b"DMLC";
pub const VERSION: u8 = 1;

/// Largest level representable as a list of packed words.
pub const MAX_LEVEL: usize = 6;

/// Levels whose membership index is a dense bitmap over all `2^(2^n)`
/// bitvectors.
const DENSE_LEVEL: usize = 4;

#[derive(Clone)]
pub struct LevelCache {
    n: usize,
    systems: Vec<u64>,
    dense: Option<Vec<u64>>,
}

impl std::fmt::Debug for LevelCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LevelCache")
            .field("n", &self.n)
            .field("len", &self.systems.len())
            .finish()
    }
}

impl PartialEq for LevelCache {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.systems == other.systems
    }
}

impl Eq for LevelCache {}

impl LevelCache {
    /// Level 0: the single delta-matroid `(∅, {∅})`.
    pub fn base() -> Self {
        Self::from_sorted(0, vec![1]).expect("valid base level")
    }

    /// Seals a sorted, duplicate-free list of packed systems.
    pub fn from_sorted(n: usize, systems: Vec<u64>) -> Result<Self> {
        if n > MAX_LEVEL {
            return Err(DmError::ResourceLimit {
                requested: n,
                limit: MAX_LEVEL,
            });
        }
        let range = packed::len_mask(n);
        if let Some(&bad) = systems.iter().find(|&&s| s & !range != 0 || s == 0) {
            return Err(DmError::IncompleteCache(format!(
                "entry {bad:#x} is improper or out of range for n = {n}"
            )));
        }
        if systems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DmError::IncompleteCache(
                "entries are not strictly increasing".into(),
            ));
        }
        let dense = (n <= DENSE_LEVEL).then(|| {
            let mut bitmap = vec![0u64; ((1usize << (1 << n)) / 64).max(1)];
            for &s in &systems {
                bitmap[(s >> 6) as usize] |= 1 << (s & 63);
            }
            bitmap
        });
        Ok(LevelCache { n, systems, dense })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    /// Packed feasibility bitvectors, ascending.
    pub fn systems(&self) -> &[u64] {
        &self.systems
    }

    pub fn set_systems(&self) -> impl Iterator<Item = SetSystem> + '_ {
        self.systems
            .iter()
            .map(|&b| SetSystem::from_packed(self.n, b).expect("sealed entries are valid"))
    }

    #[inline]
    pub fn contains(&self, bits: u64) -> bool {
        match &self.dense {
            Some(bitmap) => bitmap
                .get((bits >> 6) as usize)
                .is_some_and(|w| w >> (bits & 63) & 1 == 1),
            None => self.systems.binary_search(&bits).is_ok(),
        }
    }

    pub fn index_of(&self, bits: u64) -> Option<usize> {
        self.systems.binary_search(&bits).ok()
    }

    pub fn contains_system(&self, s: &SetSystem) -> bool {
        s.n() == self.n && s.to_packed().is_some_and(|b| self.contains(b))
    }

    /// Number of even delta-matroids in the level.
    pub fn count_even(&self) -> u64 {
        self.systems.iter().filter(|&&b| packed::is_even(b)).count() as u64
    }

    /// Checks that the list is closed under single-element twists and
    /// adjacent transpositions, as the complete level must be.
    pub fn verify_closure(&self) -> Result<()> {
        let n = self.n;
        let size = 1usize << n;
        let mut generators: Vec<Vec<u8>> = Vec::new();
        for k in 0..n {
            generators.push((0..size).map(|m| (m ^ (1 << k)) as u8).collect());
        }
        for k in 0..n.saturating_sub(1) {
            generators.push(
                (0..size)
                    .map(|m| {
                        let (a, b) = (m >> k & 1, m >> (k + 1) & 1);
                        let m = m & !(0b11 << k);
                        (m | (b << k) | (a << (k + 1))) as u8
                    })
                    .collect(),
            );
        }
        for &s in &self.systems {
            for g in &generators {
                let image = packed::remap(s, g);
                if !self.contains(image) {
                    return Err(DmError::IncompleteCache(format!(
                        "level {n} has {s:#x} but not its image {image:#x}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Runs the full exchange check on every entry.
    pub fn verify_axioms(&self) -> Result<()> {
        for s in self.set_systems() {
            if !s.is_delta_matroid() {
                return Err(DmError::IncompleteCache(format!(
                    "entry {s:?} is not a delta-matroid"
                )));
            }
        }
        Ok(())
    }

    fn record_len(n: usize) -> usize {
        (1usize << n).div_ceil(8)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let rec = Self::record_len(self.n);
        let mut out = Vec::with_capacity(14 + rec * self.systems.len());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(self.n as u8);
        out.extend_from_slice(&(self.systems.len() as u64).to_le_bytes());
        for s in &self.systems {
            out.extend_from_slice(&s.to_le_bytes()[..rec]);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let corrupt = |why: &str| DmError::IncompleteCache(why.to_string());
        if bytes.len() < 14 || &bytes[..4] != MAGIC {
            return Err(corrupt("bad magic"));
        }
        if bytes[4] != VERSION {
            return Err(corrupt("unsupported version"));
        }
        let n = bytes[5] as usize;
        if n > MAX_LEVEL {
            return Err(corrupt("level out of range"));
        }
        let count = u64::from_le_bytes(bytes[6..14].try_into().expect("8 bytes")) as usize;
        let rec = Self::record_len(n);
        let body = &bytes[14..];
        if Some(body.len()) != count.checked_mul(rec) {
            return Err(corrupt("length does not match record count"));
        }
        let systems = body
            .chunks_exact(rec)
            .map(|c| {
                let mut word = [0u8; 8];
                word[..rec].copy_from_slice(c);
                u64::from_le_bytes(word)
            })
            .collect();
        Self::from_sorted(n, systems)
    }

    /// Writes to a temporary sibling and renames it into place.
    pub fn write_to(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&self.to_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }
}

/// A directory holding one cache file per level.
#[derive(Debug, Clone)]
pub struct CacheStore {
    dir: PathBuf,
}

impl CacheStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CacheStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, n: usize) -> PathBuf {
        self.dir.join(format!("level-{n}.v{VERSION}.dmlc"))
    }

    /// Loads a level; missing or corrupt files yield `None`.
    pub fn load(&self, n: usize) -> Option<LevelCache> {
        match LevelCache::read_from(&self.path(n)) {
            Ok(c) if c.n() == n => Some(c),
            _ => None,
        }
    }

    pub fn save(&self, cache: &LevelCache) -> Result<()> {
        match fs::create_dir_all(&self.dir) {
            Err(e) if e.kind() != io::ErrorKind::AlreadyExists => return Err(e.into()),
            _ => {}
        }
        cache.write_to(&self.path(cache.n()))
    }
}
