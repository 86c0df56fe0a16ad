//! Bit-parallel operations on set systems with `n <= 6`, packed in a `u64`.
//!
//! Bit `m` of the word is the feasibility of mask `m`, exactly as in
//! [`SetSystem`](crate::SetSystem).

/// `LOW_HALF[j]`: word positions whose bit `j` is zero.
const LOW_HALF: [u64; 7] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
    u64::MAX,
];

/// Positions `m` with an odd number of ones.
const ODD_POSITIONS: u64 = 0x6996_9669_9669_6996;

/// Bits `0..2^n`.
#[inline]
pub fn len_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

/// Gathers the positions with bit `k` clear, in order, into the low bits.
#[inline]
fn squeeze(mut x: u64, k: usize) -> u64 {
    x &= LOW_HALF[k];
    let mut s = k;
    while s < 6 {
        x = (x | (x >> (1u32 << s))) & LOW_HALF[s + 1];
        s += 1;
    }
    x
}

/// Deletion of the element with bit index `k`.
#[inline]
pub fn delete(bits: u64, k: usize) -> u64 {
    squeeze(bits, k)
}

/// Contraction of the element with bit index `k`.
#[inline]
pub fn contract(bits: u64, k: usize) -> u64 {
    squeeze(bits >> (1u32 << k), k)
}

/// System on `[n+1]` whose contraction of `n+1` is `contracted` and whose
/// deletion of `n+1` is `deleted`; both live on `[n]`, `n <= 5`.
#[inline]
pub fn compose(contracted: u64, deleted: u64, n: usize) -> u64 {
    deleted | (contracted << (1u32 << n))
}

/// Whether all feasible sets share a size parity (false for improper).
#[inline]
pub fn is_even(bits: u64) -> bool {
    bits != 0 && (bits & ODD_POSITIONS == 0 || bits & !ODD_POSITIONS == 0)
}

/// Whether the feasible sets are exactly `{F, [n] - F}` for some `F`.
#[inline]
pub fn is_antipodal(bits: u64, n: usize) -> bool {
    if bits.count_ones() != 2 {
        return false;
    }
    let lo = bits.trailing_zeros();
    let hi = 63 - bits.leading_zeros();
    lo ^ hi == (1u32 << n) - 1
}

/// Image of the system under the mask map `table` (`table[m]` is the image
/// of mask `m`).
#[inline]
pub fn remap(bits: u64, table: &[u8]) -> u64 {
    let mut out = 0;
    let mut rest = bits;
    while rest != 0 {
        let m = rest.trailing_zeros() as usize;
        out |= 1u64 << table[m];
        rest &= rest - 1;
    }
    out
}
