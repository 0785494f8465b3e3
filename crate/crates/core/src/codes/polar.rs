use alloc::vec::Vec;

use crate::error::CodeError;
use crate::gf2::BitVector;

/// 5G NR polar reliability order restricted to `N = 128`, least reliable
/// first. Shorter power-of-two lengths take the entries below `n` in the
/// same order, since the standard sequence is nested.
#[rustfmt::skip]
pub const NR_RELIABILITY_128: [u16; 128] = [
    0, 1, 2, 4, 8, 16, 32, 3, 5, 64, 9, 6, 17, 10, 18, 12,
    33, 65, 20, 34, 24, 36, 7, 66, 11, 40, 68, 19, 13, 48, 14, 72,
    21, 35, 26, 80, 37, 25, 22, 38, 96, 67, 41, 28, 69, 42, 49, 74,
    70, 44, 81, 50, 73, 15, 52, 23, 76, 82, 56, 27, 97, 39, 84, 29,
    43, 98, 88, 30, 71, 45, 100, 51, 46, 75, 104, 53, 77, 54, 83, 57,
    112, 78, 85, 58, 99, 86, 60, 89, 101, 31, 90, 102, 105, 92, 47, 106,
    55, 113, 79, 108, 59, 114, 87, 116, 61, 91, 120, 62, 103, 93, 107, 94,
    109, 115, 110, 117, 118, 121, 122, 63, 124, 95, 111, 119, 123, 125, 126, 127,
];

/// Nested 5G reliability order for a power-of-two `n ≤ 128`.
pub fn nr_reliability(n: usize) -> Result<Vec<usize>, CodeError> {
    if !n.is_power_of_two() || n < 2 {
        return Err(CodeError::NotPowerOfTwo(n));
    }
    if n > NR_RELIABILITY_128.len() {
        return Err(CodeError::Reliability(n));
    }
    Ok(NR_RELIABILITY_128
        .iter()
        .map(|&i| i as usize)
        .filter(|&i| i < n)
        .collect())
}

// Bits j with (j & h) == 0, for h = 1, 2, 4, ..., 32.
const STAGE_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// In-place `x = u·F^{⊗m}` with `F = [[1,0],[1,1]]`, natural bit order.
///
/// The transform is its own inverse over GF(2).
pub fn polar_transform(x: &mut BitVector) {
    let n = x.len();
    assert!(n.is_power_of_two(), "polar transform needs a power-of-two length");
    let words = x.words_mut();
    let mut half = 1;
    while half < n && half < 64 {
        let mask = STAGE_MASKS[half.trailing_zeros() as usize];
        for w in words.iter_mut() {
            *w ^= (*w >> half) & mask;
        }
        half <<= 1;
    }
    while half < n {
        let hw = half / 64;
        for block in words.chunks_mut(2 * hw) {
            let (lo, hi) = block.split_at_mut(hw);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= *b;
            }
        }
        half <<= 1;
    }
}

/// Position layout of a CRC-aided polar code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarLayout {
    /// Reliability order used for the construction, least reliable first.
    pub reliability: Vec<usize>,
    /// Frozen positions, ascending.
    pub frozen: Vec<usize>,
    /// Information positions (payload followed by CRC), ascending.
    pub info: Vec<usize>,
    /// `frozen` as a bit mask over `n`.
    pub frozen_mask: BitVector,
}

impl PolarLayout {
    /// The `k` most reliable positions carry information.
    pub fn new(n: usize, k: usize, reliability: &[usize]) -> Result<Self, CodeError> {
        if !n.is_power_of_two() || n < 2 {
            return Err(CodeError::NotPowerOfTwo(n));
        }
        if k == 0 || k > n {
            return Err(CodeError::Dimensions { n, k });
        }
        let mut seen = alloc::vec![false; n];
        if reliability.len() != n {
            return Err(CodeError::Reliability(n));
        }
        for &i in reliability {
            if i >= n || seen[i] {
                return Err(CodeError::Reliability(n));
            }
            seen[i] = true;
        }
        let mut frozen = reliability[..n - k].to_vec();
        let mut info = reliability[n - k..].to_vec();
        frozen.sort_unstable();
        info.sort_unstable();
        let mut frozen_mask = BitVector::zeros(n);
        for &f in &frozen {
            frozen_mask.set(f, true);
        }
        Ok(Self {
            reliability: reliability.to_vec(),
            frozen,
            info,
            frozen_mask,
        })
    }
}
