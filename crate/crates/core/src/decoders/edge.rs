use alloc::vec::Vec;

use super::block::{rank_by_reliability, DecodeOutcome, SoftBlock};
use super::orbgrand::orbgrand;
use super::patterns::LogisticPatterns;
use super::DecoderConfig;
use crate::codes::{BinaryCode, CodeKind};

/// How erased positions were chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErasureOrigin {
    /// `|soft| > δ`.
    SoftThreshold,
    /// `|llr| < ε`.
    LlrThreshold,
}

/// Strictly increasing erased positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasureSet {
    pub positions: Vec<usize>,
    pub origin: ErasureOrigin,
}

impl ErasureSet {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Positions whose soft value exceeds `delta` in magnitude.
pub fn erase_by_soft(block: &SoftBlock, delta: f64) -> ErasureSet {
    ErasureSet {
        positions: (0..block.len()).filter(|&i| block.soft()[i].abs() > delta).collect(),
        origin: ErasureOrigin::SoftThreshold,
    }
}

/// Positions whose LLR magnitude is below `epsilon`.
pub fn erase_by_llr(block: &SoftBlock, epsilon: f64) -> ErasureSet {
    ErasureSet {
        positions: (0..block.len()).filter(|&i| block.llr()[i].abs() < epsilon).collect(),
        origin: ErasureOrigin::LlrThreshold,
    }
}

/// Erasure rule for [`grand_edge`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eraser {
    /// Threshold `cfg.delta` on soft values.
    Soft,
    /// Threshold `cfg.epsilon` on LLRs.
    Llr,
}

/// `T` with `T·H_E = [I; 0]`, rows packed in `u128`.
#[derive(Debug, Clone)]
pub(crate) struct ErasureSolver {
    t: Vec<u128>,
    erased: usize,
}

impl ErasureSolver {
    /// `None` when the erased columns are linearly dependent.
    pub(crate) fn new(code: &BinaryCode, erased: &[usize]) -> Option<Self> {
        let r = code.checks();
        let e = erased.len();
        if e > r {
            return None;
        }
        // rows of [H_E | I_r]: low = H_E row as e bits, high = identity row
        let mut low: Vec<u128> = alloc::vec![0; r];
        let mut high: Vec<u128> = (0..r).map(|i| 1u128 << i).collect();
        for (j, &c) in erased.iter().enumerate() {
            let col = code.column(c);
            for (i, row) in low.iter_mut().enumerate() {
                *row |= ((col >> i) & 1) << j;
            }
        }
        for col in 0..e {
            let p = (col..r).find(|&i| (low[i] >> col) & 1 == 1)?;
            low.swap(col, p);
            high.swap(col, p);
            for i in 0..r {
                if i != col && (low[i] >> col) & 1 == 1 {
                    low[i] ^= low[col];
                    high[i] ^= high[col];
                }
            }
        }
        Some(Self { t: high, erased: e })
    }

    /// `T·s`, packed.
    #[inline]
    pub(crate) fn apply(&self, s: u128) -> u128 {
        self.t
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, row)| acc | (((row & s).count_ones() & 1) as u128) << i)
    }

    /// Erased values if `t = T·s` is consistent.
    #[inline]
    pub(crate) fn completion(&self, t: u128) -> Option<u128> {
        let low_mask = if self.erased == 128 {
            u128::MAX
        } else {
            (1u128 << self.erased) - 1
        };
        if t & !low_mask == 0 {
            Some(t)
        } else {
            None
        }
    }
}

/// Erasure decoding by Gaussian elimination.
///
/// Erased positions are solved from the parity checks; ORBGRAND guesses run
/// over the surviving positions, ranked among themselves. If more positions
/// are erased than there are parity checks, or the erased columns of `H` are
/// dependent, the whole block goes to [`orbgrand`] instead.
///
/// Each candidate costs one query. Inconsistent candidates are rejected.
pub fn grand_edge(block: &SoftBlock, code: &BinaryCode, cfg: &DecoderConfig, eraser: Eraser) -> DecodeOutcome {
    assert_eq!(block.len(), code.n(), "block length must equal code length");
    let erasures = match eraser {
        Eraser::Soft => erase_by_soft(block, cfg.delta),
        Eraser::Llr => erase_by_llr(block, cfg.epsilon),
    };
    if erasures.is_empty() {
        return orbgrand(block, code, cfg);
    }
    let erased = &erasures.positions;
    let Some(solver) = ErasureSolver::new(code, erased) else {
        let mut out = orbgrand(block, code, cfg);
        out.used_fallback = true;
        out.erased = erased.len();
        return out;
    };

    let mut is_erased = alloc::vec![false; code.n()];
    for &e in erased {
        is_erased[e] = true;
    }
    let survivors = rank_by_reliability(block.llr(), (0..code.n()).filter(|&i| !is_erased[i]));
    let hard = block.hard();
    let base = solver.apply(
        survivors
            .iter()
            .filter(|&&i| hard.get(i))
            .fold(0u128, |s, &i| s ^ code.column(i)),
    );
    let moved: Vec<u128> = survivors.iter().map(|&i| solver.apply(code.column(i))).collect();
    let polar = matches!(code.kind(), CodeKind::CaPolar { .. });

    let mut patterns = LogisticPatterns::new(survivors.len());
    let mut queries = 0u64;
    while queries < cfg.max_queries {
        let Some(pattern) = patterns.next_pattern() else {
            break;
        };
        queries += 1;
        let t = pattern.iter().fold(base, |t, &r| t ^ moved[r - 1]);
        let Some(x) = solver.completion(t) else {
            continue;
        };
        let mut word = hard.clone();
        for &r in pattern {
            word.flip(survivors[r - 1]);
        }
        for (j, &e) in erased.iter().enumerate() {
            word.set(e, (x >> j) & 1 == 1);
        }
        if polar && !code.is_codeword(&word) {
            continue;
        }
        let mut out = DecodeOutcome::found(word, queries);
        out.erased = erased.len();
        return out;
    }
    let mut out = DecodeOutcome::gave_up(hard, queries);
    out.erased = erased.len();
    out
}
