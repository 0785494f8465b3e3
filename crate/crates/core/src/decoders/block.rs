use alloc::vec::Vec;

use crate::gf2::BitVector;
use crate::stable::LlrModel;

/// A received block: soft values, their LLRs, sign decisions and the
/// positions sorted by ascending reliability.
#[derive(Debug, Clone)]
pub struct SoftBlock {
    soft: Vec<f64>,
    llr: Vec<f64>,
    hard: BitVector,
    rank: Vec<usize>,
}

impl SoftBlock {
    pub fn new(soft: Vec<f64>, model: &LlrModel) -> Self {
        let llr = model.llrs(&soft);
        Self::from_parts(soft, llr)
    }

    /// Bit `i` is 1 iff `soft[i] < 0`. Equal reliabilities keep index order.
    pub fn from_parts(soft: Vec<f64>, llr: Vec<f64>) -> Self {
        assert_eq!(soft.len(), llr.len(), "soft and llr lengths differ");
        let mut hard = BitVector::zeros(soft.len());
        for (i, &y) in soft.iter().enumerate() {
            if y < 0.0 {
                hard.set(i, true);
            }
        }
        let rank = rank_by_reliability(&llr, 0..llr.len());
        Self { soft, llr, hard, rank }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.soft.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.soft.is_empty()
    }

    pub fn soft(&self) -> &[f64] {
        &self.soft
    }

    pub fn llr(&self) -> &[f64] {
        &self.llr
    }

    pub fn hard(&self) -> &BitVector {
        &self.hard
    }

    /// `rank[r]` is the position with the `(r+1)`-th smallest `|llr|`.
    pub fn rank(&self) -> &[usize] {
        &self.rank
    }
}

/// Positions from `subset` sorted by ascending `|llr|`, ties by position.
pub(crate) fn rank_by_reliability<I: IntoIterator<Item = usize>>(llr: &[f64], subset: I) -> Vec<usize> {
    let mut idx: Vec<usize> = subset.into_iter().collect();
    idx.sort_by(|&a, &b| llr[a].abs().total_cmp(&llr[b].abs()).then(a.cmp(&b)));
    idx
}

/// Result of one decoding attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub codeword: BitVector,
    /// Membership tests performed (candidate words examined).
    pub queries: u64,
    /// Erased positions; 0 outside the erasure decoders.
    pub erased: usize,
    /// The erasure decoder gave up on the erasures and decoded the whole block.
    pub used_fallback: bool,
    /// Budget exhausted; `codeword` is then the hard decision.
    pub abandoned: bool,
}

impl DecodeOutcome {
    pub(crate) fn found(codeword: BitVector, queries: u64) -> Self {
        Self {
            codeword,
            queries,
            erased: 0,
            used_fallback: false,
            abandoned: false,
        }
    }

    pub(crate) fn gave_up(hard: &BitVector, queries: u64) -> Self {
        Self {
            codeword: hard.clone(),
            queries,
            erased: 0,
            used_fallback: false,
            abandoned: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hard_decision_and_rank() {
        let b = SoftBlock::from_parts(alloc::vec![0.5, -3.0, 1.1, -0.2], alloc::vec![1.0, -6.0, 2.2, -0.4]);
        assert_eq!(b.hard().to_bits(), [0, 1, 0, 1]);
        assert_eq!(b.rank(), [3, 0, 2, 1]);
    }

    #[test]
    fn ties_keep_position_order() {
        let b = SoftBlock::from_parts(alloc::vec![1.0; 4], alloc::vec![1.0, -1.0, 1.0, 0.5]);
        assert_eq!(b.rank(), [3, 0, 1, 2]);
    }
}
