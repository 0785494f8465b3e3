use super::block::{DecodeOutcome, SoftBlock};
use super::patterns::LogisticPatterns;
use super::DecoderConfig;
use crate::codes::BinaryCode;
use crate::gf2::BitVector;

/// Ordered-reliability GRAND: flips rank patterns in logistic-weight order
/// and returns the first word with zero syndrome.
///
/// The query order depends on the LLRs only through `block.rank()`, so the
/// Gaussian-assumption and stable-aware variants differ only in how the
/// block's LLRs were computed.
pub fn orbgrand(block: &SoftBlock, code: &BinaryCode, cfg: &DecoderConfig) -> DecodeOutcome {
    assert_eq!(block.len(), code.n(), "block length must equal code length");
    let hard = block.hard();
    let base = code.syndrome(hard);
    let rank = block.rank();
    let mut patterns = LogisticPatterns::new(code.n());
    let mut queries = 0u64;
    while queries < cfg.max_queries {
        let Some(pattern) = patterns.next_pattern() else {
            break;
        };
        queries += 1;
        let s = pattern.iter().fold(base, |s, &r| s ^ code.column(rank[r - 1]));
        if s == 0 {
            return DecodeOutcome::found(apply_pattern(hard, rank, pattern), queries);
        }
    }
    DecodeOutcome::gave_up(hard, queries)
}

/// Flips rank pattern `pattern` (1-based ranks) of `hard` through `rank`.
pub(crate) fn apply_pattern(hard: &BitVector, rank: &[usize], pattern: &[usize]) -> BitVector {
    let mut word = hard.clone();
    for &r in pattern {
        word.flip(rank[r - 1]);
    }
    word
}
