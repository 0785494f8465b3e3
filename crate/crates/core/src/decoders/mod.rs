//! Soft-input noise-guessing decoders.
//!
//! All decoders take a [`SoftBlock`] whose LLRs were computed under the
//! receiver's noise model; the model is what separates the Gaussian
//! baselines from the stable-aware variants.

mod block;
mod edge;
mod orbgrand;
mod patterns;
mod sgrand;

pub use block::{DecodeOutcome, SoftBlock};
pub use edge::{erase_by_llr, erase_by_soft, grand_edge, Eraser, ErasureOrigin, ErasureSet};
pub use orbgrand::orbgrand;
pub use patterns::LogisticPatterns;
pub use sgrand::{sgrand, LikelihoodPatterns};

use crate::error::DecoderError;
use crate::stable::{equivalent_sigma, ExactLlr, LlrModel, StableParams};

/// Default query budget, `2^20`.
pub const DEFAULT_MAX_QUERIES: u64 = 1 << 20;

/// How the receiver computes LLRs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LlrMode {
    /// `2y/σ_eff²` with `σ_eff` from the equivalent-SNR map.
    GaussianAssumption,
    /// Exact stable-law LLRs.
    AlphaExact,
    /// Two-branch closed-form approximation.
    AlphaApprox,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoderConfig {
    pub max_queries: u64,
    /// Soft-value erasure threshold.
    pub delta: f64,
    /// LLR erasure threshold.
    pub epsilon: f64,
    pub llr_mode: LlrMode,
    /// Channel noise; needed to build any LLR model.
    pub noise: Option<StableParams>,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_queries: DEFAULT_MAX_QUERIES,
            delta: 1.2,
            epsilon: 3.0,
            llr_mode: LlrMode::GaussianAssumption,
            noise: None,
        }
    }
}

impl DecoderConfig {
    pub fn validate(&self) -> Result<(), DecoderError> {
        if self.max_queries == 0 {
            return Err(DecoderError::ZeroBudget);
        }
        if !(self.delta > 0.0) {
            return Err(DecoderError::Threshold(self.delta));
        }
        if !(self.epsilon > 0.0) {
            return Err(DecoderError::Threshold(self.epsilon));
        }
        Ok(())
    }

    /// LLR model for `llr_mode` under `noise`.
    pub fn llr_model(&self) -> Result<LlrModel, DecoderError> {
        let p = self.noise.ok_or(DecoderError::MissingNoise)?;
        Ok(match self.llr_mode {
            LlrMode::GaussianAssumption => LlrModel::GaussianAssumption {
                sigma: equivalent_sigma(&p)?,
            },
            LlrMode::AlphaExact => LlrModel::StableExact(ExactLlr::new(&p)?),
            LlrMode::AlphaApprox => LlrModel::StableApprox {
                alpha: p.alpha(),
                gamma: p.gamma(),
            },
        })
    }
}
