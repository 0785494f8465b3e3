use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use super::density::pdf;
use super::table::StableTable;
use super::StableParams;
use crate::error::StableError;

/// `log f(y-1)/f(y+1)` for BPSK symbols `±1` in symmetric stable noise.
pub fn llr_exact(y: f64, p: &StableParams) -> Result<f64, StableError> {
    p.require_symmetric()?;
    let g = p.gamma();
    let ay = libm::fabs(y);
    let v = if p.alpha() == 1.0 {
        cauchy_llr(ay, g)
    } else if p.alpha() == 2.0 {
        ay / (g * g)
    } else {
        libm::log(pdf(ay - 1.0, p)?) - libm::log(pdf(ay + 1.0, p)?)
    };
    Ok(if y < 0.0 { -v } else { v })
}

#[inline]
fn cauchy_llr(y: f64, g: f64) -> f64 {
    let g2 = g * g;
    libm::log((g2 + (y + 1.0) * (y + 1.0)) / (g2 + (y - 1.0) * (y - 1.0)))
}

/// Two-branch approximation `min(√2·y/γ, 2(α+1)/y)` for `y ≥ 0`, odd in `y`.
pub fn llr_approx(y: f64, alpha: f64, gamma: f64) -> f64 {
    let ay = libm::fabs(y);
    if ay == 0.0 {
        return 0.0;
    }
    let v = (SQRT_2 / gamma * ay).min(2.0 * (alpha + 1.0) / ay);
    if y < 0.0 {
        -v
    } else {
        v
    }
}

/// Soft value where the two branches of [`llr_approx`] meet:
/// `y* = sqrt(√2·(α+1)·γ)`.
pub fn approx_crossover(alpha: f64, gamma: f64) -> f64 {
    libm::sqrt(SQRT_2 * (alpha + 1.0) * gamma)
}

/// Exact LLR evaluator: closed forms for `α ∈ {1, 2}`, the cached table
/// otherwise.
#[derive(Debug, Clone)]
pub enum ExactLlr {
    Cauchy { gamma: f64 },
    Gaussian { gamma: f64 },
    Table(Arc<StableTable>),
}

impl ExactLlr {
    pub fn new(p: &StableParams) -> Result<Self, StableError> {
        p.require_symmetric()?;
        Ok(match p.alpha() {
            1.0 => ExactLlr::Cauchy { gamma: p.gamma() },
            2.0 => ExactLlr::Gaussian { gamma: p.gamma() },
            _ => ExactLlr::Table(Arc::new(StableTable::new(p)?)),
        })
    }

    #[inline]
    pub fn llr(&self, y: f64) -> f64 {
        match self {
            ExactLlr::Cauchy { gamma } => {
                let v = cauchy_llr(libm::fabs(y), *gamma);
                if y < 0.0 {
                    -v
                } else {
                    v
                }
            }
            ExactLlr::Gaussian { gamma } => y / (gamma * gamma),
            ExactLlr::Table(t) => t.llr(y),
        }
    }
}

/// How a receiver turns soft values into log-likelihood ratios.
#[derive(Debug, Clone)]
pub enum LlrModel {
    /// Treats the noise as Gaussian with standard deviation `sigma`:
    /// `2y/σ²`.
    GaussianAssumption { sigma: f64 },
    /// Exact stable-law LLRs.
    StableExact(ExactLlr),
    /// The two-branch closed-form approximation.
    StableApprox { alpha: f64, gamma: f64 },
}

impl LlrModel {
    #[inline]
    pub fn llr(&self, y: f64) -> f64 {
        match self {
            LlrModel::GaussianAssumption { sigma } => 2.0 * y / (sigma * sigma),
            LlrModel::StableExact(e) => e.llr(y),
            LlrModel::StableApprox { alpha, gamma } => llr_approx(y, *alpha, *gamma),
        }
    }

    pub fn llrs(&self, soft: &[f64]) -> Vec<f64> {
        soft.iter().map(|&y| self.llr(y)).collect()
    }
}
