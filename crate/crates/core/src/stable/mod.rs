//! Symmetric alpha-stable channel noise.
//!
//! The Gaussian law is the `α = 2` member of the family with variance `2γ²`
//! (the second parameter of `N(μ, σ)` read as a variance), and the Cauchy
//! law is `α = 1` with scale `γ`.

mod density;
mod llr;
mod quadrature;
mod sampling;
mod snr;
mod table;

pub use density::{cdf, char_fn, pdf, pdf_by_inversion, INVERSION_SPAN};
pub use llr::{approx_crossover, llr_approx, llr_exact, ExactLlr, LlrModel};
pub use quadrature::TransformRule;
pub use sampling::{sample, StableSampler};
pub use snr::{
    calibrate_gamma, equivalent_sigma, equivalent_snr_db, gaussian_tail, gaussian_tail_inverse, normal_quantile,
};
pub use table::{StableTable, DEFAULT_TABLE_POINTS};

use crate::error::StableError;

/// The four parameters `(α, β, γ, μ)` of a stable law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    mu: f64,
}

impl StableParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, mu: f64) -> Result<Self, StableError> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(StableError::Alpha(alpha));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(StableError::Beta(beta));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(StableError::Gamma(gamma));
        }
        if !mu.is_finite() {
            return Err(StableError::Mu(mu));
        }
        Ok(Self { alpha, beta, gamma, mu })
    }

    /// `β = 0`, `μ = 0`: the only case the channel uses.
    pub fn symmetric(alpha: f64, gamma: f64) -> Result<Self, StableError> {
        Self::new(alpha, 0.0, gamma, 0.0)
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    #[inline]
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn is_symmetric(&self) -> bool {
        self.beta == 0.0 && self.mu == 0.0
    }

    pub(crate) fn require_symmetric(&self) -> Result<(), StableError> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(StableError::NotSymmetric)
        }
    }

    /// Same law with a different scale.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self, StableError> {
        Self::new(self.alpha, self.beta, gamma, self.mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_ranges_are_enforced() {
        assert!(StableParams::new(2.0, 1.0, 1.0, -3.0).is_ok());
        assert_eq!(StableParams::new(0.0, 0.0, 1.0, 0.0), Err(StableError::Alpha(0.0)));
        assert_eq!(StableParams::new(2.1, 0.0, 1.0, 0.0), Err(StableError::Alpha(2.1)));
        assert_eq!(StableParams::new(1.0, -1.5, 1.0, 0.0), Err(StableError::Beta(-1.5)));
        assert_eq!(StableParams::new(1.0, 0.0, 0.0, 0.0), Err(StableError::Gamma(0.0)));
        assert!(StableParams::new(f64::NAN, 0.0, 1.0, 0.0).is_err());
        assert!(StableParams::new(1.0, 0.0, f64::INFINITY, 0.0).is_err());
    }
}
