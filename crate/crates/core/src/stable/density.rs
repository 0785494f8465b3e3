use core::f64::consts::{FRAC_1_PI, PI};

use num_complex::Complex64;

use super::quadrature::TransformRule;
use super::StableParams;
use crate::error::StableError;

/// Beyond this many scale units the density and tail probabilities come from
/// the asymptotic power series instead of Fourier inversion.
pub const INVERSION_SPAN: f64 = 50.0;

/// `E[exp(j t Z)]` for `Z ~ S(α, β, γ, μ)`.
pub fn char_fn(t: f64, p: &StableParams) -> Complex64 {
    if t == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let alpha = p.alpha();
    let scaled = libm::pow(libm::fabs(p.gamma() * t), alpha);
    let zeta = if alpha == 1.0 {
        -2.0 * libm::log(libm::fabs(t)) / PI
    } else {
        libm::tan(PI * alpha / 2.0)
    };
    let sign = if t > 0.0 { 1.0 } else { -1.0 };
    let re = -scaled;
    let im = t * p.mu() + scaled * p.beta() * sign * zeta;
    let mag = libm::exp(re);
    Complex64::new(mag * libm::cos(im), mag * libm::sin(im))
}

/// Density `f(x; α, 0, γ, 0)`.
///
/// `α = 2` and `α = 1` use the normal (variance `2γ²`) and Cauchy closed
/// forms. Other exponents invert the characteristic function for
/// `|x| ≤ 50γ` and switch to the tail series further out.
pub fn pdf(x: f64, p: &StableParams) -> Result<f64, StableError> {
    p.require_symmetric()?;
    let g = p.gamma();
    if p.alpha() == 2.0 {
        return Ok(normal_pdf(x, g));
    }
    if p.alpha() == 1.0 {
        return Ok(cauchy_pdf(x, g));
    }
    let u = libm::fabs(x) / g;
    if u <= INVERSION_SPAN {
        standard_pdf_by_inversion(u, p.alpha()).map(|v| v / g)
    } else {
        Ok(standard_tail_density(u, p.alpha()) / g)
    }
}

/// Density by numerical inversion only, for every `α` and `x`. Used to
/// cross-check the closed forms.
pub fn pdf_by_inversion(x: f64, p: &StableParams) -> Result<f64, StableError> {
    p.require_symmetric()?;
    let u = libm::fabs(x) / p.gamma();
    standard_pdf_by_inversion(u, p.alpha()).map(|v| v / p.gamma())
}

/// Distribution function `P(Z ≤ x)` in the symmetric case.
pub fn cdf(x: f64, p: &StableParams) -> Result<f64, StableError> {
    p.require_symmetric()?;
    let g = p.gamma();
    if p.alpha() == 2.0 {
        return Ok(0.5 * libm::erfc(-x / (2.0 * g)));
    }
    if p.alpha() == 1.0 {
        return Ok(0.5 + libm::atan(x / g) * FRAC_1_PI);
    }
    let u = libm::fabs(x) / g;
    let upper = if u <= INVERSION_SPAN {
        0.5 - standard_half_mass_by_inversion(u, p.alpha())?
    } else {
        standard_tail_probability(u, p.alpha())
    };
    Ok(if x >= 0.0 { 1.0 - upper } else { upper })
}

pub(crate) fn normal_pdf(x: f64, gamma: f64) -> f64 {
    // variance 2γ²
    libm::exp(-x * x / (4.0 * gamma * gamma)) / (2.0 * gamma * libm::sqrt(PI))
}

pub(crate) fn cauchy_pdf(x: f64, gamma: f64) -> f64 {
    gamma / (PI * (gamma * gamma + x * x))
}

pub(crate) fn standard_pdf_by_inversion(u: f64, alpha: f64) -> Result<f64, StableError> {
    let rule = TransformRule::build(alpha, u)?;
    Ok(rule.cosine(u) * FRAC_1_PI)
}

/// `P(0 < Z ≤ u)` for the standard law.
pub(crate) fn standard_half_mass_by_inversion(u: f64, alpha: f64) -> Result<f64, StableError> {
    let rule = TransformRule::build(alpha, u)?;
    Ok(rule.sine_over_s(u) * FRAC_1_PI)
}

const TAIL_TERMS: u32 = 200;

/// Asymptotic series of the standard density for large `u`:
/// `(1/π) Σ (-1)^{k+1} Γ(αk+1)/k! sin(kπα/2) u^{-αk-1}`.
pub(crate) fn standard_tail_density(u: f64, alpha: f64) -> f64 {
    tail_series(u, alpha, 1.0)
}

/// `P(Z > u)` from the term-wise integrated series.
pub(crate) fn standard_tail_probability(u: f64, alpha: f64) -> f64 {
    tail_series(u, alpha, 0.0)
}

// `extra = 1` for the density (`Γ(αk+1) u^{-αk-1}`), `0` for the survival
// function (`Γ(αk) u^{-αk}`).
fn tail_series(u: f64, alpha: f64, extra: f64) -> f64 {
    let ln_u = libm::log(u);
    let mut sum = 0.0;
    let mut prev_mag = f64::INFINITY;
    for k in 1..=TAIL_TERMS {
        let kf = k as f64;
        let ln_mag = libm::lgamma(alpha * kf + extra) - libm::lgamma(kf + 1.0) - (alpha * kf + extra) * ln_u;
        let mag = libm::exp(ln_mag);
        let s = libm::sin(kf * PI * alpha / 2.0);
        // asymptotic: stop before the terms start growing again
        if mag > prev_mag {
            break;
        }
        prev_mag = mag;
        let term = if k % 2 == 1 { mag * s } else { -mag * s };
        sum += term;
        if mag < 1e-18 * libm::fabs(sum) {
            break;
        }
    }
    sum * FRAC_1_PI
}
