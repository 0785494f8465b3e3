use core::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use super::density::cdf;
use super::StableParams;
use crate::error::StableError;

/// Standard normal upper tail `Q(x) = P(N(0,1) > x)`.
pub fn gaussian_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

/// `Q⁻¹(p)` for `p ∈ (0, 1)`.
pub fn gaussian_tail_inverse(p: f64) -> f64 {
    -normal_quantile(p)
}

/// Standard normal quantile `Φ⁻¹(p)`.
///
/// Acklam's rational approximation followed by one Halley step against
/// `erfc`, which brings the result to full double precision.
pub fn normal_quantile(p: f64) -> f64 {
    if !(p > 0.0 && p < 1.0) {
        return match p {
            0.0 => f64::NEG_INFINITY,
            1.0 => f64::INFINITY,
            _ => f64::NAN,
        };
    }
    const A: [f64; 6] = [
        -3.969683028665376e1,
        2.209460984245205e2,
        -2.759285104469687e2,
        1.383_577_518_672_69e2,
        -3.066479806614716e1,
        2.506628277459239,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e1,
        1.615858368580409e2,
        -1.556989798598866e2,
        6.680131188771972e1,
        -1.328068155288572e1,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-3,
        -3.223964580411365e-1,
        -2.400758277161838,
        -2.549732539343734,
        4.374664141464968,
        2.938163982698783,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-3,
        3.224671290700398e-1,
        2.445134137142996,
        3.754408661907416,
    ];
    const P_LOW: f64 = 0.02425;

    let x = if p < P_LOW {
        let q = libm::sqrt(-2.0 * libm::log(p));
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = libm::sqrt(-2.0 * libm::log(1.0 - p));
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };

    let e = 0.5 * libm::erfc(-x * FRAC_1_SQRT_2) - p;
    let u = e * libm::sqrt(2.0 * core::f64::consts::PI) * libm::exp(x * x / 2.0);
    x - u / (1.0 + x * u / 2.0)
}

/// Standard deviation of the Gaussian channel with the same hard-decision
/// BPSK error probability `p_e = P(Z < -1)` as the stable channel.
///
/// Returns `0` when `p_e` underflows to zero.
pub fn equivalent_sigma(p: &StableParams) -> Result<f64, StableError> {
    p.require_symmetric()?;
    if p.alpha() == 2.0 {
        return Ok(SQRT_2 * p.gamma());
    }
    let pe = cdf(-1.0, p)?;
    if pe >= 0.5 || pe.is_nan() {
        return Err(StableError::ErrorProbability(pe));
    }
    if pe == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / gaussian_tail_inverse(pe))
}

/// `10·log10(1 / (R·σ_eff²))` with unit-energy symbols and `E_b = 1/R`.
pub fn equivalent_snr_db(p: &StableParams, rate: f64) -> Result<f64, StableError> {
    check_rate(rate)?;
    let s = equivalent_sigma(p)?;
    Ok(snr_db_from_sigma(s, rate))
}

fn snr_db_from_sigma(sigma: f64, rate: f64) -> f64 {
    -10.0 * libm::log10(rate * sigma * sigma)
}

fn check_rate(rate: f64) -> Result<(), StableError> {
    if rate > 0.0 && rate <= 1.0 {
        Ok(())
    } else {
        Err(StableError::Rate(rate))
    }
}

const BRACKET_STEPS: usize = 200;
const BISECTION_STEPS: usize = 200;
const RELATIVE_TOLERANCE: f64 = 1e-12;

/// Scale `γ` whose equivalent SNR equals `target_snr_db`.
///
/// `α = 2` is solved in closed form. Otherwise the SNR is monotone
/// decreasing in `γ`, so a geometric bracket search followed by bisection
/// in `log γ` converges to the requested relative tolerance.
pub fn calibrate_gamma(target_snr_db: f64, alpha: f64, code_rate: f64) -> Result<f64, StableError> {
    check_rate(code_rate)?;
    if !target_snr_db.is_finite() {
        return Err(StableError::SnrOutOfRange(target_snr_db));
    }
    let sigma = libm::sqrt(1.0 / (code_rate * libm::pow(10.0, target_snr_db / 10.0)));
    let guess = sigma * FRAC_1_SQRT_2;
    let probe = StableParams::symmetric(alpha, guess)?;
    if alpha == 2.0 {
        return Ok(guess);
    }

    // +∞ below the underflow scale, −∞ once p_e reaches 1/2.
    let snr_at = |g: f64| -> Result<f64, StableError> {
        match equivalent_sigma(&probe.with_gamma(g)?) {
            Ok(s) => Ok(snr_db_from_sigma(s, code_rate)),
            Err(StableError::ErrorProbability(_)) => Ok(f64::NEG_INFINITY),
            Err(e) => Err(e),
        }
    };

    let mut lo = guess;
    let mut hi = guess;
    let mut steps = 0;
    while snr_at(lo)? < target_snr_db {
        lo /= 4.0;
        steps += 1;
        if steps > BRACKET_STEPS || lo == 0.0 {
            return Err(StableError::SnrOutOfRange(target_snr_db));
        }
    }
    steps = 0;
    while snr_at(hi)? > target_snr_db {
        hi *= 4.0;
        steps += 1;
        if steps > BRACKET_STEPS || !hi.is_finite() {
            return Err(StableError::SnrOutOfRange(target_snr_db));
        }
    }
    for _ in 0..BISECTION_STEPS {
        if hi / lo - 1.0 <= RELATIVE_TOLERANCE {
            break;
        }
        let mid = libm::sqrt(lo * hi);
        if snr_at(mid)? >= target_snr_db {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(libm::sqrt(lo * hi))
}
