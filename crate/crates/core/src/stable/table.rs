use alloc::vec::Vec;
use core::f64::consts::FRAC_1_PI;

use super::density::{standard_tail_density, standard_tail_probability, INVERSION_SPAN};
use super::quadrature::TransformRule;
use super::StableParams;
use super::{cdf, pdf};
use crate::error::StableError;

/// Grid points across `[-50γ, 50γ]` for the default table.
pub const DEFAULT_TABLE_POINTS: usize = 1 << 16;

/// Cached density and distribution function on a uniform grid over
/// `[-50γ, 50γ]`, built once per scale and shared read-only by decoders.
///
/// Only the non-negative half is stored. The log-density is linearly
/// interpolated; the distribution function uses cubic Hermite interpolation
/// with the density as derivative.
#[derive(Debug, Clone)]
pub struct StableTable {
    params: StableParams,
    step: f64,
    span: f64,
    pdf: Vec<f64>,
    ln_pdf: Vec<f64>,
    cdf: Vec<f64>,
}

impl StableTable {
    pub fn new(params: &StableParams) -> Result<Self, StableError> {
        Self::with_points(params, DEFAULT_TABLE_POINTS)
    }

    /// `points` grid intervals across the full symmetric span (rounded to even).
    pub fn with_points(params: &StableParams, points: usize) -> Result<Self, StableError> {
        params.require_symmetric()?;
        let intervals = (points / 2).max(1);
        let step_u = INVERSION_SPAN / intervals as f64;
        if params.alpha() == 1.0 || params.alpha() == 2.0 {
            return Ok(Self::closed_form(params, intervals, step_u));
        }
        let rule = TransformRule::build(params.alpha(), INVERSION_SPAN)?;
        let (cos_t, sin_t) = rule.tabulate(step_u, intervals + 1);
        let g = params.gamma();
        let mut pdf = Vec::with_capacity(intervals + 1);
        let mut ln_pdf = Vec::with_capacity(intervals + 1);
        let mut cdf = Vec::with_capacity(intervals + 1);
        for (c, s) in cos_t.iter().zip(&sin_t) {
            let f = c * FRAC_1_PI / g;
            if !(f > 0.0) {
                return Err(StableError::Accuracy("non-positive tabulated density"));
            }
            pdf.push(f);
            ln_pdf.push(libm::log(f));
            cdf.push(0.5 + s * FRAC_1_PI);
        }
        Ok(Self {
            params: *params,
            step: step_u * g,
            span: INVERSION_SPAN * g,
            pdf,
            ln_pdf,
            cdf,
        })
    }

    fn closed_form(params: &StableParams, intervals: usize, step_u: f64) -> Self {
        let g = params.gamma();
        let xs = (0..=intervals).map(|i| i as f64 * step_u * g);
        let ln_pdf = if params.alpha() == 2.0 {
            // variance 2γ²
            xs.clone()
                .map(|x| -x * x / (4.0 * g * g) - libm::log(2.0 * g * libm::sqrt(core::f64::consts::PI)))
                .collect()
        } else {
            xs.clone().map(|x| libm::log(pdf(x, params).unwrap_or(0.0))).collect()
        };
        Self {
            params: *params,
            step: step_u * g,
            span: INVERSION_SPAN * g,
            pdf: xs.clone().map(|x| pdf(x, params).unwrap_or(0.0)).collect(),
            ln_pdf,
            cdf: xs.map(|x| cdf(x, params).unwrap_or(0.5)).collect(),
        }
    }

    pub fn params(&self) -> &StableParams {
        &self.params
    }

    /// Half-width of the tabulated region, `50γ`.
    pub fn span(&self) -> f64 {
        self.span
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    #[inline]
    fn locate(&self, ax: f64) -> (usize, f64) {
        let pos = ax / self.step;
        let i = (pos as usize).min(self.pdf.len() - 2);
        (i, pos - i as f64)
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        let ax = libm::fabs(x);
        if ax > self.span {
            let g = self.params.gamma();
            if self.params.alpha() == 2.0 {
                return -ax * ax / (4.0 * g * g) - libm::log(2.0 * g * libm::sqrt(core::f64::consts::PI));
            }
            return libm::log(standard_tail_density(ax / g, self.params.alpha()) / g);
        }
        let (i, t) = self.locate(ax);
        self.ln_pdf[i] + t * (self.ln_pdf[i + 1] - self.ln_pdf[i])
    }

    pub fn pdf(&self, x: f64) -> f64 {
        libm::exp(self.ln_pdf(x))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let ax = libm::fabs(x);
        let upper = if ax > self.span {
            standard_tail_probability(ax / self.params.gamma(), self.params.alpha())
        } else {
            let (i, t) = self.locate(ax);
            let h = self.step;
            let t2 = t * t;
            let t3 = t2 * t;
            let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
            let h10 = t3 - 2.0 * t2 + t;
            let h01 = -2.0 * t3 + 3.0 * t2;
            let h11 = t3 - t2;
            let f = h00 * self.cdf[i] + h10 * h * self.pdf[i] + h01 * self.cdf[i + 1] + h11 * h * self.pdf[i + 1];
            1.0 - f
        };
        if x >= 0.0 {
            1.0 - upper
        } else {
            upper
        }
    }

    /// `log f(y-1)/f(y+1)`; once either argument leaves the table the
    /// heavy-tail branch `2(α+1)/y` takes over.
    pub fn llr(&self, y: f64) -> f64 {
        let ay = libm::fabs(y);
        let v = if ay + 1.0 > self.span {
            2.0 * (self.params.alpha() + 1.0) / ay
        } else {
            self.ln_pdf(ay - 1.0) - self.ln_pdf(ay + 1.0)
        };
        if y < 0.0 {
            -v
        } else {
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable::{cdf, pdf};

    #[test]
    fn cauchy_table_matches_closed_forms() {
        let p = StableParams::symmetric(1.0, 0.7).unwrap();
        let t = StableTable::with_points(&p, 1 << 14).unwrap();
        for x in [-30.0, -3.3, -0.71, 0.0, 0.2, 1.0, 7.0, 34.9, 60.0] {
            let exact = pdf(x, &p).unwrap();
            assert!(((t.pdf(x) - exact) / exact).abs() < 1e-5, "x={x}");
            assert!((t.cdf(x) - cdf(x, &p).unwrap()).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn general_alpha_table_matches_point_inversion() {
        let p = StableParams::symmetric(1.5, 0.5).unwrap();
        let t = StableTable::new(&p).unwrap();
        for x in [0.0, 0.013, 0.5, 1.0, 2.71, 9.9, 24.0] {
            let exact = pdf(x, &p).unwrap();
            assert!(((t.pdf(x) - exact) / exact).abs() < 1e-6, "x={x}");
            assert!((t.cdf(x) - cdf(x, &p).unwrap()).abs() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn gaussian_table_is_linear_llr() {
        let p = StableParams::symmetric(2.0, 0.5).unwrap();
        let t = StableTable::with_points(&p, 1 << 12).unwrap();
        for y in [0.3, 2.0, 15.0, 23.9] {
            assert!((t.llr(y) / (y / 0.25) - 1.0).abs() < 1e-4, "y={y}");
        }
        assert!(t.ln_pdf(100.0).is_finite());
    }

    #[test]
    fn llr_is_odd() {
        let p = StableParams::symmetric(1.3, 0.4).unwrap();
        let t = StableTable::with_points(&p, 1 << 12).unwrap();
        for y in [0.0, 0.1, 0.9, 3.0, 19.5, 25.0, 100.0] {
            assert_eq!(t.llr(-y), -t.llr(y));
        }
        assert_eq!(t.llr(0.0), 0.0);
    }
}
