//! Data behind the LLR-shape and rank-ordered-reliability plots.

use grand_core::stable::{approx_crossover, equivalent_sigma, llr_approx, ExactLlr, StableParams, StableSampler};
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::SimError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LlrCurveRow {
    pub y: f64,
    pub llr_exact: f64,
    pub llr_approx: f64,
    /// `|y|` is the crossover of the two approximation branches.
    pub crossover: bool,
}

impl LlrCurveRow {
    pub const CSV_HEADER: [&'static str; 4] = ["y", "llr_exact", "llr_approx", "crossover"];

    pub fn csv_fields(&self) -> [String; 4] {
        [
            self.y.to_string(),
            self.llr_exact.to_string(),
            self.llr_approx.to_string(),
            (self.crossover as u8).to_string(),
        ]
    }
}

/// Exact and approximate LLRs on `points` evenly spaced values in
/// `[y_min, y_max]`, with `±y*` inserted (when in range) and flagged.
pub fn llr_curve(p: &StableParams, y_min: f64, y_max: f64, points: usize) -> Result<Vec<LlrCurveRow>, SimError> {
    if !(y_min < y_max) || points < 2 {
        return Err(SimError::InvalidSpec(
            "llr curve needs y_min < y_max and at least 2 points".into(),
        ));
    }
    let exact = ExactLlr::new(p)?;
    let star = approx_crossover(p.alpha(), p.gamma());
    let last = (points - 1) as f64;
    // symmetric ranges give exactly negated grid points
    let mut ys: Vec<f64> = (0..points)
        .map(|i| (i as f64 * y_max + (last - i as f64) * y_min) / last)
        .collect();
    for s in [-star, star] {
        if (y_min..=y_max).contains(&s) {
            ys.push(s);
        }
    }
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    Ok(ys
        .into_iter()
        .map(|y| LlrCurveRow {
            y,
            llr_exact: exact.llr(y),
            llr_approx: llr_approx(y, p.alpha(), p.gamma()),
            crossover: y.abs() == star,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankLlrRow {
    /// 1-based, ascending reliability.
    pub rank: usize,
    pub llr_stable: f64,
    pub llr_gaussian: f64,
}

impl RankLlrRow {
    pub const CSV_HEADER: [&'static str; 3] = ["rank", "llr_stable", "llr_gaussian"];

    pub fn csv_fields(&self) -> [String; 3] {
        [
            self.rank.to_string(),
            self.llr_stable.to_string(),
            self.llr_gaussian.to_string(),
        ]
    }
}

/// Sorted `|LLR|`s of one all-(+1) block through the stable channel (exact
/// LLRs) and one through Gaussian noise of standard deviation `sigma`.
pub fn rank_llr_export<R: Rng + ?Sized>(
    n: usize,
    stable: &StableParams,
    sigma: f64,
    rng: &mut R,
) -> Result<Vec<RankLlrRow>, SimError> {
    if !(sigma > 0.0) {
        return Err(SimError::InvalidSpec("gaussian sigma must be positive".into()));
    }
    let exact = ExactLlr::new(stable)?;
    let sampler = StableSampler::new(stable)?;
    let mut a: Vec<f64> = (0..n).map(|_| exact.llr(1.0 + sampler.sample(rng)).abs()).collect();
    let mut g: Vec<f64> = (0..n)
        .map(|_| {
            let z: f64 = StandardNormal.sample(rng);
            (2.0 * (1.0 + sigma * z) / (sigma * sigma)).abs()
        })
        .collect();
    a.sort_by(f64::total_cmp);
    g.sort_by(f64::total_cmp);
    Ok((0..n)
        .map(|i| RankLlrRow {
            rank: i + 1,
            llr_stable: a[i],
            llr_gaussian: g[i],
        })
        .collect())
}

/// [`rank_llr_export`] with the Gaussian at the stable law's equivalent SNR.
pub fn rank_llr_equivalent<R: Rng + ?Sized>(
    n: usize,
    stable: &StableParams,
    rng: &mut R,
) -> Result<Vec<RankLlrRow>, SimError> {
    rank_llr_export(n, stable, equivalent_sigma(stable)?, rng)
}
