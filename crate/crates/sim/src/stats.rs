//! Small estimators used by the harness and the acceptance checks.

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `trials` at 95%.
/// Returns `(0, 1)` when `trials` is zero.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (lo, hi)
}

/// SNR at which a BLER curve crosses `target`, by linear interpolation of
/// `log10(bler)` between the first bracketing pair of points (sorted by
/// SNR). `None` if the curve never crosses or a bracketing BLER is zero.
pub fn snr_at_bler(curve: &[(f64, f64)], target: f64) -> Option<f64> {
    let mut pts = curve.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in pts.windows(2) {
        let ((s0, b0), (s1, b1)) = (w[0], w[1]);
        if b0 >= target && b1 <= target {
            if b0 == b1 {
                return Some(s0);
            }
            if b1 <= 0.0 {
                return None;
            }
            let (l0, l1, lt) = (b0.log10(), b1.log10(), target.log10());
            return Some(s0 + (lt - l0) / (l1 - l0) * (s1 - s0));
        }
    }
    None
}

/// Coefficient of determination of the least-squares line through
/// `(i, ys[i])`. A constant sequence fits perfectly.
pub fn linear_fit_r2(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    let mx = (n - 1.0) / 2.0;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (i, &y) in ys.iter().enumerate() {
        let dx = i as f64 - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if syy == 0.0 {
        return 1.0;
    }
    sxy * sxy / (sxx * syy)
}
