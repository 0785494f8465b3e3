use std::f64::consts::{PI, SQRT_2};

use grand_core::stable::{
    calibrate_gamma, cdf, equivalent_sigma, equivalent_snr_db, llr_approx, llr_exact, pdf, pdf_by_inversion, sample,
    StableParams, StableTable,
};
use proptest::prelude::*;
use rand::rngs::SmallRng;
use rand::SeedableRng;

fn sym(alpha: f64, gamma: f64) -> StableParams {
    StableParams::symmetric(alpha, gamma).unwrap()
}

fn normal_pdf(x: f64, var: f64) -> f64 {
    (-x * x / (2.0 * var)).exp() / (2.0 * PI * var).sqrt()
}

// Composite Simpson on [a, b] with an even number of panels.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut s = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

// ∫_{-L}^{L} f with L = 1e4·γ: dense Simpson on the core, log-substituted
// Simpson on the tails.
fn mass_within(p: &StableParams) -> f64 {
    let g = p.gamma();
    let core = simpson(|x| pdf(x, p).unwrap(), 0.0, 50.0 * g, 2000);
    let tail = simpson(
        |t| {
            let x = t.exp();
            pdf(x, p).unwrap() * x
        },
        (50.0 * g).ln(),
        (1e4 * g).ln(),
        2000,
    );
    2.0 * (core + tail)
}

#[test]
fn pdf_integrates_to_one() {
    for alpha in [1.0, 1.5, 2.0] {
        let m = mass_within(&sym(alpha, 0.7));
        assert!((m - 1.0).abs() < 1e-4, "alpha={alpha} mass={m}");
    }
}

// For α < 1 the mass outside 1e4·γ is itself above 1e-4, so compare with
// unity minus the leading tail term 2·Γ(α)·sin(πα/2)/π · u^{-α}.
#[test]
fn pdf_mass_accounts_for_heavy_tail_below_one() {
    let alpha: f64 = 0.8;
    let m = mass_within(&sym(alpha, 0.7));
    let gamma_fn = 1.164_229_713_725_303_3; // Γ(0.8)
    let tail = 2.0 * gamma_fn * (PI * alpha / 2.0).sin() / PI * 1e4f64.powf(-alpha);
    assert!((m - (1.0 - tail)).abs() < 1e-4, "mass={m} expected={}", 1.0 - tail);
}

#[test]
fn inversion_matches_closed_forms_on_twenty_scales() {
    for g in [0.3, 1.0, 2.5] {
        for i in 0..=80 {
            let x = -20.0 * g + i as f64 * 0.5 * g;
            let cauchy = g / (PI * (g * g + x * x));
            let d1 = (pdf_by_inversion(x, &sym(1.0, g)).unwrap() - cauchy).abs();
            assert!(d1 <= 1e-8, "cauchy g={g} x={x} d={d1}");
            let d2 = (pdf_by_inversion(x, &sym(2.0, g)).unwrap() - normal_pdf(x, 2.0 * g * g)).abs();
            assert!(d2 <= 1e-8, "gauss g={g} x={x} d={d2}");
        }
    }
}

fn ks_statistic(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn samples_follow_the_analytic_law() {
    for (alpha, seed) in [(1.0, 1u64), (1.5, 2), (2.0, 3)] {
        let p = sym(alpha, 0.8);
        let xs = sample(&p, 100_000, &mut SmallRng::seed_from_u64(seed)).unwrap();
        let table = StableTable::new(&p).unwrap();
        let d = ks_statistic(xs, |x| {
            if alpha == 1.5 {
                table.cdf(x)
            } else {
                cdf(x, &p).unwrap()
            }
        });
        assert!(d < 0.01, "alpha={alpha} D={d}");
    }
}

#[test]
fn gaussian_samples_have_variance_two_gamma_squared() {
    let g = 0.6;
    let xs = sample(&sym(2.0, g), 100_000, &mut SmallRng::seed_from_u64(5)).unwrap();
    let var = xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64;
    assert!((var / (2.0 * g * g) - 1.0).abs() < 0.02);
}

#[test]
fn heavy_tail_llr_decays() {
    let p = sym(1.5, 0.5);
    assert!(llr_exact(10.0, &p).unwrap() < llr_exact(2.0, &p).unwrap());
}

#[test]
fn gaussian_sigma_and_calibration_chain() {
    let rate = 112.0 / 128.0;
    for s in [2.0, 5.0, 8.0] {
        let g = calibrate_gamma(s, 2.0, rate).unwrap();
        let sigma = (1.0 / (rate * 10f64.powf(s / 10.0))).sqrt();
        assert!((equivalent_sigma(&sym(2.0, g)).unwrap() - sigma).abs() < 1e-14);
        assert!((g - sigma / SQRT_2).abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pdf_is_even(alpha in 0.6f64..2.0, gamma in 0.1f64..3.0, x in -80.0f64..80.0) {
        let p = sym(alpha, gamma);
        prop_assert_eq!(pdf(x, &p).unwrap(), pdf(-x, &p).unwrap());
        prop_assert!(pdf(x, &p).unwrap() >= 0.0);
    }

    #[test]
    fn cdf_is_antisymmetric(alpha in 0.6f64..2.0, gamma in 0.1f64..3.0, x in -80.0f64..80.0) {
        let p = sym(alpha, gamma);
        let sum = cdf(x, &p).unwrap() + cdf(-x, &p).unwrap();
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cdf_is_monotone(alpha in 0.6f64..2.0, x in -30.0f64..30.0, dx in 0.0f64..5.0) {
        let p = sym(alpha, 1.0);
        prop_assert!(cdf(x, &p).unwrap() <= cdf(x + dx, &p).unwrap() + 1e-13);
    }

    #[test]
    fn llrs_are_odd(alpha in 0.6f64..2.0, gamma in 0.1f64..2.0, y in -60.0f64..60.0) {
        let p = sym(alpha, gamma);
        prop_assert_eq!(llr_exact(-y, &p).unwrap(), -llr_exact(y, &p).unwrap());
        prop_assert_eq!(llr_approx(-y, alpha, gamma), -llr_approx(y, alpha, gamma));
    }

    #[test]
    fn table_llr_tracks_point_llr(y in -24.0f64..24.0) {
        let p = sym(1.5, 0.5);
        let t = table_1_5();
        let exact = llr_exact(y, &p).unwrap();
        prop_assert!((t.llr(y) - exact).abs() < 1e-5 * exact.abs().max(1.0), "y={} {} {}", y, t.llr(y), exact);
    }

    #[test]
    fn calibration_inverts_snr(s in -2.0f64..10.0, alpha in prop::sample::select(vec![1.0, 1.3, 1.5, 1.8])) {
        let rate = 112.0 / 128.0;
        let g = calibrate_gamma(s, alpha, rate).unwrap();
        let back = equivalent_snr_db(&sym(alpha, g), rate).unwrap();
        prop_assert!((back - s).abs() < 1e-6);
        let g2 = calibrate_gamma(s + 0.5, alpha, rate).unwrap();
        prop_assert!(g2 < g);
    }
}

fn table_1_5() -> &'static StableTable {
    static TABLE: std::sync::OnceLock<StableTable> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| StableTable::new(&sym(1.5, 0.5)).unwrap())
}
