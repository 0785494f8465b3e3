//! Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
//!
//! The run reports every criterion and exits 0 so the rest of the test
//! suite still runs; set `GRAND_ACCEPTANCE_STRICT=1` to exit 1 when any
//! criterion fails. Runtime is dominated by the BLER curves of 8 to 10.

use std::f64::consts::PI;
use std::time::Instant;

use grand_core::codes::{build_crc_code, capolar_128_112, crc_128_112, BinaryCode};
use grand_core::decoders::{grand_edge, orbgrand, sgrand, DecoderConfig, Eraser, LlrMode, LogisticPatterns, SoftBlock};
use grand_core::gf2::BitVector;
use grand_core::stable::{
    approx_crossover, calibrate_gamma, cdf, llr_approx, llr_exact, pdf_by_inversion, sample, StableParams,
    StableSampler, StableTable,
};
use grand_sim::harness::{random_message, trial_rng};
use grand_sim::stats::snr_at_bler;
use grand_sim::{delta_sensitivity, run_point, BlerPoint, DecoderKind, StopRule, SweepSpec};
use rand::distr::Distribution;

const TARGET_BLER: f64 = 1e-2;
const SEED: u64 = 20_240_601;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

/// Counters for criterion 11, fed by every harness run.
#[derive(Default)]
struct Soundness {
    points: u64,
    trials: u64,
    violations: u64,
    bad_counts: u64,
}

impl Soundness {
    fn record(&mut self, p: &BlerPoint) {
        self.points += 1;
        self.trials += p.trials;
        self.violations += p.codeword_violations;
        let consistent = p.bit_errors <= p.message_bits * p.block_errors && (p.block_errors > 0 || p.bit_errors == 0);
        self.bad_counts += (!consistent) as u64;
    }
}

fn sym(alpha: f64, gamma: f64) -> StableParams {
    StableParams::symmetric(alpha, gamma).unwrap()
}

fn c1_distribution_oracle() -> Verdict {
    let mut worst: f64 = 0.0;
    for g in [0.05, 0.5, 1.0, 3.0] {
        for i in 0..=800 {
            let x = g * (-20.0 + i as f64 * 0.05);
            let cauchy = g / (PI * (g * g + x * x));
            let v = 2.0 * g * g;
            let normal = (-x * x / (2.0 * v)).exp() / (2.0 * PI * v).sqrt();
            worst = worst
                .max((pdf_by_inversion(x, &sym(1.0, g)).unwrap() - cauchy).abs())
                .max((pdf_by_inversion(x, &sym(2.0, g)).unwrap() - normal).abs());
        }
    }
    verdict(
        worst <= 1e-8,
        format!("max |inversion - closed form| = {worst:.2e} on |x| <= 20γ (tol 1e-8)"),
    )
}

/// Asymptotic Kolmogorov p-value with the Stephens small-sample correction.
fn ks_p_value(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    let mut q = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = 2.0 * (-1f64).powi(k - 1) * (-2.0 * kf * kf * lambda * lambda).exp();
        q += term;
        if term.abs() < 1e-16 {
            break;
        }
    }
    q.clamp(0.0, 1.0)
}

fn c2_sampler_fidelity() -> Verdict {
    let n = 100_000;
    let mut parts = Vec::new();
    let mut pass = true;
    for (alpha, stream) in [(1.0, 1u64), (1.5, 2), (2.0, 3)] {
        let p = sym(alpha, 0.8);
        let mut xs = sample(&p, n, &mut trial_rng(SEED, stream)).unwrap();
        xs.sort_by(f64::total_cmp);
        let table = StableTable::new(&p).unwrap();
        let f = |x: f64| {
            if alpha == 1.5 {
                table.cdf(x)
            } else {
                cdf(x, &p).unwrap()
            }
        };
        let d = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let c = f(x);
                (c - i as f64 / n as f64).max((i + 1) as f64 / n as f64 - c)
            })
            .fold(0.0, f64::max);
        let pv = ks_p_value(d, n);
        pass &= pv > 0.01;
        parts.push(format!("α={alpha}: D={d:.5} p={pv:.3}"));
    }
    verdict(pass, format!("KS, 1e5 draws, significance 0.01: {}", parts.join(", ")))
}

fn c3_llr_shape() -> Verdict {
    let (alpha, gamma) = (1.5, 0.5);
    let p = sym(alpha, gamma);
    let star = approx_crossover(alpha, gamma);
    let ys: Vec<f64> = (1..=2000).map(|i| i as f64 * 0.005).collect();
    let l: Vec<f64> = ys.iter().map(|&y| llr_exact(y, &p).unwrap()).collect();
    let peak = (0..l.len()).max_by(|&a, &b| l[a].total_cmp(&l[b])).unwrap();
    let rising = ys.iter().take_while(|&&y| y < star).count();
    let up = l[..rising].windows(2).all(|w| w[1] > w[0]);
    let down = l[peak..].windows(2).all(|w| w[1] < w[0]);
    let worst = (0..=peak)
        .map(|i| ((llr_approx(ys[i], alpha, gamma) - l[i]) / l[i]).abs())
        .fold(0.0, f64::max);
    verdict(
        up && down && worst <= 0.15,
        format!(
            "α=1.5 γ=0.5: increasing on (0, y*={star:.4}) {up}, decreasing past max at y={:.3} {down}, \
             max relative error of approximation on rising branch {:.1}% (tol 15%)",
            ys[peak],
            100.0 * worst
        ),
    )
}

fn c4_ml_oracle() -> Verdict {
    let code = build_crc_code(8, 4, 0b10011).unwrap();
    let gamma = calibrate_gamma(2.0, 1.0, code.rate()).unwrap();
    let noise = sym(1.0, gamma);
    let cfg = DecoderConfig {
        noise: Some(noise),
        llr_mode: LlrMode::AlphaExact,
        ..Default::default()
    };
    let model = cfg.llr_model().unwrap();
    let sampler = StableSampler::new(&noise).unwrap();
    let book: Vec<BitVector> = (0u8..16)
        .map(|m| {
            code.encode(&BitVector::from_bits(&[
                (m >> 3) & 1,
                (m >> 2) & 1,
                (m >> 1) & 1,
                m & 1,
            ]))
            .unwrap()
        })
        .collect();
    let loglik = |soft: &[f64], w: &BitVector| -> f64 {
        soft.iter()
            .enumerate()
            .map(|(i, &y)| {
                let d = y - if w.get(i) { -1.0 } else { 1.0 };
                (gamma / (PI * (gamma * gamma + d * d))).ln()
            })
            .sum()
    };
    let trials = 10_000;
    let (mut hits, mut errors) = (0, 0);
    for t in 0..trials {
        let mut rng = trial_rng(SEED, t);
        let m = random_message(4, &mut rng);
        let sent = code.encode(&m).unwrap();
        let soft: Vec<f64> = sent
            .iter()
            .map(|b| if b { -1.0 } else { 1.0 } + sampler.sample(&mut rng))
            .collect();
        let block = SoftBlock::new(soft.clone(), &model);
        let out = sgrand(&block, &code, &cfg);
        let best = book.iter().map(|w| loglik(&soft, w)).fold(f64::NEG_INFINITY, f64::max);
        if !out.abandoned && (loglik(&soft, &out.codeword) - best).abs() <= 1e-9 {
            hits += 1;
        }
        errors += (out.codeword != sent) as u32;
    }
    verdict(
        hits == trials,
        format!("[8,4] CRC, α=1: {hits}/{trials} SGRAND outputs attain the codebook maximum (tol 1e-9); {errors} block errors"),
    )
}

fn c5_pattern_stream() -> Verdict {
    let n = 8;
    let got: Vec<Vec<usize>> = LogisticPatterns::new(n)
        .take_while(|p| p.iter().sum::<usize>() <= 36)
        .collect();
    let mut want: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect())
        .collect();
    want.sort_by_key(|p: &Vec<usize>| (p.iter().sum::<usize>(), p.len(), p.clone()));
    let mut dedup = got.clone();
    dedup.sort();
    dedup.dedup();
    verdict(
        got == want && dedup.len() == got.len(),
        format!(
            "n=8: {} patterns up to weight 36, {} distinct, order matches brute force: {}",
            got.len(),
            dedup.len(),
            got == want
        ),
    )
}

fn c6_edge_degeneration() -> Verdict {
    let mut mismatches = 0;
    let mut blocks = 0;
    for (code, snr) in [(crc_128_112(), 9.0), (capolar_128_112(), 8.5)] {
        let noise = sym(1.0, calibrate_gamma(snr, 1.0, code.rate()).unwrap());
        let cfg = DecoderConfig {
            delta: 1e6,
            noise: Some(noise),
            llr_mode: LlrMode::GaussianAssumption,
            ..Default::default()
        };
        let model = cfg.llr_model().unwrap();
        let sampler = StableSampler::new(&noise).unwrap();
        for t in 0..1000 {
            let mut rng = trial_rng(SEED ^ 6, t);
            let sent = code.encode(&random_message(code.message_len(), &mut rng)).unwrap();
            let soft: Vec<f64> = sent
                .iter()
                .map(|b| if b { -1.0 } else { 1.0 } + sampler.sample(&mut rng))
                .collect();
            let block = SoftBlock::new(soft, &model);
            mismatches += (grand_edge(&block, &code, &cfg, Eraser::Soft) != orbgrand(&block, &code, &cfg)) as u32;
            blocks += 1;
        }
    }
    verdict(
        mismatches == 0,
        format!("δ=1e6: {mismatches} differing outcomes over {blocks} blocks ([128,112] CRC and CA-Polar)"),
    )
}

fn c7_delta_sensitivity(sound: &mut Soundness) -> Verdict {
    let code = crc_128_112();
    let grid = [0.4, 0.8, 1.2, 1.6, 2.4, 4.0, f64::INFINITY];
    let mut spec = SweepSpec::new(DecoderKind::OrbgrandEdge, 1.0, vec![9.0, 10.0]);
    spec.seed = SEED;
    spec.stop = StopRule {
        min_block_errors: 50,
        max_trials: 1_000_000,
    };
    let surface = delta_sensitivity(&code, &spec, &grid, |c| sound.record(&c.point)).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for (row, snr) in surface.iter().zip(&spec.snr_points) {
        let ber: Vec<f64> = row.iter().map(|c| c.point.ber).collect();
        let (imin, min) =
            ber[1..ber.len() - 1].iter().enumerate().fold(
                (0, f64::INFINITY),
                |acc, (i, &b)| if b < acc.1 { (i + 1, b) } else { acc },
            );
        let ok = min < ber[0] && min < ber[ber.len() - 1];
        pass &= ok;
        parts.push(format!(
            "{snr} dB: BER(0.4)={:.2e} min BER({})={min:.2e} BER(inf)={:.2e}",
            ber[0],
            grid[imin],
            ber[ber.len() - 1]
        ));
    }
    verdict(
        pass,
        format!("[128,112] CRC, α=1, 50 errors/point: {}", parts.join("; ")),
    )
}

/// Steps SNR by 1 dB from `start` until BLER drops below the target, then
/// refines the bracket at its midpoint.
fn snr_at_target(code: &BinaryCode, decoder: DecoderKind, start: f64, sound: &mut Soundness) -> Option<f64> {
    let mut spec = SweepSpec::new(decoder, 1.0, vec![start]);
    spec.seed = SEED;
    spec.stop = StopRule {
        min_block_errors: 100,
        max_trials: 1_000_000,
    };
    let mut curve = Vec::new();
    let mut point = |snr: f64, curve: &mut Vec<(f64, f64)>| {
        let p = run_point(code, &spec, snr).unwrap();
        sound.record(&p);
        curve.push((snr, p.bler));
        p.bler
    };
    let mut snr = start;
    while point(snr, &mut curve) >= TARGET_BLER {
        snr += 1.0;
        if snr > start + 15.0 {
            return None;
        }
    }
    // bisect the 1 dB bracket down to 0.25 dB before interpolating
    if snr > start {
        let (mut lo, mut hi) = (snr - 1.0, snr);
        for _ in 0..2 {
            let mid = 0.5 * (lo + hi);
            if point(mid, &mut curve) >= TARGET_BLER {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    snr_at_bler(&curve, TARGET_BLER)
}

struct Curves {
    label: &'static str,
    snr: Vec<(DecoderKind, Option<f64>)>,
}

impl Curves {
    fn get(&self, d: DecoderKind) -> Option<f64> {
        self.snr.iter().find(|(k, _)| *k == d).and_then(|(_, s)| *s)
    }

    fn gap(&self, hi: DecoderKind, lo: DecoderKind) -> Option<f64> {
        Some(self.get(hi)? - self.get(lo)?)
    }
}

fn measure_curves(
    label: &'static str,
    code: &BinaryCode,
    decoders: &[DecoderKind],
    start: f64,
    sound: &mut Soundness,
) -> Curves {
    let snr = decoders
        .iter()
        .map(|&d| {
            let t = Instant::now();
            let s = snr_at_target(code, d, start, sound);
            eprintln!("  {label} {d}: SNR at BLER 1e-2 = {s:?} ({:.0?})", t.elapsed());
            (d, s)
        })
        .collect();
    Curves { label, snr }
}

fn fmt_gap(g: Option<f64>) -> String {
    g.map_or_else(|| "n/a".to_owned(), |g| format!("{g:.2} dB"))
}

fn c8_headline_gain(curves: &[Curves], smoke: &Curves) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for c in curves {
        let g = c.gap(DecoderKind::GaussianOrbgrand, DecoderKind::AlphaOrbgrand);
        pass &= g.is_some_and(|g| (1.5..=3.5).contains(&g));
        parts.push(format!("{} gap {}", c.label, fmt_gap(g)));
    }
    let g = smoke.gap(DecoderKind::GaussianOrbgrand, DecoderKind::AlphaOrbgrand);
    pass &= g.is_some_and(|g| g > 0.0);
    parts.push(format!("{} gap {} (must be > 0)", smoke.label, fmt_gap(g)));
    verdict(
        pass,
        format!(
            "gaussian-orbgrand minus alpha-orbgrand at BLER 1e-2 in [1.5, 3.5] dB: {}",
            parts.join(", ")
        ),
    )
}

fn c9_sgrand_proximity(curves: &[Curves], smoke: &Curves) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for c in curves.iter().chain([smoke]) {
        let g = c.gap(DecoderKind::AlphaSgrand, DecoderKind::GaussianSgrand);
        pass &= g.is_some_and(|g| g <= 1.5);
        parts.push(format!("{} {}", c.label, fmt_gap(g)));
    }
    verdict(
        pass,
        format!(
            "alpha-sgrand minus gaussian-noise sgrand at BLER 1e-2 <= 1.5 dB: {}",
            parts.join(", ")
        ),
    )
}

fn c10_edge_matches_alpha(curves: &[Curves]) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for c in curves {
        let g = c.gap(DecoderKind::AlphaOrbgrandEdge, DecoderKind::AlphaOrbgrand);
        pass &= g.is_some_and(|g| g.abs() <= 0.5);
        parts.push(format!("{} {}", c.label, fmt_gap(g)));
    }
    verdict(
        pass,
        format!(
            "|alpha-orbgrand-edge - alpha-orbgrand| at BLER 1e-2 <= 0.5 dB: {}",
            parts.join(", ")
        ),
    )
}

fn c11_soundness(sound: &mut Soundness) -> Verdict {
    let mut differing = 0;
    let mut checked = 0;
    for code in [
        build_crc_code(32, 26, 0b1000011).unwrap(),
        crc_128_112(),
        capolar_128_112(),
    ] {
        for d in DecoderKind::ALL {
            let mut spec = SweepSpec::new(d, 1.0, vec![8.0]);
            spec.seed = SEED ^ 11;
            spec.stop = StopRule {
                min_block_errors: 20,
                max_trials: 20_000,
            };
            let serial = run_point(&code, &spec, 8.0).unwrap();
            spec.workers = 4;
            let parallel = run_point(&code, &spec, 8.0).unwrap();
            sound.record(&serial);
            sound.record(&parallel);
            differing += (serial != parallel) as u32;
            checked += 1;
        }
    }
    verdict(
        sound.violations == 0 && sound.bad_counts == 0 && differing == 0,
        format!(
            "{} codeword violations and {} inconsistent counters over {} points / {} trials; \
             {differing}/{checked} points differ between 1 and 4 workers",
            sound.violations, sound.bad_counts, sound.points, sound.trials
        ),
    )
}

fn main() {
    let strict = std::env::var("GRAND_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let started = Instant::now();
    let mut sound = Soundness::default();
    let mut results: Vec<(u32, &str, Verdict, std::time::Duration)> = Vec::new();
    let mut run = |id: u32, name: &'static str, f: &mut dyn FnMut() -> Verdict| {
        let t = Instant::now();
        let v = f();
        let dt = t.elapsed();
        println!(
            "[{}] {id:>2} {name}: {} ({dt:.1?})",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        results.push((id, name, v, dt));
    };

    run(1, "distribution oracle", &mut c1_distribution_oracle);
    run(2, "sampler fidelity", &mut c2_sampler_fidelity);
    run(3, "LLR shape", &mut c3_llr_shape);
    run(4, "ML oracle", &mut c4_ml_oracle);
    run(5, "ORBGRAND generator", &mut c5_pattern_stream);
    run(6, "EDGE degeneration", &mut c6_edge_degeneration);
    run(7, "delta sensitivity", &mut || c7_delta_sensitivity(&mut sound));

    let all = [
        DecoderKind::GaussianOrbgrand,
        DecoderKind::AlphaOrbgrand,
        DecoderKind::AlphaOrbgrandEdge,
        DecoderKind::AlphaSgrand,
        DecoderKind::GaussianSgrand,
    ];
    let t = Instant::now();
    let curves = [
        measure_curves("[128,112] CRC", &crc_128_112(), &all, 4.0, &mut sound),
        measure_curves("[128,112] CA-Polar", &capolar_128_112(), &all, 4.0, &mut sound),
    ];
    let smoke = measure_curves(
        "[32,26] CRC",
        &build_crc_code(32, 26, 0b1000011).unwrap(),
        &[
            DecoderKind::GaussianOrbgrand,
            DecoderKind::AlphaOrbgrand,
            DecoderKind::AlphaSgrand,
            DecoderKind::GaussianSgrand,
        ],
        0.0,
        &mut sound,
    );
    eprintln!("  BLER curves took {:.0?}", t.elapsed());
    run(8, "headline gain", &mut || c8_headline_gain(&curves, &smoke));
    run(9, "SGRAND proximity", &mut || c9_sgrand_proximity(&curves, &smoke));
    run(10, "EDGE vs alpha-ORBGRAND", &mut || c10_edge_matches_alpha(&curves));
    run(11, "harness soundness", &mut || c11_soundness(&mut sound));

    let passed = results.iter().filter(|r| r.2.pass).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.0?}",
        results.len(),
        started.elapsed()
    );
    if strict && passed != results.len() {
        std::process::exit(1);
    }
}
