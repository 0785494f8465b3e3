//! The `grand` command line: argument parsing and subcommand drivers.

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgAction, Parser, Subcommand};
use grand_core::codes::CodeKind;
use grand_core::stable::{approx_crossover, equivalent_sigma, StableParams};
use serde_json::json;

use crate::config::RunConfig;
use crate::decoder::{CodeFamily, DecoderKind};
use crate::error::SimError;
use crate::figures::{llr_curve, rank_llr_export, LlrCurveRow, RankLlrRow};
use crate::harness::{delta_sensitivity, sweep, trial_rng, BlerPoint};
use crate::output::{comparison_fields, comparison_header, write_csv, CsvSink, Manifest, PointFailure};
use crate::stats::linear_fit_r2;

#[derive(Debug, Parser)]
#[command(name = "grand", version, about = "Noise-guessing decoders in alpha-stable noise")]
pub struct Cli {
    /// TOML run configuration.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Override a config value, e.g. `--set channel.snr_db=3,4`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Output directory for CSV and JSON files.
    #[arg(short, long, global = true, env = "GRAND_OUT_DIR", default_value = "grand-out")]
    pub out: PathBuf,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Progress on stderr; repeat for more.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// BLER/BER sweep for every configured decoder.
    Simulate,
    /// Soft-threshold EDGE BER over the delta grid.
    Sensitivity,
    /// Exact and approximate LLR over a grid of received values.
    LlrCurve,
    /// Sorted reliabilities under stable and equivalent Gaussian noise.
    RankLlr,
    /// Code parameters and structural checks.
    CodeInfo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Sensitivity => "sensitivity",
            Command::LlrCurve => "llr-curve",
            Command::RankLlr => "rank-llr",
            Command::CodeInfo => "code-info",
        }
    }
}

/// What a successful invocation left behind.
#[derive(Debug, Default)]
pub struct Report {
    pub files: Vec<PathBuf>,
    /// Points that failed after configuration was accepted.
    pub failed_points: usize,
}

impl Cli {
    pub fn config(&self) -> Result<RunConfig, SimError> {
        let mut overrides = self.overrides.clone();
        if let Some(s) = self.seed {
            overrides.push(format!("seed={s}"));
        }
        if let Some(w) = self.workers {
            overrides.push(format!("workers={w}"));
        }
        RunConfig::load(self.config.as_deref(), &overrides)
    }

    /// Runs the subcommand, writing human-readable text to `stdout`.
    pub fn run(&self, stdout: &mut dyn Write) -> Result<Report, SimError> {
        let cfg = self.config()?;
        if self.command == Command::CodeInfo {
            code_info(&cfg, stdout)?;
            return Ok(Report::default());
        }
        std::fs::create_dir_all(&self.out).map_err(|e| SimError::io(&self.out, e))?;
        let mut manifest = Manifest::new(self.command.name(), &cfg);
        let mut report = Report::default();
        match self.command {
            Command::Simulate => self.simulate(&cfg, &mut manifest, &mut report)?,
            Command::Sensitivity => self.sensitivity(&cfg, &mut manifest, &mut report)?,
            Command::LlrCurve => self.llr_curve(&cfg, &mut manifest, &mut report, stdout)?,
            Command::RankLlr => self.rank_llr(&cfg, &mut manifest, &mut report, stdout)?,
            Command::CodeInfo => unreachable!("handled above"),
        }
        manifest.files = report
            .files
            .iter()
            .map(|p| {
                p.file_name()
                    .map_or_else(String::new, |f| f.to_string_lossy().into_owned())
            })
            .collect();
        report.files.push(manifest.write(&self.out)?);
        report.failed_points = manifest.failures.len();
        Ok(report)
    }

    fn progress(&self, msg: impl FnOnce() -> String) {
        if self.verbose > 0 {
            eprintln!("{}", msg());
        }
    }

    fn simulate(&self, cfg: &RunConfig, manifest: &mut Manifest, report: &mut Report) -> Result<(), SimError> {
        let code = cfg.code.spec().build()?;
        let specs: Vec<_> = cfg
            .decoder
            .names
            .iter()
            .map(|&d| cfg.sweep_spec(d, cfg.channel.snr_db.clone()))
            .collect();
        for s in &specs {
            s.validate()?;
        }
        let mut merged = CsvSink::create(self.out.join("comparison.csv"), &comparison_header())?;
        for spec in &specs {
            let name = spec.decoder.name();
            let mut sink = CsvSink::create(self.out.join(format!("{name}.csv")), &BlerPoint::CSV_HEADER)?;
            let mut write_err = None;
            let results = sweep(&code, spec, |r| {
                let Ok(p) = r else { return };
                self.progress(|| format!("{name} snr={} bler={} trials={}", p.snr_db, p.bler, p.trials));
                if let Err(e) = sink
                    .row(&p.csv_fields())
                    .and_then(|_| merged.row(&comparison_fields(name, p)))
                {
                    write_err.get_or_insert(e);
                }
            })?;
            if let Some(e) = write_err {
                return Err(e);
            }
            for (r, &snr) in results.iter().zip(&spec.snr_points) {
                match r {
                    Ok(p) => manifest.codeword_violations += p.codeword_violations,
                    Err(e) => manifest.failures.push(PointFailure {
                        decoder: name.to_owned(),
                        snr_db: snr,
                        error: e.to_string(),
                    }),
                }
            }
            report.files.push(sink.path().to_path_buf());
        }
        report.files.push(merged.path().to_path_buf());
        Ok(())
    }

    fn sensitivity(&self, cfg: &RunConfig, manifest: &mut Manifest, report: &mut Report) -> Result<(), SimError> {
        let code = cfg.code.spec().build()?;
        let spec = cfg.sweep_spec(DecoderKind::OrbgrandEdge, cfg.sensitivity.snr_db.clone());
        let header: Vec<&str> = std::iter::once("delta").chain(BlerPoint::CSV_HEADER).collect();
        let path = self.out.join("sensitivity.csv");
        let mut sink = CsvSink::create(&path, &header)?;
        let mut write_err = None;
        let surface = delta_sensitivity(&code, &spec, &cfg.sensitivity.delta, |c| {
            self.progress(|| format!("snr={} delta={} ber={}", c.point.snr_db, c.delta, c.point.ber));
            let fields: Vec<String> = std::iter::once(c.delta.to_string())
                .chain(c.point.csv_fields())
                .collect();
            if let Err(e) = sink.row(&fields) {
                write_err.get_or_insert(e);
            }
        })?;
        if let Some(e) = write_err {
            return Err(e);
        }
        manifest.codeword_violations = surface.iter().flatten().map(|c| c.point.codeword_violations).sum();
        report.files.push(path);
        Ok(())
    }

    fn llr_curve(
        &self,
        cfg: &RunConfig,
        _manifest: &mut Manifest,
        report: &mut Report,
        stdout: &mut dyn Write,
    ) -> Result<(), SimError> {
        let c = &cfg.llr_curve;
        let p = StableParams::symmetric(c.alpha, c.gamma)?;
        let rows = llr_curve(&p, c.y_min, c.y_max, c.points)?;
        let path = self.out.join("llr_curve.csv");
        write_csv(
            &path,
            &LlrCurveRow::CSV_HEADER,
            rows.iter().map(LlrCurveRow::csv_fields),
        )?;
        writeln!(stdout, "crossover y* = {}", approx_crossover(c.alpha, c.gamma))
            .map_err(|e| SimError::io("stdout", e))?;
        report.files.push(path);
        Ok(())
    }

    fn rank_llr(
        &self,
        cfg: &RunConfig,
        manifest: &mut Manifest,
        report: &mut Report,
        stdout: &mut dyn Write,
    ) -> Result<(), SimError> {
        let r = &cfg.rank_llr;
        let p = StableParams::symmetric(r.alpha, r.gamma)?;
        let sigma = equivalent_sigma(&p)?;
        let draws = r.draws.max(1);
        let mut first = Vec::new();
        let (mut r2_stable, mut r2_gauss) = (0.0, 0.0);
        for d in 0..draws {
            let rows = rank_llr_export(r.n, &p, sigma, &mut trial_rng(cfg.seed, d as u64))?;
            let a: Vec<f64> = rows.iter().map(|x| x.llr_stable).collect();
            let g: Vec<f64> = rows.iter().map(|x| x.llr_gaussian).collect();
            r2_stable += linear_fit_r2(&a);
            r2_gauss += linear_fit_r2(&g);
            if d == 0 {
                first = rows;
            }
        }
        let (r2_stable, r2_gauss) = (r2_stable / draws as f64, r2_gauss / draws as f64);
        let path = self.out.join("rank_llr.csv");
        write_csv(&path, &RankLlrRow::CSV_HEADER, first.iter().map(RankLlrRow::csv_fields))?;
        writeln!(
            stdout,
            "sigma_eff = {sigma}\nmean R^2 over {draws} draws: stable {r2_stable}, gaussian {r2_gauss}"
        )
        .map_err(|e| SimError::io("stdout", e))?;
        manifest.summary = Some(json!({
            "sigma_eff": sigma,
            "draws": draws,
            "mean_r2_stable": r2_stable,
            "mean_r2_gaussian": r2_gauss,
        }));
        report.files.push(path);
        Ok(())
    }
}

/// Prints code parameters; fails if a structural check does not hold.
pub fn code_info(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), SimError> {
    let spec = cfg.code.spec();
    let code = spec.build()?;
    let g_rank = code.generator().rank();
    let h_rank = code.parity_check().rank();
    let orthogonal = code.generator().mul_transpose(code.parity_check()).is_zero();
    let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
    let family = match spec.family {
        CodeFamily::Crc => "crc",
        CodeFamily::Capolar => "capolar",
    };
    let mut lines: Vec<(&str, String)> = vec![
        ("family", family.to_owned()),
        ("n", code.n().to_string()),
        ("k", code.k().to_string()),
        ("message bits", code.message_len().to_string()),
        ("parity checks", code.checks().to_string()),
        ("rate", code.rate().to_string()),
    ];
    match code.kind() {
        CodeKind::Crc { poly } => lines.push(("crc polynomial", format!("{:#x}", poly.bits()))),
        CodeKind::CaPolar { crc, layout } => {
            lines.push(("crc polynomial", format!("{:#x}", crc.bits())));
            lines.push(("frozen bits", layout.frozen.len().to_string()));
        }
    }
    lines.push(("rank(G)", format!("{g_rank} {}", mark(g_rank == code.message_len()))));
    lines.push(("rank(H)", format!("{h_rank} {}", mark(h_rank == code.checks()))));
    lines.push(("G*H^T = 0", mark(orthogonal).to_owned()));
    let text: String = lines.iter().map(|(k, v)| format!("{k:<16}{v}\n")).collect();
    out.write_all(text.as_bytes()).map_err(|e| SimError::io("stdout", e))?;
    if g_rank != code.message_len() || h_rank != code.checks() || !orthogonal {
        return Err(SimError::Config("structural checks failed".into()));
    }
    Ok(())
}

/// Exit status: 0 on success, 1 if some points failed, 2 on configuration
/// or IO errors.
pub fn main_with(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match cli.run(stdout) {
        Ok(r) if r.failed_points == 0 => 0,
        Ok(r) => {
            let _ = writeln!(stderr, "error: {} point(s) failed; see manifest.json", r.failed_points);
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
