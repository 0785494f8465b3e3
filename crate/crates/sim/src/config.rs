//! Run configuration: a sectioned TOML file plus `section.key=value`
//! overrides. Missing keys take the defaults below.
//!
//! ```toml
//! seed = 7
//! workers = 4
//!
//! [code]
//! family = "capolar"       # crc | capolar
//! n = 128
//! k = 112                  # capolar: payload + CRC bits
//! poly = 0xE21             # full polynomial, leading term included
//!
//! [channel]
//! alpha = 1.0
//! snr_db = [3.0, 4.0, 5.0]
//!
//! [decoder]
//! names = ["gaussian-orbgrand", "alpha-orbgrand"]
//! max_queries = 1048576
//! delta = 1.2
//! epsilon = 3.0
//!
//! [stop]
//! min_block_errors = 100
//! max_trials = 1000000
//! ```

use std::path::Path;

use grand_core::decoders::{DecoderConfig, DEFAULT_MAX_QUERIES};
use grand_core::stable::StableParams;
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::decoder::{CodeFamily, CodeSpec, DecoderKind};
use crate::error::SimError;
use crate::harness::{StopRule, SweepSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub workers: usize,
    pub code: CodeSection,
    pub channel: ChannelSection,
    pub decoder: DecoderSection,
    pub stop: StopRule,
    pub sensitivity: SensitivitySection,
    pub llr_curve: LlrCurveSection,
    pub rank_llr: RankLlrSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            workers: 1,
            code: CodeSection::default(),
            channel: ChannelSection::default(),
            decoder: DecoderSection::default(),
            stop: StopRule::default(),
            sensitivity: SensitivitySection::default(),
            llr_curve: LlrCurveSection::default(),
            rank_llr: RankLlrSection::default(),
        }
    }
}

/// Unset fields default per family to the [128,112] codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CodeSection {
    pub family: CodeFamily,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub poly: Option<u64>,
}

impl Default for CodeSection {
    fn default() -> Self {
        Self {
            family: CodeFamily::Crc,
            n: None,
            k: None,
            poly: None,
        }
    }
}

impl CodeSection {
    pub fn spec(&self) -> CodeSpec {
        let preset = match self.family {
            CodeFamily::Crc => CodeSpec::crc_128_112(),
            CodeFamily::Capolar => CodeSpec::capolar_128_112(),
        };
        CodeSpec {
            family: self.family,
            n: self.n.unwrap_or(preset.n),
            k: self.k.unwrap_or(preset.k),
            poly: self.poly.unwrap_or(preset.poly),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelSection {
    pub alpha: f64,
    #[serde(deserialize_with = "one_or_many_f64")]
    pub snr_db: Vec<f64>,
}

impl Default for ChannelSection {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            snr_db: vec![3.0, 4.0, 5.0, 6.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecoderSection {
    /// A list, or a single name.
    #[serde(deserialize_with = "one_or_many")]
    pub names: Vec<DecoderKind>,
    pub max_queries: u64,
    pub delta: f64,
    pub epsilon: f64,
}

impl Default for DecoderSection {
    fn default() -> Self {
        Self {
            names: vec![
                DecoderKind::GaussianOrbgrand,
                DecoderKind::OrbgrandEdge,
                DecoderKind::AlphaOrbgrand,
                DecoderKind::AlphaOrbgrandEdge,
                DecoderKind::AlphaSgrand,
                DecoderKind::GaussianSgrand,
            ],
            max_queries: DEFAULT_MAX_QUERIES,
            delta: 1.2,
            epsilon: 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SensitivitySection {
    #[serde(deserialize_with = "one_or_many_f64")]
    pub snr_db: Vec<f64>,
    /// `inf` is accepted and disables erasures.
    #[serde(deserialize_with = "one_or_many_f64", serialize_with = "non_finite_as_text")]
    pub delta: Vec<f64>,
}

impl Default for SensitivitySection {
    fn default() -> Self {
        Self {
            snr_db: vec![4.0, 5.0],
            delta: vec![0.4, 0.8, 1.2, 1.6, 2.4, 4.0, f64::INFINITY],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LlrCurveSection {
    pub alpha: f64,
    pub gamma: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub points: usize,
}

impl Default for LlrCurveSection {
    fn default() -> Self {
        Self {
            alpha: 1.5,
            gamma: 0.5,
            y_min: -10.0,
            y_max: 10.0,
            points: 401,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RankLlrSection {
    pub n: usize,
    pub alpha: f64,
    pub gamma: f64,
    /// Blocks averaged for the linear-fit summary; the CSV holds the first.
    pub draws: usize,
}

impl Default for RankLlrSection {
    fn default() -> Self {
        Self {
            n: 128,
            alpha: 1.0,
            gamma: 0.05,
            draws: 100,
        }
    }
}

impl RunConfig {
    /// Parses `text` and applies `overrides` (`section.key=value`) on top.
    pub fn from_toml(text: &str, overrides: &[String]) -> Result<Self, SimError> {
        let mut table: Table = toml::from_str(text).map_err(|e| SimError::Config(e.to_string()))?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        let cfg: RunConfig = Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| SimError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self, SimError> {
        let text = match path {
            Some(p) => std::fs::read_to_string(p).map_err(|e| SimError::io(p, e))?,
            None => String::new(),
        };
        Self::from_toml(&text, overrides)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.workers == 0 {
            return Err(SimError::Config("workers must be at least 1".into()));
        }
        if self.decoder.names.is_empty() {
            return Err(SimError::Config(format!(
                "decoder.names is empty; valid names: {}",
                DecoderKind::valid_names()
            )));
        }
        self.stop.validate()?;
        self.decoder_config().validate()?;
        StableParams::symmetric(self.llr_curve.alpha, self.llr_curve.gamma)?;
        StableParams::symmetric(self.rank_llr.alpha, self.rank_llr.gamma)?;
        Ok(())
    }

    pub fn decoder_config(&self) -> DecoderConfig {
        DecoderConfig {
            max_queries: self.decoder.max_queries,
            delta: self.decoder.delta,
            epsilon: self.decoder.epsilon,
            ..DecoderConfig::default()
        }
    }

    pub fn sweep_spec(&self, decoder: DecoderKind, snr_points: Vec<f64>) -> SweepSpec {
        SweepSpec {
            decoder,
            config: self.decoder_config(),
            alpha: self.channel.alpha,
            snr_points,
            stop: self.stop,
            seed: self.seed,
            workers: self.workers,
        }
    }
}

fn one_or_many_f64<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Value {
        Num(f64),
        Text(String),
    }
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Values {
        One(Value),
        Many(Vec<Value>),
    }
    let values = match Values::deserialize(d)? {
        Values::One(v) => vec![v],
        Values::Many(v) => v,
    };
    values
        .into_iter()
        .map(|v| match v {
            Value::Num(x) => Ok(x),
            // JSON has no infinity, so the manifest spells it out
            Value::Text(t) => t
                .parse::<f64>()
                .map_err(|_| serde::de::Error::custom(format!("expected a number, found {t:?}"))),
        })
        .collect()
}

fn non_finite_as_text<S: serde::Serializer>(values: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for &v in values {
        if v.is_finite() {
            seq.serialize_element(&v)?;
        } else {
            seq.serialize_element(&v.to_string())?;
        }
    }
    seq.end()
}

fn one_or_many<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<DecoderKind>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Names {
        One(String),
        Many(Vec<String>),
    }
    let names = match Names::deserialize(d)? {
        Names::One(s) => vec![s],
        Names::Many(v) => v,
    };
    names
        .into_iter()
        .map(|s| s.parse().map_err(serde::de::Error::custom))
        .collect()
}

/// Sets `path.to.key` in `table` from `key=value`. The value is read as a
/// TOML value; a bare comma list becomes an array and anything else that
/// does not parse is taken as a string.
pub fn apply_override(table: &mut Table, assignment: &str) -> Result<(), SimError> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| SimError::Config(format!("override `{assignment}` is not key=value")))?;
    let path: Vec<&str> = key.trim().split('.').collect();
    if path.iter().any(|p| p.is_empty()) {
        return Err(SimError::Config(format!("bad override key `{key}`")));
    }
    let value = parse_value(raw.trim());
    let (last, parents) = path.split_last().expect("split yields at least one part");
    let mut cur = table;
    for p in parents {
        let entry = cur.entry(p.to_string()).or_insert_with(|| Value::Table(Table::new()));
        cur = entry
            .as_table_mut()
            .ok_or_else(|| SimError::Config(format!("override `{key}`: `{p}` is not a section")))?;
    }
    cur.insert(last.to_string(), value);
    Ok(())
}

fn parse_value(raw: &str) -> Value {
    let parse = |s: &str| {
        toml::from_str::<Table>(&format!("v = {s}"))
            .ok()
            .and_then(|mut t| t.remove("v"))
    };
    if let Some(v) = parse(raw) {
        return v;
    }
    if raw.contains(',') {
        return Value::Array(raw.split(',').map(|s| parse_value(s.trim())).collect());
    }
    Value::String(raw.to_owned())
}
