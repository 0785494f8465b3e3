//! Named decoder variants and code selection.

use std::fmt;
use std::str::FromStr;

use grand_core::codes::{build_capolar_code, build_crc_code, nr_reliability, BinaryCode};
use grand_core::decoders::{grand_edge, orbgrand, sgrand, DecodeOutcome, DecoderConfig, Eraser, LlrMode, SoftBlock};
use serde::{Deserialize, Serialize};

use crate::error::SimError;

/// Noise actually added on the channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// Symmetric α-stable noise with the configured α.
    Stable,
    /// Gaussian noise (α = 2) at the same equivalent SNR; reference curves.
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Orbgrand,
    Sgrand,
    Edge(Eraser),
}

/// A decoder as the harness runs it: channel, receiver LLRs and search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum DecoderKind {
    /// ORBGRAND on LLRs that treat the noise as Gaussian.
    GaussianOrbgrand,
    /// Soft-threshold EDGE (`|y| > δ` erased) on Gaussian-assumption LLRs.
    OrbgrandEdge,
    /// ORBGRAND on exact stable LLRs.
    AlphaOrbgrand,
    /// ORBGRAND on the closed-form LLR approximation.
    AlphaApproxOrbgrand,
    /// LLR-threshold EDGE (`|llr| < ε` erased) on exact stable LLRs.
    AlphaOrbgrandEdge,
    /// SGRAND on exact stable LLRs.
    AlphaSgrand,
    /// SGRAND in Gaussian noise.
    GaussianSgrand,
    /// ORBGRAND in Gaussian noise.
    GaussianNoiseOrbgrand,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 8] = [
        DecoderKind::GaussianOrbgrand,
        DecoderKind::OrbgrandEdge,
        DecoderKind::AlphaOrbgrand,
        DecoderKind::AlphaApproxOrbgrand,
        DecoderKind::AlphaOrbgrandEdge,
        DecoderKind::AlphaSgrand,
        DecoderKind::GaussianSgrand,
        DecoderKind::GaussianNoiseOrbgrand,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::GaussianOrbgrand => "gaussian-orbgrand",
            DecoderKind::OrbgrandEdge => "orbgrand-edge",
            DecoderKind::AlphaOrbgrand => "alpha-orbgrand",
            DecoderKind::AlphaApproxOrbgrand => "alpha-approx-orbgrand",
            DecoderKind::AlphaOrbgrandEdge => "alpha-orbgrand-edge",
            DecoderKind::AlphaSgrand => "alpha-sgrand",
            DecoderKind::GaussianSgrand => "gaussian-sgrand",
            DecoderKind::GaussianNoiseOrbgrand => "gaussian-noise-orbgrand",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.map(Self::name).join(", ")
    }

    pub fn channel(self) -> ChannelKind {
        match self {
            DecoderKind::GaussianSgrand | DecoderKind::GaussianNoiseOrbgrand => ChannelKind::Gaussian,
            _ => ChannelKind::Stable,
        }
    }

    pub fn llr_mode(self) -> LlrMode {
        match self {
            DecoderKind::GaussianOrbgrand | DecoderKind::OrbgrandEdge => LlrMode::GaussianAssumption,
            DecoderKind::AlphaApproxOrbgrand => LlrMode::AlphaApprox,
            // exact LLRs of a Gaussian channel are the Gaussian ones
            _ => LlrMode::AlphaExact,
        }
    }

    pub fn algorithm(self) -> Algorithm {
        match self {
            DecoderKind::GaussianOrbgrand
            | DecoderKind::AlphaOrbgrand
            | DecoderKind::AlphaApproxOrbgrand
            | DecoderKind::GaussianNoiseOrbgrand => Algorithm::Orbgrand,
            DecoderKind::OrbgrandEdge => Algorithm::Edge(Eraser::Soft),
            DecoderKind::AlphaOrbgrandEdge => Algorithm::Edge(Eraser::Llr),
            DecoderKind::AlphaSgrand | DecoderKind::GaussianSgrand => Algorithm::Sgrand,
        }
    }

    pub fn decode(self, block: &SoftBlock, code: &BinaryCode, cfg: &DecoderConfig) -> DecodeOutcome {
        match self.algorithm() {
            Algorithm::Orbgrand => orbgrand(block, code, cfg),
            Algorithm::Sgrand => sgrand(block, code, cfg),
            Algorithm::Edge(eraser) => grand_edge(block, code, cfg, eraser),
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderKind {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, SimError> {
        Self::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| SimError::UnknownDecoder {
                name: s.to_owned(),
                valid: Self::valid_names(),
            })
    }
}

impl TryFrom<String> for DecoderKind {
    type Error = SimError;

    fn try_from(s: String) -> Result<Self, SimError> {
        s.parse()
    }
}

impl From<DecoderKind> for String {
    fn from(d: DecoderKind) -> String {
        d.name().to_owned()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeFamily {
    Crc,
    Capolar,
}

/// Which code to build. For CA-Polar codes `poly` is the CRC polynomial and
/// `k` counts payload plus CRC bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub family: CodeFamily,
    pub n: usize,
    pub k: usize,
    /// Full polynomial including the leading term.
    pub poly: u64,
}

impl CodeSpec {
    pub fn crc_128_112() -> Self {
        Self {
            family: CodeFamily::Crc,
            n: 128,
            k: 112,
            poly: 0x11021,
        }
    }

    pub fn capolar_128_112() -> Self {
        Self {
            family: CodeFamily::Capolar,
            n: 128,
            k: 112,
            poly: 0xE21,
        }
    }

    pub fn build(&self) -> Result<BinaryCode, SimError> {
        Ok(match self.family {
            CodeFamily::Crc => build_crc_code(self.n, self.k, self.poly)?,
            CodeFamily::Capolar => {
                let crc_len = 63 - self.poly.max(1).leading_zeros() as usize;
                build_capolar_code(self.n, self.k, crc_len, self.poly, &nr_reliability(self.n)?)?
            }
        })
    }
}

impl Default for CodeSpec {
    fn default() -> Self {
        Self::crc_128_112()
    }
}
