//! Link-level Monte Carlo harness for the decoders in `grand-core`.
//!
//! [`harness`] estimates BLER and BER of a named decoder over an
//! α-stable BPSK channel at calibrated equivalent SNRs; [`figures`] produces
//! LLR-shape and rank-ordered-reliability data; [`config`] and [`output`]
//! back the `grand` binary.

pub mod channel;
pub mod cli;
pub mod config;
pub mod decoder;
mod error;
pub mod figures;
pub mod harness;
pub mod output;
pub mod stats;

pub use decoder::{CodeFamily, CodeSpec, DecoderKind};
pub use error::SimError;
pub use harness::{delta_sensitivity, run_point, sweep, BlerPoint, StopRule, SweepSpec};
