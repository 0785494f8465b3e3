//! Soft-input noise-guessing decoders for additive symmetric alpha-stable
//! noise, with the stable-law numerics and GF(2) code machinery they need.
//!
//! The crate is `no_std` and only requires `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod codes;
pub mod decoders;
pub mod error;
pub mod gf2;
pub mod stable;

pub use error::{CodeError, DecoderError, DimensionError, StableError};
