//! Systematic CRC codes and CRC-aided polar codes over GF(2).

mod crc;
mod polar;

pub use crc::CrcPolynomial;
pub use polar::{nr_reliability, polar_transform, PolarLayout, NR_RELIABILITY_128};

use alloc::vec::Vec;

use crate::error::CodeError;
use crate::gf2::{BitMatrix, BitVector};

/// Parity-check rows are packed into one `u128` per column.
pub const MAX_CHECKS: usize = 128;

/// Code family with the data its membership test needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeKind {
    Crc { poly: CrcPolynomial },
    CaPolar { crc: CrcPolynomial, layout: PolarLayout },
}

/// An `[n, k]` binary linear code.
///
/// For CA-Polar codes `k` counts payload plus CRC bits (the nominal
/// dimension used for the rate) while the encoder takes `k - ℓ` payload
/// bits; the linear code actually spanned has dimension `k - ℓ`, so the
/// parity-check matrix has `n - k + ℓ` rows.
#[derive(Debug, Clone)]
pub struct BinaryCode {
    n: usize,
    k: usize,
    generator: BitMatrix,
    parity_check: BitMatrix,
    columns: Vec<u128>,
    kind: CodeKind,
}

/// Systematic `[n, k]` CRC code: codeword `= [m | m·x^{n-k} mod g]`.
pub fn build_crc_code(n: usize, k: usize, poly: u64) -> Result<BinaryCode, CodeError> {
    if k == 0 || k >= n {
        return Err(CodeError::Dimensions { n, k });
    }
    let g = CrcPolynomial::new(poly)?;
    if g.degree() as usize != n - k {
        return Err(CodeError::DegreeMismatch {
            degree: g.degree(),
            redundancy: n - k,
        });
    }
    BinaryCode::assemble(n, k, k, CodeKind::Crc { poly: g })
}

/// CA-Polar code with `k - crc_len` payload bits and a `crc_len`-bit CRC
/// (zero initial register) placed on the `k` most reliable positions in
/// ascending index order.
pub fn build_capolar_code(
    n: usize,
    k: usize,
    crc_len: usize,
    crc_poly: u64,
    reliability: &[usize],
) -> Result<BinaryCode, CodeError> {
    let crc = CrcPolynomial::new(crc_poly)?;
    if crc.degree() as usize != crc_len {
        return Err(CodeError::DegreeMismatch {
            degree: crc.degree(),
            redundancy: crc_len,
        });
    }
    if k <= crc_len || k > n {
        return Err(CodeError::Dimensions { n, k });
    }
    let layout = PolarLayout::new(n, k, reliability)?;
    BinaryCode::assemble(n, k, k - crc_len, CodeKind::CaPolar { crc, layout })
}

impl BinaryCode {
    fn assemble(n: usize, k: usize, dim: usize, kind: CodeKind) -> Result<Self, CodeError> {
        let checks = n - dim;
        if checks > MAX_CHECKS {
            return Err(CodeError::TooManyChecks(checks));
        }
        let mut code = BinaryCode {
            n,
            k,
            generator: BitMatrix::zeros(dim, n),
            parity_check: BitMatrix::zeros(0, n),
            columns: Vec::new(),
            kind,
        };
        for i in 0..dim {
            let mut e = BitVector::zeros(dim);
            e.set(i, true);
            let row = code.encode_unchecked(&e);
            code.generator.row_mut(i).copy_from_slice(row.words());
        }
        if code.generator.rank() != dim {
            return Err(CodeError::RankDeficient("generator"));
        }
        let h = code.generator.null_space();
        if h.rows() != checks || h.rank() != checks || !code.generator.mul_transpose(&h).is_zero() {
            return Err(CodeError::RankDeficient("parity check"));
        }
        code.columns = (0..n)
            .map(|c| (0..checks).fold(0u128, |acc, r| acc | ((h.get(r, c) as u128) << r)))
            .collect();
        code.parity_check = h;
        Ok(code)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nominal dimension from the `[n, k]` label.
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Bits accepted by [`BinaryCode::encode`].
    #[inline]
    pub fn message_len(&self) -> usize {
        self.generator.rows()
    }

    /// Number of parity-check rows, `n - message_len`.
    #[inline]
    pub fn checks(&self) -> usize {
        self.parity_check.rows()
    }

    /// Nominal rate `k / n`.
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn kind(&self) -> &CodeKind {
        &self.kind
    }

    /// Column `i` of the parity-check matrix, row `r` in bit `r`.
    #[inline]
    pub fn column(&self, i: usize) -> u128 {
        self.columns[i]
    }

    #[inline]
    pub fn columns(&self) -> &[u128] {
        &self.columns
    }

    /// `H·word`, packed like [`BinaryCode::column`].
    #[inline]
    pub fn syndrome(&self, word: &BitVector) -> u128 {
        debug_assert_eq!(word.len(), self.n);
        word.ones().fold(0u128, |acc, i| acc ^ self.columns[i])
    }

    pub fn encode(&self, message: &BitVector) -> Result<BitVector, CodeError> {
        if message.len() != self.message_len() {
            return Err(CodeError::Length {
                expected: self.message_len(),
                found: message.len(),
            });
        }
        Ok(self.encode_unchecked(message))
    }

    fn encode_unchecked(&self, message: &BitVector) -> BitVector {
        match &self.kind {
            CodeKind::Crc { poly } => {
                let rem = poly.remainder(message.iter());
                let mut word = BitVector::zeros(self.n);
                for i in message.ones() {
                    word.set(i, true);
                }
                for (j, b) in poly.remainder_bits(rem).enumerate() {
                    word.set(message.len() + j, b);
                }
                word
            }
            CodeKind::CaPolar { crc, layout } => {
                let rem = crc.remainder(message.iter());
                let mut u = BitVector::zeros(self.n);
                let bits = message.iter().chain(crc.remainder_bits(rem));
                for (&pos, b) in layout.info.iter().zip(bits) {
                    u.set(pos, b);
                }
                polar_transform(&mut u);
                u
            }
        }
    }

    /// Codebook membership: zero syndrome for CRC codes; zero frozen bits
    /// and a passing CRC after the inverse transform for CA-Polar codes.
    pub fn is_codeword(&self, word: &BitVector) -> bool {
        if word.len() != self.n {
            return false;
        }
        match &self.kind {
            CodeKind::Crc { .. } => self.satisfies_parity(word),
            CodeKind::CaPolar { crc, layout } => {
                let mut u = word.clone();
                polar_transform(&mut u);
                let frozen_clear = u
                    .words()
                    .iter()
                    .zip(layout.frozen_mask.words())
                    .all(|(a, m)| a & m == 0);
                frozen_clear && crc.verify(layout.info.iter().map(|&p| u.get(p)))
            }
        }
    }

    /// `H·word = 0` with the materialized parity-check matrix.
    #[inline]
    pub fn satisfies_parity(&self, word: &BitVector) -> bool {
        self.syndrome(word) == 0
    }

    /// Message bits carried by a codeword (the inverse of `encode` on the
    /// codebook).
    pub fn extract_message(&self, word: &BitVector) -> BitVector {
        let m = self.message_len();
        match &self.kind {
            CodeKind::Crc { .. } => word.slice(0, m),
            CodeKind::CaPolar { layout, .. } => {
                let mut u = word.clone();
                polar_transform(&mut u);
                let mut out = BitVector::zeros(m);
                for (i, &p) in layout.info.iter().take(m).enumerate() {
                    out.set(i, u.get(p));
                }
                out
            }
        }
    }
}

/// `[128, 112]` CRC code with `x^16 + x^12 + x^5 + 1`.
pub fn crc_128_112() -> BinaryCode {
    build_crc_code(128, 112, 0x11021).expect("valid construction")
}

/// `[128, 112]` CA-Polar code with the 5G 11-bit CRC `x^11 + x^10 + x^9 + x^5 + 1`.
pub fn capolar_128_112() -> BinaryCode {
    build_capolar_code(128, 112, 11, 0xE21, &nr_reliability(128).expect("valid length")).expect("valid construction")
}
