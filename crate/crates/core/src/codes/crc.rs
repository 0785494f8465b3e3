use crate::error::CodeError;

/// A CRC generator polynomial in full form: bit `i` is the coefficient of
/// `x^i`, including the leading term (`0x11021` is `x^16 + x^12 + x^5 + 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrcPolynomial {
    bits: u64,
    degree: u32,
}

impl CrcPolynomial {
    pub fn new(bits: u64) -> Result<Self, CodeError> {
        if bits <= 1 {
            return Err(CodeError::PolynomialDegree(0));
        }
        if bits & 1 == 0 {
            return Err(CodeError::ConstantTerm);
        }
        Ok(Self {
            bits,
            degree: 63 - bits.leading_zeros(),
        })
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Remainder of `m(x)·x^deg mod g(x)` where `m` is read MSB-first
    /// (the first bit is the highest-degree coefficient). The remainder is
    /// returned with the `x^{deg-1}` coefficient in the top bit.
    pub fn remainder<I: IntoIterator<Item = bool>>(&self, bits: I) -> u64 {
        let d = self.degree;
        let mask = (1u64 << d) - 1;
        let low = self.bits & mask;
        let mut reg = 0u64;
        for b in bits {
            let top = ((reg >> (d - 1)) & 1 == 1) ^ b;
            reg = (reg << 1) & mask;
            if top {
                reg ^= low;
            }
        }
        reg
    }

    /// True when `bits` (message followed by its remainder) is divisible by
    /// the generator.
    pub fn verify<I: IntoIterator<Item = bool>>(&self, bits: I) -> bool {
        self.remainder(bits) == 0
    }

    /// Remainder bits MSB-first.
    pub fn remainder_bits(&self, rem: u64) -> impl Iterator<Item = bool> {
        let d = self.degree;
        (0..d).rev().map(move |i| (rem >> i) & 1 == 1)
    }
}
