//! BPSK over an additive real channel.

use grand_core::gf2::BitVector;

/// Bit 0 maps to +1, bit 1 to -1.
pub fn bpsk_map(bits: &BitVector) -> Vec<f64> {
    bits.iter().map(|b| if b { -1.0 } else { 1.0 }).collect()
}

/// Sign decision; 0.0 demaps to bit 0, matching `SoftBlock`'s hard bits.
pub fn demap(soft: &[f64]) -> BitVector {
    let mut out = BitVector::zeros(soft.len());
    for (i, &y) in soft.iter().enumerate() {
        if y < 0.0 {
            out.set(i, true);
        }
    }
    out
}
