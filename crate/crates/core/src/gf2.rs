//! Bit-packed vectors and matrices over GF(2).
//!
//! Bit `i` of a vector lives in word `i / 64` at bit position `i % 64`.
//! Matrix rows are stored contiguously with a fixed word stride, so a row is
//! just a `&[u64]` slice and row operations are word-wide XORs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::DimensionError;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A fixed-length bit vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from a slice of 0/1 values; any nonzero byte is a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    /// Wraps raw words. Bits at or beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of positions where `self` and `other` differ.
    pub fn hamming_distance(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Parity of the bitwise AND with `other`, i.e. the GF(2) inner product.
    #[inline]
    pub fn dot(&self, other: &[u64]) -> bool {
        dot_words(&self.words, other)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// Copies `count` bits starting at `start` into a new vector.
    pub fn slice(&self, start: usize, count: usize) -> BitVector {
        assert!(start + count <= self.len);
        let mut out = BitVector::zeros(count);
        for i in 0..count {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, "]")
    }
}

#[inline]
pub(crate) fn dot_words(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones()) & 1 == 1
}

#[inline]
pub(crate) fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (a, b) in dst.iter_mut().zip(src) {
        *a ^= b;
    }
}

/// Dense GF(2) matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks equal-length vectors as rows.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
            m.row_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Parses rows given as 0/1 byte slices; convenient in tests.
    pub fn from_bit_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let vecs: Vec<BitVector> = rows.iter().map(|r| BitVector::from_bits(r.as_ref())).collect();
        Self::from_rows(cols, &vecs)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_vector(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row(i).to_vec())
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.stride + (c >> 6)] >> (c & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let idx = r * self.stride + (c >> 6);
        let mask = 1u64 << (c & 63);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.data.split_at_mut(hi * self.stride);
        head[lo * self.stride..(lo + 1) * self.stride].swap_with_slice(&mut tail[..self.stride]);
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (d, sr) = if dst < src {
            let (head, tail) = self.data.split_at_mut(src * s);
            (&mut head[dst * s..(dst + 1) * s], &tail[..s])
        } else {
            let (head, tail) = self.data.split_at_mut(dst * s);
            (&mut tail[..s], &head[src * s..(src + 1) * s])
        };
        xor_words(d, sr);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_vector(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix-vector product `A·x`.
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if dot_words(self.row(r), x.words()) {
                out.set(r, true);
            }
        }
        out
    }

    /// Row-vector product `xᵀ·A` (a combination of rows).
    pub fn left_mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.rows, "vector length must equal row count");
        let mut out = BitVector::zeros(self.cols);
        for r in x.ones() {
            xor_words(out.words_mut(), self.row(r));
        }
        out
    }

    /// `A·Bᵀ` where both operands have the same column count.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = BitMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                if dot_words(self.row(i), other.row(j)) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Reduced row echelon form in place; returns pivot columns in row order.
    pub fn reduce(&mut self) -> Vec<usize> {
        self.reduce_columns(self.cols)
    }

    /// Gauss-Jordan elimination restricted to pivots among the first
    /// `pivot_cols` columns. Columns beyond that are carried along (augmented
    /// part) but never chosen as pivots.
    pub fn reduce_columns(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols.min(self.cols) {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.add_row(r, row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    /// Basis of `{x : A·x = 0}` as the rows of a matrix.
    pub fn null_space(&self) -> BitMatrix {
        let mut red = self.clone();
        let pivots = red.reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = BitMatrix::zeros(free.len(), self.cols);
        for (bi, &f) in free.iter().enumerate() {
            basis.set(bi, f, true);
            for (ri, &p) in pivots.iter().enumerate() {
                if red.get(ri, f) {
                    basis.set(bi, p, true);
                }
            }
        }
        basis
    }

    /// Keeps the columns listed in `cols`, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row_vector(r))?;
        }
        Ok(())
    }
}

/// Outcome of solving `A·x = b` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Solution {
    /// Full column rank and consistent; the assignment satisfies every row.
    Unique(BitVector),
    /// Some row of the reduced system reads `0 = 1`.
    Inconsistent,
    /// Consistent, with `free_rank` free variables.
    Underdetermined { free_rank: usize },
}

impl Gf2Solution {
    pub fn assignment(&self) -> Option<&BitVector> {
        match self {
            Gf2Solution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

/// Solves `A·x = b` by row-reducing the augmented matrix `[A | b]`.
pub fn gf2_solve(a: &BitMatrix, b: &BitVector) -> Result<Gf2Solution, DimensionError> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(DimensionError::Empty);
    }
    if b.len() != a.rows() {
        return Err(DimensionError::Mismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let cols = a.cols();
    let mut aug = BitMatrix::zeros(a.rows(), cols + 1);
    for r in 0..a.rows() {
        aug.row_mut(r)[..a.stride].copy_from_slice(a.row(r));
        if b.get(r) {
            aug.set(r, cols, true);
        }
    }
    let pivots = aug.reduce_columns(cols);
    let rank = pivots.len();
    if (rank..aug.rows()).any(|r| aug.get(r, cols)) {
        return Ok(Gf2Solution::Inconsistent);
    }
    if rank < cols {
        return Ok(Gf2Solution::Underdetermined { free_rank: cols - rank });
    }
    let mut x = BitVector::zeros(cols);
    for (r, &p) in pivots.iter().enumerate() {
        if aug.get(r, cols) {
            x.set(p, true);
        }
    }
    Ok(Gf2Solution::Unique(x))
}
