//! Dense matrices over the two-element field.
//!
//! Rows are packed into `u64` words, least significant bit first. All
//! elimination routines pick the leftmost pivot column and, within it, the
//! lowest-index row, so every basis they return is deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD)
}

/// A row vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut row = Self::zeros(len);
        row.set(i, true);
        row
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut row = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            row.set(i, b);
        }
        row
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut row = Self::zeros(len);
        for i in ones {
            row.flip(i);
        }
        row
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
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        assert_eq!(self.len, other.len, "row length mismatch");
        xor_words(&mut self.words, &other.words);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
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
                Some(wi * WORD + tz)
            })
        })
    }

    /// Lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// The row as a single machine word; `None` if it is longer than 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BitRow(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// An `rows × cols` matrix over GF(2) with word-packed rows.
///
/// Padding bits past `cols` in each row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(cols: usize, rows: &[BitRow]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has wrong length");
            m.row_words_mut(i).copy_from_slice(row.words());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parses rows written as strings of `0`/`1`. Intended for fixtures.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |i, j| match rows[i].as_bytes()[j] {
            b'0' => false,
            b'1' => true,
            other => panic!("bad matrix character {:?}", other as char),
        })
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
    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        (self.row_words(i)[j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let mask = 1u64 << (j % WORD);
        let w = &mut self.row_words_mut(i)[j / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> BitRow {
        BitRow {
            len: self.cols,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn row_iter(&self) -> impl Iterator<Item = BitRow> + '_ {
        (0..self.rows).map(|i| self.row(i))
    }

    pub fn column(&self, j: usize) -> BitRow {
        let mut col = BitRow::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                col.set(i, true);
            }
        }
        col
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        }
    }

    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        Self::from_fn(self.rows, self.cols, |i, j| self.get(row_perm[i], col_perm[j]))
    }

    /// Equal up to reordering rows and columns. Tries every column order,
    /// so keep `cols` small.
    pub fn permutation_equivalent(&self, other: &Self) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let sorted_rows = |m: &Self, perm: &[usize]| {
            let mut rows: Vec<Vec<bool>> = (0..m.rows)
                .map(|i| perm.iter().map(|&j| m.get(i, j)).collect())
                .collect();
            rows.sort();
            rows
        };
        let identity: Vec<usize> = (0..self.cols).collect();
        let target = sorted_rows(other, &identity);
        let mut perm = identity;
        loop {
            if sorted_rows(self, &perm) == target {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// `x · self` for a row vector `x` of length `rows`.
    pub fn left_mul(&self, x: &BitRow) -> Result<BitRow, Gf2Error> {
        if x.len() != self.rows {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.rows,
                found: x.len(),
            });
        }
        let mut out = BitRow::zeros(self.cols);
        for i in x.ones() {
            xor_words(&mut out.words, self.row_words(i));
        }
        Ok(out)
    }

    /// Row-echelon rank; the matrix itself is left untouched.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.eliminate(None).len()
    }

    /// Gaussian elimination in place. Returns `(pivot_row, pivot_col)` pairs;
    /// when `track` is given, every row operation is mirrored on it.
    fn eliminate(&mut self, mut track: Option<&mut Gf2Matrix>) -> Vec<(usize, usize)> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == self.rows {
                break;
            }
            let (w, bit) = (col / WORD, 1u64 << (col % WORD));
            let Some(p) = (next..self.rows).find(|&i| self.row_words(i)[w] & bit != 0) else {
                continue;
            };
            if p != next {
                self.swap_rows(p, next);
                if let Some(t) = track.as_deref_mut() {
                    t.swap_rows(p, next);
                }
            }
            for i in 0..self.rows {
                if i != next && self.row_words(i)[w] & bit != 0 {
                    self.xor_row_into(next, i);
                    if let Some(t) = track.as_deref_mut() {
                        t.xor_row_into(next, i);
                    }
                }
            }
            pivots.push((next, col));
            next += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// `row[dst] ^= row[src]`
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (lo, hi) = self.data.split_at_mut(src.max(dst) * s);
        if src < dst {
            xor_words(&mut hi[..s], &lo[src * s..src * s + s]);
        } else {
            xor_words(&mut lo[dst * s..dst * s + s], &hi[..s]);
        }
    }

    /// Basis of `{ x : x · self = 0 }`, of dimension `rows − rank`.
    pub fn left_nullspace(&self) -> Vec<BitRow> {
        let mut work = self.clone();
        let mut combo = Gf2Matrix::identity(self.rows);
        let rank = work.eliminate(Some(&mut combo)).len();
        (rank..self.rows).map(|i| combo.row(i)).collect()
    }

    /// Basis of `{ y : self · yᵀ = 0 }`, of dimension `cols − rank`.
    pub fn right_nullspace(&self) -> Vec<BitRow> {
        self.transpose().left_nullspace()
    }

    /// Finds `x` with `x · self = target`, or `None` if no such `x` exists.
    pub fn solve(&self, target: &BitRow) -> Result<Option<BitRow>, Gf2Error> {
        if target.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: target.len(),
            });
        }
        let mut work = self.clone();
        let mut combo = Gf2Matrix::identity(self.rows);
        let pivots = work.eliminate(Some(&mut combo));
        let mut residue = target.clone();
        let mut coeffs = BitRow::zeros(self.rows);
        for &(row, col) in &pivots {
            if residue.get(col) {
                xor_words(&mut residue.words, work.row_words(row));
                xor_words(&mut coeffs.words, combo.row_words(row));
            }
        }
        Ok(residue.is_zero().then_some(coeffs))
    }

    /// Reduced row-echelon basis of the row space.
    pub fn row_space_basis(&self) -> Vec<BitRow> {
        let mut work = self.clone();
        let rank = work.eliminate(None).len();
        (0..rank).map(|i| work.row(i)).collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Text form: a `rows cols` line followed by one line of `0`/`1` per row.
impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
