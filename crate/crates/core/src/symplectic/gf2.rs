//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are stored as `u64` words, least significant bit first. Every row
//! operation is a word-wise XOR, which keeps correctability checks on lattices
//! with a few thousand qubits in the millisecond range.

use std::fmt;

use crate::error::{check_dim, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    /// Unit vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        Self::from_indices(len, [i])
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
        debug_assert!(i < self.len);
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
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place XOR. Panics on length mismatch.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn or(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len);
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Popcount of the AND, i.e. the number of shared set bits.
    #[inline]
    pub fn and_count(&self, other: &BitVector) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// GF(2) inner product.
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD + w.trailing_zeros() as usize)
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `[start, start + len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense row-major bit matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form together with pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows; all rows must share `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            check_dim(cols, r.len())?;
        }
        Ok(BitMatrix { cols, rows })
    }

    pub fn from_bools(rows: &[Vec<bool>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(cols, rows.iter().map(|r| BitVector::from_bools(r)).collect())
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `M · v` over GF(2).
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        check_dim(self.cols, v.len())?;
        Ok(BitVector::from_bools(
            &self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>(),
        ))
    }

    /// Reduced row-echelon form. Pivots are chosen left to right, so the
    /// output is canonical for a given row space.
    pub fn row_reduce(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.reduce_in_place();
        Echelon { matrix: m, pivots }
    }

    fn reduce_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == self.rows.len() {
                break;
            }
            let Some(p) = (next..self.rows.len()).find(|&r| self.rows[r].get(col)) else {
                continue;
            };
            self.rows.swap(next, p);
            let pivot_row = self.rows[next].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().pivots.len()
    }

    /// Right kernel `{v : M v = 0}`, one basis vector per free column, with the
    /// free variable set to 1 and the other free variables set to 0.
    pub fn kernel(&self) -> Vec<BitVector> {
        let Echelon { matrix, pivots } = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (i, &p) in pivots.iter().enumerate() {
                    if matrix.rows[i].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Solves `M s = b`. Free variables are set to zero, which yields the
    /// lexicographically smallest solution in reversed bit order.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>> {
        check_dim(self.rows.len(), b.len())?;
        let mut aug = BitMatrix {
            cols: self.cols + 1,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut ext = r.concat(&BitVector::zeros(1));
                    ext.set(self.cols, b.get(i));
                    ext
                })
                .collect(),
        };
        let pivots = aug.reduce_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut s = BitVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if aug.rows[i].get(self.cols) {
                s.set(p, true);
            }
        }
        Ok(Some(s))
    }
}

pub fn gf2_rank(m: &BitMatrix) -> usize {
    m.rank()
}

pub fn gf2_solve(m: &BitMatrix, b: &BitVector) -> Result<Option<BitVector>> {
    m.solve(b)
}

pub fn gf2_kernel(m: &BitMatrix) -> Vec<BitVector> {
    m.kernel()
}

/// Incremental row space with combination tracking.
///
/// Each inserted vector is reduced against the stored basis; the basis rows
/// remember which original inputs they are sums of, so membership queries can
/// return the coefficients over the original inputs.
#[derive(Debug, Clone)]
pub struct RowSpace {
    dim: usize,
    inputs: usize,
    // (pivot column, reduced row, combination over inputs)
    basis: Vec<(usize, BitVector, BitVector)>,
    capacity: usize,
}

impl RowSpace {
    /// `capacity` bounds the number of inputs whose combinations are tracked.
    pub fn new(dim: usize, capacity: usize) -> Self {
        RowSpace {
            dim,
            inputs: 0,
            basis: Vec::new(),
            capacity,
        }
    }

    pub fn from_vectors<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a BitVector>) -> Self {
        let vectors: Vec<&BitVector> = vectors.into_iter().collect();
        let mut space = RowSpace::new(dim, vectors.len());
        for v in vectors {
            space.insert(v);
        }
        space
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &BitVector) -> (BitVector, BitVector) {
        let mut r = v.clone();
        let mut comb = BitVector::zeros(self.capacity);
        for (p, row, c) in &self.basis {
            if r.get(*p) {
                r.xor_assign(row);
                comb.xor_assign(c);
            }
        }
        (r, comb)
    }

    /// Inserts the next input vector. Returns `false` when it was dependent.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.dim);
        assert!(self.inputs < self.capacity, "RowSpace capacity exceeded");
        let idx = self.inputs;
        self.inputs += 1;
        let (r, mut comb) = self.reduce(v);
        comb.flip(idx);
        match r.first_one() {
            None => false,
            Some(p) => {
                // keep the basis fully reduced on pivot columns
                for (_, row, c) in self.basis.iter_mut() {
                    if row.get(p) {
                        row.xor_assign(&r);
                        c.xor_assign(&comb);
                    }
                }
                self.basis.push((p, r, comb));
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Coefficients over the original inputs summing to `v`, if `v` is in the span.
    pub fn decompose(&self, v: &BitVector) -> Option<BitVector> {
        let (r, comb) = self.reduce(v);
        r.is_zero().then_some(comb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        BitVector::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn identity_rank() {
        assert_eq!(gf2_rank(&BitMatrix::identity(3)), 3);
    }

    #[test]
    fn zero_rhs_is_always_solvable() {
        let m = BitMatrix::from_rows(3, vec![bv("110"), bv("011")]).unwrap();
        let s = gf2_solve(&m, &BitVector::zeros(2)).unwrap().unwrap();
        assert!(m.mul_vec(&s).unwrap().is_zero());
    }

    #[test]
    fn kernel_of_all_ones_row() {
        // enumerate all four vectors of GF(2)^2 and keep those with v0 + v1 = 0
        let m = BitMatrix::from_rows(2, vec![bv("11")]).unwrap();
        let brute: Vec<BitVector> = (1..4u8)
            .map(|b| BitVector::from_bools(&[b & 1 == 1, b & 2 == 2]))
            .filter(|v| !m.row(0).dot(v))
            .collect();
        assert_eq!(brute, vec![bv("11")]);
        assert_eq!(gf2_kernel(&m), brute);
    }

    #[test]
    fn inconsistent_system_has_no_solution() {
        let m = BitMatrix::from_rows(2, vec![bv("11"), bv("11")]).unwrap();
        assert_eq!(gf2_solve(&m, &bv("10")).unwrap(), None);
    }

    #[test]
    fn dimension_errors() {
        let m = BitMatrix::identity(3);
        assert!(m.solve(&BitVector::zeros(2)).is_err());
        assert!(m.mul_vec(&BitVector::zeros(4)).is_err());
        assert!(BitMatrix::from_rows(3, vec![bv("10")]).is_err());
    }

    #[test]
    fn words_boundary() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.slice(60, 10).ones().collect::<Vec<_>>(), vec![4]);
    }

    #[test]
    fn row_space_decomposition() {
        let vs = [bv("1100"), bv("0110"), bv("1010"), bv("0001")];
        let space = RowSpace::from_vectors(4, &vs);
        assert_eq!(space.rank(), 3);
        let target = bv("1011");
        let comb = space.decompose(&target).unwrap();
        let mut sum = BitVector::zeros(4);
        for i in comb.ones() {
            sum.xor_assign(&vs[i]);
        }
        assert_eq!(sum, target);
        assert!(!space.contains(&bv("1000")));
    }
}
