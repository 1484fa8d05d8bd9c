//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are stored as runs of `u64` words. All indices are zero-based; the
//! 1-based qubit labels used everywhere else are converted at the
//! stabilizer boundary.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Failure modes of the linear-algebra routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinalgError {
    /// The matrix has no inverse.
    Singular,
    /// `A X = B` has no solution.
    Infeasible,
    /// An operation that needs a square matrix got a rectangular one.
    NotSquare,
    /// Operand shapes do not line up.
    ShapeMismatch,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::Singular => f.write_str("matrix is singular over GF(2)"),
            LinalgError::Infeasible => f.write_str("linear system has no solution over GF(2)"),
            LinalgError::NotSquare => f.write_str("matrix is not square"),
            LinalgError::ShapeMismatch => f.write_str("matrix shapes do not match"),
        }
    }
}

impl core::error::Error for LinalgError {}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector of length `len` with ones exactly at `indices`.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

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
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector lengths differ");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector lengths differ");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "bit vector lengths differ");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// The sub-vector at `indices`, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(indices.len());
        for (k, &i) in indices.iter().enumerate() {
            if self.get(i) {
                out.set(k, true);
            }
        }
        out
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// A dense `rows × cols` matrix over GF(2) with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Reduced row-echelon form together with the row operations that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// The reduced matrix `R`.
    pub reduced: BitMatrix,
    /// Invertible `L` with `L · M = R`.
    pub transform: BitMatrix,
    /// Pivot column of each nonzero row of `R`, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of `0`/`1` integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &b) in row.iter().enumerate() {
                if b & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Stacks bit vectors of equal length as rows.
    pub fn from_bitvecs(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            m.set_row(r, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    fn row_slice(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) outside {}x{}",
            self.rows,
            self.cols
        );
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) outside {}x{}",
            self.rows,
            self.cols
        );
        let idx = r * self.stride + c / WORD;
        let mask = 1u64 << (c % WORD);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) outside {}x{}",
            self.rows,
            self.cols
        );
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    pub fn row(&self, r: usize) -> BitVec {
        assert!(r < self.rows, "row {r} out of range {}", self.rows);
        BitVec {
            len: self.cols,
            words: self.row_slice(r).to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert!(r < self.rows, "row {r} out of range {}", self.rows);
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.data[r * self.stride..(r + 1) * self.stride].copy_from_slice(&v.words);
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn set_column(&mut self, c: usize, v: &BitVec) {
        assert_eq!(v.len(), self.rows, "column length mismatch");
        for r in 0..self.rows {
            self.set(r, c, v.get(r));
        }
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert!(src < self.rows && dst < self.rows);
        if src == dst {
            // x + x = 0
            self.data[dst * self.stride..(dst + 1) * self.stride].fill(0);
            return;
        }
        let (s, d) = (src * self.stride, dst * self.stride);
        for k in 0..self.stride {
            let w = self.data[s + k];
            self.data[d + k] ^= w;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_slice(r).iter().all(|&w| w == 0)
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| !self.get(r, c))
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Matrix product; panics if the inner dimensions differ.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let (o, s) = (r * out.stride, k * other.stride);
                    for w in 0..out.stride {
                        out.data[o + w] ^= other.data[s + w];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity: u32 = self
                .row_slice(r)
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if parity % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &BitMatrix) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "cannot add {}x{} and {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (k, &r) in rows.iter().enumerate() {
            out.data[k * out.stride..(k + 1) * out.stride].copy_from_slice(self.row_slice(r));
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, k, true);
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        self.select_rows(rows).select_cols(cols)
    }

    /// `(self | other)`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            for c in 0..other.cols {
                if other.get(r, c) {
                    out.set(r, self.cols + c, true);
                }
            }
        }
        out
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        }
    }

    pub fn diagonal(&self) -> BitVec {
        let n = self.rows.min(self.cols);
        BitVec::from_indices(n, (0..n).filter(|&i| self.get(i, i)))
    }

    /// Reduced row-echelon form with the recorded row operations.
    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let mut transform = BitMatrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| reduced.get(r, c)) else {
                continue;
            };
            reduced.swap_rows(p, next);
            transform.swap_rows(p, next);
            for r in 0..self.rows {
                if r != next && reduced.get(r, c) {
                    reduced.add_row(next, r);
                    transform.add_row(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        Rref {
            reduced,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        // elimination without tracking the transform
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(p, rank);
            for r in rank + 1..self.rows {
                if m.get(r, c) {
                    m.add_row(rank, r);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn invert(&self) -> Result<BitMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let rref = self.rref();
        if rref.rank() < self.rows {
            return Err(LinalgError::Singular);
        }
        Ok(rref.transform)
    }

    /// Some `X` with `self · X = rhs`.
    pub fn solve(&self, rhs: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::ShapeMismatch);
        }
        let rref = self.rref();
        let lb = rref.transform.mul(rhs);
        for r in rref.rank()..self.rows {
            if !lb.row_is_zero(r) {
                return Err(LinalgError::Infeasible);
            }
        }
        let mut x = BitMatrix::zeros(self.cols, rhs.cols);
        for (i, &p) in rref.pivots.iter().enumerate() {
            x.data[p * x.stride..(p + 1) * x.stride].copy_from_slice(lb.row_slice(i));
        }
        Ok(x)
    }

    /// Coefficients `c` with `cᵀ · self = target`, i.e. `target` as a
    /// combination of rows.
    pub fn row_combination(&self, target: &BitVec) -> Option<BitVec> {
        let rhs = BitMatrix::from_bitvecs(target.len(), core::slice::from_ref(target)).transpose();
        self.transpose().solve(&rhs).ok().map(|x| x.column(0))
    }

    pub fn in_row_space(&self, v: &BitVec) -> bool {
        self.row_combination(v).is_some()
    }

    /// Whether both matrices span the same row space.
    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let a = self.rref();
        let b = other.rref();
        a.pivots == b.pivots && (0..a.rank()).all(|r| a.reduced.row_slice(r) == b.reduced.row_slice(r))
    }

    /// Rows rendered as strings of `0`/`1`.
    pub fn row_strings(&self) -> Vec<alloc::string::String> {
        use alloc::string::ToString;
        (0..self.rows).map(|r| self.row(r).to_string()).collect()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(3, 4).rank(), 0);
        let m = BitMatrix::from_rows(&[[1, 0, 1], [0, 1, 0], [1, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_matches_row_space_size() {
        // enumerate all 2^3 row combinations; the row space has 2^rank members
        let m = BitMatrix::from_rows(&[[1, 0, 1], [0, 1, 0], [1, 1, 1]]);
        let mut span: Vec<BitVec> = Vec::new();
        for mask in 0u32..8 {
            let mut v = BitVec::zeros(3);
            for r in 0..3 {
                if mask >> r & 1 == 1 {
                    v.xor_assign(&m.row(r));
                }
            }
            if !span.contains(&v) {
                span.push(v);
            }
        }
        assert_eq!(span.len(), 1 << m.rank());
    }

    #[test]
    fn rref_identity_and_duplicates() {
        let id = BitMatrix::identity(3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.transform, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let dup = BitMatrix::from_rows(&[[1, 1], [1, 1]]);
        let r = dup.rref();
        assert_eq!(r.reduced, BitMatrix::from_rows(&[[1, 1], [0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.transform.mul(&dup), r.reduced);
    }

    #[test]
    fn invert_examples() {
        let id = BitMatrix::identity(3);
        assert_eq!(id.invert().unwrap(), id);
        let swap = BitMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(swap.invert().unwrap(), swap);
        let upper = BitMatrix::from_rows(&[[1, 1], [0, 1]]);
        let inv = upper.invert().unwrap();
        assert_eq!(inv, upper);
        assert_eq!(upper.mul(&inv), BitMatrix::identity(2));
        assert_eq!(
            BitMatrix::from_rows(&[[1, 1], [1, 1]]).invert(),
            Err(LinalgError::Singular)
        );
        assert_eq!(BitMatrix::zeros(2, 3).invert(), Err(LinalgError::NotSquare));
    }

    #[test]
    fn solve_examples() {
        let b = BitMatrix::from_rows(&[[1, 0], [1, 1], [0, 1]]);
        assert_eq!(BitMatrix::identity(3).solve(&b).unwrap(), b);

        let zero = BitMatrix::zeros(2, 2);
        let rhs = BitMatrix::from_rows(&[[1], [0]]);
        assert_eq!(zero.solve(&rhs), Err(LinalgError::Infeasible));

        let a = BitMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]);
        let rhs = BitMatrix::from_rows(&[[1], [1]]);
        let x = a.solve(&rhs).unwrap();
        assert_eq!(a.mul(&x), rhs);
        // brute force: exactly the columns with both parities odd solve it
        let solutions: Vec<u8> = (0u8..8)
            .filter(|&m| {
                let x = BitMatrix::from_fn(3, 1, |r, _| m >> r & 1 == 1);
                a.mul(&x) == rhs
            })
            .collect();
        assert_eq!(solutions.len(), 2);
        let found = (0..3).fold(0u8, |acc, r| acc | (x.get(r, 0) as u8) << r);
        assert!(solutions.contains(&found));
    }

    #[test]
    fn row_space_comparison() {
        let a = BitMatrix::from_rows(&[[1, 1, 0], [0, 1, 1]]);
        let b = BitMatrix::from_rows(&[[1, 0, 1], [1, 1, 0]]);
        let c = BitMatrix::from_rows(&[[1, 0, 0], [0, 1, 1]]);
        assert!(a.same_row_space(&b));
        assert!(!a.same_row_space(&c));
    }

    #[test]
    fn wide_matrices_cross_word_boundary() {
        let n = 130;
        let m = BitMatrix::from_fn(n, n, |r, c| r == c || c == (r + 67) % n);
        let inv = m.invert();
        if let Ok(inv) = inv {
            assert_eq!(m.mul(&inv), BitMatrix::identity(n));
        }
        assert_eq!(m.transpose().transpose(), m);
    }
}
