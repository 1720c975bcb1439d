//! Linear algebra over Z/2 and Z/4 for Weyl indices and symplectic matrices.
//!
//! Vectors of length 2n are laid out as `(p_1..p_n | q_1..q_n)`: bit `j < n`
//! is the Z-exponent of qubit `j`, bit `n + j` is its X-exponent. Bit vectors
//! and bit-matrix rows are packed into a single `u64`, so dimensions are
//! capped at 64.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vector length / matrix dimension.
pub const MAX_DIM: usize = 64;

#[inline]
fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A vector over GF(2) of length at most 64.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: u8,
    bits: u64,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_DIM, "bit vector length {len} exceeds {MAX_DIM}");
        BitVec {
            len: len as u8,
            bits: 0,
        }
    }

    /// Builds a vector from packed bits; bits above `len` are discarded.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_DIM, "bit vector length {len} exceeds {MAX_DIM}");
        BitVec {
            len: len as u8,
            bits: bits & low_mask(len),
        }
    }

    pub fn unit(len: usize, j: usize) -> Self {
        assert!(j < len, "unit index {j} out of range for length {len}");
        Self::from_bits(len, 1u64 << j)
    }

    pub fn from_slice(entries: &[u8]) -> Self {
        let mut v = Self::zeros(entries.len());
        for (j, &e) in entries.iter().enumerate() {
            v.set(j, e & 1 == 1);
        }
        v
    }

    /// Builds the length-2n vector with the given p-block and q-block.
    pub fn from_pq(p: &[u8], q: &[u8]) -> Self {
        assert_eq!(p.len(), q.len());
        let mut entries = p.to_vec();
        entries.extend_from_slice(q);
        Self::from_slice(&entries)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of qubits `n` for a length-2n vector.
    #[inline]
    pub fn qubits(&self) -> usize {
        self.len as usize / 2
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        assert!(j < self.len(), "index {j} out of range");
        (self.bits >> j) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, j: usize, value: bool) {
        assert!(j < self.len(), "index {j} out of range");
        if value {
            self.bits |= 1 << j;
        } else {
            self.bits &= !(1 << j);
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(BitVec {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(BitVec {
            len: self.len,
            bits: self.bits & other.bits,
        })
    }

    /// Standard dot product over GF(2).
    pub fn dot(&self, other: &Self) -> Result<u8> {
        self.check_len(other)?;
        Ok(((self.bits & other.bits).count_ones() & 1) as u8)
    }

    /// Indices of the set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(j)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.len()).map(|j| self.get(j) as u8).collect()
    }

    /// Iterates over all 2^len vectors of the given length.
    pub fn all(len: usize) -> impl Iterator<Item = BitVec> {
        assert!(len < 64);
        (0..(1u64 << len)).map(move |b| BitVec::from_bits(len, b))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let n = self.qubits();
        for j in 0..self.len() {
            if j == n && self.len().is_multiple_of(2) {
                write!(f, "|")?;
            }
            write!(f, "{}", self.get(j) as u8)?;
        }
        write!(f, ")")
    }
}

/// A vector with entries in Z/4.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z4Vec {
    entries: Vec<u8>,
}

impl Z4Vec {
    pub fn new(entries: Vec<u8>) -> Self {
        Z4Vec {
            entries: entries.into_iter().map(|e| e & 3).collect(),
        }
    }

    pub fn zeros(len: usize) -> Self {
        Z4Vec {
            entries: vec![0; len],
        }
    }

    /// Canonical lift of a bit vector: entries 0/1.
    pub fn lift(v: &BitVec) -> Self {
        Z4Vec {
            entries: v.to_vec(),
        }
    }

    /// Reduction mod 2.
    pub fn reduce(&self) -> BitVec {
        let mut v = BitVec::zeros(self.entries.len());
        for (j, &e) in self.entries.iter().enumerate() {
            v.set(j, e & 1 == 1);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, j: usize) -> u8 {
        self.entries[j]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Z4Vec {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| (a + b) & 3)
                .collect(),
        })
    }

    /// `self + 2 * v` for a bit vector `v`.
    pub fn add_twice(&self, v: &BitVec) -> Result<Self> {
        if self.len() != v.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: v.len(),
            });
        }
        Ok(Z4Vec {
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(j, &a)| (a + 2 * v.get(j) as u8) & 3)
                .collect(),
        })
    }
}

/// Symplectic form `p.q' + q.p'` reduced mod 2.
pub fn symp_form_z2(x: &BitVec, y: &BitVec) -> Result<u8> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if !x.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!(
            "symplectic form needs even length, got {}",
            x.len()
        )));
    }
    Ok(symp_form_bits(x.qubits(), x.bits(), y.bits()))
}

/// Symplectic form on raw packed bits for `n` qubits.
#[inline]
pub fn symp_form_bits(n: usize, x: u64, y: u64) -> u8 {
    let pm = low_mask(n);
    let t = ((x & pm) & (y >> n)) ^ ((x >> n) & (y & pm));
    (t.count_ones() & 1) as u8
}

/// `p.q' - q.p'` mod 4 on 0/1 vectors given as packed bits.
#[inline]
pub fn symp_form_z4_bits(n: usize, x: u64, y: u64) -> u8 {
    let pm = low_mask(n);
    let plus = ((x & pm) & (y >> n)).count_ones();
    let minus = ((x >> n) & (y & pm)).count_ones();
    ((plus + 4 * 64 - minus) & 3) as u8
}

/// Symplectic form `p.q' - q.p'` mod 4.
pub fn symp_form_z4(x: &Z4Vec, y: &Z4Vec) -> Result<u8> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if !x.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!(
            "symplectic form needs even length, got {}",
            x.len()
        )));
    }
    let n = x.len() / 2;
    let mut acc: i32 = 0;
    for j in 0..n {
        acc += x.get(j) as i32 * y.get(n + j) as i32;
        acc -= x.get(n + j) as i32 * y.get(j) as i32;
    }
    Ok(acc.rem_euclid(4) as u8)
}

/// A dense bit matrix stored row-major, one `u64` per row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl BitMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows <= MAX_DIM && cols <= MAX_DIM);
        BitMat {
            rows,
            cols,
            data: vec![0; rows],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i] = 1 << i;
        }
        m
    }

    /// The Gram matrix J of the symplectic form in dimension 2n: it swaps the
    /// p-block and the q-block.
    pub fn symplectic_j(n: usize) -> Self {
        let mut m = Self::zeros(2 * n, 2 * n);
        for i in 0..n {
            m.set(i, n + i, true);
            m.set(n + i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<u64>) -> Self {
        assert!(rows.len() <= MAX_DIM && cols <= MAX_DIM);
        let mask = low_mask(cols);
        BitMat {
            rows: rows.len(),
            cols,
            data: rows.into_iter().map(|r| r & mask).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_entries(entries: &[&[u8]]) -> Self {
        let cols = entries.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(entries.len(), cols);
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &e) in row.iter().enumerate() {
                m.set(i, j, e & 1 == 1);
            }
        }
        m
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
    pub fn row_bits(&self, i: usize) -> u64 {
        self.data[i]
    }

    pub fn row_words(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        (self.data[i] >> j) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        if value {
            self.data[i] |= 1 << j;
        } else {
            self.data[i] &= !(1 << j);
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> BitVec {
        let mut bits = 0u64;
        for i in 0..self.rows {
            bits |= ((self.data[i] >> j) & 1) << i;
        }
        BitVec::from_bits(self.rows, bits)
    }

    /// Column `j` as packed bits, without bounds bookkeeping.
    #[inline]
    pub fn column_bits(&self, j: usize) -> u64 {
        let mut bits = 0u64;
        for (i, r) in self.data.iter().enumerate() {
            bits |= ((r >> j) & 1) << i;
        }
        bits
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            t.data[j] = self.column_bits(j);
        }
        t
    }

    /// `A x` on packed bits.
    #[inline]
    pub fn apply_bits(&self, x: u64) -> u64 {
        let mut out = 0u64;
        for (i, r) in self.data.iter().enumerate() {
            out |= (((r & x).count_ones() & 1) as u64) << i;
        }
        out
    }

    pub fn mat_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok(BitVec::from_bits(self.rows, self.apply_bits(x.bits())))
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = 0u64;
            let mut r = self.data[i];
            while r != 0 {
                let k = r.trailing_zeros() as usize;
                acc ^= other.data[k];
                r &= r - 1;
            }
            out.data[i] = acc;
        }
        Ok(out)
    }

    /// Inverse by Gauss-Jordan elimination over GF(2).
    pub fn mat_inv(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut b = Self::identity(n).data;
        for col in 0..n {
            let pivot = (col..n).find(|&r| (a[r] >> col) & 1 == 1).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            for r in 0..n {
                if r != col && (a[r] >> col) & 1 == 1 {
                    a[r] ^= a[col];
                    b[r] ^= b[col];
                }
            }
        }
        Ok(BitMat {
            rows: n,
            cols: n,
            data: b,
        })
    }

    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if let Some(p) = (rank..self.rows).find(|&r| (a[r] >> col) & 1 == 1) {
                a.swap(rank, p);
                for r in 0..self.rows {
                    if r != rank && (a[r] >> col) & 1 == 1 {
                        a[r] ^= a[rank];
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.data.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
        }
        write!(f, "]")
    }
}

/// Solves `A x = b` over GF(2), returning the lexicographically smallest
/// solution (smallest as a bit vector read from index 0 upward, i.e. free
/// variables set to zero), or `None` when the system is inconsistent.
pub fn solve_gf2(a: &BitMat, b: &BitVec) -> Result<Option<BitVec>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system with {} rows and right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let rows = a.rows();
    let cols = a.cols();
    // Augmented rows: bits 0..cols are coefficients, bit `cols` is the rhs.
    assert!(cols < 64);
    let mut m: Vec<u64> = (0..rows)
        .map(|i| a.row_bits(i) | ((b.get(i) as u64) << cols))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if let Some(p) = (r..rows).find(|&i| (m[i] >> col) & 1 == 1) {
            m.swap(r, p);
            for i in 0..rows {
                if i != r && (m[i] >> col) & 1 == 1 {
                    m[i] ^= m[r];
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    if m[r..].iter().any(|&row| (row >> cols) & 1 == 1) {
        return Ok(None);
    }
    let mut x = BitVec::zeros(cols);
    for (i, &col) in pivots.iter().enumerate() {
        x.set(col, (m[i] >> cols) & 1 == 1);
    }
    Ok(Some(x))
}

/// A square matrix with entries in Z/4, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z4Mat {
    dim: usize,
    entries: Vec<u8>,
}

impl Z4Mat {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Z4Mat { dim, entries }
    }

    pub fn from_columns(columns: &[Z4Vec]) -> Self {
        let dim = columns.len();
        let mut entries = vec![0; dim * dim];
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), dim);
            for i in 0..dim {
                entries[i * dim + j] = c.get(i);
            }
        }
        Z4Mat { dim, entries }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim);
            entries.extend(r.iter().map(|e| e & 3));
        }
        Z4Mat { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.dim + j]
    }

    pub fn column(&self, j: usize) -> Z4Vec {
        Z4Vec::new((0..self.dim).map(|i| self.get(i, j)).collect())
    }

    pub fn reduce(&self) -> BitMat {
        let mut m = BitMat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(i, j, self.get(i, j) & 1 == 1);
            }
        }
        m
    }

    /// Checks `A^T J A = J` mod 4, i.e. `[a_h, a_j] = J_{hj}` for all column pairs.
    pub fn is_symplectic(&self) -> bool {
        if !self.dim.is_multiple_of(2) {
            return false;
        }
        let n = self.dim / 2;
        let cols: Vec<Z4Vec> = (0..self.dim).map(|j| self.column(j)).collect();
        for h in 0..self.dim {
            for j in 0..self.dim {
                let want: u8 = if h < n && j == h + n {
                    1
                } else if h >= n && j + n == h {
                    3
                } else {
                    0
                };
                if symp_form_z4(&cols[h], &cols[j]).unwrap() != want {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for Z4Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
