//! Dense matrices over the Gaussian integers.
//!
//! Only used as an independent oracle: Weyl operators and Clifford gates are
//! written out as explicit 2^n x 2^n matrices and conjugation is checked by
//! plain matrix multiplication. Gates with a 1/sqrt(2) prefactor are stored
//! unscaled; conjugation `U P U^dagger` then carries a factor 2 which the
//! caller divides out.

use num_complex::Complex;

pub type Gauss = Complex<i64>;

pub const ONE: Gauss = Complex { re: 1, im: 0 };
pub const I: Gauss = Complex { re: 0, im: 1 };
pub const ZERO: Gauss = Complex { re: 0, im: 0 };

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Gauss>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_real(rows: &[&[i64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), dim);
            for (j, &v) in r.iter().enumerate() {
                m.data[i * dim + j] = Complex::new(v, 0);
            }
        }
        m
    }

    pub fn from_entries(rows: &[&[Gauss]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), dim);
            m.data[i * dim..(i + 1) * dim].copy_from_slice(r);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Gauss {
        self.data[i * self.dim + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    /// Kronecker product `self (x) other`; `self` is the more significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut out = Self::zeros(d);
        for i1 in 0..a {
            for j1 in 0..a {
                let x = self.data[i1 * a + j1];
                if x == ZERO {
                    continue;
                }
                for i2 in 0..b {
                    for j2 in 0..b {
                        out.data[(i1 * b + i2) * d + j1 * b + j2] = x * other.data[i2 * b + j2];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: Gauss) -> Self {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * c).collect(),
        }
    }

    /// Exact division of every entry by a positive integer; `None` if some
    /// entry is not divisible.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            if v.re % k != 0 || v.im % k != 0 {
                return None;
            }
            data.push(Complex::new(v.re / k, v.im / k));
        }
        Some(DenseMatrix {
            dim: self.dim,
            data,
        })
    }

    /// `U P U^dagger / norm`, where `norm` is `U U^dagger` as a scalar.
    pub fn conjugate(&self, p: &Self, norm: i64) -> Option<Self> {
        self.mul(p).mul(&self.adjoint()).div_exact(norm)
    }

    /// Embeds a single-qubit operator on `qubit` (0-based, leftmost factor
    /// first) into `n` qubits.
    pub fn on_qubit(n: usize, qubit: usize, op: &Self) -> Self {
        assert_eq!(op.dim, 2);
        let mut out = Self::identity(1);
        for j in 0..n {
            let factor = if j == qubit { op.clone() } else { Self::identity(2) };
            out = out.kron(&factor);
        }
        out
    }
}

pub fn pauli_x() -> DenseMatrix {
    DenseMatrix::from_real(&[&[0, 1], &[1, 0]])
}

pub fn pauli_z() -> DenseMatrix {
    DenseMatrix::from_real(&[&[1, 0], &[0, -1]])
}

pub fn pauli_y() -> DenseMatrix {
    DenseMatrix::from_entries(&[&[ZERO, -I], &[I, ZERO]])
}

/// `sqrt(2) H`; conjugation norm 2.
pub fn hadamard_unscaled() -> DenseMatrix {
    DenseMatrix::from_real(&[&[1, 1], &[1, -1]])
}

pub fn phase_s() -> DenseMatrix {
    DenseMatrix::from_entries(&[&[ONE, ZERO], &[ZERO, I]])
}

/// Controlled-Z on qubits `a`, `b` of an `n`-qubit register.
pub fn controlled_z(n: usize, a: usize, b: usize) -> DenseMatrix {
    let d = 1usize << n;
    let mut m = DenseMatrix::identity(d);
    for idx in 0..d {
        let bit = |q: usize| (idx >> (n - 1 - q)) & 1;
        if bit(a) == 1 && bit(b) == 1 {
            m.data[idx * d + idx] = -ONE;
        }
    }
    m
}
