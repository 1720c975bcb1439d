//! The symplectic group Sp(2n,2): membership, transvection generators,
//! order, enumeration for small n, and the mod-4 lift of a symplectic matrix.

use std::fmt;

use crate::group::{GroupElement, GroupEnumeration, DEFAULT_ELEMENT_BUDGET};
use crate::error::{Error, Result};
use crate::linalg2::{solve_gf2, symp_form_bits, symp_form_z4, BitMat, BitVec, Z4Mat, Z4Vec};

/// Largest qubit count for packed symplectic and Clifford elements
/// (`4n² + 2n ≤ 128`).
pub const MAX_QUBITS: usize = 5;

/// A `2n x 2n` symplectic matrix over GF(2), stored by columns.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SympMatrix {
    n: u8,
    cols: [u16; 2 * MAX_QUBITS],
}

impl SympMatrix {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n), "qubit count {n} out of range");
        let mut cols = [0u16; 2 * MAX_QUBITS];
        for (j, c) in cols.iter_mut().enumerate().take(2 * n) {
            *c = 1 << j;
        }
        SympMatrix { n: n as u8, cols }
    }

    /// Builds from column bit patterns without checking the symplectic
    /// condition.
    pub(crate) fn from_cols_unchecked(n: usize, columns: &[u64]) -> Self {
        let mut cols = [0u16; 2 * MAX_QUBITS];
        for (c, &v) in cols.iter_mut().zip(columns) {
            *c = v as u16;
        }
        SympMatrix { n: n as u8, cols }
    }

    /// Checked construction from column bit patterns.
    pub fn from_columns(n: usize, columns: &[u64]) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n) {
            return Err(Error::SizeCap(format!("n = {n} exceeds {MAX_QUBITS}")));
        }
        if columns.len() != 2 * n || columns.iter().any(|&c| c >> (2 * n) != 0) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} columns of {} bits",
                2 * n,
                2 * n
            )));
        }
        let m = Self::from_cols_unchecked(n, columns);
        if !m.check_symplectic() {
            return Err(Error::InvalidArgument("matrix is not symplectic".into()));
        }
        Ok(m)
    }

    pub fn from_bitmat(a: &BitMat) -> Result<Self> {
        if !is_symplectic(a)? {
            return Err(Error::InvalidArgument("matrix is not symplectic".into()));
        }
        let n = a.rows() / 2;
        if n > MAX_QUBITS {
            return Err(Error::SizeCap(format!("n = {n} exceeds {MAX_QUBITS}")));
        }
        let cols: Vec<u64> = (0..2 * n).map(|j| a.column_bits(j)).collect();
        Ok(Self::from_cols_unchecked(n, &cols))
    }

    pub fn to_bitmat(&self) -> BitMat {
        let d = self.dim();
        let cols: Vec<BitVec> = (0..d).map(|j| BitVec::from_bits(d, self.col(j))).collect();
        BitMat::from_columns(d, &cols)
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn dim(&self) -> usize {
        2 * self.n as usize
    }

    /// Image of basis vector `e_j` as bits.
    #[inline]
    pub fn col(&self, j: usize) -> u64 {
        self.cols[j] as u64
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.cols[j] >> i) & 1 == 1
    }

    /// `Γ x` on raw bits.
    #[inline]
    pub fn apply_bits(&self, mut x: u64) -> u64 {
        let mut out = 0u64;
        while x != 0 {
            let j = x.trailing_zeros() as usize;
            out ^= self.cols[j] as u64;
            x &= x - 1;
        }
        out
    }

    pub fn apply(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.dim() {
            return Err(Error::LengthMismatch {
                left: self.dim(),
                right: x.len(),
            });
        }
        Ok(BitVec::from_bits(self.dim(), self.apply_bits(x.bits())))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut cols = [0u16; 2 * MAX_QUBITS];
        for (j, c) in cols.iter_mut().enumerate().take(self.dim()) {
            *c = self.apply_bits(other.cols[j] as u64) as u16;
        }
        SympMatrix { n: self.n, cols }
    }

    /// `Γ⁻¹ = J Γᵀ J`: column j of the inverse is `J` applied to row `Jj` of Γ.
    pub fn inv(&self) -> Self {
        let n = self.qubits();
        let d = self.dim();
        let swap = |j: usize| if j < n { j + n } else { j - n };
        let mut cols = [0u16; 2 * MAX_QUBITS];
        for (j, c) in cols.iter_mut().enumerate().take(d) {
            let r = swap(j);
            let mut v = 0u16;
            for i in 0..d {
                if self.get(r, i) {
                    v |= 1 << swap(i);
                }
            }
            *c = v;
        }
        SympMatrix { n: self.n, cols }
    }

    /// Transpose (not symplectic-closed in general; used for the dual action).
    pub fn transpose_apply_bits(&self, a: u64) -> u64 {
        // (Γᵀ a)_j = e_jᵀ Γᵀ a = (Γ e_j) · a
        let mut out = 0u64;
        for j in 0..self.dim() {
            if (self.cols[j] as u64 & a).count_ones() & 1 == 1 {
                out |= 1 << j;
            }
        }
        out
    }

    fn check_symplectic(&self) -> bool {
        let n = self.qubits();
        let d = self.dim();
        for h in 0..d {
            for j in 0..d {
                let want = u8::from(h + n == j || j + n == h);
                if symp_form_bits(n, self.col(h), self.col(j)) != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.qubits())
    }

    /// Transvection `x ↦ x + [x,v] v`.
    pub fn transvection(n: usize, v: u64) -> Self {
        let cols: Vec<u64> = (0..2 * n)
            .map(|j| {
                let e = 1u64 << j;
                if symp_form_bits(n, e, v) == 1 {
                    e ^ v
                } else {
                    e
                }
            })
            .collect();
        Self::from_cols_unchecked(n, &cols)
    }

    /// Row-major packing, bit `i*2n + j` holds entry `(i, j)`.
    pub fn pack(&self) -> u128 {
        let d = self.dim();
        let mut key = 0u128;
        for j in 0..d {
            let c = self.cols[j] as u128;
            for i in 0..d {
                if (c >> i) & 1 == 1 {
                    key |= 1u128 << (i * d + j);
                }
            }
        }
        key
    }

    pub fn unpack(n: usize, key: u128) -> Self {
        let d = 2 * n;
        let mut cols = [0u16; 2 * MAX_QUBITS];
        for (j, c) in cols.iter_mut().enumerate().take(d) {
            for i in 0..d {
                if (key >> (i * d + j)) & 1 == 1 {
                    *c |= 1 << i;
                }
            }
        }
        SympMatrix { n: n as u8, cols }
    }
}

impl fmt::Debug for SympMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_bitmat())
    }
}

impl GroupElement for SympMatrix {
    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Self {
        self.inv()
    }
    fn key(&self) -> u128 {
        self.pack()
    }
    fn rank(&self) -> usize {
        self.qubits()
    }
    fn from_key(rank: usize, key: u128) -> Self {
        Self::unpack(rank, key)
    }
    fn identity(rank: usize) -> Self {
        SympMatrix::identity(rank)
    }
}

/// `AᵀJA = J` over GF(2).
pub fn is_symplectic(a: &BitMat) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if !a.rows().is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!(
            "odd dimension {}",
            a.rows()
        )));
    }
    let j = BitMat::symplectic_j(a.rows() / 2);
    let lhs = a.transpose().mat_mul(&j)?.mat_mul(a)?;
    Ok(lhs == j)
}

/// Transvections generating Sp(2n,2): one for each basis vector and for
/// `e_{p_i} + e_{p_{i+1}}`, `e_{q_i} + e_{q_{i+1}}` on neighbouring qubits.
pub fn transvection_generators(n: usize) -> Vec<SympMatrix> {
    let mut vs: Vec<u64> = (0..2 * n).map(|j| 1u64 << j).collect();
    for i in 0..n.saturating_sub(1) {
        vs.push((1 << i) | (1 << (i + 1)));
        vs.push((1 << (n + i)) | (1 << (n + i + 1)));
    }
    vs.into_iter().map(|v| SympMatrix::transvection(n, v)).collect()
}

/// `|Sp(2n,2)| = 2^{n²} ∏_{j=1}^{n} (4^j − 1)`.
pub fn sp_order(n: usize) -> u128 {
    let mut order: u128 = 1 << (n * n);
    for j in 1..=n {
        order *= (1u128 << (2 * j)) - 1;
    }
    order
}

/// Largest n for which [`enumerate_sp`] runs.
pub const SP_ENUMERATION_MAX_QUBITS: usize = 2;

pub fn enumerate_sp(n: usize) -> Result<GroupEnumeration<SympMatrix>> {
    if n == 0 || n > SP_ENUMERATION_MAX_QUBITS {
        return Err(Error::SizeCap(format!(
            "Sp(2n,2) enumeration needs 1 <= n <= {SP_ENUMERATION_MAX_QUBITS}, got {n}"
        )));
    }
    GroupEnumeration::generate(
        format!("Sp({},2)", 2 * n),
        n,
        transvection_generators(n),
        DEFAULT_ELEMENT_BUDGET,
    )
}

/// A symplectic matrix over Z/4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4SympMatrix(Z4Mat);

impl Z4SympMatrix {
    pub fn matrix(&self) -> &Z4Mat {
        &self.0
    }

    pub fn reduce(&self) -> BitMat {
        self.0.reduce()
    }
}

/// Lifts Γ ∈ Sp(2n,2) to a matrix symplectic mod 4 reducing to Γ.
///
/// Columns are fixed left to right as `v̄_j = v_j + 2 x_j` with `v_j` the 0/1
/// lift. The correction must satisfy `[v_j, x_j] = 0` and, for every earlier
/// column, `[v̄_h, v̄_j] = δ_{h+n,j}` mod 4; both are GF(2)-linear in `x_j`.
/// Among the solutions the lexicographically smallest (entry 0 first) is taken.
pub fn lift_to_z4(gamma: &SympMatrix) -> Result<Z4SympMatrix> {
    let n = gamma.qubits();
    let d = gamma.dim();
    let mut fixed: Vec<Z4Vec> = Vec::with_capacity(d);
    for j in 0..d {
        let vj = BitVec::from_bits(d, gamma.col(j));
        let vj_lift = Z4Vec::lift(&vj);
        // Row r of the system encodes x ↦ [w_r, x] = w_r · (J x).
        let mut rows: Vec<u64> = Vec::new();
        let mut rhs: Vec<u8> = Vec::new();
        let form_row = |w: u64| -> u64 {
            // [w, x] = p_w·q_x + q_w·p_x (mod 2): coefficient of x_k.
            let p = w & ((1 << n) - 1);
            let q = w >> n;
            (p << n) | q
        };
        rows.push(form_row(vj.bits()));
        rhs.push(0);
        for (h, vh) in fixed.iter().enumerate() {
            let target = u8::from(h + n == j);
            let current = symp_form_z4(vh, &vj_lift)?;
            let diff = (target + 4 - current) % 4;
            if diff % 2 != 0 {
                return Err(Error::Internal(format!(
                    "column {j} of a supposedly symplectic matrix pairs oddly with column {h}"
                )));
            }
            rows.push(form_row(vh.reduce().bits()));
            rhs.push(diff / 2);
        }
        let x = lex_smallest_solution(d, &rows, &rhs)?.ok_or_else(|| {
            Error::Internal(format!("no mod-4 correction exists for column {j}"))
        })?;
        fixed.push(vj_lift.add_twice(&x)?);
    }
    let m = Z4Mat::from_columns(&fixed);
    if !m.is_symplectic() || m.reduce() != gamma.to_bitmat() {
        return Err(Error::Internal("mod-4 lift failed verification".into()));
    }
    Ok(Z4SympMatrix(m))
}

/// Lexicographically smallest `x` (entry 0 most significant) with
/// `rows[r]·x = rhs[r]` over GF(2), by greedily pinning entries to zero.
fn lex_smallest_solution(d: usize, rows: &[u64], rhs: &[u8]) -> Result<Option<BitVec>> {
    let mut rows = rows.to_vec();
    let mut rhs = rhs.to_vec();
    let solve = |rows: &[u64], rhs: &[u8]| -> Result<Option<BitVec>> {
        let a = BitMat::from_rows(d, rows.to_vec());
        let b = BitVec::from_slice(rhs);
        solve_gf2(&a, &b)
    };
    if solve(&rows, &rhs)?.is_none() {
        return Ok(None);
    }
    for k in 0..d {
        rows.push(1 << k);
        rhs.push(0);
        if solve(&rows, &rhs)?.is_none() {
            *rhs.last_mut().expect("just pushed") = 1;
        }
    }
    solve(&rows, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn swap_n1() -> SympMatrix {
        SympMatrix::from_columns(1, &[0b10, 0b01]).unwrap()
    }

    #[test]
    fn membership() {
        assert!(is_symplectic(&BitMat::identity(4)).unwrap());
        assert!(is_symplectic(&swap_n1().to_bitmat()).unwrap());
        let singular = BitMat::from_entries(&[&[1, 1], &[0, 0]]);
        assert!(!is_symplectic(&singular).unwrap());
        assert!(is_symplectic(&BitMat::zeros(2, 3)).is_err());
        assert!(SympMatrix::from_columns(1, &[0b01, 0b01]).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(sp_order(1), 6);
        assert_eq!(sp_order(2), 720);
        assert_eq!(sp_order(3), 1_451_520);
    }

    #[test]
    fn transvections_are_involutions_and_generate() {
        for n in 1..=3 {
            for t in transvection_generators(n) {
                assert!(t.check_symplectic());
                assert!(t.mul(&t).is_identity());
            }
        }
        let sp2 = enumerate_sp(1).unwrap();
        assert_eq!(sp2.order(), 6);
        let sp4 = enumerate_sp(2).unwrap();
        assert_eq!(sp4.order() as u128, sp_order(2));
        assert_eq!(sp4.class_count(), 11);
        assert!(sp4.contains(&SympMatrix::identity(2)));
        for g in sp4.elements() {
            assert!(sp4.contains(&g.inv()));
            assert!(g.mul(&g.inv()).is_identity());
        }
        assert!(enumerate_sp(3).is_err());
    }

    #[test]
    fn transitive_on_nonzero_vectors() {
        for n in 1..=2 {
            let sp = enumerate_sp(n).unwrap();
            let orbit: std::collections::BTreeSet<u64> =
                sp.elements().iter().map(|g| g.apply_bits(1)).collect();
            assert_eq!(orbit.len(), (1 << (2 * n)) - 1);
        }
    }

    #[test]
    fn pack_round_trip() {
        let sp = enumerate_sp(2).unwrap();
        for g in sp.elements() {
            assert_eq!(SympMatrix::unpack(2, g.pack()), *g);
        }
    }

    #[test]
    fn lift_identity_and_swap() {
        let id = lift_to_z4(&SympMatrix::identity(2)).unwrap();
        assert_eq!(*id.matrix(), Z4Mat::identity(4));
        let l = lift_to_z4(&swap_n1()).unwrap();
        assert_eq!(*l.matrix(), Z4Mat::from_rows(&[&[0, 3], &[1, 0]]));
    }

    #[test]
    fn lift_all_small_and_random_sp4() {
        for g in enumerate_sp(1).unwrap().elements() {
            let l = lift_to_z4(g).unwrap();
            assert!(l.matrix().is_symplectic());
            assert_eq!(l.reduce(), g.to_bitmat());
        }
        let sp4 = enumerate_sp(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let g = sp4.element(rng.gen_range(0..sp4.order()));
            let l = lift_to_z4(g).unwrap();
            assert!(l.matrix().is_symplectic());
            assert_eq!(l.reduce(), g.to_bitmat());
        }
    }
}
