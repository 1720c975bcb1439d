//! The projective Clifford group as pairs `(Γ, s)`:
//! `U W_{e_j} U† = (-1)^{s_j} W_{Γ e_j}` for every basis index `e_j`.
//!
//! The image of a general `W_x` is reconstructed by writing `W_x` as a
//! product of basis Weyl operators in ascending index order, mapping each
//! factor, and multiplying back in the same order. That order is part of the
//! element's meaning: the sign function is not linear off the basis.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;

use crate::group::{GroupElement, GroupEnumeration, DEFAULT_ELEMENT_BUDGET};
use crate::error::{Error, Result};
use crate::linalg2::{symp_form_bits, BitVec};
use crate::pauli::{weyl_mul_bits, PauliCharacter, PauliElement};
use crate::symplectic::{sp_order, SympMatrix, MAX_QUBITS};

/// Packed `(Γ, s)`: row-major Γ in the low `4n²` bits, `s` above.
pub type PackedElement = u128;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    gamma: SympMatrix,
    signs: u16,
}

impl CliffordElement {
    pub fn identity(n: usize) -> Self {
        CliffordElement {
            gamma: SympMatrix::identity(n),
            signs: 0,
        }
    }

    pub fn new(gamma: SympMatrix, signs: BitVec) -> Result<Self> {
        if signs.len() != gamma.dim() {
            return Err(Error::LengthMismatch {
                left: gamma.dim(),
                right: signs.len(),
            });
        }
        Ok(CliffordElement {
            gamma,
            signs: signs.bits() as u16,
        })
    }

    pub(crate) fn from_raw(gamma: SympMatrix, signs: u64) -> Self {
        CliffordElement {
            gamma,
            signs: signs as u16,
        }
    }

    /// The element sending `W_{e_j}` to `images[j]`; every image must be
    /// `±W_y` and the images must define a symplectic map.
    pub fn from_images(n: usize, images: &[PauliElement]) -> Result<Self> {
        if images.len() != 2 * n {
            return Err(Error::DimensionMismatch(format!(
                "need {} images, got {}",
                2 * n,
                images.len()
            )));
        }
        let mut cols = Vec::with_capacity(2 * n);
        let mut signs = 0u64;
        for (j, p) in images.iter().enumerate() {
            if p.qubits() != n {
                return Err(Error::LengthMismatch {
                    left: 2 * n,
                    right: p.index().len(),
                });
            }
            if p.phase() % 2 != 0 {
                return Err(Error::InvalidArgument(format!(
                    "image {p} of a Hermitian basis operator is not Hermitian"
                )));
            }
            cols.push(p.index().bits());
            signs |= ((p.phase() / 2) as u64) << j;
        }
        Ok(Self::from_raw(SympMatrix::from_columns(n, &cols)?, signs))
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.gamma.qubits()
    }

    pub fn gamma(&self) -> &SympMatrix {
        &self.gamma
    }

    pub fn signs(&self) -> BitVec {
        BitVec::from_bits(self.gamma.dim(), self.signs as u64)
    }

    #[inline]
    pub fn signs_bits(&self) -> u64 {
        self.signs as u64
    }

    /// Conjugation image of `i^k W_x` on raw parts.
    pub fn apply_bits(&self, k: u8, x: u64) -> Result<(u8, u64)> {
        let n = self.qubits();
        let (mut dk, mut dx) = (0u8, 0u64);
        let (mut ik, mut ix) = (0u8, 0u64);
        let mut rest = x;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            (dk, dx) = weyl_mul_bits(n, dk, dx, 0, 1 << j);
            let sign = (((self.signs >> j) & 1) as u8) * 2;
            (ik, ix) = weyl_mul_bits(n, ik, ix, sign, self.gamma.col(j));
        }
        debug_assert_eq!(dx, x);
        let shift = (ik + 4 - dk) % 4;
        if shift % 2 != 0 {
            return Err(Error::Internal(format!(
                "odd phase {shift} conjugating a Weyl operator; element is corrupt"
            )));
        }
        Ok(((k + shift) % 4, ix))
    }

    /// `U P U†`.
    pub fn apply(&self, p: &PauliElement) -> Result<PauliElement> {
        if p.qubits() != self.qubits() {
            return Err(Error::LengthMismatch {
                left: self.gamma.dim(),
                right: p.index().len(),
            });
        }
        let (k, x) = self.apply_bits(p.phase(), p.index().bits())?;
        Ok(PauliElement::new(k, BitVec::from_bits(self.gamma.dim(), x)))
    }

    /// Composition: conjugation by `self` after `other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.qubits() != other.qubits() {
            return Err(Error::LengthMismatch {
                left: self.gamma.dim(),
                right: other.gamma.dim(),
            });
        }
        let gamma = self.gamma.mul(&other.gamma);
        let mut signs = 0u64;
        for j in 0..gamma.dim() {
            let s = (((other.signs >> j) & 1) as u8) * 2;
            let (k, _) = self.apply_bits(s, other.gamma.col(j))?;
            signs |= ((k / 2) as u64) << j;
        }
        Ok(Self::from_raw(gamma, signs))
    }

    pub fn inv(&self) -> Self {
        let gi = self.gamma.inv();
        let mut signs = 0u64;
        for j in 0..gi.dim() {
            let (k, _) = self
                .apply_bits(0, gi.col(j))
                .expect("valid element maps Hermitian Weyls to Hermitian Weyls");
            signs |= ((k / 2) as u64) << j;
        }
        Self::from_raw(gi, signs)
    }

    pub fn pack(&self) -> PackedElement {
        let d = self.gamma.dim();
        self.gamma.pack() | ((self.signs as u128) << (d * d))
    }

    pub fn unpack(n: usize, key: PackedElement) -> Self {
        let d = 2 * n;
        let gamma = SympMatrix::unpack(n, key & ((1u128 << (d * d)) - 1));
        Self::from_raw(gamma, (key >> (d * d)) as u64)
    }

    /// Conjugation by `W_y`: `(I, s)` with `s_j = [y, e_j]`.
    pub fn pauli_embed(y: &BitVec) -> Self {
        let n = y.qubits();
        let mut signs = 0u64;
        for j in 0..2 * n {
            signs |= (symp_form_bits(n, y.bits(), 1 << j) as u64) << j;
        }
        Self::from_raw(SympMatrix::identity(n), signs)
    }

    /// If this element is a Pauli embed, the index it conjugates by.
    pub fn pauli_index(&self) -> Option<BitVec> {
        if !self.gamma.is_identity() {
            return None;
        }
        // s_j = [y, e_j] means s on the p-block is q_y and vice versa.
        let n = self.qubits();
        let s = self.signs as u64;
        let mask = (1u64 << n) - 1;
        let y = ((s & mask) << n) | ((s >> n) & mask);
        Some(BitVec::from_bits(2 * n, y))
    }

    pub fn hadamard(n: usize, q: usize) -> Self {
        let mut cols: Vec<u64> = (0..2 * n).map(|j| 1u64 << j).collect();
        cols.swap(q, n + q);
        Self::from_raw(SympMatrix::from_cols_unchecked(n, &cols), 0)
    }

    /// `S`: `X ↦ Y`, `Z ↦ Z`.
    pub fn phase(n: usize, q: usize) -> Self {
        let mut cols: Vec<u64> = (0..2 * n).map(|j| 1u64 << j).collect();
        cols[n + q] |= 1 << q;
        Self::from_raw(SympMatrix::from_cols_unchecked(n, &cols), 0)
    }

    /// Controlled-Z on qubits `a`, `b`: `X_a ↦ X_a Z_b`, `X_b ↦ Z_a X_b`.
    pub fn cz(n: usize, a: usize, b: usize) -> Self {
        assert_ne!(a, b);
        let mut cols: Vec<u64> = (0..2 * n).map(|j| 1u64 << j).collect();
        cols[n + a] |= 1 << b;
        cols[n + b] |= 1 << a;
        Self::from_raw(SympMatrix::from_cols_unchecked(n, &cols), 0)
    }

    /// The same action placed on `qubits` of an `n`-qubit register
    /// (identity elsewhere).
    pub fn embed(&self, n: usize, qubits: &[usize]) -> Result<Self> {
        let m = self.qubits();
        if qubits.len() != m || qubits.iter().any(|&q| q >= n) {
            return Err(Error::InvalidArgument("bad qubit placement".into()));
        }
        let place = |x: u64| -> u64 {
            let mut out = 0u64;
            for (i, &q) in qubits.iter().enumerate() {
                if (x >> i) & 1 == 1 {
                    out |= 1 << q;
                }
                if (x >> (m + i)) & 1 == 1 {
                    out |= 1 << (n + q);
                }
            }
            out
        };
        let mut cols: Vec<u64> = (0..2 * n).map(|j| 1u64 << j).collect();
        let mut signs = 0u64;
        for (i, &q) in qubits.iter().enumerate() {
            cols[q] = place(self.gamma.col(i));
            cols[n + q] = place(self.gamma.col(m + i));
            signs |= ((self.signs as u64 >> i) & 1) << q;
            signs |= ((self.signs as u64 >> (m + i)) & 1) << (n + q);
        }
        Ok(Self::from_raw(SympMatrix::from_columns(n, &cols)?, signs))
    }

    /// Dual action on Pauli character labels: `a ↦ Γ⁻ᵀ a`.
    pub fn act_on_character(&self, a: &PauliCharacter) -> Result<PauliCharacter> {
        let label = a.label();
        if label.len() != self.gamma.dim() {
            return Err(Error::LengthMismatch {
                left: self.gamma.dim(),
                right: label.len(),
            });
        }
        let bits = self.gamma.inv().transpose_apply_bits(label.bits());
        Ok(PauliCharacter::new(BitVec::from_bits(label.len(), bits)))
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.qubits();
        write!(f, "Clifford[")?;
        for j in 0..2 * n {
            let img = self
                .apply(&PauliElement::weyl(BitVec::unit(2 * n, j)))
                .map(|p| p.to_string())
                .unwrap_or_else(|_| "?".into());
            let from = if j < n { format!("Z{}", j + 1) } else { format!("X{}", j - n + 1) };
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{from}->{img}")?;
        }
        write!(f, "]")
    }
}

impl GroupElement for CliffordElement {
    fn compose(&self, other: &Self) -> Self {
        self.mul(other).expect("same qubit count")
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
        CliffordElement::identity(rank)
    }
}

/// `H_i`, `S_i`, `CZ_{ij}` and the Pauli embeds of every basis Weyl operator.
pub fn standard_generators(n: usize) -> Vec<CliffordElement> {
    let mut gens = Vec::new();
    for q in 0..n {
        gens.push(CliffordElement::hadamard(n, q));
        gens.push(CliffordElement::phase(n, q));
    }
    for a in 0..n {
        for b in a + 1..n {
            gens.push(CliffordElement::cz(n, a, b));
        }
    }
    for j in 0..2 * n {
        gens.push(CliffordElement::pauli_embed(&BitVec::unit(2 * n, j)));
    }
    gens
}

/// `|𝒞_n| = 4^n |Sp(2n,2)|`.
pub fn clifford_order(n: usize) -> u128 {
    (1u128 << (2 * n)) * sp_order(n)
}

/// Enumerates 𝒞_n. `n ≤ 2` always; `n = 3` only with `allow_large`.
pub fn enumerate_clifford(n: usize, allow_large: bool) -> Result<GroupEnumeration<CliffordElement>> {
    enumerate_clifford_with_budget(n, allow_large, DEFAULT_ELEMENT_BUDGET)
}

pub fn enumerate_clifford_with_budget(
    n: usize,
    allow_large: bool,
    budget: usize,
) -> Result<GroupEnumeration<CliffordElement>> {
    let cap = if allow_large { 3 } else { 2 };
    if n == 0 || n > cap.min(MAX_QUBITS) {
        return Err(Error::SizeCap(format!(
            "Clifford enumeration for n = {n} needs {}",
            if n == 3 { "the large-memory opt-in" } else { "1 <= n <= 3" }
        )));
    }
    GroupEnumeration::generate(format!("C{n}"), n, standard_generators(n), budget)
}

/// Some `g` with `act_on_character(g, a) = b`, by breadth-first search over
/// generator words acting on labels.
pub fn find_conjugator(a: &PauliCharacter, b: &PauliCharacter) -> Result<CliffordElement> {
    if a.is_trivial() || b.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    if a.label().len() != b.label().len() {
        return Err(Error::LengthMismatch {
            left: a.label().len(),
            right: b.label().len(),
        });
    }
    let n = a.label().qubits();
    let gens = standard_generators(n);
    let mut seen: HashMap<u64, CliffordElement> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(a.label().bits(), CliffordElement::identity(n));
    queue.push_back(*a);
    while let Some(cur) = queue.pop_front() {
        let w = seen[&cur.label().bits()];
        if cur == *b {
            return Ok(w);
        }
        for g in &gens {
            let next = g.act_on_character(&cur)?;
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(next.label().bits()) {
                e.insert(g.mul(&w)?);
                queue.push_back(next);
            }
        }
    }
    Err(Error::Internal("nontrivial Pauli characters are not all conjugate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{self, DenseMatrix};
    use crate::pauli::matrix_oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn p(s: &str) -> PauliElement {
        PauliElement::parse(s).unwrap()
    }

    /// Dense matrix of a generator with its normalisation (`U U† = norm I`).
    fn dense_of(n: usize, idx: usize) -> (DenseMatrix, i64) {
        let mut k = 0;
        for q in 0..n {
            if k == idx {
                return (DenseMatrix::on_qubit(n, q, &dense::hadamard_unscaled()), 2);
            }
            k += 1;
            if k == idx {
                return (DenseMatrix::on_qubit(n, q, &dense::phase_s()), 1);
            }
            k += 1;
        }
        for a in 0..n {
            for b in a + 1..n {
                if k == idx {
                    return (dense::controlled_z(n, a, b), 1);
                }
                k += 1;
            }
        }
        let j = idx - k;
        (matrix_oracle(&PauliElement::weyl(BitVec::unit(2 * n, j))).unwrap(), 1)
    }

    fn check_against_dense(g: &CliffordElement, u: &DenseMatrix, norm: i64, pauli: &PauliElement) {
        let want = u.conjugate(&matrix_oracle(pauli).unwrap(), norm).unwrap();
        let got = matrix_oracle(&g.apply(pauli).unwrap()).unwrap();
        assert_eq!(got, want, "element {g:?} on {pauli}");
    }

    #[test]
    fn hadamard_relations() {
        let h = CliffordElement::hadamard(1, 0);
        assert_eq!(h.apply(&p("X")).unwrap(), p("Z"));
        assert_eq!(h.apply(&p("Z")).unwrap(), p("X"));
        assert_eq!(h.apply(&p("Y")).unwrap(), p("-Y"));
        assert_eq!(h.inv(), h);
        assert!(h.mul(&h).unwrap().is_identity());
    }

    #[test]
    fn phase_relations() {
        let s = CliffordElement::phase(1, 0);
        assert_eq!(s.apply(&p("X")).unwrap(), p("Y"));
        assert_eq!(s.apply(&p("Z")).unwrap(), p("Z"));
        assert_eq!(s.apply(&p("Y")).unwrap(), p("-X"));
        let s2 = s.mul(&s).unwrap();
        assert_eq!(s2, CliffordElement::pauli_embed(&p("Z").index()));
    }

    #[test]
    fn cz_relations() {
        let cz = CliffordElement::cz(2, 0, 1);
        assert_eq!(cz.apply(&p("IX")).unwrap(), p("ZX"));
        assert_eq!(cz.apply(&p("XI")).unwrap(), p("XZ"));
        assert_eq!(cz.apply(&p("ZI")).unwrap(), p("ZI"));
        assert_eq!(cz.apply(&p("IZ")).unwrap(), p("IZ"));
    }

    #[test]
    fn identity_and_phase_carry() {
        let id = CliffordElement::identity(2);
        for x in BitVec::all(4) {
            for k in 0..4 {
                let q = PauliElement::new(k, x);
                assert_eq!(id.apply(&q).unwrap(), q);
            }
        }
        let h = CliffordElement::hadamard(1, 0);
        assert_eq!(h.apply(&p("iX")).unwrap(), p("iZ"));
        assert!(h.apply(&p("XX")).is_err());
    }

    #[test]
    fn pauli_embed_signs() {
        let e = CliffordElement::pauli_embed(&p("X").index());
        assert_eq!(e.signs().to_vec(), vec![1, 0]);
        assert!(CliffordElement::pauli_embed(&BitVec::zeros(4)).is_identity());
        for n in 1..=2 {
            let images: HashSet<u128> =
                BitVec::all(2 * n).map(|y| CliffordElement::pauli_embed(&y).pack()).collect();
            assert_eq!(images.len(), 1 << (2 * n));
            for y in BitVec::all(2 * n) {
                let e = CliffordElement::pauli_embed(&y);
                assert_eq!(e.pauli_index(), Some(y));
                for z in BitVec::all(2 * n) {
                    let prod = e.mul(&CliffordElement::pauli_embed(&z)).unwrap();
                    assert_eq!(prod, CliffordElement::pauli_embed(&y.xor(&z).unwrap()));
                }
            }
        }
    }

    #[test]
    fn generators_match_dense_conjugation() {
        for n in 1..=2 {
            for (i, g) in standard_generators(n).iter().enumerate() {
                let (u, norm) = dense_of(n, i);
                for x in BitVec::all(2 * n) {
                    check_against_dense(g, &u, norm, &PauliElement::weyl(x));
                }
            }
        }
    }

    #[test]
    fn random_words_match_dense_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..120 {
            let n = 1 + trial % 2;
            let gens = standard_generators(n);
            let mut g = CliffordElement::identity(n);
            let mut u = DenseMatrix::identity(1 << n);
            let mut norm = 1;
            for _ in 0..rng.gen_range(1..12) {
                let i = rng.gen_range(0..gens.len());
                let (m, k) = dense_of(n, i);
                g = g.mul(&gens[i]).unwrap();
                u = u.mul(&m);
                norm *= k;
            }
            let pauli = PauliElement::new(rng.gen_range(0..4), BitVec::from_bits(2 * n, rng.gen()));
            check_against_dense(&g, &u, norm, &pauli);
        }
    }

    #[test]
    fn group_laws_on_random_elements() {
        let c2 = enumerate_clifford(2, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let g = *c2.element(rng.gen_range(0..c2.order()));
            let h = *c2.element(rng.gen_range(0..c2.order()));
            let pauli = PauliElement::new(rng.gen_range(0..4), BitVec::from_bits(4, rng.gen()));
            assert!(g.mul(&g.inv()).unwrap().is_identity());
            let gh = g.mul(&h).unwrap();
            assert_eq!(gh.apply(&pauli).unwrap(), g.apply(&h.apply(&pauli).unwrap()).unwrap());
            assert_eq!(CliffordElement::unpack(2, g.pack()), g);
        }
        let c1 = enumerate_clifford(1, false).unwrap();
        for g in c1.elements() {
            assert!(g.inv().mul(g).unwrap().is_identity());
        }
    }

    #[test]
    fn orders_and_classes() {
        let c1 = enumerate_clifford(1, false).unwrap();
        assert_eq!(c1.order(), 24);
        let sizes: Vec<u64> = c1.classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let orders: Vec<u32> = c1.classes().iter().map(|c| c.element_order).collect();
        assert_eq!(orders, vec![1, 2, 2, 4, 3]);
        let c2 = enumerate_clifford(2, false).unwrap();
        assert_eq!(c2.order() as u128, clifford_order(2));
        assert_eq!(c2.class_count(), 21);
        assert_eq!(c2.classes()[0].size, 1);
        assert!(enumerate_clifford(3, false).is_err());
    }

    #[test]
    fn parametrisation_is_bijective_for_one_qubit() {
        let c1 = enumerate_clifford(1, false).unwrap();
        let mut per_gamma: HashMap<u128, usize> = HashMap::new();
        for g in c1.elements() {
            *per_gamma.entry(g.gamma().pack()).or_default() += 1;
        }
        assert_eq!(per_gamma.len(), 6);
        assert!(per_gamma.values().all(|&c| c == 4));
    }

    #[test]
    fn dual_action() {
        let h = CliffordElement::hadamard(1, 0);
        // "-1 on X only" has label a with a·(0|1) = 1 and a·(1|0) = 0: a = (0|1).
        let x_neg = PauliCharacter::new(BitVec::from_pq(&[0], &[1]));
        let z_neg = PauliCharacter::new(BitVec::from_pq(&[1], &[0]));
        assert_eq!(h.act_on_character(&x_neg).unwrap(), z_neg);
        let c2 = enumerate_clifford(2, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let g = c2.element(rng.gen_range(0..c2.order()));
            let a = PauliCharacter::new(BitVec::from_bits(4, rng.gen()));
            let b = g.act_on_character(&a).unwrap();
            let gi = g.inv();
            for x in BitVec::all(4) {
                let pre = gi.gamma().apply(&x).unwrap();
                assert_eq!(
                    crate::pauli::char_value(&b, &x).unwrap(),
                    crate::pauli::char_value(&a, &pre).unwrap()
                );
            }
        }
    }

    #[test]
    fn nontrivial_labels_form_one_orbit() {
        for n in 1..=2 {
            let c = enumerate_clifford(n, false).unwrap();
            let a = PauliCharacter::sigma1(n);
            let orbit: HashSet<u64> = c
                .elements()
                .iter()
                .map(|g| g.act_on_character(&a).unwrap().label().bits())
                .collect();
            assert_eq!(orbit.len(), (1 << (2 * n)) - 1);
        }
    }

    #[test]
    fn conjugator_search() {
        let x_neg = PauliCharacter::new(BitVec::from_pq(&[0], &[1]));
        let z_neg = PauliCharacter::new(BitVec::from_pq(&[1], &[0]));
        assert!(find_conjugator(&x_neg, &x_neg).unwrap().is_identity());
        let w = find_conjugator(&x_neg, &z_neg).unwrap();
        assert_eq!(w.act_on_character(&x_neg).unwrap(), z_neg);
        let sigma = PauliCharacter::sigma1(2);
        let rho = PauliCharacter::new(BitVec::from_pq(&[0, 1], &[0, 0]));
        let w = find_conjugator(&sigma, &rho).unwrap();
        assert_eq!(w.act_on_character(&sigma).unwrap(), rho);
        assert!(matches!(
            find_conjugator(&PauliCharacter::trivial(1), &z_neg),
            Err(Error::TrivialCharacter)
        ));
    }

    #[test]
    fn from_images_rejects_bad_input() {
        assert!(CliffordElement::from_images(1, &[p("X"), p("X")]).is_err());
        assert!(CliffordElement::from_images(1, &[p("iX"), p("Z")]).is_err());
        let h = CliffordElement::from_images(1, &[p("X"), p("Z")]).unwrap();
        assert_eq!(h, CliffordElement::hadamard(1, 0));
    }

    #[test]
    fn embedding_onto_other_qubits() {
        let h = CliffordElement::hadamard(1, 0);
        assert_eq!(h.embed(3, &[2]).unwrap(), CliffordElement::hadamard(3, 2));
        let cz = CliffordElement::cz(2, 0, 1);
        assert_eq!(cz.embed(3, &[1, 2]).unwrap(), CliffordElement::cz(3, 1, 2));
    }

    #[test]
    fn split_section_fails_somewhere_for_two_qubits() {
        // Diagnostic: the zero-sign section Γ ↦ (Γ, 0) is not multiplicative.
        let sp = crate::symplectic::enumerate_sp(2).unwrap();
        let bad = sp.elements().iter().take(200).any(|a| {
            sp.elements().iter().take(200).any(|b| {
                let lhs = CliffordElement::from_raw(*a, 0).mul(&CliffordElement::from_raw(*b, 0)).unwrap();
                lhs.signs_bits() != 0
            })
        });
        assert!(bad);
    }

    mod props {
        use super::*;
        use crate::pauli::weyl_mul;
        use proptest::prelude::*;

        /// A random word in the standard generators on up to three qubits.
        fn element(n: usize) -> impl Strategy<Value = CliffordElement> {
            let k = standard_generators(n).len();
            proptest::collection::vec(0..k, 0..24).prop_map(move |word| {
                let gens = standard_generators(n);
                word.iter().fold(CliffordElement::identity(n), |g, &i| g.mul(&gens[i]).unwrap())
            })
        }

        fn case() -> impl Strategy<Value = (CliffordElement, CliffordElement, CliffordElement, PauliElement, PauliElement)> {
            (1usize..=3).prop_flat_map(|n| {
                let pauli = (0u8..4, 0u64..1 << (2 * n)).prop_map(move |(k, x)| PauliElement::new(k, BitVec::from_bits(2 * n, x)));
                (element(n), element(n), element(n), pauli.clone(), pauli)
            })
        }

        proptest! {
            #[test]
            fn group_laws((f, g, h, p, q) in case()) {
                let n = f.qubits();
                prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
                prop_assert!(f.mul(&f.inv()).unwrap().is_identity());
                prop_assert_eq!(CliffordElement::unpack(n, f.pack()), f);
                prop_assert!(crate::symplectic::is_symplectic(&f.gamma().to_bitmat()).unwrap());
                // The action is a left action by automorphisms of the Pauli group.
                let fg = f.mul(&g).unwrap();
                prop_assert_eq!(fg.apply(&p).unwrap(), f.apply(&g.apply(&p).unwrap()).unwrap());
                let pq = weyl_mul(&p, &q).unwrap();
                prop_assert_eq!(
                    f.apply(&pq).unwrap(),
                    weyl_mul(&f.apply(&p).unwrap(), &f.apply(&q).unwrap()).unwrap()
                );
            }
        }
    }
}
