//! Weyl operators `i^k W_x` with exact phase bookkeeping.
//!
//! `W_x = i^{-p.q} (Z^{p_1} X^{q_1}) (x) ... (x) (Z^{p_n} X^{q_n})` for
//! `x = (p|q)`. Every Pauli operator is `i^k W_x` for a unique phase
//! `k in Z/4` and `x in Z_2^{2n}`, which is the normal form stored here.

use std::cmp::Ordering;
use std::fmt;

use crate::chars::{CharacterTable, ClassFunction, ClassInfo, Cyclotomic, Provenance};
use crate::dense::{self, DenseMatrix, Gauss};
use crate::error::{Error, Result};
use crate::linalg2::{symp_form_bits, symp_form_z4_bits, BitVec};

/// `i^phase * W_index`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliElement {
    phase: u8,
    index: BitVec,
}

impl PauliElement {
    pub fn new(phase: u8, index: BitVec) -> Self {
        assert!(index.len().is_multiple_of(2), "Weyl index must have even length");
        PauliElement {
            phase: phase & 3,
            index,
        }
    }

    pub fn weyl(index: BitVec) -> Self {
        Self::new(0, index)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(0, BitVec::zeros(2 * n))
    }

    /// Single-qubit letter on `qubit` (0-based): one of `'I'`, `'X'`, `'Y'`, `'Z'`,
    /// as the Hermitian Weyl operator (so `Y` is `W_{(1|1)}`).
    pub fn letter(n: usize, qubit: usize, letter: char) -> Self {
        let mut x = BitVec::zeros(2 * n);
        match letter {
            'I' => {}
            'X' => x.set(n + qubit, true),
            'Z' => x.set(qubit, true),
            'Y' => {
                x.set(qubit, true);
                x.set(n + qubit, true);
            }
            other => panic!("unknown Pauli letter {other}"),
        }
        Self::weyl(x)
    }

    /// Parses a Pauli string such as `"-XZ"`, `"iY"` or `"IX"`; qubit 1 is
    /// the leftmost letter. Letters denote Hermitian Weyl operators.
    pub fn parse(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else {
            (0, s)
        };
        let n = body.len();
        if n == 0 {
            return Err(Error::InvalidArgument(format!("empty Pauli string {s:?}")));
        }
        let mut x = BitVec::zeros(2 * n);
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x.set(n + q, true),
                'Z' => x.set(q, true),
                'Y' => {
                    x.set(q, true);
                    x.set(n + q, true);
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "bad Pauli letter {other:?} in {s:?}"
                    )))
                }
            }
        }
        Ok(Self::new(phase, x))
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    #[inline]
    pub fn index(&self) -> BitVec {
        self.index
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.index.qubits()
    }

    pub fn with_phase(&self, phase: u8) -> Self {
        Self::new(phase, self.index)
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.index.is_zero()
    }
}

impl fmt::Display for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase as usize];
        write!(f, "{prefix}")?;
        let n = self.qubits();
        for q in 0..n {
            let z = self.index.get(q);
            let x = self.index.get(n + q);
            let c = match (z, x) {
                (false, false) => 'I',
                (false, true) => 'X',
                (true, false) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Product of two Pauli elements in normal form.
///
/// `W_x W_y = i^{[x,y]} W_{x+y}` with `x + y` taken over Z/4; the Z/4 sum is
/// `(x xor y) + 2 (x and y)`, and `W_{u + 2z} = (-1)^{[u,z]} W_u` folds it back.
pub fn weyl_mul(a: &PauliElement, b: &PauliElement) -> Result<PauliElement> {
    if a.index.len() != b.index.len() {
        return Err(Error::LengthMismatch {
            left: a.index.len(),
            right: b.index.len(),
        });
    }
    let n = a.qubits();
    let (x, y) = (a.index.bits(), b.index.bits());
    let (phase, bits) = weyl_mul_bits(n, a.phase, x, b.phase, y);
    Ok(PauliElement::new(phase, BitVec::from_bits(2 * n, bits)))
}

/// [`weyl_mul`] on raw parts; returns `(phase, index bits)`.
#[inline]
pub fn weyl_mul_bits(n: usize, ka: u8, x: u64, kb: u8, y: u64) -> (u8, u64) {
    let sum = x ^ y;
    let carry = x & y;
    let phase = ka + kb + symp_form_z4_bits(n, x, y) + 2 * symp_form_bits(n, sum, carry);
    (phase & 3, sum)
}

/// A character of the projective Pauli group, `chi_a(W_x) = (-1)^{a.x}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliCharacter {
    label: BitVec,
}

impl PauliCharacter {
    pub fn new(label: BitVec) -> Self {
        PauliCharacter { label }
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(BitVec::zeros(2 * n))
    }

    /// The character that is -1 on `[X_1]` and `[Z_1]` and +1 on every other
    /// single-qubit generator.
    pub fn sigma1(n: usize) -> Self {
        let mut a = BitVec::zeros(2 * n);
        a.set(0, true);
        a.set(n, true);
        Self::new(a)
    }

    pub fn label(&self) -> BitVec {
        self.label
    }

    pub fn is_trivial(&self) -> bool {
        self.label.is_zero()
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(self.label.xor(&other.label)?))
    }
}

/// `(-1)^{a.x}` as +1 or -1.
pub fn char_value(a: &PauliCharacter, x: &BitVec) -> Result<i8> {
    Ok(if a.label.dot(x)? == 0 { 1 } else { -1 })
}

/// Sort key listing Pauli indices qubit by qubit in the order I, X, Z, Y,
/// qubit 1 most significant.
pub fn letter_order_key(x: &BitVec) -> u64 {
    let n = x.qubits();
    let mut key = 0u64;
    for q in 0..n {
        let z = x.get(q) as u64;
        let xb = x.get(n + q) as u64;
        key = (key << 2) | (xb + 2 * z);
    }
    key
}

/// All indices of `Z_2^{2n}` in letter order.
pub fn indices_in_letter_order(n: usize) -> Vec<BitVec> {
    let mut all: Vec<BitVec> = BitVec::all(2 * n).collect();
    all.sort_by_key(letter_order_key);
    all
}

/// Largest n accepted by [`PauliTable`].
pub const PAULI_TABLE_MAX_QUBITS: usize = 8;
/// Largest n for which [`pauli_char_table`] materialises exact values.
pub const PAULI_EXACT_TABLE_MAX_QUBITS: usize = 4;

/// Streaming view of the `4^n x 4^n` projective Pauli character table; rows
/// and columns both follow [`indices_in_letter_order`].
pub struct PauliTable {
    n: usize,
    order: Vec<BitVec>,
}

impl PauliTable {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > PAULI_TABLE_MAX_QUBITS {
            return Err(Error::SizeCap(format!(
                "Pauli character table needs 1 <= n <= {PAULI_TABLE_MAX_QUBITS}, got {n}"
            )));
        }
        Ok(PauliTable {
            n,
            order: indices_in_letter_order(n),
        })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.order
    }

    pub fn row(&self, i: usize) -> Vec<i8> {
        let a = PauliCharacter::new(self.order[i]);
        self.order
            .iter()
            .map(|x| char_value(&a, x).expect("lengths agree"))
            .collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<i8>> + '_ {
        (0..self.size()).map(|i| self.row(i))
    }
}

/// The projective Pauli group's character table as an exact table.
pub fn pauli_char_table(n: usize) -> Result<CharacterTable> {
    if n == 0 || n > PAULI_EXACT_TABLE_MAX_QUBITS {
        return Err(Error::SizeCap(format!(
            "exact Pauli character table needs 1 <= n <= {PAULI_EXACT_TABLE_MAX_QUBITS}, got {n}"
        )));
    }
    let table = PauliTable::new(n)?;
    let order = table.columns();
    let classes = ClassInfo::new(
        format!("P~{n}"),
        order
            .iter()
            .map(|x| crate::chars::ConjClass {
                size: 1,
                element_order: if x.is_zero() { 1 } else { 2 },
                rep_key: x.bits() as u128,
            })
            .collect(),
        (0..order.len()).collect(),
    );
    let rows = table
        .rows()
        .map(|r| {
            let values = r.into_iter().map(|v| Cyclotomic::from_int(v as i64)).collect();
            (
                Provenance::Pauli,
                ClassFunction::new(classes.clone(), values).expect("row length"),
            )
        })
        .collect();
    CharacterTable::new(classes, rows)
}

/// Dense matrix of `i^k W_x`, qubit 1 as the leftmost tensor factor.
pub fn matrix_oracle(p: &PauliElement) -> Result<DenseMatrix> {
    let n = p.qubits();
    if n > 4 {
        return Err(Error::SizeCap(format!("dense oracle needs n <= 4, got {n}")));
    }
    let x = p.index;
    let mut m = DenseMatrix::identity(1);
    let mut pq = 0u32;
    for q in 0..n {
        let z = x.get(q);
        let xb = x.get(n + q);
        pq += (z && xb) as u32;
        let mut factor = DenseMatrix::identity(2);
        if z {
            factor = factor.mul(&dense::pauli_z());
        }
        if xb {
            factor = factor.mul(&dense::pauli_x());
        }
        m = m.kron(&factor);
    }
    let total = (p.phase as i64 - pq as i64).rem_euclid(4);
    Ok(m.scale(i_power(total as u8)))
}

pub(crate) fn i_power(k: u8) -> Gauss {
    match k & 3 {
        0 => dense::ONE,
        1 => dense::I,
        2 => -dense::ONE,
        _ => -dense::I,
    }
}

/// Orders Pauli elements by index in letter order, then phase.
pub fn cmp_letter_order(a: &PauliElement, b: &PauliElement) -> Ordering {
    letter_order_key(&a.index)
        .cmp(&letter_order_key(&b.index))
        .then(a.phase.cmp(&b.phase))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg2::symp_form_z2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn p(s: &str) -> PauliElement {
        PauliElement::parse(s).unwrap()
    }

    #[test]
    fn z_times_x_is_i_y() {
        let zx = weyl_mul(&p("Z"), &p("X")).unwrap();
        assert_eq!(zx.phase(), 1);
        assert_eq!(zx.index().to_vec(), vec![1, 1]);
        let xz = weyl_mul(&p("X"), &p("Z")).unwrap();
        assert_eq!(xz.phase(), 3);
        assert_eq!(xz.index(), zx.index());
    }

    #[test]
    fn weyl_operators_are_involutions() {
        for n in 1..=3 {
            for x in BitVec::all(2 * n) {
                let w = PauliElement::weyl(x);
                assert!(weyl_mul(&w, &w).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(weyl_mul(&p("X"), &p("XX")).is_err());
    }

    #[test]
    fn associativity_exhaustive_one_qubit() {
        let all: Vec<PauliElement> = (0..4)
            .flat_map(|k| BitVec::all(2).map(move |x| PauliElement::new(k, x)))
            .collect();
        for a in &all {
            for b in &all {
                for c in &all {
                    let l = weyl_mul(&weyl_mul(a, b).unwrap(), c).unwrap();
                    let r = weyl_mul(a, &weyl_mul(b, c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
            assert_eq!(weyl_mul(a, &PauliElement::identity(1)).unwrap(), *a);
        }
    }

    #[test]
    fn associativity_random_two_qubits() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rand_p = |rng: &mut ChaCha8Rng| {
            PauliElement::new(rng.gen_range(0..4), BitVec::from_bits(4, rng.gen_range(0..16)))
        };
        for _ in 0..500 {
            let (a, b, c) = (rand_p(&mut rng), rand_p(&mut rng), rand_p(&mut rng));
            let l = weyl_mul(&weyl_mul(&a, &b).unwrap(), &c).unwrap();
            let r = weyl_mul(&a, &weyl_mul(&b, &c).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn group_order_from_generators() {
        for n in 1..=2 {
            let mut gens = vec![PauliElement::new(1, BitVec::zeros(2 * n))];
            gens.extend((0..2 * n).map(|j| PauliElement::weyl(BitVec::unit(2 * n, j))));
            let mut seen = HashSet::new();
            let mut stack = vec![PauliElement::identity(n)];
            seen.insert(stack[0]);
            while let Some(e) = stack.pop() {
                for g in &gens {
                    let next = weyl_mul(&e, g).unwrap();
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
            assert_eq!(seen.len(), 4usize.pow(n as u32 + 1));
        }
    }

    #[test]
    fn commutator_law() {
        for x in BitVec::all(4) {
            for y in BitVec::all(4) {
                let (a, b) = (PauliElement::weyl(x), PauliElement::weyl(y));
                let ab = weyl_mul(&a, &b).unwrap();
                let ba = weyl_mul(&b, &a).unwrap();
                assert_eq!(ab.index(), ba.index());
                let diff = (ab.phase() + 4 - ba.phase()) % 4;
                assert_eq!(diff, 2 * symp_form_z2(&x, &y).unwrap());
            }
        }
    }

    #[test]
    fn character_values() {
        let triv = PauliCharacter::trivial(1);
        for x in BitVec::all(2) {
            assert_eq!(char_value(&triv, &x).unwrap(), 1);
        }
        let s1 = PauliCharacter::sigma1(1);
        assert_eq!(char_value(&s1, &p("X").index()).unwrap(), -1);
        assert_eq!(char_value(&s1, &p("Z").index()).unwrap(), -1);
        assert_eq!(char_value(&s1, &p("Y").index()).unwrap(), 1);
    }

    #[test]
    fn character_products_add_labels() {
        let a = PauliCharacter::new(BitVec::from_bits(4, 0b0110));
        let b = PauliCharacter::new(BitVec::from_bits(4, 0b1011));
        let ab = a.product(&b).unwrap();
        for x in BitVec::all(4) {
            assert_eq!(
                char_value(&ab, &x).unwrap(),
                char_value(&a, &x).unwrap() * char_value(&b, &x).unwrap()
            );
        }
    }

    #[test]
    fn one_qubit_table_matches_printed() {
        let t = PauliTable::new(1).unwrap();
        let rows: Vec<Vec<i8>> = t.rows().collect();
        assert_eq!(
            rows,
            vec![
                vec![1, 1, 1, 1],
                vec![1, -1, 1, -1],
                vec![1, 1, -1, -1],
                vec![1, -1, -1, 1],
            ]
        );
    }

    #[test]
    fn two_qubit_rows_are_balanced() {
        let t = PauliTable::new(2).unwrap();
        assert_eq!(t.size(), 16);
        for (i, r) in t.rows().enumerate() {
            let plus = r.iter().filter(|&&v| v == 1).count();
            assert_eq!(r[0], 1);
            if i == 0 {
                assert_eq!(plus, 16);
            } else {
                assert_eq!(plus, 8);
                assert_eq!(r.iter().map(|&v| v as i32).sum::<i32>(), 0);
            }
        }
        assert!(PauliTable::new(0).is_err());
        assert!(PauliTable::new(9).is_err());
    }

    #[test]
    fn exact_table_is_orthonormal() {
        let t = pauli_char_table(2).unwrap();
        t.validate().unwrap();
        assert!(pauli_char_table(5).is_err());
    }

    #[test]
    fn oracle_single_qubit_matrices() {
        assert_eq!(matrix_oracle(&p("Z")).unwrap(), dense::pauli_z());
        assert_eq!(matrix_oracle(&p("X")).unwrap(), dense::pauli_x());
        assert_eq!(matrix_oracle(&p("Y")).unwrap(), dense::pauli_y());
        assert!(matrix_oracle(&PauliElement::identity(5)).is_err());
    }

    #[test]
    fn oracle_multiplication_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=2);
            let a = PauliElement::new(rng.gen_range(0..4), BitVec::from_bits(2 * n, rng.gen()));
            let b = PauliElement::new(rng.gen_range(0..4), BitVec::from_bits(2 * n, rng.gen()));
            let prod = weyl_mul(&a, &b).unwrap();
            assert_eq!(
                matrix_oracle(&prod).unwrap(),
                matrix_oracle(&a).unwrap().mul(&matrix_oracle(&b).unwrap())
            );
        }
    }
}
