//! The inertia subgroup of the Pauli character `σ₁` (−1 on `X₁` and `Z₁`),
//! its linear extension `σ₁′`, the quotient map onto the affine symplectic
//! group, and the map `φ(x, Γ) = W_x t(Γ)` from the affine group onto 𝒞_n.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::chars::{ClassFunction, ClassInfo, Cyclotomic};
use crate::clifford::{clifford_order, standard_generators, CliffordElement};
use crate::error::{Error, Result};
use crate::group::{ClassRecord, GroupElement, GroupEnumeration, DEFAULT_ELEMENT_BUDGET};
use crate::linalg2::BitVec;
use crate::symplectic::{enumerate_sp, sp_order, transvection_generators, SympMatrix};

/// Index of `X₁Z₁`: bits `p₁` and `q₁`.
#[inline]
pub fn y1_bits(n: usize) -> u64 {
    1 | (1 << n)
}

/// Membership in the inertia subgroup: `Γ y₁ = y₁`.
pub fn is_in_inertia(g: &CliffordElement) -> bool {
    let y = y1_bits(g.qubits());
    g.gamma().apply_bits(y) == y
}

/// Stabiliser test on a bare symplectic matrix.
pub fn fixes_y1(gamma: &SympMatrix) -> bool {
    let y = y1_bits(gamma.qubits());
    gamma.apply_bits(y) == y
}

/// `M = CX₁₂ (Z₁ H₁ X₂) CX₁₂` placed on qubits 1 and 2 of `n`. It acts as
/// `X⊗I ↦ Z⊗X`, `Z⊗I ↦ −X⊗X`, `I⊗X ↦ I⊗X`, `I⊗Z ↦ −Y⊗Y`.
pub fn m_element(n: usize) -> Result<CliffordElement> {
    let h2 = CliffordElement::hadamard(2, 1);
    let cx = h2.mul(&CliffordElement::cz(2, 0, 1))?.mul(&h2)?;
    let z1 = CliffordElement::pauli_embed(&BitVec::unit(4, 0));
    let x2 = CliffordElement::pauli_embed(&BitVec::unit(4, 3));
    let m = cx
        .mul(&z1)?
        .mul(&CliffordElement::hadamard(2, 0))?
        .mul(&x2)?
        .mul(&cx)?;
    m.embed(n, &[0, 1])
}

/// Generators of the inertia subgroup with their `σ₁′` values.
///
/// For `n ≥ 2`: `M`, `H₁`, the `X₁` embed (the only generator with value −1),
/// and `H`, `S`, `CZ` on qubits 2..n. For `n = 1`: `H`, `X`, `Z`.
pub fn inertia_generators_with_values(n: usize) -> Result<Vec<(CliffordElement, i8)>> {
    let x1 = CliffordElement::pauli_embed(&BitVec::unit(2 * n, n));
    if n == 1 {
        let z1 = CliffordElement::pauli_embed(&BitVec::unit(2, 0));
        return Ok(vec![(CliffordElement::hadamard(1, 0), 1), (x1, -1), (z1, -1)]);
    }
    let mut gens = vec![
        (m_element(n)?, 1),
        (CliffordElement::hadamard(n, 0), 1),
        (x1, -1),
    ];
    for q in 1..n {
        gens.push((CliffordElement::hadamard(n, q), 1));
        gens.push((CliffordElement::phase(n, q), 1));
    }
    for a in 1..n {
        for b in a + 1..n {
            gens.push((CliffordElement::cz(n, a, b), 1));
        }
    }
    Ok(gens)
}

pub fn inertia_generators(n: usize) -> Result<Vec<CliffordElement>> {
    Ok(inertia_generators_with_values(n)?
        .into_iter()
        .map(|(g, _)| g)
        .collect())
}

/// `|IN_n| = 2^{2n+1} |𝒞_{n−1}|`, with `|𝒞_0| = 1`.
pub fn inertia_order(n: usize) -> u128 {
    let prev = if n == 1 { 1 } else { clifford_order(n - 1) };
    (1u128 << (2 * n + 1)) * prev
}

/// An element `(v, Γ)` of `Sp(2m,2) ⋉ Z₂^{2m}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineSympElement {
    v: u16,
    gamma: SympMatrix,
}

impl AffineSympElement {
    pub fn new(v: BitVec, gamma: SympMatrix) -> Result<Self> {
        if v.len() != gamma.dim() {
            return Err(Error::LengthMismatch {
                left: gamma.dim(),
                right: v.len(),
            });
        }
        Ok(AffineSympElement {
            v: v.bits() as u16,
            gamma,
        })
    }

    pub(crate) fn from_raw(v: u64, gamma: SympMatrix) -> Self {
        AffineSympElement { v: v as u16, gamma }
    }

    pub fn translation(&self) -> BitVec {
        BitVec::from_bits(self.gamma.dim(), self.v as u64)
    }

    #[inline]
    pub fn translation_bits(&self) -> u64 {
        self.v as u64
    }

    pub fn gamma(&self) -> &SympMatrix {
        &self.gamma
    }

    pub fn qubits(&self) -> usize {
        self.gamma.qubits()
    }

    /// `(v₁, Γ₁)(v₂, Γ₂) = (v₁ + Γ₁ v₂, Γ₁ Γ₂)`.
    pub fn mul(&self, other: &Self) -> Self {
        AffineSympElement {
            v: self.v ^ self.gamma.apply_bits(other.v as u64) as u16,
            gamma: self.gamma.mul(&other.gamma),
        }
    }

    pub fn inv(&self) -> Self {
        let gi = self.gamma.inv();
        AffineSympElement {
            v: gi.apply_bits(self.v as u64) as u16,
            gamma: gi,
        }
    }
}

impl fmt::Debug for AffineSympElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.translation(), self.gamma)
    }
}

impl GroupElement for AffineSympElement {
    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Self {
        self.inv()
    }
    fn key(&self) -> u128 {
        let d = self.gamma.dim();
        self.gamma.pack() | ((self.v as u128) << (d * d))
    }
    fn rank(&self) -> usize {
        self.qubits()
    }
    fn from_key(rank: usize, key: u128) -> Self {
        let d = 2 * rank;
        AffineSympElement {
            v: (key >> (d * d)) as u16,
            gamma: SympMatrix::unpack(rank, key & ((1u128 << (d * d)) - 1)),
        }
    }
    fn identity(rank: usize) -> Self {
        AffineSympElement {
            v: 0,
            gamma: SympMatrix::identity(rank),
        }
    }
}

/// Generators of `Sp(2m,2) ⋉ Z₂^{2m}`: linear transvections and unit
/// translations.
pub fn affine_generators(m: usize) -> Vec<AffineSympElement> {
    let mut gens: Vec<AffineSympElement> = transvection_generators(m)
        .into_iter()
        .map(|t| AffineSympElement::from_raw(0, t))
        .collect();
    for j in 0..2 * m {
        gens.push(AffineSympElement::from_raw(1 << j, SympMatrix::identity(m)));
    }
    gens
}

pub fn enumerate_affine(m: usize) -> Result<GroupEnumeration<AffineSympElement>> {
    if m == 0 || m > 2 {
        return Err(Error::SizeCap(format!(
            "affine symplectic enumeration needs 1 <= m <= 2, got {m}"
        )));
    }
    let g = GroupEnumeration::generate(
        format!("ASp({},2)", 2 * m),
        m,
        affine_generators(m),
        DEFAULT_ELEMENT_BUDGET,
    )?;
    let want = (1u128 << (2 * m)) * sp_order(m);
    if g.order() as u128 != want {
        return Err(Error::InvariantViolated(format!(
            "affine group has {} elements, expected {want}",
            g.order()
        )));
    }
    Ok(g)
}

/// The inertia subgroup with its `σ₁′` values.
pub struct InertiaData {
    n: usize,
    group: GroupEnumeration<CliffordElement>,
    /// `σ₁′` per element index, ±1.
    sigma: Vec<i8>,
}

/// Enumerates IN_n from its generators and propagates `σ₁′` along every
/// generator edge; any conflicting value is an error.
pub fn enumerate_inertia(n: usize, allow_large: bool) -> Result<InertiaData> {
    let cap = if allow_large { 3 } else { 2 };
    if n == 0 || n > cap {
        return Err(Error::SizeCap(format!(
            "inertia enumeration for n = {n} needs {}",
            if n == 3 { "the large-memory opt-in" } else { "1 <= n <= 3" }
        )));
    }
    let gens = inertia_generators_with_values(n)?;
    let group = GroupEnumeration::generate(
        format!("IN{n}"),
        n,
        gens.iter().map(|(g, _)| *g).collect(),
        DEFAULT_ELEMENT_BUDGET,
    )?;
    if group.order() as u128 != inertia_order(n) {
        return Err(Error::InvariantViolated(format!(
            "inertia subgroup has {} elements, expected {}",
            group.order(),
            inertia_order(n)
        )));
    }
    if let Some(bad) = group.elements().iter().find(|g| !is_in_inertia(g)) {
        return Err(Error::InvariantViolated(format!(
            "generated element {bad:?} does not fix y1"
        )));
    }
    let sigma = propagate_sigma(&group, &gens)?;
    Ok(InertiaData { n, group, sigma })
}

pub(crate) fn propagate_sigma(
    group: &GroupEnumeration<CliffordElement>,
    gens: &[(CliffordElement, i8)],
) -> Result<Vec<i8>> {
    let mut sigma = vec![0i8; group.order()];
    let id = group
        .index_of(&CliffordElement::identity(group.rank()))
        .expect("identity present");
    sigma[id] = 1;
    let mut queue = VecDeque::from([id]);
    while let Some(i) = queue.pop_front() {
        let e = group.element(i);
        for (g, v) in gens {
            let j = group.index_of(&e.mul(g)?).expect("closed");
            let val = sigma[i] * v;
            if sigma[j] == 0 {
                sigma[j] = val;
                queue.push_back(j);
            } else if sigma[j] != val {
                return Err(Error::InvariantViolated(format!(
                    "sigma1' is not well defined: conflicting values at {:?}",
                    group.element(j)
                )));
            }
        }
    }
    Ok(sigma)
}

impl InertiaData {
    /// Rebuilds from a cached enumeration and `σ₁′` table.
    pub fn from_parts(group: GroupEnumeration<CliffordElement>, sigma: Vec<i8>) -> Result<Self> {
        if sigma.len() != group.order() || sigma.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Cache("sigma table malformed".into()));
        }
        Ok(InertiaData {
            n: group.rank(),
            group,
            sigma,
        })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &GroupEnumeration<CliffordElement> {
        &self.group
    }

    pub fn sigma_values(&self) -> &[i8] {
        &self.sigma
    }

    /// `σ₁′(g)`.
    pub fn sigma1_prime(&self, g: &CliffordElement) -> Result<i8> {
        self.group
            .index_of(g)
            .map(|i| self.sigma[i])
            .ok_or(Error::NotInInertia)
    }

    /// `σ₁′` as a class function on IN_n (checked constant on classes).
    pub fn sigma_class_function(&self) -> Result<ClassFunction> {
        class_function_from_elements(&self.group, |i| self.sigma[i] as i64)
    }

    /// Checks that IN_n equals `{g ∈ 𝒞_n : Γ_g y₁ = y₁}` elementwise.
    pub fn verify_against_stabilizer(&self, full: &GroupEnumeration<CliffordElement>) -> Result<()> {
        let stab: Vec<u128> = full
            .elements()
            .iter()
            .filter(|g| is_in_inertia(g))
            .map(GroupElement::key)
            .collect();
        if stab != self.group.keys() {
            return Err(Error::InvariantViolated(format!(
                "generated inertia subgroup ({}) differs from the stabiliser of y1 ({})",
                self.group.order(),
                stab.len()
            )));
        }
        Ok(())
    }

    /// The symplectic image `IN_n / Z₂^{2n}`: the stabiliser of `y₁` in Sp.
    pub fn symplectic_quotient(&self) -> Result<GroupEnumeration<SympMatrix>> {
        let gens: Vec<SympMatrix> = self.group.generators().iter().map(|g| *g.gamma()).collect();
        let q = GroupEnumeration::generate(
            format!("IN{}/Z2^{}", self.n, 2 * self.n),
            self.n,
            gens,
            DEFAULT_ELEMENT_BUDGET,
        )?;
        if (q.order() as u128) << (2 * self.n) != self.group.order() as u128 {
            return Err(Error::InvariantViolated(format!(
                "inertia quotient has order {}",
                q.order()
            )));
        }
        Ok(q)
    }
}

/// Builds a class function from per-element integer values, checking that
/// the values are constant on classes.
pub fn class_function_from_elements<E: GroupElement>(
    group: &GroupEnumeration<E>,
    value: impl Fn(usize) -> i64,
) -> Result<ClassFunction> {
    let info: &Arc<ClassInfo> = group.info();
    let mut vals: Vec<Option<i64>> = vec![None; group.class_count()];
    for i in 0..group.order() {
        let c = group.class_of_index(i);
        let v = value(i);
        match vals[c] {
            None => vals[c] = Some(v),
            Some(prev) if prev != v => {
                return Err(Error::ClassIncompatible(format!(
                    "values on {} are not constant on class {c}",
                    group.name()
                )))
            }
            _ => {}
        }
    }
    ClassFunction::new(
        info.clone(),
        vals.into_iter()
            .map(|v| Cyclotomic::from_int(v.expect("nonempty class")))
            .collect(),
    )
}

/// Trailing `2(n−1)` coordinates (qubits 2..n) of an n-qubit index.
fn trailing(n: usize, x: u64) -> u64 {
    let m = n - 1;
    let mask = (1u64 << m) - 1;
    ((x >> 1) & mask) | (((x >> (n + 1)) & mask) << m)
}

/// Places a `2(n−1)`-bit index on qubits 2..n.
fn untrailing(n: usize, v: u64) -> u64 {
    let m = n - 1;
    let mask = (1u64 << m) - 1;
    ((v & mask) << 1) | (((v >> m) & mask) << (n + 1))
}

/// The quotient map `IN_n → Sp(2(n−1),2) ⋉ Z₂^{2(n−1)}`.
///
/// `v` is the trailing index of the image of `X₁`; column `j` of `Γ′` is the
/// trailing index of the image of `X₁ ⊗ W_{e_j}` minus `v`. The image of `Z₁`
/// must carry the same trailing index.
pub fn quotient_map(g: &CliffordElement) -> Result<AffineSympElement> {
    let n = g.qubits();
    if n < 2 {
        return Err(Error::InvalidArgument("quotient map needs n >= 2".into()));
    }
    if !is_in_inertia(g) {
        return Err(Error::NotInInertia);
    }
    let x1 = 1u64 << n;
    let z1 = 1u64;
    let (_, img_x) = g.apply_bits(0, x1)?;
    let (_, img_z) = g.apply_bits(0, z1)?;
    let v = trailing(n, img_x);
    if trailing(n, img_z) != v {
        return Err(Error::InvariantViolated(
            "X1 and Z1 images disagree on the trailing qubits".into(),
        ));
    }
    let m = n - 1;
    let cols: Vec<u64> = (0..2 * m)
        .map(|j| {
            let (_, img) = g.apply_bits(0, x1 | untrailing(n, 1 << j))?;
            Ok(trailing(n, img) ^ v)
        })
        .collect::<Result<_>>()?;
    Ok(AffineSympElement::from_raw(v, SympMatrix::from_columns(m, &cols)?))
}

/// `φ(x, Γ) = W_x (Γ, 0)`, with the zero-sign section `t(Γ) = (Γ, 0)`.
pub fn phi_map(x: &BitVec, gamma: &SympMatrix) -> Result<CliffordElement> {
    if x.len() != gamma.dim() {
        return Err(Error::LengthMismatch {
            left: gamma.dim(),
            right: x.len(),
        });
    }
    CliffordElement::pauli_embed(x).mul(&CliffordElement::from_raw(*gamma, 0))
}

/// [`phi_map`] on an affine element.
pub fn phi(a: &AffineSympElement) -> Result<CliffordElement> {
    phi_map(&a.translation(), a.gamma())
}

/// A section `t: Sp(2n,2) → 𝒞_n` under which `φ(x, Γ) = W_x t(Γ)` carries
/// affine conjugacy classes bijectively onto Clifford conjugacy classes.
///
/// For each class representative `Γ₀` of Sp, `t(Γ₀) = W_z (Γ₀, 0)` with the
/// smallest `z` that makes the fibre over `Γ₀` class-compatible; elsewhere
/// `t(TΓ₀T⁻¹) = T t(Γ₀) T⁻¹` along a conjugation tree, so `φ` intertwines
/// conjugation by `(0, Γ_T)` with conjugation by `T`. The zero-sign section
/// `(Γ, 0)` already fails this for one qubit. For `n ≥ 2` no section is a
/// homomorphism (see [`homomorphic_section`]), so element orders are not
/// preserved, only classes.
pub struct Section {
    n: usize,
    images: HashMap<u128, CliffordElement>,
    shifts: Vec<u64>,
}

impl Section {
    /// The section with the smallest compatible shift at every class
    /// representative.
    pub fn class_compatible(
        clifford: &GroupEnumeration<CliffordElement>,
        affine: &GroupEnumeration<AffineSympElement>,
    ) -> Result<Self> {
        let shifts: Vec<u64> = compatible_shifts(clifford, affine)?
            .into_iter()
            .map(|opts| opts[0].0)
            .collect();
        Self::from_shifts(clifford.rank(), &shifts)
    }

    /// The section with `t(Γ₀) = W_z (Γ₀, 0)` at the `c`-th class
    /// representative of `enumerate_sp(n)`, `z = shifts[c]`, extended by
    /// conjugation. Class compatibility is not checked here.
    pub fn from_shifts(n: usize, shifts: &[u64]) -> Result<Self> {
        let sp = enumerate_sp(n)?;
        if shifts.len() != sp.class_count() {
            return Err(Error::InvalidArgument(format!(
                "{} shifts for {} symplectic classes",
                shifts.len(),
                sp.class_count()
            )));
        }
        let gens: Vec<CliffordElement> = standard_generators(n)
            .into_iter()
            .filter(|g| !g.gamma().is_identity())
            .collect();
        let mut images = HashMap::with_capacity(sp.order());
        for (c, &z) in shifts.iter().enumerate() {
            let g0 = *sp.class_rep(c);
            let t0 = lift(&g0, z)?;
            images.insert(g0.pack(), t0);
            let mut queue = VecDeque::from([(g0, CliffordElement::identity(n))]);
            while let Some((gamma, t)) = queue.pop_front() {
                for g in &gens {
                    let gi = g.gamma();
                    let next = gi.mul(&gamma).mul(&gi.inv());
                    if images.contains_key(&next.pack()) {
                        continue;
                    }
                    let tn = g.mul(&t)?;
                    images.insert(next.pack(), tn.mul(&t0)?.mul(&tn.inv())?);
                    queue.push_back((next, tn));
                }
            }
        }
        if images.len() != sp.order() {
            return Err(Error::Internal(format!(
                "section covers {} of {} symplectic matrices",
                images.len(),
                sp.order()
            )));
        }
        Ok(Section {
            n,
            images,
            shifts: shifts.to_vec(),
        })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    /// Pauli shift chosen at each Sp class representative.
    pub fn shifts(&self) -> &[u64] {
        &self.shifts
    }

    pub fn t(&self, gamma: &SympMatrix) -> Result<&CliffordElement> {
        self.images
            .get(&gamma.pack())
            .ok_or_else(|| Error::InvalidArgument(format!("{gamma:?} is not in the section domain")))
    }

    /// `φ(x, Γ) = W_x t(Γ)`.
    pub fn phi(&self, a: &AffineSympElement) -> Result<CliffordElement> {
        CliffordElement::pauli_embed(&a.translation()).mul(self.t(a.gamma())?)
    }

    /// Re-chooses `t(Γ)` on the stabiliser of `y₁` so that `σ₁′(t(Γ)) = 1`,
    /// using only Pauli shifts `w` with `W_{x+w} t(Γ) ~ W_x t(Γ)` for all
    /// `x`, which keep the class transport intact. Returns the number of
    /// matrices that could not be normalised.
    pub fn normalize_sigma(
        &mut self,
        clifford: &GroupEnumeration<CliffordElement>,
        inertia: &InertiaData,
    ) -> Result<usize> {
        let n = self.n;
        let y1 = y1_bits(n);
        let pauli = |x: u64| CliffordElement::pauli_embed(&BitVec::from_bits(2 * n, x));
        let mut failed = 0;
        for (key, t) in self.images.iter_mut() {
            let gamma = SympMatrix::unpack(n, *key);
            if gamma.apply_bits(y1) != y1 || inertia.sigma1_prime(t)? == 1 {
                continue;
            }
            let fibre: Vec<Option<usize>> = (0..1u64 << (2 * n))
                .map(|x| Ok(clifford.class_of(&pauli(x).mul(t)?)))
                .collect::<Result<_>>()?;
            let mut fixed = None;
            for w in 1..1u64 << (2 * n) {
                let cand = pauli(w).mul(t)?;
                if inertia.sigma1_prime(&cand)? != 1 {
                    continue;
                }
                let mut same = true;
                for x in 0..1u64 << (2 * n) {
                    if clifford.class_of(&pauli(x).mul(&cand)?) != fibre[x as usize] {
                        same = false;
                        break;
                    }
                }
                if same {
                    fixed = Some(cand);
                    break;
                }
            }
            match fixed {
                Some(c) => *t = c,
                None => failed += 1,
            }
        }
        Ok(failed)
    }

    /// Whether `σ₁′(φ(x, Γ))` equals `σ₁″(x, Γ) = (−1)^{⟨x, y₁⟩}` on the
    /// affine stabiliser of `y₁`, the `n`-qubit analogue of the inertia
    /// character. Diagnostic only: the section is chosen for class transport.
    pub fn sigma_compatible(&self, inertia: &InertiaData) -> Result<bool> {
        let n = self.n;
        if inertia.qubits() != n {
            return Err(Error::InvalidArgument("inertia data on the wrong rank".into()));
        }
        let y1 = y1_bits(n);
        for (gamma, t) in &self.images {
            let gamma = SympMatrix::unpack(n, *gamma);
            if gamma.apply_bits(y1) != y1 {
                continue;
            }
            for x in 0..1u64 << (2 * n) {
                let img = CliffordElement::pauli_embed(&BitVec::from_bits(2 * n, x)).mul(t)?;
                let want = if (x & y1).count_ones().is_multiple_of(2) { 1 } else { -1 };
                if inertia.sigma1_prime(&img)? != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn lift(gamma: &SympMatrix, z: u64) -> Result<CliffordElement> {
    let n = gamma.qubits();
    CliffordElement::pauli_embed(&BitVec::from_bits(2 * n, z)).mul(&CliffordElement::from_raw(*gamma, 0))
}

/// Compatible `(shift, class pairs)` choices for one Sp class.
pub type FibreOptions = Vec<(u64, Vec<(usize, usize)>)>;

/// For each class representative `Γ₀` of `enumerate_sp(n)`, every shift `z`
/// for which `x ↦ class(W_{x+z} (Γ₀, 0))` is constant on the affine classes
/// met by the fibre `{(x, Γ₀)}` and injective on them, with the resulting
/// `(affine class, Clifford class)` pairs. These pairs are the whole class
/// map over the Sp class of `Γ₀`.
pub fn compatible_shifts(
    clifford: &GroupEnumeration<CliffordElement>,
    affine: &GroupEnumeration<AffineSympElement>,
) -> Result<Vec<FibreOptions>> {
    let n = clifford.rank();
    if affine.rank() != n {
        return Err(Error::GroupMismatch(clifford.name().into(), affine.name().into()));
    }
    let sp = enumerate_sp(n)?;
    (0..sp.class_count())
        .map(|c| {
            let g0 = *sp.class_rep(c);
            let mut opts = Vec::new();
            for z in 0..1u64 << (2 * n) {
                if let Some(pairs) = fibre_class_map(clifford, affine, &g0, z)? {
                    opts.push((z, pairs));
                }
            }
            if opts.is_empty() {
                return Err(Error::ClassIncompatible(format!(
                    "no Pauli shift makes the fibre over {g0:?} class-compatible"
                )));
            }
            Ok(opts)
        })
        .collect()
}

fn fibre_class_map(
    clifford: &GroupEnumeration<CliffordElement>,
    affine: &GroupEnumeration<AffineSympElement>,
    g0: &SympMatrix,
    z: u64,
) -> Result<Option<Vec<(usize, usize)>>> {
    let n = clifford.rank();
    let mut forward: HashMap<usize, usize> = HashMap::new();
    let mut backward: HashMap<usize, usize> = HashMap::new();
    for x in 0..1u64 << (2 * n) {
        let a = AffineSympElement::from_raw(x, *g0);
        let img = lift(g0, x ^ z)?;
        let ca = affine
            .class_of(&a)
            .ok_or_else(|| Error::Internal("fibre element outside the affine group".into()))?;
        let cc = clifford
            .class_of(&img)
            .ok_or_else(|| Error::Internal("lift outside the Clifford group".into()))?;
        if *forward.entry(ca).or_insert(cc) != cc || *backward.entry(cc).or_insert(ca) != ca {
            return Ok(None);
        }
    }
    let mut pairs: Vec<(usize, usize)> = forward.into_iter().collect();
    pairs.sort_unstable();
    Ok(Some(pairs))
}

/// A homomorphic section of `Sp(2n,2)` into `𝒞_n`, if one exists; its
/// existence is equivalent to the Pauli extension splitting.
///
/// Exhaustive: every lift of a generating pair `(a, b)` is `W_u (a, 0)`,
/// `W_v (b, 0)` projectively, and a homomorphism is fixed by those images.
pub fn homomorphic_section(n: usize) -> Result<Option<HashMap<u128, CliffordElement>>> {
    let sp = enumerate_sp(n)?;
    let (a, b) = generating_pair(&sp)?;
    for u in 0..1u64 << (2 * n) {
        for v in 0..1u64 << (2 * n) {
            let gens = [(a, lift(&a, u)?), (b, lift(&b, v)?)];
            if let Some(images) = extend(n, &gens, sp.order())? {
                return Ok(Some(images));
            }
        }
    }
    Ok(None)
}

/// The first pair of Sp elements, taken by decreasing element order, that
/// generates the whole group.
fn generating_pair(sp: &GroupEnumeration<SympMatrix>) -> Result<(SympMatrix, SympMatrix)> {
    if sp.order() == 1 {
        let id = *sp.element(0);
        return Ok((id, id));
    }
    let mut reps: Vec<&ClassRecord> = sp.classes().iter().collect();
    reps.sort_by_key(|c| std::cmp::Reverse(c.element_order));
    for ca in &reps {
        let a = *sp.element(ca.rep);
        for e in sp.elements() {
            if closure_size(&[a, *e], sp.order()) == sp.order() {
                return Ok((a, *e));
            }
        }
    }
    Err(Error::Internal("Sp is not 2-generated".into()))
}

fn closure_size(gens: &[SympMatrix], cap: usize) -> usize {
    let n = gens[0].qubits();
    let id = SympMatrix::identity(n);
    let mut seen = HashSet::from([id.pack()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let next = h.mul(&g);
            if seen.insert(next.pack()) {
                if seen.len() > cap {
                    return seen.len();
                }
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

/// Extends generator lifts along the Cayley graph; `None` if some relation
/// fails projectively.
fn extend(
    n: usize,
    gens: &[(SympMatrix, CliffordElement)],
    order: usize,
) -> Result<Option<HashMap<u128, CliffordElement>>> {
    let id = SympMatrix::identity(n);
    let mut images = HashMap::with_capacity(order);
    images.insert(id.pack(), CliffordElement::identity(n));
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        let tg = images[&g.pack()];
        for (h, th) in gens {
            let next = h.mul(&g);
            let tn = th.mul(&tg)?;
            match images.get(&next.pack()) {
                Some(prev) if prev.pack() != tn.pack() => return Ok(None),
                Some(_) => {}
                None => {
                    images.insert(next.pack(), tn);
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(Some(images))
}
