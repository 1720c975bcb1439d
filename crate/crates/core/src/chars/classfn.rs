//! Class data, class functions, class maps between groups, and character
//! tables with their validation.

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// One conjugacy class as seen by character code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub size: u64,
    pub element_order: u32,
    /// Packed encoding of the class representative (minimum in its class).
    pub rep_key: u128,
}

/// Class data of one finite group. Shared by every class function on it;
/// two `ClassInfo`s are the same group only if they are the same allocation.
#[derive(Debug)]
pub struct ClassInfo {
    id: u64,
    name: String,
    order: u64,
    classes: Vec<ConjClass>,
    inverse: Vec<usize>,
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

impl ClassInfo {
    /// `inverse[i]` is the class of inverses of class `i`. Class 0 must be
    /// the identity.
    pub fn new(name: impl Into<String>, classes: Vec<ConjClass>, inverse: Vec<usize>) -> Arc<Self> {
        assert_eq!(classes.len(), inverse.len(), "inverse map length");
        assert!(
            classes.first().is_some_and(|c| c.size == 1 && c.element_order == 1),
            "class 0 must be the identity"
        );
        let order = classes.iter().map(|c| c.size).sum();
        Arc::new(ClassInfo {
            id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
            name: name.into(),
            order,
            classes,
            inverse,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ConjClass {
        &self.classes[i]
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn centralizer_order(&self, i: usize) -> u64 {
        self.order / self.classes[i].size
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1u64, |acc, c| {
            num_integer::lcm(acc, c.element_order as u64)
        })
    }

    fn same(&self, other: &ClassInfo) -> bool {
        self.id == other.id
    }
}

fn check_same(a: &ClassInfo, b: &ClassInfo) -> Result<()> {
    if a.same(b) {
        Ok(())
    } else {
        Err(Error::GroupMismatch(a.name.clone(), b.name.clone()))
    }
}

/// An exact class function.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    info: Arc<ClassInfo>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.info.same(&other.info) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(info: Arc<ClassInfo>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != info.len() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: info.len(),
            });
        }
        Ok(ClassFunction { info, values })
    }

    pub fn from_ints(info: Arc<ClassInfo>, values: &[i64]) -> Result<Self> {
        Self::new(info, values.iter().map(|&v| Cyclotomic::from_int(v)).collect())
    }

    pub fn trivial(info: Arc<ClassInfo>) -> Self {
        let values = vec![Cyclotomic::one(); info.len()];
        ClassFunction { info, values }
    }

    pub fn info(&self) -> &Arc<ClassInfo> {
        &self.info
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Degree as a positive integer, if it is one.
    pub fn degree_u64(&self) -> Option<u64> {
        self.degree().to_i64().and_then(|d| u64::try_from(d).ok()).filter(|&d| d > 0)
    }

    /// Values as machine integers when all values are rational integers.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.values.iter().map(Cyclotomic::to_i64).collect()
    }

    /// `(1/|G|) Σ_c |c| χ(c) conj(ψ(c))`.
    pub fn inner_product(&self, other: &Self) -> Result<Cyclotomic> {
        check_same(&self.info, &other.info)?;
        let mut acc = Cyclotomic::zero();
        for (c, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let term = (a * &b.conj()).mul_int(self.info.classes[c].size as i64);
            acc = &acc + &term;
        }
        Ok(acc.div_int(self.info.order as i64))
    }

    pub fn norm(&self) -> Cyclotomic {
        self.inner_product(self).expect("same group")
    }

    pub fn is_irreducible(&self) -> bool {
        self.norm().to_i64() == Some(1) && self.degree_u64().is_some()
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        check_same(&self.info, &other.info)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ClassFunction {
            info: self.info.clone(),
            values,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.info, &other.info)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction {
            info: self.info.clone(),
            values,
        })
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            info: self.info.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    /// Same values on another allocation of identical class data, e.g. a
    /// table reloaded from elsewhere.
    pub fn rebind(&self, info: Arc<ClassInfo>) -> Result<Self> {
        Self::new(info, self.values.clone())
    }
}

/// How a [`ClassMap`] relates its two groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    /// Source is a subgroup of target; the map is class fusion.
    Fusion,
    /// Target is a quotient of source; the map sends classes to image classes.
    Quotient,
}

/// A verified map from the classes of one group to those of another.
#[derive(Clone, Debug)]
pub struct ClassMap {
    kind: MapKind,
    source: Arc<ClassInfo>,
    target: Arc<ClassInfo>,
    image: Vec<usize>,
}

impl ClassMap {
    /// Callers are responsible for having verified that `image` comes from
    /// an injective homomorphism (fusion) or a surjective one (quotient).
    pub fn new(
        kind: MapKind,
        source: Arc<ClassInfo>,
        target: Arc<ClassInfo>,
        image: Vec<usize>,
    ) -> Result<Self> {
        if image.len() != source.len() || image.iter().any(|&c| c >= target.len()) {
            return Err(Error::ClassIncompatible(format!(
                "class map {} -> {} has malformed image",
                source.name, target.name
            )));
        }
        match kind {
            MapKind::Fusion => {
                if !target.order.is_multiple_of(source.order) {
                    return Err(Error::NotSubgroup(format!(
                        "|{}| = {} does not divide |{}| = {}",
                        source.name, source.order, target.name, target.order
                    )));
                }
            }
            MapKind::Quotient => {
                if !source.order.is_multiple_of(target.order) {
                    return Err(Error::ClassIncompatible(format!(
                        "{} is not a quotient of {}",
                        target.name, source.name
                    )));
                }
                let mut hit = vec![false; target.len()];
                for &c in &image {
                    hit[c] = true;
                }
                if hit.iter().any(|h| !h) {
                    return Err(Error::ClassIncompatible(format!(
                        "quotient map onto {} is not surjective",
                        target.name
                    )));
                }
            }
        }
        Ok(ClassMap {
            kind,
            source,
            target,
            image,
        })
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn source(&self) -> &Arc<ClassInfo> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ClassInfo> {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Restriction of a class function on the larger group to the subgroup.
    pub fn restrict(&self, chi: &ClassFunction) -> Result<ClassFunction> {
        self.expect(MapKind::Fusion)?;
        check_same(&chi.info, &self.target)?;
        let values = self.image.iter().map(|&c| chi.values[c].clone()).collect();
        ClassFunction::new(self.source.clone(), values)
    }

    /// `Ind χ(c) = [G:H]/|c| · Σ_{D → c} |D| χ(D)`.
    pub fn induce(&self, chi: &ClassFunction) -> Result<ClassFunction> {
        self.expect(MapKind::Fusion)?;
        check_same(&chi.info, &self.source)?;
        let index = (self.target.order / self.source.order) as i64;
        let mut sums = vec![Cyclotomic::zero(); self.target.len()];
        for (d, &c) in self.image.iter().enumerate() {
            let term = chi.values[d].mul_int(self.source.classes[d].size as i64);
            sums[c] = &sums[c] + &term;
        }
        let values = sums
            .into_iter()
            .enumerate()
            .map(|(c, s)| {
                s.scale(&BigRational::new(
                    index.into(),
                    (self.target.classes[c].size as i64).into(),
                ))
            })
            .collect();
        ClassFunction::new(self.target.clone(), values)
    }

    /// Pulls a class function on the quotient back to the source group.
    pub fn inflate(&self, chi: &ClassFunction) -> Result<ClassFunction> {
        self.expect(MapKind::Quotient)?;
        check_same(&chi.info, &self.target)?;
        let values = self.image.iter().map(|&c| chi.values[c].clone()).collect();
        ClassFunction::new(self.source.clone(), values)
    }

    /// Source classes lying in the kernel (mapping to the identity class).
    pub fn kernel_classes(&self) -> Vec<usize> {
        self.expect(MapKind::Quotient).expect("quotient map");
        (0..self.image.len()).filter(|&c| self.image[c] == 0).collect()
    }

    fn expect(&self, kind: MapKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "operation needs a {kind:?} map, got {:?}",
                self.kind
            )))
        }
    }
}

/// Where a table row came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Pauli,
    Inflated,
    Induced,
    Dixon,
    Lifted,
    Reference,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Pauli => "pauli",
            Provenance::Inflated => "inflated",
            Provenance::Induced => "induced",
            Provenance::Dixon => "dixon",
            Provenance::Lifted => "lifted",
            Provenance::Reference => "reference",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub provenance: Provenance,
    pub label: String,
    pub character: ClassFunction,
}

/// Class data plus a family of irreducible characters.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    info: Arc<ClassInfo>,
    rows: Vec<TableRow>,
}

impl CharacterTable {
    /// Builds a table; rows get default labels `χ1, χ2, ...` in given order.
    pub fn new(info: Arc<ClassInfo>, rows: Vec<(Provenance, ClassFunction)>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, (provenance, character))| TableRow {
                provenance,
                label: format!("χ{}", i + 1),
                character,
            })
            .collect();
        Self::from_rows(info, rows)
    }

    pub fn from_rows(info: Arc<ClassInfo>, rows: Vec<TableRow>) -> Result<Self> {
        for r in &rows {
            check_same(&r.character.info, &info)?;
        }
        Ok(CharacterTable { info, rows })
    }

    pub fn info(&self) -> &Arc<ClassInfo> {
        &self.info
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    pub fn rows_mut(&mut self) -> &mut [TableRow] {
        &mut self.rows
    }

    pub fn row(&self, i: usize) -> &ClassFunction {
        &self.rows[i].character
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| r.character.degree_u64().unwrap_or(0))
            .collect()
    }

    /// Degrees sorted ascending.
    pub fn degree_multiset(&self) -> Vec<u64> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    /// Index of a row equal to `chi`, if any.
    pub fn find_row(&self, chi: &ClassFunction) -> Option<usize> {
        self.rows.iter().position(|r| r.character == *chi)
    }

    /// Sorts rows by degree, then values lexicographically, then provenance.
    pub fn sort_rows(&mut self) {
        self.rows.sort_by(row_cmp);
    }

    /// Checks orthonormality of rows, column orthogonality, `Σ d² = |G|` and
    /// that there are as many rows as classes.
    pub fn validate(&self) -> Result<()> {
        let k = self.info.len();
        if self.rows.len() != k {
            return Err(Error::InvariantViolated(format!(
                "{}: {} rows for {} classes",
                self.info.name,
                self.rows.len(),
                k
            )));
        }
        let mut sum_sq: u64 = 0;
        for (i, r) in self.rows.iter().enumerate() {
            let d = r.character.degree_u64().ok_or_else(|| {
                Error::InvariantViolated(format!(
                    "{}: row {i} has degree {} which is not a positive integer",
                    self.info.name,
                    r.character.degree()
                ))
            })?;
            sum_sq += d * d;
        }
        if sum_sq != self.info.order {
            return Err(Error::InvariantViolated(format!(
                "{}: sum of squared degrees {} != order {}",
                self.info.name, sum_sq, self.info.order
            )));
        }
        for i in 0..k {
            for j in i..k {
                let ip = self.row(i).inner_product(self.row(j))?;
                let want = if i == j { 1 } else { 0 };
                if ip.to_i64() != Some(want) {
                    return Err(Error::InvariantViolated(format!(
                        "{}: <row {i}, row {j}> = {ip}, expected {want}",
                        self.info.name
                    )));
                }
            }
        }
        for c in 0..k {
            for c2 in c..k {
                let mut acc = Cyclotomic::zero();
                for r in &self.rows {
                    let v = r.character.value(c) * &r.character.value(c2).conj();
                    acc = &acc + &v;
                }
                let want = if c == c2 {
                    self.info.centralizer_order(c) as i64
                } else {
                    0
                };
                if acc.to_i64() != Some(want) {
                    return Err(Error::InvariantViolated(format!(
                        "{}: column sum ({c}, {c2}) = {acc}, expected {want}",
                        self.info.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Multiplicities `<ψ, χ_i>` of every row in a class function.
    pub fn decompose(&self, psi: &ClassFunction) -> Result<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|r| {
                let ip = psi.inner_product(&r.character)?;
                ip.to_rational().ok_or_else(|| {
                    Error::InvariantViolated(format!("non-rational multiplicity {ip}"))
                })
            })
            .collect()
    }

    /// True if `psi` is one of the rows' characters, checked by inner products.
    pub fn contains_irreducible(&self, psi: &ClassFunction) -> Result<bool> {
        let m = self.decompose(psi)?;
        let ones = m.iter().filter(|x| x.is_one()).count();
        Ok(ones == 1 && m.iter().all(|x| x.is_zero() || x.is_one()))
    }
}

pub(crate) fn row_cmp(a: &TableRow, b: &TableRow) -> Ordering {
    let (x, y) = (&a.character, &b.character);
    x.degree()
        .canonical_cmp(y.degree())
        .then_with(|| {
            for (u, v) in x.values().iter().zip(y.values()) {
                let o = v.canonical_cmp(u);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
        .then(a.provenance.cmp(&b.provenance))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// S3 ≅ Sp(2,2) class data: identity, involutions, 3-cycles.
    pub(crate) fn s3_info() -> Arc<ClassInfo> {
        ClassInfo::new(
            "S3",
            vec![
                ConjClass { size: 1, element_order: 1, rep_key: 0 },
                ConjClass { size: 3, element_order: 2, rep_key: 1 },
                ConjClass { size: 2, element_order: 3, rep_key: 2 },
            ],
            vec![0, 1, 2],
        )
    }

    pub(crate) fn s3_table(info: &Arc<ClassInfo>) -> CharacterTable {
        let rows = [[1, 1, 1], [1, -1, 1], [2, 0, -1]]
            .iter()
            .map(|r| (Provenance::Reference, ClassFunction::from_ints(info.clone(), r).unwrap()))
            .collect();
        CharacterTable::new(info.clone(), rows).unwrap()
    }

    #[test]
    fn s3_table_validates() {
        let info = s3_info();
        let t = s3_table(&info);
        t.validate().unwrap();
        assert_eq!(t.degree_multiset(), vec![1, 1, 2]);
        assert_eq!(info.exponent(), 6);
        assert_eq!(info.centralizer_order(1), 2);
    }

    #[test]
    fn printed_rows_are_orthogonal() {
        let info = s3_info();
        let t = s3_table(&info);
        assert!(t.row(0).inner_product(t.row(1)).unwrap().is_zero());
        assert_eq!(t.row(2).norm().to_i64(), Some(1));
        let triv = ClassFunction::trivial(info);
        assert_eq!(triv.norm().to_i64(), Some(1));
    }

    #[test]
    fn broken_table_is_rejected() {
        let info = s3_info();
        let rows = [[1, 1, 1], [1, -1, 1], [2, 0, 1]]
            .iter()
            .map(|r| (Provenance::Reference, ClassFunction::from_ints(info.clone(), r).unwrap()))
            .collect();
        let t = CharacterTable::new(info, rows).unwrap();
        assert!(t.validate().is_err());
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let a = ClassFunction::trivial(s3_info());
        let b = ClassFunction::trivial(s3_info());
        assert!(matches!(a.inner_product(&b), Err(Error::GroupMismatch(..))));
    }

    #[test]
    fn induce_from_trivial_subgroup_gives_regular_character() {
        let g = s3_info();
        let h = ClassInfo::new(
            "1",
            vec![ConjClass { size: 1, element_order: 1, rep_key: 0 }],
            vec![0],
        );
        let fusion = ClassMap::new(MapKind::Fusion, h.clone(), g.clone(), vec![0]).unwrap();
        let reg = fusion.induce(&ClassFunction::trivial(h)).unwrap();
        assert_eq!(reg.to_ints().unwrap(), vec![6, 0, 0]);
        // Frobenius reciprocity against each irreducible.
        let t = s3_table(&g);
        for r in t.rows() {
            let lhs = reg.inner_product(&r.character).unwrap();
            let res = fusion.restrict(&r.character).unwrap();
            let rhs = res.inner_product(&ClassFunction::trivial(fusion.source().clone())).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inflate_from_sign_quotient() {
        let g = s3_info();
        let q = ClassInfo::new(
            "Z2",
            vec![
                ConjClass { size: 1, element_order: 1, rep_key: 0 },
                ConjClass { size: 1, element_order: 2, rep_key: 1 },
            ],
            vec![0, 1],
        );
        let map = ClassMap::new(MapKind::Quotient, g.clone(), q.clone(), vec![0, 1, 0]).unwrap();
        let sign = ClassFunction::from_ints(q, &[1, -1]).unwrap();
        let inf = map.inflate(&sign).unwrap();
        assert_eq!(inf.to_ints().unwrap(), vec![1, -1, 1]);
        assert_eq!(map.kernel_classes(), vec![0, 2]);
        assert!(map.induce(&inf).is_err());
    }

    #[test]
    fn tensor_with_trivial_is_identity() {
        let info = s3_info();
        let t = s3_table(&info);
        let triv = ClassFunction::trivial(info);
        for r in t.rows() {
            assert_eq!(r.character.tensor(&triv).unwrap(), r.character);
        }
        let sq = t.row(1).tensor(t.row(1)).unwrap();
        assert_eq!(sq, *t.row(0));
    }
}
