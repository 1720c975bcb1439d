//! Lifting irreducible characters of 𝒞_n to 𝒞_{n+1}:
//! `χ ↦ Ind_{IN_{n+1}}^{𝒞_{n+1}} ((χ∘φ)~ ⊗ σ₁′)`, where `(χ∘φ)~` is
//! inflated through the quotient map `IN_{n+1} → Sp(2n,2) ⋉ Z₂^{2n}`.

use super::{CharacterTable, ClassFunction, ClassMap, Cyclotomic};
use crate::chars::assemble::CliffordContext;
use crate::error::{Error, Result};
use crate::group::GroupEnumeration;
use crate::inertia::{enumerate_affine, quotient_map, AffineSympElement, Section};

/// The affine group `A_n`, the quotient map onto it from `IN_{n+1}`, and
/// the class transport `A_n → 𝒞_n` induced by `φ`.
pub struct LiftContext<'a> {
    source: &'a CliffordContext,
    target: &'a CliffordContext,
    affine: GroupEnumeration<AffineSympElement>,
    to_affine: ClassMap,
    phi_classes: Vec<usize>,
}

impl<'a> LiftContext<'a> {
    pub fn new(source: &'a CliffordContext, target: &'a CliffordContext) -> Result<Self> {
        let n = source.qubits();
        if target.qubits() != n + 1 {
            return Err(Error::InvalidArgument(format!(
                "lift needs an (n+1)-qubit target, got {} -> {}",
                n,
                target.qubits()
            )));
        }
        let affine = enumerate_affine(n)?;
        let to_affine = target.inertia().group().quotient_onto(&affine, quotient_map)?;
        let section = Section::class_compatible(source.clifford(), &affine)?;
        let phi_classes = phi_class_map(&affine, source, &section)?;
        Ok(LiftContext {
            source,
            target,
            affine,
            to_affine,
            phi_classes,
        })
    }

    pub fn affine(&self) -> &GroupEnumeration<AffineSympElement> {
        &self.affine
    }

    pub fn to_affine(&self) -> &ClassMap {
        &self.to_affine
    }

    /// Affine class → 𝒞_n class of its image under `φ`.
    pub fn phi_classes(&self) -> &[usize] {
        &self.phi_classes
    }

    /// `χ∘φ` as a class function on the affine group.
    pub fn pull_back(&self, chi: &ClassFunction) -> Result<ClassFunction> {
        if chi.info().id() != self.source.info().id() {
            return Err(Error::GroupMismatch(
                chi.info().name().into(),
                self.source.info().name().into(),
            ));
        }
        ClassFunction::new(
            self.affine.info().clone(),
            self.phi_classes.iter().map(|&c| chi.value(c).clone()).collect(),
        )
    }

    /// The lift of an irreducible character, checked irreducible with degree
    /// `(4^{n+1} − 1)·deg χ`.
    pub fn lift(&self, chi: &ClassFunction) -> Result<ClassFunction> {
        if !chi.is_irreducible() {
            return Err(Error::NotIrreducible(format!(
                "⟨χ, χ⟩ = {} for the lift input",
                chi.norm()
            )));
        }
        let pulled = self.pull_back(chi)?;
        let inflated = self.to_affine.inflate(&pulled)?;
        let twisted = inflated.tensor(self.target.sigma())?;
        let lifted = self.target.inertia_fusion().induce(&twisted)?;
        let index = (1i64 << (2 * self.target.qubits())) - 1;
        if lifted.degree() != &chi.degree().mul_int(index) {
            return Err(Error::InvariantViolated(format!(
                "lift has degree {}, expected {index}·{}",
                lifted.degree(),
                chi.degree()
            )));
        }
        if !lifted.is_irreducible() {
            return Err(Error::NotIrreducible(format!("lift has norm {}", lifted.norm())));
        }
        Ok(lifted)
    }

    /// Lifts every row of a table.
    pub fn lift_table(&self, table: &CharacterTable) -> Result<Vec<LiftedRow>> {
        table
            .rows()
            .iter()
            .map(|r| {
                let character = self.lift(&r.character)?;
                Ok(LiftedRow {
                    source_label: r.label.clone(),
                    norm: character.norm(),
                    character,
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct LiftedRow {
    pub source_label: String,
    pub character: ClassFunction,
    /// `⟨χ, χ⟩`, the irreducibility certificate.
    pub norm: Cyclotomic,
}

/// Class of `φ(a)` in 𝒞_n for each affine class, checked constant on every
/// element of every affine class.
pub fn phi_class_map(
    affine: &GroupEnumeration<AffineSympElement>,
    ctx: &CliffordContext,
    section: &Section,
) -> Result<Vec<usize>> {
    let clifford = ctx.clifford();
    let mut out: Vec<Option<usize>> = vec![None; affine.class_count()];
    for (i, a) in affine.elements().iter().enumerate() {
        let img = section.phi(a)?;
        let c = clifford
            .class_of(&img)
            .ok_or_else(|| Error::Internal("φ image outside the Clifford group".into()))?;
        let slot = &mut out[affine.class_of_index(i)];
        match slot {
            None => *slot = Some(c),
            Some(prev) if *prev != c => {
                return Err(Error::ClassIncompatible(format!(
                    "φ sends affine class {} into Clifford classes {prev} and {c}",
                    affine.class_of_index(i)
                )))
            }
            _ => {}
        }
    }
    Ok(out.into_iter().map(|c| c.expect("nonempty class")).collect())
}
