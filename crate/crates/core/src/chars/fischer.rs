//! The affine symplectic group `A_n = Sp(2n,2) ⋉ Z₂^{2n}` has the same
//! character table as 𝒞_n, although the groups differ for `n > 1`. Its table
//! is assembled from the orbit structure on translation characters and
//! compared with Irr(𝒞_n) through the class bijection induced by `φ`.

use std::collections::HashMap;

use super::{dixon_table, CharacterTable, ClassFunction, Cyclotomic, Provenance, TableRow};
use crate::chars::assemble::{assemble_with, CliffordContext};
use crate::chars::lift::phi_class_map;
use crate::chars::matching::integer_matrix;
use crate::error::{Error, Result};
use crate::group::GroupEnumeration;
use crate::inertia::{
    class_function_from_elements, compatible_shifts, FibreOptions, enumerate_affine, y1_bits, AffineSympElement, Section,
};

/// Irr(A_n) by the affine assembly: inflations from Sp(2n,2) for the trivial
/// translation character, and `Ind_{I_A}^{A_n}(σ₁″ ⊗ ψ~)` for the single
/// nontrivial orbit, where `I_A = {(x, Γ) : Γy₁ = y₁}`,
/// `σ₁″(x, Γ) = (−1)^{x·y₁}` and `ψ` runs over Irr(Stab_Sp(y₁)).
pub fn affine_assembly(affine: &GroupEnumeration<AffineSympElement>) -> Result<CharacterTable> {
    let n = affine.rank();
    let y1 = y1_bits(n);
    let sp = affine.subgroup(format!("Sp({},2)", 2 * n), |a| a.translation_bits() == 0)?;
    let stab_sp = sp.subgroup("Stab(y1)", |a| a.gamma().apply_bits(y1) == y1)?;
    let ia = affine.subgroup("I_A", |a| a.gamma().apply_bits(y1) == y1)?;
    let to_sp = affine.quotient_onto(&sp, |a| Ok(AffineSympElement::from_raw(0, *a.gamma())))?;
    let ia_to_stab = ia.quotient_onto(&stab_sp, |a| Ok(AffineSympElement::from_raw(0, *a.gamma())))?;
    let ia_fusion = ia.fusion_into(affine)?;
    let sigma = class_function_from_elements(&ia, |i| {
        if (ia.element(i).translation_bits() & y1).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    })?;

    let mut rows = Vec::new();
    for r in dixon_table(&sp)?.rows() {
        rows.push(TableRow {
            provenance: Provenance::Inflated,
            label: format!("Infl({})", r.label),
            character: to_sp.inflate(&r.character)?,
        });
    }
    for r in dixon_table(&stab_sp)?.rows() {
        let twisted = ia_to_stab.inflate(&r.character)?.tensor(&sigma)?;
        rows.push(TableRow {
            provenance: Provenance::Induced,
            label: format!("Ind(σ1″⊗{})", r.label),
            character: ia_fusion.induce(&twisted)?,
        });
    }
    let mut table = CharacterTable::from_rows(affine.info().clone(), rows)?;
    table.sort_rows();
    table.validate()?;
    Ok(table)
}

/// Outcome of comparing Irr(A_n) with Irr(𝒞_n).
#[derive(Clone, Debug)]
pub struct FischerReport {
    pub n: usize,
    pub affine_table: CharacterTable,
    /// Pauli shift of the section at each Sp class representative.
    pub shifts: Vec<u64>,
    /// Affine class → Clifford class under `φ`.
    pub class_map: Vec<usize>,
    /// Affine row `i` transported along `class_map` is Clifford row `rows[i]`.
    pub rows: Vec<usize>,
    /// Number of class-compatible sections in the searched family.
    pub compatible_sections: u128,
    /// Whether the smallest-shift section already carries the table.
    pub smallest_shift_works: bool,
}

/// Builds Irr(A_n) (Dixon for `n = 1`, the affine assembly for `n = 2`) and
/// looks for a section `t` for which `φ(x, Γ) = W_x t(Γ)` is a class
/// bijection carrying Irr(A_n) row by row onto the assembled Irr(𝒞_n).
///
/// The section family is a Pauli shift per Sp class representative,
/// extended by conjugation. The class map over each Sp class depends only on
/// that shift, so the search backtracks class by class, pruning on the
/// multiset of partial rows. The winning section is then re-checked
/// elementwise.
pub fn fischer_check(ctx: &CliffordContext) -> Result<FischerReport> {
    let n = ctx.qubits();
    let affine = enumerate_affine(n)?;
    let affine_table = if n == 1 {
        dixon_table(&affine)?
    } else {
        affine_assembly(&affine)?
    };
    let clifford_table = assemble_with(ctx)?.table;
    let k = ctx.clifford().class_count();
    if affine.class_count() != k || affine_table.len() != clifford_table.len() {
        return Err(Error::InvariantViolated(format!(
            "{} affine classes against {k} Clifford classes",
            affine.class_count()
        )));
    }
    let a = integer_matrix(&affine_table)?;
    let c = integer_matrix(&clifford_table)?;
    let options = compatible_shifts(ctx.clifford(), &affine)?;
    let compatible_sections = options.iter().map(|o| o.len() as u128).product();

    let mut order: Vec<usize> = (0..options.len()).collect();
    order.sort_by_key(|&i| (options[i].len(), i));
    let mut search = Search {
        a: &a,
        c: &c,
        options: &options,
        order: &order,
        choice: vec![usize::MAX; options.len()],
        map: vec![usize::MAX; k],
    };
    if !search.run(0) {
        return Err(Error::InvariantViolated(
            "no section in the Pauli-shift family makes φ carry Irr(A_n) onto Irr(𝒞_n)".into(),
        ));
    }
    let shifts: Vec<u64> = search.choice.iter().zip(&options).map(|(&i, o)| o[i].0).collect();
    let smallest_shift_works = search.choice.iter().all(|&i| i == 0);
    let section = Section::from_shifts(n, &shifts)?;
    let class_map = phi_class_map(&affine, ctx, &section)?;
    if class_map != search.map {
        return Err(Error::Internal("elementwise φ classes disagree with the fibre search".into()));
    }

    let mut rows = Vec::with_capacity(affine_table.len());
    for r in affine_table.rows() {
        let mut values = vec![Cyclotomic::zero(); k];
        for (a, &cc) in class_map.iter().enumerate() {
            values[cc] = r.character.value(a).clone();
        }
        let moved = ClassFunction::new(ctx.info().clone(), values)?;
        let i = clifford_table.find_row(&moved).ok_or_else(|| {
            Error::InvariantViolated(format!("affine row {} has no Clifford counterpart", r.label))
        })?;
        if rows.contains(&i) {
            return Err(Error::InvariantViolated(format!("two affine rows land on Clifford row {i}")));
        }
        rows.push(i);
    }
    Ok(FischerReport {
        n,
        affine_table,
        shifts,
        class_map,
        rows,
        compatible_sections,
        smallest_shift_works,
    })
}

struct Search<'a> {
    a: &'a [Vec<i64>],
    c: &'a [Vec<i64>],
    options: &'a [FibreOptions],
    order: &'a [usize],
    choice: Vec<usize>,
    /// Affine class → Clifford class, `usize::MAX` while unassigned.
    map: Vec<usize>,
}

impl Search<'_> {
    fn consistent(&self) -> bool {
        let cols: Vec<usize> = (0..self.map.len()).filter(|&j| self.map[j] != usize::MAX).collect();
        let mut counts: HashMap<Vec<i64>, i64> = HashMap::new();
        for row in self.a {
            *counts.entry(cols.iter().map(|&j| row[j]).collect()).or_default() += 1;
        }
        for row in self.c {
            let e = counts.entry(cols.iter().map(|&j| row[self.map[j]]).collect()).or_default();
            *e -= 1;
            if *e < 0 {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> bool {
        let Some(&cls) = self.order.get(depth) else {
            return true;
        };
        for (i, (_, pairs)) in self.options[cls].iter().enumerate() {
            for &(a, c) in pairs {
                self.map[a] = c;
            }
            self.choice[cls] = i;
            if self.consistent() && self.run(depth + 1) {
                return true;
            }
            for &(a, _) in pairs {
                self.map[a] = usize::MAX;
            }
        }
        self.choice[cls] = usize::MAX;
        false
    }
}
