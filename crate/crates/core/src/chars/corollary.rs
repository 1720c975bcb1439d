//! Consistency checks of a 𝒞_n table against its normal Pauli subgroup:
//! degrees divide `[𝒞_n : P̃_n] = |Sp(2n,2)|`, each row is either inflated
//! (equal to its degree on Pauli classes) or induced (`−l` there, degree
//! `(4^n − 1)·l`), and the restriction to P̃_n decomposes accordingly.

use std::fmt;

use super::CharacterTable;
use crate::chars::assemble::CliffordContext;
use crate::clifford::CliffordElement;
use crate::error::{Error, Result};
use crate::linalg2::BitVec;
use crate::symplectic::sp_order;

/// How a row sits over the Pauli subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliCase {
    /// Trivial on P̃_n: `χ = deg` on every Pauli class.
    Inflated,
    /// `χ = −l` on every nontrivial Pauli class, `deg = (4^n − 1)·l`.
    Induced { l: u64 },
    Neither,
}

#[derive(Clone, Debug)]
pub struct RowCheck {
    pub label: String,
    pub degree: u64,
    pub case: PauliCase,
    pub degree_divides_index: bool,
    /// Multiplicity of each Pauli character `(−1)^{ω(a,·)}` in `χ|P̃`,
    /// indexed by `a`.
    pub restriction: Vec<i64>,
    pub restriction_ok: bool,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.case != PauliCase::Neither && self.degree_divides_index && self.restriction_ok
    }
}

#[derive(Clone, Debug)]
pub struct CorollaryReport {
    pub n: usize,
    pub index: u64,
    pub rows: Vec<RowCheck>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowCheck::passed)
    }

    pub fn failures(&self) -> Vec<&RowCheck> {
        self.rows.iter().filter(|r| !r.passed()).collect()
    }
}

impl fmt::Display for CorollaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let case = match r.case {
                PauliCase::Inflated => "inflated".to_string(),
                PauliCase::Induced { l } => format!("induced l={l}"),
                PauliCase::Neither => "neither".to_string(),
            };
            writeln!(
                f,
                "{} {:<14} deg {:>3} | {case}{}{}",
                if r.passed() { "ok  " } else { "FAIL" },
                r.label,
                r.degree,
                if r.degree_divides_index { "" } else { ", degree does not divide the index" },
                if r.restriction_ok { "" } else { ", restriction mismatch" },
            )?;
        }
        Ok(())
    }
}

/// Runs the checks on every row of `table`, a table of `ctx`'s Clifford
/// group. Failures are report entries, not errors.
pub fn corollary_suite(ctx: &CliffordContext, table: &CharacterTable) -> Result<CorollaryReport> {
    if table.info().id() != ctx.info().id() {
        return Err(Error::GroupMismatch(table.info().name().into(), ctx.info().name().into()));
    }
    let n = ctx.qubits();
    let index = u64::try_from(sp_order(n)).map_err(|_| Error::SizeCap("index overflows u64".into()))?;
    let dim = 2 * n;
    let count = 1u64 << dim;
    let pauli_class: Vec<usize> = (0..count)
        .map(|x| {
            let g = CliffordElement::pauli_embed(&BitVec::from_bits(dim, x));
            ctx.clifford()
                .class_of(&g)
                .ok_or_else(|| Error::Internal("Pauli element outside the Clifford group".into()))
        })
        .collect::<Result<_>>()?;
    let omega = |a: u64, x: u64| {
        let lo = (1u64 << n) - 1;
        (((a & lo) & (x >> n)) ^ ((a >> n) & (x & lo))).count_ones() % 2
    };

    let mut rows = Vec::with_capacity(table.len());
    for r in table.rows() {
        let chi = &r.character;
        let degree = chi
            .degree_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("row {} has non-integer degree", r.label)))?;
        let on_pauli: Option<Vec<i64>> = pauli_class.iter().map(|&c| chi.value(c).to_i64()).collect();
        let Some(on_pauli) = on_pauli else {
            rows.push(RowCheck {
                label: r.label.clone(),
                degree,
                case: PauliCase::Neither,
                degree_divides_index: index % degree == 0,
                restriction: Vec::new(),
                restriction_ok: false,
            });
            continue;
        };
        let nontrivial = &on_pauli[1..];
        let case = if nontrivial.iter().all(|&v| v == degree as i64) {
            PauliCase::Inflated
        } else if let Some(&v) = nontrivial.first().filter(|&&v| v < 0) {
            let l = v.unsigned_abs();
            if nontrivial.iter().all(|&w| w == v) && degree == (count - 1) * l {
                PauliCase::Induced { l }
            } else {
                PauliCase::Neither
            }
        } else {
            PauliCase::Neither
        };
        let restriction: Vec<i64> = (0..count)
            .map(|a| {
                let s: i64 = (0..count)
                    .map(|x| if omega(a, x) == 0 { on_pauli[x as usize] } else { -on_pauli[x as usize] })
                    .sum();
                s / count as i64
            })
            .collect();
        let restriction_ok = match case {
            PauliCase::Inflated => restriction[0] == degree as i64 && restriction[1..].iter().all(|&m| m == 0),
            PauliCase::Induced { l } => restriction[0] == 0 && restriction[1..].iter().all(|&m| m == l as i64),
            PauliCase::Neither => false,
        };
        rows.push(RowCheck {
            label: r.label.clone(),
            degree,
            case,
            degree_divides_index: index % degree == 0,
            restriction,
            restriction_ok,
        });
    }
    Ok(CorollaryReport { n, index, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::assemble::assemble_with;
    use crate::chars::{ClassFunction, Provenance};

    #[test]
    fn one_qubit() {
        let ctx = CliffordContext::build(1).unwrap();
        let t = assemble_with(&ctx).unwrap().table;
        let r = corollary_suite(&ctx, &t).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.index, 6);
        let threes: Vec<PauliCase> = r.rows.iter().filter(|c| c.degree == 3).map(|c| c.case).collect();
        assert_eq!(threes, vec![PauliCase::Induced { l: 1 }; 2]);
    }

    #[test]
    fn two_qubits() {
        let ctx = CliffordContext::build(2).unwrap();
        let t = assemble_with(&ctx).unwrap().table;
        let r = corollary_suite(&ctx, &t).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.index, 720);
        for c in &r.rows {
            match c.degree {
                15 => assert_eq!(c.case, PauliCase::Induced { l: 1 }),
                30 => assert_eq!(c.case, PauliCase::Induced { l: 2 }),
                45 => assert_eq!(c.case, PauliCase::Induced { l: 3 }),
                _ => assert_eq!(c.case, PauliCase::Inflated),
            }
            assert_eq!(2880 % c.degree, 0);
        }
    }

    #[test]
    fn flags_a_non_character() {
        let ctx = CliffordContext::build(1).unwrap();
        let info = ctx.info().clone();
        let mut values = vec![0i64; info.len()];
        values[0] = 4;
        let f = ClassFunction::from_ints(info.clone(), &values).unwrap();
        let t = CharacterTable::new(info, vec![(Provenance::Reference, f)]).unwrap();
        let r = corollary_suite(&ctx, &t).unwrap();
        assert!(!r.passed());
        assert_eq!(r.failures().len(), 1);
    }
}
