//! Character theory: exact cyclotomic values, class functions and maps,
//! the Dixon engine, table assembly, the lift, and consistency suites.

pub mod assemble;
pub mod classfn;
pub mod corollary;
pub mod cyclotomic;
pub mod dixon;
pub mod fischer;
pub mod lift;
pub mod matching;

pub use classfn::{CharacterTable, ClassFunction, ClassInfo, ClassMap, ConjClass, MapKind, Provenance, TableRow};
pub use cyclotomic::Cyclotomic;
pub use assemble::{assemble_irr, assemble_with, AssembledTable, CliffordContext, RowSource};
pub use dixon::{dixon_table, dixon_table_with_budget, DixonBudget};
pub use corollary::{corollary_suite, CorollaryReport, PauliCase, RowCheck};
pub use fischer::{affine_assembly, fischer_check, FischerReport};
