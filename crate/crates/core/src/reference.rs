//! Published integer character tables used as fixed points for validation:
//! the 1-qubit Pauli group, `Sp(2,2)`, the 1-qubit inertia quotient, `𝒞₁`,
//! `𝒞₁ × Z₂` and `𝒞₂`. Columns carry a label only where one was printed.

use crate::error::{Error, Result};

/// An integer-valued table as printed, rows in printed order.
#[derive(Clone, Debug)]
pub struct PrintedTable {
    pub name: &'static str,
    pub column_labels: Vec<Option<&'static str>>,
    pub rows: Vec<PrintedRow>,
}

#[derive(Clone, Debug)]
pub struct PrintedRow {
    pub label: &'static str,
    pub values: Vec<i64>,
}

impl PrintedTable {
    fn build(
        name: &'static str,
        column_labels: Vec<Option<&'static str>>,
        rows: &[(&'static str, &[i64])],
    ) -> Self {
        PrintedTable {
            name,
            column_labels,
            rows: rows
                .iter()
                .map(|(label, v)| PrintedRow {
                    label,
                    values: v.to_vec(),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.rows.first().map_or(0, |r| r.values.len())
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.values[0]).collect()
    }

    pub fn group_order(&self) -> i64 {
        self.degrees().iter().map(|d| d * d).sum()
    }

    pub fn row(&self, label: &str) -> Option<&PrintedRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// `|C_G(g)| = Σ_χ |χ(g)|²` for each printed column.
    pub fn implied_centralizer_orders(&self) -> Vec<i64> {
        (0..self.class_count())
            .map(|c| self.rows.iter().map(|r| r.values[c] * r.values[c]).sum())
            .collect()
    }

    /// Class sizes `|G| / |C_G(g)|`; errors if some centraliser order does
    /// not divide the group order.
    pub fn implied_class_sizes(&self) -> Result<Vec<u64>> {
        let order = self.group_order();
        self.implied_centralizer_orders()
            .into_iter()
            .enumerate()
            .map(|(c, z)| {
                if z == 0 || order % z != 0 {
                    Err(Error::InvariantViolated(format!(
                        "{}: column {c} has centraliser order {z} not dividing {order}",
                        self.name
                    )))
                } else {
                    Ok((order / z) as u64)
                }
            })
            .collect()
    }

    /// Exact row orthonormality and column orthogonality with the implied
    /// class sizes. Returns the offending pairs.
    pub fn orthogonality_defects(&self) -> Vec<String> {
        let mut out = Vec::new();
        let Ok(sizes) = self.implied_class_sizes() else {
            out.push("class sizes not integral".to_string());
            return out;
        };
        let order = self.group_order();
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate().skip(i) {
                let s: i64 = (0..sizes.len())
                    .map(|c| sizes[c] as i64 * a.values[c] * b.values[c])
                    .sum();
                let want = if i == j { order } else { 0 };
                if s != want {
                    out.push(format!("rows {} / {}: {s} / {order}", a.label, b.label));
                }
            }
        }
        if sizes.iter().sum::<u64>() != order as u64 {
            out.push(format!("class sizes sum to {}", sizes.iter().sum::<u64>()));
        }
        out
    }
}

/// Characters of the 1-qubit projective Pauli group; columns I, X, Z, Y.
pub fn pauli_1q() -> PrintedTable {
    PrintedTable::build(
        "P~1",
        vec![Some("[I]"), Some("[X]"), Some("[Z]"), Some("[Y]")],
        &[
            ("ψ1", &[1, 1, 1, 1]),
            ("ψ2", &[1, -1, 1, -1]),
            ("ψ3", &[1, 1, -1, -1]),
            ("ψ4", &[1, -1, -1, 1]),
        ],
    )
}

/// The order-2 quotient `⟨H, X, Z⟩ / Z₂²`.
pub fn inertia_quotient_1q() -> PrintedTable {
    PrintedTable::build(
        "IN1/Z2^2",
        vec![Some("[[I]]"), Some("[[H]]")],
        &[("φ1", &[1, 1]), ("φ2", &[1, -1])],
    )
}

/// `Sp(2,2)`; columns `[[I]], [[H]], [[S]]`.
pub fn sp2() -> PrintedTable {
    PrintedTable::build(
        "Sp(2,2)",
        vec![Some("[[I]]"), Some("[[H]]"), Some("[[S]]")],
        &[("θ1", &[1, 1, 1]), ("θ2", &[1, -1, 1]), ("θ3", &[2, 0, -1])],
    )
}

/// The 1-qubit projective Clifford group.
pub fn c1() -> PrintedTable {
    PrintedTable::build(
        "C1",
        vec![Some("[I]"), None, Some("[S]"), Some("[X]"), Some("[H]")],
        &[
            ("θ̃1", &[1, 1, 1, 1, 1]),
            ("θ̃2", &[1, -1, 1, 1, -1]),
            ("θ̃3", &[2, 0, -1, 2, 0]),
            ("Ind(ψ4′⊗φ̃1)", &[3, -1, 0, -1, 1]),
            ("Ind(ψ4′⊗φ̃2)", &[3, 1, 0, -1, -1]),
        ],
    )
}

/// `𝒞₁ × Z₂`, the 2-qubit inertia quotient.
pub fn c1_times_z2() -> PrintedTable {
    let mut labels = vec![None; 10];
    labels[0] = Some("([I],0)");
    labels[8] = Some("([I],1)");
    PrintedTable::build(
        "C1xZ2",
        labels,
        &[
            ("μ1", &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1]),
            ("μ2", &[1, 1, 1, -1, -1, -1, -1, 1, 1, 1]),
            ("μ3", &[1, 1, 1, -1, -1, 1, 1, -1, -1, -1]),
            ("μ4", &[1, 1, 1, 1, 1, -1, -1, -1, -1, -1]),
            ("μ5", &[2, 2, -1, 0, 0, 0, 0, -1, 2, 2]),
            ("μ6", &[2, 2, -1, 0, 0, 0, 0, 1, -2, -2]),
            ("μ7", &[3, -1, 0, -1, 1, -1, 1, 0, 3, -1]),
            ("μ8", &[3, -1, 0, -1, 1, 1, -1, 0, -3, 1]),
            ("μ9", &[3, -1, 0, 1, -1, -1, 1, 0, -3, 1]),
            ("μ10", &[3, -1, 0, 1, -1, 1, -1, 0, 3, -1]),
        ],
    )
}

/// Which factor each `μ` row is built from: `(𝒞₁ row, Z₂ row)`, 1-based.
pub const MU_FACTORS: [(usize, usize); 10] = [
    (1, 1),
    (2, 1),
    (1, 2),
    (2, 2),
    (3, 1),
    (3, 2),
    (4, 1),
    (4, 2),
    (5, 2),
    (5, 1),
];

/// The 2-qubit projective Clifford group (no printed column labels).
pub fn c2() -> PrintedTable {
    PrintedTable::build(
        "C2",
        vec![None; 21],
        &[
            ("ψ̃1", &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]),
            ("ψ̃2", &[1, 1, -1, -1, 1, 1, 1, -1, -1, -1, 1, -1, 1, 1, -1, -1, 1, 1, 1, -1, -1]),
            ("ψ̃3", &[5, 5, -1, -1, 1, 1, 1, 3, 3, 3, -1, -1, 2, 2, 1, 1, -1, -1, 0, 0, 0]),
            ("ψ̃4", &[5, 5, 1, 1, 1, 1, 1, -3, -3, -3, -1, 1, 2, 2, -1, -1, -1, -1, 0, 0, 0]),
            ("ψ̃5", &[5, 5, -3, -3, 1, 1, 1, 1, 1, 1, 2, 0, -1, -1, -1, -1, -1, -1, 0, 1, 1]),
            ("ψ̃6", &[5, 5, 3, 3, 1, 1, 1, -1, -1, -1, 2, 0, -1, -1, 1, 1, -1, -1, 0, -1, -1]),
            ("ψ̃7", &[9, 9, -3, -3, 1, 1, 1, -3, -3, -3, 0, 0, 0, 0, 1, 1, 1, 1, -1, 0, 0]),
            ("ψ̃8", &[9, 9, 3, 3, 1, 1, 1, 3, 3, 3, 0, 0, 0, 0, -1, -1, 1, 1, -1, 0, 0]),
            ("ψ̃9", &[10, 10, -2, -2, -2, -2, -2, 2, 2, 2, 1, 1, 1, 1, 0, 0, 0, 0, 0, -1, -1]),
            ("ψ̃10", &[10, 10, 2, 2, -2, -2, -2, -2, -2, -2, 1, -1, 1, 1, 0, 0, 0, 0, 0, 1, 1]),
            ("Ind(μ1⊗σ1′)", &[15, -1, -3, 1, -1, -1, 3, 1, 1, -7, 0, 0, 3, -1, 1, -1, 1, -1, 0, -1, 1]),
            ("Ind(μ2⊗σ1′)", &[15, -1, -3, 1, 3, -1, -1, -3, 1, 5, 0, 0, 3, -1, -1, 1, -1, 1, 0, -1, 1]),
            ("Ind(μ3⊗σ1′)", &[15, -1, 3, -1, -1, -1, 3, -1, -1, 7, 0, 0, 3, -1, -1, 1, 1, -1, 0, 1, -1]),
            ("Ind(μ4⊗σ1′)", &[15, -1, 3, -1, 3, -1, -1, 3, -1, -5, 0, 0, 3, -1, 1, -1, -1, 1, 0, 1, -1]),
            ("ψ̃11", &[16, 16, 0, 0, 0, 0, 0, 0, 0, 0, -2, 0, -2, -2, 0, 0, 0, 0, 1, 0, 0]),
            ("Ind(μ5⊗σ1′)", &[30, -2, -6, 2, 2, -2, 2, -2, 2, -2, 0, 0, -3, 1, 0, 0, 0, 0, 0, 1, -1]),
            ("Ind(μ6⊗σ1′)", &[30, -2, 6, -2, 2, -2, 2, 2, -2, 2, 0, 0, -3, 1, 0, 0, 0, 0, 0, -1, 1]),
            ("Ind(μ7⊗σ1′)", &[45, -3, -3, 1, -3, 1, 1, 1, -3, 9, 0, 0, 0, 0, 1, -1, -1, 1, 0, 0, 0]),
            ("Ind(μ8⊗σ1′)", &[45, -3, 3, -1, -3, 1, 1, -1, 3, -9, 0, 0, 0, 0, -1, 1, -1, 1, 0, 0, 0]),
            ("Ind(μ9⊗σ1′)", &[45, -3, -3, 1, 1, 1, -3, 5, -3, -3, 0, 0, 0, 0, -1, 1, 1, -1, 0, 0, 0]),
            ("Ind(μ10⊗σ1′)", &[45, -3, 3, -1, 1, 1, -3, -5, 3, 3, 0, 0, 0, 0, 1, -1, 1, -1, 0, 0, 0]),
        ],
    )
}

/// Every built-in printed table.
pub fn all() -> Vec<PrintedTable> {
    vec![pauli_1q(), inertia_quotient_1q(), sp2(), c1(), c1_times_z2(), c2()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_orders() {
        let want = [(4, 4), (2, 2), (3, 6), (5, 24), (10, 48), (21, 11520)];
        for (t, (rows, order)) in all().iter().zip(want) {
            assert_eq!(t.len(), rows, "{}", t.name);
            assert_eq!(t.class_count(), rows, "{}", t.name);
            assert_eq!(t.group_order(), order, "{}", t.name);
        }
    }

    #[test]
    fn small_tables_are_orthogonal() {
        for t in [pauli_1q(), inertia_quotient_1q(), sp2(), c1(), c1_times_z2()] {
            assert!(t.orthogonality_defects().is_empty(), "{}: {:?}", t.name, t.orthogonality_defects());
        }
    }

    #[test]
    fn c1_class_sizes() {
        assert_eq!(c1().implied_class_sizes().unwrap(), vec![1, 6, 8, 3, 6]);
        assert_eq!(sp2().implied_class_sizes().unwrap(), vec![1, 3, 2]);
    }

    #[test]
    fn c2_table_diagnostics() {
        let t = c2();
        let sizes = t.implied_class_sizes().unwrap();
        assert_eq!(sizes.iter().sum::<u64>(), 11520);
        assert_eq!(t.degrees().iter().filter(|&&d| d == 15).count(), 4);
        let defects = t.orthogonality_defects();
        assert!(defects.is_empty(), "{defects:?}");
    }

    #[test]
    fn mu_rows_are_products() {
        let mu = c1_times_z2();
        // Columns 0..8 except 8 pair (g,0) with (g,1); the Z₂ factor is read
        // off the ([I],1) column.
        for (row, &(a, b)) in mu.rows.iter().zip(MU_FACTORS.iter()) {
            let z = row.values[8] / row.values[0];
            assert_eq!(z, if b == 1 { 1 } else { -1 }, "{}", row.label);
            assert_eq!(row.values[0], c1().rows[a - 1].values[0]);
        }
    }
}
