//! Matching a computed table against an integer table given up to row and
//! column permutation. Columns are paired only with columns of equal class
//! size and equal value multiset; rows are then paired by full equality.

use std::collections::HashMap;

use super::CharacterTable;
use crate::error::{Error, Result};
use crate::reference::PrintedTable;

/// A simultaneous row/column bijection: printed row `i` is computed row
/// `rows[i]`, printed column `j` is computed class `columns[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMatch {
    pub rows: Vec<usize>,
    pub columns: Vec<usize>,
}

/// Integer values of a computed table, row-major.
pub fn integer_matrix(table: &CharacterTable) -> Result<Vec<Vec<i64>>> {
    table
        .rows()
        .iter()
        .map(|r| {
            r.character.to_ints().ok_or_else(|| {
                Error::InvalidArgument(format!("row {} is not integer valued", r.label))
            })
        })
        .collect()
}

/// Matches `computed` against `printed`, using the printed table's implied
/// class sizes. `None` if no bijection exists.
pub fn match_tables(computed: &CharacterTable, printed: &PrintedTable) -> Result<Option<TableMatch>> {
    let a = integer_matrix(computed)?;
    let sizes_a: Vec<u64> = computed.info().classes().iter().map(|c| c.size).collect();
    let b: Vec<Vec<i64>> = printed.rows.iter().map(|r| r.values.clone()).collect();
    let sizes_b = printed.implied_class_sizes()?;
    Ok(match_matrices(&a, &sizes_a, &b, &sizes_b))
}

/// Matches two square integer matrices with per-column weights.
pub fn match_matrices(a: &[Vec<i64>], sizes_a: &[u64], b: &[Vec<i64>], sizes_b: &[u64]) -> Option<TableMatch> {
    let r = a.len();
    if b.len() != r || sizes_a.len() != sizes_b.len() || a.iter().chain(b).any(|row| row.len() != sizes_a.len()) {
        return None;
    }
    let k = sizes_a.len();
    let signature = |m: &[Vec<i64>], sizes: &[u64], c: usize| {
        let mut col: Vec<i64> = m.iter().map(|row| row[c]).collect();
        col.sort_unstable();
        (sizes[c], col)
    };
    let sig_a: Vec<_> = (0..k).map(|c| signature(a, sizes_a, c)).collect();
    let candidates: Vec<Vec<usize>> = (0..k)
        .map(|j| {
            let s = signature(b, sizes_b, j);
            (0..k).filter(|&c| sig_a[c] == s).collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&j| (candidates[j].len(), j));

    let mut search = Search {
        a,
        b,
        candidates: &candidates,
        order: &order,
        assigned: vec![usize::MAX; k],
        used: vec![false; k],
    };
    if !search.run(0) {
        return None;
    }
    let columns = search.assigned;
    let key = |row: &[i64], cols: &[usize]| -> Vec<i64> { cols.iter().map(|&c| row[c]).collect() };
    let mut by_values: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (i, row) in a.iter().enumerate() {
        by_values.entry(key(row, &columns)).or_default().push(i);
    }
    let ident: Vec<usize> = (0..k).collect();
    let rows = b
        .iter()
        .map(|row| by_values.get_mut(&key(row, &ident)).and_then(Vec::pop))
        .collect::<Option<Vec<usize>>>()?;
    Some(TableMatch { rows, columns })
}

struct Search<'a> {
    a: &'a [Vec<i64>],
    b: &'a [Vec<i64>],
    candidates: &'a [Vec<usize>],
    order: &'a [usize],
    assigned: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// The multiset of row prefixes over assigned columns must agree.
    fn consistent(&self, depth: usize) -> bool {
        let cols = &self.order[..depth];
        let mut counts: HashMap<Vec<i64>, i64> = HashMap::new();
        for row in self.b {
            *counts.entry(cols.iter().map(|&j| row[j]).collect()).or_default() += 1;
        }
        for row in self.a {
            let e = counts
                .entry(cols.iter().map(|&j| row[self.assigned[j]]).collect())
                .or_default();
            *e -= 1;
            if *e < 0 {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let j = self.order[depth];
        for idx in 0..self.candidates[j].len() {
            let c = self.candidates[j][idx];
            if self.used[c] {
                continue;
            }
            self.assigned[j] = c;
            self.used[c] = true;
            if self.consistent(depth + 1) && self.run(depth + 1) {
                return true;
            }
            self.used[c] = false;
            self.assigned[j] = usize::MAX;
        }
        false
    }
}

/// Column bijection for a fixed row bijection (`rows[i]` = computed row of
/// printed row `i`): printed column `j` must equal a computed column of the
/// same class size entrywise. `None` if some column has no partner.
pub fn match_columns_for_rows(
    a: &[Vec<i64>],
    sizes_a: &[u64],
    b: &[Vec<i64>],
    sizes_b: &[u64],
    rows: &[usize],
) -> Option<Vec<usize>> {
    let k = sizes_a.len();
    if sizes_b.len() != k || rows.len() != b.len() || rows.len() != a.len() {
        return None;
    }
    let mut used = vec![false; k];
    (0..k)
        .map(|j| {
            let c = (0..k).find(|&c| {
                !used[c] && sizes_a[c] == sizes_b[j] && rows.iter().enumerate().all(|(i, &r)| a[r][c] == b[i][j])
            })?;
            used[c] = true;
            Some(c)
        })
        .collect()
}

/// [`match_tables`] with the row bijection given by equal labels.
pub fn match_tables_by_label(computed: &CharacterTable, printed: &PrintedTable) -> Result<Option<TableMatch>> {
    let a = integer_matrix(computed)?;
    let sizes_a: Vec<u64> = computed.info().classes().iter().map(|c| c.size).collect();
    let b: Vec<Vec<i64>> = printed.rows.iter().map(|r| r.values.clone()).collect();
    let sizes_b = printed.implied_class_sizes()?;
    let Some(rows) = printed
        .rows
        .iter()
        .map(|p| computed.rows().iter().position(|r| r.label == p.label))
        .collect::<Option<Vec<usize>>>()
    else {
        return Ok(None);
    };
    Ok(match_columns_for_rows(&a, &sizes_a, &b, &sizes_b, &rows).map(|columns| TableMatch { rows, columns }))
}

/// Rows of `computed` equal, as weighted value multisets `{(size, value)}`,
/// to `values` on a table with class sizes `sizes`. Column-order free.
pub fn rows_with_multiset(computed: &CharacterTable, values: &[i64], sizes: &[u64]) -> Result<Vec<usize>> {
    let a = integer_matrix(computed)?;
    let sizes_a: Vec<u64> = computed.info().classes().iter().map(|c| c.size).collect();
    let ms = |row: &[i64], s: &[u64]| {
        let mut v: Vec<(u64, i64)> = s.iter().copied().zip(row.iter().copied()).collect();
        v.sort_unstable();
        v
    };
    let want = ms(values, sizes);
    Ok((0..a.len()).filter(|&i| ms(&a[i], &sizes_a) == want).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::classfn::tests::{s3_info, s3_table};
    use crate::reference;

    #[test]
    fn matches_shuffled_matrix() {
        let b = vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]];
        let sizes_b = vec![1, 3, 2];
        let a = vec![vec![2, -1, 0], vec![1, 1, 1], vec![1, 1, -1]];
        let sizes_a = vec![1, 2, 3];
        let m = match_matrices(&a, &sizes_a, &b, &sizes_b).unwrap();
        assert_eq!(m.columns, vec![0, 2, 1]);
        assert_eq!(m.rows, vec![1, 2, 0]);
    }

    #[test]
    fn rejects_wrong_sizes() {
        let b = vec![vec![1, 1], vec![1, -1]];
        assert!(match_matrices(&b, &[1, 1], &b, &[1, 2]).is_none());
        let c = vec![vec![1, 1], vec![1, 1]];
        assert!(match_matrices(&b, &[1, 1], &c, &[1, 1]).is_none());
    }

    #[test]
    fn s3_against_printed_sp2() {
        let t = s3_table(&s3_info());
        let m = match_tables(&t, &reference::sp2()).unwrap().unwrap();
        assert_eq!(m.columns[0], 0);
        let degrees: Vec<u64> = m.rows.iter().map(|&i| t.degrees()[i]).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
    }

    #[test]
    fn multiset_rows() {
        let t = s3_table(&s3_info());
        assert_eq!(rows_with_multiset(&t, &[2, -1, 0], &[1, 2, 3]).unwrap().len(), 1);
        assert!(rows_with_multiset(&t, &[2, 0, 0], &[1, 2, 3]).unwrap().is_empty());
    }
}
