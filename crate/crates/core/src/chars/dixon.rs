//! Dixon–Schneider: exact character tables from class multiplication
//! coefficients, via simultaneous eigenvectors of the class-sum matrices
//! over a prime field `F_p` with `p ≡ 1 (mod exponent)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CharacterTable, ClassFunction, Cyclotomic, Provenance};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupEnumeration};

/// Size limits for [`dixon_table_with_budget`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DixonBudget {
    pub max_order: usize,
    pub max_classes: usize,
}

impl Default for DixonBudget {
    fn default() -> Self {
        DixonBudget {
            max_order: 20_000,
            max_classes: 64,
        }
    }
}

const PRIME_BOUND: u64 = 1_000_000;
const RANDOM_TRIES: usize = 64;
const SEED: u64 = 0x5eed_d1c5_0b5c;

/// Character table of `group` under the default budget.
pub fn dixon_table<E: GroupElement>(group: &GroupEnumeration<E>) -> Result<CharacterTable> {
    dixon_table_with_budget(group, DixonBudget::default())
}

pub fn dixon_table_with_budget<E: GroupElement>(
    group: &GroupEnumeration<E>,
    budget: DixonBudget,
) -> Result<CharacterTable> {
    let order = group.order();
    let r = group.class_count();
    if order > budget.max_order || r > budget.max_classes {
        return Err(Error::SizeCap(format!(
            "{}: {order} elements / {r} classes exceeds the Dixon budget ({} / {})",
            group.name(),
            budget.max_order,
            budget.max_classes
        )));
    }
    let e = group.exponent();
    let p = choose_prime(e, order as u64)?;
    log::debug!("dixon {}: |G| = {order}, r = {r}, exponent {e}, p = {p}", group.name());
    let f = Fp(p);

    let coeffs = class_coefficients(group, p);
    let vectors = common_eigenvectors(&f, &coeffs, r)?;
    if vectors.len() != r {
        return Err(Error::SplittingFailed(format!(
            "{}: found {} eigenvectors for {r} classes",
            group.name(),
            vectors.len()
        )));
    }

    let info = group.info().clone();
    let sizes: Vec<u64> = (0..r).map(|i| info.class(i).size % p).collect();
    let powers: Vec<Vec<usize>> = (0..r)
        .map(|i| {
            let o = info.class(i).element_order as u64;
            (0..o).map(|l| group.power_class(i, l)).collect()
        })
        .collect();
    let root = primitive_root(p);

    let mut rows = Vec::with_capacity(r);
    for w in &vectors {
        let d = degree_from_eigenvector(&f, w, &sizes, |i| info.inverse_class(i), order as u64)?;
        let chi_p: Vec<u64> = (0..r)
            .map(|i| f.mul(f.mul(d, w[i]), f.inv(sizes[i])))
            .collect();
        let values = (0..r)
            .map(|i| exact_value(&f, root, &chi_p, &powers[i], d))
            .collect::<Result<Vec<_>>>()?;
        rows.push((Provenance::Dixon, ClassFunction::new(info.clone(), values)?));
    }
    let mut table = CharacterTable::new(info, rows)?;
    table.sort_rows();
    relabel(&mut table);
    table.validate()?;
    Ok(table)
}

fn relabel(table: &mut CharacterTable) {
    for (i, row) in table.rows_mut().iter_mut().enumerate() {
        row.label = format!("χ{}", i + 1);
    }
}

/// Smallest prime `p ≡ 1 (mod e)` with `p² > 4|G|`, below 10⁶.
pub fn choose_prime(exponent: u64, order: u64) -> Result<u64> {
    let e = exponent.max(1);
    let mut p = e + 1;
    while p < PRIME_BOUND {
        if (p as u128) * (p as u128) > 4 * order as u128 && is_prime(p) {
            return Ok(p);
        }
        p += e;
    }
    Err(Error::PrimeSearchExhausted(PRIME_BOUND))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root(p: u64) -> u64 {
    let f = Fp(p);
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| f.pow(g, (p - 1) / q) != 1))
        .unwrap_or(1)
}

#[derive(Clone, Copy)]
struct Fp(u64);

impl Fp {
    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
    fn pow(&self, mut a: u64, mut k: u64) -> u64 {
        let mut acc = 1;
        a %= self.0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }
    fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 - 2)
    }
}

/// `c[j][i][k]` = number of pairs `(x, y) ∈ C_j × C_i` with `xy = z_k`, mod p.
fn class_coefficients<E: GroupElement>(group: &GroupEnumeration<E>, p: u64) -> Vec<Vec<Vec<u64>>> {
    let r = group.class_count();
    let mut c = vec![vec![vec![0u64; r]; r]; r];
    for k in 0..r {
        let z = group.class_rep(k);
        for x in group.elements() {
            let y = x.inverse().compose(z);
            let j = group.class_of(x).expect("closed");
            let i = group.class_of(&y).expect("closed");
            c[j][i][k] += 1;
        }
    }
    for cj in c.iter_mut() {
        for ci in cj.iter_mut() {
            for v in ci.iter_mut() {
                *v %= p;
            }
        }
    }
    c
}

/// A subspace held as a reduced row-echelon basis.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn full(r: usize) -> Self {
        Subspace {
            basis: (0..r)
                .map(|i| {
                    let mut v = vec![0; r];
                    v[i] = 1;
                    v
                })
                .collect(),
            pivots: (0..r).collect(),
        }
    }

    fn from_vectors(f: &Fp, mut rows: Vec<Vec<u64>>) -> Self {
        let pivots = rref(f, &mut rows);
        rows.truncate(pivots.len());
        Subspace { basis: rows, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `v ↦ Σ_j coef_j A_j v` restricted to the subspace, in the
    /// basis coordinates (entries at the pivot columns).
    fn restrict(&self, f: &Fp, c: &[Vec<Vec<u64>>], coef: &[u64]) -> Vec<Vec<u64>> {
        let d = self.dim();
        let r = c.len();
        let mut m = vec![vec![0u64; d]; d];
        for (col, b) in self.basis.iter().enumerate() {
            // (A b)[i] = Σ_k A[i][k] b[k]
            let mut ab = vec![0u64; r];
            for (j, &cj) in coef.iter().enumerate() {
                if cj == 0 {
                    continue;
                }
                for (i, abi) in ab.iter_mut().enumerate() {
                    let mut s = 0u64;
                    for (k, &bk) in b.iter().enumerate() {
                        if bk != 0 {
                            s = f.add(s, f.mul(c[j][i][k], bk));
                        }
                    }
                    *abi = f.add(*abi, f.mul(cj, s));
                }
            }
            for (row, &pv) in self.pivots.iter().enumerate() {
                m[row][col] = ab[pv];
            }
        }
        m
    }

    fn lift(&self, f: &Fp, coords: &[u64]) -> Vec<u64> {
        let r = self.basis[0].len();
        let mut v = vec![0u64; r];
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = f.add(*vi, f.mul(*c, *bi));
                }
            }
        }
        v
    }
}

/// In-place reduced row echelon form; returns pivot columns.
fn rref(f: &Fp, rows: &mut [Vec<u64>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let t = rows[i][c];
                for k in 0..ncols {
                    let sub = f.mul(t, rows[r][k]);
                    rows[i][k] = f.sub(rows[i][k], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the null space of a square matrix.
fn null_space(f: &Fp, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut rows = m.to_vec();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, rows[row][fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial (coefficients low to high, monic) by reduction
/// to Hessenberg form.
fn char_poly(f: &Fp, m: &[Vec<u64>]) -> Vec<u64> {
    let n = m.len();
    let mut h = m.to_vec();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let t_inv = f.inv(h[col + 1][col]);
        for i in col + 2..n {
            let u = f.mul(h[i][col], t_inv);
            if u == 0 {
                continue;
            }
            for k in 0..n {
                let sub = f.mul(u, h[col + 1][k]);
                h[i][k] = f.sub(h[i][k], sub);
            }
            for row in h.iter_mut() {
                let add = f.mul(u, row[i]);
                row[col + 1] = f.add(row[col + 1], add);
            }
        }
    }
    // p_m = (x − h_mm) p_{m−1} − Σ_{i<m} h_im (Π_{j=i+1..m} h_{j,j−1}) p_{i−1}, 1-indexed.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mi in 1..=n {
        let prev = &polys[mi - 1];
        let mut next = vec![0u64; mi + 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = f.add(next[k + 1], c);
            next[k] = f.sub(next[k], f.mul(h[mi - 1][mi - 1], c));
        }
        let mut prod = 1u64;
        for i in (1..mi).rev() {
            prod = f.mul(prod, h[i][i - 1]);
            let t = f.mul(h[i - 1][mi - 1], prod);
            if t != 0 {
                for (k, &c) in polys[i - 1].iter().enumerate() {
                    next[k] = f.sub(next[k], f.mul(t, c));
                }
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

/// Roots of a polynomial in `F_p` by exhaustive evaluation.
fn roots(f: &Fp, poly: &[u64]) -> Vec<u64> {
    let deg = poly.len() - 1;
    let mut out = Vec::new();
    for x in 0..f.0 {
        let v = poly.iter().rev().fold(0u64, |acc, &c| f.add(f.mul(acc, x), c));
        if v == 0 {
            out.push(x);
            if out.len() == deg {
                break;
            }
        }
    }
    out
}

/// Splits `space` by the eigenspaces of the restricted operator; `None` if
/// the operator is scalar on it.
fn split(f: &Fp, space: &Subspace, m: &[Vec<u64>]) -> Result<Option<Vec<Subspace>>> {
    let d = space.dim();
    let lambdas = roots(f, &char_poly(f, m));
    if lambdas.len() <= 1 {
        return Ok(None);
    }
    let mut parts = Vec::new();
    let mut total = 0;
    for l in lambdas {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { f.sub(m[i][j], l) } else { m[i][j] })
                    .collect()
            })
            .collect();
        let vecs: Vec<Vec<u64>> = null_space(f, &shifted)
            .iter()
            .map(|c| space.lift(f, c))
            .collect();
        total += vecs.len();
        parts.push(Subspace::from_vectors(f, vecs));
    }
    if total != d {
        return Err(Error::SplittingFailed(format!(
            "eigenspaces of dimension {total} in a space of dimension {d}"
        )));
    }
    Ok(Some(parts))
}

/// Normalised (`w₀ = 1`) common eigenvectors of the class matrices.
fn common_eigenvectors(f: &Fp, c: &[Vec<Vec<u64>>], r: usize) -> Result<Vec<Vec<u64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut done = Vec::new();
    let mut work = vec![Subspace::full(r)];
    while let Some(space) = work.pop() {
        if space.dim() == 1 {
            let w = &space.basis[0];
            if w[0] == 0 {
                return Err(Error::SplittingFailed(
                    "eigenvector vanishes on the identity class".into(),
                ));
            }
            let inv = f.inv(w[0]);
            done.push(w.iter().map(|&x| f.mul(x, inv)).collect());
            continue;
        }
        let mut parts = None;
        for j in 1..r {
            let mut coef = vec![0u64; r];
            coef[j] = 1;
            if let Some(p) = split(f, &space, &space.restrict(f, c, &coef))? {
                parts = Some(p);
                break;
            }
        }
        if parts.is_none() {
            for _ in 0..RANDOM_TRIES {
                let coef: Vec<u64> = (0..r).map(|_| rng.gen_range(0..f.0)).collect();
                if let Some(p) = split(f, &space, &space.restrict(f, c, &coef))? {
                    parts = Some(p);
                    break;
                }
            }
        }
        match parts {
            Some(p) => work.extend(p),
            None => {
                return Err(Error::SplittingFailed(format!(
                    "could not split a common eigenspace of dimension {}",
                    space.dim()
                )))
            }
        }
    }
    done.sort();
    Ok(done)
}

/// `d² ≡ |G| / Σ_i w_i w_{i*} / h_i`, with `1 ≤ d ≤ √|G|`.
fn degree_from_eigenvector(
    f: &Fp,
    w: &[u64],
    sizes: &[u64],
    inverse: impl Fn(usize) -> usize,
    order: u64,
) -> Result<u64> {
    let mut s = 0u64;
    for i in 0..w.len() {
        s = f.add(s, f.mul(f.mul(w[i], w[inverse(i)]), f.inv(sizes[i])));
    }
    if s == 0 {
        return Err(Error::SplittingFailed("degenerate eigenvector norm".into()));
    }
    let target = f.mul(order % f.0, f.inv(s));
    let d = (1..)
        .take_while(|d: &u64| d * d <= order)
        .find(|d| f.mul(*d, *d) == target && order.is_multiple_of(*d))
        .ok_or_else(|| Error::SplittingFailed("no admissible degree".into()))?;
    Ok(d)
}

/// Recovers `χ(g) = Σ_k m_k ζ_o^k` from the reduced values on powers of `g`.
fn exact_value(f: &Fp, root: u64, chi_p: &[u64], powers: &[usize], d: u64) -> Result<Cyclotomic> {
    let o = powers.len() as u64;
    if o == 1 {
        return Ok(Cyclotomic::from_int(chi_p[powers[0]] as i64));
    }
    let z = f.pow(root, (f.0 - 1) / o);
    let o_inv = f.inv(o % f.0);
    let mut mult = Vec::with_capacity(o as usize);
    for k in 0..o {
        let zk_inv = f.inv(f.pow(z, k));
        let mut s = 0u64;
        let mut zp = 1u64;
        for &pc in powers {
            s = f.add(s, f.mul(chi_p[pc], zp));
            zp = f.mul(zp, zk_inv);
        }
        let m = f.mul(s, o_inv);
        if m > d {
            return Err(Error::SplittingFailed(format!(
                "eigenvalue multiplicity {m} exceeds degree {d}"
            )));
        }
        mult.push(BigRational::from_integer(BigInt::from(m)));
    }
    Ok(Cyclotomic::from_powers(o as u32, &mult))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::enumerate_clifford;
    use crate::group::tests::{cyclic, symmetric};
    use crate::symplectic::enumerate_sp;

    #[test]
    fn prime_choice() {
        assert_eq!(choose_prime(2, 2).unwrap(), 3);
        assert_eq!(choose_prime(12, 24).unwrap(), 13);
        assert_eq!(choose_prime(6, 6).unwrap(), 7);
        assert!(matches!(
            choose_prime(1 << 21, 4),
            Err(Error::PrimeSearchExhausted(_))
        ));
    }

    #[test]
    fn char_poly_small() {
        let f = Fp(13);
        // [[2,1],[0,3]] → x² − 5x + 6
        let cp = char_poly(&f, &[vec![2, 1], vec![0, 3]]);
        assert_eq!(cp, vec![6, 13 - 5, 1]);
        let m = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]];
        // x³ − 16x² − 12x + 3
        assert_eq!(char_poly(&f, &m), vec![3, 1, 10, 1]);
    }

    #[test]
    fn z2_table() {
        let t = dixon_table(&cyclic(2)).unwrap();
        let rows: Vec<Vec<i64>> = t.rows().iter().map(|r| r.character.to_ints().unwrap()).collect();
        assert_eq!(rows, vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn cyclic_tables_have_roots_of_unity() {
        for n in [3, 4, 5, 6] {
            let g = cyclic(n);
            let t = dixon_table(&g).unwrap();
            assert_eq!(t.len(), n);
            // Every value is a root of unity: χ χ̄ = 1.
            for row in t.rows() {
                for v in row.character.values() {
                    assert_eq!(v * &v.conj(), Cyclotomic::one());
                }
            }
        }
    }

    #[test]
    fn symmetric_group_degrees() {
        assert_eq!(dixon_table(&symmetric(3)).unwrap().degree_multiset(), vec![1, 1, 2]);
        assert_eq!(
            dixon_table(&symmetric(4)).unwrap().degree_multiset(),
            vec![1, 1, 2, 3, 3]
        );
        assert_eq!(
            dixon_table(&symmetric(5)).unwrap().degree_multiset(),
            vec![1, 1, 4, 4, 5, 5, 6]
        );
    }

    #[test]
    fn symplectic_tables() {
        let sp2 = enumerate_sp(1).unwrap();
        assert_eq!(dixon_table(&sp2).unwrap().degree_multiset(), vec![1, 1, 2]);
        let sp4 = enumerate_sp(2).unwrap();
        assert_eq!(
            dixon_table(&sp4).unwrap().degree_multiset(),
            vec![1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16]
        );
    }

    #[test]
    fn clifford_one_qubit() {
        let c1 = enumerate_clifford(1, false).unwrap();
        assert_eq!(dixon_table(&c1).unwrap().degree_multiset(), vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn budget_is_enforced() {
        let g = symmetric(4);
        let small = DixonBudget {
            max_order: 10,
            max_classes: 64,
        };
        assert!(matches!(dixon_table_with_budget(&g, small), Err(Error::SizeCap(_))));
    }
}
