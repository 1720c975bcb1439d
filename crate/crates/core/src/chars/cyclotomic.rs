//! Exact elements of cyclotomic fields `Q(ζ_m)`.
//!
//! A value is stored as a coefficient vector over the power basis
//! `1, ζ_m, ..., ζ_m^{φ(m)-1}`, reduced modulo the m-th cyclotomic
//! polynomial. Rational values always collapse to conductor 1, so the
//! overwhelmingly common integer case stays cheap.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1);
    if let Some(p) = phi_cache().lock().expect("cache poisoned").get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            poly = exact_div(&poly, &cyclotomic_polynomial(d));
        }
    }
    let poly = Arc::new(poly);
    phi_cache()
        .lock()
        .expect("cache poisoned")
        .insert(m, poly.clone());
    poly
}

/// Division by a monic integer polynomial with zero remainder.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (k, &dk) in den.iter().enumerate() {
                rem[i + k] -= c * dk;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    let mut result = m;
    let mut k = m;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            while k.is_multiple_of(p) {
                k /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if k > 1 {
        result -= result / k;
    }
    result
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `ζ_m^k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        let mut full = vec![BigRational::zero(); m as usize];
        full[k.rem_euclid(m as i64) as usize] = BigRational::one();
        Self::reduce_full(m, full)
    }

    /// Builds a value from coefficients of `ζ_m^k` for `k = 0..m` (any length
    /// ≤ m; exponents are not required to be reduced).
    pub fn from_powers(m: u32, powers: &[BigRational]) -> Self {
        let mut full = vec![BigRational::zero(); m as usize];
        for (k, c) in powers.iter().enumerate() {
            if !c.is_zero() {
                full[k % m as usize] += c;
            }
        }
        Self::reduce_full(m, full)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        let r = self.to_rational()?;
        r.is_integer().then(|| r.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer()?.to_i64()
    }

    /// Full-length representation over conductor `l` (a multiple of ours).
    fn expand(&self, l: u32) -> Vec<BigRational> {
        debug_assert_eq!(l % self.conductor, 0);
        let step = (l / self.conductor) as usize;
        let mut full = vec![BigRational::zero(); l as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                full[(k * step) % l as usize] += c;
            }
        }
        full
    }

    /// Reduces a length-`m` vector of `ζ_m` power coefficients.
    fn reduce_full(m: u32, mut full: Vec<BigRational>) -> Self {
        if m == 1 {
            return Self::from_rational(full.swap_remove(0));
        }
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        for i in (deg..full.len()).rev() {
            if full[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut full[i], BigRational::zero());
            for (k, &pk) in phi.iter().enumerate().take(deg) {
                if pk != 0 {
                    full[i - deg + k] -= &c * BigRational::from_integer(pk.into());
                }
            }
        }
        full.truncate(deg);
        if full[1..].iter().all(Zero::is_zero) {
            return Self::from_rational(full.swap_remove(0));
        }
        Cyclotomic {
            conductor: m,
            coeffs: full,
        }
    }

    /// Coefficient vector over `Q(ζ_l)`, `l` a multiple of the conductor.
    pub fn coeffs_at(&self, l: u32) -> Vec<BigRational> {
        if !l.is_multiple_of(self.conductor) {
            panic!("conductor {} does not divide {l}", self.conductor);
        }
        Self::reduce_full_unsimplified(l, self.expand(l))
    }

    fn reduce_full_unsimplified(l: u32, full: Vec<BigRational>) -> Vec<BigRational> {
        let v = Self::reduce_full(l, full);
        if v.conductor == l {
            v.coeffs
        } else {
            let mut out = vec![BigRational::zero(); totient(l) as usize];
            out[0] = v.coeffs[0].clone();
            out
        }
    }

    /// Complex conjugate: `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let m = self.conductor;
        let full = self.expand(m);
        let mut out = vec![BigRational::zero(); m as usize];
        for (k, c) in full.into_iter().enumerate() {
            out[(m as usize - k) % m as usize] += c;
        }
        Self::reduce_full(m, out)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn div_int(&self, d: i64) -> Self {
        self.scale(&BigRational::new(1.into(), d.into()))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    fn combine(&self, other: &Self, sign: i32) -> Self {
        if self.is_rational() && other.is_rational() {
            let v = if sign > 0 {
                &self.coeffs[0] + &other.coeffs[0]
            } else {
                &self.coeffs[0] - &other.coeffs[0]
            };
            return Self::from_rational(v);
        }
        let l = self.conductor.lcm(&other.conductor);
        let mut a = self.expand(l);
        for (x, y) in a.iter_mut().zip(other.expand(l)) {
            if sign > 0 {
                *x += y;
            } else {
                *x -= y;
            }
        }
        Self::reduce_full(l, a)
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        let l = self.conductor.lcm(&other.conductor);
        let a = self.expand(l);
        let b = other.expand(l);
        let mut out = vec![BigRational::zero(); l as usize];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[(i + j) % l as usize] += x * y;
                }
            }
        }
        Self::reduce_full(l, out)
    }

    /// A total order usable for deterministic sorting: rationals first by
    /// value, then irrationals by conductor and coefficients.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => self.coeffs[0].cmp(&other.coeffs[0]),
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self
                .conductor
                .cmp(&other.conductor)
                .then_with(|| self.coeffs.cmp(&other.coeffs)),
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        // Canonical forms in different fields can still agree only if both
        // live in a common subfield; compare over the compositum.
        (self - other).is_zero()
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine(rhs, 1)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine(rhs, -1)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.product(rhs)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(&-BigRational::one())
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Integers print plainly; other values as `c*ζm^k` sums, e.g. `2*ζ12^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.pad(&fmt_rational(&self.coeffs[0]));
        }
        let m = self.conductor;
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if k == 0 {
                out.push_str(&fmt_rational(&mag));
                continue;
            }
            if !mag.is_one() {
                out.push_str(&fmt_rational(&mag));
                out.push('*');
            }
            if k == 1 {
                out.push_str(&format!("ζ{m}"));
            } else {
                out.push_str(&format!("ζ{m}^{k}"));
            }
        }
        f.pad(&out)
    }
}
