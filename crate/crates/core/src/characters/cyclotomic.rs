//! Exact arithmetic in `Z[zeta_m]`.
//!
//! Elements are kept as residues in `Z[x]/(x^m - 1)`, which makes products
//! plain cyclic convolutions. Reduction modulo the cyclotomic polynomial
//! `Phi_m` happens only when a canonical form is needed (zero tests,
//! printing).

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::ringpoly::write_term;

/// `Phi_m` with coefficients from the constant term upward, computed from
/// `x^m - 1 = prod_{d | m} Phi_d` by exact division.
///
/// # Panics
///
/// Panics if `m == 0`.
pub fn cyclotomic_poly(m: usize) -> Vec<i64> {
    assert!(m > 0, "cyclotomic_poly: m must be positive");
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = exact_div(&num, &cyclotomic_poly(d));
        }
    }
    num
}

/// Quotient of `num` by the monic polynomial `den`; the remainder must be zero.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let q = rem[i + dd];
        quot[i] = q;
        for (j, &c) in den.iter().enumerate() {
            rem[i + j] -= q * c;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// `x^j mod Phi_m` for `j < m`, so any residue mod `x^m - 1` reduces by a
/// single linear combination.
#[derive(Debug)]
pub(crate) struct ReductionTable {
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl ReductionTable {
    fn build(m: usize) -> Self {
        let phi = cyclotomic_poly(m);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(m);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x, then eliminate x^deg using the monic Phi_m
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..deg {
                cur[i] -= top * phi[i];
            }
        }
        ReductionTable { phi, powers }
    }

    pub(crate) fn get(m: usize) -> Arc<ReductionTable> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<ReductionTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.read().expect("cache lock").get(&m) {
            return Arc::clone(t);
        }
        let table = Arc::new(Self::build(m));
        cache
            .write()
            .expect("cache lock")
            .entry(m)
            .or_insert(table)
            .clone()
    }

    pub(crate) fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Writes the reduction of `coeffs` into `out` (length `degree()`).
    pub(crate) fn reduce_into(&self, coeffs: &[i64], out: &mut [i64]) {
        out.iter_mut().for_each(|c| *c = 0);
        for (c, p) in coeffs.iter().zip(&self.powers) {
            if *c == 0 {
                continue;
            }
            for (o, &q) in out.iter_mut().zip(p) {
                *o = q
                    .checked_mul(*c)
                    .and_then(|x| o.checked_add(x))
                    .expect("overflow in cyclotomic reduction");
            }
        }
    }
}

/// An element `sum_j c_j zeta_m^j` of `Z[zeta_m]`, `zeta_m = exp(2 pi i / m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    modulus: usize,
    coeffs: Vec<i64>,
}

impl CyclotomicElement {
    pub fn zero(m: usize) -> Self {
        assert!(m > 0, "modulus must be positive");
        CyclotomicElement {
            modulus: m,
            coeffs: vec![0; m],
        }
    }

    pub fn constant(m: usize, c: i64) -> Self {
        let mut e = Self::zero(m);
        e.coeffs[0] = c;
        e
    }

    /// `c * zeta_m^j`; `j` is taken modulo `m`.
    pub fn monomial(m: usize, j: usize, c: i64) -> Self {
        let mut e = Self::zero(m);
        e.coeffs[j % m] = c;
        e
    }

    /// Takes a residue vector; its length becomes the modulus.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "modulus must be positive");
        CyclotomicElement {
            modulus: coeffs.len(),
            coeffs,
        }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [i64] {
        &mut self.coeffs
    }

    /// Complex conjugate: `zeta^j -> zeta^(-j)`.
    pub fn conj(&self) -> Self {
        let m = self.modulus;
        let mut out = vec![0; m];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[(m - j) % m] = c;
        }
        CyclotomicElement {
            modulus: m,
            coeffs: out,
        }
    }

    /// Canonical representative: the remainder modulo `Phi_m`, with
    /// `deg Phi_m` coefficients from the constant term upward.
    pub fn reduced(&self) -> Vec<i64> {
        let table = ReductionTable::get(self.modulus);
        let mut out = vec![0; table.degree()];
        table.reduce_into(&self.coeffs, &mut out);
        out
    }

    /// True iff the represented algebraic number is zero, i.e. `Phi_m`
    /// divides the representative polynomial.
    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    /// The integer value when the element reduces to a constant.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        r[1..].iter().all(|&c| c == 0).then_some(r[0])
    }

    /// Same element viewed in `Z[zeta_n]` for a multiple `n` of the modulus.
    pub fn lift(&self, n: usize) -> Self {
        assert!(n % self.modulus == 0, "{n} is not a multiple of {}", self.modulus);
        let step = n / self.modulus;
        let mut out = vec![0; n];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j * step] = c;
        }
        CyclotomicElement {
            modulus: n,
            coeffs: out,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let m = self.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| Complex64::from_polar(c as f64, TAU * j as f64 / m))
            .sum()
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "cyclotomic moduli differ; lift to a common multiple first"
        );
    }

    /// Product in `Z[x]/(x^m - 1)`.
    fn product(&self, other: &Self) -> Self {
        self.check(other);
        let m = self.modulus;
        let mut out = vec![0i64; m];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let slot = &mut out[(i + j) % m];
                *slot = a
                    .checked_mul(b)
                    .and_then(|p| slot.checked_add(p))
                    .expect("overflow in cyclotomic product");
            }
        }
        CyclotomicElement {
            modulus: m,
            coeffs: out,
        }
    }

    fn zip_with(&self, other: &Self, op: fn(i64, i64) -> Option<i64>) -> Self {
        self.check(other);
        CyclotomicElement {
            modulus: self.modulus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| op(a, b).expect("overflow in cyclotomic arithmetic"))
                .collect(),
        }
    }

    pub fn scale(&self, s: i64) -> Self {
        CyclotomicElement {
            modulus: self.modulus,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| c.checked_mul(s).expect("overflow in cyclotomic arithmetic"))
                .collect(),
        }
    }
}

/// Free-function form of [`CyclotomicElement::is_zero`].
pub fn cyclotomic_is_zero(c: &CyclotomicElement) -> bool {
    c.is_zero()
}

impl Add for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: Self) -> CyclotomicElement {
        self.zip_with(rhs, i64::checked_add)
    }
}

impl Sub for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: Self) -> CyclotomicElement {
        self.zip_with(rhs, i64::checked_sub)
    }
}

impl Mul for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: Self) -> CyclotomicElement {
        self.product(rhs)
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        self.scale(-1)
    }
}

/// Formats a coefficient list (constant term first) as a polynomial in `var`.
pub(crate) fn format_poly(coeffs: &[i64], var: &str) -> String {
    let mut s = String::new();
    let mut first = true;
    for (j, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match j {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{j}"),
        };
        write_term(&mut s, c, &mono, first).expect("write to string");
        first = false;
    }
    if first {
        s.push('0');
    }
    s
}

impl fmt::Display for CyclotomicElement {
    /// The reduced form as a polynomial in `z = zeta_m`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(&self.reduced(), "z"))
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[m={}]({})", self.modulus, self)
    }
}

/// Euler's totient, used only to cross-check `deg Phi_m`.
#[cfg(test)]
fn totient(m: usize) -> usize {
    use num_integer::Integer;
    (1..=m).filter(|&j| j.gcd(&m) == 1).count()
}
