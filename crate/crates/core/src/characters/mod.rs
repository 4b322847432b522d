//! Characters of `G` and the character-sum form of the difference-set test.
//!
//! A character is a tuple of roots of unity `xi_l = exp(2 pi i a_l / n_l)`,
//! stored as the exponent tuple `(a_1, ..., a_t)`. Evaluating the point
//! representation of `D` at a character gives the character sum
//! `chi(D) = sum_{x in D} zeta_m^{phase(x)}` with `m` the group exponent.
//! `D` is a `(v, k, lambda)` difference set iff
//! `Psi(chi) = chi(D) conj(chi(D)) - lambda chi(G) - (k - lambda)` vanishes
//! at every character, trivial one included.
//!
//! Two backends are provided. The exact one works in `Z[zeta_m]` and is
//! authoritative; the float one is a cross-check that declares a value zero
//! when its magnitude is below [`float_tolerance`].

mod cyclotomic;

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

pub use cyclotomic::{cyclotomic_is_zero, cyclotomic_poly, CyclotomicElement};
pub(crate) use cyclotomic::{format_poly, ReductionTable};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::ringpoly::{check_params, Subset};

/// Evaluate characters on worker threads only for groups at least this large.
const PARALLEL_MIN_ORDER: usize = 256;

/// A point `xi` of `U`, i.e. a character of `G`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharacterPoint {
    group: GroupSpec,
    exps: Vec<usize>,
    /// `(m / n_l) * a_l`, the contribution of coordinate `l` to the phase
    weights: Vec<usize>,
}

impl CharacterPoint {
    pub fn new(g: &GroupSpec, exps: &[usize]) -> Result<Self> {
        let e = g.element(exps)?;
        Ok(Self::build(g, e.coords().to_vec()))
    }

    /// The character whose exponent tuple has the given rank.
    pub fn from_rank(g: &GroupSpec, rank: usize) -> Result<Self> {
        let e = g.unrank(rank)?;
        Ok(Self::build(g, e.coords().to_vec()))
    }

    pub fn trivial(g: &GroupSpec) -> Self {
        Self::build(g, vec![0; g.rank_count()])
    }

    fn build(g: &GroupSpec, exps: Vec<usize>) -> Self {
        let m = g.exponent();
        let weights = exps
            .iter()
            .zip(g.orders())
            .map(|(&a, &n)| (m / n) * a % m)
            .collect();
        CharacterPoint {
            group: g.clone(),
            exps,
            weights,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn exps(&self) -> &[usize] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    /// Exponent `j` such that the character takes the value `zeta_m^j` on
    /// the element of the given rank.
    pub fn phase(&self, rank: usize) -> usize {
        let m = self.group.exponent();
        self.group
            .digits(rank)
            .zip(&self.weights)
            .fold(0, |acc, (x, &w)| (acc + x * w) % m)
    }

    /// Human-readable roots: `1`, `-1`, `i`, `-i`, or `e(a/n)` for
    /// `exp(2 pi i a / n)` in lowest terms.
    pub fn root_labels(&self) -> Vec<String> {
        self.exps
            .iter()
            .zip(self.group.orders())
            .map(|(&a, &n)| root_label(a, n))
            .collect()
    }
}

fn root_label(a: usize, n: usize) -> String {
    use num_integer::Integer;
    if a == 0 {
        return "1".into();
    }
    let g = a.gcd(&n);
    match (a / g, n / g) {
        (1, 2) => "-1".into(),
        (1, 4) => "i".into(),
        (3, 4) => "-i".into(),
        (p, q) => format!("e({p}/{q})"),
    }
}

impl fmt::Display for CharacterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for CharacterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacterPoint{}[{}]", self, self.root_labels().join(","))
    }
}

impl Serialize for CharacterPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exps.serialize(s)
    }
}

/// All `v` characters in rank order of their exponent tuples; the trivial
/// character comes first.
pub fn enumerate_characters(g: &GroupSpec) -> Vec<CharacterPoint> {
    (0..g.order())
        .map(|r| CharacterPoint::from_rank(g, r).expect("rank below order"))
        .collect()
}

fn check_group(d: &Subset, chi: &CharacterPoint) -> Result<()> {
    if d.group() != chi.group() {
        return Err(Error::GroupMismatch {
            left: d.group().to_string(),
            right: chi.group().to_string(),
        });
    }
    Ok(())
}

/// `chi(D)` as an exact element of `Z[zeta_m]`.
pub fn char_sum(d: &Subset, chi: &CharacterPoint) -> Result<CyclotomicElement> {
    check_group(d, chi)?;
    Ok(char_sum_unchecked(d, chi))
}

fn char_sum_unchecked(d: &Subset, chi: &CharacterPoint) -> CyclotomicElement {
    let mut s = CyclotomicElement::zero(d.group().exponent());
    let coeffs = s.coeffs_mut();
    for r in d.ranks() {
        coeffs[chi.phase(r)] += 1;
    }
    s
}

/// `chi(D)` in floating point, summed as `exp(2 pi i sum_l a_l x_l / n_l)`
/// without going through the exact phase.
pub fn char_sum_float(d: &Subset, chi: &CharacterPoint) -> Result<Complex64> {
    check_group(d, chi)?;
    let g = d.group();
    Ok(d
        .ranks()
        .map(|r| {
            let turns: f64 = g
                .digits(r)
                .zip(chi.exps())
                .zip(g.orders())
                .map(|((x, &a), &n)| (a * x) as f64 / n as f64)
                .sum();
            Complex64::from_polar(1.0, TAU * turns)
        })
        .sum())
}

/// `chi(G)`: `v` for the trivial character and `0` otherwise.
pub fn group_char_sum(g: &GroupSpec, chi: &CharacterPoint) -> i64 {
    if chi.is_trivial() {
        g.order() as i64
    } else {
        0
    }
}

/// Float-backend zero threshold: `1e-6 * (1 + k^2)`.
pub fn float_tolerance(k: u64) -> f64 {
    1e-6 * (1.0 + (k as f64) * (k as f64))
}

/// `Psi` evaluated at one character, by both backends.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiReport {
    pub character: CharacterPoint,
    /// Exact value in `Z[zeta_m]`.
    pub value: CyclotomicElement,
    /// Float-backend value.
    pub approx: Complex64,
    /// Exact verdict.
    pub is_zero: bool,
    /// Float verdict under [`float_tolerance`].
    pub float_is_zero: bool,
}

/// `Psi(xi, alpha)` for the point representation `alpha` of `D`.
pub fn psi_eval(d: &Subset, k: u64, lambda: u64, chi: &CharacterPoint) -> Result<PsiReport> {
    check_group(d, chi)?;
    let (ki, li) = check_params(d.group(), k, lambda)?;
    Ok(psi_unchecked(d, k, ki, li, chi))
}

fn psi_unchecked(d: &Subset, k: u64, ki: i64, li: i64, chi: &CharacterPoint) -> PsiReport {
    let g = d.group();
    let shift = li * group_char_sum(g, chi) + (ki - li);

    let s = char_sum_unchecked(d, chi);
    let mut value = &s * &s.conj();
    value.coeffs_mut()[0] -= shift;
    let is_zero = value.is_zero();

    let sf = char_sum_float(d, chi).expect("group checked");
    let approx = sf * sf.conj() - Complex64::new(shift as f64, 0.0);
    let float_is_zero = approx.norm() < float_tolerance(k);

    PsiReport {
        character: chi.clone(),
        value,
        approx,
        is_zero,
        float_is_zero,
    }
}

/// `Psi` at every character, in [`enumerate_characters`] order.
pub fn psi_all(d: &Subset, k: u64, lambda: u64) -> Result<Vec<PsiReport>> {
    let g = d.group();
    let (ki, li) = check_params(g, k, lambda)?;
    let chars = enumerate_characters(g);
    let eval = |chi: &CharacterPoint| psi_unchecked(d, k, ki, li, chi);
    Ok(if g.order() >= PARALLEL_MIN_ORDER {
        chars.par_iter().map(eval).collect()
    } else {
        chars.iter().map(eval).collect()
    })
}

/// Reduced norms `|chi(D)|^2` for every character of `D`'s group.
///
/// `Psi(chi)` differs from the norm only by an integer constant, so one
/// profile answers the character test for any number of `(k, lambda)`
/// pairs without recomputing character sums.
#[derive(Debug, Clone)]
pub struct CharacterProfile {
    order: usize,
    degree: usize,
    norms: Vec<i64>,
}

impl CharacterProfile {
    pub fn new(d: &Subset) -> Self {
        let g = d.group();
        let m = g.exponent();
        let table = ReductionTable::get(m);
        let degree = table.degree();
        let v = g.order();
        let mut norms = vec![0i64; v * degree];
        let mut sum = vec![0i64; m];
        let mut norm = vec![0i64; m];
        let ranks: Vec<usize> = d.ranks().collect();
        for (c, out) in norms.chunks_mut(degree).enumerate() {
            let chi = CharacterPoint::from_rank(g, c).expect("rank below order");
            sum.iter_mut().for_each(|s| *s = 0);
            for &r in &ranks {
                sum[chi.phase(r)] += 1;
            }
            norm.iter_mut().for_each(|s| *s = 0);
            for (i, &a) in sum.iter().enumerate().filter(|(_, &a)| a != 0) {
                for (j, &b) in sum.iter().enumerate().filter(|(_, &b)| b != 0) {
                    norm[(i + m - j) % m] += a * b;
                }
            }
            table.reduce_into(&norm, out);
        }
        CharacterProfile {
            order: v,
            degree,
            norms,
        }
    }

    /// Rank of the first character where `Psi` is nonzero.
    pub fn first_nonzero(&self, k: u64, lambda: u64) -> Option<usize> {
        let (k, lambda) = (k as i64, lambda as i64);
        self.norms
            .chunks(self.degree)
            .enumerate()
            .position(|(c, r)| {
                // rank 0 is the trivial character, where chi(G) = v
                let shift = (k - lambda) + if c == 0 { lambda * self.order as i64 } else { 0 };
                r[0] != shift || r[1..].iter().any(|&x| x != 0)
            })
    }

    /// True iff `Psi` vanishes at every character.
    pub fn psi_vanishes(&self, k: u64, lambda: u64) -> bool {
        self.first_nonzero(k, lambda).is_none()
    }
}
