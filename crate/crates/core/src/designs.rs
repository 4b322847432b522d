//! Difference-set verification with certificates.
//!
//! Every check below answers the same question by a different route, and
//! [`Method::All`] runs them side by side:
//!
//! | method | test |
//! |---|---|
//! | `definition` | pair counts `lambda_g` from [`difference_table`] |
//! | `groupring` | `D D^(-1) = lambda G + (k - lambda) e` coefficientwise |
//! | `ideal` | unreduced `kappa_D` folds to zero modulo `(Xl^nl - 1)` |
//! | `characters-exact` | `Psi` vanishes at every character, in `Z[zeta_m]` |
//! | `characters-float` | same, in floating point |
//!
//! `|D| = k` is always checked first; a mismatch is a rejection whose witness
//! is the popcount, never an error.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::characters::{
    char_sum, char_sum_float, enumerate_characters, float_tolerance, group_char_sum, psi_all,
    CharacterPoint, CyclotomicElement, PsiReport,
};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::ringpoly::{fold_polynomial, kappa_unreduced, unreduced_with, RingElement, Subset};

/// `(v, k, lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DesignParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
}

impl DesignParams {
    pub fn new(v: u64, k: u64, lambda: u64) -> Result<Self> {
        if k > v {
            return Err(Error::ParamOutOfRange(format!("k = {k} exceeds v = {v}")));
        }
        Ok(DesignParams { v, k, lambda })
    }

    pub fn for_group(g: &GroupSpec, k: u64, lambda: u64) -> Result<Self> {
        Self::new(g.order() as u64, k, lambda)
    }

    /// Ryser's necessary condition `lambda (v - 1) = k (k - 1)`.
    pub fn ryser_ok(&self) -> bool {
        let lhs = (self.lambda as u128) * (self.v.saturating_sub(1) as u128);
        let rhs = (self.k as u128) * (self.k.saturating_sub(1) as u128);
        lhs == rhs
    }

    /// Parameters of the complementary design, `(v, v - k, v - 2k + lambda)`,
    /// when that `lambda` is nonnegative.
    pub fn complement(&self) -> Option<Self> {
        let lambda = (self.v + self.lambda).checked_sub(2 * self.k)?;
        Some(DesignParams {
            v: self.v,
            k: self.v - self.k,
            lambda,
        })
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v, self.k, self.lambda)
    }
}

/// Target data for a generalized difference set: `lambda_g = lambda1` on
/// `M \ {e}` and `lambda2` off `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedParams {
    m_set: Subset,
    pub lambda1: u64,
    pub lambda2: u64,
    contains_identity: bool,
}

impl GeneralizedParams {
    pub fn new(m_set: Subset, lambda1: u64, lambda2: u64) -> Result<Self> {
        if m_set.is_empty() {
            return Err(Error::EmptyMSet);
        }
        let contains_identity = m_set.contains_rank(0);
        Ok(GeneralizedParams {
            m_set,
            lambda1,
            lambda2,
            contains_identity,
        })
    }

    pub fn m_set(&self) -> &Subset {
        &self.m_set
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    /// Expected `lambda_g` for a non-identity rank.
    fn expected(&self, rank: usize) -> u64 {
        if self.m_set.contains_rank(rank) {
            self.lambda1
        } else {
            self.lambda2
        }
    }

    /// The constant term: `k - lambda1` if `e` is in `M`, else `k - lambda2`.
    fn constant(&self, k: i64) -> i64 {
        k - if self.contains_identity {
            self.lambda1 as i64
        } else {
            self.lambda2 as i64
        }
    }
}

/// `lambda_g = |{(d1, d2) in D x D : g = d1 - d2}|` for every `g`, by rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceTable {
    pub counts: Vec<u64>,
}

impl DifferenceTable {
    pub fn identity_count(&self) -> u64 {
        self.counts[0]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Some(lambda)` when every non-identity count equals `lambda`.
    pub fn flat_off_identity(&self) -> Option<u64> {
        let rest = &self.counts[1..];
        match rest.first() {
            None => Some(0),
            Some(&l) => rest.iter().all(|&c| c == l).then_some(l),
        }
    }
}

/// Brute-force pair counts. This is the reference every other method is
/// compared against.
pub fn difference_table(d: &Subset) -> DifferenceTable {
    let g = d.group();
    let members: Vec<usize> = d.ranks().collect();
    let mut counts = vec![0u64; g.order()];
    for &a in &members {
        for &b in &members {
            counts[g.sub_ranks(a, b)] += 1;
        }
    }
    DifferenceTable { counts }
}

/// Reads `(v, k, lambda)` off the difference table when it is flat away
/// from the identity; `None` means `D` is not a difference set for any
/// `lambda`.
pub fn infer_params(d: &Subset) -> Option<DesignParams> {
    let table = difference_table(d);
    let lambda = table.flat_off_identity()?;
    Some(DesignParams {
        v: d.group().order() as u64,
        k: d.len() as u64,
        lambda,
    })
}

/// Verification route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Definition,
    GroupRing,
    IdealMembership,
    CharactersExact,
    CharactersFloat,
    All,
}

impl Method {
    pub const SINGLE: [Method; 5] = [
        Method::Definition,
        Method::GroupRing,
        Method::IdealMembership,
        Method::CharactersExact,
        Method::CharactersFloat,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Definition => "definition",
            Method::GroupRing => "groupring",
            Method::IdealMembership => "ideal",
            Method::CharactersExact => "characters-exact",
            Method::CharactersFloat => "characters-float",
            Method::All => "all",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "definition" => Method::Definition,
            "groupring" => Method::GroupRing,
            "ideal" => Method::IdealMembership,
            "characters" | "characters-exact" => Method::CharactersExact,
            "characters-float" => Method::CharactersFloat,
            "all" => Method::All,
            other => {
                return Err(Error::parse(0, format!("unknown method `{other}`")));
            }
        })
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

fn serialize_cyclotomic<S: Serializer>(
    c: &CyclotomicElement,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

/// Evidence for a rejection.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `|D| != k`.
    SizeMismatch { popcount: u64, k: u64 },
    /// An element whose difference count is wrong.
    Difference {
        element: GroupElement,
        count: u64,
        expected: u64,
    },
    /// A character where `Psi` does not vanish.
    Character {
        character: CharacterPoint,
        roots: Vec<String>,
        #[serde(serialize_with = "serialize_cyclotomic")]
        value: CyclotomicElement,
        approx: [f64; 2],
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::SizeMismatch { popcount, k } => write!(f, "|D| = {popcount} but k = {k}"),
            Witness::Difference {
                element,
                count,
                expected,
            } => write!(f, "lambda_{element} = {count}, expected {expected}"),
            Witness::Character {
                character,
                roots,
                value,
                ..
            } => write!(
                f,
                "Psi({}) = {} != 0 at character {character}",
                roots.join(", "),
                value
            ),
        }
    }
}

/// Verdict of one route inside an `all` run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MethodRun {
    pub method: Method,
    pub verdict: bool,
}

/// Parameters echoed into a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CertifiedParams {
    Plain(DesignParams),
    Generalized {
        v: u64,
        m_size: u64,
        k: u64,
        lambda1: u64,
        lambda2: u64,
        m_set: String,
    },
}

/// Outcome of a verification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub verdict: bool,
    pub method: Method,
    pub params: CertifiedParams,
    pub witness: Option<Witness>,
    /// Per-route verdicts; filled for [`Method::All`].
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<MethodRun>,
}

impl Certificate {
    /// True when all routes run agree (vacuously for a single route).
    pub fn methods_agree(&self) -> bool {
        self.runs.iter().all(|r| r.verdict == self.verdict)
    }

    /// Re-derives the witness violation from scratch against `d`.
    /// Accepting certificates carry no witness and return `true`.
    pub fn recheck(&self, d: &Subset) -> Result<bool> {
        let Some(w) = &self.witness else {
            return Ok(self.verdict);
        };
        Ok(match w {
            Witness::SizeMismatch { popcount, k } => {
                d.len() as u64 == *popcount && popcount != k
            }
            Witness::Difference {
                element,
                count,
                expected,
            } => {
                let r = d.group().rank(element)?;
                r != 0 && difference_table(d).counts[r] == *count && count != expected
            }
            Witness::Character {
                character, value, ..
            } => {
                let exact = match &self.params {
                    CertifiedParams::Plain(p) => {
                        crate::characters::psi_eval(d, p.k, p.lambda, character)?.value
                    }
                    CertifiedParams::Generalized {
                        k,
                        lambda1,
                        lambda2,
                        m_set,
                        ..
                    } => {
                        let m = Subset::parse(m_set, d.group())?;
                        let gp = GeneralizedParams::new(m, *lambda1, *lambda2)?;
                        psi_star(d, &gp, *k as i64, character)?.value
                    }
                };
                !exact.is_zero() && (&exact - value).is_zero()
            }
        })
    }
}

fn check_group_order(d: &Subset, v: u64) -> Result<()> {
    if d.group().order() as u64 != v {
        return Err(Error::ParamOutOfRange(format!(
            "params have v = {v} but the group has order {}",
            d.group().order()
        )));
    }
    Ok(())
}

fn difference_witness(g: &GroupSpec, rank: usize, count: u64, expected: u64) -> Witness {
    Witness::Difference {
        element: g.unrank(rank).expect("rank below order"),
        count,
        expected,
    }
}

/// The character order of `chi`: the least `o` with `o * a_l = 0 mod n_l`
/// for every `l`.
fn character_order(chi: &CharacterPoint) -> usize {
    use num_integer::Integer;
    chi.exps()
        .iter()
        .zip(chi.group().orders())
        .fold(1, |acc, (&a, &n)| acc.lcm(&(n / a.gcd(&n))))
}

/// Among failing reports, prefers the character of smallest order (real
/// characters first), then the lowest rank.
fn character_witness<'a>(
    reports: impl Iterator<Item = &'a PsiReport>,
    failing: impl Fn(&PsiReport) -> bool,
) -> Option<Witness> {
    reports
        .filter(|r| failing(r))
        .min_by_key(|r| character_order(&r.character))
        .map(|r| {
            let z = r.approx;
            Witness::Character {
                character: r.character.clone(),
                roots: r.character.root_labels(),
                value: r.value.clone(),
                approx: [z.re, z.im],
            }
        })
}

/// Per-element target for `D D^(-1)`, with the identity coefficient at rank 0.
struct Target<'a> {
    k: i64,
    off_identity: &'a dyn Fn(usize) -> u64,
}

impl Target<'_> {
    fn coefficient(&self, rank: usize) -> i64 {
        if rank == 0 {
            self.k
        } else {
            (self.off_identity)(rank) as i64
        }
    }
}

fn run_definition(d: &Subset, target: &Target) -> Option<Witness> {
    let table = difference_table(d);
    (1..table.counts.len())
        .find(|&r| table.counts[r] != (target.off_identity)(r))
        .map(|r| difference_witness(d.group(), r, table.counts[r], (target.off_identity)(r)))
}

fn run_group_ring(d: &Subset, target: &Target) -> Result<Option<Witness>> {
    let rho = RingElement::from_subset(d);
    let product = rho.multiply(&rho.reflect())?;
    Ok((0..product.coeffs().len())
        .find(|&r| product.coeff(r) != target.coefficient(r))
        .map(|r| {
            difference_witness(
                d.group(),
                r,
                product.coeff(r) as u64,
                target.coefficient(r) as u64,
            )
        }))
}

/// Folds the unreduced kappa polynomial and reads a witness off the first
/// surviving coefficient. Off the identity, coefficient `c` at `g` means
/// `lambda_g = expected + c`.
fn run_ideal(d: &Subset, raw: crate::ringpoly::RawPolynomial, target: &Target) -> Result<Option<Witness>> {
    let folded = fold_polynomial(&raw, d.group())?;
    if folded.is_in_ideal() {
        return Ok(None);
    }
    let r = folded
        .coeffs()
        .iter()
        .position(|&c| c != 0)
        .expect("nonzero element");
    let expected = target.coefficient(r);
    Ok(Some(difference_witness(
        d.group(),
        r,
        (expected + folded.coeff(r)) as u64,
        expected as u64,
    )))
}

struct Outcome {
    witness: Option<Witness>,
    runs: Vec<MethodRun>,
}

/// Runs `method` (or every route for `All`), given closures for each route.
fn dispatch(
    method: Method,
    mut route: impl FnMut(Method) -> Result<Option<Witness>>,
) -> Result<Outcome> {
    if method != Method::All {
        return Ok(Outcome {
            witness: route(method)?,
            runs: Vec::new(),
        });
    }
    let mut runs = Vec::new();
    let mut witnesses = Vec::new();
    for m in Method::SINGLE {
        let w = route(m)?;
        runs.push(MethodRun {
            method: m,
            verdict: w.is_none(),
        });
        witnesses.push((m, w));
    }
    // a character witness is preferred: it is what the character test reports
    let witness = witnesses
        .iter()
        .find(|(m, w)| *m == Method::CharactersExact && w.is_some())
        .or_else(|| witnesses.iter().find(|(_, w)| w.is_some()))
        .and_then(|(_, w)| w.clone());
    Ok(Outcome { witness, runs })
}

fn certificate(method: Method, params: CertifiedParams, outcome: Outcome) -> Certificate {
    let verdict = outcome.witness.is_none() && outcome.runs.iter().all(|r| r.verdict);
    Certificate {
        verdict,
        method,
        params,
        witness: outcome.witness,
        runs: outcome.runs,
    }
}

/// Decides whether `d` is a `(v, k, lambda)` difference set.
pub fn verify(d: &Subset, p: &DesignParams, method: Method) -> Result<Certificate> {
    check_group_order(d, p.v)?;
    let params = CertifiedParams::Plain(*p);
    if d.len() as u64 != p.k {
        return Ok(size_mismatch(d, p.k, method, params));
    }
    let lambda = p.lambda;
    let target = Target {
        k: p.k as i64,
        off_identity: &|_| lambda,
    };
    let outcome = dispatch(method, |m| match m {
        Method::Definition => Ok(run_definition(d, &target)),
        Method::GroupRing => run_group_ring(d, &target),
        Method::IdealMembership => run_ideal(d, kappa_unreduced(d, p.k, p.lambda)?, &target),
        Method::CharactersExact => {
            let reports = psi_all(d, p.k, p.lambda)?;
            Ok(character_witness(reports.iter(), |r| !r.is_zero))
        }
        Method::CharactersFloat => {
            let reports = psi_all(d, p.k, p.lambda)?;
            Ok(character_witness(reports.iter(), |r| !r.float_is_zero))
        }
        Method::All => unreachable!("dispatch expands All"),
    })?;
    Ok(certificate(method, params, outcome))
}

fn size_mismatch(d: &Subset, k: u64, method: Method, params: CertifiedParams) -> Certificate {
    Certificate {
        verdict: false,
        method,
        params,
        witness: Some(Witness::SizeMismatch {
            popcount: d.len() as u64,
            k,
        }),
        runs: Vec::new(),
    }
}

/// Verifies many subsets against the same parameters; results keep input order.
pub fn verify_batch(
    sets: &[Subset],
    p: &DesignParams,
    method: Method,
) -> Vec<Result<Certificate>> {
    sets.par_iter().map(|d| verify(d, p, method)).collect()
}

/// `Psi*` at one character:
/// `|chi(D)|^2 - lambda1 chi(M) - lambda2 chi(S \ M) - c`, with
/// `c = k - lambda1` if `e` is in `M` and `k - lambda2` otherwise.
pub fn psi_star(
    d: &Subset,
    gp: &GeneralizedParams,
    k: i64,
    chi: &CharacterPoint,
) -> Result<PsiReport> {
    let g = d.group();
    let s = char_sum(d, chi)?;
    let on_m = char_sum(gp.m_set(), chi)?;
    let whole = group_char_sum(g, chi);
    let (l1, l2) = (gp.lambda1 as i64, gp.lambda2 as i64);
    let constant = gp.constant(k);

    let mut value = &(&s * &s.conj()) - &on_m.scale(l1 - l2);
    value.coeffs_mut()[0] -= l2 * whole + constant;
    let is_zero = value.is_zero();

    let sf = char_sum_float(d, chi)?;
    let mf = char_sum_float(gp.m_set(), chi)?;
    let approx = sf * sf.conj()
        - mf * (l1 - l2) as f64
        - num_complex::Complex64::new((l2 * whole + constant) as f64, 0.0);
    let float_is_zero = approx.norm() < float_tolerance(k as u64);
    Ok(PsiReport {
        character: chi.clone(),
        value,
        approx,
        is_zero,
        float_is_zero,
    })
}

/// Decides whether `d` is a `(v, |M|, k, lambda1, lambda2)` generalized
/// difference set related to `M`.
pub fn verify_generalized(
    d: &Subset,
    gp: &GeneralizedParams,
    k: u64,
    method: Method,
) -> Result<Certificate> {
    let g = d.group();
    if gp.m_set().group() != g {
        return Err(Error::GroupMismatch {
            left: g.to_string(),
            right: gp.m_set().group().to_string(),
        });
    }
    if k <= 1 {
        return Err(Error::GeneralizedSmallK(k));
    }
    if k > g.order() as u64 {
        return Err(Error::ParamOutOfRange(format!(
            "k = {k} exceeds v = {}",
            g.order()
        )));
    }
    let params = CertifiedParams::Generalized {
        v: g.order() as u64,
        m_size: gp.m_set().len() as u64,
        k,
        lambda1: gp.lambda1,
        lambda2: gp.lambda2,
        m_set: gp.m_set().to_string(),
    };
    if d.len() as u64 != k {
        return Ok(size_mismatch(d, k, method, params));
    }
    let ki = k as i64;
    let expected = |r: usize| gp.expected(r);
    let target = Target {
        k: ki,
        off_identity: &expected,
    };
    let outcome = dispatch(method, |m| match m {
        Method::Definition => Ok(run_definition(d, &target)),
        Method::GroupRing => run_group_ring(d, &target),
        Method::IdealMembership => {
            // weights lambda1 on M, lambda2 off M; the constant absorbs the e-term
            let raw = unreduced_with(d, |r| gp.expected(r) as i64, gp.constant(ki))?;
            run_ideal(d, raw, &target)
        }
        Method::CharactersExact | Method::CharactersFloat => {
            let reports = enumerate_characters(g)
                .iter()
                .map(|chi| psi_star(d, gp, ki, chi))
                .collect::<Result<Vec<_>>>()?;
            Ok(if m == Method::CharactersExact {
                character_witness(reports.iter(), |r| !r.is_zero)
            } else {
                character_witness(reports.iter(), |r| !r.float_is_zero)
            })
        }
        Method::All => unreachable!("dispatch expands All"),
    })?;
    Ok(certificate(method, params, outcome))
}

/// `G \ D`.
pub fn complement(d: &Subset) -> Subset {
    let mut out = d.clone();
    let bits = out.bits_mut();
    let v = bits.len();
    for w in bits.as_raw_mut_slice() {
        *w = !*w;
    }
    // clear padding past v so equality and popcount stay exact
    let tail = bits.as_raw_slice().len() * 64;
    if tail > v {
        let last = bits.as_raw_mut_slice().last_mut().expect("nonempty");
        *last &= u64::MAX >> (tail - v);
    }
    out.recount();
    out
}

/// `D + g = {x + g : x in D}`.
pub fn translate(d: &Subset, g: &GroupElement) -> Result<Subset> {
    let group = d.group();
    let shift = group.rank(g)?;
    Subset::from_ranks(group, d.ranks().map(|r| group.add_ranks(r, shift)))
}
