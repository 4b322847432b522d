//! Integer group ring `Z[G]`, identified with `Z[X1..Xt] / (X1^n1 - 1, ..., Xt^nt - 1)`.
//!
//! A [`RingElement`] stores one integer coefficient per group element, in
//! rank order. That vector is already the normal form modulo the ideal: the
//! generators `Xl^nl - 1` reduce a monomial by folding each exponent modulo
//! `nl`, so an element lies in the ideal exactly when its folded
//! coefficients all vanish.

use std::cmp::Ordering;
use std::fmt;

use bitvec::prelude::*;

use crate::error::{Error, Result};
use crate::group::{parse_tuple, GroupElement, GroupSpec};

/// A subset of a group, stored as its 0/1 point representation over the
/// rank order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    group: GroupSpec,
    bits: BitVec<u64, Lsb0>,
    k: usize,
}

impl Subset {
    pub fn empty(g: &GroupSpec) -> Self {
        Subset {
            group: g.clone(),
            bits: bitvec![u64, Lsb0; 0; g.order()],
            k: 0,
        }
    }

    pub fn full(g: &GroupSpec) -> Self {
        Subset {
            group: g.clone(),
            bits: bitvec![u64, Lsb0; 1; g.order()],
            k: g.order(),
        }
    }

    pub fn from_bits(g: &GroupSpec, bits: BitVec<u64, Lsb0>) -> Result<Self> {
        if bits.len() != g.order() {
            return Err(Error::DimensionMismatch {
                expected: g.order(),
                found: bits.len(),
            });
        }
        let k = bits.count_ones();
        Ok(Subset {
            group: g.clone(),
            bits,
            k,
        })
    }

    /// Bit `r` of `mask` marks rank `r`. Requires `v <= 64`.
    pub fn from_mask(g: &GroupSpec, mask: u64) -> Result<Self> {
        let v = g.order();
        if v > 64 || (v < 64 && mask >> v != 0) {
            return Err(Error::ParamOutOfRange(format!(
                "mask {mask:#x} does not fit a group of order {v}"
            )));
        }
        let mut bits = bitvec![u64, Lsb0; 0; v];
        if v > 0 {
            bits.as_raw_mut_slice()[0] = mask;
        }
        Self::from_bits(g, bits)
    }

    /// Builds a subset from ranks; repeated ranks are rejected.
    pub fn from_ranks<I: IntoIterator<Item = usize>>(g: &GroupSpec, ranks: I) -> Result<Self> {
        let mut s = Subset::empty(g);
        for r in ranks {
            if r >= g.order() {
                return Err(Error::RankOutOfRange {
                    rank: r,
                    order: g.order(),
                });
            }
            if s.bits[r] {
                return Err(Error::DuplicateElement(g.unrank(r)?.to_string()));
            }
            s.bits.set(r, true);
            s.k += 1;
        }
        Ok(s)
    }

    pub fn from_elements(g: &GroupSpec, elements: &[GroupElement]) -> Result<Self> {
        let ranks = elements
            .iter()
            .map(|e| g.rank(e))
            .collect::<Result<Vec<_>>>()?;
        Self::from_ranks(g, ranks)
    }

    /// Parses `(0,1);(0,2);...`. Whitespace is ignored; an empty string is
    /// the empty set. Errors carry the byte position of the offending tuple.
    pub fn parse(text: &str, g: &GroupSpec) -> Result<Self> {
        let mut s = Subset::empty(g);
        if text.trim().is_empty() {
            return Ok(s);
        }
        let mut offset = 0;
        for piece in text.split(';') {
            let e = parse_tuple(piece, offset, g)?;
            let r = g.rank(&e)?;
            if s.bits[r] {
                let lead = piece.len() - piece.trim_start().len();
                return Err(Error::parse(
                    offset + lead,
                    format!("duplicate element {e}"),
                ));
            }
            s.bits.set(r, true);
            s.k += 1;
            offset += piece.len() + 1;
        }
        Ok(s)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn bits(&self) -> &BitSlice<u64, Lsb0> {
        &self.bits
    }

    /// Cached popcount `|D|`.
    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn contains_rank(&self, r: usize) -> bool {
        self.bits[r]
    }

    pub fn contains(&self, e: &GroupElement) -> Result<bool> {
        Ok(self.bits[self.group.rank(e)?])
    }

    /// Member ranks in increasing order.
    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.ranks()
            .map(|r| self.group.unrank(r).expect("rank below order"))
            .collect()
    }

    pub(crate) fn bits_mut(&mut self) -> &mut BitVec<u64, Lsb0> {
        &mut self.bits
    }

    pub(crate) fn recount(&mut self) {
        self.k = self.bits.count_ones();
    }
}

impl fmt::Display for Subset {
    /// Same syntax as [`Subset::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(";"))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset[{}]{{{}}}", self.group, self)
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subset {
    /// Lexicographic on the bit vector read from rank 0, with absent before
    /// present. Ties between different groups fall back to the order tuple.
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .cmp(&other.bits)
            .then_with(|| self.group.orders().cmp(other.group.orders()))
    }
}

fn check_same(a: &GroupSpec, b: &GroupSpec) -> Result<()> {
    if a != b {
        return Err(Error::GroupMismatch {
            left: a.to_string(),
            right: b.to_string(),
        });
    }
    Ok(())
}

/// An element of the integer group ring, in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    group: GroupSpec,
    coeffs: Vec<i64>,
}

impl RingElement {
    pub fn zero(g: &GroupSpec) -> Self {
        RingElement {
            group: g.clone(),
            coeffs: vec![0; g.order()],
        }
    }

    /// The unit `e`.
    pub fn one(g: &GroupSpec) -> Self {
        Self::delta(g, 0)
    }

    /// The basis element of the group element with the given rank.
    pub fn delta(g: &GroupSpec, rank: usize) -> Self {
        let mut e = Self::zero(g);
        e.coeffs[rank] = 1;
        e
    }

    pub fn from_coeffs(g: &GroupSpec, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != g.order() {
            return Err(Error::DimensionMismatch {
                expected: g.order(),
                found: coeffs.len(),
            });
        }
        Ok(RingElement {
            group: g.clone(),
            coeffs,
        })
    }

    /// `rho_G(D)`: the 0/1 coefficient vector of `D`.
    pub fn from_subset(d: &Subset) -> Self {
        RingElement {
            group: d.group.clone(),
            coeffs: d.bits.iter().map(|b| i64::from(*b)).collect(),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, rank: usize) -> i64 {
        self.coeffs[rank]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Ideal membership. Since the element is stored in normal form, it lies
    /// in `(X1^n1 - 1, ..., Xt^nt - 1)` iff every coefficient is zero.
    pub fn is_in_ideal(&self) -> bool {
        self.is_zero()
    }

    /// Moves the coefficient of `x` to `-x` (the `D^(-1)` operation).
    pub fn reflect(&self) -> Self {
        let g = &self.group;
        let mut out = vec![0; self.coeffs.len()];
        for (r, &c) in self.coeffs.iter().enumerate() {
            out[g.neg_rank(r)] = c;
        }
        RingElement {
            group: g.clone(),
            coeffs: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, i64::checked_sub)
    }

    fn zip_with(&self, other: &Self, op: fn(i64, i64) -> Option<i64>) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| op(a, b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, s: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.checked_mul(s).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    /// Group-ring product: multi-dimensional cyclic convolution,
    /// `c[g] = sum over x + y = g of a[x] b[y]`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        let g = &self.group;
        let mut out = vec![0i64; self.coeffs.len()];
        let rhs: Vec<(usize, i64)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(r, &c)| (r, c))
            .collect();
        for (x, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(y, b) in &rhs {
                let slot = &mut out[g.add_ranks(x, y)];
                *slot = a
                    .checked_mul(b)
                    .and_then(|p| slot.checked_add(p))
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(RingElement {
            group: g.clone(),
            coeffs: out,
        })
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement[{}]{:?}", self.group, self.coeffs)
    }
}

impl fmt::Display for RingElement {
    /// Polynomial form in `x1..xt`, highest rank first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.group;
        let mut first = true;
        for r in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[r];
            if c == 0 {
                continue;
            }
            let mono: Vec<String> = g
                .digits(r)
                .enumerate()
                .filter(|&(_, e)| e > 0)
                .map(|(l, e)| {
                    if e == 1 {
                        format!("x{}", l + 1)
                    } else {
                        format!("x{}^{}", l + 1, e)
                    }
                })
                .collect();
            write_term(f, c, &mono.join("*"), first)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Writes `c*mono` with a sign separator; `mono` may be empty.
pub(crate) fn write_term(
    f: &mut impl fmt::Write,
    c: i64,
    mono: &str,
    first: bool,
) -> fmt::Result {
    let mag = c.unsigned_abs();
    match (first, c < 0) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if mono.is_empty() {
        write!(f, "{mag}")
    } else if mag == 1 {
        f.write_str(mono)
    } else {
        write!(f, "{mag}*{mono}")
    }
}

/// `kappa_D` reduced modulo the ideal:
/// `rho(D) * reflect(rho(D)) - lambda * rho(G) - (k - lambda) * e`.
///
/// Zero exactly when `D` is a `(v, k, lambda)` difference set.
pub fn kappa(d: &Subset, k: u64, lambda: u64) -> Result<RingElement> {
    let (k, lambda) = check_params(d.group(), k, lambda)?;
    let rho = RingElement::from_subset(d);
    let mut out = rho.multiply(&rho.reflect())?;
    for c in &mut out.coeffs {
        *c -= lambda;
    }
    out.coeffs[0] -= k - lambda;
    Ok(out)
}

pub(crate) fn check_params(g: &GroupSpec, k: u64, lambda: u64) -> Result<(i64, i64)> {
    let v = g.order() as u64;
    if k > v {
        return Err(Error::ParamOutOfRange(format!("k = {k} exceeds v = {v}")));
    }
    let lambda = i64::try_from(lambda)
        .map_err(|_| Error::ParamOutOfRange(format!("lambda = {lambda} too large")))?;
    Ok((k as i64, lambda))
}

/// A polynomial with nonnegative integer exponents, stored as a flat term
/// list. Used before folding into the quotient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawPolynomial {
    nvars: usize,
    exps: Vec<u64>,
    coeffs: Vec<i64>,
}

impl RawPolynomial {
    pub fn new(nvars: usize) -> Self {
        RawPolynomial {
            nvars,
            exps: Vec::new(),
            coeffs: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn push(&mut self, exps: &[u64], coeff: i64) -> Result<()> {
        if exps.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: exps.len(),
            });
        }
        self.exps.extend_from_slice(exps);
        self.coeffs.push(coeff);
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u64], i64)> + '_ {
        self.exps
            .chunks(self.nvars.max(1))
            .zip(&self.coeffs)
            .map(move |(e, &c)| (&e[..self.nvars], c))
    }

    /// Parses text like `3*x1^2*x2 + x1 - 4` over variables `x1..x{nvars}`.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        Self::parse_with(text, nvars, |name, pos| {
            let idx = name
                .strip_prefix(['x', 'X'])
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= nvars)
                .ok_or_else(|| {
                    Error::parse(pos, format!("unknown variable `{name}` (expected x1..x{nvars})"))
                })?;
            Ok(idx - 1)
        })
    }

    /// Parses a sum of products of integers and `name^exp` factors, mapping
    /// each variable name to an index with `resolve(name, position)`.
    pub fn parse_with<F>(text: &str, nvars: usize, resolve: F) -> Result<Self>
    where
        F: Fn(&str, usize) -> Result<usize>,
    {
        TermParser {
            src: text.as_bytes(),
            pos: 0,
            nvars,
            resolve,
        }
        .parse()
    }
}

struct TermParser<'a, F> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    resolve: F,
}

impl<F: Fn(&str, usize) -> Result<usize>> TermParser<'_, F> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse()
            .map_err(|_| Error::parse(start, format!("integer `{s}` too large")))
    }

    fn parse(mut self) -> Result<RawPolynomial> {
        let mut poly = RawPolynomial::new(self.nvars);
        if self.peek().is_none() {
            return Ok(poly);
        }
        let mut first = true;
        loop {
            let mut sign = 1i64;
            match self.peek() {
                Some(b'+') => self.pos += 1,
                Some(b'-') => {
                    sign = -1;
                    self.pos += 1;
                }
                None => break,
                Some(_) if first => {}
                Some(c) => {
                    return Err(Error::parse(
                        self.pos,
                        format!("expected `+` or `-`, found `{}`", c as char),
                    ))
                }
            }
            first = false;
            let (exps, coeff) = self.term()?;
            let coeff = coeff
                .checked_mul(sign)
                .ok_or_else(|| Error::parse(self.pos, "coefficient overflow"))?;
            poly.push(&exps, coeff)?;
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Vec<u64>, i64)> {
        let mut exps = vec![0u64; self.nvars];
        let mut coeff: i64 = 1;
        loop {
            let pos = {
                self.skip_ws();
                self.pos
            };
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    coeff = i64::try_from(n)
                        .ok()
                        .and_then(|n| coeff.checked_mul(n))
                        .ok_or_else(|| Error::parse(pos, "coefficient overflow"))?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    let idx = (self.resolve)(name, start)?;
                    let mut e = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.number()?;
                    }
                    exps[idx] = exps[idx]
                        .checked_add(e)
                        .ok_or_else(|| Error::parse(start, "exponent overflow"))?;
                }
                Some(c) => {
                    return Err(Error::parse(
                        pos,
                        format!("expected a number or variable, found `{}`", c as char),
                    ))
                }
                None => return Err(Error::parse(pos, "unexpected end of input")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((exps, coeff));
            }
        }
    }
}

/// Folds each exponent modulo its cyclic order and accumulates
/// coefficients: the image of the polynomial in `Z[G]`.
pub fn fold_polynomial(poly: &RawPolynomial, g: &GroupSpec) -> Result<RingElement> {
    if poly.nvars() != g.rank_count() {
        return Err(Error::DimensionMismatch {
            expected: g.rank_count(),
            found: poly.nvars(),
        });
    }
    let mut out = RingElement::zero(g);
    let mut rank_strides = vec![1u64; g.rank_count()];
    for l in (0..g.rank_count().saturating_sub(1)).rev() {
        rank_strides[l] = rank_strides[l + 1] * g.orders()[l + 1] as u64;
    }
    for (exps, c) in poly.terms() {
        let r: u64 = exps
            .iter()
            .zip(g.orders())
            .zip(&rank_strides)
            .map(|((&e, &n), &s)| (e % n as u64) * s)
            .sum();
        let slot = &mut out.coeffs[r as usize];
        *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
    }
    Ok(out)
}

/// The unreduced polynomial `kappa_D`, written with the exponents
/// `i` and `n - i` exactly as they arise before any folding:
/// `(sum_D X^i)(sum_D X^(n-i)) - lambda sum_S X^i - (k - lambda)`.
pub fn kappa_unreduced(d: &Subset, k: u64, lambda: u64) -> Result<RawPolynomial> {
    let (k, lambda) = check_params(d.group(), k, lambda)?;
    unreduced_with(d, |_| lambda, k - lambda)
}

/// `(sum_D X^i)(sum_D X^(n-i)) - sum_S weight(i) X^i - constant`, unfolded.
pub(crate) fn unreduced_with(
    d: &Subset,
    weight: impl Fn(usize) -> i64,
    constant: i64,
) -> Result<RawPolynomial> {
    let g = d.group();
    let t = g.rank_count();
    let members: Vec<Vec<u64>> = d
        .ranks()
        .map(|r| g.digits(r).map(|x| x as u64).collect())
        .collect();
    let mut poly = RawPolynomial::new(t);
    let terms = members.len() * members.len() + g.order() + 1;
    poly.exps.reserve(terms * t);
    poly.coeffs.reserve(terms);
    let mut exps = vec![0u64; t];
    for a in &members {
        for b in &members {
            for l in 0..t {
                exps[l] = a[l] + (g.orders()[l] as u64 - b[l]);
            }
            poly.push(&exps, 1)?;
        }
    }
    for r in 0..g.order() {
        let w = weight(r);
        if w != 0 {
            for (slot, x) in exps.iter_mut().zip(g.digits(r)) {
                *slot = x as u64;
            }
            poly.push(&exps, -w)?;
        }
    }
    if constant != 0 {
        exps.iter_mut().for_each(|e| *e = 0);
        poly.push(&exps, -constant)?;
    }
    Ok(poly)
}
