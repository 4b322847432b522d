//! Finite abelian groups `Z/n1 x ... x Z/nt` written additively.
//!
//! Elements are indexed by their lexicographic rank with the first
//! coordinate most significant, so `(1,0)` in `Z4 x Z4` has rank 4. Every
//! bit vector, coefficient vector and file format in the crate uses this
//! ordering.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct GroupInner {
    orders: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
    exponent: usize,
}

/// An abelian group given as an ordered tuple of cyclic orders.
///
/// The tuple is authoritative: `Z2 x Z4` and `Z4 x Z2` are distinct specs.
/// Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec(Arc<GroupInner>);

impl GroupSpec {
    pub fn new(orders: &[usize]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptyGroup);
        }
        if let Some(&bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidOrder(bad as u64));
        }
        let order = orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or(Error::GroupTooLarge)?;
        let exponent = orders.iter().fold(1usize, |acc, &n| acc.lcm(&n));
        let mut strides = vec![1usize; orders.len()];
        for l in (0..orders.len().saturating_sub(1)).rev() {
            strides[l] = strides[l + 1] * orders[l + 1];
        }
        Ok(GroupSpec(Arc::new(GroupInner {
            orders: orders.to_vec(),
            strides,
            order,
            exponent,
        })))
    }

    /// Elementary abelian 2-group `(Z/2)^t`.
    pub fn binary(t: usize) -> Result<Self> {
        Self::new(&vec![2; t])
    }

    /// Parses a comma-separated order list such as `4,4`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut orders = Vec::new();
        let mut offset = 0;
        for piece in text.split(',') {
            let trimmed = piece.trim();
            let pos = offset + piece.find(|c: char| !c.is_whitespace()).unwrap_or(0);
            if trimmed.is_empty() {
                return Err(Error::parse(pos, "empty cyclic order"));
            }
            let n: usize = trimmed
                .parse()
                .map_err(|_| Error::parse(pos, format!("invalid cyclic order `{trimmed}`")))?;
            if n == 0 {
                return Err(Error::parse(pos, "cyclic order must be at least 1"));
            }
            orders.push(n);
            offset += piece.len() + 1;
        }
        Self::new(&orders)
    }

    pub fn orders(&self) -> &[usize] {
        &self.0.orders
    }

    /// Number of cyclic factors `t`.
    pub fn rank_count(&self) -> usize {
        self.0.orders.len()
    }

    /// Group order `v`.
    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Group exponent `m = lcm(n1, ..., nt)`.
    pub fn exponent(&self) -> usize {
        self.0.exponent
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank_count()],
        }
    }

    /// Builds an element, rejecting coordinates outside `[0, n_l)`.
    pub fn element(&self, coords: &[usize]) -> Result<GroupElement> {
        let e = GroupElement {
            coords: coords.to_vec(),
        };
        self.check(&e)?;
        Ok(e)
    }

    /// Builds an element from arbitrary integers, reducing each modulo its order.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_dim(coords.len())?;
        let coords = coords
            .iter()
            .zip(self.orders())
            .map(|(&c, &n)| c.rem_euclid(n as i64) as usize)
            .collect();
        Ok(GroupElement { coords })
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.rank_count() {
            return Err(Error::DimensionMismatch {
                expected: self.rank_count(),
                found,
            });
        }
        Ok(())
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        self.check_dim(a.coords.len())?;
        for (&c, &n) in a.coords.iter().zip(self.orders()) {
            if c >= n {
                return Err(Error::CoordinateOutOfRange {
                    value: c as u64,
                    order: n,
                });
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(self.orders())
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let coords = a
            .coords
            .iter()
            .zip(self.orders())
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// Lexicographic rank in `[0, v)`, first coordinate most significant.
    pub fn rank(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(a
            .coords
            .iter()
            .zip(&self.0.strides)
            .map(|(&c, &s)| c * s)
            .sum())
    }

    pub fn unrank(&self, rank: usize) -> Result<GroupElement> {
        if rank >= self.order() {
            return Err(Error::RankOutOfRange {
                rank,
                order: self.order(),
            });
        }
        Ok(GroupElement {
            coords: self.digits(rank).collect(),
        })
    }

    /// Coordinates of the element with the given rank. `rank` must be `< v`.
    pub(crate) fn digits(&self, rank: usize) -> impl Iterator<Item = usize> + '_ {
        self.0
            .strides
            .iter()
            .zip(self.orders())
            .map(move |(&s, &n)| (rank / s) % n)
    }

    /// Rank of `rank(a) + rank(b)`. Both ranks must be `< v`.
    pub fn add_ranks(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&s, &n) in self.0.strides.iter().zip(self.orders()) {
            let x = (a / s) % n;
            let y = (b / s) % n;
            let z = x + y;
            out += if z >= n { z - n } else { z } * s;
        }
        out
    }

    /// Rank of `rank(a) - rank(b)`. Both ranks must be `< v`.
    pub fn sub_ranks(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&s, &n) in self.0.strides.iter().zip(self.orders()) {
            let x = (a / s) % n;
            let y = (b / s) % n;
            out += if x >= y { x - y } else { x + n - y } * s;
        }
        out
    }

    /// Rank of `-rank(a)`. `a` must be `< v`.
    pub fn neg_rank(&self, a: usize) -> usize {
        self.sub_ranks(0, a)
    }

    /// All elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |r| GroupElement {
            coords: self.digits(r).collect(),
        })
    }
}

impl fmt::Display for GroupSpec {
    /// Comma-separated orders, the same text accepted by [`GroupSpec::parse`].
    /// Factors of order 1 are kept so the text round-trips.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders().iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<String> = self
            .orders()
            .iter()
            .filter(|&&n| n > 1)
            .map(|n| format!("Z{n}"))
            .collect();
        if nontrivial.is_empty() {
            write!(f, "GroupSpec(trivial; {self})")
        } else {
            write!(f, "GroupSpec({}; {self})", nontrivial.join(" x "))
        }
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.orders().serialize(s)
    }
}

/// A tuple of coordinates `(i1, ..., it)`. Validity is checked against a
/// [`GroupSpec`] by every operation that takes one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<usize>,
}

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    /// Parses `(0,1)`. Coordinates are checked against `g`.
    pub fn parse(text: &str, g: &GroupSpec) -> Result<Self> {
        parse_tuple(text, 0, g)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// Parses a parenthesized tuple; `base` is the byte offset of `text` within
/// the caller's input, used for error positions.
pub(crate) fn parse_tuple(text: &str, base: usize, g: &GroupSpec) -> Result<GroupElement> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    let start = base + lead;
    if !body.starts_with('(') || !body.ends_with(')') || body.len() < 2 {
        return Err(Error::parse(start, format!("malformed tuple `{body}`")));
    }
    let inner = &body[1..body.len() - 1];
    let mut coords = Vec::new();
    let mut offset = start + 1;
    for piece in inner.split(',') {
        let trimmed = piece.trim();
        let pos = offset + piece.find(|c: char| !c.is_whitespace()).unwrap_or(0);
        if trimmed.is_empty() {
            return Err(Error::parse(pos, format!("malformed tuple `{body}`")));
        }
        let c: u64 = trimmed
            .parse()
            .map_err(|_| Error::parse(pos, format!("invalid coordinate `{trimmed}`")))?;
        coords.push((c, pos));
        offset += piece.len() + 1;
    }
    if coords.len() != g.rank_count() {
        return Err(Error::parse(
            start,
            format!(
                "tuple `{body}` has {} coordinates, group has {}",
                coords.len(),
                g.rank_count()
            ),
        ));
    }
    let mut out = Vec::with_capacity(coords.len());
    for ((c, pos), &n) in coords.into_iter().zip(g.orders()) {
        if c >= n as u64 {
            return Err(Error::parse(
                pos,
                format!("coordinate {c} out of range for cyclic factor of order {n}"),
            ));
        }
        out.push(c as usize);
    }
    Ok(GroupElement { coords: out })
}
