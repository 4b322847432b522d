//! Backtracking search for difference sets and export of the defining
//! polynomial system.
//!
//! The search walks ranks `0..v` depth first, trying "exclude" before
//! "include", so sets come out smallest bit vector first. Partial pair
//! counts are kept incrementally; a branch dies as soon as some count
//! exceeds `lambda` or too few ranks remain to reach `k`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{enumerate_characters, format_poly, CyclotomicElement};
use crate::designs::{difference_table, DesignParams};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::ringpoly::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dedup {
    #[default]
    None,
    /// Keep one representative per translation class, the smallest translate.
    Translation,
}

impl std::str::FromStr for Dedup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Dedup::None),
            "translation" => Ok(Dedup::Translation),
            other => Err(Error::parse(0, format!("unknown dedup mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub params: DesignParams,
    pub dedup: Dedup,
    pub limit: Option<usize>,
}

impl SearchConfig {
    pub fn new(params: DesignParams) -> Self {
        SearchConfig {
            params,
            dedup: Dedup::None,
            limit: None,
        }
    }

    pub fn dedup(mut self, dedup: Dedup) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub sets: Vec<Subset>,
    /// More sets exist than `limit` allowed through.
    pub truncated: bool,
    pub note: Option<String>,
}

/// Difference lookups, tabulated when the group is small enough.
struct Differences<'a> {
    g: &'a GroupSpec,
    table: Option<Vec<u32>>,
}

impl<'a> Differences<'a> {
    const TABLE_LIMIT: usize = 4096;

    fn new(g: &'a GroupSpec) -> Self {
        let v = g.order();
        let table = (v <= Self::TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; v * v];
            for a in 0..v {
                for b in 0..v {
                    t[a * v + b] = g.sub_ranks(a, b) as u32;
                }
            }
            t
        });
        Differences { g, table }
    }

    #[inline]
    fn sub(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.g.order() + b] as usize,
            None => self.g.sub_ranks(a, b),
        }
    }
}

#[derive(Clone)]
struct State {
    next: usize,
    chosen: Vec<usize>,
    counts: Vec<u32>,
}

struct Walker<'a> {
    diff: &'a Differences<'a>,
    v: usize,
    k: usize,
    lambda: u32,
    dedup: Dedup,
    cap: usize,
}

impl Walker<'_> {
    /// Adds `r` to the state unless a count would pass `lambda`.
    fn include(&self, st: &mut State, r: usize) -> bool {
        let mut ok = true;
        let mut done = 0;
        for (i, &d) in st.chosen.iter().enumerate() {
            let a = self.diff.sub(r, d);
            let b = self.diff.sub(d, r);
            st.counts[a] += 1;
            st.counts[b] += 1;
            done = i + 1;
            if st.counts[a] > self.lambda || st.counts[b] > self.lambda {
                ok = false;
                break;
            }
        }
        if !ok {
            self.undo(st, r, done);
            return false;
        }
        st.chosen.push(r);
        true
    }

    fn undo(&self, st: &mut State, r: usize, upto: usize) {
        for &d in &st.chosen[..upto] {
            st.counts[self.diff.sub(r, d)] -= 1;
            st.counts[self.diff.sub(d, r)] -= 1;
        }
    }

    fn exclude_last(&self, st: &mut State) {
        let r = st.chosen.pop().expect("nonempty");
        let n = st.chosen.len();
        self.undo(st, r, n);
    }

    /// Depth-first from `st`. Stops descending at `frontier_depth` and hands
    /// the state to `frontier` when given; otherwise emits complete sets.
    fn walk(
        &self,
        st: &mut State,
        frontier_depth: Option<usize>,
        frontier: &mut Vec<State>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() > self.cap {
            return;
        }
        let need = self.k - st.chosen.len();
        if self.v - st.next < need {
            return;
        }
        if need == 0 {
            // no more elements may be added; every off-identity count must be lambda
            if st.counts[1..].iter().all(|&c| c == self.lambda) {
                let set = st.chosen.clone();
                if self.dedup == Dedup::None || self.is_min_translate(&set) {
                    out.push(set);
                }
            }
            return;
        }
        if frontier_depth == Some(st.next) {
            frontier.push(st.clone());
            return;
        }
        let r = st.next;
        st.next += 1;
        self.walk(st, frontier_depth, frontier, out);
        if self.include(st, r) {
            self.walk(st, frontier_depth, frontier, out);
            self.exclude_last(st);
        }
        st.next -= 1;
    }

    /// Membership vectors compare lowest rank first with absent < present,
    /// matching the ordering of [`Subset`].
    fn is_min_translate(&self, set: &[usize]) -> bool {
        let g = self.diff.g;
        let mut base = vec![false; self.v];
        for &r in set {
            base[r] = true;
        }
        let mut moved = vec![false; self.v];
        for shift in 1..self.v {
            moved.iter_mut().for_each(|b| *b = false);
            for &r in set {
                moved[g.add_ranks(r, shift)] = true;
            }
            if moved < base {
                return false;
            }
        }
        true
    }
}

/// All `(v, k, lambda)` difference sets of `g`, smallest bit vector first.
pub fn search(g: &GroupSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    let p = cfg.params;
    if p.v != g.order() as u64 {
        return Err(Error::ParamOutOfRange(format!(
            "params have v = {} but the group has order {}",
            p.v,
            g.order()
        )));
    }
    if cfg.limit == Some(0) {
        return Err(Error::ParamOutOfRange("limit must be at least 1".into()));
    }
    if !p.ryser_ok() {
        return Ok(SearchResult {
            sets: Vec::new(),
            truncated: false,
            note: Some(format!(
                "Ryser fails: lambda(v-1) = {} but k(k-1) = {}",
                p.lambda as u128 * (p.v as u128).saturating_sub(1),
                p.k as u128 * (p.k as u128).saturating_sub(1)
            )),
        });
    }
    let v = g.order();
    let lambda = u32::try_from(p.lambda).map_err(|_| Error::Overflow)?;
    let diff = Differences::new(g);
    let cap = cfg.limit.unwrap_or(usize::MAX);
    let walker = Walker {
        diff: &diff,
        v,
        k: p.k as usize,
        lambda,
        dedup: cfg.dedup,
        cap,
    };

    let mut root = State {
        next: 0,
        chosen: Vec::with_capacity(p.k as usize),
        counts: vec![0; v],
    };
    let threads = rayon::current_num_threads();
    let depth = if threads > 1 { (v / 2).min(10) } else { 0 };
    let mut frontier = Vec::new();
    let mut found = Vec::new();
    walker.walk(&mut root, Some(depth).filter(|&d| d > 0), &mut frontier, &mut found);

    // frontier states are in canonical order and every set found above lies
    // in no frontier subtree, but may precede or follow them; sort at the end
    let per_branch: Vec<Vec<Vec<usize>>> = frontier
        .into_par_iter()
        .map(|mut st| {
            let mut out = Vec::new();
            walker.walk(&mut st, None, &mut Vec::new(), &mut out);
            out
        })
        .collect();
    found.extend(per_branch.into_iter().flatten());

    let mut sets = found
        .into_iter()
        .map(|ranks| Subset::from_ranks(g, ranks))
        .collect::<Result<Vec<_>>>()?;
    sets.sort();
    let truncated = sets.len() > cap;
    sets.truncate(cap);
    for s in &sets {
        let t = difference_table(s);
        let ok = s.len() as u64 == p.k && t.counts[1..].iter().all(|&c| c == p.lambda);
        assert!(ok, "search emitted a set that fails the definition: {s}");
    }
    Ok(SearchResult {
        sets,
        truncated,
        note: None,
    })
}

/// Whether `g` contains a `(v, k, lambda)` difference set, decided by search.
pub fn existence(g: &GroupSpec, p: &DesignParams) -> Result<bool> {
    let r = search(g, &SearchConfig::new(*p).limit(1))?;
    Ok(!r.sets.is_empty())
}

/// A product of at most two `A` variables times a `Z[zeta_m]` coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub vars: Vec<usize>,
    pub coeff: CyclotomicElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub terms: Vec<Term>,
}

impl Generator {
    pub fn evaluate(&self, alpha: &Subset) -> CyclotomicElement {
        let m = self
            .terms
            .first()
            .map_or(1, |t| t.coeff.modulus());
        let mut acc = CyclotomicElement::zero(m);
        for t in &self.terms {
            if t.vars.iter().all(|&r| alpha.contains_rank(r)) {
                acc = &acc + &t.coeff;
            }
        }
        acc
    }
}

/// The Boolean constraints `A_r^2 - A_r` and, for every character, `Psi`
/// expanded over the `A` variables.
#[derive(Debug, Clone)]
pub struct IdealSystem {
    pub group: GroupSpec,
    pub params: DesignParams,
    pub generators: Vec<Generator>,
}

pub fn export_system(g: &GroupSpec, p: &DesignParams) -> Result<IdealSystem> {
    if p.v != g.order() as u64 {
        return Err(Error::ParamOutOfRange(format!(
            "params have v = {} but the group has order {}",
            p.v,
            g.order()
        )));
    }
    let v = g.order();
    let m = g.exponent();
    let k = i64::try_from(p.k).map_err(|_| Error::Overflow)?;
    let lambda = i64::try_from(p.lambda).map_err(|_| Error::Overflow)?;
    let mut generators = Vec::with_capacity(2 * v);
    for r in 0..v {
        generators.push(Generator {
            label: format!("P_{r}"),
            terms: vec![
                Term {
                    vars: vec![r, r],
                    coeff: CyclotomicElement::constant(m, 1),
                },
                Term {
                    vars: vec![r],
                    coeff: CyclotomicElement::constant(m, -1),
                },
            ],
        });
    }
    for chi in enumerate_characters(g) {
        let phase: Vec<usize> = (0..v).map(|r| chi.phase(r)).collect();
        let mut terms = Vec::with_capacity(v * (v + 1) / 2 + 1);
        for x in 0..v {
            terms.push(Term {
                vars: vec![x, x],
                coeff: CyclotomicElement::constant(m, 1),
            });
            for y in x + 1..v {
                let up = (phase[x] + m - phase[y]) % m;
                let mut c = CyclotomicElement::monomial(m, up, 1);
                c.coeffs_mut()[(m - up) % m] += 1;
                terms.push(Term {
                    vars: vec![x, y],
                    coeff: c,
                });
            }
        }
        let whole = if chi.is_trivial() { v as i64 } else { 0 };
        terms.push(Term {
            vars: Vec::new(),
            coeff: CyclotomicElement::constant(m, -(lambda * whole) - (k - lambda)),
        });
        generators.push(Generator {
            label: format!("Psi{chi}"),
            terms,
        });
    }
    Ok(IdealSystem {
        group: g.clone(),
        params: *p,
        generators,
    })
}

impl IdealSystem {
    /// Values of every generator at the point representation of `alpha`.
    pub fn evaluate(&self, alpha: &Subset) -> Result<Vec<CyclotomicElement>> {
        if alpha.group() != &self.group {
            return Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: alpha.group().to_string(),
            });
        }
        Ok(self.generators.iter().map(|gen| gen.evaluate(alpha)).collect())
    }

    /// Plain text: two header lines, then one generator per line with
    /// coefficients reduced modulo the minimal polynomial of `z`.
    pub fn render(&self) -> String {
        let v = self.group.order();
        let m = self.group.exponent();
        let minpoly = crate::characters::cyclotomic_poly(m);
        let mut s = String::new();
        writeln!(s, "ring: A_0..A_{}", v - 1).unwrap();
        writeln!(
            s,
            "root-of-unity: z, order {m}, minpoly {}",
            format_poly(&minpoly, "z")
        )
        .unwrap();
        for gen in &self.generators {
            s.push_str(&render_generator(gen));
            s.push('\n');
        }
        s
    }
}

fn render_generator(gen: &Generator) -> String {
    let mut s = String::new();
    for t in &gen.terms {
        let mono: Vec<String> = t.vars.iter().map(|r| format!("A_{r}")).collect();
        for (j, c) in t.coeff.reduced().into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut factors = Vec::new();
            if c.abs() != 1 || (j == 0 && mono.is_empty()) {
                factors.push(c.abs().to_string());
            }
            match j {
                0 => {}
                1 => factors.push("z".into()),
                _ => factors.push(format!("z^{j}")),
            }
            factors.extend(mono.iter().cloned());
            let sign = if c < 0 { "-" } else { "+" };
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else {
                write!(s, " {sign} ").unwrap();
            }
            s.push_str(&factors.join("*"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
