//! Oracles shared by the integration tests. Everything here is written
//! against coordinates and masks, not against the library's own tables.
#![allow(dead_code)]

use diffset::{GroupSpec, Subset};

/// Every order tuple of length `1..=max_t` with product at most `max_v`,
/// factors in `min_order..`.
pub fn order_tuples(max_v: usize, max_t: usize, min_order: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, prod: usize, max_v: usize, max_t: usize, min: usize, out: &mut Vec<Vec<usize>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_t {
            return;
        }
        for n in min..=max_v / prod {
            prefix.push(n);
            extend(prefix, prod * n, max_v, max_t, min, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_v, max_t, min_order.max(1), &mut out);
    out.sort_by_key(|t| (t.iter().product::<usize>(), t.len(), t.clone()));
    out
}

/// Coordinates of `rank` with the first coordinate most significant.
pub fn coords(orders: &[usize], mut rank: usize) -> Vec<usize> {
    let mut c = vec![0; orders.len()];
    for (slot, &n) in c.iter_mut().zip(orders).rev() {
        *slot = rank % n;
        rank /= n;
    }
    c
}

pub fn rank_of(orders: &[usize], c: &[usize]) -> usize {
    c.iter().zip(orders).fold(0, |acc, (&x, &n)| acc * n + x)
}

/// `lambda_g` by enumerating ordered pairs of coordinate tuples.
pub fn pair_counts(orders: &[usize], mask: u64) -> Vec<u64> {
    let v: usize = orders.iter().product();
    let ranks: Vec<usize> = (0..v).filter(|r| mask >> r & 1 == 1).collect();
    pair_counts_of(orders, &ranks)
}

/// [`pair_counts`] for a set given by its ranks, any group size.
pub fn pair_counts_of(orders: &[usize], ranks: &[usize]) -> Vec<u64> {
    let v: usize = orders.iter().product();
    let members: Vec<Vec<usize>> = ranks.iter().map(|&r| coords(orders, r)).collect();
    let mut counts = vec![0u64; v];
    for a in &members {
        for b in &members {
            let diff: Vec<usize> = a.iter().zip(b).zip(orders).map(|((&x, &y), &n)| (x + n - y) % n).collect();
            counts[rank_of(orders, &diff)] += 1;
        }
    }
    counts
}

pub fn is_difference_set(orders: &[usize], mask: u64, k: u64, lambda: u64) -> bool {
    let counts = pair_counts(orders, mask);
    counts[0] == k && counts[1..].iter().all(|&c| c == lambda)
}

/// All `(v, k, lambda)` difference sets by filtering every `k`-subset,
/// sorted like [`Subset`].
pub fn brute_force(g: &GroupSpec, k: u64, lambda: u64) -> Vec<Subset> {
    let v = g.order();
    assert!(v <= 24, "brute force is for small groups");
    let mut out: Vec<Subset> = (0u64..1 << v)
        .filter(|m| m.count_ones() as u64 == k && is_difference_set(g.orders(), *m, k, lambda))
        .map(|m| Subset::from_mask(g, m).unwrap())
        .collect();
    out.sort();
    out
}

/// `(k, lambda)` pairs with `k <= v`, `lambda <= v` and `lambda (v-1) = k (k-1)`.
pub fn ryser_pairs(v: u64) -> Vec<(u64, u64)> {
    (0..=v)
        .flat_map(|k| (0..=v).map(move |l| (k, l)))
        .filter(|&(k, l)| l * v.saturating_sub(1) == k * k.saturating_sub(1))
        .collect()
}

/// Fast Walsh-Hadamard transform of `(-1)^f`.
pub fn walsh_fwht(table: &[bool]) -> Vec<i64> {
    let mut w: Vec<i64> = table.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let mut h = 1;
    while h < w.len() {
        for i in (0..w.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (w[j], w[j + h]);
                w[j] = a + b;
                w[j + h] = a - b;
            }
        }
        h *= 2;
    }
    w
}

pub fn illustration1(g: &GroupSpec) -> Subset {
    Subset::parse("(0,1);(0,2);(0,3);(1,0);(2,0);(3,0)", g).unwrap()
}

pub fn illustration2(g: &GroupSpec) -> Subset {
    Subset::parse("(0,1);(0,2);(0,3);(1,0);(2,0);(1,1)", g).unwrap()
}
