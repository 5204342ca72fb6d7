//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use meshalloc::instances::{gen_random_points, Lcg64};
use meshalloc::PointMultiset;

/// Direct O(k²) pairwise distance sum.
pub fn direct_sum(points: &[Vec<i64>]) -> u64 {
    let mut total = 0u64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            total += points[i].iter().zip(&points[j]).map(|(a, b)| a.abs_diff(*b)).sum::<u64>();
        }
    }
    total
}

pub fn coords(set: &PointMultiset) -> Vec<Vec<i64>> {
    set.iter().map(|p| p.coords().to_vec()).collect()
}

/// Plain recursive minimum over all k-subsets, no pruning.
pub fn naive_opt(points: &[Vec<i64>], k: usize) -> u64 {
    fn go(points: &[Vec<i64>], start: usize, k: usize, cur: &mut Vec<Vec<i64>>, best: &mut u64) {
        if cur.len() == k {
            *best = (*best).min(direct_sum(cur));
            return;
        }
        for i in start..points.len() {
            if points.len() - i < k - cur.len() {
                break;
            }
            cur.push(points[i].clone());
            go(points, i + 1, k, cur, best);
            cur.pop();
        }
    }
    let mut best = u64::MAX;
    go(points, 0, k, &mut Vec::new(), &mut best);
    best
}

/// Seeded planar multiset of `n` points; small spans produce duplicates.
pub fn seeded_points(rng: &mut Lcg64, n: usize, dim: usize) -> PointMultiset {
    let span = [4u64, 8, 16, 64][rng.below(4) as usize];
    gen_random_points(n, dim, span, rng.below(1 << 32)).unwrap()
}

/// Compositions of `k` into positive parts.
pub fn compositions(k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << (k - 1) {
        let mut parts = Vec::new();
        let mut run = 1;
        for bit in 0..k - 1 {
            if mask >> bit & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(parts);
    }
    out
}

/// One-axis cost of consecutive lines holding `counts` points each.
pub fn line_cost(counts: &[u32]) -> u64 {
    let mut total = 0u64;
    for i in 0..counts.len() {
        for j in i + 1..counts.len() {
            total += counts[i] as u64 * counts[j] as u64 * (j - i) as u64;
        }
    }
    total
}

/// Whether a 0/1 matrix with these row and column sums exists.
pub fn gale_ryser(rows: &[u32], cols: &[u32]) -> bool {
    if rows.iter().sum::<u32>() != cols.iter().sum::<u32>() {
        return false;
    }
    let mut r = rows.to_vec();
    r.sort_unstable_by(|a, b| b.cmp(a));
    let mut lhs = 0u32;
    for (t, &ri) in r.iter().enumerate() {
        lhs += ri;
        let rhs: u32 = cols.iter().map(|&c| c.min(t as u32 + 1)).sum();
        if lhs > rhs {
            return false;
        }
    }
    true
}

/// Optimal total for `k` distinct grid points, by enumerating every pair of
/// column and row occupancy profiles. Empty lines never help, so profiles are
/// compositions of `k`.
pub fn margin_optimum(k: usize) -> u64 {
    let comps = compositions(k);
    let mut best = u64::MAX;
    for cols in &comps {
        let cx = line_cost(cols);
        if cx >= best {
            continue;
        }
        for rows in &comps {
            let c = cx + line_cost(rows);
            if c < best && gale_ryser(rows, cols) {
                best = c;
            }
        }
    }
    best
}

/// Optimal total for `k` distinct points of a `side × side` box, by plain
/// subset enumeration.
pub fn box_optimum(k: usize, side: i64) -> u64 {
    let cells: Vec<Vec<i64>> =
        (0..side).flat_map(|x| (0..side).map(move |y| vec![x, y])).collect();
    naive_opt(&cells, k)
}
