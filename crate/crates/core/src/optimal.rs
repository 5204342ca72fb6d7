//! Exact solvers: the subset oracle, the fast `k = 3` solver and the search
//! for optimal unconstrained shapes on the grid.

use serde::Serialize;

use crate::decimal;
use crate::error::{Error, Result};
use crate::geometry::{
    candidate_medians, dist, l1_median, pairwise_sum, Allocation, Point, PointMultiset,
};

pub const DEFAULT_SUBSET_BUDGET: u128 = 10_000_000;
pub const MAX_SHAPE_K: usize = 12;
pub const DEFAULT_SHAPE_NODE_BUDGET: u64 = 2_000_000_000;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Exhaustive minimum over all `k`-subsets of `set`. Among equal totals the
/// lexicographically first index subset wins.
pub fn brute_force_opt(set: &PointMultiset, k: usize) -> Result<Allocation> {
    brute_force_opt_with_budget(set, k, DEFAULT_SUBSET_BUDGET)
}

pub fn brute_force_opt_with_budget(
    set: &PointMultiset,
    k: usize,
    budget: u128,
) -> Result<Allocation> {
    let n = set.len();
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > n {
        return Err(Error::InsufficientProcessors { requested: k, available: n });
    }
    let subsets = binomial(n, k);
    if subsets > budget {
        return Err(Error::BudgetExceeded { required: subsets, budget });
    }
    let pts = set.points();
    let table: Vec<Vec<u64>> = pts
        .iter()
        .map(|p| pts.iter().map(|q| dist(p.coords(), q.coords())).collect())
        .collect();

    struct Search<'a> {
        table: &'a [Vec<u64>],
        k: usize,
        chosen: Vec<usize>,
        best: u64,
        best_set: Vec<usize>,
    }

    impl Search<'_> {
        fn descend(&mut self, start: usize, partial: u64) {
            if self.chosen.len() == self.k {
                if partial < self.best {
                    self.best = partial;
                    self.best_set.clone_from(&self.chosen);
                }
                return;
            }
            let n = self.table.len();
            let last = n - (self.k - self.chosen.len());
            for i in start..=last {
                let add: u64 = self.chosen.iter().map(|&j| self.table[i][j]).sum();
                // Later subsets only replace the incumbent on strict improvement.
                if partial + add >= self.best {
                    continue;
                }
                self.chosen.push(i);
                self.descend(i + 1, partial + add);
                self.chosen.pop();
            }
        }
    }

    let mut search =
        Search { table: &table, k, chosen: Vec::with_capacity(k), best: u64::MAX, best_set: vec![] };
    search.descend(0, 0);
    Ok(Allocation {
        algorithm: "OPT".into(),
        selected: set.subset(&search.best_set),
        total_distance: search.best,
        center: None,
    })
}

/// Minimum-weight triple in the plane.
///
/// A triple costs twice its bounding-box half-perimeter, `2(w + h)`, and its
/// smallest Steiner star is centered at its coordinate-wise median, which is
/// a candidate median of the input. The three points nearest to that center
/// can only be cheaper, so scanning every candidate center and keeping the
/// best nearest triple is exact. Nearest triples are found by an outward
/// sweep over the x-sorted input that stops once the x-gap alone exceeds the
/// third-best distance.
pub fn exact_k3(set: &PointMultiset) -> Result<Allocation> {
    if set.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: set.dim() });
    }
    if set.len() < 3 {
        return Err(Error::InsufficientProcessors { requested: 3, available: set.len() });
    }
    let pts = set.points();
    let mut by_x: Vec<usize> = (0..pts.len()).collect();
    by_x.sort_by(|&a, &b| pts[a].cmp(&pts[b]).then(a.cmp(&b)));
    let xs: Vec<i64> = by_x.iter().map(|&i| pts[i][0]).collect();

    let triple_cost = |t: &[usize; 3]| -> u64 {
        let (mut lo, mut hi) = ([i64::MAX; 2], [i64::MIN; 2]);
        for &i in t {
            for axis in 0..2 {
                lo[axis] = lo[axis].min(pts[i][axis]);
                hi[axis] = hi[axis].max(pts[i][axis]);
            }
        }
        2 * (hi[0].abs_diff(lo[0]) + hi[1].abs_diff(lo[1]))
    };

    let mut best: Option<(u64, [usize; 3])> = None;
    for c in candidate_medians(set).iter() {
        // (distance, rank in by_x) of the three nearest so far, ascending.
        let mut near: Vec<(u64, usize)> = Vec::with_capacity(4);
        let split = xs.partition_point(|&x| x < c[0]);
        let (mut left, mut right) = (split, split);
        loop {
            let bound = if near.len() == 3 { near[2].0 } else { u64::MAX };
            let gap_l = (left > 0).then(|| c[0].abs_diff(xs[left - 1]));
            let gap_r = (right < xs.len()).then(|| c[0].abs_diff(xs[right]));
            let go_left = match (gap_l, gap_r) {
                (None, None) => break,
                (Some(l), Some(r)) => l <= r,
                (Some(_), None) => true,
                (None, Some(_)) => false,
            };
            let gap = if go_left { gap_l.unwrap() } else { gap_r.unwrap() };
            if gap > bound {
                break;
            }
            let rank = if go_left {
                left -= 1;
                left
            } else {
                right += 1;
                right - 1
            };
            let d = dist(pts[by_x[rank]].coords(), c.coords());
            if near.len() < 3 || (d, rank) < near[2] {
                let at = near.partition_point(|e| *e < (d, rank));
                near.insert(at, (d, rank));
                near.truncate(3);
            }
        }
        let mut t = [by_x[near[0].1], by_x[near[1].1], by_x[near[2].1]];
        t.sort_unstable();
        let cost = triple_cost(&t);
        if best.is_none_or(|(b, bt)| (cost, t) < (b, bt)) {
            best = Some((cost, t));
        }
    }
    let (total, t) = best.expect("at least one candidate center");
    let selected = set.subset(&t);
    let center = l1_median(&selected)?;
    Ok(Allocation { algorithm: "EXACT3".into(), selected, total_distance: total, center: Some(center) })
}

/// An optimal cluster of `k` distinct grid points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub points: PointMultiset,
    pub total: u64,
    /// Average pairwise distance `total / C(k,2)`, truncated to 4 decimals.
    pub average: String,
}

impl Shape {
    fn new(points: PointMultiset) -> Self {
        let total = pairwise_sum(&points);
        let k = points.len();
        let pairs = binomial(k, 2);
        let average =
            if pairs == 0 { "0.0000".to_string() } else { decimal::truncated(total as u128, pairs, 4) };
        Shape { points, total, average }
    }
}

/// The 8 symmetries of the square grid.
fn transform(p: (i64, i64), sym: usize) -> (i64, i64) {
    let (x, y) = p;
    match sym {
        0 => (x, y),
        1 => (-y, x),
        2 => (-x, -y),
        3 => (y, -x),
        4 => (-x, y),
        5 => (x, -y),
        6 => (y, x),
        _ => (-y, -x),
    }
}

/// Canonical representative of a planar point set under translation and the
/// 8 grid symmetries: the lexicographically smallest sorted list after
/// moving the smallest point to the origin.
pub fn canonical_form(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    (0..8)
        .map(|sym| {
            let mut t: Vec<(i64, i64)> = points.iter().map(|&p| transform(p, sym)).collect();
            t.sort_unstable();
            let o = t[0];
            for p in &mut t {
                *p = (p.0 - o.0, p.1 - o.1);
            }
            t
        })
        .min()
        .unwrap_or_default()
}

struct ShapeSearch {
    k: usize,
    cells: Vec<(i64, i64)>,
    /// reach[c] = Σ_{s ∈ chosen} d(c, s)
    reach: Vec<u64>,
    chosen: Vec<usize>,
    /// Optimal totals for every smaller size, used as a lower bound on the
    /// internal cost of the points still to be placed.
    smaller: Vec<u64>,
    best: u64,
    best_set: Vec<usize>,
    nodes: u64,
    budget: u64,
    scratch: Vec<u64>,
}

impl ShapeSearch {
    fn push(&mut self, c: usize) {
        let (cx, cy) = self.cells[c];
        for (r, &(x, y)) in self.reach.iter_mut().zip(&self.cells) {
            *r += cx.abs_diff(x) + cy.abs_diff(y);
        }
        self.chosen.push(c);
    }

    fn pop(&mut self) {
        let c = self.chosen.pop().unwrap();
        let (cx, cy) = self.cells[c];
        for (r, &(x, y)) in self.reach.iter_mut().zip(&self.cells) {
            *r -= cx.abs_diff(x) + cy.abs_diff(y);
        }
    }

    /// Sum of the `r` smallest reach values among cells at index ≥ `from`.
    fn cheapest(&mut self, from: usize, r: usize) -> Option<u64> {
        if self.cells.len() - from < r {
            return None;
        }
        self.scratch.clear();
        self.scratch.extend_from_slice(&self.reach[from..]);
        if r < self.scratch.len() {
            self.scratch.select_nth_unstable(r);
        }
        Some(self.scratch[..r].iter().sum())
    }

    fn descend(&mut self, from: usize, partial: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                required: self.nodes as u128,
                budget: self.budget as u128,
            });
        }
        let placed = self.chosen.len();
        if placed == self.k {
            if partial < self.best {
                self.best = partial;
                self.best_set.clone_from(&self.chosen);
            }
            return Ok(());
        }
        let remaining = self.k - placed;
        let Some(outer) = self.cheapest(from, remaining) else { return Ok(()) };
        if partial + outer + self.smaller[remaining] >= self.best {
            return Ok(());
        }
        for c in from..self.cells.len() {
            let add = self.reach[c];
            let inner = self.smaller[remaining - 1];
            if partial + add + inner >= self.best {
                continue;
            }
            self.push(c);
            let r = self.descend(c + 1, partial + add);
            self.pop();
            r?;
        }
        Ok(())
    }
}

/// A minimum-weight set of `k` distinct grid points, searched exhaustively
/// with branch and bound.
///
/// The lexicographically smallest point is fixed at the origin and the rest
/// range over `x ∈ [0, radius]`, `y ∈ [−radius, radius]`. An optimal set
/// has no empty row or column inside its bounding box, so `radius = k − 1`
/// already covers every optimum.
pub fn unconstrained_optimal(k: usize, radius: usize) -> Result<Shape> {
    unconstrained_optimal_with_budget(k, radius, DEFAULT_SHAPE_NODE_BUDGET)
}

pub fn unconstrained_optimal_with_budget(k: usize, radius: usize, budget: u64) -> Result<Shape> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > MAX_SHAPE_K {
        return Err(Error::BudgetExceeded { required: k as u128, budget: MAX_SHAPE_K as u128 });
    }
    let mut smaller = vec![0u64; k + 1];
    for j in 2..k {
        smaller[j] = search_shape(j, radius, &smaller, budget)?.1;
    }
    let (cells, total) = search_shape(k, radius, &smaller, budget)?;
    let canon = canonical_form(&cells);
    let points =
        PointMultiset::new(canon.into_iter().map(|(x, y)| Point::from([x, y])).collect())?;
    let shape = Shape::new(points);
    debug_assert_eq!(shape.total, total);
    Ok(shape)
}

fn search_shape(
    k: usize,
    radius: usize,
    smaller: &[u64],
    budget: u64,
) -> Result<(Vec<(i64, i64)>, u64)> {
    let r = radius as i64;
    let mut cells = vec![(0i64, 0i64)];
    cells.extend((1..=r).map(|y| (0, y)));
    for x in 1..=r {
        cells.extend((-r..=r).map(|y| (x, y)));
    }
    if cells.len() < k {
        return Err(Error::invalid(format!("radius {radius} too small for {k} points")));
    }
    let n = cells.len();
    let mut search = ShapeSearch {
        k,
        reach: vec![0; n],
        chosen: Vec::with_capacity(k),
        smaller: smaller.to_vec(),
        best: u64::MAX,
        best_set: Vec::new(),
        nodes: 0,
        budget,
        scratch: Vec::with_capacity(n),
        cells,
    };
    search.push(0);
    search.descend(1, 0)?;
    let pts = search.best_set.iter().map(|&c| search.cells[c]).collect();
    Ok((pts, search.best))
}
