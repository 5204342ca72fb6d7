//! Approximation scheme for minimum-weight `k`-subsets under L1.
//!
//! Each axis is cut into `m` slabs ("strips") that together contain exactly
//! `k/m` selected points per strip. Every product of strips is a cell, and a
//! cell plan fixes how many points each cell contributes. Given the strips
//! and the plan, each cell takes its points greedily: those minimizing the
//! inner product with the cell's gradient
//!
//! ```text
//! ∇(i_0, …, i_{d−1}) = ((2·i_0 + 1 − m)·k/m, …, (2·i_{d−1} + 1 − m)·k/m)
//! ```
//!
//! which minimizes the distance to selected points in other strips. The
//! scheme enumerates every strip structure and every plan and keeps the
//! cheapest outcome. In the plane the result is within
//! [`ptas_factor`]`(m)` of optimal.
//!
//! Strip boundaries are input points. On each axis the points are ranked by
//! `(coordinate, input index)`, which separates equal coordinates the way an
//! infinitesimal perturbation would. Boundary ranks `b_0 ≤ b_1 < … < b_m`
//! define strip 0 as ranks `[b_0, b_1]` and strip `i > 0` as `(b_i, b_{i+1}]`,
//! so a point on an inner boundary belongs to the lower strip. Points
//! outside `[b_0, b_m]` are excluded. Only structures where every strip holds
//! at least `k/m` input points are enumerated.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{dist, Allocation, Point, PointMultiset};

/// Cap on enumerated strip structures.
pub const DEFAULT_PTAS_BUDGET: u128 = 100_000_000;

/// Approximation guarantee of the planar scheme:
/// `1 / (1 − 1/(m−2) − 2/(m−1)) = (m−2)(m−1) / (m² − 6m + 7)`.
pub fn ptas_factor(m: u64) -> Result<Ratio<u64>> {
    if m < 5 {
        return Err(Error::invalid(format!("m = {m}: the guarantee needs m ≥ 5")));
    }
    Ok(Ratio::new((m - 2) * (m - 1), m * m + 7 - 6 * m))
}

/// Per-axis strip boundaries of one enumerated structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripStructure {
    pub m: usize,
    /// `m + 1` ascending boundary coordinates per axis.
    pub bounds: Vec<Vec<i64>>,
    /// The same boundaries as ranks in the per-axis `(coordinate, index)`
    /// order.
    pub ranks: Vec<Vec<usize>>,
}

/// Per-cell selection counts, an `m^d` tensor stored row-major with axis 0
/// most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CellPlan {
    pub m: usize,
    pub dim: usize,
    pub counts: Vec<u32>,
}

impl CellPlan {
    pub fn cell_index(&self, cell: &[usize]) -> usize {
        cell.iter().fold(0, |acc, &i| acc * self.m + i)
    }

    pub fn get(&self, cell: &[usize]) -> u32 {
        self.counts[self.cell_index(cell)]
    }

    /// Strip index of `cell` along every axis.
    pub fn cell_coords(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim];
        for axis in (0..self.dim).rev() {
            out[axis] = idx % self.m;
            idx /= self.m;
        }
        out
    }

    /// Sum of the counts in each slice perpendicular to `axis`.
    pub fn slice_sums(&self, axis: usize) -> Vec<u32> {
        let mut sums = vec![0; self.m];
        for (idx, &c) in self.counts.iter().enumerate() {
            sums[self.cell_coords(idx)[axis]] += c;
        }
        sums
    }

    /// Every slice along every axis sums to `per_slice`.
    pub fn has_margins(&self, per_slice: u32) -> bool {
        (0..self.dim).all(|a| self.slice_sums(a).iter().all(|&s| s == per_slice))
    }

    /// Row-major `m × m` view of a planar plan.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.counts.chunks(self.m).map(<[u32]>::to_vec).collect()
    }
}

/// Selection direction of one cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GradientVector(pub Vec<i64>);

impl GradientVector {
    pub fn for_cell(cell: &[usize], m: usize, k: usize) -> Self {
        let q = (k / m) as i64;
        GradientVector(cell.iter().map(|&i| (2 * i as i64 + 1 - m as i64) * q).collect())
    }

    fn dot(&self, p: &Point) -> i128 {
        self.0.iter().zip(p.coords()).map(|(&g, &x)| g as i128 * x as i128).sum()
    }
}

/// Walks the cells of an `m^d` plan in row-major order, tracking how much
/// every slice still needs.
#[derive(Clone, Debug)]
struct PlanShape {
    m: usize,
    dim: usize,
    per_slice: u32,
    coords: Vec<Vec<usize>>,
    /// Slices `(axis, index)` whose last cell in row-major order is this one.
    closes: Vec<Vec<(usize, usize)>>,
}

impl PlanShape {
    fn new(m: usize, dim: usize, per_slice: u32) -> Self {
        let cells = m.pow(dim as u32);
        let template = CellPlan { m, dim, counts: vec![] };
        let coords: Vec<Vec<usize>> = (0..cells).map(|c| template.cell_coords(c)).collect();
        let closes = coords
            .iter()
            .map(|cc| {
                (0..dim)
                    .filter(|&a| (0..dim).all(|b| b == a || cc[b] == m - 1))
                    .map(|a| (a, cc[a]))
                    .collect()
            })
            .collect();
        PlanShape { m, dim, per_slice, coords, closes }
    }

    fn cells(&self) -> usize {
        self.coords.len()
    }

    /// Admissible values `[lo, hi]` for `cell` given what the slices still
    /// need; `lo > hi` when none is.
    fn range(&self, cell: usize, rem: &[Vec<u32>], cap: u32) -> (u32, u32) {
        let cc = &self.coords[cell];
        let hi = (0..self.dim).map(|a| rem[a][cc[a]]).min().unwrap_or(0).min(cap);
        let mut need: Option<u32> = None;
        for &(a, i) in &self.closes[cell] {
            match need {
                None => need = Some(rem[a][i]),
                Some(v) if v != rem[a][i] => return (1, 0),
                _ => {}
            }
        }
        match need {
            Some(v) => (v, if v <= hi { v } else { return (1, 0) }),
            None => (0, hi),
        }
    }

    fn apply(&self, cell: usize, rem: &mut [Vec<u32>], v: u32, add: bool) {
        for (a, &i) in self.coords[cell].iter().enumerate() {
            if add {
                rem[a][i] -= v;
            } else {
                rem[a][i] += v;
            }
        }
    }

    fn fresh_rem(&self) -> Vec<Vec<u32>> {
        vec![vec![self.per_slice; self.m]; self.dim]
    }
}

/// All nonnegative integer `m × m` matrices whose rows and columns each sum
/// to `k/m`, in lexicographic order.
pub fn enumerate_cell_plans(k: usize, m: usize) -> Result<CellPlans> {
    enumerate_cell_plans_d(k, m, 2)
}

/// The `d`-dimensional analogue: `m^d` tensors whose axis slices each sum to
/// `k/m`.
pub fn enumerate_cell_plans_d(k: usize, m: usize, dim: usize) -> Result<CellPlans> {
    if m == 0 || !k.is_multiple_of(m) {
        return Err(Error::invalid(format!("k = {k} is not divisible by m = {m}")));
    }
    if dim == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    let shape = PlanShape::new(m, dim, (k / m) as u32);
    let cells = shape.cells();
    Ok(CellPlans { rem: shape.fresh_rem(), counts: vec![0; cells], shape, started: false, done: false })
}

/// Lazy stream of cell plans; see [`enumerate_cell_plans`].
pub struct CellPlans {
    shape: PlanShape,
    counts: Vec<u32>,
    rem: Vec<Vec<u32>>,
    started: bool,
    done: bool,
}

impl CellPlans {
    /// Depth-first walk to the next complete assignment. Starting fresh it
    /// descends from cell 0; otherwise it first backtracks from the last
    /// emitted plan.
    fn advance(&mut self, fresh: bool) -> bool {
        let n = self.shape.cells();
        let mut c: isize = if fresh { 0 } else { n as isize - 1 };
        let mut descending = fresh;
        loop {
            if descending {
                if c as usize == n {
                    return true;
                }
                let (lo, hi) = self.shape.range(c as usize, &self.rem, u32::MAX);
                if lo > hi {
                    descending = false;
                    c -= 1;
                    continue;
                }
                self.counts[c as usize] = lo;
                self.shape.apply(c as usize, &mut self.rem, lo, true);
                c += 1;
            } else {
                if c < 0 {
                    return false;
                }
                let cell = c as usize;
                let v = self.counts[cell];
                self.shape.apply(cell, &mut self.rem, v, false);
                self.counts[cell] = 0;
                let (lo, hi) = self.shape.range(cell, &self.rem, u32::MAX);
                if lo <= hi && v + 1 >= lo && v < hi {
                    self.counts[cell] = v + 1;
                    self.shape.apply(cell, &mut self.rem, v + 1, true);
                    c += 1;
                    descending = true;
                } else {
                    c -= 1;
                }
            }
        }
    }
}

impl Iterator for CellPlans {
    type Item = CellPlan;

    fn next(&mut self) -> Option<CellPlan> {
        if self.done {
            return None;
        }
        let fresh = !self.started;
        self.started = true;
        if self.advance(fresh) {
            Some(CellPlan { m: self.shape.m, dim: self.shape.dim, counts: self.counts.clone() })
        } else {
            self.done = true;
            None
        }
    }
}

/// Boundary rank tuples `b_0 ≤ b_1 < … < b_m` over `n` ranks with at least
/// `q` ranks per strip.
fn boundary_tuples(n: usize, m: usize, q: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, m: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let strips_done = cur.len() - 1;
        if strips_done == m {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().unwrap();
        // Strip 0 spans [b_0, b_1]; later strips span (b_i, b_{i+1}].
        let first = if strips_done == 0 { last + q - 1 } else { last + q };
        let still = (m - strips_done - 1) * q;
        for b in first..n {
            if b + still >= n {
                break;
            }
            cur.push(b);
            extend(n, m, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if q == 0 || n < m * q {
        return out;
    }
    for b0 in 0..n {
        let mut cur = vec![b0];
        extend(n, m, q, &mut cur, &mut out);
    }
    out
}

/// Strip index for each rank under a boundary tuple; `None` outside.
fn strip_of_rank(tuple: &[usize], n: usize) -> Vec<Option<u8>> {
    (0..n)
        .map(|r| {
            if r < tuple[0] || r > *tuple.last().unwrap() {
                None
            } else {
                Some(tuple[1..].partition_point(|&b| b < r) as u8)
            }
        })
        .collect()
}

/// Result of the approximation scheme.
#[derive(Clone, Debug, Serialize)]
pub struct PtasOutcome {
    pub allocation: Allocation,
    pub strips: StripStructure,
    pub plan: CellPlan,
    /// Strip structures enumerated.
    pub structures: u64,
    /// Complete (structure, plan) configurations whose weight was evaluated.
    pub evaluated: u64,
}

#[derive(Clone, Debug)]
struct Best {
    total: u64,
    tuples: Vec<usize>,
    counts: Vec<u32>,
    chosen: Vec<usize>,
}

struct ConfigSearch<'a> {
    shape: &'a PlanShape,
    pts: &'a [Point],
    /// Candidate input indices per cell, in selection order.
    members: Vec<Vec<usize>>,
    rem: Vec<Vec<u32>>,
    /// Candidates per slice in cells not yet visited.
    left: Vec<Vec<u32>>,
    counts: Vec<u32>,
    chosen: Vec<usize>,
    bound: u64,
    found: Option<(u64, Vec<u32>, Vec<usize>)>,
    evaluated: u64,
}

impl ConfigSearch<'_> {
    fn descend(&mut self, cell: usize, partial: u64) {
        if cell == self.shape.cells() {
            self.evaluated += 1;
            if partial < self.bound {
                self.bound = partial;
                self.found = Some((partial, self.counts.clone(), self.chosen.clone()));
            }
            return;
        }
        let avail = self.members[cell].len() as u32;
        let (mut lo, hi) = self.shape.range(cell, &self.rem, avail);
        let cc = &self.shape.coords[cell];
        for (a, &i) in cc.iter().enumerate() {
            self.left[a][i] -= avail;
            lo = lo.max(self.rem[a][i].saturating_sub(self.left[a][i]));
        }
        if lo <= hi {
            self.fill(cell, partial, lo, hi);
        }
        for (a, &i) in self.shape.coords[cell].iter().enumerate() {
            self.left[a][i] += avail;
        }
    }

    fn fill(&mut self, cell: usize, partial: u64, lo: u32, hi: u32) {
        // Take the first `lo` points, then grow one point at a time.
        let mut cost = partial;
        let mut taken = 0u32;
        let base = self.chosen.len();
        let mut ok = true;
        while taken < lo {
            cost += self.add_point(cell, taken as usize);
            taken += 1;
            if cost >= self.bound {
                ok = false;
                break;
            }
        }
        if ok {
            loop {
                self.counts[cell] = taken;
                self.shape.apply(cell, &mut self.rem, taken, true);
                self.descend(cell + 1, cost);
                self.shape.apply(cell, &mut self.rem, taken, false);
                if taken == hi {
                    break;
                }
                cost += self.add_point(cell, taken as usize);
                taken += 1;
                // Costs only grow with more points from this cell.
                if cost >= self.bound {
                    break;
                }
            }
        }
        self.counts[cell] = 0;
        self.chosen.truncate(base);
    }

    fn add_point(&mut self, cell: usize, nth: usize) -> u64 {
        let p = self.members[cell][nth];
        let add = self
            .chosen
            .iter()
            .map(|&q| dist(self.pts[p].coords(), self.pts[q].coords()))
            .sum();
        self.chosen.push(p);
        add
    }
}

/// Planar scheme with its approximation certificate: requires `m ≥ 5`.
pub fn ptas_select(set: &PointMultiset, k: usize, m: usize) -> Result<PtasOutcome> {
    ptas_select_with_budget(set, k, m, DEFAULT_PTAS_BUDGET)
}

pub fn ptas_select_with_budget(
    set: &PointMultiset,
    k: usize,
    m: usize,
    budget: u128,
) -> Result<PtasOutcome> {
    if set.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: set.dim() });
    }
    if m < 5 {
        return Err(Error::invalid(format!("m = {m}: the planar guarantee needs m ≥ 5")));
    }
    ptas_select_d_with_budget(set, k, m, budget)
}

/// The scheme in any dimension (the dimension is the input's). Any `m ≥ 1`
/// dividing `k` is accepted; no approximation factor is claimed beyond the
/// plane.
pub fn ptas_select_d(set: &PointMultiset, k: usize, m: usize) -> Result<PtasOutcome> {
    ptas_select_d_with_budget(set, k, m, DEFAULT_PTAS_BUDGET)
}

pub fn ptas_select_d_with_budget(
    set: &PointMultiset,
    k: usize,
    m: usize,
    budget: u128,
) -> Result<PtasOutcome> {
    let n = set.len();
    let dim = set.dim();
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if m == 0 || !k.is_multiple_of(m) {
        return Err(Error::invalid(format!("k = {k} is not divisible by m = {m}")));
    }
    if k > n {
        return Err(Error::InsufficientProcessors { requested: k, available: n });
    }
    if m > u8::MAX as usize {
        return Err(Error::invalid("m too large"));
    }
    let q = k / m;
    let pts = set.points();
    let tuples = boundary_tuples(n, m, q);
    let structures = (tuples.len() as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if structures > budget {
        return Err(Error::BudgetExceeded { required: structures, budget });
    }
    let strips: Vec<Vec<Option<u8>>> = tuples.iter().map(|t| strip_of_rank(t, n)).collect();

    let mut rank = vec![vec![0usize; n]; dim];
    let mut order_by_axis = Vec::with_capacity(dim);
    for (axis, ranks) in rank.iter_mut().enumerate() {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (pts[i][axis], i));
        for (r, &i) in order.iter().enumerate() {
            ranks[i] = r;
        }
        order_by_axis.push(order);
    }
    let mut lex: Vec<usize> = (0..n).collect();
    lex.sort_by(|&a, &b| pts[a].cmp(&pts[b]).then(a.cmp(&b)));
    let mut lex_rank = vec![0usize; n];
    for (r, &i) in lex.iter().enumerate() {
        lex_rank[i] = r;
    }

    let shape = PlanShape::new(m, dim, q as u32);
    let cells = shape.cells();
    let gradients: Vec<GradientVector> =
        shape.coords.iter().map(|cc| GradientVector::for_cell(cc, m, k)).collect();
    // keyed[cell][i] = ⟨∇_cell, p_i⟩, precomputed once.
    let keyed: Vec<Vec<i128>> =
        gradients.iter().map(|g| pts.iter().map(|p| g.dot(p)).collect()).collect();

    let t = tuples.len();
    let search_outer = |outer: usize| -> (Option<Best>, u64) {
        let mut best: Option<Best> = None;
        let mut inner = vec![0usize; dim - 1];
        // The search leaves `rem`, `counts` and `chosen` as it found them.
        let mut search = ConfigSearch {
            shape: &shape,
            pts,
            members: vec![Vec::new(); cells],
            rem: shape.fresh_rem(),
            left: vec![vec![0; m]; dim],
            counts: vec![0; cells],
            chosen: Vec::with_capacity(k),
            bound: u64::MAX,
            found: None,
            evaluated: 0,
        };
        loop {
            for list in &mut search.members {
                list.clear();
            }
            'points: for i in 0..n {
                let mut cell = 0usize;
                for axis in 0..dim {
                    let tuple = if axis == 0 { outer } else { inner[axis - 1] };
                    match strips[tuple][rank[axis][i]] {
                        Some(s) => cell = cell * m + s as usize,
                        None => continue 'points,
                    }
                }
                search.members[cell].push(i);
            }
            for row in &mut search.left {
                row.fill(0);
            }
            for (cell, list) in search.members.iter_mut().enumerate() {
                let key = &keyed[cell];
                list.sort_unstable_by_key(|&i| (key[i], lex_rank[i]));
                for (a, &i) in shape.coords[cell].iter().enumerate() {
                    search.left[a][i] += list.len() as u32;
                }
            }
            search.descend(0, 0);
            if let Some((total, counts, chosen)) = search.found.take() {
                let mut tuples_used = vec![outer];
                tuples_used.extend_from_slice(&inner);
                best = Some(Best { total, tuples: tuples_used, counts, chosen });
            }
            // Next inner tuple combination, last axis fastest.
            let mut axis = inner.len();
            loop {
                if axis == 0 {
                    return (best, search.evaluated);
                }
                axis -= 1;
                inner[axis] += 1;
                if inner[axis] < t {
                    break;
                }
                inner[axis] = 0;
            }
        }
    };

    let (best, evaluated) = (0..t)
        .into_par_iter()
        .map(search_outer)
        .reduce(
            || (None, 0),
            |(a, ea), (b, eb)| {
                let pick = match (a, b) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(b)) => {
                        if (b.total, &b.tuples) < (a.total, &a.tuples) {
                            Some(b)
                        } else {
                            Some(a)
                        }
                    }
                };
                (pick, ea + eb)
            },
        );
    let best = best.ok_or_else(|| Error::invalid("no feasible strip structure"))?;

    let structure = StripStructure {
        m,
        ranks: best.tuples.iter().map(|&ti| tuples[ti].clone()).collect(),
        bounds: best
            .tuples
            .iter()
            .enumerate()
            .map(|(axis, &ti)| tuples[ti].iter().map(|&r| pts[order_by_axis[axis][r]][axis]).collect())
            .collect(),
    };
    let allocation = Allocation {
        algorithm: "PTAS".into(),
        selected: set.subset(&best.chosen),
        total_distance: best.total,
        center: None,
    };
    Ok(PtasOutcome {
        allocation,
        strips: structure,
        plan: CellPlan { m, dim, counts: best.counts },
        structures: structures as u64,
        evaluated,
    })
}

/// Largest `m ≥ 5` dividing `k`, if any.
pub fn auto_m(k: usize) -> Option<usize> {
    (5..=k).rev().find(|m| k.is_multiple_of(*m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pairwise_sum;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn factor_values() {
        assert_eq!(ptas_factor(5).unwrap(), Ratio::from_integer(6));
        assert_eq!(ptas_factor(6).unwrap(), Ratio::new(20, 7));
        let f = ptas_factor(1000).unwrap();
        assert!(f < Ratio::new(1004, 1000) && f > Ratio::from_integer(1));
        assert!(ptas_factor(4).is_err());
        // Direct substitution into 1 − 1/(m−2) − 2/(m−1).
        for m in 5..40u64 {
            let slack = Ratio::from_integer(1i64)
                - Ratio::new(1, m as i64 - 2)
                - Ratio::new(2, m as i64 - 1);
            let f = ptas_factor(m).unwrap();
            assert_eq!(Ratio::new(*f.numer() as i64, *f.denom() as i64), slack.recip());
        }
    }

    #[test]
    fn permutation_plans() {
        for m in 1..=5 {
            let plans: Vec<CellPlan> = enumerate_cell_plans(m, m).unwrap().collect();
            assert_eq!(plans.len(), factorial(m));
            assert!(plans.iter().all(|p| p.has_margins(1)));
        }
    }

    #[test]
    fn two_by_two_plans() {
        let plans: Vec<Vec<Vec<u32>>> = enumerate_cell_plans(4, 2).unwrap().map(|p| p.rows()).collect();
        assert_eq!(plans, vec![vec![vec![0, 2], vec![2, 0]], vec![vec![1, 1], vec![1, 1]], vec![
            vec![2, 0],
            vec![0, 2]
        ]]);
        assert!(enumerate_cell_plans(5, 2).is_err());
    }

    #[test]
    fn plans_are_distinct_and_complete() {
        // 3×3 tables with margins 2: 21 of them.
        let plans: Vec<CellPlan> = enumerate_cell_plans(6, 3).unwrap().collect();
        let mut seen = std::collections::HashSet::new();
        assert!(plans.iter().all(|p| seen.insert(p.counts.clone())));
        assert_eq!(plans.len(), 21);
        // Brute force over all 3^9 tables with entries ≤ 2.
        let mut brute = 0;
        for code in 0..3u32.pow(9) {
            let counts: Vec<u32> = (0..9).map(|i| code / 3u32.pow(i) % 3).collect();
            if (CellPlan { m: 3, dim: 2, counts }).has_margins(2) {
                brute += 1;
            }
        }
        assert_eq!(brute, 21);
        // 3-dimensional permutation tensors: 3!·3! of them.
        let cube: Vec<CellPlan> = enumerate_cell_plans_d(3, 3, 3).unwrap().collect();
        assert_eq!(cube.len(), 36);
        assert!(cube.iter().all(|p| p.has_margins(1)));
    }

    #[test]
    fn gradient_antisymmetry() {
        let (m, k) = (6, 12);
        for i in 0..m {
            for j in 0..m {
                let g = GradientVector::for_cell(&[i, j], m, k);
                let mirror = GradientVector::for_cell(&[m - 1 - i, m - 1 - j], m, k);
                assert_eq!(g.0, mirror.0.iter().map(|x| -x).collect::<Vec<_>>());
            }
        }
        assert_eq!(GradientVector::for_cell(&[0, 4], 5, 10).0, vec![-8, 8]);
    }

    #[test]
    fn boundary_enumeration() {
        // k = m: ranks choose b_0 ≤ b_1 < … < b_m freely.
        let tuples = boundary_tuples(7, 3, 1);
        assert_eq!(tuples.len(), 35 + 35);
        let exact = boundary_tuples(6, 3, 2);
        assert_eq!(exact, vec![vec![0, 1, 3, 5]]);
        let strips = strip_of_rank(&[1, 2, 4, 6], 8);
        assert_eq!(strips, vec![None, Some(0), Some(0), Some(1), Some(1), Some(2), Some(2), None]);
    }

    #[test]
    fn whole_set_when_k_equals_n() {
        let p = PointMultiset::new(
            [[0, 0], [4, 1], [2, 7], [9, 3], [5, 5]].iter().map(|&c| Point::from(c)).collect(),
        )
        .unwrap();
        let out = ptas_select(&p, 5, 5).unwrap();
        assert_eq!(out.allocation.total_distance, pairwise_sum(&p));
        assert_eq!(out.structures, 1);
        assert!(out.plan.has_margins(1));
    }

    #[test]
    fn coincident_points() {
        let p = PointMultiset::new(vec![Point::from([3, 3]); 8]).unwrap();
        assert_eq!(ptas_select(&p, 5, 5).unwrap().allocation.total_distance, 0);
    }

    #[test]
    fn argument_errors() {
        let p = PointMultiset::new(vec![Point::from([0, 0]); 12]).unwrap();
        assert!(ptas_select(&p, 6, 5).is_err());
        assert!(ptas_select(&p, 4, 4).is_err());
        assert!(ptas_select(&p, 15, 5).is_err());
        assert!(matches!(
            ptas_select_with_budget(&p, 5, 5, 10),
            Err(Error::BudgetExceeded { .. })
        ));
        let p3 = PointMultiset::new(vec![Point::from([0, 0, 0]); 6]).unwrap();
        assert!(ptas_select(&p3, 5, 5).is_err());
    }

    #[test]
    fn auto_m_choice() {
        assert_eq!(auto_m(12), Some(12));
        assert_eq!(auto_m(5), Some(5));
        assert_eq!(auto_m(4), None);
        assert_eq!(auto_m(14), Some(14));
    }
}
