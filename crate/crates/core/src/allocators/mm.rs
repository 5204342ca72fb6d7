//! Manhattan-median allocation and its local-improvement variant.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    candidate_medians, dist, k_closest_indices, pairwise_sum_points, Allocation, Point,
    PointMultiset,
};

/// Which candidate medians MM scans.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MedianMode {
    /// Every intersection of axis-parallel lines through the input (`O(n^d)`).
    #[default]
    Full,
    /// Only the input points themselves. Only a 2-approximation is claimed.
    Fast,
}

pub(crate) struct Selection {
    pub indices: Vec<usize>,
    pub total: u64,
    pub center: Point,
}

fn check_request(free: &PointMultiset, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > free.len() {
        return Err(Error::InsufficientProcessors { requested: k, available: free.len() });
    }
    Ok(())
}

pub(crate) fn mm_select(free: &PointMultiset, k: usize, mode: MedianMode) -> Result<Selection> {
    check_request(free, k)?;
    let candidates = match mode {
        MedianMode::Full => candidate_medians(free),
        MedianMode::Fast => {
            let mut pts = free.points().to_vec();
            pts.sort();
            pts.dedup();
            PointMultiset::with_dim(free.dim(), pts)?
        }
    };
    // Candidates are in lexicographic order, so the smallest position wins ties.
    let (total, pos, indices) = candidates
        .points()
        .par_iter()
        .enumerate()
        .map(|(pos, c)| {
            let idx = k_closest_indices(free, c, k).expect("k was checked against |free|");
            let total = pairwise_sum_points(idx.iter().map(|&i| &free.points()[i]));
            (total, pos, idx)
        })
        .min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)))
        .expect("candidate set of a nonempty input is nonempty");
    Ok(Selection { indices, total, center: candidates.points()[pos].clone() })
}

/// MM: for every candidate median take the `k` nearest free processors and
/// keep the cheapest cluster. Ties go to the lexicographically smallest
/// median.
pub fn mm_allocate(free: &PointMultiset, k: usize) -> Result<Allocation> {
    mm_allocate_with(free, k, MedianMode::Full)
}

pub fn mm_allocate_with(free: &PointMultiset, k: usize, mode: MedianMode) -> Result<Allocation> {
    let sel = mm_select(free, k, mode)?;
    let alloc = Allocation {
        algorithm: "MM".into(),
        selected: free.subset(&sel.indices),
        total_distance: sel.total,
        center: Some(sel.center),
    };
    Ok(alloc)
}

/// Steepest-descent single swaps starting from `start`. Each round applies
/// the swap (one selected out, one excluded in) with the largest decrease;
/// ties go to the smallest (outgoing, incoming) input positions. Returns the
/// final selection sorted by input position and its total.
pub(crate) fn local_improve(free: &PointMultiset, start: &[usize]) -> (Vec<usize>, u64) {
    let pts = free.points();
    let n = pts.len();
    let mut in_set = vec![false; n];
    for &i in start {
        in_set[i] = true;
    }
    let mut selected: Vec<usize> = start.to_vec();
    selected.sort_unstable();
    // reach[q] = Σ_{s ∈ S} d(q, s)
    let mut reach: Vec<i128> = (0..n)
        .map(|q| selected.iter().map(|&s| dist(pts[q].coords(), pts[s].coords()) as i128).sum())
        .collect();
    let mut total: i128 = selected.iter().map(|&s| reach[s]).sum::<i128>() / 2;

    loop {
        let mut best: Option<(i128, usize, usize)> = None;
        for (slot, &out) in selected.iter().enumerate() {
            for inc in (0..n).filter(|&q| !in_set[q]) {
                let delta =
                    reach[inc] - reach[out] - dist(pts[out].coords(), pts[inc].coords()) as i128;
                if delta < 0 && best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, slot, inc));
                }
            }
        }
        let Some((delta, slot, inc)) = best else { break };
        let out = selected[slot];
        for (q, r) in reach.iter_mut().enumerate() {
            *r += dist(pts[q].coords(), pts[inc].coords()) as i128
                - dist(pts[q].coords(), pts[out].coords()) as i128;
        }
        in_set[out] = false;
        in_set[inc] = true;
        selected[slot] = inc;
        // Keeps ties resolving to the lowest (out, in) index pair.
        selected.sort_unstable();
        total += delta;
    }
    (selected, total as u64)
}

/// MM followed by steepest single-swap local improvement until no swap
/// lowers the total.
pub fn mm_inc_allocate(free: &PointMultiset, k: usize) -> Result<Allocation> {
    let sel = mm_select(free, k, MedianMode::Full)?;
    let (indices, total) = local_improve(free, &sel.indices);
    Ok(Allocation {
        algorithm: "MM+Inc".into(),
        selected: free.subset(&indices),
        total_distance: total,
        center: Some(sel.center),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pairwise_sum;

    fn set(pts: &[[i64; 2]]) -> PointMultiset {
        PointMultiset::new(pts.iter().map(|&c| Point::from(c)).collect()).unwrap()
    }

    #[test]
    fn compact_cluster() {
        let free = set(&[[0, 0], [1, 0], [0, 1], [5, 5]]);
        let a = mm_allocate(&free, 3).unwrap();
        assert_eq!(a.total_distance, 4);
        assert_eq!(a.selected.sorted(), set(&[[0, 0], [0, 1], [1, 0]]));
        assert_eq!(pairwise_sum(&a.selected), a.total_distance);
    }

    #[test]
    fn single_and_full() {
        let free = set(&[[0, 0], [4, 1], [2, 7]]);
        assert_eq!(mm_allocate(&free, 1).unwrap().total_distance, 0);
        let all = mm_inc_allocate(&free, 3).unwrap();
        assert_eq!(all.total_distance, pairwise_sum(&free));
    }

    #[test]
    fn request_errors() {
        let free = set(&[[0, 0], [1, 0]]);
        assert!(matches!(mm_allocate(&free, 3), Err(Error::InsufficientProcessors { .. })));
        assert!(matches!(mm_allocate(&free, 0), Err(Error::InvalidArgument(_))));
        assert!(mm_inc_allocate(&free, 3).is_err());
    }

    #[test]
    fn local_improvement_never_hurts() {
        // Two clusters: MM grabs points across both around the best median.
        let free = set(&[[0, 0], [0, 0], [0, 0], [5, 0], [5, 0], [5, 0], [2, 3], [3, 3]]);
        for k in 1..=free.len() {
            let mm = mm_allocate(&free, k).unwrap();
            let inc = mm_inc_allocate(&free, k).unwrap();
            assert!(inc.total_distance <= mm.total_distance, "k={k}");
            assert_eq!(pairwise_sum(&inc.selected), inc.total_distance);
        }
    }

    #[test]
    fn fast_mode_uses_input_points() {
        let free = set(&[[0, 2], [2, 0], [2, 2], [9, 9]]);
        let full = mm_allocate_with(&free, 3, MedianMode::Full).unwrap();
        let fast = mm_allocate_with(&free, 3, MedianMode::Fast).unwrap();
        assert_eq!(full.center, Some(Point::from([0, 0])));
        assert_eq!(full.total_distance, 8);
        assert!(free.points().contains(fast.center.as_ref().unwrap()));
        assert!(fast.total_distance >= full.total_distance);
    }
}
