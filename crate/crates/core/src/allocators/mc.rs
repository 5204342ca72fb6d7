//! MC1x1: shell-based allocation around a free processor.
//!
//! Shell `i` around a center `v` is the ring of processors at L∞ distance
//! `i`; shell 0 is the center itself. The cost of a center is the sum of the
//! shell numbers of the `k` processors chosen, and choosing the `k` free
//! processors with the smallest shell numbers minimizes it.

use rayon::prelude::*;
use serde::Serialize;

use super::mesh::Mesh;
use crate::error::{Error, Result};
use crate::geometry::{chebyshev, Allocation, Point, PointMultiset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellCost {
    pub center: Point,
    pub sigma: u64,
}

fn shell_select(free: &PointMultiset, center: &Point, k: usize) -> (u64, Vec<usize>) {
    let pts = free.points();
    let mut keyed: Vec<(u64, usize)> =
        pts.iter().enumerate().map(|(i, p)| (chebyshev(p.coords(), center.coords()), i)).collect();
    let cmp = |a: &(u64, usize), b: &(u64, usize)| {
        a.0.cmp(&b.0).then_with(|| pts[a.1].cmp(&pts[b.1])).then(a.1.cmp(&b.1))
    };
    if k < keyed.len() {
        keyed.select_nth_unstable_by(k - 1, cmp);
        keyed.truncate(k);
    }
    keyed.sort_unstable_by(cmp);
    let sigma = keyed.iter().map(|e| e.0).sum();
    (sigma, keyed.into_iter().map(|e| e.1).collect())
}

/// MC1x1 over an explicit free set. Every distinct free point is tried as a
/// center; the lexicographically smallest center wins ties on `σ`.
pub fn mc1x1_select(free: &PointMultiset, k: usize) -> Result<(Allocation, ShellCost)> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > free.len() {
        return Err(Error::InsufficientProcessors { requested: k, available: free.len() });
    }
    let mut centers = free.points().to_vec();
    centers.sort();
    centers.dedup();
    let (sigma, pos, indices) = centers
        .par_iter()
        .enumerate()
        .map(|(pos, c)| {
            let (sigma, idx) = shell_select(free, c, k);
            (sigma, pos, idx)
        })
        .min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)))
        .expect("free set is nonempty");
    let center = centers[pos].clone();
    let alloc = Allocation::new("MC1x1", free.subset(&indices), Some(center.clone()));
    Ok((alloc, ShellCost { center, sigma }))
}

pub fn mc1x1_allocate(mesh: &Mesh, k: usize) -> Result<(Allocation, ShellCost)> {
    mc1x1_select(&mesh.free_points(), k)
}
