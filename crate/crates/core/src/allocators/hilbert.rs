//! Hilbert-curve linearization and best-fit allocation over curve runs.

use super::mesh::Mesh;
use crate::error::{Error, Result};
use crate::geometry::{Allocation, Point, PointMultiset};

/// Rank of a 2D point along the Hilbert curve filling the
/// `2^order × 2^order` square. Order 1 visits (0,0), (0,1), (1,1), (1,0).
pub fn hilbert_index(p: &Point, order: u32) -> Result<u64> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.dim() });
    }
    if order > 31 {
        return Err(Error::invalid(format!("curve order {order} too large")));
    }
    let n = 1i64 << order;
    if !(0..n).contains(&p[0]) || !(0..n).contains(&p[1]) {
        return Err(Error::OutOfBounds {
            point: p.coords().to_vec(),
            extents: vec![n as usize, n as usize],
        });
    }
    let (mut x, mut y) = (p[0] as u64, p[1] as u64);
    let n = n as u64;
    let mut d = 0u64;
    let mut s = n / 2;
    while s > 0 {
        let rx = u64::from(x & s > 0);
        let ry = u64::from(y & s > 0);
        d += s * s * ((3 * rx) ^ ry);
        if ry == 0 {
            if rx == 1 {
                x = n - 1 - x;
                y = n - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        s /= 2;
    }
    Ok(d)
}

/// Smallest curve order whose square covers the mesh.
pub fn enclosing_order(mesh: &Mesh) -> u32 {
    let side = mesh.extents().iter().copied().max().unwrap_or(1);
    side.next_power_of_two().trailing_zeros()
}

/// Mesh cells in curve order. Curve positions outside the mesh are skipped,
/// so consecutive entries may be far apart on the curve when the mesh is not
/// a power-of-two square.
pub fn curve_order(mesh: &Mesh) -> Result<Vec<usize>> {
    if mesh.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: mesh.dim() });
    }
    let order = enclosing_order(mesh);
    let mut cells: Vec<(u64, usize)> = (0..mesh.size())
        .map(|i| Ok((hilbert_index(&mesh.cell_point(i), order)?, i)))
        .collect::<Result<_>>()?;
    cells.sort_unstable();
    Ok(cells.into_iter().map(|(_, i)| i).collect())
}

/// Maximal runs of free cells that are consecutive in the mesh's curve
/// order, as `(start, len)` into `order`.
fn free_runs(mesh: &Mesh, order: &[usize]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = None;
    for (pos, &cell) in order.iter().enumerate() {
        match (mesh.is_cell_free(cell), start) {
            (true, None) => start = Some(pos),
            (false, Some(s)) => {
                runs.push((s, pos - s));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push((s, order.len() - s));
    }
    runs
}

/// HilbertBF: best fit over runs of curve-consecutive free processors.
///
/// The smallest run holding the whole request is used (its first `k`
/// cells). Otherwise the largest run is taken whole and the remainder is
/// placed the same way, until `k` processors are gathered. Ties go to the
/// earlier run on the curve.
pub fn hilbert_bf_allocate(mesh: &Mesh, k: usize) -> Result<Allocation> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > mesh.free_count() {
        return Err(Error::InsufficientProcessors { requested: k, available: mesh.free_count() });
    }
    let order = curve_order(mesh)?;
    let mut runs = free_runs(mesh, &order);
    let mut picked = Vec::with_capacity(k);
    let mut need = k;
    while need > 0 {
        let fit = runs
            .iter()
            .enumerate()
            .filter(|(_, r)| r.1 >= need)
            .min_by_key(|(i, r)| (r.1, *i))
            .map(|(i, _)| i);
        let slot = match fit {
            Some(i) => i,
            None => {
                runs.iter().enumerate().max_by_key(|(i, r)| (r.1, std::cmp::Reverse(*i))).unwrap().0
            }
        };
        let (start, len) = runs.remove(slot);
        let take = len.min(need);
        picked.extend(order[start..start + take].iter().map(|&c| mesh.cell_point(c)));
        need -= take;
    }
    let selected = PointMultiset::with_dim(2, picked)?;
    Ok(Allocation::new("HilbertBF", selected, None))
}
