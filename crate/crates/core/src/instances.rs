//! Instance generators: the MM lower-bound families, random meshes and point
//! sets, and synthetic job traces.
//!
//! Randomness comes from [`Lcg64`], a fixed 64-bit linear congruential
//! generator, so every generated instance can be reproduced bit for bit in
//! any language:
//!
//! ```text
//! state ← state · 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! next_u32 = state >> 32                  (after stepping)
//! below(b) = (next_u32 · b) >> 32          (b ≤ 2^32)
//! ```
//!
//! The initial state is the seed.

use std::fmt::Write as _;

use crate::allocators::Mesh;
use crate::error::{Error, Result};
use crate::geometry::{Point, PointMultiset};

#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish integer in `[0, bound)`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0 && bound <= 1 << 32, "bound out of range");
        (u64::from(self.next_u32()) * bound) >> 32
    }

    /// Integer in `[lo, hi]`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// The planar family on which MM approaches ratio 7/4: `k/2` points at each
/// of `(0,0)` and `(scale,0)`, and `k/8` points at each of `(0,±(scale−1))`,
/// `(scale,±(scale−1))`, `(2·scale−1,0)` and `(−scale+1,0)`.
pub fn gen_lower_bound_2d(k: usize, scale: i64) -> Result<PointMultiset> {
    if k == 0 || !k.is_multiple_of(8) {
        return Err(Error::invalid(format!("k = {k} must be a positive multiple of 8")));
    }
    gen_lower_bound_crosspolytope(k, 2, scale)
}

/// The `d`-dimensional cross-polytope family on which MM approaches ratio
/// `2 − 1/(2d)`.
pub fn gen_lower_bound_crosspolytope(k: usize, d: usize, scale: i64) -> Result<PointMultiset> {
    if d < 2 {
        return Err(Error::invalid("dimension must be at least 2"));
    }
    if k == 0 || !k.is_multiple_of(4 * d) {
        return Err(Error::invalid(format!("k = {k} must be a positive multiple of 4d = {}", 4 * d)));
    }
    if scale < 2 {
        return Err(Error::invalid("scale must be at least 2"));
    }
    let unit = |axis: usize, len: i64| -> Vec<i64> {
        let mut v = vec![0; d];
        v[axis] = len;
        v
    };
    let add = |a: Vec<i64>, b: Vec<i64>| -> Point { Point::new(a.iter().zip(&b).map(|(x, y)| x + y).collect()) };
    let origin = Point::origin(d);
    let partner = Point::new(unit(0, scale));
    let mut points = Vec::with_capacity(k + 2 * (2 * d - 1));
    points.extend(std::iter::repeat_n(origin, k / 2));
    points.extend(std::iter::repeat_n(partner, k / 2));

    let mut satellites = vec![Point::new(unit(0, -(scale - 1))), Point::new(unit(0, 2 * scale - 1))];
    for axis in 1..d {
        satellites.push(Point::new(unit(axis, scale - 1)));
        satellites.push(Point::new(unit(axis, -(scale - 1))));
    }
    for axis in 1..d {
        satellites.push(add(unit(0, scale), unit(axis, scale - 1)));
        satellites.push(add(unit(0, scale), unit(axis, -(scale - 1))));
    }
    for s in satellites {
        points.extend(std::iter::repeat_n(s, k / (4 * d)));
    }
    PointMultiset::new(points)
}

/// A mesh with `⌊occupancy · size⌋` occupied cells, chosen by a partial
/// Fisher–Yates shuffle of the row-major cell indices driven by [`Lcg64`].
pub fn gen_random_mesh(extents: Vec<usize>, occupancy: f64, seed: u64) -> Result<Mesh> {
    if !(0.0..=1.0).contains(&occupancy) {
        return Err(Error::invalid(format!("occupancy {occupancy} outside [0, 1]")));
    }
    let mut mesh = Mesh::new(extents)?;
    let size = mesh.size();
    let count = ((occupancy * size as f64).floor() as usize).min(size);
    let mut cells: Vec<usize> = (0..size).collect();
    let mut rng = Lcg64::new(seed);
    for i in 0..count {
        let j = i + rng.below((size - i) as u64) as usize;
        cells.swap(i, j);
    }
    for &c in &cells[..count] {
        let p = mesh.cell_point(c);
        mesh.occupy(&p)?;
    }
    Ok(mesh)
}

/// `n` points with every coordinate drawn from `[0, span)`, axis by axis.
pub fn gen_random_points(n: usize, dim: usize, span: u64, seed: u64) -> Result<PointMultiset> {
    if n == 0 || dim == 0 || span == 0 {
        return Err(Error::invalid("n, dim and span must be positive"));
    }
    let mut rng = Lcg64::new(seed);
    let pts = (0..n)
        .map(|_| Point::new((0..dim).map(|_| rng.below(span) as i64).collect()))
        .collect();
    PointMultiset::new(pts)
}

/// A synthetic trace in Standard Workload Format: `jobs` jobs with
/// exponential-looking interarrival gaps, power-of-two-heavy sizes up to
/// `max_procs` and run times between one minute and two hours.
pub fn gen_synthetic_swf(jobs: usize, max_procs: u64, seed: u64) -> String {
    let mut rng = Lcg64::new(seed);
    let mut out = String::new();
    writeln!(out, "; Synthetic trace, seed {seed}, {jobs} jobs, max {max_procs} processors").unwrap();
    writeln!(out, "; MaxProcs: {max_procs}").unwrap();
    let mut t = 0u64;
    for id in 1..=jobs {
        // Gap: geometric mixture, mostly short, occasionally a lull.
        t += match rng.below(10) {
            0 => 600 + rng.below(3000),
            1..=3 => 0,
            _ => rng.below(240),
        };
        let procs = if rng.below(3) == 0 {
            1 + rng.below(max_procs)
        } else {
            let top = 63 - max_procs.leading_zeros() as u64;
            1u64 << rng.below(top + 1)
        };
        let run = 60 + rng.below(7140);
        writeln!(
            out,
            "{id} {t} -1 {run} {procs} -1 -1 {procs} {req} -1 1 1 1 1 1 -1 -1 -1",
            req = run + 300
        )
        .unwrap();
    }
    out
}
