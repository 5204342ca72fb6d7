//! L1 geometry on integer lattices.
//!
//! Every distance in this crate is a hop count on a mesh, so coordinates are
//! `i64` and all sums are exact integers. Sums are accumulated in `i128` and
//! narrowed to `u64` at the end.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A processor location in `Z^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn translated(&self, offset: &[i64]) -> Point {
        Point(self.0.iter().zip(offset).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, factor: i64) -> Point {
        Point(self.0.iter().map(|a| a * factor).collect())
    }
}

impl std::ops::Index<usize> for Point {
    type Output = i64;

    fn index(&self, axis: usize) -> &i64 {
        &self.0[axis]
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(coords: [i64; N]) -> Self {
        Point(coords.to_vec())
    }
}

impl From<Vec<i64>> for Point {
    fn from(coords: Vec<i64>) -> Self {
        Point(coords)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An ordered list of points sharing one dimension. Duplicates are allowed:
/// multiplicity is expressed by repetition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PointMultiset {
    points: Vec<Point>,
    #[serde(skip)]
    dim: usize,
}

impl PointMultiset {
    /// Builds a multiset, checking that all points share a nonzero dimension.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptySet)?.dim();
        Self::with_dim(dim, points)
    }

    /// Builds a possibly empty multiset of a known dimension.
    pub fn with_dim(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("points must have at least one coordinate"));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
        Ok(PointMultiset { points, dim })
    }

    pub fn empty(dim: usize) -> Self {
        PointMultiset { points: Vec::new(), dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// The sub-multiset at the given input positions, in the given order.
    pub fn subset(&self, indices: &[usize]) -> PointMultiset {
        PointMultiset {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            dim: self.dim,
        }
    }

    pub fn sorted(&self) -> PointMultiset {
        let mut points = self.points.clone();
        points.sort();
        PointMultiset { points, dim: self.dim }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<Vec<i64>> = serde_json::from_str(text)?;
        Self::new(raw.into_iter().map(Point::new).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("point lists always serialize")
    }
}

impl<'de> Deserialize<'de> for PointMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<i64>>::deserialize(de)?;
        PointMultiset::new(raw.into_iter().map(Point::new).collect())
            .map_err(serde::de::Error::custom)
    }
}

impl<'a> IntoIterator for &'a PointMultiset {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// A chosen k-subset together with its cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Allocation {
    pub algorithm: String,
    pub selected: PointMultiset,
    pub total_distance: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<Point>,
}

impl Allocation {
    /// Wraps a selection, computing its total pairwise distance.
    pub fn new(algorithm: &str, selected: PointMultiset, center: Option<Point>) -> Self {
        let total_distance = pairwise_sum(&selected);
        Allocation { algorithm: algorithm.to_string(), selected, total_distance, center }
    }

    pub fn k(&self) -> usize {
        self.selected.len()
    }
}

pub(crate) fn check_dims(p: &Point, q: &Point) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    Ok(())
}

/// Hop distance between two processors.
pub fn l1_distance(p: &Point, q: &Point) -> Result<u64> {
    check_dims(p, q)?;
    Ok(dist(p.coords(), q.coords()))
}

#[inline]
pub(crate) fn dist(p: &[i64], q: &[i64]) -> u64 {
    p.iter().zip(q).map(|(a, b)| a.abs_diff(*b)).sum()
}

#[inline]
pub(crate) fn chebyshev(p: &[i64], q: &[i64]) -> u64 {
    p.iter().zip(q).map(|(a, b)| a.abs_diff(*b)).max().unwrap_or(0)
}

/// Sum over all unordered pairs of sorted values: `Σ_i (2i − (k−1)) x_i`,
/// which is the telescoped form of `(k−1)(x_{k−1}−x_0) + (k−3)(x_{k−2}−x_1) + …`.
fn axis_pair_sum(values: &mut [i64]) -> i128 {
    values.sort_unstable();
    let k = values.len() as i128;
    values
        .iter()
        .enumerate()
        .map(|(i, &x)| (2 * i as i128 - (k - 1)) * x as i128)
        .sum()
}

/// Total pairwise L1 distance of a list of points, computed axis by axis in
/// `O(k log k)`.
pub fn pairwise_sum_points<'a, I>(points: I) -> u64
where
    I: IntoIterator<Item = &'a Point>,
{
    let points: Vec<&Point> = points.into_iter().collect();
    let Some(first) = points.first() else { return 0 };
    let mut values = Vec::with_capacity(points.len());
    let mut total = 0i128;
    for axis in 0..first.dim() {
        values.clear();
        values.extend(points.iter().map(|p| p[axis]));
        total += axis_pair_sum(&mut values);
    }
    total as u64
}

/// `w(S)`: the sum of L1 distances over all unordered pairs of `S`.
pub fn pairwise_sum(set: &PointMultiset) -> u64 {
    pairwise_sum_points(set.iter())
}

/// `w(S, T)`: the sum of distances from every point of `S` to every point of
/// `T`. When `S = T` each unordered pair is counted twice.
pub fn pairwise_sum_between(s: &PointMultiset, t: &PointMultiset) -> Result<u64> {
    if s.is_empty() || t.is_empty() {
        return Ok(0);
    }
    if s.dim() != t.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), found: t.dim() });
    }
    let mut total = 0i128;
    for axis in 0..s.dim() {
        let mut sorted: Vec<i64> = t.iter().map(|p| p[axis]).collect();
        sorted.sort_unstable();
        let mut prefix = Vec::with_capacity(sorted.len() + 1);
        prefix.push(0i128);
        for &v in &sorted {
            prefix.push(prefix.last().unwrap() + v as i128);
        }
        let all = *prefix.last().unwrap();
        let len = sorted.len() as i128;
        for p in s {
            let x = p[axis] as i128;
            let below = sorted.partition_point(|&v| (v as i128) < x);
            let b = below as i128;
            total += x * b - prefix[below];
            total += (all - prefix[below]) - x * (len - b);
        }
    }
    Ok(total as u64)
}

/// Coordinate-wise median. With an even count the lower median is used on
/// every axis.
pub fn l1_median(set: &PointMultiset) -> Result<Point> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mid = (set.len() - 1) / 2;
    let coords = (0..set.dim())
        .map(|axis| {
            let mut values: Vec<i64> = set.iter().map(|p| p[axis]).collect();
            *values.select_nth_unstable(mid).1
        })
        .collect();
    Ok(Point::new(coords))
}

/// Positions of the `k` points nearest to `center`, ordered by
/// `(distance, coordinates, input index)`.
pub fn k_closest_indices(set: &PointMultiset, center: &Point, k: usize) -> Result<Vec<usize>> {
    if k > set.len() {
        return Err(Error::InsufficientProcessors { requested: k, available: set.len() });
    }
    if !set.is_empty() {
        check_dims(&set.points[0], center)?;
    }
    let points = set.points();
    let mut keyed: Vec<(u64, usize)> =
        points.iter().enumerate().map(|(i, p)| (dist(p.coords(), center.coords()), i)).collect();
    let cmp = |a: &(u64, usize), b: &(u64, usize)| -> Ordering {
        a.0.cmp(&b.0).then_with(|| points[a.1].cmp(&points[b.1])).then(a.1.cmp(&b.1))
    };
    if k == 0 {
        return Ok(Vec::new());
    }
    if k < keyed.len() {
        keyed.select_nth_unstable_by(k - 1, cmp);
        keyed.truncate(k);
    }
    keyed.sort_unstable_by(cmp);
    Ok(keyed.into_iter().map(|(_, i)| i).collect())
}

/// The `k` points of `set` nearest to `center` under the deterministic
/// tie-break of [`k_closest_indices`].
pub fn k_closest(set: &PointMultiset, center: &Point, k: usize) -> Result<PointMultiset> {
    let idx = k_closest_indices(set, center, k)?;
    Ok(set.subset(&idx))
}

/// Distinct coordinate values per axis, ascending.
pub fn axis_values(set: &PointMultiset) -> Vec<Vec<i64>> {
    (0..set.dim())
        .map(|axis| {
            let mut v: Vec<i64> = set.iter().map(|p| p[axis]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect()
}

/// Every grid point whose coordinates all appear in the input on the
/// matching axis (the intersections of the axis-parallel lines through the
/// input), in lexicographic order.
pub fn candidate_medians(set: &PointMultiset) -> PointMultiset {
    let axes = axis_values(set);
    let mut out = Vec::with_capacity(axes.iter().map(Vec::len).product());
    let mut cursor = vec![0usize; axes.len()];
    if axes.iter().any(Vec::is_empty) {
        return PointMultiset::empty(set.dim());
    }
    loop {
        out.push(Point::new(cursor.iter().zip(&axes).map(|(&i, vals)| vals[i]).collect()));
        let mut axis = axes.len();
        loop {
            if axis == 0 {
                return PointMultiset { points: out, dim: set.dim() };
            }
            axis -= 1;
            cursor[axis] += 1;
            if cursor[axis] < axes[axis].len() {
                break;
            }
            cursor[axis] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(pts: &[&[i64]]) -> PointMultiset {
        PointMultiset::new(pts.iter().map(|c| Point::new(c.to_vec())).collect()).unwrap()
    }

    fn brute(set: &PointMultiset) -> u64 {
        let p = set.points();
        let mut total = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                total += dist(p[i].coords(), p[j].coords());
            }
        }
        total
    }

    #[test]
    fn distances() {
        assert_eq!(l1_distance(&[0, 0].into(), &[0, 0].into()).unwrap(), 0);
        assert_eq!(l1_distance(&[0, 0].into(), &[1, 2].into()).unwrap(), 3);
        assert_eq!(l1_distance(&[1, 5, -2].into(), &[4, 5, 0].into()).unwrap(), 5);
        assert!(matches!(
            l1_distance(&[0, 0].into(), &[0, 0, 0].into()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pairwise_examples() {
        assert_eq!(pairwise_sum(&set(&[&[0, 0], &[1, 0]])), 1);
        assert_eq!(pairwise_sum(&set(&[&[0, 0], &[1, 0], &[0, 1]])), 4);
        assert_eq!(pairwise_sum(&set(&[&[3, 3]])), 0);
        let block: Vec<Point> =
            (0..3).flat_map(|x| (0..3).map(move |y| Point::from([x, y]))).collect();
        let block = PointMultiset::new(block).unwrap();
        assert_eq!(brute(&block), 72);
        assert_eq!(pairwise_sum(&block), 72);
    }

    #[test]
    fn between_examples() {
        let s = set(&[&[0, 0]]);
        let t = set(&[&[1, 0], &[0, 1]]);
        assert_eq!(pairwise_sum_between(&s, &t).unwrap(), 2);
        let st = set(&[&[0, 0], &[1, 0]]);
        assert_eq!(pairwise_sum_between(&st, &st).unwrap(), 2);
        let s = set(&[&[0, 0], &[2, 0]]);
        let t = set(&[&[1, 1]]);
        assert_eq!(pairwise_sum_between(&s, &t).unwrap(), 4);
        let t3 = set(&[&[1, 1, 1]]);
        assert!(pairwise_sum_between(&s, &t3).is_err());
    }

    #[test]
    fn medians() {
        assert_eq!(l1_median(&set(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap(), Point::from([0, 0]));
        assert_eq!(l1_median(&set(&[&[1, 5], &[3, 1], &[7, 3]])).unwrap(), Point::from([3, 3]));
        assert_eq!(l1_median(&set(&[&[0, 0], &[4, 0]])).unwrap(), Point::from([0, 0]));
        assert!(matches!(l1_median(&PointMultiset::empty(2)), Err(Error::EmptySet)));
    }

    #[test]
    fn closest() {
        let p = set(&[&[0, 0], &[1, 0], &[0, 2], &[3, 3]]);
        assert_eq!(k_closest(&p, &[0, 0].into(), 2).unwrap(), set(&[&[0, 0], &[1, 0]]));
        assert_eq!(k_closest(&p, &[0, 0].into(), 4).unwrap().sorted(), p.sorted());
        let tie = set(&[&[1, 0], &[-1, 0]]);
        assert_eq!(k_closest(&tie, &[0, 0].into(), 1).unwrap(), set(&[&[-1, 0]]));
        assert!(matches!(
            k_closest(&tie, &[0, 0].into(), 3),
            Err(Error::InsufficientProcessors { requested: 3, available: 2 })
        ));
    }

    #[test]
    fn candidates() {
        assert_eq!(
            candidate_medians(&set(&[&[0, 0], &[1, 2]])),
            set(&[&[0, 0], &[0, 2], &[1, 0], &[1, 2]])
        );
        assert_eq!(candidate_medians(&set(&[&[0, 0]])), set(&[&[0, 0]]));
        assert_eq!(candidate_medians(&set(&[&[0, 0], &[0, 1], &[0, 2]])).len(), 3);
        assert_eq!(candidate_medians(&set(&[&[0, 0, 0], &[1, 1, 1]])).len(), 8);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = PointMultiset::from_json("[[0,0],[1,2]]").unwrap();
        assert_eq!(s.to_json(), "[[0,0],[1,2]]");
        assert!(PointMultiset::from_json("[[0,0],[1,2,3]]").is_err());
        assert!(PointMultiset::from_json("[]").is_err());
    }

    fn multiset(max_dim: usize, max_len: usize) -> impl Strategy<Value = PointMultiset> {
        (1..=max_dim).prop_flat_map(move |d| {
            prop::collection::vec(prop::collection::vec(-20i64..20, d), 1..=max_len).prop_map(
                |pts| PointMultiset::new(pts.into_iter().map(Point::new).collect()).unwrap(),
            )
        })
    }

    proptest! {
        #[test]
        fn formula_matches_enumeration(s in multiset(3, 30)) {
            prop_assert_eq!(pairwise_sum(&s), brute(&s));
        }

        #[test]
        fn translation_and_scaling(s in multiset(3, 20), t in prop::collection::vec(-50i64..50, 3), c in 1i64..7) {
            let base = pairwise_sum(&s);
            let shifted = PointMultiset::new(s.iter().map(|p| p.translated(&t[..s.dim()])).collect()).unwrap();
            prop_assert_eq!(pairwise_sum(&shifted), base);
            let scaled = PointMultiset::new(s.iter().map(|p| p.scaled(c)).collect()).unwrap();
            prop_assert_eq!(pairwise_sum(&scaled), base * c as u64);
        }

        #[test]
        fn between_matches_enumeration(s in multiset(2, 10), t in multiset(2, 10)) {
            prop_assume!(s.dim() == t.dim());
            let direct: u64 = s.iter().flat_map(|a| t.iter().map(move |b| dist(a.coords(), b.coords()))).sum();
            prop_assert_eq!(pairwise_sum_between(&s, &t).unwrap(), direct);
        }

        #[test]
        fn median_is_locally_optimal(s in multiset(3, 15)) {
            let m = l1_median(&s).unwrap();
            let cost = |c: &Point| -> u64 { s.iter().map(|p| dist(p.coords(), c.coords())).sum() };
            let base = cost(&m);
            for axis in 0..s.dim() {
                for delta in [-1i64, 1] {
                    let mut c = m.clone().into_coords();
                    c[axis] += delta;
                    prop_assert!(cost(&Point::new(c)) >= base);
                }
            }
        }

        #[test]
        fn closest_is_order_independent(s in multiset(2, 15), k in 1usize..15, rot in 0usize..15) {
            prop_assume!(k <= s.len());
            let center = s.points()[0].clone();
            let a = k_closest(&s, &center, k).unwrap().sorted();
            let mut pts = s.points().to_vec();
            let r = rot % pts.len();
            pts.rotate_left(r);
            let b = k_closest(&PointMultiset::new(pts).unwrap(), &center, k).unwrap().sorted();
            prop_assert_eq!(a, b);
        }
    }
}
