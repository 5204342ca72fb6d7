use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointMultiset};

/// Machine state: grid extents plus an occupancy mask.
///
/// Cells are stored row-major with axis 0 most significant, so cell order
/// coincides with lexicographic point order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    extents: Vec<usize>,
    occupied: Vec<bool>,
    busy: usize,
}

#[derive(Serialize, Deserialize)]
struct MeshRepr {
    extents: Vec<usize>,
    occupied: Vec<Vec<i64>>,
}

impl Mesh {
    pub fn new(extents: Vec<usize>) -> Result<Self> {
        if extents.is_empty() || extents.contains(&0) {
            return Err(Error::invalid(format!("mesh extents must be positive, got {extents:?}")));
        }
        let size = extents
            .iter()
            .try_fold(1usize, |acc, &e| acc.checked_mul(e))
            .ok_or_else(|| Error::invalid("mesh too large"))?;
        Ok(Mesh { extents, occupied: vec![false; size], busy: 0 })
    }

    pub fn with_occupied(extents: Vec<usize>, occupied: &[Point]) -> Result<Self> {
        let mut mesh = Mesh::new(extents)?;
        for p in occupied {
            mesh.occupy(p)?;
        }
        Ok(mesh)
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn size(&self) -> usize {
        self.occupied.len()
    }

    pub fn busy_count(&self) -> usize {
        self.busy
    }

    pub fn free_count(&self) -> usize {
        self.size() - self.busy
    }

    pub fn cell_index(&self, p: &Point) -> Result<usize> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: p.dim() });
        }
        let mut idx = 0usize;
        for (&c, &e) in p.coords().iter().zip(&self.extents) {
            if c < 0 || c as u64 >= e as u64 {
                return Err(Error::OutOfBounds {
                    point: p.coords().to_vec(),
                    extents: self.extents.clone(),
                });
            }
            idx = idx * e + c as usize;
        }
        Ok(idx)
    }

    pub fn cell_point(&self, mut idx: usize) -> Point {
        let mut coords = vec![0i64; self.dim()];
        for axis in (0..self.dim()).rev() {
            coords[axis] = (idx % self.extents[axis]) as i64;
            idx /= self.extents[axis];
        }
        Point::new(coords)
    }

    pub fn is_free(&self, p: &Point) -> Result<bool> {
        Ok(!self.occupied[self.cell_index(p)?])
    }

    pub fn is_cell_free(&self, idx: usize) -> bool {
        !self.occupied[idx]
    }

    /// Marks a free processor busy. Fails if it is already busy.
    pub fn occupy(&mut self, p: &Point) -> Result<()> {
        let idx = self.cell_index(p)?;
        if self.occupied[idx] {
            return Err(Error::MeshState(format!("processor {p:?} allocated twice")));
        }
        self.occupied[idx] = true;
        self.busy += 1;
        Ok(())
    }

    /// Marks a busy processor free. Fails if it is already free.
    pub fn release(&mut self, p: &Point) -> Result<()> {
        let idx = self.cell_index(p)?;
        if !self.occupied[idx] {
            return Err(Error::MeshState(format!("processor {p:?} freed while not allocated")));
        }
        self.occupied[idx] = false;
        self.busy -= 1;
        Ok(())
    }

    /// Free processors in lexicographic order.
    pub fn free_points(&self) -> PointMultiset {
        let pts = (0..self.size()).filter(|&i| !self.occupied[i]).map(|i| self.cell_point(i)).collect();
        PointMultiset::with_dim(self.dim(), pts).expect("mesh points share the mesh dimension")
    }

    pub fn occupied_points(&self) -> Vec<Point> {
        (0..self.size()).filter(|&i| self.occupied[i]).map(|i| self.cell_point(i)).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: MeshRepr = serde_json::from_str(text)?;
        let occupied: Vec<Point> = repr.occupied.into_iter().map(Point::new).collect();
        Mesh::with_occupied(repr.extents, &occupied)
    }

    pub fn to_json(&self) -> String {
        let repr = MeshRepr {
            extents: self.extents.clone(),
            occupied: self.occupied_points().into_iter().map(Point::into_coords).collect(),
        };
        serde_json::to_string(&repr).expect("mesh always serializes")
    }
}
