//! The allocation heuristics: MM, MM+Inc, MC1x1 and HilbertBF.

mod hilbert;
mod mc;
mod mesh;
mod mm;

use std::fmt;
use std::str::FromStr;

pub use hilbert::{curve_order, enclosing_order, hilbert_bf_allocate, hilbert_index};
pub use mc::{mc1x1_allocate, mc1x1_select, ShellCost};
pub use mesh::Mesh;
pub use mm::{mm_allocate, mm_allocate_with, mm_inc_allocate, MedianMode};

use crate::error::{Error, Result};
use crate::geometry::Allocation;

/// The allocators, in the column order used by decision matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Mc1x1,
    Mm,
    MmInc,
    HilbertBf,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] =
        [Algorithm::Mc1x1, Algorithm::Mm, Algorithm::MmInc, Algorithm::HilbertBf];

    /// Display name used in reports.
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mc1x1 => "MC1x1",
            Algorithm::Mm => "MM",
            Algorithm::MmInc => "MM+Inc",
            Algorithm::HilbertBf => "HilbertBF",
        }
    }

    /// Command-line spelling.
    pub fn flag(self) -> &'static str {
        match self {
            Algorithm::Mc1x1 => "mc1x1",
            Algorithm::Mm => "mm",
            Algorithm::MmInc => "mm-inc",
            Algorithm::HilbertBf => "hilbert-bf",
        }
    }

    /// Allocates `k` free processors of `mesh`.
    pub fn allocate(self, mesh: &Mesh, k: usize) -> Result<Allocation> {
        match self {
            Algorithm::Mm => mm_allocate(&mesh.free_points(), k),
            Algorithm::MmInc => mm_inc_allocate(&mesh.free_points(), k),
            Algorithm::Mc1x1 => mc1x1_allocate(mesh, k).map(|(a, _)| a),
            Algorithm::HilbertBf => hilbert_bf_allocate(mesh, k),
        }
    }
}

impl serde::Serialize for Algorithm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.flag().eq_ignore_ascii_case(s) || a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown algorithm '{s}'")))
    }
}
