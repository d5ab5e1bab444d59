//! Fillings of colored spheres by balls with no interior vertices.
//!
//! * [`fill_disk_2d`] triangulates the disk bounded by a 3-colored cycle;
//! * [`fill_ball_3d`] and [`fill_ball_nd`] fill a strictly `(n+2)`-colored
//!   `n`-sphere by an `(n+1)`-ball on the same vertices, keeping the
//!   coloring proper;
//! * [`decompose_to_moves`] orders the tetrahedra of a 3-ball filling into
//!   signed moves I and II;
//! * [`complex_from_sequence`] glues one tetrahedron per flip of a polygon
//!   flip sequence.

mod ball;
mod complex;
mod disk;
mod kcomplex;
mod moves;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::triangulation::{TriangulationError, Vertex};

pub use ball::{fill_ball_3d, fill_ball_nd, verify_ball_filling};
pub use complex::{Simplex, SimplicialComplex};
pub use disk::fill_disk_2d;
pub use kcomplex::{complex_from_sequence, FlipComplex};
pub use moves::{decompose_ball, decompose_to_moves, MoveDecomposition, MoveKind, MoveStep, SignedFace};

/// Vertex colors; any `u8` labels may be used.
pub type Coloring = BTreeMap<Vertex, u8>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FillError {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("expected a complex of dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("not a sphere: {0}")]
    NotASphere(String),
    #[error("a cycle needs at least 3 distinct vertices, got {0}")]
    DegenerateCycle(usize),
    #[error("vertex {0} has no color")]
    UncoloredVertex(Vertex),
    #[error("coloring is not proper: adjacent vertices {0} and {1} share a color")]
    NotProper(Vertex, Vertex),
    #[error("coloring uses {found} colors, a strict coloring needs exactly {expected}")]
    NotStrict { expected: usize, found: usize },
    #[error("the link of vertex {0} is not a sphere")]
    NonCycleLink(Vertex),
    #[error("no vertex choice yields a filling: {0}")]
    NoFilling(String),
    #[error("no face-connected order of the tetrahedra keeps the surface a sphere")]
    NoAdmissibleOrder,
    #[error("move replay failed: {0}")]
    InvalidReplay(String),
    #[error(transparent)]
    Sequence(#[from] TriangulationError),
}

/// Checks that every vertex of `complex` is colored, adjacent vertices
/// differ, and exactly `expected` colors occur.
pub(crate) fn check_coloring(
    complex: &SimplicialComplex,
    coloring: &Coloring,
    expected: usize,
) -> Result<(), FillError> {
    let mut used = BTreeSet::new();
    for v in complex.vertices() {
        used.insert(*coloring.get(&v).ok_or(FillError::UncoloredVertex(v))?);
    }
    for e in complex.faces(1) {
        if coloring[&e[0]] == coloring[&e[1]] {
            return Err(FillError::NotProper(e[0], e[1]));
        }
    }
    if used.len() != expected {
        return Err(FillError::NotStrict {
            expected,
            found: used.len(),
        });
    }
    Ok(())
}
