use std::collections::{BTreeSet, HashMap};

use super::{FillError, SimplicialComplex};
use crate::flipgraph::FlipInteractionGraph;
use crate::triangulation::{validate_sequence, FlipSequence, Triangle, Vertex};

/// One tetrahedron per flip, glued onto the evolving triangulation, with
/// the graph of face-sharing between tetrahedra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipComplex {
    tetrahedra: Vec<[Vertex; 4]>,
    adjacency: FlipInteractionGraph,
}

impl FlipComplex {
    /// `tetrahedra()[i - 1]` belongs to flip `i`.
    pub fn tetrahedra(&self) -> &[[Vertex; 4]] {
        &self.tetrahedra
    }

    pub fn adjacency(&self) -> &FlipInteractionGraph {
        &self.adjacency
    }

    /// The tetrahedra as a 3-dimensional complex. A quadrilateral flipped
    /// more than once contributes a single facet.
    pub fn complex(&self) -> SimplicialComplex {
        let facets: BTreeSet<Vec<Vertex>> = self.tetrahedra.iter().map(|t| t.to_vec()).collect();
        SimplicialComplex::new(3, facets).expect("supports are 4 distinct vertices")
    }
}

/// Builds the tetrahedron complex of `s`. Tetrahedron `j` is glued onto the
/// faces `X(j)`; it is adjacent to the tetrahedron that most recently put
/// each of those faces on the surface.
pub fn complex_from_sequence(s: &FlipSequence) -> Result<FlipComplex, FillError> {
    validate_sequence(s)?;
    let mut owner: HashMap<Triangle, usize> = HashMap::new();
    let mut edges = BTreeSet::new();
    let mut tetrahedra = Vec::with_capacity(s.len());
    for (pos, f) in s.flips.iter().enumerate() {
        let j = pos + 1;
        tetrahedra.push(f.support());
        for x in f.removed() {
            if let Some(i) = owner.remove(&x) {
                edges.insert((i, j));
            }
        }
        for y in f.inserted() {
            owner.insert(y, j);
        }
    }
    Ok(FlipComplex {
        adjacency: FlipInteractionGraph::from_edges(s.len(), edges),
        tetrahedra,
    })
}
