//! Signed diagonal flips on convex polygon triangulations.
//!
//! The crate is organised around a handful of modules:
//!
//! * [`triangulation`]: polygon triangulations, diagonal flips, flip
//!   sequences and enumeration of all triangulations of an `n`-gon.
//! * [`search`]: shortest flip paths on the associahedron, and bounded
//!   search for paths that can be realised by signed flips.
//! * [`flipgraph`]: the flip-interaction graph of a sequence, its
//!   2-colorings, and the lift of an unsigned sequence to a signed one.
//! * [`signing`]: `F4` vertex colorings, the induced Tait edge colorings
//!   and the triangle signs they determine.
//! * [`filler`]: fillings of colored spheres by balls without interior
//!   vertices, and their decomposition into signed tetrahedron moves.
//! * [`oracle`]: a brute-force signability checker that simulates signed
//!   flips directly and never looks at the interaction graph.
//! * [`json`]: the JSON file formats used by the command-line tool.

pub mod filler;
pub mod flipgraph;
pub mod json;
pub mod oracle;
pub mod search;
pub mod sign;
pub mod signing;
pub mod triangulation;

pub use flipgraph::{
    build_flip_graph, extract_coloring, is_signable, lift_to_signed, two_color, FlipInteractionGraph, OddCycleWitness,
    Signability, SignedFlipSequence, TwoColorOutcome, TwoColoring,
};
pub use sign::Sign;
pub use triangulation::{
    enumerate_triangulations, validate_sequence, Edge, FlipRecord, FlipSequence, PolygonTriangulation, Triangle,
    TriangulationError, Vertex,
};
