//! Vertex 4-colorings over `F4`, the edge 3-colorings they induce, and the
//! triangle signs read off from those edge colorings.
//!
//! Colors are the elements of `F4 = {0, 1, ω, ω+1}` encoded as two bits
//! (`0b00, 0b01, 0b10, 0b11`), so addition is XOR and every element is its
//! own negative. An edge is colored with the sum of its endpoint colors; a
//! triangle is `+` when its edges, read counterclockwise, follow the cyclic
//! order `(1, ω, ω+1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Add;

use thiserror::Error;

use crate::flipgraph::{FlipGraphError, SignedFlipSequence};
use crate::sign::Sign;
use crate::triangulation::{
    validate_sequence, Edge, FlipRecord, FlipSequence, PolygonTriangulation, Triangle, TriangulationError, Vertex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigningError {
    #[error("vertex {0} has no color")]
    UncoloredVertex(Vertex),
    #[error("coloring is not proper: both ends of {0} share a color")]
    NotProper(Edge),
    #[error("edge {0} has no color")]
    UncoloredEdge(Edge),
    #[error("edges of triangle {0} are not three distinct colors")]
    TaitViolation(Triangle),
    #[error("flip {0} is blocked: its removed triangles carry opposite signs")]
    FlipBlockedAt(usize),
    #[error(transparent)]
    Sequence(#[from] TriangulationError),
    #[error(transparent)]
    Signed(#[from] FlipGraphError),
}

/// An element of the field with four elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F4Element(u8);

impl F4Element {
    pub const ZERO: F4Element = F4Element(0);
    pub const ONE: F4Element = F4Element(1);
    pub const OMEGA: F4Element = F4Element(2);
    pub const OMEGA_PLUS_ONE: F4Element = F4Element(3);

    pub const ALL: [F4Element; 4] = [Self::ZERO, Self::ONE, Self::OMEGA, Self::OMEGA_PLUS_ONE];

    pub fn new(code: u8) -> Option<F4Element> {
        (code < 4).then_some(F4Element(code))
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Successor in the cyclic order `1 → ω → ω+1 → 1` of the nonzero
    /// elements. Zero has no successor.
    pub fn cyclic_successor(self) -> Option<F4Element> {
        match self.0 {
            1 => Some(Self::OMEGA),
            2 => Some(Self::OMEGA_PLUS_ONE),
            3 => Some(Self::ONE),
            _ => None,
        }
    }
}

impl Add for F4Element {
    type Output = F4Element;

    // characteristic 2: addition of the two-bit codes is XOR
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F4Element) -> F4Element {
        F4Element(self.0 ^ rhs.0)
    }
}

impl fmt::Display for F4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w+1",
        })
    }
}

/// Sign of three edge colors met in this order while walking around a
/// triangle, or `None` unless they are the three distinct nonzero colors.
pub fn cyclic_sign(e1: F4Element, e2: F4Element, e3: F4Element) -> Option<Sign> {
    if e1.is_zero() || e2.is_zero() || e3.is_zero() || e1 == e2 || e2 == e3 || e1 == e3 {
        return None;
    }
    if e1.cyclic_successor() == Some(e2) {
        Some(Sign::Plus)
    } else {
        Some(Sign::Minus)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexColoring {
    colors: BTreeMap<Vertex, F4Element>,
}

impl VertexColoring {
    pub fn new(colors: BTreeMap<Vertex, F4Element>) -> Self {
        VertexColoring { colors }
    }

    /// Colors vertices `1, 2, …` with the given codes; panics on codes ≥ 4.
    pub fn from_codes(codes: &[u8]) -> Self {
        VertexColoring {
            colors: codes
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as Vertex + 1, F4Element::new(c).expect("code below 4")))
                .collect(),
        }
    }

    pub fn get(&self, v: Vertex) -> Option<F4Element> {
        self.colors.get(&v).copied()
    }

    pub fn colors(&self) -> &BTreeMap<Vertex, F4Element> {
        &self.colors
    }

    fn require(&self, v: Vertex) -> Result<F4Element, SigningError> {
        self.get(v).ok_or(SigningError::UncoloredVertex(v))
    }

    pub fn is_proper_on<I: IntoIterator<Item = Edge>>(&self, edges: I) -> bool {
        edges
            .into_iter()
            .all(|e| match (self.get(e.low()), self.get(e.high())) {
                (Some(a), Some(b)) => a != b,
                _ => false,
            })
    }

    /// All four colors occur.
    pub fn is_strict(&self) -> bool {
        self.colors.values().collect::<BTreeSet<_>>().len() == 4
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: BTreeMap<Edge, F4Element>,
}

impl EdgeColoring {
    pub fn new(colors: BTreeMap<Edge, F4Element>) -> Self {
        EdgeColoring { colors }
    }

    pub fn get(&self, e: Edge) -> Option<F4Element> {
        self.colors.get(&e).copied()
    }

    pub fn colors(&self) -> &BTreeMap<Edge, F4Element> {
        &self.colors
    }

    /// The three edges of `t` carry three distinct nonzero colors.
    pub fn is_tait_on(&self, t: Triangle) -> bool {
        let [a, b, c] = t.vertices();
        match (
            self.get(Edge::new(a, b)),
            self.get(Edge::new(b, c)),
            self.get(Edge::new(a, c)),
        ) {
            (Some(x), Some(y), Some(z)) => cyclic_sign(x, y, z).is_some(),
            _ => false,
        }
    }
}

pub type TriangleSigns = BTreeMap<Triangle, Sign>;

/// Colors each edge of each triangle with the sum of its endpoint colors.
pub fn edge_coloring_from_vertices<'a, I>(triangles: I, vc: &VertexColoring) -> Result<EdgeColoring, SigningError>
where
    I: IntoIterator<Item = &'a Triangle>,
{
    let mut colors = BTreeMap::new();
    for t in triangles {
        for e in t.edges() {
            let sum = vc.require(e.low())? + vc.require(e.high())?;
            if sum.is_zero() {
                return Err(SigningError::NotProper(e));
            }
            colors.insert(e, sum);
        }
    }
    Ok(EdgeColoring { colors })
}

/// Signs each triangle `(a, b, c)`, `a < b < c`, by walking `a → b → c → a`,
/// which is counterclockwise for the polygon labelling.
pub fn signs_from_edge_coloring(t: &PolygonTriangulation, ec: &EdgeColoring) -> Result<TriangleSigns, SigningError> {
    t.triangles()
        .iter()
        .map(|&tri| {
            let [a, b, c] = tri.vertices();
            oriented_sign_from_edges([a, b, c], ec).map(|s| (tri, s))
        })
        .collect()
}

fn oriented_sign_from_edges(walk: [Vertex; 3], ec: &EdgeColoring) -> Result<Sign, SigningError> {
    let [a, b, c] = walk;
    let tri = Triangle::new(a, b, c);
    let color = |e: Edge| ec.get(e).ok_or(SigningError::UncoloredEdge(e));
    let (x, y, z) = (
        color(Edge::new(a, b))?,
        color(Edge::new(b, c))?,
        color(Edge::new(c, a))?,
    );
    cyclic_sign(x, y, z).ok_or(SigningError::TaitViolation(tri))
}

/// Sign of a triangle walked in the given vertex order, computed straight
/// from the vertex colors.
pub fn oriented_triangle_sign(walk: [Vertex; 3], vc: &VertexColoring) -> Result<Sign, SigningError> {
    let [a, b, c] = walk;
    let (ca, cb, cc) = (vc.require(a)?, vc.require(b)?, vc.require(c)?);
    cyclic_sign(ca + cb, cb + cc, cc + ca).ok_or(SigningError::TaitViolation(Triangle::new(a, b, c)))
}

/// Signs of the triangles of `t` induced by the vertex coloring `vc`.
pub fn triangle_signs(t: &PolygonTriangulation, vc: &VertexColoring) -> Result<TriangleSigns, SigningError> {
    let ec = edge_coloring_from_vertices(t.triangles(), vc)?;
    signs_from_edge_coloring(t, &ec)
}

/// True iff the new diagonal of `f` joins differently colored vertices,
/// i.e. the coloring stays proper after the flip.
pub fn flip_preserves_coloring(vc: &VertexColoring, f: &FlipRecord) -> bool {
    vc.is_proper_on([f.diagonal_after()])
}

/// Signs every step of `s` by the coloring `vc`. A flip whose removed
/// triangles get opposite signs is not licensed by the coloring.
pub fn sign_sequence_from_coloring(s: &FlipSequence, vc: &VertexColoring) -> Result<SignedFlipSequence, SigningError> {
    let triangulations = validate_sequence(s)?;
    let mut steps = Vec::with_capacity(triangulations.len());
    for (pos, t) in triangulations.iter().enumerate() {
        let signs = triangle_signs(t, vc)?;
        if let Some(f) = s.flips.get(pos) {
            let [x1, x2] = f.removed();
            if signs[&x1] != signs[&x2] {
                return Err(SigningError::FlipBlockedAt(pos + 1));
            }
        }
        steps.push(signs);
    }
    Ok(SignedFlipSequence::new(s.clone(), steps)?)
}
