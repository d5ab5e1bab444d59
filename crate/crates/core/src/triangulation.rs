//! Triangulations of a convex polygon and diagonal flips between them.
//!
//! Vertices are labelled `1..=n` counterclockwise. A triangle is stored as a
//! strictly increasing vertex triple, so `Triangle::new(6, 2, 3)` and the
//! shorthand "236" denote the same value. Triangulations keep
//! their triangles in a sorted set, which gives every triangulation a
//! canonical form usable as a hash key.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub type Vertex = u32;

/// Largest polygon accepted by [`enumerate_triangulations`].
pub const MAX_ENUMERATION_N: u32 = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(u32),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: u32 },
    #[error("triangle ({0}, {1}, {2}) repeats a vertex")]
    DegenerateTriangle(Vertex, Vertex, Vertex),
    #[error("expected {expected} triangles, found {found}")]
    WrongTriangleCount { expected: usize, found: usize },
    #[error("edge {edge} lies in {count} triangles")]
    BadEdgeIncidence { edge: Edge, count: usize },
    #[error("diagonals {0} and {1} cross")]
    CrossingDiagonals(Edge, Edge),
    #[error("{0} is not a diagonal of the triangulation")]
    DiagonalNotPresent(Edge),
    #[error("malformed flip record: {0}")]
    MalformedFlip(String),
    #[error("invalid flip at position {index}: {reason}")]
    InvalidFlipAt { index: usize, reason: String },
    #[error("n = {0} is too large to enumerate (limit {MAX_ENUMERATION_N})")]
    TooLarge(u32),
    #[error("triangulations have different vertex counts ({0} and {1})")]
    DimensionMismatch(u32, u32),
}

/// An unordered pair of distinct vertices, stored smaller label first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn low(self) -> Vertex {
        self.0
    }

    pub fn high(self) -> Vertex {
        self.1
    }

    pub fn vertices(self) -> [Vertex; 2] {
        [self.0, self.1]
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// True when this edge is a side `{i, i+1}` (or `{1, n}`) of the `n`-gon.
    pub fn is_polygon_side(self, n: u32) -> bool {
        self.1 == self.0 + 1 || (self.0 == 1 && self.1 == n)
    }

    /// Two chords of a convex polygon cross iff their endpoints interleave.
    pub fn crosses(self, other: Edge) -> bool {
        let (a, b) = (self.0, self.1);
        let (c, d) = (other.0, other.1);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// A triangle given by three distinct vertices in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle([Vertex; 3]);

impl Triangle {
    pub fn try_new(a: Vertex, b: Vertex, c: Vertex) -> Option<Triangle> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            None
        } else {
            Some(Triangle(v))
        }
    }

    /// Panics if two of the vertices coincide.
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Triangle {
        Triangle::try_new(a, b, c).unwrap_or_else(|| panic!("degenerate triangle ({a}, {b}, {c})"))
    }

    pub fn vertices(self) -> [Vertex; 3] {
        self.0
    }

    pub fn edges(self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge(a, b), Edge(b, c), Edge(a, c)]
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn has_edge(self, e: Edge) -> bool {
        self.contains(e.0) && self.contains(e.1)
    }

    /// The vertex of this triangle not on `e`, if `e` is one of its edges.
    pub fn apex(self, e: Edge) -> Option<Vertex> {
        if !self.has_edge(e) {
            return None;
        }
        self.0.iter().copied().find(|&v| !e.contains(v))
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        if c < 10 {
            write!(f, "{a}{b}{c}")
        } else {
            write!(f, "({a},{b},{c})")
        }
    }
}

/// A triangulation of the convex `n`-gon with vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygonTriangulation {
    n: u32,
    triangles: BTreeSet<Triangle>,
}

impl PolygonTriangulation {
    /// Builds a triangulation, checking every structural invariant.
    pub fn new<I>(n: u32, triangles: I) -> Result<Self, TriangulationError>
    where
        I: IntoIterator<Item = Triangle>,
    {
        let t = PolygonTriangulation {
            n,
            triangles: triangles.into_iter().collect(),
        };
        t.check_invariants()?;
        Ok(t)
    }

    /// The fan triangulation with every diagonal incident to vertex 1.
    pub fn fan(n: u32) -> Result<Self, TriangulationError> {
        if n < 3 {
            return Err(TriangulationError::TooFewVertices(n));
        }
        Ok(PolygonTriangulation {
            n,
            triangles: (2..n).map(|i| Triangle([1, i, i + 1])).collect(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn triangles(&self) -> &BTreeSet<Triangle> {
        &self.triangles
    }

    pub fn contains(&self, t: &Triangle) -> bool {
        self.triangles.contains(t)
    }

    /// Every edge used by some triangle, with the number of triangles on it.
    pub fn edge_incidence(&self) -> BTreeMap<Edge, usize> {
        let mut counts = BTreeMap::new();
        for t in &self.triangles {
            for e in t.edges() {
                *counts.entry(e).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edge_incidence().into_keys().collect()
    }

    /// Diagonals in lexicographic order.
    pub fn diagonals(&self) -> Vec<Edge> {
        self.edge_incidence()
            .into_keys()
            .filter(|e| !e.is_polygon_side(self.n))
            .collect()
    }

    pub fn triangles_on(&self, e: Edge) -> Vec<Triangle> {
        self.triangles.iter().copied().filter(|t| t.has_edge(e)).collect()
    }

    /// Checks the four structural invariants of a polygon triangulation.
    pub fn check_invariants(&self) -> Result<(), TriangulationError> {
        let n = self.n;
        if n < 3 {
            return Err(TriangulationError::TooFewVertices(n));
        }
        for t in &self.triangles {
            for &v in &t.0 {
                if v < 1 || v > n {
                    return Err(TriangulationError::VertexOutOfRange { vertex: v, n });
                }
            }
        }
        let expected = (n - 2) as usize;
        if self.triangles.len() != expected {
            return Err(TriangulationError::WrongTriangleCount {
                expected,
                found: self.triangles.len(),
            });
        }
        let incidence = self.edge_incidence();
        for i in 1..=n {
            let side = Edge::new(i, if i == n { 1 } else { i + 1 });
            let count = incidence.get(&side).copied().unwrap_or(0);
            if count != 1 {
                return Err(TriangulationError::BadEdgeIncidence { edge: side, count });
            }
        }
        let mut diagonals = Vec::new();
        for (&e, &count) in &incidence {
            if e.is_polygon_side(n) {
                continue;
            }
            if count != 2 {
                return Err(TriangulationError::BadEdgeIncidence { edge: e, count });
            }
            diagonals.push(e);
        }
        for (i, &d) in diagonals.iter().enumerate() {
            for &e in &diagonals[i + 1..] {
                if d.crosses(e) {
                    return Err(TriangulationError::CrossingDiagonals(d, e));
                }
            }
        }
        Ok(())
    }

    /// Flips `diagonal`, returning the new triangulation and the flip record
    /// (numbered 1; see [`FlipRecord::with_index`]).
    pub fn apply_flip(&self, diagonal: Edge) -> Result<(Self, FlipRecord), TriangulationError> {
        if diagonal.is_polygon_side(self.n) {
            return Err(TriangulationError::DiagonalNotPresent(diagonal));
        }
        let pair = self.triangles_on(diagonal);
        let [t1, t2] = pair[..] else {
            return Err(TriangulationError::DiagonalNotPresent(diagonal));
        };
        let b = t1.apex(diagonal).expect("triangle contains the diagonal");
        let d = t2.apex(diagonal).expect("triangle contains the diagonal");
        let (a, c) = (diagonal.0, diagonal.1);
        let inserted = sorted_pair(Triangle::new(a, b, d), Triangle::new(c, b, d));
        let mut triangles = self.triangles.clone();
        triangles.remove(&t1);
        triangles.remove(&t2);
        triangles.extend(inserted);
        let record = FlipRecord {
            index: 1,
            removed: sorted_pair(t1, t2),
            inserted,
            diagonal_before: diagonal,
            diagonal_after: Edge::new(b, d),
        };
        Ok((PolygonTriangulation { n: self.n, triangles }, record))
    }

    /// All triangulations one flip away, in lexicographic order of the
    /// flipped diagonal.
    pub fn neighbors(&self) -> Vec<(Edge, PolygonTriangulation)> {
        self.diagonals()
            .into_iter()
            .map(|d| {
                let (next, _) = self.apply_flip(d).expect("diagonal is present");
                (d, next)
            })
            .collect()
    }
}

impl fmt::Display for PolygonTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, t) in self.triangles.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}

fn sorted_pair(a: Triangle, b: Triangle) -> [Triangle; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// One diagonal flip `(i, X(i), Y(i))`: the removed pair `X(i)` and the
/// inserted pair `Y(i)` of triangles, both supported on the same
/// quadrilateral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FlipRecord {
    index: usize,
    removed: [Triangle; 2],
    inserted: [Triangle; 2],
    diagonal_before: Edge,
    diagonal_after: Edge,
}

impl FlipRecord {
    /// Builds a record from its triangle pairs, checking that both pairs
    /// triangulate the same convex quadrilateral along crossing diagonals.
    pub fn new(index: usize, removed: [Triangle; 2], inserted: [Triangle; 2]) -> Result<Self, TriangulationError> {
        let malformed = |msg: &str| {
            TriangulationError::MalformedFlip(format!(
                "X = {{{}, {}}}, Y = {{{}, {}}}: {msg}",
                removed[0], removed[1], inserted[0], inserted[1]
            ))
        };
        let before = shared_edge(removed).ok_or_else(|| malformed("X is not an adjacent pair"))?;
        let after = shared_edge(inserted).ok_or_else(|| malformed("Y is not an adjacent pair"))?;
        let support: BTreeSet<Vertex> = removed.iter().flat_map(|t| t.0).collect();
        let support_y: BTreeSet<Vertex> = inserted.iter().flat_map(|t| t.0).collect();
        if support.len() != 4 || support != support_y {
            return Err(malformed("X and Y do not share a 4-vertex support"));
        }
        let q: Vec<Vertex> = support.into_iter().collect();
        let d1 = Edge(q[0], q[2]);
        let d2 = Edge(q[1], q[3]);
        if !((before == d1 && after == d2) || (before == d2 && after == d1)) {
            return Err(malformed(
                "the shared edges are not the two diagonals of the quadrilateral",
            ));
        }
        Ok(FlipRecord {
            index,
            removed: sorted_pair(removed[0], removed[1]),
            inserted: sorted_pair(inserted[0], inserted[1]),
            diagonal_before: before,
            diagonal_after: after,
        })
    }

    pub fn with_index(mut self, index: usize) -> Self {
        self.index = index;
        self
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// `X(i)`, sorted.
    pub fn removed(&self) -> [Triangle; 2] {
        self.removed
    }

    /// `Y(i)`, sorted.
    pub fn inserted(&self) -> [Triangle; 2] {
        self.inserted
    }

    pub fn diagonal_before(&self) -> Edge {
        self.diagonal_before
    }

    pub fn diagonal_after(&self) -> Edge {
        self.diagonal_after
    }

    /// The four quadrilateral vertices in increasing order.
    pub fn support(&self) -> [Vertex; 4] {
        let [a, b] = self.diagonal_before.vertices();
        let [c, d] = self.diagonal_after.vertices();
        let mut s = [a, b, c, d];
        s.sort_unstable();
        s
    }

    pub fn removes(&self, t: &Triangle) -> bool {
        self.removed.contains(t)
    }

    pub fn inserts(&self, t: &Triangle) -> bool {
        self.inserted.contains(t)
    }
}

fn shared_edge(pair: [Triangle; 2]) -> Option<Edge> {
    let common: Vec<Vertex> = pair[0].0.iter().copied().filter(|&v| pair[1].contains(v)).collect();
    match common[..] {
        [a, b] => Some(Edge::new(a, b)),
        _ => None,
    }
}

/// A start triangulation followed by flips `φ(1), …, φ(k)`.
///
/// The value itself is not checked on construction; [`validate_sequence`]
/// replays it and every consumer in this crate validates before use.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlipSequence {
    pub start: PolygonTriangulation,
    pub flips: Vec<FlipRecord>,
}

impl FlipSequence {
    pub fn empty(start: PolygonTriangulation) -> Self {
        FlipSequence {
            start,
            flips: Vec::new(),
        }
    }

    /// Flips the given diagonals one after another, deriving the records.
    pub fn from_diagonals(start: PolygonTriangulation, diagonals: &[Edge]) -> Result<Self, TriangulationError> {
        let mut current = start.clone();
        let mut flips = Vec::with_capacity(diagonals.len());
        for (i, &d) in diagonals.iter().enumerate() {
            let (next, record) = current.apply_flip(d).map_err(|e| TriangulationError::InvalidFlipAt {
                index: i + 1,
                reason: e.to_string(),
            })?;
            flips.push(record.with_index(i + 1));
            current = next;
        }
        Ok(FlipSequence { start, flips })
    }

    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    pub fn n(&self) -> u32 {
        self.start.n()
    }

    pub fn diagonals(&self) -> Vec<Edge> {
        self.flips.iter().map(|f| f.diagonal_before()).collect()
    }

    /// The triangulation reached after the last flip.
    pub fn end(&self) -> Result<PolygonTriangulation, TriangulationError> {
        Ok(validate_sequence(self)?.pop().expect("at least the start"))
    }

    /// The `i`-th flip (1-based).
    pub fn flip(&self, i: usize) -> &FlipRecord {
        &self.flips[i - 1]
    }
}

/// Replays `s`, returning `T(1), …, T(k+1)` with `T(1)` the start.
pub fn validate_sequence(s: &FlipSequence) -> Result<Vec<PolygonTriangulation>, TriangulationError> {
    let mut steps = Vec::with_capacity(s.flips.len() + 1);
    steps.push(s.start.clone());
    for (pos, f) in s.flips.iter().enumerate() {
        let i = pos + 1;
        let invalid = |reason: String| TriangulationError::InvalidFlipAt { index: i, reason };
        if f.index() != i {
            return Err(invalid(format!("record is numbered {}", f.index())));
        }
        let current = steps.last().expect("non-empty");
        let [x1, x2] = f.removed();
        if !current.contains(&x1) || !current.contains(&x2) {
            return Err(invalid(format!(
                "X = {{{x1}, {x2}}} is not contained in the current triangulation"
            )));
        }
        let (next, derived) = current
            .apply_flip(f.diagonal_before())
            .map_err(|e| invalid(e.to_string()))?;
        if derived.inserted() != f.inserted() {
            let [y1, y2] = f.inserted();
            return Err(invalid(format!(
                "Y = {{{y1}, {y2}}} is not the re-diagonalisation of X"
            )));
        }
        steps.push(next);
    }
    Ok(steps)
}

/// All triangulations of the convex `n`-gon.
pub fn enumerate_triangulations(n: u32) -> Result<BTreeSet<PolygonTriangulation>, TriangulationError> {
    if n < 3 {
        return Err(TriangulationError::TooFewVertices(n));
    }
    if n > MAX_ENUMERATION_N {
        return Err(TriangulationError::TooLarge(n));
    }
    let mut memo = HashMap::new();
    let all = chain_triangulations(1, n, &mut memo);
    Ok(all
        .iter()
        .map(|ts| PolygonTriangulation {
            n,
            triangles: ts.iter().copied().collect(),
        })
        .collect())
}

/// Triangulations of the sub-polygon `lo, lo+1, …, hi` (closed by the chord
/// `{lo, hi}`), as triangle lists.
fn chain_triangulations(
    lo: Vertex,
    hi: Vertex,
    memo: &mut HashMap<(Vertex, Vertex), Vec<Vec<Triangle>>>,
) -> Vec<Vec<Triangle>> {
    if hi - lo < 2 {
        return vec![Vec::new()];
    }
    if let Some(found) = memo.get(&(lo, hi)) {
        return found.clone();
    }
    let mut out = Vec::new();
    for apex in lo + 1..hi {
        let left = chain_triangulations(lo, apex, memo);
        let right = chain_triangulations(apex, hi, memo);
        for l in &left {
            for r in &right {
                let mut ts = Vec::with_capacity(l.len() + r.len() + 1);
                ts.extend_from_slice(l);
                ts.extend_from_slice(r);
                ts.push(Triangle([lo, apex, hi]));
                out.push(ts);
            }
        }
    }
    memo.insert((lo, hi), out.clone());
    out
}
