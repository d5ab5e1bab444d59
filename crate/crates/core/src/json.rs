//! JSON file formats.
//!
//! * triangulation: `{"n": 7, "triangles": [[1,2,7], [2,3,6], …]}`
//! * flip sequence: `{"n": 7, "start": [[…], …], "flips": [{"diagonal": [3,6]}, …]}`
//! * signed sequence: the flip sequence plus `"steps"`, one list of
//!   `{"triangle": [a,b,c], "sign": "+"}` per intermediate triangulation
//! * coloring: `{"colors": {"1": 0, "2": 1, …}}`
//! * complex: `{"dim": 3, "facets": [[1,2,3,4], …]}`
//! * moves: `{"seed": [...], "seed_faces": [...], "moves": [{"kind": "MoveI", …}, …]}`
//!
//! Triangles, facets and maps are always written sorted so that output is
//! byte-for-byte reproducible.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::filler::{Coloring, FillError, MoveDecomposition, SignedFace, SimplicialComplex};
use crate::flipgraph::SignedFlipSequence;
use crate::sign::Sign;
use crate::signing::{F4Element, VertexColoring};
use crate::triangulation::{Edge, FlipSequence, PolygonTriangulation, Triangle, TriangulationError, Vertex};

#[derive(Debug, Error)]
pub enum JsonError {
    // no #[source]: the message already carries serde's line and column
    #[error("JSON syntax error: {0}")]
    Syntax(serde_json::Error),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Complex(#[from] FillError),
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Syntax(e)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub n: u32,
    pub triangles: Vec<[Vertex; 3]>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DiagonalJson {
    pub diagonal: [Vertex; 2],
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FlipSequenceJson {
    pub n: u32,
    pub start: Vec<[Vertex; 3]>,
    pub flips: Vec<DiagonalJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SignedTriangleJson {
    pub triangle: [Vertex; 3],
    pub sign: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SignedSequenceJson {
    pub n: u32,
    pub start: Vec<[Vertex; 3]>,
    pub flips: Vec<DiagonalJson>,
    pub steps: Vec<Vec<SignedTriangleJson>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ColoringJson {
    pub colors: BTreeMap<Vertex, u8>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub dim: usize,
    pub facets: Vec<Vec<Vertex>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MoveJson {
    pub kind: String,
    pub tetrahedron: [Vertex; 4],
    pub removed: Vec<SignedTriangleJson>,
    pub inserted: Vec<SignedTriangleJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MovesJson {
    pub seed: [Vertex; 4],
    pub seed_faces: Vec<SignedTriangleJson>,
    pub moves: Vec<MoveJson>,
}

fn triangle_list(t: &PolygonTriangulation) -> Vec<[Vertex; 3]> {
    t.triangles().iter().map(|x| x.vertices()).collect()
}

fn parse_triangles(n: u32, list: &[[Vertex; 3]]) -> Result<PolygonTriangulation, JsonError> {
    let mut triangles = Vec::with_capacity(list.len());
    for &[a, b, c] in list {
        triangles.push(Triangle::try_new(a, b, c).ok_or(TriangulationError::DegenerateTriangle(a, b, c))?);
    }
    Ok(PolygonTriangulation::new(n, triangles)?)
}

/// Indented JSON in which arrays of scalars stay on one line, so a
/// triangle reads `[1, 2, 7]`. Ends with a newline.
pub fn render(value: &Value) -> String {
    fn scalar(v: &Value) -> bool {
        !matches!(v, Value::Array(_) | Value::Object(_))
    }
    fn go(v: &Value, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth + 1);
        match v {
            Value::Array(items) if items.iter().all(scalar) => {
                let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
                out.push('[');
                out.push_str(&parts.join(", "));
                out.push(']');
            }
            Value::Array(items) => {
                out.push_str("[\n");
                for (k, x) in items.iter().enumerate() {
                    out.push_str(&pad);
                    go(x, depth + 1, out);
                    out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(depth));
                out.push(']');
            }
            Value::Object(map) if map.is_empty() => out.push_str("{}"),
            Value::Object(map) => {
                out.push_str("{\n");
                for (k, (key, x)) in map.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&Value::String(key.clone()).to_string());
                    out.push_str(": ");
                    go(x, depth + 1, out);
                    out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(depth));
                out.push('}');
            }
            _ => out.push_str(&v.to_string()),
        }
    }
    let mut out = String::new();
    go(value, 0, &mut out);
    out.push('\n');
    out
}

fn pretty<T: Serialize>(value: &T) -> String {
    render(&serde_json::to_value(value).expect("plain data serializes"))
}

pub fn triangulation_to_json(t: &PolygonTriangulation) -> String {
    pretty(&TriangulationJson {
        n: t.n(),
        triangles: triangle_list(t),
    })
}

pub fn parse_triangulation(text: &str) -> Result<PolygonTriangulation, JsonError> {
    let raw: TriangulationJson = serde_json::from_str(text)?;
    parse_triangles(raw.n, &raw.triangles)
}

fn diagonals_json(s: &FlipSequence) -> Vec<DiagonalJson> {
    s.diagonals()
        .into_iter()
        .map(|d| DiagonalJson { diagonal: d.vertices() })
        .collect()
}

pub fn flip_sequence_to_json(s: &FlipSequence) -> String {
    pretty(&FlipSequenceJson {
        n: s.n(),
        start: triangle_list(&s.start),
        flips: diagonals_json(s),
    })
}

/// Parses a flip sequence and derives its flip records; a diagonal that is
/// not present at its step is reported with its position.
pub fn parse_flip_sequence(text: &str) -> Result<FlipSequence, JsonError> {
    let raw: FlipSequenceJson = serde_json::from_str(text)?;
    let start = parse_triangles(raw.n, &raw.start)?;
    let diagonals: Vec<Edge> = raw
        .flips
        .iter()
        .map(|f| Edge::new(f.diagonal[0], f.diagonal[1]))
        .collect();
    Ok(FlipSequence::from_diagonals(start, &diagonals)?)
}

fn signed_list<'a, I: IntoIterator<Item = (&'a Triangle, &'a Sign)>>(signs: I) -> Vec<SignedTriangleJson> {
    signs
        .into_iter()
        .map(|(t, s)| SignedTriangleJson {
            triangle: t.vertices(),
            sign: s.as_str().to_string(),
        })
        .collect()
}

pub fn signed_sequence_to_json(ss: &SignedFlipSequence) -> String {
    let base = ss.base();
    pretty(&SignedSequenceJson {
        n: base.n(),
        start: triangle_list(&base.start),
        flips: diagonals_json(base),
        steps: ss.steps().iter().map(signed_list).collect(),
    })
}

/// Parses a signed sequence; the signs are run through the signed-flip
/// invariant checker.
pub fn parse_signed_sequence(text: &str) -> Result<SignedFlipSequence, JsonError> {
    let raw: SignedSequenceJson = serde_json::from_str(text)?;
    let start = parse_triangles(raw.n, &raw.start)?;
    let diagonals: Vec<Edge> = raw
        .flips
        .iter()
        .map(|f| Edge::new(f.diagonal[0], f.diagonal[1]))
        .collect();
    let base = FlipSequence::from_diagonals(start, &diagonals)?;
    let mut steps = Vec::with_capacity(raw.steps.len());
    for step in &raw.steps {
        let mut signs = BTreeMap::new();
        for entry in step {
            let [a, b, c] = entry.triangle;
            let t = Triangle::try_new(a, b, c).ok_or(TriangulationError::DegenerateTriangle(a, b, c))?;
            let sign = Sign::parse(&entry.sign)
                .ok_or_else(|| JsonError::Invalid(format!("sign must be \"+\" or \"-\", got {:?}", entry.sign)))?;
            signs.insert(t, sign);
        }
        steps.push(signs);
    }
    SignedFlipSequence::new(base, steps).map_err(|e| JsonError::Invalid(e.to_string()))
}

pub fn coloring_to_json(c: &Coloring) -> String {
    pretty(&ColoringJson { colors: c.clone() })
}

pub fn parse_coloring(text: &str) -> Result<Coloring, JsonError> {
    let raw: ColoringJson = serde_json::from_str(text)?;
    Ok(raw.colors)
}

/// Reads a coloring whose values must be `F4` codes `0..=3`.
pub fn parse_f4_coloring(text: &str) -> Result<VertexColoring, JsonError> {
    let raw = parse_coloring(text)?;
    let mut colors = BTreeMap::new();
    for (v, code) in raw {
        let c = F4Element::new(code)
            .ok_or_else(|| JsonError::Invalid(format!("vertex {v}: color {code} is not an F4 code 0..=3")))?;
        colors.insert(v, c);
    }
    Ok(VertexColoring::new(colors))
}

pub fn complex_to_json(k: &SimplicialComplex) -> String {
    pretty(&ComplexJson {
        dim: k.dim(),
        facets: k.facets().iter().cloned().collect(),
    })
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, JsonError> {
    let raw: ComplexJson = serde_json::from_str(text)?;
    Ok(SimplicialComplex::new(raw.dim, raw.facets)?)
}

fn faces_json(faces: &[SignedFace]) -> Vec<SignedTriangleJson> {
    faces
        .iter()
        .map(|f| SignedTriangleJson {
            triangle: f.triangle,
            sign: f.sign.as_str().to_string(),
        })
        .collect()
}

pub fn moves_to_json(d: &MoveDecomposition) -> String {
    pretty(&MovesJson {
        seed: d.seed,
        seed_faces: faces_json(&d.seed_faces),
        moves: d
            .steps
            .iter()
            .map(|m| MoveJson {
                kind: m.kind.as_str().to_string(),
                tetrahedron: m.tetrahedron,
                removed: faces_json(&m.removed),
                inserted: faces_json(&m.inserted),
            })
            .collect(),
    })
}
