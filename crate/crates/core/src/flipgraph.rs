//! The flip-interaction graph of a flip sequence and the lift of unsigned
//! sequences to signed ones.
//!
//! For flips `φ(i) = (i, X(i), Y(i))` and `i < j`, the vertices `i` and `j`
//! are adjacent when `Y(i) ∩ X(j)` is non-empty and not covered by the
//! removed pairs `X(l)` of the flips strictly between them. A sequence can
//! be realised by signed flips exactly when this graph is bipartite; given a
//! 2-coloring, [`lift_to_signed`] produces the signs and
//! [`extract_coloring`] goes back.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::sign::Sign;
use crate::triangulation::{validate_sequence, FlipSequence, Triangle, TriangulationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlipGraphError {
    #[error(transparent)]
    Sequence(#[from] TriangulationError),
    #[error("coloring is not a proper 2-coloring: {0}")]
    NotAProperColoring(String),
    #[error("invalid signed sequence: {0}")]
    InvalidSignedSequence(String),
    #[error("rules R1 (flip {r1_flip}) and R2 (flip {r2_flip}) disagree on triangle {triangle} at step {step}")]
    RuleConflict {
        step: usize,
        triangle: Triangle,
        r1_flip: usize,
        r2_flip: usize,
    },
}

/// Undirected simple graph on the flip indices `1..=order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipInteractionGraph {
    order: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl FlipInteractionGraph {
    /// Builds a graph from explicit edges; pairs are normalised to `i < j`.
    ///
    /// Panics on self-loops or endpoints outside `1..=order`.
    pub fn from_edges<I>(order: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let edges = edges
            .into_iter()
            .map(|(i, j)| {
                assert!(i != j, "self-loop at {i}");
                assert!((1..=order).contains(&i) && (1..=order).contains(&j));
                (i.min(j), i.max(j))
            })
            .collect();
        FlipInteractionGraph { order, edges }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(i, j)| {
                if i == v {
                    Some(j)
                } else if j == v {
                    Some(i)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Graphviz rendering with vertices `phi1..phik`; a 2-coloring, when
    /// given, becomes the fill colour of each vertex.
    pub fn to_dot(&self, coloring: Option<&TwoColoring>) -> String {
        let mut out = String::from("graph G {\n");
        if coloring.is_some() {
            out.push_str("  node [style=filled];\n");
        }
        for v in 1..=self.order {
            match coloring {
                Some(c) => {
                    let fill = if c.color(v) == 1 { "lightblue" } else { "salmon" };
                    writeln!(out, "  phi{v} [label=\"phi{v}\", fillcolor={fill}];").unwrap();
                }
                None => writeln!(out, "  phi{v} [label=\"phi{v}\"];").unwrap(),
            }
        }
        for &(i, j) in &self.edges {
            writeln!(out, "  phi{i} -- phi{j};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Builds `G(φ)` by evaluating the adjacency rule literally for every pair.
pub fn build_flip_graph(s: &FlipSequence) -> Result<FlipInteractionGraph, FlipGraphError> {
    validate_sequence(s)?;
    let k = s.len();
    let mut edges = BTreeSet::new();
    for i in 1..=k {
        let produced = s.flip(i).inserted();
        for j in i + 1..=k {
            let shared: Vec<Triangle> = produced.iter().copied().filter(|t| s.flip(j).removes(t)).collect();
            if shared.is_empty() {
                continue;
            }
            let consumed_between: BTreeSet<Triangle> = (i + 1..j).flat_map(|l| s.flip(l).removed()).collect();
            if !shared.iter().all(|t| consumed_between.contains(t)) {
                edges.insert((i, j));
            }
        }
    }
    Ok(FlipInteractionGraph { order: k, edges })
}

/// A 2-coloring of the flip indices with colors 1 and 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoColoring {
    colors: Vec<u8>,
}

impl TwoColoring {
    /// `colors[i - 1]` is the color of flip `i`; every entry must be 1 or 2.
    pub fn new(colors: Vec<u8>) -> Option<Self> {
        colors
            .iter()
            .all(|&c| c == 1 || c == 2)
            .then_some(TwoColoring { colors })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, i: usize) -> u8 {
        self.colors[i - 1]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// The flips with color `c`, in increasing order.
    pub fn class(&self, c: u8) -> Vec<usize> {
        (1..=self.colors.len()).filter(|&i| self.color(i) == c).collect()
    }

    pub fn is_proper_for(&self, g: &FlipInteractionGraph) -> bool {
        self.colors.len() == g.order() && g.edges().iter().all(|&(i, j)| self.color(i) != self.color(j))
    }

    /// True if both colorings induce the same partition on every connected
    /// component of `g` (colors may be swapped component-wise).
    pub fn same_bipartition(&self, other: &TwoColoring, g: &FlipInteractionGraph) -> bool {
        if self.len() != g.order() || other.len() != g.order() {
            return false;
        }
        components(g).iter().all(|comp| {
            let flip = |v: usize| self.color(v) == other.color(v);
            let first = flip(comp[0]);
            comp.iter().all(|&v| flip(v) == first)
        })
    }
}

fn components(g: &FlipInteractionGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order() + 1];
    let mut out = Vec::new();
    for root in 1..=g.order() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// A closed walk of odd length; consecutive entries (cyclically) are adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCycleWitness {
    pub cycle: Vec<usize>,
}

impl OddCycleWitness {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Checks oddness, length ≥ 3 and adjacency of consecutive members.
    pub fn is_valid_for(&self, g: &FlipInteractionGraph) -> bool {
        let k = self.cycle.len();
        k >= 3 && k % 2 == 1 && (0..k).all(|i| g.has_edge(self.cycle[i], self.cycle[(i + 1) % k]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoColorOutcome {
    Colorable(TwoColoring),
    OddCycle(OddCycleWitness),
}

/// Breadth-first 2-coloring. Each component is rooted at its lowest index,
/// which gets color 1; neighbours are visited in increasing order. The first
/// edge found joining two vertices of equal color closes an odd cycle
/// through the BFS tree, which is returned instead.
pub fn two_color(g: &FlipInteractionGraph) -> TwoColorOutcome {
    let k = g.order();
    let mut color = vec![0u8; k + 1];
    let mut parent = vec![0usize; k + 1];
    let mut depth = vec![0usize; k + 1];
    for root in 1..=k {
        if color[root] != 0 {
            continue;
        }
        color[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if color[w] == 0 {
                    color[w] = 3 - color[v];
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return TwoColorOutcome::OddCycle(odd_cycle(v, w, &parent, &depth));
                }
            }
        }
    }
    TwoColorOutcome::Colorable(TwoColoring {
        colors: color[1..].to_vec(),
    })
}

fn odd_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> OddCycleWitness {
    let (mut a, mut b) = (u, w);
    let mut up = vec![a];
    let mut down = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        up.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        down.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up.push(a);
        down.push(b);
    }
    // `up` and `down` both end at the common ancestor
    down.pop();
    down.reverse();
    up.extend(down);
    OddCycleWitness { cycle: up }
}

/// Signs of the triangles of every intermediate triangulation `T(1..=k+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedFlipSequence {
    base: FlipSequence,
    steps: Vec<BTreeMap<Triangle, Sign>>,
}

impl SignedFlipSequence {
    /// Validates that every flip is a signed flip under `steps`.
    pub fn new(base: FlipSequence, steps: Vec<BTreeMap<Triangle, Sign>>) -> Result<Self, FlipGraphError> {
        check_signed_steps(&base, &steps)?;
        Ok(SignedFlipSequence { base, steps })
    }

    pub fn base(&self) -> &FlipSequence {
        &self.base
    }

    pub fn steps(&self) -> &[BTreeMap<Triangle, Sign>] {
        &self.steps
    }

    /// Signs on `T(k)` (1-based).
    pub fn step(&self, k: usize) -> &BTreeMap<Triangle, Sign> {
        &self.steps[k - 1]
    }

    /// Re-runs the invariant checker.
    pub fn check(&self) -> Result<(), FlipGraphError> {
        check_signed_steps(&self.base, &self.steps)
    }
}

/// The signed-flip invariant checker: signs are total on each `T(k)`, both
/// triangles of `X(i)` share a sign `s` at step `i`, both triangles of `Y(i)`
/// carry `-s` at step `i+1`, and every other triangle keeps its sign.
pub fn check_signed_steps(base: &FlipSequence, steps: &[BTreeMap<Triangle, Sign>]) -> Result<(), FlipGraphError> {
    let bad = |msg: String| FlipGraphError::InvalidSignedSequence(msg);
    let triangulations = validate_sequence(base)?;
    if steps.len() != triangulations.len() {
        return Err(bad(format!(
            "{} sign steps for {} triangulations",
            steps.len(),
            triangulations.len()
        )));
    }
    for (k, (t, signs)) in triangulations.iter().zip(steps).enumerate() {
        if !signs.keys().eq(t.triangles().iter()) {
            return Err(bad(format!(
                "signs at step {} do not cover exactly T({})",
                k + 1,
                k + 1
            )));
        }
    }
    for (pos, f) in base.flips.iter().enumerate() {
        let i = pos + 1;
        let (before, after) = (&steps[pos], &steps[pos + 1]);
        let [x1, x2] = f.removed();
        let s = before[&x1];
        if before[&x2] != s {
            return Err(bad(format!("flip {i}: {x1} and {x2} carry different signs")));
        }
        for y in f.inserted() {
            if after[&y] != -s {
                return Err(bad(format!("flip {i}: inserted {y} does not carry {}", -s)));
            }
        }
        for (t, sign) in before {
            if !f.removes(t) && after.get(t) != Some(sign) {
                return Err(bad(format!("flip {i}: untouched triangle {t} changed sign")));
            }
        }
    }
    Ok(())
}

/// How often each signing rule fired while lifting a sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RuleTrace {
    pub r1_only: usize,
    pub r2_only: usize,
    /// Triangles where both R1 and R2 applied (and agreed).
    pub both: usize,
    pub r3_default: usize,
}

/// Signs every `T(k)` from a proper 2-coloring of `G(φ)`.
pub fn lift_to_signed(s: &FlipSequence, c: &TwoColoring) -> Result<SignedFlipSequence, FlipGraphError> {
    lift_to_signed_traced(s, c).map(|(signed, _)| signed)
}

/// [`lift_to_signed`], also reporting which rule signed each triangle.
///
/// For `t ∈ T(k)`:
/// * R1: the last flip `i < k` with `t ∈ Y(i)` gives `+` for color 1 and `-`
///   for color 2;
/// * R2: the first flip `j ≥ k` with `t ∈ X(j)` gives `-` for color 1 and
///   `+` for color 2;
/// * R3: otherwise `+`.
///
/// When R1 and R2 both apply their signs must agree; a disagreement is
/// reported as [`FlipGraphError::RuleConflict`].
pub fn lift_to_signed_traced(
    s: &FlipSequence,
    c: &TwoColoring,
) -> Result<(SignedFlipSequence, RuleTrace), FlipGraphError> {
    let g = build_flip_graph(s)?;
    if c.len() != g.order() {
        return Err(FlipGraphError::NotAProperColoring(format!(
            "{} colors for {} flips",
            c.len(),
            g.order()
        )));
    }
    if let Some(&(i, j)) = g.edges().iter().find(|&&(i, j)| c.color(i) == c.color(j)) {
        return Err(FlipGraphError::NotAProperColoring(format!(
            "adjacent flips {i} and {j} share color {}",
            c.color(i)
        )));
    }
    let triangulations = validate_sequence(s)?;
    let k_max = s.len();
    let mut trace = RuleTrace::default();
    let mut steps = Vec::with_capacity(triangulations.len());
    for (pos, t_k) in triangulations.iter().enumerate() {
        let k = pos + 1;
        let mut signs = BTreeMap::new();
        for &t in t_k.triangles() {
            let r1 = (1..k).rev().find(|&i| s.flip(i).inserts(&t));
            let r2 = (k..=k_max).find(|&j| s.flip(j).removes(&t));
            let by_r1 = r1.map(|i| if c.color(i) == 1 { Sign::Plus } else { Sign::Minus });
            let by_r2 = r2.map(|j| if c.color(j) == 1 { Sign::Minus } else { Sign::Plus });
            let sign = match (by_r1, by_r2) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return Err(FlipGraphError::RuleConflict {
                            step: k,
                            triangle: t,
                            r1_flip: r1.unwrap(),
                            r2_flip: r2.unwrap(),
                        });
                    }
                    trace.both += 1;
                    a
                }
                (Some(a), None) => {
                    trace.r1_only += 1;
                    a
                }
                (None, Some(b)) => {
                    trace.r2_only += 1;
                    b
                }
                (None, None) => {
                    trace.r3_default += 1;
                    Sign::Plus
                }
            };
            signs.insert(t, sign);
        }
        steps.push(signs);
    }
    Ok((SignedFlipSequence::new(s.clone(), steps)?, trace))
}

/// Colors flip `i` with 1 when its inserted triangles are positive and 2
/// otherwise.
pub fn extract_coloring(ss: &SignedFlipSequence) -> Result<TwoColoring, FlipGraphError> {
    ss.check()?;
    let colors = ss
        .base
        .flips
        .iter()
        .enumerate()
        .map(|(pos, f)| match ss.steps[pos + 1][&f.inserted()[0]] {
            Sign::Plus => 1,
            Sign::Minus => 2,
        })
        .collect();
    Ok(TwoColoring { colors })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Signability {
    Signable(SignedFlipSequence),
    NotSignable(OddCycleWitness),
}

impl Signability {
    pub fn is_signable(&self) -> bool {
        matches!(self, Signability::Signable(_))
    }
}

/// Decides whether `s` lifts to a signed sequence, with a certificate
/// either way.
pub fn is_signable(s: &FlipSequence) -> Result<Signability, FlipGraphError> {
    let g = build_flip_graph(s)?;
    match two_color(&g) {
        TwoColorOutcome::Colorable(c) => Ok(Signability::Signable(lift_to_signed(s, &c)?)),
        TwoColorOutcome::OddCycle(w) => Ok(Signability::NotSignable(w)),
    }
}
