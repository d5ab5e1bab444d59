//! Breadth-first search on the flip graph of an `n`-gon (the associahedron).

use std::collections::{HashMap, VecDeque};

use crate::flipgraph::{build_flip_graph, two_color, TwoColorOutcome};
use crate::triangulation::{Edge, FlipSequence, PolygonTriangulation, TriangulationError};

/// A shortest unsigned flip path from `a` to `b`.
///
/// Neighbours are expanded in lexicographic order of the flipped diagonal,
/// so the returned path is deterministic.
pub fn find_flip_path(a: &PolygonTriangulation, b: &PolygonTriangulation) -> Result<FlipSequence, TriangulationError> {
    if a.n() != b.n() {
        return Err(TriangulationError::DimensionMismatch(a.n(), b.n()));
    }
    let mut parent: HashMap<PolygonTriangulation, Option<(PolygonTriangulation, Edge)>> = HashMap::new();
    parent.insert(a.clone(), None);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(t) = queue.pop_front() {
        if &t == b {
            break;
        }
        for (d, next) in t.neighbors() {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((t.clone(), d)));
                queue.push_back(next);
            }
        }
    }
    let mut diagonals = Vec::new();
    let mut cursor = b.clone();
    while let Some((prev, d)) = parent
        .get(&cursor)
        .expect("the flip graph of a convex polygon is connected")
        .clone()
    {
        diagonals.push(d);
        cursor = prev;
    }
    diagonals.reverse();
    FlipSequence::from_diagonals(a.clone(), &diagonals)
}

/// Searches for a flip path from `a` to `b` of length at most `max_len`
/// that can be realised by signed flips.
///
/// The search runs breadth-first over signed triangulations, starting from
/// every sign assignment of `a` at once, so the first path reaching `b` is a
/// shortest signable one. `Ok(None)` only means that no such path exists
/// within `max_len` flips.
pub fn find_signable_path(
    a: &PolygonTriangulation,
    b: &PolygonTriangulation,
    max_len: usize,
) -> Result<Option<FlipSequence>, TriangulationError> {
    if a.n() != b.n() {
        return Err(TriangulationError::DimensionMismatch(a.n(), b.n()));
    }
    if a == b {
        return Ok(Some(FlipSequence::empty(a.clone())));
    }
    let m = a.triangles().len();
    assert!(m < 32, "sign masks are 32 bits wide");

    // Bit `k` of the mask is set when the k-th triangle (sorted order) is
    // negative.
    type State = (PolygonTriangulation, u32);
    let mut parent: HashMap<State, Option<(State, Edge)>> = HashMap::new();
    let mut queue: VecDeque<(State, usize)> = VecDeque::new();
    for mask in 0..(1u32 << m) {
        let s = (a.clone(), mask);
        parent.insert(s.clone(), None);
        queue.push_back((s, 0));
    }

    let mut goal = None;
    'bfs: while let Some(((t, mask), depth)) = queue.pop_front() {
        if depth == max_len {
            continue;
        }
        let order: Vec<_> = t.triangles().iter().copied().collect();
        let negative = |tri| (mask >> order.binary_search(&tri).expect("present")) & 1 == 1;
        for d in t.diagonals() {
            let (next, rec) = t.apply_flip(d).expect("diagonal is present");
            let [x1, x2] = rec.removed();
            let sign_x = negative(x1);
            if sign_x != negative(x2) {
                continue;
            }
            let next_order: Vec<_> = next.triangles().iter().copied().collect();
            let mut next_mask = 0u32;
            for (k, tri) in next_order.iter().enumerate() {
                let neg = if rec.inserts(tri) { !sign_x } else { negative(*tri) };
                if neg {
                    next_mask |= 1 << k;
                }
            }
            let state = (next, next_mask);
            if parent.contains_key(&state) {
                continue;
            }
            parent.insert(state.clone(), Some(((t.clone(), mask), d)));
            if &state.0 == b {
                goal = Some(state);
                break 'bfs;
            }
            queue.push_back((state, depth + 1));
        }
    }

    let Some(mut cursor) = goal else {
        return Ok(None);
    };
    let mut diagonals = Vec::new();
    while let Some((prev, d)) = parent.get(&cursor).expect("visited").clone() {
        diagonals.push(d);
        cursor = prev;
    }
    diagonals.reverse();
    let path = FlipSequence::from_diagonals(a.clone(), &diagonals)?;
    let graph = build_flip_graph(&path).expect("path was just validated");
    assert!(
        matches!(two_color(&graph), TwoColorOutcome::Colorable(_)),
        "a path realised by signed flips must have a bipartite interaction graph"
    );
    Ok(Some(path))
}
