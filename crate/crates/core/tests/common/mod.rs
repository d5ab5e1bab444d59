#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use signedflips::filler::{Coloring, SimplicialComplex};
use signedflips::{FlipRecord, FlipSequence, PolygonTriangulation, Triangle};

pub fn tri(v: [u32; 3]) -> Triangle {
    Triangle::new(v[0], v[1], v[2])
}

/// `φ(i) = (i, X(i), Y(i))` transcribed from the worked examples.
pub fn phi(i: usize, x: [[u32; 3]; 2], y: [[u32; 3]; 2]) -> FlipRecord {
    FlipRecord::new(i, [tri(x[0]), tri(x[1])], [tri(y[0]), tri(y[1])]).unwrap()
}

/// Start of both heptagon examples, recovered from the first flips.
pub fn heptagon_start() -> PolygonTriangulation {
    PolygonTriangulation::new(7, [[1, 2, 7], [2, 3, 6], [2, 6, 7], [3, 4, 5], [3, 5, 6]].map(tri)).unwrap()
}

pub fn example1() -> FlipSequence {
    FlipSequence {
        start: heptagon_start(),
        flips: vec![
            phi(1, [[2, 3, 6], [3, 5, 6]], [[2, 3, 5], [2, 5, 6]]),
            phi(2, [[2, 3, 5], [3, 4, 5]], [[2, 3, 4], [2, 4, 5]]),
            phi(3, [[2, 5, 6], [2, 6, 7]], [[2, 5, 7], [5, 6, 7]]),
            phi(4, [[1, 2, 7], [2, 5, 7]], [[1, 2, 5], [1, 5, 7]]),
            phi(5, [[1, 2, 5], [2, 4, 5]], [[1, 2, 4], [1, 4, 5]]),
        ],
    }
}

pub fn example2() -> FlipSequence {
    FlipSequence {
        start: heptagon_start(),
        flips: vec![
            phi(1, [[1, 2, 7], [2, 6, 7]], [[1, 2, 6], [1, 6, 7]]),
            phi(2, [[1, 2, 6], [2, 3, 6]], [[1, 2, 3], [1, 3, 6]]),
            phi(3, [[1, 3, 6], [3, 5, 6]], [[1, 3, 5], [1, 5, 6]]),
            phi(4, [[1, 3, 5], [3, 4, 5]], [[1, 3, 4], [1, 4, 5]]),
            phi(5, [[1, 2, 3], [1, 3, 4]], [[1, 2, 4], [2, 3, 4]]),
            phi(6, [[1, 6, 7], [1, 5, 6]], [[1, 5, 7], [5, 6, 7]]),
        ],
    }
}

/// Interaction graphs of the two worked examples.
pub const EXAMPLE1_EDGES: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 5), (3, 4), (4, 5)];
pub const EXAMPLE2_EDGES: [(usize, usize); 7] = [(1, 2), (1, 6), (2, 3), (2, 5), (3, 4), (3, 6), (4, 5)];

pub fn edge_set(edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    edges.iter().copied().collect()
}

pub fn random_triangulation<R: Rng>(rng: &mut R, n: u32) -> PolygonTriangulation {
    let mut t = PolygonTriangulation::fan(n).unwrap();
    for _ in 0..3 * n {
        let ds = t.diagonals();
        if let Some(&d) = ds.choose(rng) {
            t = t.apply_flip(d).unwrap().0;
        }
    }
    t
}

/// A random start followed by `len` uniformly chosen flips.
pub fn random_sequence<R: Rng>(rng: &mut R, n: u32, len: usize) -> FlipSequence {
    let start = random_triangulation(rng, n);
    let mut current = start.clone();
    let mut diagonals = Vec::new();
    for _ in 0..len {
        let ds = current.diagonals();
        let Some(&d) = ds.choose(rng) else { break };
        current = current.apply_flip(d).unwrap().0;
        diagonals.push(d);
    }
    FlipSequence::from_diagonals(start, &diagonals).unwrap()
}

/// Every flip sequence of length `<= max_len` from every triangulation of
/// the `n`-gon.
pub fn all_sequences(n: u32, max_len: usize) -> Vec<FlipSequence> {
    fn grow(
        start: &PolygonTriangulation,
        current: &PolygonTriangulation,
        path: &mut Vec<signedflips::Edge>,
        left: usize,
        out: &mut Vec<FlipSequence>,
    ) {
        out.push(FlipSequence::from_diagonals(start.clone(), path).unwrap());
        if left == 0 {
            return;
        }
        for d in current.diagonals() {
            let next = current.apply_flip(d).unwrap().0;
            path.push(d);
            grow(start, &next, path, left - 1, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for t in signedflips::enumerate_triangulations(n).unwrap() {
        grow(&t, &t, &mut Vec::new(), max_len, &mut out);
    }
    out
}

/// Catalan numbers by the convolution recurrence.
pub fn catalan(k: usize) -> u64 {
    let mut c = vec![1u64];
    for m in 1..=k {
        c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
    }
    c[k]
}

/// All proper colorings of the cycle `1..=len` by `{0,1,2}` that use all
/// three colors.
pub fn strict_cycle_colorings(len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(len as u32) {
        let mut c = Vec::with_capacity(len);
        let mut x = code;
        for _ in 0..len {
            c.push((x % 3) as u8);
            x /= 3;
        }
        let proper = (0..len).all(|i| c[i] != c[(i + 1) % len]);
        let strict = (0..3).all(|k| c.contains(&k));
        if proper && strict {
            out.push(c);
        }
    }
    out
}

/// Checks a disk filling of `cycle` directly from its triangles.
pub fn check_disk(cycle: &[u32], coloring: &Coloring, disk: &SimplicialComplex) -> Result<(), String> {
    let k = cycle.len();
    if disk.len() != k - 2 {
        return Err(format!("{} triangles for a {k}-cycle", disk.len()));
    }
    let boundary: BTreeSet<(u32, u32)> = (0..k)
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % k]);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut count: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for f in disk.facets() {
        for &v in f {
            if !cycle.contains(&v) {
                return Err(format!("new vertex {v}"));
            }
        }
        for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            if coloring[&a] == coloring[&b] {
                return Err(format!("edge {a}{b} is monochromatic"));
            }
            *count.entry((a, b)).or_default() += 1;
        }
    }
    for (e, c) in &count {
        let want = if boundary.contains(e) { 1 } else { 2 };
        if *c != want {
            return Err(format!("edge {e:?} lies in {c} triangles"));
        }
    }
    if !boundary.iter().all(|e| count.contains_key(e)) {
        return Err("a cycle edge is missing".into());
    }
    Ok(())
}

/// Checks a ball filling by counting faces: boundary triangles are exactly
/// the sphere's, interior triangles lie in two tetrahedra, tetrahedra are
/// rainbow and no vertex is new.
pub fn check_ball(sphere: &SimplicialComplex, coloring: &Coloring, ball: &SimplicialComplex) -> Result<(), String> {
    let mut count: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let verts = sphere.vertices();
    for t in ball.facets() {
        if t.len() != 4 {
            return Err(format!("facet {t:?} is not a tetrahedron"));
        }
        let colors: BTreeSet<u8> = t.iter().map(|v| coloring[v]).collect();
        if colors.len() != 4 {
            return Err(format!("tetrahedron {t:?} is not rainbow"));
        }
        if !t.iter().all(|v| verts.contains(v)) {
            return Err(format!("tetrahedron {t:?} has a new vertex"));
        }
        for skip in 0..4 {
            let face: Vec<u32> = (0..4).filter(|&i| i != skip).map(|i| t[i]).collect();
            *count.entry(face).or_default() += 1;
        }
    }
    let boundary: BTreeSet<Vec<u32>> = count.iter().filter(|&(_, &c)| c == 1).map(|(f, _)| f.clone()).collect();
    if let Some((f, c)) = count.iter().find(|&(_, &c)| c > 2) {
        return Err(format!("face {f:?} in {c} tetrahedra"));
    }
    if &boundary != sphere.facets() {
        return Err("boundary differs from the sphere".into());
    }
    Ok(())
}

/// A 2-sphere grown from the tetrahedron boundary by random moves, with a
/// strict proper 4-coloring. Move II subdivides a triangle, the new vertex
/// taking the fourth color; move I flips an edge whose opposite vertices
/// are non-adjacent and differently colored.
pub fn random_move_sphere<R: Rng>(rng: &mut R, max_vertices: u32, moves: usize) -> (SimplicialComplex, Coloring) {
    let mut faces: BTreeSet<[u32; 3]> = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]].into_iter().collect();
    let mut colors: Coloring = (1..=4).map(|v| (v, (v - 1) as u8)).collect();
    let sorted = |mut t: [u32; 3]| {
        t.sort_unstable();
        t
    };
    for _ in 0..moves {
        let list: Vec<[u32; 3]> = faces.iter().copied().collect();
        let next_vertex = colors.len() as u32 + 1;
        if next_vertex <= max_vertices && rng.gen_bool(0.5) {
            let f = *list.choose(rng).unwrap();
            let missing = (0..4u8).find(|c| f.iter().all(|v| colors[v] != *c)).unwrap();
            faces.remove(&f);
            let v = next_vertex;
            faces.extend([
                sorted([f[0], f[1], v]),
                sorted([f[0], f[2], v]),
                sorted([f[1], f[2], v]),
            ]);
            colors.insert(v, missing);
        } else {
            let f = *list.choose(rng).unwrap();
            let k = rng.gen_range(0..3);
            let (a, c) = (f[k], f[(k + 1) % 3]);
            let b = f[(k + 2) % 3];
            let other = list
                .iter()
                .find(|g| **g != f && g.contains(&a) && g.contains(&c))
                .copied()
                .unwrap();
            let d = *other.iter().find(|&&v| v != a && v != c).unwrap();
            let adjacent = list.iter().any(|g| g.contains(&b) && g.contains(&d));
            if adjacent || colors[&b] == colors[&d] {
                continue;
            }
            faces.remove(&f);
            faces.remove(&other);
            faces.insert(sorted([a, b, d]));
            faces.insert(sorted([b, c, d]));
        }
    }
    let sphere = SimplicialComplex::new(2, faces.into_iter().map(|f| f.to_vec())).unwrap();
    (sphere, colors)
}

pub fn octahedron() -> (SimplicialComplex, Coloring) {
    let mut facets = Vec::new();
    for a in [1, 6] {
        for b in [2, 5] {
            for c in [3, 4] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    let colors = [0, 1, 2, 2, 1, 3]
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as u32 + 1, c))
        .collect();
    (SimplicialComplex::new(2, facets).unwrap(), colors)
}
