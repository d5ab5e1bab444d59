use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::FillError;
use crate::triangulation::Vertex;

/// A simplex as its strictly increasing vertex list.
pub type Simplex = Vec<Vertex>;

/// A pure abstract simplicial complex given by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    dim: usize,
    facets: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    /// Sorts each facet and checks it has `dim + 1` distinct vertices.
    pub fn new<I>(dim: usize, facets: I) -> Result<Self, FillError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut set = BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            if f.len() != dim + 1 {
                return Err(FillError::InvalidComplex(format!(
                    "facet {f:?} does not have {} vertices",
                    dim + 1
                )));
            }
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(FillError::InvalidComplex(format!("facet {f:?} repeats a vertex")));
            }
            if !set.insert(f.clone()) {
                return Err(FillError::InvalidComplex(format!("facet {f:?} appears twice")));
            }
        }
        Ok(SimplicialComplex { dim, facets: set })
    }

    /// The boundary of the simplex on `vertices` (a `(k-1)`-sphere for `k`
    /// vertices).
    pub fn simplex_boundary(vertices: &[Vertex]) -> Self {
        let dim = vertices.len() - 2;
        let facets = subsets(vertices, dim + 1).into_iter().collect();
        SimplicialComplex { dim, facets }
    }

    /// The cycle graph through `cycle` in order.
    pub fn cycle(cycle: &[Vertex]) -> Result<Self, FillError> {
        let k = cycle.len();
        Self::new(1, (0..k).map(|i| vec![cycle[i], cycle[(i + 1) % k]]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.facets.iter().flatten().copied().collect()
    }

    /// All `k`-dimensional faces.
    pub fn faces(&self, k: usize) -> BTreeSet<Simplex> {
        if k > self.dim {
            return BTreeSet::new();
        }
        self.facets.iter().flat_map(|f| subsets(f, k + 1)).collect()
    }

    /// Faces of every dimension.
    pub fn all_faces(&self) -> BTreeSet<Simplex> {
        (0..=self.dim).flat_map(|k| self.faces(k)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim)
            .map(|k| {
                let count = self.faces(k).len() as i64;
                if k % 2 == 0 {
                    count
                } else {
                    -count
                }
            })
            .sum()
    }

    /// Each `(dim-1)`-face with the facets containing it.
    pub fn ridge_map(&self) -> BTreeMap<Simplex, Vec<Simplex>> {
        let mut map: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
        if self.dim == 0 {
            return map;
        }
        for f in &self.facets {
            for r in subsets(f, self.dim) {
                map.entry(r).or_default().push(f.clone());
            }
        }
        map
    }

    /// The `(dim-1)`-faces lying in exactly one facet.
    pub fn boundary(&self) -> SimplicialComplex {
        let facets = self
            .ridge_map()
            .into_iter()
            .filter(|(_, fs)| fs.len() == 1)
            .map(|(r, _)| r)
            .collect();
        SimplicialComplex {
            dim: self.dim.saturating_sub(1),
            facets,
        }
    }

    /// Facets through `v` with `v` removed.
    pub fn link(&self, v: Vertex) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| f.iter().copied().filter(|&w| w != v).collect())
            .collect();
        SimplicialComplex {
            dim: self.dim.saturating_sub(1),
            facets,
        }
    }

    /// Facets avoiding `v`.
    pub fn antistar(&self, v: Vertex) -> Vec<Simplex> {
        self.facets.iter().filter(|f| !f.contains(&v)).cloned().collect()
    }

    /// Facets are connected through shared ridges.
    pub fn is_strongly_connected(&self) -> bool {
        let Some(first) = self.facets.iter().next() else {
            return true;
        };
        let ridges = self.ridge_map();
        let mut seen = BTreeSet::from([first.clone()]);
        let mut queue = VecDeque::from([first.clone()]);
        while let Some(f) = queue.pop_front() {
            for r in subsets(&f, self.dim) {
                for g in &ridges[&r] {
                    if seen.insert(g.clone()) {
                        queue.push_back(g.clone());
                    }
                }
            }
        }
        seen.len() == self.facets.len()
    }

    /// Combinatorial sphere check: every ridge in exactly two facets, facets
    /// strongly connected, Euler characteristic `1 + (-1)^dim`, and every
    /// vertex link again a sphere. A 0-sphere is a pair of points.
    pub fn check_sphere(&self) -> Result<(), FillError> {
        let fail = |msg: String| Err(FillError::NotASphere(msg));
        if self.dim == 0 {
            if self.facets.len() != 2 {
                return fail(format!("a 0-sphere has 2 points, got {}", self.facets.len()));
            }
            return Ok(());
        }
        if self.facets.len() < self.dim + 2 {
            return fail(format!("only {} facets", self.facets.len()));
        }
        for (r, fs) in self.ridge_map() {
            if fs.len() != 2 {
                return fail(format!("face {r:?} lies in {} facets", fs.len()));
            }
        }
        if !self.is_strongly_connected() {
            return fail("facets are not connected through shared faces".into());
        }
        let chi = self.euler_characteristic();
        let expected = if self.dim.is_multiple_of(2) { 2 } else { 0 };
        if chi != expected {
            return fail(format!("Euler characteristic {chi}, expected {expected}"));
        }
        for v in self.vertices() {
            if self.link(v).check_sphere().is_err() {
                return fail(format!("link of vertex {v} is not a sphere"));
            }
        }
        Ok(())
    }

    /// For a 1-dimensional cycle: its vertices in cyclic order, starting at
    /// the lowest label and heading to its lower-labelled neighbour.
    pub fn cycle_order(&self) -> Option<Vec<Vertex>> {
        if self.dim != 1 || self.facets.len() < 3 {
            return None;
        }
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for e in &self.facets {
            adj.entry(e[0]).or_default().push(e[1]);
            adj.entry(e[1]).or_default().push(e[0]);
        }
        if adj.values().any(|ns| ns.len() != 2) {
            return None;
        }
        let (&start, ns) = adj.iter().next()?;
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = *ns.iter().min()?;
        while cur != start {
            order.push(cur);
            let ns = &adj[&cur];
            let next = if ns[0] == prev { ns[1] } else { ns[0] };
            prev = cur;
            cur = next;
        }
        (order.len() == adj.len()).then_some(order)
    }
}

/// All `size`-element sub-lists of the sorted list `items`, in lexicographic
/// order.
pub(crate) fn subsets(items: &[Vertex], size: usize) -> Vec<Simplex> {
    fn go(items: &[Vertex], size: usize, from: usize, cur: &mut Simplex, out: &mut Vec<Simplex>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn octahedron() -> SimplicialComplex {
        let mut facets = Vec::new();
        for a in [1, 6] {
            for b in [2, 5] {
                for c in [3, 4] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::new(2, facets).unwrap()
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            subsets(&[1, 2, 3, 4], 2),
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        assert_eq!(subsets(&[1, 2], 3), Vec::<Simplex>::new());
    }

    #[test]
    fn spheres_are_recognised() {
        octahedron().check_sphere().unwrap();
        SimplicialComplex::simplex_boundary(&[1, 2, 3, 4])
            .check_sphere()
            .unwrap();
        SimplicialComplex::simplex_boundary(&[1, 2, 3, 4, 5])
            .check_sphere()
            .unwrap();
        SimplicialComplex::cycle(&[1, 2, 3, 4, 5])
            .unwrap()
            .check_sphere()
            .unwrap();
        assert_eq!(octahedron().euler_characteristic(), 2);
    }

    #[test]
    fn non_spheres_are_rejected() {
        // a disk
        let disk = SimplicialComplex::new(2, vec![vec![1, 2, 3], vec![1, 3, 4]]).unwrap();
        assert!(matches!(disk.check_sphere(), Err(FillError::NotASphere(_))));
        // two tetrahedron boundaries sharing two vertices: pseudomanifold with χ = 2
        let mut facets: Vec<Simplex> = SimplicialComplex::simplex_boundary(&[1, 2, 3, 4])
            .facets()
            .iter()
            .cloned()
            .collect();
        facets.extend(
            SimplicialComplex::simplex_boundary(&[1, 2, 5, 6])
                .facets()
                .iter()
                .cloned(),
        );
        let pinched = SimplicialComplex::new(2, facets);
        // {1,2} would be in four triangles, so this is rejected either way
        assert!(pinched.unwrap().check_sphere().is_err());
    }

    #[test]
    fn boundary_and_link() {
        let ball = SimplicialComplex::new(3, vec![vec![1, 2, 3, 4], vec![2, 3, 4, 5]]).unwrap();
        assert_eq!(ball.boundary().len(), 6);
        assert_eq!(ball.euler_characteristic(), 1);
        let link = octahedron().link(1);
        assert_eq!(link.cycle_order(), Some(vec![2, 3, 5, 4]));
    }

    #[test]
    fn malformed_facets() {
        assert!(SimplicialComplex::new(2, vec![vec![1, 2]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![1, 1, 2]]).is_err());
        assert!(SimplicialComplex::new(1, vec![vec![1, 2], vec![2, 1]]).is_err());
    }
}
