use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use super::{fill_ball_3d, Coloring, FillError, SimplicialComplex};
use crate::sign::Sign;
use crate::signing::{oriented_triangle_sign, F4Element, VertexColoring};
use crate::triangulation::Vertex;

/// How a tetrahedron is glued onto the current surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    /// Shares two faces: a signed diagonal flip on the surface.
    MoveI,
    /// Shares one face: the face is divided into three around a new vertex.
    MoveII,
    /// Shares three faces: a degree-3 vertex and its star are replaced by a
    /// single face.
    MoveIIInverse,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::MoveI => "MoveI",
            MoveKind::MoveII => "MoveII",
            MoveKind::MoveIIInverse => "MoveIIInverse",
        }
    }

    fn from_shared(shared: usize) -> Option<MoveKind> {
        match shared {
            1 => Some(MoveKind::MoveII),
            2 => Some(MoveKind::MoveI),
            3 => Some(MoveKind::MoveIIInverse),
            _ => None,
        }
    }
}

/// A surface triangle with the sign its orientation and coloring give it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedFace {
    pub triangle: [Vertex; 3],
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveStep {
    pub kind: MoveKind,
    pub tetrahedron: [Vertex; 4],
    pub removed: Vec<SignedFace>,
    pub inserted: Vec<SignedFace>,
}

/// A seed tetrahedron and the moves that grow its boundary into a sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveDecomposition {
    pub seed: [Vertex; 4],
    pub seed_faces: Vec<SignedFace>,
    pub steps: Vec<MoveStep>,
}

impl MoveDecomposition {
    pub fn count(&self, kind: MoveKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }

    /// Replays the moves from the seed boundary, returning every surface
    /// along the way. Each move must remove faces present on the surface,
    /// insert fresh ones, match its kind, respect the sign rule (removed
    /// faces share a sign, inserted faces carry the opposite one) and leave
    /// a 2-sphere behind.
    pub fn replay(&self) -> Result<Vec<BTreeSet<[Vertex; 3]>>, FillError> {
        let bad = |msg: String| Err(FillError::InvalidReplay(msg));
        let faces_of = |t: [Vertex; 4]| -> BTreeSet<[Vertex; 3]> { (0..4).map(|i| drop_index(t, i)).collect() };
        let mut surface: BTreeSet<[Vertex; 3]> = self.seed_faces.iter().map(|f| f.triangle).collect();
        if surface != faces_of(self.seed) {
            return bad("seed faces are not the seed boundary".into());
        }
        if self.seed_faces.iter().any(|f| f.sign != self.seed_faces[0].sign) {
            return bad("seed faces carry different signs".into());
        }
        let mut surfaces = vec![surface.clone()];
        for (pos, step) in self.steps.iter().enumerate() {
            let n = pos + 1;
            let removed: BTreeSet<_> = step.removed.iter().map(|f| f.triangle).collect();
            let inserted: BTreeSet<_> = step.inserted.iter().map(|f| f.triangle).collect();
            if MoveKind::from_shared(removed.len()) != Some(step.kind) || removed.len() + inserted.len() != 4 {
                return bad(format!("move {n}: face counts do not match {}", step.kind.as_str()));
            }
            let all: BTreeSet<_> = removed.union(&inserted).copied().collect();
            if all != faces_of(step.tetrahedron) {
                return bad(format!("move {n}: faces are not those of the tetrahedron"));
            }
            if !removed.is_subset(&surface) || !inserted.is_disjoint(&surface) {
                return bad(format!("move {n}: does not glue onto the current surface"));
            }
            let s = step.removed[0].sign;
            if step.removed.iter().any(|f| f.sign != s) || step.inserted.iter().any(|f| f.sign != -s) {
                return bad(format!("move {n}: sign rule violated"));
            }
            surface = surface.difference(&removed).copied().collect();
            surface.extend(inserted);
            if let Err(e) = as_complex(&surface).check_sphere() {
                return bad(format!("move {n}: {e}"));
            }
            surfaces.push(surface.clone());
        }
        Ok(surfaces)
    }
}

fn drop_index(t: [Vertex; 4], i: usize) -> [Vertex; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for (j, &v) in t.iter().enumerate() {
        if j != i {
            out[k] = v;
            k += 1;
        }
    }
    out
}

fn as_complex(surface: &BTreeSet<[Vertex; 3]>) -> SimplicialComplex {
    SimplicialComplex::new(2, surface.iter().map(|f| f.to_vec())).expect("faces are distinct triangles")
}

/// Fills the sphere with [`fill_ball_3d`] and decomposes the filling into
/// moves.
pub fn decompose_to_moves(sphere: &SimplicialComplex, coloring: &Coloring) -> Result<MoveDecomposition, FillError> {
    let ball = fill_ball_3d(sphere, coloring)?;
    decompose_ball(&ball, coloring)
}

/// Orders the tetrahedra of a 3-ball so that, starting from a seed, each
/// one is glued to the current boundary surface along one, two or three
/// faces and the surface stays a 2-sphere. Seeds and candidates are tried in
/// lexicographic order with backtracking.
pub fn decompose_ball(ball: &SimplicialComplex, coloring: &Coloring) -> Result<MoveDecomposition, FillError> {
    if ball.dim() != 3 {
        return Err(FillError::WrongDimension {
            expected: 3,
            found: ball.dim(),
        });
    }
    let tets: Vec<[Vertex; 4]> = ball.facets().iter().map(|f| [f[0], f[1], f[2], f[3]]).collect();
    if tets.is_empty() {
        return Err(FillError::InvalidComplex("empty ball".into()));
    }
    let orientation = orient(&tets)?;
    let vc = f4_coloring(ball, coloring)?;

    let mut order = None;
    for seed in 0..tets.len() {
        let mut search = OrderSearch {
            tets: &tets,
            used: vec![false; tets.len()],
            order: vec![seed],
            surface: (0..4).map(|i| drop_index(tets[seed], i)).collect(),
            dead: HashSet::new(),
        };
        search.used[seed] = true;
        if search.extend() {
            order = Some(search.order);
            break;
        }
    }
    let order = order.ok_or(FillError::NoAdmissibleOrder)?;

    // owner: which tetrahedron's orientation a surface face currently carries
    let signed = |tet: usize, face_pos: usize| -> Result<SignedFace, FillError> {
        let [a, b, c] = drop_index(tets[tet], face_pos);
        let positive = face_pos.is_multiple_of(2) == orientation[tet];
        let walk = if positive { [a, b, c] } else { [a, c, b] };
        let sign = oriented_triangle_sign(walk, &vc)
            .map_err(|e| FillError::InvalidComplex(format!("tetrahedron {:?}: {e}", tets[tet])))?;
        Ok(SignedFace {
            triangle: [a, b, c],
            sign,
        })
    };
    let seed = order[0];
    let seed_faces = (0..4).map(|i| signed(seed, i)).collect::<Result<Vec<_>, _>>()?;
    let mut owner: BTreeMap<[Vertex; 3], (usize, usize)> =
        (0..4).map(|i| (drop_index(tets[seed], i), (seed, i))).collect();
    let mut steps = Vec::with_capacity(order.len() - 1);
    for &t in &order[1..] {
        let mut removed = Vec::new();
        let mut inserted = Vec::new();
        for i in 0..4 {
            let face = drop_index(tets[t], i);
            if let Some((prev, prev_pos)) = owner.remove(&face) {
                removed.push(signed(prev, prev_pos)?);
            } else {
                inserted.push(signed(t, i)?);
                owner.insert(face, (t, i));
            }
        }
        let kind = MoveKind::from_shared(removed.len()).expect("order search admits 1-3 shared faces");
        steps.push(MoveStep {
            kind,
            tetrahedron: tets[t],
            removed,
            inserted,
        });
    }
    Ok(MoveDecomposition {
        seed: tets[seed],
        seed_faces,
        steps,
    })
}

/// Maps the (at most four) colors in use onto `F4` in increasing order.
fn f4_coloring(ball: &SimplicialComplex, coloring: &Coloring) -> Result<VertexColoring, FillError> {
    let mut palette = BTreeSet::new();
    for v in ball.vertices() {
        palette.insert(*coloring.get(&v).ok_or(FillError::UncoloredVertex(v))?);
    }
    if palette.len() > 4 {
        return Err(FillError::NotStrict {
            expected: 4,
            found: palette.len(),
        });
    }
    let rank: BTreeMap<u8, F4Element> = palette.into_iter().zip(F4Element::ALL).collect();
    Ok(VertexColoring::new(
        ball.vertices().into_iter().map(|v| (v, rank[&coloring[&v]])).collect(),
    ))
}

/// Consistent orientation of the tetrahedra: `true` means the increasing
/// vertex order is positive. Dropping vertex `i` from a positive
/// tetrahedron induces orientation `(-1)^i` on that face; neighbours must
/// induce opposite orientations on a shared face.
fn orient(tets: &[[Vertex; 4]]) -> Result<Vec<bool>, FillError> {
    let mut by_face: BTreeMap<[Vertex; 3], Vec<(usize, usize)>> = BTreeMap::new();
    for (t, &tet) in tets.iter().enumerate() {
        for i in 0..4 {
            by_face.entry(drop_index(tet, i)).or_default().push((t, i));
        }
    }
    let mut orientation: Vec<Option<bool>> = vec![None; tets.len()];
    orientation[0] = Some(true);
    let mut queue = VecDeque::from([0]);
    while let Some(t) = queue.pop_front() {
        let own = orientation[t].expect("set before queueing");
        for i in 0..4 {
            for &(u, j) in &by_face[&drop_index(tets[t], i)] {
                if u == t {
                    continue;
                }
                // induced(t, i) = -induced(u, j)
                let want = own ^ ((i + j) % 2 == 1) ^ true;
                match orientation[u] {
                    None => {
                        orientation[u] = Some(want);
                        queue.push_back(u);
                    }
                    Some(o) if o != want => {
                        return Err(FillError::InvalidComplex("the complex is not orientable".into()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    orientation
        .into_iter()
        .map(|o| o.ok_or_else(|| FillError::InvalidComplex("the complex is not connected".into())))
        .collect()
}

struct OrderSearch<'a> {
    tets: &'a [[Vertex; 4]],
    used: Vec<bool>,
    order: Vec<usize>,
    surface: BTreeSet<[Vertex; 3]>,
    dead: HashSet<Vec<bool>>,
}

impl OrderSearch<'_> {
    fn extend(&mut self) -> bool {
        if self.order.len() == self.tets.len() {
            return true;
        }
        if self.dead.contains(&self.used) {
            return false;
        }
        for t in 0..self.tets.len() {
            if self.used[t] {
                continue;
            }
            let faces: Vec<[Vertex; 3]> = (0..4).map(|i| drop_index(self.tets[t], i)).collect();
            let shared = faces.iter().filter(|f| self.surface.contains(*f)).count();
            if MoveKind::from_shared(shared).is_none() {
                continue;
            }
            let before = self.surface.clone();
            for f in &faces {
                if !self.surface.remove(f) {
                    self.surface.insert(*f);
                }
            }
            if as_complex(&self.surface).check_sphere().is_ok() {
                self.used[t] = true;
                self.order.push(t);
                if self.extend() {
                    return true;
                }
                self.order.pop();
                self.used[t] = false;
            }
            self.surface = before;
        }
        self.dead.insert(self.used.clone());
        false
    }
}
