use std::collections::{BTreeMap, BTreeSet, VecDeque};

use log::debug;

use super::complex::subsets;
use super::{check_coloring, fill_disk_2d, Coloring, FillError, Simplex, SimplicialComplex};
use crate::triangulation::Vertex;

/// Upper bound on vertex attempts across one filling, so a pathological
/// input fails instead of searching forever.
const ATTEMPT_BUDGET: usize = 200_000;

/// Fills a strictly 4-colored 2-sphere by a 3-ball on the same vertices
/// whose tetrahedra are all four-colored.
pub fn fill_ball_3d(sphere: &SimplicialComplex, coloring: &Coloring) -> Result<SimplicialComplex, FillError> {
    if sphere.dim() != 2 {
        return Err(FillError::WrongDimension {
            expected: 2,
            found: sphere.dim(),
        });
    }
    fill_ball_nd(sphere, coloring)
}

/// Fills a strictly `(n+2)`-colored `n`-sphere, `n ≥ 1`, by an
/// `(n+1)`-ball with no interior vertices on which the coloring stays
/// proper.
///
/// For `n = 1` this is [`fill_disk_2d`]. Otherwise a vertex `v` whose link
/// sees all other colors is picked; if `v` is alone in its color the ball is
/// the cone from `v` over the facets avoiding it. If not, the link of `v` is
/// filled one dimension down, that filling replaces the star of `v` to give
/// a smaller sphere, the smaller sphere is filled recursively and the cone
/// from `v` over the link filling is added back.
///
/// The first vertex tried is the lowest-labelled vertex on the boundary of
/// the color region containing the lexicographically first facet. When that
/// choice leads to a link filling that reuses a face already present in the
/// sphere, the other vertices with fully colored links are tried in label
/// order.
pub fn fill_ball_nd(sphere: &SimplicialComplex, coloring: &Coloring) -> Result<SimplicialComplex, FillError> {
    let n = sphere.dim();
    if n == 0 {
        return Err(FillError::WrongDimension { expected: 1, found: 0 });
    }
    sphere.check_sphere()?;
    check_coloring(sphere, coloring, n + 2)?;
    if n == 1 {
        let cycle = sphere.cycle_order().expect("checked to be a cycle");
        return fill_disk_2d(&cycle, coloring);
    }
    let mut budget = ATTEMPT_BUDGET;
    let facets = fill_sphere(sphere, coloring, &mut budget)?;
    SimplicialComplex::new(n + 1, facets)
}

fn fill_sphere(sphere: &SimplicialComplex, coloring: &Coloring, budget: &mut usize) -> Result<Vec<Simplex>, FillError> {
    if sphere.dim() == 1 {
        let cycle = sphere
            .cycle_order()
            .ok_or_else(|| FillError::NotASphere("not a cycle".into()))?;
        return Ok(fill_disk_2d(&cycle, coloring)?.facets().iter().cloned().collect());
    }
    let mut failures = Vec::new();
    for v in candidate_vertices(sphere, coloring) {
        if *budget == 0 {
            failures.push("attempt budget exhausted".to_string());
            break;
        }
        *budget -= 1;
        match fill_from_vertex(sphere, coloring, v, budget) {
            Ok(facets) => return Ok(facets),
            Err(e) => {
                debug!("vertex {v} rejected on a {}-sphere: {e}", sphere.dim());
                failures.push(format!("vertex {v}: {e}"));
            }
        }
    }
    Err(FillError::NoFilling(failures.join("; ")))
}

fn fill_from_vertex(
    sphere: &SimplicialComplex,
    coloring: &Coloring,
    v: Vertex,
    budget: &mut usize,
) -> Result<Vec<Simplex>, FillError> {
    let cone = |facets: &[Simplex]| -> Vec<Simplex> {
        facets
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.push(v);
                g.sort_unstable();
                g
            })
            .collect()
    };
    let own = coloring[&v];
    let antistar = sphere.antistar(v);
    if sphere.vertices().iter().filter(|w| coloring[w] == own).count() == 1 {
        return Ok(cone(&antistar));
    }

    let link = sphere.link(v);
    if link.check_sphere().is_err() {
        return Err(FillError::NonCycleLink(v));
    }
    let link_fill = fill_sphere(&link, coloring, budget)?;
    let link_faces = link.all_faces();
    let sphere_faces = sphere.all_faces();
    for f in &link_fill {
        for k in 1..=f.len() {
            for face in subsets(f, k) {
                if !link_faces.contains(&face) && sphere_faces.contains(&face) {
                    return Err(FillError::NoFilling(format!(
                        "filling the link of {v} reuses the face {face:?}"
                    )));
                }
            }
        }
    }
    let mut reduced = antistar;
    reduced.extend(link_fill.iter().cloned());
    let reduced = SimplicialComplex::new(sphere.dim(), reduced)?;
    reduced.check_sphere()?;
    let mut facets = fill_sphere(&reduced, coloring, budget)?;
    facets.extend(cone(&link_fill));
    Ok(facets)
}

/// Vertices to try, best first. All of them have links that use every
/// color except their own.
fn candidate_vertices(sphere: &SimplicialComplex, coloring: &Coloring) -> Vec<Vertex> {
    let n = sphere.dim();
    let mut out = Vec::new();
    if let Some(v) = region_boundary_vertex(sphere, coloring) {
        out.push(v);
    }
    for v in sphere.vertices() {
        if out.contains(&v) {
            continue;
        }
        let seen: BTreeSet<u8> = sphere.link(v).vertices().iter().map(|w| coloring[w]).collect();
        if seen.len() == n + 1 {
            out.push(v);
        }
    }
    out
}

/// Lowest-labelled vertex on the boundary of the region of facets that
/// share the color set of the lexicographically first facet (connected
/// through ridges).
fn region_boundary_vertex(sphere: &SimplicialComplex, coloring: &Coloring) -> Option<Vertex> {
    let palette = |f: &Simplex| -> BTreeSet<u8> { f.iter().map(|v| coloring[v]).collect() };
    let seed = sphere.facets().iter().next()?;
    let colors = palette(seed);
    let ridges = sphere.ridge_map();
    let mut region = BTreeSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(f) = queue.pop_front() {
        for r in subsets(&f, sphere.dim()) {
            for g in &ridges[&r] {
                if palette(g) == colors && region.insert(g.clone()) {
                    queue.push_back(g.clone());
                }
            }
        }
    }
    let mut counts: BTreeMap<Simplex, usize> = BTreeMap::new();
    for f in &region {
        for r in subsets(f, sphere.dim()) {
            *counts.entry(r).or_insert(0) += 1;
        }
    }
    counts.into_iter().filter(|&(_, c)| c == 1).flat_map(|(r, _)| r).min()
}

/// Checks that `ball` fills `sphere`: one dimension higher, no new vertices,
/// every ridge in one or two facets, boundary equal to `sphere`, all facets
/// rainbow, strongly connected, Euler characteristic 1.
pub fn verify_ball_filling(
    sphere: &SimplicialComplex,
    ball: &SimplicialComplex,
    coloring: &Coloring,
) -> Result<(), String> {
    if ball.dim() != sphere.dim() + 1 {
        return Err(format!("ball has dimension {}, sphere {}", ball.dim(), sphere.dim()));
    }
    if !ball.vertices().is_subset(&sphere.vertices()) {
        return Err("ball has vertices outside the sphere".into());
    }
    if let Some((r, fs)) = ball.ridge_map().into_iter().find(|(_, fs)| fs.len() > 2) {
        return Err(format!("face {r:?} lies in {} facets", fs.len()));
    }
    if &ball.boundary() != sphere {
        return Err("boundary differs from the sphere".into());
    }
    for f in ball.facets() {
        let colors: BTreeSet<u8> = f.iter().map(|v| coloring[v]).collect();
        if colors.len() != f.len() {
            return Err(format!("facet {f:?} is not rainbow"));
        }
    }
    if !ball.is_strongly_connected() {
        return Err("ball is not connected through faces".into());
    }
    let chi = ball.euler_characteristic();
    if chi != 1 {
        return Err(format!("Euler characteristic {chi}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> SimplicialComplex {
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

    fn colors(cs: &[u8]) -> Coloring {
        cs.iter().enumerate().map(|(i, &c)| (i as Vertex + 1, c)).collect()
    }

    #[test]
    fn tetrahedron_boundary_is_coned() {
        let s = SimplicialComplex::simplex_boundary(&[1, 2, 3, 4]);
        let b = fill_ball_3d(&s, &colors(&[0, 1, 2, 3])).unwrap();
        assert_eq!(b.facets().iter().cloned().collect::<Vec<_>>(), vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn octahedron_gives_four_tetrahedra() {
        let s = octahedron();
        let c = colors(&[0, 1, 2, 2, 1, 3]);
        let b = fill_ball_3d(&s, &c).unwrap();
        verify_ball_filling(&s, &b, &c).unwrap();
        let expected: BTreeSet<Simplex> = [vec![1, 2, 3, 6], vec![1, 2, 4, 6], vec![1, 3, 5, 6], vec![1, 4, 5, 6]]
            .into_iter()
            .collect();
        assert_eq!(b.facets(), &expected);
    }

    #[test]
    fn non_strict_coloring() {
        let s = octahedron();
        // antipodal pairs share colors: a proper 3-coloring
        let c = colors(&[0, 1, 2, 2, 1, 0]);
        assert_eq!(
            fill_ball_3d(&s, &c),
            Err(FillError::NotStrict { expected: 4, found: 3 })
        );
    }

    #[test]
    fn improper_coloring() {
        let s = octahedron();
        let c = colors(&[0, 0, 2, 2, 1, 3]);
        assert_eq!(fill_ball_3d(&s, &c), Err(FillError::NotProper(1, 2)));
    }

    #[test]
    fn wrong_dimension() {
        let s = SimplicialComplex::cycle(&[1, 2, 3]).unwrap();
        assert!(matches!(
            fill_ball_3d(&s, &colors(&[0, 1, 2])),
            Err(FillError::WrongDimension { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn nd_delegates_in_low_dimensions() {
        let cycle = SimplicialComplex::cycle(&[1, 2, 3, 4, 5, 6]).unwrap();
        let c = colors(&[0, 1, 2, 0, 1, 2]);
        assert_eq!(
            fill_ball_nd(&cycle, &c).unwrap(),
            fill_disk_2d(&[1, 2, 3, 4, 5, 6], &c).unwrap()
        );
        let oct = octahedron();
        let c = colors(&[0, 1, 2, 2, 1, 3]);
        assert_eq!(fill_ball_nd(&oct, &c).unwrap(), fill_ball_3d(&oct, &c).unwrap());
    }

    #[test]
    fn four_simplex_boundary() {
        let s = SimplicialComplex::simplex_boundary(&[1, 2, 3, 4, 5]);
        let c = colors(&[0, 1, 2, 3, 4]);
        let b = fill_ball_nd(&s, &c).unwrap();
        assert_eq!(
            b.facets().iter().cloned().collect::<Vec<_>>(),
            vec![vec![1, 2, 3, 4, 5]]
        );
        verify_ball_filling(&s, &b, &c).unwrap();
    }

    #[test]
    fn non_sphere_is_rejected() {
        let disk = SimplicialComplex::new(2, vec![vec![1, 2, 3], vec![1, 3, 4]]).unwrap();
        assert!(matches!(
            fill_ball_3d(&disk, &colors(&[0, 1, 2, 3])),
            Err(FillError::NotASphere(_))
        ));
    }
}
