use std::collections::BTreeSet;

use super::{Coloring, FillError, SimplicialComplex};
use crate::triangulation::Vertex;

/// Triangulates the disk bounded by `cycle` without adding vertices, so that
/// the strict proper 3-coloring of the cycle stays proper on every new edge.
///
/// Repeatedly takes the first three consecutive vertices `v1, v2, v3` with
/// distinct colors, scanning from the lowest label. If `v2` is the only
/// vertex of its color the remaining polygon is fanned from `v2`; otherwise
/// the ear `v1 v2 v3` is cut off and the scan restarts on the shorter cycle.
pub fn fill_disk_2d(cycle: &[Vertex], coloring: &Coloring) -> Result<SimplicialComplex, FillError> {
    let distinct: BTreeSet<Vertex> = cycle.iter().copied().collect();
    if cycle.len() < 3 || distinct.len() != cycle.len() {
        return Err(FillError::DegenerateCycle(distinct.len()));
    }
    let color = |v: Vertex| coloring.get(&v).copied().ok_or(FillError::UncoloredVertex(v));
    let k = cycle.len();
    for i in 0..k {
        let (a, b) = (cycle[i], cycle[(i + 1) % k]);
        if color(a)? == color(b)? {
            return Err(FillError::NotProper(a.min(b), a.max(b)));
        }
    }
    let used: BTreeSet<u8> = cycle.iter().map(|&v| color(v)).collect::<Result<_, _>>()?;
    if used.len() != 3 {
        return Err(FillError::NotStrict {
            expected: 3,
            found: used.len(),
        });
    }

    let mut ring = cycle.to_vec();
    let mut facets = Vec::with_capacity(k - 2);
    loop {
        let len = ring.len();
        let start = (0..len).min_by_key(|&i| ring[i]).expect("non-empty");
        let at = |i: usize| ring[i % len];
        let i = (start..start + len)
            .find(|&i| {
                let (c1, c2, c3) = (coloring[&at(i)], coloring[&at(i + 1)], coloring[&at(i + 2)]);
                c1 != c2 && c2 != c3 && c1 != c3
            })
            .expect("a properly 3-colored cycle using all three colors has a rainbow path");
        let (v1, v2, v3) = (at(i), at(i + 1), at(i + 2));
        let c2 = coloring[&v2];
        if ring.iter().filter(|&&w| coloring[&w] == c2).count() == 1 {
            for j in 0..len {
                let (a, b) = (at(j), at(j + 1));
                if a != v2 && b != v2 {
                    facets.push(vec![v2, a, b]);
                }
            }
            break;
        }
        facets.push(vec![v1, v2, v3]);
        ring.remove((i + 1) % len);
    }
    SimplicialComplex::new(2, facets)
}
