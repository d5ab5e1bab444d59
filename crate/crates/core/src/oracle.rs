//! Brute-force signability: try every sign assignment of the start
//! triangulation and simulate the signed-flip rule along the sequence.
//!
//! Nothing here consults the flip-interaction graph, which makes this module
//! an independent check on [`crate::flipgraph::is_signable`].

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::flipgraph::{FlipGraphError, SignedFlipSequence};
use crate::sign::Sign;
use crate::triangulation::{validate_sequence, FlipSequence, Triangle, TriangulationError};

/// Largest start triangulation (in triangles) the oracle will enumerate.
pub const MAX_ORACLE_TRIANGLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Sequence(#[from] TriangulationError),
    #[error("{0} triangles exceed the oracle cap of {MAX_ORACLE_TRIANGLES}")]
    TooLarge(usize),
}

/// A sign for every triangle of one triangulation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignState(pub BTreeMap<Triangle, Sign>);

impl SignState {
    pub fn get(&self, t: &Triangle) -> Option<Sign> {
        self.0.get(t).copied()
    }
}

fn checked(s: &FlipSequence) -> Result<(), OracleError> {
    validate_sequence(s)?;
    let m = s.start.triangles().len();
    if m > MAX_ORACLE_TRIANGLES {
        return Err(OracleError::TooLarge(m));
    }
    Ok(())
}

/// The `mask`-th assignment of the start triangulation: bit `k` set means
/// the `k`-th triangle (sorted order) is negative.
fn initial_state(s: &FlipSequence, mask: u32) -> SignState {
    SignState(
        s.start
            .triangles()
            .iter()
            .enumerate()
            .map(|(k, &t)| (t, if (mask >> k) & 1 == 1 { Sign::Minus } else { Sign::Plus }))
            .collect(),
    )
}

/// One signed flip, or `None` when the removed triangles disagree.
fn step(state: &SignState, removed: [Triangle; 2], inserted: [Triangle; 2]) -> Option<SignState> {
    let s = state.get(&removed[0])?;
    if state.get(&removed[1])? != s {
        return None;
    }
    let mut next = state.0.clone();
    for t in removed {
        next.remove(&t);
    }
    for t in inserted {
        next.insert(t, -s);
    }
    Some(SignState(next))
}

/// Propagates `initial` through every flip, returning each intermediate
/// state, or `None` if some flip is not a signed flip.
pub fn replay(s: &FlipSequence, initial: &SignState) -> Option<Vec<SignState>> {
    let mut states = vec![initial.clone()];
    for f in &s.flips {
        let next = step(states.last()?, f.removed(), f.inserted())?;
        states.push(next);
    }
    Some(states)
}

/// Packages a surviving replay as a [`SignedFlipSequence`], which runs the
/// invariant checker.
pub fn to_signed_sequence(s: &FlipSequence, initial: &SignState) -> Result<Option<SignedFlipSequence>, FlipGraphError> {
    match replay(s, initial) {
        Some(states) => {
            let steps = states.into_iter().map(|st| st.0).collect();
            SignedFlipSequence::new(s.clone(), steps).map(Some)
        }
        None => Ok(None),
    }
}

/// True iff some sign assignment of the start survives every flip.
///
/// Runs forward over the set of live states, deduplicated after each flip.
pub fn oracle_signable(s: &FlipSequence) -> Result<bool, OracleError> {
    checked(s)?;
    let m = s.start.triangles().len();
    let mut live: BTreeSet<SignState> = (0..1u32 << m).map(|mask| initial_state(s, mask)).collect();
    for f in &s.flips {
        live = live
            .iter()
            .filter_map(|st| step(st, f.removed(), f.inserted()))
            .collect();
        if live.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every initial assignment that survives the whole sequence.
pub fn oracle_all_signings(s: &FlipSequence) -> Result<BTreeSet<SignState>, OracleError> {
    checked(s)?;
    let m = s.start.triangles().len();
    let survivors: Vec<SignState> = (0..1u32 << m)
        .into_par_iter()
        .map(|mask| initial_state(s, mask))
        .filter(|st| replay(s, st).is_some())
        .collect();
    Ok(survivors.into_iter().collect())
}
