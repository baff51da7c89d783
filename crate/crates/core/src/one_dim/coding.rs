use std::collections::BTreeSet;

use super::{BoxRegion, BoxSystem1D, OneDimError};
use crate::cx::C64;
use crate::symbolic::{CyclicWord, GraphTag, TransitionGraph};

const BOXES: [BoxRegion; 3] = [BoxRegion::D0, BoxRegion::D1, BoxRegion::D2];

fn box_symbols(bx: &BoxSystem1D, points: &[C64]) -> Result<Vec<Vec<u8>>, OneDimError> {
    points
        .iter()
        .enumerate()
        .map(|(index, &z)| {
            let syms: Vec<u8> = (0..3u8).filter(|&k| bx.contains(BOXES[k as usize], z)).collect();
            if syms.is_empty() {
                Err(OneDimError::OutsideBoxes { index, z })
            } else {
                Ok(syms)
            }
        })
        .collect()
}

fn extend(
    g: &TransitionGraph,
    options: &[Vec<u8>],
    cyclic: bool,
) -> BTreeSet<CyclicWord> {
    let mut partial: Vec<Vec<u8>> = options[0].iter().map(|&s| vec![s]).collect();
    for opts in &options[1..] {
        partial = partial
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().expect("nonempty");
                opts.iter()
                    .filter(move |&&s| g.has_edge(last, s))
                    .map(move |&s| {
                        let mut q = p.clone();
                        q.push(s);
                        q
                    })
            })
            .collect();
    }
    partial
        .into_iter()
        .filter(|p| !cyclic || g.has_edge(*p.last().expect("nonempty"), p[0]))
        .map(|p| CyclicWord::new(p).expect("nonempty"))
        .collect()
}

/// All `𝒢`-admissible strings `s` with `p_n ∈ D_{s_n}` along a finite orbit
/// segment (consecutive pairs only).
pub fn code_orbit_g_1d(
    bx: &BoxSystem1D,
    points: &[C64],
) -> Result<BTreeSet<CyclicWord>, OneDimError> {
    if points.is_empty() {
        return Ok(BTreeSet::new());
    }
    let g = TransitionGraph::named(GraphTag::G).expect("fixed graph");
    Ok(extend(&g, &box_symbols(bx, points)?, false))
}

/// As [`code_orbit_g_1d`] for a periodic orbit: the string must also close
/// up through the edge from the last point back to the first.
pub fn code_cycle_g_1d(
    bx: &BoxSystem1D,
    points: &[C64],
) -> Result<BTreeSet<CyclicWord>, OneDimError> {
    if points.is_empty() {
        return Ok(BTreeSet::new());
    }
    let g = TransitionGraph::named(GraphTag::G).expect("fixed graph");
    Ok(extend(&g, &box_symbols(bx, points)?, true))
}
