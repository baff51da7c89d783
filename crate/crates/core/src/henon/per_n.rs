use serde::{Deserialize, Serialize};

use super::{hov_threshold, seed_orbit_1d, solve_periodic_orbit, CyclicOrbit, HenonError, HenonParams};
use crate::continuation::{continue_orbits, ContinuationOptions, ParamPath};
use crate::cx::{c, C64};
use crate::symbolic::{all_words, CyclicWord};

/// Orbits closer than this in sup norm are the same orbit.
pub const MERGE_THRESHOLD: f64 = 1e-6;

/// A period-`N` point with the binary word it was seeded from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledOrbit {
    pub word: CyclicWord,
    pub orbit: CyclicOrbit,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PerNOptions {
    pub continuation: ContinuationOptions,
}

/// The `b = 0` anchor that [`per_n`] seeds from, and the path from it to
/// `params`.
///
/// For `|a| > 2` the path only turns on `b`. Otherwise `a` is first pushed
/// radially out to `1.1·2(|b| + 1)²` so the seeds are well separated.
pub fn seed_anchor(params: HenonParams) -> (HenonParams, ParamPath) {
    if params.a.norm() <= 2.0 {
        return radial_anchor(params, 1.1);
    }
    let anchor = HenonParams::new(params.a, C64::new(0.0, 0.0));
    if anchor == params {
        return (anchor, ParamPath::constant(anchor));
    }
    let path = ParamPath::segment(anchor, params).expect("distinct finite waypoints");
    (anchor, path)
}

/// Anchor at `b = 0` with `|a'| = scale·2(|b| + 1)²` on the ray through `a`,
/// reached by turning on `b` and then moving straight to `params`.
pub fn radial_anchor(params: HenonParams, scale: f64) -> (HenonParams, ParamPath) {
    let HenonParams { a, b } = params;
    let dir = if a.norm() > 0.0 { a / a.norm() } else { c(-1.0, 0.0) };
    let anchor_a = dir * (scale * hov_threshold(b));
    let anchor = HenonParams::new(anchor_a, C64::new(0.0, 0.0));
    let mut pts = vec![anchor, HenonParams::new(anchor_a, b), params];
    pts.dedup();
    let path = if pts.len() == 1 {
        ParamPath::constant(anchor)
    } else {
        ParamPath::new(pts, false).expect("distinct finite waypoints")
    };
    (anchor, path)
}

pub fn per_n(params: HenonParams, n: usize) -> Result<Vec<LabeledOrbit>, HenonError> {
    per_n_with(params, n, &PerNOptions::default())
}

/// All `2^N` period-`N` points (as fixed points of `f^N`), seeded from every
/// binary word at `b = 0` and continued jointly to `params`. Results are
/// sorted by seed word.
pub fn per_n_with(
    params: HenonParams,
    n: usize,
    opts: &PerNOptions,
) -> Result<Vec<LabeledOrbit>, HenonError> {
    if n == 0 {
        return Err(HenonError::ZeroPeriod);
    }
    if !params.is_finite() {
        return Err(HenonError::Continuation(format!("non-finite parameters {params}")));
    }
    let (anchor, path) = seed_anchor(params);
    let words = all_words(2, n);
    let seeds = words
        .iter()
        .map(|w| {
            let y = seed_orbit_1d(anchor.a, w)?;
            solve_periodic_orbit(anchor, n, &y)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let run = continue_orbits(&seeds, &path, &opts.continuation).map_err(|e| {
        let culprit = e
            .orbit_index()
            .and_then(|i| words.get(i))
            .map(|w| format!(" (word {w})"))
            .unwrap_or_default();
        HenonError::Continuation(format!("{e}{culprit}"))
    })?;
    Ok(words
        .into_iter()
        .zip(run.end)
        .map(|(word, orbit)| LabeledOrbit { word, orbit })
        .collect())
}
