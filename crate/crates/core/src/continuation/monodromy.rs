use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    continue_orbits, match_automorphism, ContinuationError, ContinuationOptions, ParamPath,
    DEFAULT_GENERATOR_BUDGET,
};
use crate::cx::{sup_dist, sup_norm};
use crate::henon::{
    code_orbit_g_in, filtration_radius, per_n_with, region_member_2d, CyclicOrbit, HenonParams,
    LabeledOrbit, PerNOptions, Region2D,
};
use crate::one_dim::BoxSystem1D;
use crate::scanner::{classify_parameter, classify_real_type, ClassifierOptions, RealType, Verdict};
use crate::symbolic::{CodePermutation, CyclicWord};

/// How a monodromy computation ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonodromyStatus {
    Ok,
    Collision,
    LeftHorseshoeEvidence,
}

impl MonodromyStatus {
    /// Status reported for a failed run.
    pub fn from_error(e: &ContinuationError) -> Self {
        match e {
            ContinuationError::Collision { .. } => Self::Collision,
            _ => Self::LeftHorseshoeEvidence,
        }
    }
}

/// Whether the horseshoe hypothesis along the loop is guaranteed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonodromyGrade {
    /// Every waypoint satisfies the HOV inequality.
    Hov,
    Evidence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitTrace {
    pub word: CyclicWord,
    pub landing: CyclicWord,
    /// Smallest hyperbolicity margin along the loop.
    pub min_margin: f64,
    /// Sup-norm distance from the continued orbit to the orbit it landed on.
    pub landing_distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromyResult {
    pub base: HenonParams,
    pub n: usize,
    /// Start code to landing code.
    pub permutation: CodePermutation,
    pub automorphism: Option<String>,
    pub traces: Vec<OrbitTrace>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub status: MonodromyStatus,
    pub grade: MonodromyGrade,
}

pub fn monodromy(
    base: HenonParams,
    path: &ParamPath,
    n: usize,
) -> Result<MonodromyResult, ContinuationError> {
    monodromy_with(base, path, n, &ContinuationOptions::default())
}

/// Continue every period-`N` point around a closed loop at a real HOV
/// basepoint with `a < 0`, and read off where each one lands.
pub fn monodromy_with(
    base: HenonParams,
    path: &ParamPath,
    n: usize,
    opts: &ContinuationOptions,
) -> Result<MonodromyResult, ContinuationError> {
    if !base.is_real() || base.a.re >= 0.0 || !region_member_2d(Region2D::Hov, base) {
        return Err(ContinuationError::Precondition(format!(
            "basepoint {base} must be real, in HOV, with a < 0"
        )));
    }
    check_loop(base, path)?;
    let orbits = per_n_with(base, n, &PerNOptions { continuation: *opts })?;
    monodromy_from(&orbits, path, opts)
}

fn check_loop(base: HenonParams, path: &ParamPath) -> Result<(), ContinuationError> {
    if !path.is_closed() {
        return Err(ContinuationError::BadPath("loop is not closed".into()));
    }
    if path.start().distance(&base) > 1e-12 {
        return Err(ContinuationError::BadPath(format!(
            "loop starts at {}, not at the basepoint {base}",
            path.start()
        )));
    }
    Ok(())
}

/// Monodromy of labeled period-`N` points solved at the start of `path`.
pub fn monodromy_from(
    orbits: &[LabeledOrbit],
    path: &ParamPath,
    opts: &ContinuationOptions,
) -> Result<MonodromyResult, ContinuationError> {
    if !path.is_closed() {
        return Err(ContinuationError::BadPath("loop is not closed".into()));
    }
    let n = orbits.first().map_or(0, |o| o.orbit.period());
    let start: Vec<CyclicOrbit> = orbits.iter().map(|o| o.orbit.clone()).collect();
    let run = continue_orbits(&start, path, opts)?;
    let (permutation, traces) = land(orbits, &run.end, &run.min_margin)?;
    let grade = if path
        .waypoints()
        .iter()
        .all(|p| region_member_2d(Region2D::Hov, *p))
    {
        MonodromyGrade::Hov
    } else {
        MonodromyGrade::Evidence
    };
    Ok(MonodromyResult {
        base: path.start(),
        n,
        automorphism: match_automorphism(&permutation, DEFAULT_GENERATOR_BUDGET),
        permutation,
        traces,
        accepted_steps: run.accepted,
        rejected_steps: run.rejected,
        status: MonodromyStatus::Ok,
        grade,
    })
}

/// Match each continued orbit to the nearest starting orbit, refusing
/// matches whose runner-up is within a factor of two.
fn land(
    start: &[LabeledOrbit],
    end: &[CyclicOrbit],
    min_margin: &[f64],
) -> Result<(CodePermutation, Vec<OrbitTrace>), ContinuationError> {
    let n = start.first().map_or(0, |o| o.orbit.period());
    let mut traces = Vec::with_capacity(start.len());
    for (i, e) in end.iter().enumerate() {
        let mut dists: Vec<(f64, usize)> = start
            .iter()
            .enumerate()
            .map(|(j, s)| (sup_dist(&e.y, &s.orbit.y), j))
            .collect();
        dists.sort_by(|x, y| x.0.total_cmp(&y.0));
        let (nearest, j) = dists[0];
        let second = dists.get(1).map_or(f64::INFINITY, |d| d.0);
        if nearest > 1e-6 * (1.0 + sup_norm(&e.y)) {
            return Err(ContinuationError::NotBijective(n));
        }
        if second < 2.0 * nearest {
            return Err(ContinuationError::LandingAmbiguous {
                index: i,
                nearest,
                second,
            });
        }
        traces.push(OrbitTrace {
            word: start[i].word.clone(),
            landing: start[j].word.clone(),
            min_margin: min_margin[i],
            landing_distance: nearest,
        });
    }
    let permutation = CodePermutation::from_pairs(
        traces.iter().map(|t| (t.word.clone(), t.landing.clone())),
    )
    .map_err(|_| ContinuationError::NotBijective(n))?;
    Ok((permutation, traces))
}

/// `γ` followed by its conjugate traversed backwards.
pub fn hat_loop(path: &ParamPath) -> Result<ParamPath, ContinuationError> {
    path.concat(&path.conj().reversed())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub target: HenonParams,
    pub n: usize,
    pub permutation: CodePermutation,
    pub automorphism: Option<String>,
    pub order: usize,
    /// Continued orbits at the target that are real.
    pub real_orbits: usize,
    pub total_orbits: usize,
    pub real_type: RealType,
    /// Order at most two.
    pub involution: bool,
    /// Identity exactly when every continued orbit is real, and the real
    /// type agrees.
    pub consistent: bool,
}

/// Build `γ̂` from a path to a real parameter, compute its monodromy, and
/// compare with the reality of the orbits at the target.
pub fn hat_loop_report(
    base: HenonParams,
    path: &ParamPath,
    n: usize,
) -> Result<InvolutionReport, ContinuationError> {
    let opts = ContinuationOptions::default();
    if path.start().distance(&base) > 1e-12 {
        return Err(ContinuationError::BadPath("path does not start at the basepoint".into()));
    }
    let target = path.end();
    if !target.is_real() {
        return Err(ContinuationError::Precondition(format!("target {target} is not real")));
    }
    require_horseshoe(path.waypoints())?;
    hat_loop(path)?;
    if !base.is_real() || base.a.re >= 0.0 || !region_member_2d(Region2D::Hov, base) {
        return Err(ContinuationError::Precondition(format!(
            "basepoint {base} must be real, in HOV, with a < 0"
        )));
    }
    let orbits = per_n_with(base, n, &PerNOptions { continuation: opts })?;
    let start: Vec<CyclicOrbit> = orbits.iter().map(|o| o.orbit.clone()).collect();
    let out = continue_orbits(&start, path, &opts)?;
    let tol = 1e-8 * filtration_radius(target);
    let real_orbits = out.end.iter().filter(|o| o.max_imag() < tol).count();
    let back = continue_orbits(&out.end, &path.conj().reversed(), &opts)?;
    let margins: Vec<f64> = out
        .min_margin
        .iter()
        .zip(&back.min_margin)
        .map(|(x, y)| x.min(*y))
        .collect();
    let (permutation, _) = land(&orbits, &back.end, &margins)?;
    let order = permutation.order();
    let real_type = classify_real_type(target, n, &ClassifierOptions::default()).real_type;
    let all_real = real_orbits == out.end.len();
    let consistent = (order == 1) == all_real
        && match real_type {
            RealType::Type1 => order == 1,
            RealType::Type2 | RealType::Type3 => order == 2,
            RealType::NotHorseshoe | RealType::Unknown => true,
        };
    Ok(InvolutionReport {
        target,
        n,
        automorphism: match_automorphism(&permutation, DEFAULT_GENERATOR_BUDGET),
        permutation,
        order,
        real_orbits,
        total_orbits: out.end.len(),
        real_type,
        involution: order <= 2,
        consistent,
    })
}

fn require_horseshoe(points: &[HenonParams]) -> Result<(), ContinuationError> {
    let opts = ClassifierOptions::default();
    let bad = points.par_iter().find_any(|p| {
        !matches!(
            classify_parameter(**p, &opts).verdict,
            Verdict::HorseshoeHov | Verdict::HorseshoeEvidence
        )
    });
    match bad {
        Some(p) => Err(ContinuationError::Precondition(format!(
            "waypoint {p} is not classified as a horseshoe"
        ))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitCodes {
    pub word: CyclicWord,
    pub landing: CyclicWord,
    pub start: BTreeSet<CyclicWord>,
    pub end: BTreeSet<CyclicWord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem5Report {
    pub base: HenonParams,
    pub n: usize,
    pub permutation: CodePermutation,
    pub orbits: Vec<OrbitCodes>,
    pub passed: bool,
    /// First orbit whose three-box coding changed, if any.
    pub witness: Option<String>,
}

/// Check that three-box codings of period-`N` points are unchanged by
/// continuation around a loop lying in the three-box region.
pub fn theorem5_check(path: &ParamPath, n: usize) -> Result<Theorem5Report, ContinuationError> {
    let opts = ContinuationOptions::default();
    if !path.is_closed() {
        return Err(ContinuationError::BadPath("loop is not closed".into()));
    }
    if let Some(p) = path
        .waypoints()
        .par_iter()
        .find_any(|p| !region_member_2d(Region2D::W2, **p))
    {
        return Err(ContinuationError::Precondition(format!(
            "waypoint {p} is outside the three-box region"
        )));
    }
    require_horseshoe(path.waypoints())?;
    let base = path.start();
    let orbits = per_n_with(base, n, &PerNOptions { continuation: opts })?;
    let bx = BoxSystem1D::new(base.a);
    let start_codes = orbits
        .iter()
        .map(|o| code_orbit_g_in(&bx, &o.orbit))
        .collect::<Result<Vec<_>, _>>()?;
    let start: Vec<CyclicOrbit> = orbits.iter().map(|o| o.orbit.clone()).collect();
    let run = continue_orbits(&start, path, &opts)?;
    let (permutation, traces) = land(&orbits, &run.end, &run.min_margin)?;
    let mut witness = None;
    let mut rows = Vec::with_capacity(orbits.len());
    for (i, (end, trace)) in run.end.iter().zip(traces).enumerate() {
        let end_codes = code_orbit_g_in(&bx, end)?;
        let j = orbits
            .iter()
            .position(|o| o.word == trace.landing)
            .expect("landing is a start word");
        if witness.is_none() && (end_codes != start_codes[i] || start_codes[j] != start_codes[i]) {
            witness = Some(format!(
                "orbit {} landed on {} with codings {} -> {}",
                trace.word,
                trace.landing,
                fmt_set(&start_codes[i]),
                fmt_set(&end_codes)
            ));
        }
        rows.push(OrbitCodes {
            word: trace.word,
            landing: trace.landing,
            start: start_codes[i].clone(),
            end: end_codes,
        });
    }
    Ok(Theorem5Report {
        base,
        n,
        permutation,
        orbits: rows,
        passed: witness.is_none(),
        witness,
    })
}

fn fmt_set(s: &BTreeSet<CyclicWord>) -> String {
    let v: Vec<String> = s.iter().map(|w| format!("({w})")).collect();
    format!("{{{}}}", v.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::real;
    use std::f64::consts::PI;

    fn hov_a_circle() -> ParamPath {
        ParamPath::circle_a(real(0.0), 6.0, real(0.2), PI, 128)
    }

    fn hov_b_circle() -> ParamPath {
        ParamPath::circle_b(real(-6.0), real(0.0), 0.2, 0.0, 32)
    }

    #[test]
    fn a_circle_swaps_symbols() {
        let base = HenonParams::real(-6.0, 0.2);
        let r = monodromy(base, &hov_a_circle(), 3).unwrap();
        assert_eq!(r.automorphism.as_deref(), Some("C"));
        assert_eq!(r.grade, MonodromyGrade::Hov);
        assert!(r.permutation.commutes_with_shift());
    }

    #[test]
    fn b_circle_is_trivial() {
        let base = HenonParams::real(-6.0, 0.2);
        let r = monodromy(base, &hov_b_circle(), 3).unwrap();
        assert!(r.permutation.is_identity());
    }

    #[test]
    fn open_path_is_rejected() {
        let base = HenonParams::real(-6.0, 0.2);
        let seg = ParamPath::segment(base, HenonParams::real(-5.0, 0.2)).unwrap();
        assert!(matches!(monodromy(base, &seg, 2), Err(ContinuationError::BadPath(_))));
    }

    #[test]
    fn hat_loop_of_real_segment_is_identity() {
        let base = HenonParams::real(-6.0, 0.2);
        let seg = ParamPath::segment(base, HenonParams::real(-5.0, 0.2)).unwrap();
        let r = hat_loop_report(base, &seg, 3).unwrap();
        assert_eq!(r.order, 1);
        assert!(r.consistent);
        assert_eq!(r.real_type, RealType::Type1);
    }
}
