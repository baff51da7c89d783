use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ContinuationError, ParamPath};
use crate::cx::{sup_dist, sup_norm, C64};
use crate::henon::{orbit_multipliers, CyclicOrbit, HenonParams, NewtonOptions, MERGE_THRESHOLD};
use crate::henon::{max_defect_of, multipliers_of, newton_of, tangent_of};

/// Step-size control and acceptance tests for predictor-corrector runs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuationOptions {
    /// Largest parameter step, in the Euclidean metric of `ℂ²`.
    pub max_step: f64,
    pub min_step: f64,
    pub initial_step: f64,
    pub grow: f64,
    pub shrink: f64,
    pub newton: NewtonOptions,
    /// Two tracked orbits closer than this (sup norm) have collided.
    pub collision_threshold: f64,
    /// Smallest acceptable `min ||λ| − 1|`.
    pub margin_threshold: f64,
    /// Reject corrections that move an orbit more than this fraction of
    /// its distance to the nearest other tracked orbit.
    pub max_corrector_fraction: f64,
    /// Budget on accepted plus rejected steps.
    pub max_steps: usize,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        Self {
            max_step: 0.05,
            min_step: 1e-7,
            initial_step: 0.01,
            grow: 1.5,
            shrink: 0.5,
            newton: NewtonOptions {
                max_iterations: 10,
                tolerance: 1e-13,
            },
            collision_threshold: MERGE_THRESHOLD,
            margin_threshold: 1e-6,
            max_corrector_fraction: 0.25,
            max_steps: 200_000,
        }
    }
}

/// Result of following a family of orbits along a path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuationRun {
    pub end: Vec<CyclicOrbit>,
    pub accepted: usize,
    pub rejected: usize,
    /// Smallest hyperbolicity margin seen, per orbit.
    pub min_margin: Vec<f64>,
}

#[derive(Clone, Copy, Debug)]
enum Rejection {
    Newton,
    Jump,
    Collision(usize, usize),
    Margin(usize, f64),
}

struct Walker<'a> {
    path: &'a ParamPath,
    cumulative: Vec<f64>,
}

impl<'a> Walker<'a> {
    fn new(path: &'a ParamPath) -> Self {
        let mut cumulative = vec![0.0];
        for w in path.waypoints().windows(2) {
            let last = *cumulative.last().unwrap();
            cumulative.push(last + w[0].distance(&w[1]));
        }
        Self { path, cumulative }
    }

    fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Segment index containing arc length `s` (right-continuous).
    fn segment(&self, s: f64) -> usize {
        let n = self.cumulative.len();
        (1..n).find(|&i| s < self.cumulative[i]).map_or(n.saturating_sub(2), |i| i - 1)
    }

    fn at(&self, s: f64) -> HenonParams {
        let wp = self.path.waypoints();
        if wp.len() == 1 {
            return wp[0];
        }
        let i = self.segment(s);
        let len = self.cumulative[i + 1] - self.cumulative[i];
        let t = ((s - self.cumulative[i]) / len).clamp(0.0, 1.0);
        if t == 1.0 {
            return wp[i + 1];
        }
        wp[i].lerp(&wp[i + 1], t)
    }

    /// Arc length of the next waypoint strictly after `s`.
    fn next_break(&self, s: f64) -> f64 {
        self.cumulative
            .iter()
            .copied()
            .find(|&c| c > s + 1e-15)
            .unwrap_or(self.total())
    }
}

fn nearest_other(ys: &[Vec<C64>], i: usize) -> f64 {
    ys.iter()
        .enumerate()
        .filter(|&(j, y)| j != i && y.len() == ys[i].len())
        .map(|(_, y)| sup_dist(&ys[i], y))
        .fold(f64::INFINITY, f64::min)
}

fn first_collision(ys: &[Vec<C64>], threshold: f64) -> Option<(usize, usize)> {
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            if ys[i].len() == ys[j].len() && sup_dist(&ys[i], &ys[j]) < threshold {
                return Some((i, j));
            }
        }
    }
    None
}

/// Continue a family of cyclic orbits, solved at `path.start()`, to the
/// end of `path` jointly: a step is accepted only when every orbit
/// converges, stays hyperbolic with an unchanged number of unstable
/// multipliers, and no two orbits of equal period collide.
pub fn continue_orbits(
    start: &[CyclicOrbit],
    path: &ParamPath,
    opts: &ContinuationOptions,
) -> Result<ContinuationRun, ContinuationError> {
    let p0 = path.start();
    if let Some(o) = start.iter().find(|o| o.params.distance(&p0) > 1e-12) {
        return Err(ContinuationError::StartMismatch {
            orbit: o.params,
            path: p0,
        });
    }
    let mut ys: Vec<Vec<C64>> = start.iter().map(|o| o.y.clone()).collect();
    let unstable: Vec<usize> = start.iter().map(|o| orbit_multipliers(o).unstable).collect();
    let mut min_margin: Vec<f64> = start.iter().map(|o| orbit_multipliers(o).margin).collect();

    if let Some(i) = min_margin.iter().position(|&m| m < opts.margin_threshold) {
        return Err(ContinuationError::MarginLoss {
            at: p0,
            index: i,
            margin: min_margin[i],
        });
    }
    if let Some((i, j)) = first_collision(&ys, opts.collision_threshold) {
        return Err(ContinuationError::Collision { at: p0, first: i, second: j });
    }

    let walker = Walker::new(path);
    let total = walker.total();
    let mut s = 0.0;
    let mut h = opts.initial_step.min(opts.max_step);
    let (mut accepted, mut rejected) = (0usize, 0usize);

    while s < total {
        if accepted + rejected >= opts.max_steps {
            return Err(ContinuationError::Budget {
                at: walker.at(s),
                steps: accepted + rejected,
            });
        }
        let brk = walker.next_break(s);
        let s_new = (s + h).min(brk);
        let p = walker.at(s);
        let q = walker.at(s_new);
        let (da, db) = (q.a - p.a, q.b - p.b);

        let attempt = step_all(&ys, p, q, da, db, &unstable, opts);
        match attempt {
            Ok((new_ys, margins)) => {
                for (m, new) in min_margin.iter_mut().zip(&margins) {
                    *m = m.min(*new);
                }
                ys = new_ys;
                s = if s_new >= brk { brk } else { s_new };
                accepted += 1;
                h = (h * opts.grow).min(opts.max_step);
            }
            Err(reason) => {
                rejected += 1;
                if h <= opts.min_step {
                    return Err(match reason {
                        Rejection::Newton | Rejection::Jump => ContinuationError::Divergence { at: q },
                        Rejection::Collision(i, j) => ContinuationError::Collision {
                            at: q,
                            first: i,
                            second: j,
                        },
                        Rejection::Margin(i, m) => ContinuationError::MarginLoss {
                            at: q,
                            index: i,
                            margin: m,
                        },
                    });
                }
                h = (h * opts.shrink).max(opts.min_step);
            }
        }
    }

    let end_params = path.end();
    let end = ys
        .into_iter()
        .map(|y| {
            let residual = max_defect_of(end_params, &y);
            CyclicOrbit {
                params: end_params,
                y,
                residual,
            }
        })
        .collect();
    Ok(ContinuationRun {
        end,
        accepted,
        rejected,
        min_margin,
    })
}

fn step_all(
    ys: &[Vec<C64>],
    p: HenonParams,
    q: HenonParams,
    da: C64,
    db: C64,
    unstable: &[usize],
    opts: &ContinuationOptions,
) -> Result<(Vec<Vec<C64>>, Vec<f64>), Rejection> {
    let results: Vec<Result<(Vec<C64>, f64), Rejection>> = ys
        .par_iter()
        .enumerate()
        .map(|(i, y)| {
            let dy = tangent_of(p, y, da, db).ok_or(Rejection::Newton)?;
            let pred: Vec<C64> = y.iter().zip(&dy).map(|(a, b)| a + b).collect();
            let (corr, _, _) = newton_of(q, pred.clone(), opts.newton).map_err(|_| Rejection::Newton)?;
            let room = nearest_other(ys, i);
            let moved = sup_dist(&corr, y);
            let jump_limit = if room.is_finite() {
                opts.max_corrector_fraction * room
            } else {
                opts.max_corrector_fraction * (1.0 + sup_norm(y))
            };
            if moved > jump_limit || sup_dist(&corr, &pred) > jump_limit {
                return Err(Rejection::Jump);
            }
            let info = multipliers_of(q, &corr);
            if info.unstable != unstable[i] || info.margin < opts.margin_threshold {
                return Err(Rejection::Margin(i, info.margin));
            }
            Ok((corr, info.margin))
        })
        .collect();
    let mut new_ys = Vec::with_capacity(ys.len());
    let mut margins = Vec::with_capacity(ys.len());
    for r in results {
        let (y, m) = r?;
        new_ys.push(y);
        margins.push(m);
    }
    if let Some((i, j)) = first_collision(&new_ys, opts.collision_threshold) {
        return Err(Rejection::Collision(i, j));
    }
    Ok((new_ys, margins))
}

/// Continue a single orbit along `path`.
pub fn continue_orbit(
    orbit: &CyclicOrbit,
    path: &ParamPath,
    opts: &ContinuationOptions,
) -> Result<CyclicOrbit, ContinuationError> {
    let run = continue_orbits(std::slice::from_ref(orbit), path, opts)?;
    Ok(run.end.into_iter().next().expect("one orbit in, one out"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::real;
    use crate::henon::solve_periodic_orbit;

    #[test]
    fn constant_path_is_identity() {
        let p = HenonParams::real(-6.0, 0.2);
        let o = solve_periodic_orbit(p, 1, &[real(3.0)]).unwrap();
        let out = continue_orbit(&o, &ParamPath::constant(p), &Default::default()).unwrap();
        assert_eq!(out.y, o.y);
    }

    #[test]
    fn fixed_point_follows_closed_form() {
        let p = HenonParams::real(-6.0, 0.2);
        let q = HenonParams::real(-5.0, 0.2);
        let o = solve_periodic_orbit(p, 1, &[real(3.0)]).unwrap();
        let out = continue_orbit(&o, &ParamPath::segment(p, q).unwrap(), &Default::default()).unwrap();
        let exact = (1.2 + (1.44f64 + 20.0).sqrt()) / 2.0;
        assert!((out.y[0] - real(exact)).norm() < 1e-8);
        assert_eq!(out.params, q);
    }

    #[test]
    fn mismatched_start_is_rejected() {
        let p = HenonParams::real(-6.0, 0.2);
        let o = solve_periodic_orbit(p, 1, &[real(3.0)]).unwrap();
        let path = ParamPath::segment(HenonParams::real(-7.0, 0.2), p).unwrap();
        assert!(matches!(
            continue_orbit(&o, &path, &Default::default()),
            Err(ContinuationError::StartMismatch { .. })
        ));
    }
}
