use serde::{Deserialize, Serialize};

use super::Witness;
use crate::cx::{c, C64};
use crate::henon::{
    filtration_radius, henon_step, orbit_multipliers, solve_periodic_orbit, Direction,
    HenonParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttractorOptions {
    /// Seeds per side of the real grid over `[−R, R]²`.
    pub grid: usize,
    /// Iterations discarded before looking for a cycle.
    pub transient: usize,
    pub max_period: usize,
    /// Also seed from `(0, y₀)` with `y₀` on the imaginary axis.
    pub complex_seeds: bool,
}

impl Default for AttractorOptions {
    fn default() -> Self {
        Self {
            grid: 8,
            transient: 2000,
            max_period: 64,
            complex_seeds: true,
        }
    }
}

fn seeds(r: f64, opts: &AttractorOptions) -> Vec<(C64, C64)> {
    let g = opts.grid.max(1);
    let coord = |k: usize| if g == 1 { 0.0 } else { -r + 2.0 * r * k as f64 / (g - 1) as f64 };
    let mut out: Vec<(C64, C64)> = (0..g)
        .flat_map(|i| (0..g).map(move |j| (c(coord(i), 0.0), c(coord(j), 0.0))))
        .collect();
    out.push((c(0.0, 0.0), c(0.0, 0.0)));
    if opts.complex_seeds {
        for s in [0.25, 0.5] {
            out.push((c(0.0, 0.0), c(0.0, s * r)));
            out.push((c(0.0, 0.0), c(0.0, -s * r)));
        }
    }
    out
}

/// Iterate `f` forward; `None` once the orbit provably escapes.
fn iterate(p: HenonParams, mut z: (C64, C64), steps: usize, r: f64) -> Option<(C64, C64)> {
    for _ in 0..steps {
        z = henon_step(p, z, Direction::Forward).ok()?;
        let (nx, ny) = (z.0.norm(), z.1.norm());
        if !(nx.is_finite() && ny.is_finite()) || (nx > r && nx >= ny) {
            return None;
        }
    }
    Some(z)
}

/// Search for an attracting cycle from a fixed set of seeds.
pub fn find_attractor(p: HenonParams, opts: &AttractorOptions) -> Option<Witness> {
    let r = filtration_radius(p);
    for seed in seeds(r, opts) {
        let Some(z0) = iterate(p, seed, opts.transient, r) else {
            continue;
        };
        let mut z = z0;
        let mut ys = vec![z0.1];
        for period in 1..=opts.max_period {
            z = henon_step(p, z, Direction::Forward).ok()?;
            let close = (z.0 - z0.0).norm().max((z.1 - z0.1).norm()) < 1e-6 * (1.0 + z0.0.norm());
            if close {
                if let Some(w) = attracting_cycle(p, period, &ys) {
                    return Some(w);
                }
                break;
            }
            ys.push(z.1);
        }
    }
    None
}

/// `ys` holds `y_0 … y_{p−1}` along the cycle.
fn attracting_cycle(p: HenonParams, period: usize, ys: &[C64]) -> Option<Witness> {
    let orbit = solve_periodic_orbit(p, period, &ys[..period]).ok()?;
    let info = orbit_multipliers(&orbit);
    if info.unstable != 0 || info.margin <= 1e-9 {
        return None;
    }
    let (x, y) = orbit.point(0);
    Some(Witness::Attractor {
        period,
        x,
        y,
        multipliers: [info.multipliers[0].norm(), info.multipliers[1].norm()],
    })
}

/// Re-solve a reported attracting cycle from its point and check it again.
pub(crate) fn confirm_attractor(p: HenonParams, period: usize, (x, y): (C64, C64)) -> bool {
    let mut z = (x, y);
    let mut ys = vec![y];
    for _ in 1..period {
        match henon_step(p, z, Direction::Forward) {
            Ok(next) => z = next,
            Err(_) => return false,
        }
        ys.push(z.1);
    }
    attracting_cycle(p, period, &ys).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_attractor_in_hov() {
        assert!(find_attractor(HenonParams::real(-6.0, 0.2), &Default::default()).is_none());
    }

    #[test]
    fn fixed_point_attractor_in_main_cardioid() {
        let w = find_attractor(HenonParams::real(-0.2, 0.1), &Default::default()).unwrap();
        match w {
            Witness::Attractor { period, multipliers, .. } => {
                assert_eq!(period, 1);
                assert!(multipliers[0] < 1.0);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }
}
