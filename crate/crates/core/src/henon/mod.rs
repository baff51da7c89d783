//! The complex Hénon map `f(x, y) = (x² + a − b·y, x)`.
//!
//! Periodic orbits are handled in sequence space: a period-`N` orbit is a
//! cyclic sequence `y_0, …, y_{N−1}` solving `y_{n+1} = y_n² + a − b·y_{n−1}`,
//! and its points are `(x_n, y_n) = (y_{n+1}, y_n)`. At `b = 0` the
//! sequence is an orbit of `g(z) = z² + a`, which is how orbits are seeded.

mod codes;
mod orbit;
mod per_n;
mod seed;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cx::C64;
use crate::one_dim::{estimate_epsilon, region_member_1d, Region1D};

pub use codes::{
    code_orbit, code_orbit_e, code_orbit_g, code_orbit_g_in, e_code_to_ghat_top, CodeScheme,
    OrbitCoding,
};
pub use orbit::{
    orbit_multipliers, solve_periodic_orbit, solve_periodic_orbit_with, CyclicOrbit,
    NewtonOptions, SaddleInfo,
};
pub(crate) use orbit::{
    max_defect as max_defect_of, multipliers_of, newton as newton_of, tangent as tangent_of,
};
pub use per_n::{per_n, per_n_with, radial_anchor, seed_anchor, LabeledOrbit, PerNOptions, MERGE_THRESHOLD};
pub use seed::seed_orbit_1d;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HenonError {
    #[error("the inverse map needs b != 0")]
    SingularInverse,
    #[error("inverse-branch seeding needs |a| > 2, got a = {0}")]
    SeedOutsideHov(C64),
    #[error("seeding did not converge (contraction estimate {contraction:.3})")]
    SeedNoConvergence { contraction: f64 },
    #[error("Newton iteration diverged after {iterations} steps (residual {residual:.3e})")]
    Divergence { iterations: usize, residual: f64 },
    #[error("singular Jacobian: near a bifurcation")]
    SingularJacobian,
    #[error("seed has length {got}, expected {expected}")]
    SeedLength { got: usize, expected: usize },
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("orbit point {index} ({z}) lies outside every box")]
    OutsideBoxes { index: usize, z: C64 },
    #[error("orbit point {index} lies on a sector boundary")]
    SectorBoundary { index: usize },
    #[error("parameters {0} are outside the three-box region")]
    OutsideW2(HenonParams),
    #[error("continuation from the seeds failed: {0}")]
    Continuation(String),
    #[error("unknown region {0:?}")]
    UnknownRegion(String),
}

/// Parameters `(a, b)` of the Hénon map.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HenonParams {
    pub a: C64,
    pub b: C64,
}

impl HenonParams {
    pub fn new(a: C64, b: C64) -> Self {
        Self { a, b }
    }

    pub fn real(a: f64, b: f64) -> Self {
        Self::new(C64::new(a, 0.0), C64::new(b, 0.0))
    }

    pub fn is_real(&self) -> bool {
        self.a.im == 0.0 && self.b.im == 0.0
    }

    pub fn b_nonzero(&self) -> bool {
        self.b != C64::new(0.0, 0.0)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.conj(), self.b.conj())
    }

    /// Euclidean distance in `ℂ²`.
    pub fn distance(&self, other: &Self) -> f64 {
        ((self.a - other.a).norm_sqr() + (self.b - other.b).norm_sqr()).sqrt()
    }

    /// Point at fraction `s` of the segment to `other`.
    pub fn lerp(&self, other: &Self, s: f64) -> Self {
        Self::new(self.a + (other.a - self.a) * s, self.b + (other.b - self.b) * s)
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }
}

impl fmt::Display for HenonParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={})", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// One step of `f` or `f⁻¹(x, y) = (y, (y² + a − x)/b)`.
pub fn henon_step(
    p: HenonParams,
    (x, y): (C64, C64),
    dir: Direction,
) -> Result<(C64, C64), HenonError> {
    match dir {
        Direction::Forward => Ok((x * x + p.a - p.b * y, x)),
        Direction::Inverse => {
            if !p.b_nonzero() {
                return Err(HenonError::SingularInverse);
            }
            Ok((y, (y * y + p.a - x) / p.b))
        }
    }
}

/// `R = (1 + |b| + √((1 + |b|)² + 4|a|))/2`; the filled Julia set lies in
/// the bidisk `|x|, |y| ≤ R`.
pub fn filtration_radius(p: HenonParams) -> f64 {
    let s = 1.0 + p.b.norm();
    (s + (s * s + 4.0 * p.a.norm()).sqrt()) / 2.0
}

/// Parameter regions in `ℂ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region2D {
    /// `|a| > 2(|b| + 1)²` with `b ≠ 0`.
    Hov,
    /// `a ∈ W1` and `|b|` below the three-box slack over `R`.
    W2,
}

impl FromStr for Region2D {
    type Err = HenonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "HOV" => Ok(Self::Hov),
            "W" | "W2" => Ok(Self::W2),
            _ => Err(HenonError::UnknownRegion(s.to_string())),
        }
    }
}

/// Safety factor applied to the sampled slack before the `|b| < ε/R` test.
pub const EPSILON_SAFETY: f64 = 0.5;

/// `a₀(b)`: the boundary `|a| = 2(|b| + 1)²` of the HOV region.
pub fn hov_threshold(b: C64) -> f64 {
    2.0 * (b.norm() + 1.0).powi(2)
}

pub fn region_member_2d(region: Region2D, p: HenonParams) -> bool {
    match region {
        Region2D::Hov => p.b_nonzero() && p.a.norm() > hov_threshold(p.b),
        Region2D::W2 => w2_slack(p).is_some_and(|s| s > 0.0),
    }
}

/// `safety·ε(a)/R − |b|`, or `None` when `a ∉ W1`.
pub fn w2_slack(p: HenonParams) -> Option<f64> {
    if !region_member_1d(Region1D::W1, p.a) {
        return None;
    }
    let eps = estimate_epsilon(p.a).ok()?;
    Some(EPSILON_SAFETY * eps / filtration_radius(p) - p.b.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::{c, real};

    #[test]
    fn forward_then_inverse() {
        let p = HenonParams::real(-6.0, 0.2);
        let q = henon_step(p, (real(1.0), real(1.0)), Direction::Forward).unwrap();
        let r = henon_step(p, q, Direction::Inverse).unwrap();
        assert!((r.0 - real(1.0)).norm() < 1e-12 && (r.1 - real(1.0)).norm() < 1e-12);
        assert!(henon_step(HenonParams::real(-6.0, 0.0), q, Direction::Inverse).is_err());
    }

    #[test]
    fn fixed_points_from_quadratic() {
        let p = HenonParams::real(-6.0, 0.2);
        // x² − (1 + b)x + a = 0
        let disc: f64 = 1.2f64 * 1.2 + 24.0;
        for x in [(1.2 + disc.sqrt()) / 2.0, (1.2 - disc.sqrt()) / 2.0] {
            let (x1, y1) = henon_step(p, (real(x), real(x)), Direction::Forward).unwrap();
            assert!((x1 - real(x)).norm() < 1e-12 && (y1 - real(x)).norm() < 1e-12);
        }
        assert!(((1.2 + disc.sqrt()) / 2.0 - 3.1219).abs() < 1e-4);
    }

    #[test]
    fn b_zero_reduces_to_quadratic() {
        let p = HenonParams::new(c(-1.0, 0.3), real(0.0));
        let z = c(0.4, -0.2);
        let (x, _) = henon_step(p, (z, c(9.0, 9.0)), Direction::Forward).unwrap();
        assert_eq!(x, z * z + p.a);
    }

    #[test]
    fn filtration_values() {
        assert!((filtration_radius(HenonParams::real(-6.0, 0.2)) - 3.1219).abs() < 1e-3);
        assert_eq!(filtration_radius(HenonParams::real(0.0, 0.0)), 1.0);
    }

    #[test]
    fn region_examples() {
        assert!(region_member_2d(Region2D::Hov, HenonParams::real(-6.0, 0.2)));
        assert!(!region_member_2d(Region2D::Hov, HenonParams::real(-6.0, 0.0)));
        assert!(region_member_2d(Region2D::Hov, HenonParams::real(6.0, 0.2)));
        assert!(region_member_2d(Region2D::W2, HenonParams::real(-2.3, 0.05)));
        assert!(!region_member_2d(Region2D::W2, HenonParams::real(-2.3, 0.5)));
        assert!(!region_member_2d(Region2D::W2, HenonParams::real(-0.5, 0.01)));
    }

    #[test]
    fn hov_curve_meets_minus_two_at_b_zero() {
        assert_eq!(hov_threshold(real(0.0)), 2.0);
    }
}
