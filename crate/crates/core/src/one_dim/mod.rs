//! The quadratic family `g(z) = z² + a`.

mod boxes;
mod coding;
mod green;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cx::C64;

pub use boxes::{
    box_radius, estimate_epsilon, estimate_epsilon_with, inclusion_slack_unchecked, point_member_1d,
    BoxRegion, BoxSystem1D, EpsilonOptions, LineOffset,
};
pub use coding::{code_cycle_g_1d, code_orbit_g_1d};
pub use green::{
    critical_green_h, critical_green_h_with, theta_loop_integral, theta_loop_integral_with,
    GreenEstimate,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OneDimError {
    #[error("a = {0} is outside the three-box region")]
    OutsideW1(C64),
    #[error("g has a double fixed point at a = {0}")]
    DoubleRoot(C64),
    #[error("point {index} ({z}) lies in none of D0, D1, D2")]
    OutsideBoxes { index: usize, z: C64 },
    #[error("unknown region {0:?}")]
    UnknownRegion(String),
    #[error("radius {0} must exceed 2")]
    RadiusTooSmall(f64),
    #[error("non-finite sample at a = {0}")]
    NonFinite(C64),
}

/// Parameter-plane regions of the quadratic family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region1D {
    /// `|a| > 2`.
    Hov1,
    /// Where the three-box cover exists: left of the hyperbola arch through `−1`.
    W1,
    /// The Mandelbrot set, by bounded critical orbit.
    M,
}

impl FromStr for Region1D {
    type Err = OneDimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "HOV" | "HOV1" => Ok(Self::Hov1),
            "W" | "W1" => Ok(Self::W1),
            "M" => Ok(Self::M),
            _ => Err(OneDimError::UnknownRegion(s.to_string())),
        }
    }
}

impl fmt::Display for Region1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Self::Hov1 => "HOV1",
            Self::W1 => "W1",
            Self::M => "M",
        })
    }
}

/// Iteration budget for the Mandelbrot test.
pub const MANDELBROT_ITERATIONS: usize = 1000;

/// A radius beyond which every orbit escapes: `(1 + √(1 + 4|a|))/2` with a
/// 10% margin.
pub fn escape_radius_1d(a: C64) -> f64 {
    1.1 * (1.0 + (1.0 + 4.0 * a.norm()).sqrt()) / 2.0
}

/// Radius of the `W1` boundary arch in direction `φ ∈ (−π, π]`, or `None`
/// where the arch has no point (`|φ| ≤ 2π/3`).
pub fn w1_boundary_radius(phi: f64) -> Option<f64> {
    if phi.abs() <= 2.0 * std::f64::consts::FRAC_PI_3 {
        return None;
    }
    Some(-(phi / 2.0).sin() / (1.5 * phi).sin())
}

pub fn mandelbrot_member(a: C64, iterations: usize) -> bool {
    let mut z = C64::new(0.0, 0.0);
    for _ in 0..iterations {
        z = z * z + a;
        if z.norm_sqr() > 4.0 {
            return false;
        }
    }
    true
}

pub fn region_member_1d(region: Region1D, a: C64) -> bool {
    match region {
        Region1D::Hov1 => a.norm() > 2.0,
        Region1D::W1 => {
            if a == C64::new(0.0, 0.0) {
                return false;
            }
            let phi = a.im.atan2(a.re);
            w1_boundary_radius(phi).is_some_and(|rb| a.norm() > rb)
        }
        Region1D::M => mandelbrot_member(a, MANDELBROT_ITERATIONS),
    }
}

/// The fixed points `(p_α, p_β)` of `g`.
///
/// `p_β` is the root in `D0` when the three-box cover exists, otherwise the
/// root of larger modulus.
pub fn fixed_points_1d(a: C64) -> Result<(C64, C64), OneDimError> {
    let disc = C64::new(1.0, 0.0) - 4.0 * a;
    if disc.norm() < 1e-14 {
        return Err(OneDimError::DoubleRoot(a));
    }
    let s = disc.sqrt();
    let r1 = (1.0 + s) / 2.0;
    let r2 = (1.0 - s) / 2.0;
    if region_member_1d(Region1D::W1, a) {
        let bx = BoxSystem1D::with_offset(a, 0.0);
        if bx.contains(BoxRegion::D0, r1) && !bx.contains(BoxRegion::D0, r2) {
            return Ok((r2, r1));
        }
        if bx.contains(BoxRegion::D0, r2) && !bx.contains(BoxRegion::D0, r1) {
            return Ok((r1, r2));
        }
    }
    if r1.norm() >= r2.norm() {
        Ok((r2, r1))
    } else {
        Ok((r1, r2))
    }
}
