use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{escape_radius_1d, region_member_1d, OneDimError, Region1D};
use crate::cx::{arg_0_2pi, half_angle_unit, C64};

/// Pieces of the two covers of the disk `|z| < R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoxRegion {
    E0,
    E1,
    W0,
    W1,
    D0,
    D1,
    D2,
}

impl FromStr for BoxRegion {
    type Err = OneDimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "E0" => Self::E0,
            "E1" => Self::E1,
            "W0" => Self::W0,
            "W1" => Self::W1,
            "D0" => Self::D0,
            "D1" => Self::D1,
            "D2" => Self::D2,
            _ => return Err(OneDimError::UnknownRegion(s.to_string())),
        })
    }
}

impl fmt::Display for BoxRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How the `W1` cut line is placed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum LineOffset {
    /// The offset `t ≥ 0` maximising the inclusion slack.
    Auto,
    /// Cut line through `c = t·e^{i(φ−π)/2}`.
    Fixed(f64),
}

/// Sampling settings for [`estimate_epsilon_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonOptions {
    /// Samples per boundary piece.
    pub density: usize,
    pub offset: LineOffset,
}

impl Default for EpsilonOptions {
    fn default() -> Self {
        Self {
            density: 1024,
            offset: LineOffset::Auto,
        }
    }
}

/// The sector partition `E0, E1` and the three-box cover `D0, D1, D2` over
/// `W0, W1` for `g(z) = z² + a`.
///
/// Angles use `φ = arg(a) ∈ [0, 2π)`, so at real `a < 0` the line dividing
/// `E0` from `E1` is the imaginary axis and `E1` is the left half-disk.
/// Membership is computed in the rotated coordinate `u = z·e^{−iφ/2}`, in
/// which `E1` is the upper half-disk and `W1` is cut by `Im u = −t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxSystem1D {
    a: C64,
    phi: f64,
    half: C64,
    radius: f64,
    offset: f64,
}

impl BoxSystem1D {
    /// Box system with the slack-maximising cut line.
    pub fn new(a: C64) -> Self {
        Self::with_options(a, EpsilonOptions::default())
    }

    pub fn with_offset(a: C64, t: f64) -> Self {
        Self {
            a,
            phi: arg_0_2pi(a),
            half: half_angle_unit(a),
            radius: box_radius(a),
            offset: t.max(0.0),
        }
    }

    pub fn with_options(a: C64, opts: EpsilonOptions) -> Self {
        match opts.offset {
            LineOffset::Fixed(t) => Self::with_offset(a, t),
            LineOffset::Auto => {
                let (t, _) = optimise_offset(a, opts.density);
                Self::with_offset(a, t)
            }
        }
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// The point `c` the `W1` cut line passes through.
    pub fn line_point(&self) -> C64 {
        self.half * C64::new(0.0, -self.offset)
    }

    fn rotate(&self, z: C64) -> C64 {
        z * self.half.conj()
    }

    fn g(&self, z: C64) -> C64 {
        z * z + self.a
    }

    fn big_radius(&self) -> f64 {
        self.radius * self.radius
    }

    /// Distance from `z` to the slit `{a + s·e^{iφ} : 0 ≤ s ≤ R²}`.
    fn slit_distance(&self, z: C64) -> f64 {
        let q = (z - self.a) * (self.half * self.half).conj();
        let s = q.re.clamp(0.0, self.big_radius());
        (q - s).norm()
    }

    pub fn contains(&self, region: BoxRegion, z: C64) -> bool {
        let in_disk = |z: C64| z.norm() < self.radius && z != C64::new(0.0, 0.0);
        match region {
            BoxRegion::E0 | BoxRegion::D0 => in_disk(z) && self.rotate(z).im < 0.0,
            BoxRegion::E1 | BoxRegion::D2 => in_disk(z) && self.rotate(z).im > 0.0,
            BoxRegion::W0 => (z - self.a).norm() < self.big_radius() && self.slit_distance(z) > 0.0,
            BoxRegion::W1 => {
                (z - self.a).norm() < self.big_radius() && self.rotate(z).im > -self.offset
            }
            BoxRegion::D1 => z.norm() < self.radius && self.contains(BoxRegion::W1, self.g(z)),
        }
    }

    /// Margin by which `p` lies inside `W0` (`≤ 0` when outside).
    fn w0_margin(&self, p: C64) -> f64 {
        (self.big_radius() - (p - self.a).norm()).min(self.slit_distance(p))
    }

    /// Margin by which `p` lies inside `W1` (`≤ 0` when outside).
    fn w1_margin(&self, p: C64) -> f64 {
        (self.big_radius() - (p - self.a).norm()).min(self.rotate(p).im + self.offset)
    }

    fn half_disk_boundary(&self, upper: bool, n: usize) -> impl Iterator<Item = C64> + '_ {
        let r = self.radius;
        let start = if upper { 0.0 } else { std::f64::consts::PI };
        let arc = (0..=n).map(move |k| {
            let th = start + std::f64::consts::PI * k as f64 / n as f64;
            C64::from_polar(r, th)
        });
        let diameter = (0..=n).map(move |k| C64::new(-r + 2.0 * r * k as f64 / n as f64, 0.0));
        arc.chain(diameter).map(move |u| u * self.half)
    }

    /// Samples of `∂W1`: the arc of `|w − a| = R²` inside the half-plane and
    /// the chord along the cut line.
    fn w1_boundary(&self, n: usize) -> Vec<C64> {
        let rr = self.big_radius();
        let mut out = Vec::with_capacity(3 * n);
        for k in 0..(2 * n) {
            let th = std::f64::consts::TAU * k as f64 / (2 * n) as f64;
            let w = self.a + C64::from_polar(rr, th);
            if self.rotate(w).im >= -self.offset {
                out.push(w);
            }
        }
        let ua = self.rotate(self.a);
        let gap = rr * rr - (self.offset + ua.im).powi(2);
        if gap >= 0.0 {
            let half_len = gap.sqrt();
            for k in 0..=n {
                let s = ua.re - half_len + 2.0 * half_len * k as f64 / n as f64;
                out.push(self.half * C64::new(s, -self.offset));
            }
        }
        out
    }

    /// `min(dist(D̄0 ∪ D̄1, ∂W0), dist(D̄2, ∂W1))` estimated from boundary
    /// samples; zero when an inclusion fails.
    pub fn inclusion_slack(&self, density: usize) -> f64 {
        let n = density.max(8);
        let mut slack = f64::INFINITY;

        // the slit must stay clear of the closure of D1
        for k in 0..=n {
            let w = self.a + self.half * self.half * (self.big_radius() * k as f64 / n as f64);
            if self.w1_margin(self.g(w)) >= 0.0 {
                return 0.0;
            }
        }

        for p in self.half_disk_boundary(false, n) {
            slack = slack.min(self.w0_margin(p));
        }
        for p in self.half_disk_boundary(true, n) {
            slack = slack.min(self.w1_margin(p));
        }
        for w in self.w1_boundary(n) {
            let z = (w - self.a).sqrt();
            slack = slack.min(self.w0_margin(z)).min(self.w0_margin(-z));
        }
        slack.max(0.0)
    }
}

/// Sector radius: the escape radius, enlarged if needed so that the disk
/// also contains `a` (the base of the slit).
pub fn box_radius(a: C64) -> f64 {
    escape_radius_1d(a).max(1.1 * a.norm())
}

/// Offset `t` maximising the slack, by a coarse grid then golden-section
/// refinement around the best cell.
fn optimise_offset(a: C64, density: usize) -> (f64, f64) {
    let rr = box_radius(a).powi(2);
    let eval = |t: f64| BoxSystem1D::with_offset(a, t).inclusion_slack(density);
    // linear cells plus a geometric tail toward 0, where the optimum sits
    // for parameters close to the region boundary
    const GRID: usize = 40;
    let mut ts: Vec<f64> = (0..=GRID).map(|k| rr * k as f64 / GRID as f64).collect();
    ts.extend((1..=30).map(|k| rr / GRID as f64 * 0.5f64.powi(k)));
    ts.sort_by(f64::total_cmp);
    let vals: Vec<f64> = ts.iter().map(|&t| eval(t)).collect();
    let last = ts.len() - 1;
    let best = (0..=last)
        .max_by(|&i, &j| vals[i].total_cmp(&vals[j]))
        .expect("grid is nonempty");
    if vals[best] <= 0.0 {
        return (0.0, 0.0);
    }
    let (mut lo, mut hi) = (ts[best.saturating_sub(1)], ts[(best + 1).min(last)]);
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - gr * (hi - lo);
    let mut x2 = lo + gr * (hi - lo);
    let (mut f1, mut f2) = (eval(x1), eval(x2));
    for _ in 0..40 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = eval(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = eval(x1);
        }
    }
    let (t, v) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    if v >= vals[best] {
        (t, v)
    } else {
        (ts[best], vals[best])
    }
}

pub fn point_member_1d(bx: &BoxSystem1D, region: BoxRegion, z: C64) -> bool {
    bx.contains(region, z)
}

/// The inclusion slack `ε(a)` of the three-box cover.
pub fn estimate_epsilon(a: C64) -> Result<f64, OneDimError> {
    estimate_epsilon_with(a, EpsilonOptions::default())
}

pub fn estimate_epsilon_with(a: C64, opts: EpsilonOptions) -> Result<f64, OneDimError> {
    if !region_member_1d(Region1D::W1, a) {
        return Err(OneDimError::OutsideW1(a));
    }
    Ok(match opts.offset {
        LineOffset::Auto => optimise_offset(a, opts.density).1,
        LineOffset::Fixed(t) => BoxSystem1D::with_offset(a, t).inclusion_slack(opts.density),
    })
}

/// Slack for any `a`, without the region precondition; zero where the
/// construction fails.
pub fn inclusion_slack_unchecked(a: C64, density: usize) -> f64 {
    optimise_offset(a, density).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cx::{c, real};

    #[test]
    fn sectors_at_minus_two() {
        let bx = BoxSystem1D::new(real(-2.0));
        assert!(bx.contains(BoxRegion::E1, real(-1.5)));
        assert!(!bx.contains(BoxRegion::E0, real(-1.5)));
        assert!(bx.contains(BoxRegion::E0, real(1.5)));
        assert!(bx.contains(BoxRegion::D1, real(0.01)));
        assert!(!bx.contains(BoxRegion::W0, real(-2.0 - 5.0)));
        // on the slit
        assert!(!bx.contains(BoxRegion::W0, real(-3.0)));
        assert!(bx.contains(BoxRegion::W0, c(-3.0, 0.01)));
    }

    #[test]
    fn cut_line_at_negative_real_is_vertical() {
        let bx = BoxSystem1D::with_offset(real(-2.0), 0.3);
        let cpt = bx.line_point();
        assert!((cpt - real(0.3)).norm() < 1e-15);
        assert!(bx.contains(BoxRegion::W1, real(0.29)));
        assert!(!bx.contains(BoxRegion::W1, real(0.31)));
    }

    #[test]
    fn zero_offset_has_no_slack() {
        let bx = BoxSystem1D::with_offset(real(-2.0), 0.0);
        assert_eq!(bx.inclusion_slack(512), 0.0);
    }

    #[test]
    fn slack_at_minus_two_matches_hand_estimate() {
        // the binding constraints are t and 2 − √(2 + t): t ≈ 0.438
        let eps = estimate_epsilon(real(-2.0)).unwrap();
        let t_star = {
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..60 {
                let m = 0.5 * (lo + hi);
                if m < 2.0 - (2.0 + m).sqrt() {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            lo
        };
        assert!((eps - t_star).abs() < 5e-3, "{eps} vs {t_star}");
    }

    #[test]
    fn outside_w1_is_an_error() {
        assert!(matches!(estimate_epsilon(real(-0.5)), Err(OneDimError::OutsideW1(_))));
    }

    #[test]
    fn boxes_are_conjugation_symmetric() {
        let a = c(-2.4, 0.7);
        let bx = BoxSystem1D::with_offset(a, 0.3);
        let bc = BoxSystem1D::with_offset(a.conj(), 0.3);
        let regions = [
            BoxRegion::E0,
            BoxRegion::E1,
            BoxRegion::W0,
            BoxRegion::W1,
            BoxRegion::D0,
            BoxRegion::D1,
            BoxRegion::D2,
        ];
        for i in 0..40 {
            for j in 0..40 {
                let z = c(-4.0 + 0.2 * i as f64 + 0.013, -4.0 + 0.2 * j as f64 + 0.007);
                for r in regions {
                    assert_eq!(bx.contains(r, z), bc.contains(r, z.conj()), "{r} {z}");
                }
            }
        }
    }
}
