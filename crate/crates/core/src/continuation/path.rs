use serde::{Deserialize, Serialize};

use super::ContinuationError;
use crate::cx::C64;
use crate::henon::HenonParams;

/// A polyline in parameter space `ℂ²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamPath {
    waypoints: Vec<HenonParams>,
    closed: bool,
}

impl ParamPath {
    /// Validate a polyline: consecutive waypoints must differ, and a closed
    /// path must end where it starts.
    pub fn new(waypoints: Vec<HenonParams>, closed: bool) -> Result<Self, ContinuationError> {
        if waypoints.is_empty() {
            return Err(ContinuationError::BadPath("no waypoints".into()));
        }
        if let Some(p) = waypoints.iter().find(|p| !p.is_finite()) {
            return Err(ContinuationError::BadPath(format!("non-finite waypoint {p}")));
        }
        if let Some(w) = waypoints.windows(2).position(|w| w[0] == w[1]) {
            return Err(ContinuationError::BadPath(format!(
                "waypoints {w} and {} coincide",
                w + 1
            )));
        }
        if closed && waypoints.first().unwrap().distance(waypoints.last().unwrap()) > 1e-12 {
            return Err(ContinuationError::BadPath(
                "closed path must end at its start".into(),
            ));
        }
        Ok(Self { waypoints, closed })
    }

    /// Closed loop through `points`, returning to the first.
    pub fn closed_loop(mut points: Vec<HenonParams>) -> Result<Self, ContinuationError> {
        if let Some(&first) = points.first() {
            if points.last() != Some(&first) || points.len() == 1 {
                points.push(first);
            }
        }
        Self::new(points, true)
    }

    /// The constant path at `p` (a single waypoint).
    pub fn constant(p: HenonParams) -> Self {
        Self {
            waypoints: vec![p],
            closed: true,
        }
    }

    pub fn segment(from: HenonParams, to: HenonParams) -> Result<Self, ContinuationError> {
        Self::new(vec![from, to], false)
    }

    /// Circle in the `a`-plane with `b` fixed, starting and ending at
    /// `center + radius·e^{i·start_angle}`, counterclockwise.
    pub fn circle_a(center: C64, radius: f64, b: C64, start_angle: f64, samples: usize) -> Self {
        let pts = circle_points(center, radius, start_angle, samples)
            .map(|a| HenonParams::new(a, b))
            .collect();
        Self::closed_loop(pts).expect("circle samples are distinct")
    }

    /// Circle in the `b`-plane with `a` fixed.
    pub fn circle_b(a: C64, center: C64, radius: f64, start_angle: f64, samples: usize) -> Self {
        let pts = circle_points(center, radius, start_angle, samples)
            .map(|b| HenonParams::new(a, b))
            .collect();
        Self::closed_loop(pts).expect("circle samples are distinct")
    }

    /// Arc in the `a`-plane from angle `from` to angle `to` (radians,
    /// traversed in the sign of `to − from`).
    pub fn arc_a(center: C64, radius: f64, b: C64, from: f64, to: f64, samples: usize) -> Self {
        let samples = samples.max(1);
        let pts = (0..=samples)
            .map(|k| {
                let th = from + (to - from) * k as f64 / samples as f64;
                HenonParams::new(center + C64::from_polar(radius, th), b)
            })
            .collect();
        Self::new(pts, false).expect("arc samples are distinct")
    }

    pub fn waypoints(&self) -> &[HenonParams] {
        &self.waypoints
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn start(&self) -> HenonParams {
        self.waypoints[0]
    }

    pub fn end(&self) -> HenonParams {
        *self.waypoints.last().expect("nonempty")
    }

    pub fn length(&self) -> f64 {
        self.waypoints.windows(2).map(|w| w[0].distance(&w[1])).sum()
    }

    /// Follow `self`, then `other`; `other` must start where `self` ends.
    pub fn concat(&self, other: &Self) -> Result<Self, ContinuationError> {
        if self.end().distance(&other.start()) > 1e-12 {
            return Err(ContinuationError::BadPath(
                "paths do not join end to start".into(),
            ));
        }
        let mut pts = self.waypoints.clone();
        pts.extend_from_slice(&other.waypoints[1..]);
        let closed = pts.len() > 1 && pts[0].distance(pts.last().unwrap()) <= 1e-12;
        if closed {
            let first = pts[0];
            *pts.last_mut().unwrap() = first;
        }
        Self::new(pts, closed)
    }

    pub fn reversed(&self) -> Self {
        let mut pts = self.waypoints.clone();
        pts.reverse();
        Self {
            waypoints: pts,
            closed: self.closed,
        }
    }

    /// The complex-conjugate path.
    pub fn conj(&self) -> Self {
        Self {
            waypoints: self.waypoints.iter().map(HenonParams::conj).collect(),
            closed: self.closed,
        }
    }

    /// Insert midpoints until every segment is at most `max_len` long.
    pub fn refined(&self, max_len: f64) -> Self {
        let mut pts = vec![self.waypoints[0]];
        for w in self.waypoints.windows(2) {
            let pieces = (w[0].distance(&w[1]) / max_len).ceil().max(1.0) as usize;
            for k in 1..=pieces {
                pts.push(w[0].lerp(&w[1], k as f64 / pieces as f64));
            }
        }
        if self.closed {
            *pts.last_mut().unwrap() = pts[0];
        }
        Self {
            waypoints: pts,
            closed: self.closed,
        }
    }
}

fn circle_points(
    center: C64,
    radius: f64,
    start_angle: f64,
    samples: usize,
) -> impl Iterator<Item = C64> {
    let samples = samples.max(3);
    (0..samples).map(move |k| {
        let th = start_angle + std::f64::consts::TAU * k as f64 / samples as f64;
        center + C64::from_polar(radius, th)
    })
}
