use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{HenonError, HenonParams};
use crate::cx::C64;

/// A period-`N` solution of the `y`-recurrence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicOrbit {
    pub params: HenonParams,
    pub y: Vec<C64>,
    /// Largest recurrence defect `|y_{n+1} − y_n² − a + b·y_{n−1}|`.
    pub residual: f64,
}

impl CyclicOrbit {
    pub fn period(&self) -> usize {
        self.y.len()
    }

    /// Point `n` of the orbit, `(y_{n+1}, y_n)`.
    pub fn point(&self, n: usize) -> (C64, C64) {
        let len = self.y.len();
        (self.y[(n + 1) % len], self.y[n % len])
    }

    pub fn conj(&self) -> Self {
        Self {
            params: self.params.conj(),
            y: self.y.iter().map(|z| z.conj()).collect(),
            residual: self.residual,
        }
    }

    /// Largest `|Im y_n|`.
    pub fn max_imag(&self) -> f64 {
        self.y.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// Recurrence defects `F_n = y_{n+1} − y_n² − a + b·y_{n−1}`.
pub(crate) fn defects(p: HenonParams, y: &[C64]) -> Vec<C64> {
    let n = y.len();
    (0..n)
        .map(|i| y[(i + 1) % n] - y[i] * y[i] - p.a + p.b * y[(i + n - 1) % n])
        .collect()
}

pub(crate) fn max_defect(p: HenonParams, y: &[C64]) -> f64 {
    defects(p, y).iter().map(|d| d.norm()).fold(0.0, f64::max)
}

/// `∂F/∂y` for the cyclic system; entries accumulate when `N ≤ 2`.
pub(crate) fn jacobian(p: HenonParams, y: &[C64]) -> DMatrix<C64> {
    let n = y.len();
    let mut j = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    for i in 0..n {
        j[(i, (i + 1) % n)] += C64::new(1.0, 0.0);
        j[(i, i)] += -2.0 * y[i];
        j[(i, (i + n - 1) % n)] += p.b;
    }
    j
}

/// Solve `J·x = rhs`; `None` when `J` is numerically singular.
pub(crate) fn solve_linear(j: DMatrix<C64>, rhs: &[C64]) -> Option<Vec<C64>> {
    let scale = j.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let lu = j.lu();
    let u = lu.u();
    let min_pivot = u.diagonal().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if min_pivot.is_nan() || min_pivot <= 1e-13 * scale {
        return None;
    }
    let x = lu.solve(&DVector::from_column_slice(rhs))?;
    x.iter().all(|z| z.is_finite()).then(|| x.iter().copied().collect())
}

/// First-order change of the cycle for a parameter change `(da, db)`:
/// `J·dy = da − db·y_{n−1}`.
pub(crate) fn tangent(p: HenonParams, y: &[C64], da: C64, db: C64) -> Option<Vec<C64>> {
    let n = y.len();
    let rhs: Vec<C64> = (0..n).map(|i| da - db * y[(i + n - 1) % n]).collect();
    solve_linear(jacobian(p, y), &rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    /// Converged once the largest defect is below `tolerance·(1 + max|y|²)`.
    pub tolerance: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            max_iterations: 60,
            tolerance: 1e-13,
        }
    }
}

pub(crate) enum NewtonFailure {
    Singular,
    Diverged { iterations: usize, residual: f64 },
}

/// Newton's method on the cyclic system from `y`.
pub(crate) fn newton(
    p: HenonParams,
    mut y: Vec<C64>,
    opts: NewtonOptions,
) -> Result<(Vec<C64>, f64, usize), NewtonFailure> {
    let mut residual = max_defect(p, &y);
    for it in 0..=opts.max_iterations {
        let scale = 1.0 + y.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
        if residual <= opts.tolerance * scale {
            return Ok((y, residual, it));
        }
        if it == opts.max_iterations || !residual.is_finite() {
            break;
        }
        let rhs: Vec<C64> = defects(p, &y).iter().map(|d| -d).collect();
        let step = solve_linear(jacobian(p, &y), &rhs).ok_or(NewtonFailure::Singular)?;
        for (yi, di) in y.iter_mut().zip(&step) {
            *yi += di;
        }
        residual = max_defect(p, &y);
    }
    Err(NewtonFailure::Diverged {
        iterations: opts.max_iterations,
        residual,
    })
}

pub fn solve_periodic_orbit(
    params: HenonParams,
    period: usize,
    seed: &[C64],
) -> Result<CyclicOrbit, HenonError> {
    solve_periodic_orbit_with(params, period, seed, NewtonOptions::default())
}

/// Newton iteration on the period-`N` system with the full `N×N` Jacobian.
pub fn solve_periodic_orbit_with(
    params: HenonParams,
    period: usize,
    seed: &[C64],
    opts: NewtonOptions,
) -> Result<CyclicOrbit, HenonError> {
    if period == 0 {
        return Err(HenonError::ZeroPeriod);
    }
    if seed.len() != period {
        return Err(HenonError::SeedLength {
            got: seed.len(),
            expected: period,
        });
    }
    match newton(params, seed.to_vec(), opts) {
        Ok((y, residual, _)) => Ok(CyclicOrbit { params, y, residual }),
        Err(NewtonFailure::Singular) => Err(HenonError::SingularJacobian),
        Err(NewtonFailure::Diverged { iterations, residual }) => {
            Err(HenonError::Divergence { iterations, residual })
        }
    }
}

/// Eigenvalues of the period-`N` derivative and how far they sit from the
/// unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaddleInfo {
    /// Ordered by decreasing modulus.
    pub multipliers: [C64; 2],
    /// `min ||λ| − 1|`.
    pub margin: f64,
    /// Multipliers outside the unit circle.
    pub unstable: usize,
}

impl SaddleInfo {
    pub fn is_saddle(&self) -> bool {
        self.unstable == 1
    }

    pub fn is_attracting(&self) -> bool {
        self.unstable == 0 && self.margin > 0.0
    }
}

/// Multipliers of `Df^N = Df(p_{N−1})⋯Df(p_0)`, `Df(x, y) = [[2x, −b], [1, 0]]`.
pub fn orbit_multipliers(orbit: &CyclicOrbit) -> SaddleInfo {
    multipliers_of(orbit.params, &orbit.y)
}

pub(crate) fn multipliers_of(p: HenonParams, y: &[C64]) -> SaddleInfo {
    let n = y.len();
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    // m = [[m00, m01], [m10, m11]]
    let (mut m00, mut m01, mut m10, mut m11) = (one, zero, zero, one);
    for i in 0..n {
        let x = y[(i + 1) % n];
        let (d00, d01, d10, d11) = (2.0 * x, -p.b, one, zero);
        let (n00, n01) = (d00 * m00 + d01 * m10, d00 * m01 + d01 * m11);
        let (n10, n11) = (d10 * m00 + d11 * m10, d10 * m01 + d11 * m11);
        m00 = n00;
        m01 = n01;
        m10 = n10;
        m11 = n11;
    }
    let tr = m00 + m11;
    let det = m00 * m11 - m01 * m10;
    let disc = (tr * tr - 4.0 * det).sqrt();
    let (r1, r2) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    let big = if r1.norm() >= r2.norm() { r1 } else { r2 };
    // the smaller root from the product avoids cancellation
    let small = if big.norm() > 0.0 { det / big } else { zero };
    let margin = (big.norm() - 1.0).abs().min((small.norm() - 1.0).abs());
    let unstable = [big, small].iter().filter(|z| z.norm() > 1.0).count();
    SaddleInfo {
        multipliers: [big, small],
        margin,
        unstable,
    }
}
