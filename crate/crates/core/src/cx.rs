//! Small complex-number helpers shared by the numerical modules.

pub use num_complex::Complex64 as C64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Unit complex number `e^{iφ/2}` where `φ = arg(a) ∈ [0, 2π)`.
///
/// Computed as the square root of `a/|a|` taken in the closed upper half
/// plane, so that `half_angle_unit(conj(a)) == -conj(half_angle_unit(a))`
/// holds bit-for-bit. Returns `1` for `a = 0`.
pub fn half_angle_unit(a: C64) -> C64 {
    let r = a.norm();
    if r == 0.0 || !r.is_finite() {
        return ONE;
    }
    let unit = a / r;
    let mut u = unit.sqrt();
    if u.im < 0.0 || (u.im == 0.0 && u.re < 0.0) {
        u = -u;
    }
    if u.im == 0.0 {
        // a on the positive real axis: φ = 0
        u = C64::new(u.re.abs(), 0.0);
    }
    u
}

/// `arg(a)` normalised to `[0, 2π)`.
pub fn arg_0_2pi(a: C64) -> f64 {
    let t = a.im.atan2(a.re);
    if t < 0.0 {
        t + std::f64::consts::TAU
    } else {
        t
    }
}

/// Supremum-norm distance between two equal-length complex sequences.
pub fn sup_dist(u: &[C64], v: &[C64]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(p, q)| (p - q).norm())
        .fold(0.0, f64::max)
}

/// Largest modulus in a sequence.
pub fn sup_norm(u: &[C64]) -> f64 {
    u.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
