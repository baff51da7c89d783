use super::HenonError;
use crate::cx::{half_angle_unit, C64};
use crate::symbolic::CyclicWord;

/// The period-`N` orbit of `g(z) = z² + a` with the given two-piece
/// itinerary, by iterating inverse branches `±√(z − a)` around the cycle.
///
/// Symbol `0` is the piece that lies to the left at real `a < 0`: in the
/// rotated coordinate `u = z·e^{−iφ/2}` it is `Im u > 0`.
pub fn seed_orbit_1d(a: C64, word: &CyclicWord) -> Result<Vec<C64>, HenonError> {
    if a.norm() <= 2.0 {
        return Err(HenonError::SeedOutsideHov(a));
    }
    if let Some(&s) = word.symbols().iter().find(|&&s| s > 1) {
        return Err(HenonError::Continuation(format!("symbol {s} is not binary")));
    }
    let h = half_angle_unit(a);
    let s = word.symbols();
    let n = s.len();
    let branch = |w: C64, sym: u8| {
        let r = (w - a).sqrt();
        let upper = (r * h.conj()).im > 0.0;
        if upper == (sym == 0) {
            r
        } else {
            -r
        }
    };
    let mut z = vec![C64::new(0.0, 0.0); n];
    let mut last_change = f64::INFINITY;
    let mut contraction = 1.0;
    for sweep in 0..20_000 {
        let mut change: f64 = 0.0;
        for i in (0..n).rev() {
            let next = z[(i + 1) % n];
            let new = branch(next, s[i]);
            change = change.max((new - z[i]).norm());
            z[i] = new;
        }
        if sweep > 2 && last_change > 0.0 {
            contraction = change / last_change;
        }
        if change <= 1e-15 * (1.0 + a.norm()) {
            return Ok(z);
        }
        last_change = change;
    }
    Err(HenonError::SeedNoConvergence { contraction })
}
