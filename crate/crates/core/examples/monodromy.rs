//! Monodromy of the period-`N` points around loops in the HOV region,
//! matched against words in the swap, Brown's automorphism and the shift.

use std::f64::consts::PI;

use horseshoe::continuation::{monodromy, ParamPath};
use horseshoe::cx::{c, real};
use horseshoe::henon::HenonParams;

pub fn main() {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let base = HenonParams::real(-6.0, 0.2);

    let a_circle = ParamPath::circle_a(real(0.0), 6.0, real(0.2), PI, 64);
    let r = monodromy(base, &a_circle, n).unwrap();
    println!("a-circle |a| = 6: {} = {:?}", r.permutation, r.automorphism);
    println!("  {} steps, {} rejected, grade {:?}", r.accepted_steps, r.rejected_steps, r.grade);

    let b_circle = ParamPath::circle_b(real(-6.0), c(0.0, 0.0), 0.2, 0.0, 64);
    let r = monodromy(base, &b_circle, n).unwrap();
    println!("b-circle |b| = 0.2: order {} = {:?}", r.permutation.order(), r.automorphism);
}
