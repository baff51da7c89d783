//! Follow a path to a real parameter, come back along its conjugate, and
//! compare the monodromy with the reality of the period-`N` points.

use std::f64::consts::PI;

use horseshoe::continuation::{hat_loop_report, ParamPath};
use horseshoe::cx::real;
use horseshoe::henon::HenonParams;

pub fn main() {
    let base = HenonParams::real(-6.0, 0.2);
    let upper = ParamPath::arc_a(real(0.0), 6.0, real(0.2), PI, 0.0, 32);
    let r = hat_loop_report(base, &upper, 4).unwrap();
    println!(
        "to {}: {} (order {}, {:?}), {}/{} orbits real, {}, consistent {}",
        r.target, r.permutation, r.order, r.automorphism, r.real_orbits, r.total_orbits, r.real_type, r.consistent
    );

    let straight = ParamPath::segment(base, HenonParams::real(-5.0, 0.2)).unwrap();
    let r = hat_loop_report(base, &straight, 4).unwrap();
    println!("to {}: order {}, {}", r.target, r.order, r.real_type);
}
