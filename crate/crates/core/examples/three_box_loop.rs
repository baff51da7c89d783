//! Three-box codes are unchanged by continuation around a loop inside the
//! three-box region.

use std::f64::consts::PI;

use horseshoe::continuation::{theorem5_check, ParamPath};
use horseshoe::cx::real;

pub fn main() {
    let path = ParamPath::circle_a(real(-2.3), 0.02, real(0.05), PI, 32);
    let r = theorem5_check(&path, 3).unwrap();
    println!("N = {}, permutation {}, passed {}", r.n, r.permutation, r.passed);
    for o in &r.orbits {
        let start: Vec<String> = o.start.iter().map(ToString::to_string).collect();
        println!("  {} -> {}  G {{{}}}", o.word, o.landing, start.join(","));
    }
}
