//! Sector and three-box codes of the period-`N` points at a parameter inside
//! the three-box region.

use horseshoe::henon::{code_orbit, per_n, CodeScheme, HenonParams};

pub fn main() {
    let p = HenonParams::real(-2.3, 0.05);
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for o in per_n(p, n).unwrap() {
        let e = code_orbit(&o.orbit, CodeScheme::E).unwrap();
        let g = code_orbit(&o.orbit, CodeScheme::G).unwrap();
        println!("{}  E {e}  G {g}", o.word);
    }
}
