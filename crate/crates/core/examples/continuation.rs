//! Continue a family of saddle cycles along a path in parameter space.

use horseshoe::continuation::{continue_orbits, ContinuationOptions, ParamPath};
use horseshoe::cx::c;
use horseshoe::henon::{orbit_multipliers, per_n, HenonParams};

pub fn main() {
    let start = HenonParams::real(-6.0, 0.2);
    let end = HenonParams::new(c(-3.0, 1.5), c(0.1, 0.05));
    let orbits = per_n(start, 3).unwrap();
    let path = ParamPath::segment(start, end).unwrap();
    let seeds: Vec<_> = orbits.iter().map(|o| o.orbit.clone()).collect();
    let run = continue_orbits(&seeds, &path, &ContinuationOptions::default()).unwrap();
    println!("{} orbits, {} steps accepted, {} rejected", seeds.len(), run.accepted, run.rejected);
    for ((o, e), m) in orbits.iter().zip(&run.end).zip(&run.min_margin) {
        let info = orbit_multipliers(e);
        println!("{}  y0 {:.5}  unstable {}  margin along path {m:.4}", o.word, e.y[0], info.unstable);
    }

    let into_channel = ParamPath::segment(HenonParams::real(-6.0, 0.05), HenonParams::real(-1.2, 0.05)).unwrap();
    let seeds: Vec<_> = per_n(HenonParams::real(-6.0, 0.05), 2)
        .unwrap()
        .into_iter()
        .map(|o| o.orbit)
        .collect();
    match continue_orbits(&seeds, &into_channel, &ContinuationOptions::default()) {
        Ok(_) => println!("reached a = -1.2"),
        Err(e) => println!("towards a = -1.2: {e}"),
    }
}
