//! All period-`N` points of the Hénon map at a horseshoe parameter, with
//! their multipliers.

use horseshoe::henon::{henon_step, orbit_multipliers, per_n, Direction, HenonParams};

pub fn main() {
    let p = HenonParams::real(-6.0, 0.2);
    let orbits = per_n(p, 4).unwrap();
    println!("{} period-4 points at {p}", orbits.len());
    for o in &orbits {
        let info = orbit_multipliers(&o.orbit);
        let mut z = o.orbit.point(0);
        for _ in 0..4 {
            z = henon_step(p, z, Direction::Forward).unwrap();
        }
        let back = (z.0 - o.orbit.point(0).0).norm();
        println!(
            "{}  y0 = {:>9.5}  |λ| = {:9.3e} {:9.3e}  unstable {}  f⁴ error {back:.1e}",
            o.word,
            o.orbit.y[0],
            info.multipliers[0].norm(),
            info.multipliers[1].norm(),
            info.unstable
        );
    }
}
