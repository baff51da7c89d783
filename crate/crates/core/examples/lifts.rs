//! Lift sector codes to the refined graph and project to three-box codes.
//! Words ending in a run of 1s lift twice.

use horseshoe::symbolic::{lift_codings, word, Projection};

pub fn main() {
    for top in ["0", "1", "01", "0011", "0111", "1101", "000111"] {
        let lifts = lift_codings(&word(top)).unwrap();
        let rows: Vec<String> = lifts
            .iter()
            .map(|p| format!("{} (G {})", p, p.project(Projection::G)))
            .collect();
        println!("{top:>6}: {} lift(s)  {}", lifts.len(), rows.join(", "));
    }
}
