//! Classify single parameters and, for real ones, their real type.

use horseshoe::cx::c;
use horseshoe::henon::HenonParams;
use horseshoe::scanner::{classify_parameter, classify_real_type, recheck_witness, ClassifierOptions};

pub fn main() {
    let opts = ClassifierOptions::default();
    for (a, b) in [(c(-6.0, 0.0), 0.2), (c(6.0, 0.0), 0.2), (c(-1.2, 0.0), 0.05), (c(-2.5, 0.3), 0.2), (c(-1.8, 0.5), 0.2)] {
        let p = HenonParams::new(a, c(b, 0.0));
        let class = classify_parameter(p, &opts);
        let rechecked = recheck_witness(p, &class, &opts);
        print!("{p}: {} ({}), witness rechecks {rechecked}", class.verdict, class.witness.kind());
        if p.is_real() {
            print!(", {}", classify_real_type(p, 4, &opts).real_type);
        }
        println!();
    }
}
