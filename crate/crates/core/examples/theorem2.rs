//! The period-4 obstruction: Brown's automorphism `F` is not generated by
//! the shift, the swap and automorphisms that preserve three-box codes.

use horseshoe::symbolic::theorem2_report;

pub fn main() {
    let report = theorem2_report().expect("the fixed listings parse");
    println!("{report}");
    println!("passed: {}", report.passed());
}
