//! Count closed paths of each length in the fixed transition graphs.

use horseshoe::symbolic::{periodic_points, GraphTag, TransitionGraph};

pub fn main() {
    for tag in [GraphTag::E, GraphTag::G, GraphTag::G0, GraphTag::Ghat] {
        let g = TransitionGraph::named(tag).expect("fixed graph");
        let counts: Vec<String> = (1..=6)
            .map(|n| {
                let all = periodic_points(&g, n, false).len();
                let exact = periodic_points(&g, n, true).len();
                format!("{all}/{exact}")
            })
            .collect();
        println!("{tag:>5} ({} vertices): {}", g.vertex_count(), counts.join(" "));
    }
    let e = TransitionGraph::named(GraphTag::E).unwrap();
    let p4: Vec<String> = periodic_points(&e, 4, true).iter().map(ToString::to_string).collect();
    println!("exact period 4 in the 2-shift: {}", p4.join(" "));
}
