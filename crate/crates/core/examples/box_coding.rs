//! Three-box codes of periodic cycles of `z² + a`.

use horseshoe::cx::{real, C64};
use horseshoe::one_dim::{code_cycle_g_1d, BoxSystem1D};

/// A cycle of `z² + a`, found by iterating the inverse branches picked
/// by `signs`.
fn cycle(a: C64, signs: &[bool]) -> Vec<C64> {
    let mut z = real(0.0);
    for _ in 0..200 {
        for &s in signs.iter().rev() {
            let w = (z - a).sqrt();
            z = if s { w } else { -w };
        }
    }
    let mut out = vec![z];
    for _ in 1..signs.len() {
        let next = out.last().unwrap() * out.last().unwrap() + a;
        out.push(next);
    }
    out
}

pub fn main() {
    let a = real(-2.3);
    let bx = BoxSystem1D::new(a);
    for signs in [vec![true], vec![false], vec![true, false], vec![true, true, false]] {
        let pts = cycle(a, &signs);
        let mut codes = code_cycle_g_1d(&bx, &pts).unwrap();
        if codes.is_empty() {
            codes = code_cycle_g_1d(&bx, &pts.repeat(2)).unwrap();
        }
        let shown: Vec<String> = codes.iter().map(ToString::to_string).collect();
        println!("{:<28} {{{}}}", format!("{:.4?}", pts.iter().map(|z| z.re).collect::<Vec<_>>()), shown.join(","));
    }
}
