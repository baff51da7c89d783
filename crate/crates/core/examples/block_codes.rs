//! Sliding block codes on the 2-shift: the swap, the shift and Brown's
//! automorphism, their composites, and a bijectivity check.

use horseshoe::symbolic::{
    apply_block_code, code_bijectivity, compose_block_codes, word, SlidingBlockCode,
};

pub fn main() {
    let w = word("0001011");
    for code in [SlidingBlockCode::swap(), SlidingBlockCode::shift(2), SlidingBlockCode::brown()] {
        let image = apply_block_code(&code, &w).unwrap();
        let b = code_bijectivity(&code);
        println!(
            "{:>6}: {w} -> {image}  (window {}, injective {}, surjective {})",
            code.name(),
            code.window(),
            b.injective,
            b.surjective
        );
    }
    let f = SlidingBlockCode::brown();
    let ff = compose_block_codes(&f, &f).unwrap();
    let s4 = (0..4).fold(w.clone(), |x, _| x.shift());
    println!("F∘F({w}) = {}, σ⁴({w}) = {s4}", apply_block_code(&ff, &w).unwrap());

    let and = SlidingBlockCode::from_rule("and", 2, 0, 2, 2, |c| c[0] & c[1]).unwrap();
    println!("{:?}", code_bijectivity(&and));
}
