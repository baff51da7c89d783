//! Recognise a permutation of period-`N` codes as a word in `C`, `F` and
//! the shift `S`.

use horseshoe::continuation::{generator_actions, match_automorphism, DEFAULT_GENERATOR_BUDGET};
use horseshoe::symbolic::all_words;

pub fn main() {
    let domain = all_words(2, 5);
    let actions = generator_actions(&domain);
    for (name, perm) in &actions {
        println!("{name}: order {}, cycle type {:?}", perm.order(), perm.cycle_type());
    }
    let get = |c: char| actions.iter().find(|(n, _)| *n == c).unwrap().1.clone();
    let cf = get('C').compose(&get('F')).unwrap();
    println!("C∘F matches {:?}", match_automorphism(&cf, DEFAULT_GENERATOR_BUDGET));
    let ff = get('F').compose(&get('F')).unwrap();
    println!("F∘F matches {:?}", match_automorphism(&ff, DEFAULT_GENERATOR_BUDGET));
}
