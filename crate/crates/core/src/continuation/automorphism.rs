use std::collections::{BTreeSet, VecDeque};

use crate::symbolic::{apply_block_code, CodePermutation, CyclicWord, SlidingBlockCode};

/// Default longest generator word tried by [`match_automorphism`].
pub const DEFAULT_GENERATOR_BUDGET: usize = 4;

/// The actions of `C`, `F` and `S` (the shift) on the domain of `perm`.
pub fn generator_actions(domain: &[CyclicWord]) -> Vec<(char, CodePermutation)> {
    [
        ('C', SlidingBlockCode::swap()),
        ('F', SlidingBlockCode::brown()),
        ('S', SlidingBlockCode::shift(2)),
    ]
    .into_iter()
    .filter_map(|(name, code)| {
        let pairs = domain
            .iter()
            .map(|w| apply_block_code(&code, w).map(|img| (w.clone(), img)))
            .collect::<Result<Vec<_>, _>>()
            .ok()?;
        CodePermutation::from_pairs(pairs).ok().map(|p| (name, p))
    })
    .collect()
}

/// Shortest word in `C`, `F`, `S` whose action on the period-`N` points
/// agrees with `perm`, searched breadth first up to `budget` letters.
///
/// Words read as compositions: `"CF"` is `C ∘ F`. The identity matches
/// the empty word.
pub fn match_automorphism(perm: &CodePermutation, budget: usize) -> Option<String> {
    let domain: Vec<CyclicWord> = perm.domain().cloned().collect();
    if domain.is_empty() {
        return None;
    }
    let gens = generator_actions(&domain);
    let start = CodePermutation::identity(domain.iter().cloned());
    let key = |p: &CodePermutation| -> Vec<CyclicWord> { p.pairs().map(|(_, v)| v.clone()).collect() };
    let mut seen = BTreeSet::from([key(&start)]);
    let mut queue = VecDeque::from([(start, String::new())]);
    while let Some((p, name)) = queue.pop_front() {
        if &p == perm {
            return Some(name);
        }
        if name.chars().count() >= budget {
            continue;
        }
        for (g, gp) in &gens {
            let next = gp.compose(&p).expect("shared domain");
            if seen.insert(key(&next)) {
                queue.push_back((next, format!("{g}{name}")));
            }
        }
    }
    None
}
