use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::word::CyclicWord;
use super::SymbolicError;

/// A sliding block code on full shifts: `y_n = rule(x_{n+o}, …, x_{n+o+w−1})`
/// where `w` is the window width and `o` the offset of the window's first
/// cell relative to `n`.
///
/// The rule is stored as a total table indexed by the window read as a base-`k`
/// number, first cell most significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlidingBlockCode {
    name: String,
    window: usize,
    offset: isize,
    input_alphabet: u8,
    output_alphabet: u8,
    table: Vec<u8>,
}

/// Outcome of [`code_bijectivity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bijectivity {
    pub injective: bool,
    pub surjective: bool,
}

impl SlidingBlockCode {
    pub fn from_table(
        name: impl Into<String>,
        window: usize,
        offset: isize,
        input_alphabet: u8,
        output_alphabet: u8,
        table: Vec<u8>,
    ) -> Result<Self, SymbolicError> {
        if window == 0 || input_alphabet == 0 || output_alphabet == 0 {
            return Err(SymbolicError::BadCode("window and alphabets must be nonzero".into()));
        }
        let expected = (input_alphabet as usize).pow(window as u32);
        if table.len() != expected {
            return Err(SymbolicError::BadCode(format!(
                "rule table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&s| s >= output_alphabet) {
            return Err(SymbolicError::BadCode(format!("rule emits symbol {bad}")));
        }
        Ok(Self {
            name: name.into(),
            window,
            offset,
            input_alphabet,
            output_alphabet,
            table,
        })
    }

    /// Tabulate `rule` over every window.
    pub fn from_rule(
        name: impl Into<String>,
        window: usize,
        offset: isize,
        input_alphabet: u8,
        output_alphabet: u8,
        rule: impl Fn(&[u8]) -> u8,
    ) -> Result<Self, SymbolicError> {
        let k = input_alphabet as usize;
        let total = k.pow(window as u32);
        let mut cells = vec![0u8; window];
        let table = (0..total)
            .map(|idx| {
                decode_index(idx, k, &mut cells);
                rule(&cells)
            })
            .collect();
        Self::from_table(name, window, offset, input_alphabet, output_alphabet, table)
    }

    pub fn identity(alphabet: u8) -> Self {
        Self::from_rule("id", 1, 0, alphabet, alphabet, |x| x[0]).expect("valid")
    }

    /// The symbol swap `C` on the 2-shift.
    pub fn swap() -> Self {
        Self::from_rule("C", 1, 0, 2, 2, |x| 1 - x[0]).expect("valid")
    }

    /// The shift `σ`: `y_n = x_{n+1}`.
    pub fn shift(alphabet: u8) -> Self {
        Self::from_rule("S", 1, 1, alphabet, alphabet, |x| x[0]).expect("valid")
    }

    /// Brown's automorphism `y_n = x_{n+2} + x_n (1 + x_{n+1}) x_{n+3}` over
    /// the two-element field.
    pub fn brown() -> Self {
        Self::from_rule("F", 4, 0, 2, 2, |x| (x[2] + x[0] * (1 ^ x[1]) * x[3]) & 1).expect("valid")
    }

    /// Constant rule; neither injective nor surjective on a nontrivial shift.
    pub fn constant(alphabet: u8, value: u8) -> Self {
        Self::from_rule(format!("const{value}"), 1, 0, alphabet, alphabet, |_| value)
            .expect("value within alphabet")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn offset(&self) -> isize {
        self.offset
    }

    pub fn input_alphabet(&self) -> u8 {
        self.input_alphabet
    }

    pub fn output_alphabet(&self) -> u8 {
        self.output_alphabet
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Evaluate the local rule on one window.
    pub fn rule(&self, cells: &[u8]) -> u8 {
        debug_assert_eq!(cells.len(), self.window);
        let k = self.input_alphabet as usize;
        let idx = cells.iter().fold(0usize, |acc, &c| acc * k + c as usize);
        self.table[idx]
    }

    /// Apply to a linear block; output has `len − w + 1` symbols.
    pub fn apply_block(&self, block: &[u8]) -> Vec<u8> {
        if block.len() < self.window {
            return Vec::new();
        }
        block.windows(self.window).map(|w| self.rule(w)).collect()
    }

    fn check_word(&self, word: &CyclicWord) -> Result<(), SymbolicError> {
        match word.symbols().iter().find(|&&s| s >= self.input_alphabet) {
            Some(s) => Err(SymbolicError::NotAdmissible(format!(
                "symbol {s} of {word} outside the {}-symbol input alphabet of {}",
                self.input_alphabet, self.name
            ))),
            None => Ok(()),
        }
    }
}

fn decode_index(mut idx: usize, k: usize, cells: &mut [u8]) {
    for slot in cells.iter_mut().rev() {
        *slot = (idx % k) as u8;
        idx /= k;
    }
}

/// Apply a code to a periodic point; indices wrap cyclically.
pub fn apply_block_code(
    code: &SlidingBlockCode,
    word: &CyclicWord,
) -> Result<CyclicWord, SymbolicError> {
    code.check_word(word)?;
    let mut cells = vec![0u8; code.window];
    let out = (0..word.len() as isize)
        .map(|n| {
            for (j, cell) in cells.iter_mut().enumerate() {
                *cell = word.at(n + code.offset + j as isize);
            }
            code.rule(&cells)
        })
        .collect();
    CyclicWord::new(out)
}

/// `outer ∘ inner`: apply `inner` first.
pub fn compose_block_codes(
    outer: &SlidingBlockCode,
    inner: &SlidingBlockCode,
) -> Result<SlidingBlockCode, SymbolicError> {
    if inner.output_alphabet != outer.input_alphabet {
        return Err(SymbolicError::AlphabetMismatch {
            inner: inner.output_alphabet,
            outer: outer.input_alphabet,
        });
    }
    let window = outer.window + inner.window - 1;
    let name = match (outer.name.as_str(), inner.name.as_str()) {
        ("id", n) | (n, "id") => n.to_string(),
        (o, i) => format!("{o}{i}"),
    };
    SlidingBlockCode::from_rule(
        name,
        window,
        outer.offset + inner.offset,
        inner.input_alphabet,
        outer.output_alphabet,
        |x| {
            let mid = inner.apply_block(x);
            outer.rule(&mid)
        },
    )
}

/// Decide injectivity and surjectivity of an endomorphism of a full shift.
///
/// Injectivity: in the pair graph on equal-image window pairs, trim every
/// vertex that lies on no bi-infinite path; the code is injective iff only
/// diagonal pairs survive. Surjectivity: every output block of length `n`
/// must have exactly `k^(w−1)` preimage blocks, checked for `n ≤ 2w`.
pub fn code_bijectivity(code: &SlidingBlockCode) -> Bijectivity {
    Bijectivity {
        injective: is_injective(code),
        surjective: is_balanced(code, 2 * code.window),
    }
}

/// Pair graph: vertices are pairs of `w`-blocks with equal image, edges
/// shift both blocks by one appended symbol.
struct PairGraph {
    blocks: usize,
    vertices: Vec<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl PairGraph {
    fn build(code: &SlidingBlockCode) -> Self {
        let k = code.input_alphabet as usize;
        let blocks = k.pow(code.window as u32);
        let mut id = vec![usize::MAX; blocks * blocks];
        let mut vertices = Vec::new();
        for u in 0..blocks {
            for v in 0..blocks {
                if code.table[u] == code.table[v] {
                    id[u * blocks + v] = vertices.len();
                    vertices.push((u, v));
                }
            }
        }
        let mut succ = vec![Vec::new(); vertices.len()];
        let mut pred = vec![Vec::new(); vertices.len()];
        let tail = blocks / k;
        for (i, &(u, v)) in vertices.iter().enumerate() {
            for a in 0..k {
                for b in 0..k {
                    let u2 = (u % tail) * k + a;
                    let v2 = (v % tail) * k + b;
                    let j = id[u2 * blocks + v2];
                    if j != usize::MAX {
                        succ[i].push(j);
                        pred[j].push(i);
                    }
                }
            }
        }
        Self {
            blocks,
            vertices,
            succ,
            pred,
        }
    }

    /// Vertices lying on some bi-infinite path.
    fn essential(&self) -> Vec<bool> {
        let n = self.vertices.len();
        let mut alive = vec![true; n];
        let mut out_deg: Vec<usize> = self.succ.iter().map(Vec::len).collect();
        let mut in_deg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| out_deg[i] == 0 || in_deg[i] == 0).collect();
        while let Some(i) = queue.pop_front() {
            if !alive[i] {
                continue;
            }
            alive[i] = false;
            for &j in &self.succ[i] {
                if alive[j] {
                    in_deg[j] -= 1;
                    if in_deg[j] == 0 {
                        queue.push_back(j);
                    }
                }
            }
            for &j in &self.pred[i] {
                if alive[j] {
                    out_deg[j] -= 1;
                    if out_deg[j] == 0 {
                        queue.push_back(j);
                    }
                }
            }
        }
        alive
    }

    fn reachable(&self, from: impl Iterator<Item = usize>, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack: Vec<usize> = from.collect();
        for &i in &stack {
            seen[i] = true;
        }
        while let Some(i) = stack.pop() {
            let next = if forward { &self.succ[i] } else { &self.pred[i] };
            for &j in next {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen
    }
}

fn is_injective(code: &SlidingBlockCode) -> bool {
    if code.input_alphabet != code.output_alphabet {
        return false;
    }
    let pg = PairGraph::build(code);
    let alive = pg.essential();
    debug_assert!(pg.blocks > 0);
    pg.vertices
        .iter()
        .zip(&alive)
        .all(|(&(u, v), &ok)| !ok || u == v)
}

/// Diamond test: a path leaving the diagonal and returning to it. For
/// endomorphisms of a full shift, no diamond is equivalent to surjectivity.
pub fn has_diamond(code: &SlidingBlockCode) -> bool {
    let pg = PairGraph::build(code);
    let diag = pg
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| u == v)
        .map(|(i, _)| i);
    let from_diag = pg.reachable(diag.clone(), true);
    let to_diag = pg.reachable(diag, false);
    pg.vertices
        .iter()
        .enumerate()
        .any(|(i, &(u, v))| u != v && from_diag[i] && to_diag[i])
}

fn is_balanced(code: &SlidingBlockCode, max_len: usize) -> bool {
    if code.input_alphabet != code.output_alphabet {
        return false;
    }
    let k = code.input_alphabet as usize;
    let w = code.window;
    let expected = k.pow(w as u32 - 1);
    let mut block = Vec::new();
    for n in 1..=max_len {
        let len = n + w - 1;
        let Some(total) = k.checked_pow(len as u32) else {
            break;
        };
        if total > 1 << 24 {
            break;
        }
        let mut counts = vec![0usize; k.pow(n as u32)];
        block.resize(len, 0);
        for idx in 0..total {
            decode_index(idx, k, &mut block);
            let image = code
                .apply_block(&block)
                .iter()
                .fold(0usize, |acc, &s| acc * k + s as usize);
            counts[image] += 1;
        }
        if counts.iter().any(|&c| c != expected) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::graph::{build_graph, periodic_points};
    use crate::symbolic::word::{all_words, word};

    #[test]
    fn brown_quoted_values() {
        let f = SlidingBlockCode::brown();
        assert_eq!(apply_block_code(&f, &word("0001")).unwrap(), word("0100"));
        assert_eq!(apply_block_code(&f, &word("0011")).unwrap(), word("1101"));
    }

    #[test]
    fn identity_fixes_everything() {
        let id = SlidingBlockCode::identity(3);
        for w in all_words(3, 4) {
            assert_eq!(apply_block_code(&id, &w).unwrap(), w);
        }
    }

    #[test]
    fn swap_is_an_involution() {
        let c = SlidingBlockCode::swap();
        let cc = compose_block_codes(&c, &c).unwrap();
        let e = build_graph("E").unwrap();
        for n in 1..=6 {
            for w in periodic_points(&e, n, false) {
                assert_eq!(apply_block_code(&cc, &w).unwrap(), w);
            }
        }
    }

    #[test]
    fn brown_commutes_with_shift() {
        let f = SlidingBlockCode::brown();
        let s = SlidingBlockCode::shift(2);
        let sf = compose_block_codes(&s, &f).unwrap();
        let fs = compose_block_codes(&f, &s).unwrap();
        for w in all_words(2, 4) {
            assert_eq!(
                apply_block_code(&sf, &w).unwrap(),
                apply_block_code(&fs, &w).unwrap()
            );
        }
    }

    #[test]
    fn f_after_c_on_0001() {
        let fc = compose_block_codes(&SlidingBlockCode::brown(), &SlidingBlockCode::swap()).unwrap();
        let direct = apply_block_code(&SlidingBlockCode::brown(), &word("1110")).unwrap();
        assert_eq!(apply_block_code(&fc, &word("0001")).unwrap(), direct);
        assert_eq!(fc.window(), 4);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let codes = [
            SlidingBlockCode::brown(),
            SlidingBlockCode::swap(),
            SlidingBlockCode::shift(2),
            SlidingBlockCode::identity(2),
        ];
        for outer in &codes {
            for inner in &codes {
                let comp = compose_block_codes(outer, inner).unwrap();
                assert_eq!(comp.window(), outer.window() + inner.window() - 1);
                for n in 1..=8 {
                    for w in all_words(2, n) {
                        let seq = apply_block_code(outer, &apply_block_code(inner, &w).unwrap()).unwrap();
                        assert_eq!(apply_block_code(&comp, &w).unwrap(), seq);
                    }
                }
            }
        }
    }

    #[test]
    fn alphabet_mismatch() {
        let id3 = SlidingBlockCode::identity(3);
        assert!(matches!(
            compose_block_codes(&SlidingBlockCode::swap(), &id3),
            Err(SymbolicError::AlphabetMismatch { .. })
        ));
        assert!(apply_block_code(&SlidingBlockCode::swap(), &word("012")).is_err());
    }

    #[test]
    fn bijectivity_examples() {
        let both = Bijectivity { injective: true, surjective: true };
        assert_eq!(code_bijectivity(&SlidingBlockCode::brown()), both);
        assert_eq!(code_bijectivity(&SlidingBlockCode::swap()), both);
        assert_eq!(code_bijectivity(&SlidingBlockCode::shift(2)), both);
        assert_eq!(
            code_bijectivity(&SlidingBlockCode::constant(2, 0)),
            Bijectivity { injective: false, surjective: false }
        );
    }

    #[test]
    fn xor_map_is_onto_but_not_one_to_one() {
        // y_n = x_n + x_{n+1}: 2-to-1, balanced
        let xor = SlidingBlockCode::from_rule("xor", 2, 0, 2, 2, |x| x[0] ^ x[1]).unwrap();
        assert_eq!(
            code_bijectivity(&xor),
            Bijectivity { injective: false, surjective: true }
        );
        assert!(!has_diamond(&xor));
    }

    #[test]
    fn brown_squared_is_fourth_shift() {
        let f = SlidingBlockCode::brown();
        let ff = compose_block_codes(&f, &f).unwrap();
        let e = build_graph("E").unwrap();
        for n in 1..=8 {
            for w in periodic_points(&e, n, false) {
                assert_eq!(apply_block_code(&ff, &w).unwrap(), w.shift_by(4));
            }
        }
        let moved = periodic_points(&e, 5, true)
            .into_iter()
            .filter(|w| apply_block_code(&ff, w).unwrap() != *w)
            .count();
        assert_eq!(moved, 30);
    }
}
