use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::CyclicWord;
use super::SymbolicError;

/// A bijection of a finite set of periodic points.
///
/// Loop monodromy, restricted to period-`N` points, is reported in this form.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodePermutation {
    map: BTreeMap<CyclicWord, CyclicWord>,
}

impl CodePermutation {
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (CyclicWord, CyclicWord)>,
    ) -> Result<Self, SymbolicError> {
        let map: BTreeMap<_, _> = pairs.into_iter().collect();
        let domain: BTreeSet<_> = map.keys().collect();
        let image: BTreeSet<_> = map.values().collect();
        if domain != image {
            return Err(SymbolicError::NotBijective);
        }
        Ok(Self { map })
    }

    pub fn identity(domain: impl IntoIterator<Item = CyclicWord>) -> Self {
        Self {
            map: domain.into_iter().map(|w| (w.clone(), w)).collect(),
        }
    }

    pub fn from_fn(
        domain: impl IntoIterator<Item = CyclicWord>,
        f: impl Fn(&CyclicWord) -> CyclicWord,
    ) -> Result<Self, SymbolicError> {
        Self::from_pairs(domain.into_iter().map(|w| {
            let img = f(&w);
            (w, img)
        }))
    }

    pub fn apply(&self, w: &CyclicWord) -> Option<&CyclicWord> {
        self.map.get(w)
    }

    pub fn domain(&self) -> impl Iterator<Item = &CyclicWord> {
        self.map.keys()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&CyclicWord, &CyclicWord)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, SymbolicError> {
        if self.map.len() != other.map.len() || !self.map.keys().eq(other.map.keys()) {
            return Err(SymbolicError::DomainMismatch);
        }
        Ok(Self {
            map: other
                .map
                .iter()
                .map(|(k, v)| (k.clone(), self.map[v].clone()))
                .collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            map: self.map.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| k == v)
    }

    /// Nontrivial cycles, each starting at its least element, sorted.
    pub fn cycles(&self) -> Vec<Vec<CyclicWord>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.map.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut cycle = vec![start.clone()];
            seen.insert(start.clone());
            let mut cur = &self.map[start];
            while cur != start {
                seen.insert(cur.clone());
                cycle.push(cur.clone());
                cur = &self.map[cur];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Multiset of cycle lengths (including fixed points), sorted.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, self.len() - moved));
        t.sort_unstable();
        t
    }

    /// Group order of the permutation.
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    /// `p(σw) = σ p(w)` for every point whose shift is in the domain.
    pub fn commutes_with_shift(&self) -> bool {
        self.map.iter().all(|(k, v)| match self.map.get(&k.shift()) {
            Some(img) => *img == v.shift(),
            None => false,
        })
    }

    pub fn preserves_primitive_period(&self) -> bool {
        self.map
            .iter()
            .all(|(k, v)| k.primitive_period() == v.primitive_period())
    }

    /// Cycle notation over code words, e.g. `(0 1)(01 10)`; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Debug for CodePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

impl fmt::Display for CodePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::block_code::{apply_block_code, SlidingBlockCode};
    use crate::symbolic::graph::{build_graph, periodic_points};
    use crate::symbolic::word::word;

    fn per4() -> Vec<CyclicWord> {
        periodic_points(&build_graph("E").unwrap(), 4, false)
            .into_iter()
            .collect()
    }

    fn induced(code: &SlidingBlockCode) -> CodePermutation {
        CodePermutation::from_fn(per4(), |w| apply_block_code(code, w).unwrap()).unwrap()
    }

    #[test]
    fn swap_permutation_shape() {
        let c = induced(&SlidingBlockCode::swap());
        assert_eq!(c.order(), 2);
        assert!(c.commutes_with_shift());
        assert!(c.preserves_primitive_period());
        assert_eq!(c.cycles().len(), 8);
        assert_eq!(c.apply(&word("0001")), Some(&word("1110")));
    }

    #[test]
    fn non_bijection_rejected() {
        let r = CodePermutation::from_fn(per4(), |_| word("0000"));
        assert!(matches!(r, Err(SymbolicError::NotBijective)));
    }

    #[test]
    fn compose_and_inverse() {
        let f = induced(&SlidingBlockCode::brown());
        let s = induced(&SlidingBlockCode::shift(2));
        let fs = f.compose(&s).unwrap();
        let sf = s.compose(&f).unwrap();
        assert_eq!(fs, sf);
        assert!(f.compose(&f.inverse()).unwrap().is_identity());
        assert!(f.commutes_with_shift());
        assert_eq!(s.order(), 4);
    }

    #[test]
    fn identity_notation() {
        let id = CodePermutation::identity(per4());
        assert_eq!(id.cycle_notation(), "()");
        assert_eq!(id.order(), 1);
        assert_eq!(id.cycle_type(), vec![1; 16]);
    }
}
