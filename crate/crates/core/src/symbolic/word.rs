use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SymbolicError;

/// A periodic point of a shift space, stored by one period of its symbols.
///
/// Index 0 is the distinguished phase, so `0001` and `0010` are different
/// points of the same orbit. The primitive period is computed once at
/// construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    symbols: Vec<u8>,
    period: usize,
}

impl CyclicWord {
    pub fn new(symbols: Vec<u8>) -> Result<Self, SymbolicError> {
        if symbols.is_empty() {
            return Err(SymbolicError::EmptyWord);
        }
        let period = primitive_period(&symbols);
        Ok(Self { symbols, period })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Symbol at cyclic index `i` (any integer).
    pub fn at(&self, i: isize) -> u8 {
        let n = self.symbols.len() as isize;
        self.symbols[i.rem_euclid(n) as usize]
    }

    pub fn primitive_period(&self) -> usize {
        self.period
    }

    pub fn is_primitive(&self) -> bool {
        self.period == self.symbols.len()
    }

    /// The shift `(σx)_n = x_{n+1}`.
    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    pub fn shift_by(&self, k: isize) -> Self {
        let n = self.len();
        let k = k.rem_euclid(n as isize) as usize;
        let mut symbols = Vec::with_capacity(n);
        symbols.extend_from_slice(&self.symbols[k..]);
        symbols.extend_from_slice(&self.symbols[..k]);
        Self {
            symbols,
            period: self.period,
        }
    }

    /// The same point written over `k` periods.
    pub fn repeat(&self, k: usize) -> Self {
        Self {
            symbols: self.symbols.repeat(k.max(1)),
            period: self.period,
        }
    }

    pub fn map_symbols(&self, f: impl Fn(u8) -> u8) -> Self {
        let symbols: Vec<u8> = self.symbols.iter().map(|&s| f(s)).collect();
        let period = primitive_period(&symbols);
        Self { symbols, period }
    }

    /// All phases of this point's orbit, starting with `self`.
    pub fn orbit(&self) -> Vec<Self> {
        (0..self.period as isize).map(|k| self.shift_by(k)).collect()
    }

    /// Lexicographically least phase; a canonical orbit representative.
    pub fn orbit_representative(&self) -> Self {
        self.orbit().into_iter().min().expect("orbit is nonempty")
    }
}

fn primitive_period(symbols: &[u8]) -> usize {
    let n = symbols.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| symbols[i] == symbols[(i + p) % n]))
        .unwrap_or(n)
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", char::from_digit(s as u32, 36).unwrap_or('?'))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for CyclicWord {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let symbols = s
            .chars()
            .map(|ch| {
                ch.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| SymbolicError::BadSymbol(ch.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(symbols)
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CyclicWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parse a word, panicking on malformed input. Test and example helper.
pub fn word(s: &str) -> CyclicWord {
    s.parse().unwrap_or_else(|e| panic!("bad word {s:?}: {e}"))
}

/// All words of length `n` over `k` symbols, in lexicographic order.
pub fn all_words(k: u8, n: usize) -> Vec<CyclicWord> {
    let total = (k as usize).pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut symbols = vec![0u8; n];
            for slot in symbols.iter_mut().rev() {
                *slot = (idx % k as usize) as u8;
                idx /= k as usize;
            }
            CyclicWord::new(symbols).expect("n >= 1")
        })
        .collect()
}
