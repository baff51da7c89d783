use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::CyclicWord;
use super::SymbolicError;

/// A piece `E_top ∩ D_bottom` of the common refinement of the two-piece and
/// three-box covers. Only four of the six intersections are nonempty:
/// `E_0 ∩ D_2` and `E_1 ∩ D_0` are empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GhatVertex {
    pub top: u8,
    pub bottom: u8,
}

impl GhatVertex {
    pub const ALL: [GhatVertex; 4] = [
        GhatVertex { top: 0, bottom: 0 },
        GhatVertex { top: 0, bottom: 1 },
        GhatVertex { top: 1, bottom: 1 },
        GhatVertex { top: 1, bottom: 2 },
    ];

    pub fn new(top: u8, bottom: u8) -> Result<Self, SymbolicError> {
        let v = Self { top, bottom };
        if Self::ALL.contains(&v) {
            Ok(v)
        } else {
            Err(SymbolicError::EmptyIntersection(top, bottom))
        }
    }

    pub fn index(self) -> u8 {
        Self::ALL
            .iter()
            .position(|&v| v == self)
            .expect("constructed vertices are valid") as u8
    }

    /// Edges of the refined graph. Vertices over `D_0` or `D_2` map onto
    /// `W_0` and may be followed by anything over `D_0 ∪ D_1`; vertices over
    /// `D_1` map onto `W_1` and are followed by `(1, 2)` only.
    pub fn transition_allowed(from: GhatVertex, to: GhatVertex) -> bool {
        match from.bottom {
            0 | 2 => to.bottom == 0 || to.bottom == 1,
            1 => to == GhatVertex { top: 1, bottom: 2 },
            _ => false,
        }
    }
}

impl fmt::Display for GhatVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.top, self.bottom)
    }
}

/// Which row of a refined path to read off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Projection {
    /// Top row: the two-piece coding.
    E,
    /// Bottom row: the three-box coding.
    G,
}

/// A closed path in the refined graph, stored as a point (index 0 is the
/// phase).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedPath(Vec<GhatVertex>);

impl ClosedPath {
    pub fn new(vertices: Vec<GhatVertex>) -> Result<Self, SymbolicError> {
        if vertices.is_empty() {
            return Err(SymbolicError::EmptyWord);
        }
        let n = vertices.len();
        for i in 0..n {
            let (u, v) = (vertices[i], vertices[(i + 1) % n]);
            if !GhatVertex::transition_allowed(u, v) {
                return Err(SymbolicError::NotAdmissible(format!("{u} -> {v}")));
            }
        }
        Ok(Self(vertices))
    }

    /// Build from the two rows, e.g. `("0001", "0012")`.
    pub fn from_rows(top: &str, bottom: &str) -> Result<Self, SymbolicError> {
        let t: CyclicWord = top.parse()?;
        let b: CyclicWord = bottom.parse()?;
        if t.len() != b.len() {
            return Err(SymbolicError::LengthMismatch(t.len(), b.len()));
        }
        let vertices = t
            .symbols()
            .iter()
            .zip(b.symbols())
            .map(|(&x, &y)| GhatVertex::new(x, y))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[GhatVertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shift(&self) -> Self {
        let mut v = self.0.clone();
        v.rotate_left(1);
        Self(v)
    }

    pub fn project(&self, which: Projection) -> CyclicWord {
        let symbols = self
            .0
            .iter()
            .map(|v| match which {
                Projection::E => v.top,
                Projection::G => v.bottom,
            })
            .collect();
        CyclicWord::new(symbols).expect("closed paths are nonempty")
    }
}

impl fmt::Display for ClosedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.project(Projection::E), self.project(Projection::G))
    }
}

impl fmt::Debug for ClosedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Top or bottom row of a refined closed path.
pub fn project(path: &ClosedPath, which: Projection) -> CyclicWord {
    path.project(which)
}

/// All closed refined paths whose top row is `top`.
///
/// Paths of the same length as `top` are tried first; when none exists
/// (odd runs of all-ones, e.g. the fixed point `1`) the word is read over
/// two periods. The result has one element, or two exactly when `top` is
/// the all-ones point.
pub fn lift_codings(top: &CyclicWord) -> Result<BTreeSet<ClosedPath>, SymbolicError> {
    if top.symbols().iter().any(|&s| s > 1) {
        return Err(SymbolicError::NotAdmissible(format!("{top} is not a 2-shift word")));
    }
    let lifts = closed_lifts(top);
    if !lifts.is_empty() {
        return Ok(lifts);
    }
    Ok(closed_lifts(&top.repeat(2)))
}

fn closed_lifts(top: &CyclicWord) -> BTreeSet<ClosedPath> {
    let s = top.symbols();
    let n = s.len();
    let mut out = BTreeSet::new();
    let mut path: Vec<GhatVertex> = Vec::with_capacity(n);

    fn go(
        s: &[u8],
        path: &mut Vec<GhatVertex>,
        out: &mut BTreeSet<ClosedPath>,
    ) {
        let i = path.len();
        if i == s.len() {
            if GhatVertex::transition_allowed(path[i - 1], path[0]) {
                out.insert(ClosedPath(path.clone()));
            }
            return;
        }
        for v in GhatVertex::ALL.iter().filter(|v| v.top == s[i]) {
            if i == 0 || GhatVertex::transition_allowed(path[i - 1], *v) {
                path.push(*v);
                go(s, path, out);
                path.pop();
            }
        }
    }

    go(s, &mut path, &mut out);
    out
}
