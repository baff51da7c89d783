use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ghat::GhatVertex;
use super::word::CyclicWord;
use super::SymbolicError;

/// Which of the fixed graphs a [`TransitionGraph`] is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphTag {
    /// Full 2-shift: two half-disk pieces, every transition allowed.
    E,
    /// Three-box cover `D0, D1, D2`.
    G,
    /// Two-box cover `W0, W1`.
    G0,
    /// Common refinement of `E` and `G`.
    Ghat,
    Custom,
}

impl FromStr for GraphTag {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E" | "e" => Ok(Self::E),
            "G" | "g" => Ok(Self::G),
            "G0" | "g0" => Ok(Self::G0),
            "Ghat" | "ghat" | "GHAT" => Ok(Self::Ghat),
            other => Err(SymbolicError::UnknownGraph(other.to_string())),
        }
    }
}

impl fmt::Display for GraphTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::E => "E",
            Self::G => "G",
            Self::G0 => "G0",
            Self::Ghat => "Ghat",
            Self::Custom => "custom",
        };
        f.pad(s)
    }
}

/// A directed graph whose vertices are symbols; its closed paths are the
/// periodic points of the associated subshift of finite type.
///
/// Vertices are indexed `0..n`; symbol `i` of a word is vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionGraph {
    tag: GraphTag,
    labels: Vec<String>,
    adjacency: Vec<Vec<bool>>,
}

impl TransitionGraph {
    /// Build a graph, rejecting dangling endpoints and stranded vertices.
    pub fn new(
        tag: GraphTag,
        labels: Vec<String>,
        edges: &[(u8, u8)],
    ) -> Result<Self, SymbolicError> {
        let n = labels.len();
        let mut adjacency = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(SymbolicError::BadEdge(u, v));
            }
            adjacency[u as usize][v as usize] = true;
        }
        for i in 0..n {
            let out = adjacency[i].iter().any(|&e| e);
            let inc = adjacency.iter().any(|row| row[i]);
            if !out || !inc {
                return Err(SymbolicError::StrandedVertex(labels[i].clone()));
            }
        }
        Ok(Self {
            tag,
            labels,
            adjacency,
        })
    }

    /// One of the fixed graphs.
    pub fn named(tag: GraphTag) -> Result<Self, SymbolicError> {
        let digits = |n: u8| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        match tag {
            GraphTag::E => Self::new(tag, digits(2), &[(0, 0), (0, 1), (1, 0), (1, 1)]),
            GraphTag::G => Self::new(tag, digits(3), &[(0, 0), (0, 1), (1, 2), (2, 0), (2, 1)]),
            GraphTag::G0 => Self::new(tag, digits(2), &[(0, 0), (0, 1), (1, 0)]),
            GraphTag::Ghat => {
                let labels = GhatVertex::ALL.iter().map(|v| v.to_string()).collect();
                let mut edges = Vec::new();
                for from in GhatVertex::ALL {
                    for to in GhatVertex::ALL {
                        if GhatVertex::transition_allowed(from, to) {
                            edges.push((from.index(), to.index()));
                        }
                    }
                }
                Self::new(tag, labels, &edges)
            }
            GraphTag::Custom => Err(SymbolicError::UnknownGraph("custom".into())),
        }
    }

    pub fn tag(&self) -> GraphTag {
        self.tag
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: u8) -> &str {
        &self.labels[v as usize]
    }

    pub fn has_edge(&self, u: u8, v: u8) -> bool {
        self.adjacency
            .get(u as usize)
            .and_then(|row| row.get(v as usize))
            .copied()
            .unwrap_or(false)
    }

    pub fn edges(&self) -> Vec<(u8, u8)> {
        let n = self.vertex_count() as u8;
        (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    pub fn successors(&self, u: u8) -> impl Iterator<Item = u8> + '_ {
        (0..self.vertex_count() as u8).filter(move |&v| self.has_edge(u, v))
    }

    /// Whether every cyclically consecutive pair of `word` is an edge.
    pub fn is_admissible(&self, word: &CyclicWord) -> bool {
        let s = word.symbols();
        let n = s.len();
        (0..n).all(|i| self.has_edge(s[i], s[(i + 1) % n]))
    }

    /// The 2-block extension: vertices are the edges of `self`, and
    /// `(u→v) → (v→w)` whenever both are edges. Returns the graph together
    /// with the edge each new vertex stands for.
    pub fn two_block_extension(&self) -> (TransitionGraph, Vec<(u8, u8)>) {
        let blocks = self.edges();
        let labels = blocks
            .iter()
            .map(|&(u, v)| format!("{}{}", self.label(u), self.label(v)))
            .collect();
        let mut edges = Vec::new();
        for (i, &(_, v)) in blocks.iter().enumerate() {
            for (j, &(v2, _)) in blocks.iter().enumerate() {
                if v == v2 {
                    edges.push((i as u8, j as u8));
                }
            }
        }
        let graph = Self::new(GraphTag::Custom, labels, &edges)
            .expect("2-block extension of an essential graph is essential");
        (graph, blocks)
    }

    /// Whether `relabel` (vertex of `self` ↦ vertex of `other`) is a
    /// bijection carrying the edge set of `self` exactly onto that of `other`.
    pub fn is_isomorphic_under(&self, other: &TransitionGraph, relabel: &[u8]) -> bool {
        let n = self.vertex_count();
        if relabel.len() != n || other.vertex_count() != n {
            return false;
        }
        let image: BTreeSet<u8> = relabel.iter().copied().collect();
        if image.len() != n || image.iter().any(|&v| v as usize >= n) {
            return false;
        }
        (0..n as u8).all(|u| {
            (0..n as u8).all(|v| {
                self.has_edge(u, v) == other.has_edge(relabel[u as usize], relabel[v as usize])
            })
        })
    }

    /// Whether `f` (vertex ↦ vertex of `target`) sends every edge to an edge.
    pub fn is_morphism_onto(&self, target: &TransitionGraph, f: impl Fn(u8) -> u8) -> bool {
        self.edges()
            .into_iter()
            .all(|(u, v)| target.has_edge(f(u), f(v)))
    }
}

/// Look a fixed graph up by name (`E`, `G`, `G0`, `Ghat`).
pub fn build_graph(tag: &str) -> Result<TransitionGraph, SymbolicError> {
    TransitionGraph::named(tag.parse()?)
}

/// All closed paths of length `n`, as points (every phase listed). With
/// `exact`, only those of primitive period exactly `n`.
pub fn periodic_points(graph: &TransitionGraph, n: usize, exact: bool) -> BTreeSet<CyclicWord> {
    let mut out = BTreeSet::new();
    if n == 0 {
        return out;
    }
    let mut path = Vec::with_capacity(n);
    for start in 0..graph.vertex_count() as u8 {
        path.clear();
        path.push(start);
        extend_closed(graph, n, &mut path, &mut out);
    }
    if exact {
        out.retain(|w| w.is_primitive());
    }
    out
}

fn extend_closed(
    graph: &TransitionGraph,
    n: usize,
    path: &mut Vec<u8>,
    out: &mut BTreeSet<CyclicWord>,
) {
    let last = *path.last().expect("path starts nonempty");
    if path.len() == n {
        if graph.has_edge(last, path[0]) {
            out.insert(CyclicWord::new(path.clone()).expect("n >= 1"));
        }
        return;
    }
    for next in graph.successors(last) {
        path.push(next);
        extend_closed(graph, n, path, out);
        path.pop();
    }
}
