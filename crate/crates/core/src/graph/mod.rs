//! Coloured graph model.
//!
//! A [`ColouredGraph`] is a simple undirected graph on the vertices
//! `0..n` whose every edge is red or blue. Graphs are immutable once built;
//! use a [`GraphBuilder`] (or [`ColouredGraph::from_edges`]) to make one.

mod components;
mod format;
mod subgraph;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use components::{monochromatic_components, ComponentId, ComponentMap, MonochromaticComponent};
pub use format::{parse_cg, read_cg, to_cg_string, write_cg, ParseError};
pub(crate) use subgraph::union_subgraph_with;
pub use subgraph::{union_subgraph, Subgraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub const ALL: [Colour; 2] = [Colour::Red, Colour::Blue];

    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Colour::Red => 0,
            Colour::Blue => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Colour::Red => 'r',
            Colour::Blue => 'b',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
        }
    }

    fn code(self) -> u8 {
        self.index() as u8 + 1
    }

    fn from_code(code: u8) -> Option<Colour> {
        match code {
            1 => Some(Colour::Red),
            2 => Some(Colour::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Colour {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "r" | "red" => Ok(Colour::Red),
            "b" | "blue" => Ok(Colour::Blue),
            _ => Err(GraphError::UnknownColour(s.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("unknown colour `{0}`")]
    UnknownColour(String),
    #[error("component {0} does not belong to this graph")]
    ForeignComponent(ComponentId),
    #[error("malformed component id `{0}` (expected e.g. r0 or b3)")]
    BadComponentId(String),
    #[error("graphs have different vertex counts ({0} vs {1})")]
    VertexCountMismatch(usize, usize),
}

/// Incremental construction of a [`ColouredGraph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    matrix: Vec<u8>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            matrix: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v] != 0
    }

    /// Adds a new edge; fails on loops, bad ids and duplicates.
    pub fn add_edge(&mut self, u: usize, v: usize, colour: Colour) -> Result<(), GraphError> {
        self.check(u, v)?;
        if self.matrix[u * self.n + v] != 0 {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.set_edge(u, v, Some(colour))
    }

    /// Inserts, recolours (`Some`) or deletes (`None`) the edge `uv`.
    pub fn set_edge(&mut self, u: usize, v: usize, colour: Option<Colour>) -> Result<(), GraphError> {
        self.check(u, v)?;
        let code = colour.map_or(0, Colour::code);
        self.matrix[u * self.n + v] = code;
        self.matrix[v * self.n + u] = code;
        Ok(())
    }

    pub fn colour(&self, u: usize, v: usize) -> Option<Colour> {
        if u >= self.n || v >= self.n {
            return None;
        }
        Colour::from_code(self.matrix[u * self.n + v])
    }

    pub fn build(self) -> ColouredGraph {
        let n = self.n;
        let mut neighbours = vec![Vec::new(); n];
        let mut coloured = [vec![Vec::new(); n], vec![Vec::new(); n]];
        let mut edge_count = 0;
        for u in 0..n {
            for v in 0..n {
                if let Some(c) = Colour::from_code(self.matrix[u * n + v]) {
                    neighbours[u].push(v);
                    coloured[c.index()][u].push(v);
                    if u < v {
                        edge_count += 1;
                    }
                }
            }
        }
        ColouredGraph {
            n,
            matrix: self.matrix,
            neighbours,
            coloured,
            edge_count,
        }
    }
}

/// Simple undirected graph on `0..n` with a red/blue colour on every edge.
#[derive(Clone, PartialEq, Eq)]
pub struct ColouredGraph {
    n: usize,
    // 0 = no edge, 1 = red, 2 = blue; symmetric
    matrix: Vec<u8>,
    neighbours: Vec<Vec<usize>>,
    coloured: [Vec<Vec<usize>>; 2],
    edge_count: usize,
}

impl fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColouredGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl ColouredGraph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    /// Complete graph with every edge in `colour`.
    pub fn complete(n: usize, colour: Colour) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.set_edge(u, v, Some(colour)).expect("valid pair");
            }
        }
        b.build()
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Colour)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v, c) in edges {
            b.add_edge(u, v, c)?;
        }
        Ok(b.build())
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            n: self.n,
            matrix: self.matrix.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn colour(&self, u: usize, v: usize) -> Option<Colour> {
        if u >= self.n || v >= self.n {
            return None;
        }
        Colour::from_code(self.matrix[u * self.n + v])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.colour(u, v).is_some()
    }

    /// Sorted neighbour list of `v` in either colour.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.neighbours[v]
    }

    pub fn colour_neighbours(&self, v: usize, colour: Colour) -> &[usize] {
        &self.coloured[colour.index()][v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours[v].len()
    }

    pub fn colour_degree(&self, v: usize, colour: Colour) -> usize {
        self.coloured[colour.index()][v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbours.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbours.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.neighbours.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Number of neighbours of `v` inside `set` (given as a membership mask).
    pub fn degree_into(&self, v: usize, set: &[bool]) -> usize {
        self.neighbours[v].iter().filter(|&&u| set[u]).count()
    }

    /// Edges as `(u, v, colour)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Colour)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbours[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v, self.colour(u, v).expect("listed neighbour")))
        })
    }

    /// Per-vertex neighbour bitmasks in one colour; requires `n <= 64`.
    pub fn colour_masks(&self, colour: Colour) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask view needs n <= 64");
        self.coloured[colour.index()]
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &u| m | (1 << u)))
            .collect()
    }

    /// Union of the edge sets of two graphs on the same vertices; edges of
    /// `self` keep their colour, new edges from `other` are taken as red.
    pub fn union_with(&self, other: &ColouredGraph) -> Result<ColouredGraph, GraphError> {
        if self.n != other.n {
            return Err(GraphError::VertexCountMismatch(self.n, other.n));
        }
        let mut b = self.to_builder();
        for (u, v, _) in other.edges() {
            if !b.has_edge(u, v) {
                b.set_edge(u, v, Some(Colour::Red))?;
            }
        }
        Ok(b.build())
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> ColouredGraph {
        assert_eq!(perm.len(), self.n);
        let mut b = GraphBuilder::new(self.n);
        for (u, v, c) in self.edges() {
            b.set_edge(perm[u], perm[v], Some(c)).expect("permutation");
        }
        b.build()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        degree_sequence(self)
    }
}

/// Non-decreasing degree sequence together with the vertex order realizing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    pub values: Vec<usize>,
    pub perm: Vec<usize>,
}

impl DegreeSequence {
    /// 1-indexed entry `d_j`.
    pub fn d(&self, j: usize) -> usize {
        self.values[j - 1]
    }
}

/// Degrees sorted ascending; ties keep increasing vertex id.
pub fn degree_sequence(g: &ColouredGraph) -> DegreeSequence {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.sort_by_key(|&v| (g.degree(v), v));
    let values = perm.iter().map(|&v| g.degree(v)).collect();
    DegreeSequence { values, perm }
}
