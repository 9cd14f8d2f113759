//! Commutation graphs.
//!
//! A [`CommutationGraph`] is a simple undirected graph whose vertices are the
//! generators of a partially commutative group and whose edges are the pairs
//! of generators that commute. Vertex sets are stored as 64-bit masks, so a
//! graph has at most [`MAX_VERTICES`] vertices.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// Index of a vertex in declaration order.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("graph has more than {MAX_VERTICES} vertices")]
    TooManyVertices,
    #[error("link of the empty set is undefined")]
    EmptyLink,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A set of vertices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: Vertex) -> bool {
        v < MAX_VERTICES && self.0 & (1u64 << v) != 0
    }

    pub fn insert(&mut self, v: Vertex) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(mut self, v: Vertex) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: Vertex) -> Self {
        self.remove(v);
        self
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = Vertex> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The commutation graph of a partially commutative group.
#[derive(Clone, PartialEq, Eq)]
pub struct CommutationGraph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    adjacency: Vec<VertexSet>,
}

impl fmt::Debug for CommutationGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CommutationGraph")
            .field("vertices", &self.names)
            .field("edges", &self.edges_by_name())
            .finish()
    }
}

impl CommutationGraph {
    /// Builds a graph from vertex names (declaration order is preserved) and
    /// edges given by name.
    pub fn build<S, T>(vertices: &[S], edges: &[(T, T)]) -> Result<Self, GraphError>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        if vertices.len() > MAX_VERTICES {
            return Err(GraphError::TooManyVertices);
        }
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            let name = v.as_ref().to_string();
            if index.insert(name.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(name));
            }
            names.push(name);
        }
        let mut adjacency = vec![VertexSet::EMPTY; names.len()];
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            if u == v {
                return Err(GraphError::SelfLoop(u.to_string()));
            }
            let iu = *index
                .get(u)
                .ok_or_else(|| GraphError::UnknownEndpoint(u.to_string()))?;
            let iv = *index
                .get(v)
                .ok_or_else(|| GraphError::UnknownEndpoint(v.to_string()))?;
            adjacency[iu].insert(iv);
            adjacency[iv].insert(iu);
        }
        Ok(CommutationGraph {
            names,
            index,
            adjacency,
        })
    }

    /// Builds a graph from vertex names and index pairs.
    pub fn from_indices<S: AsRef<str>>(
        vertices: &[S],
        edges: &[(Vertex, Vertex)],
    ) -> Result<Self, GraphError> {
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(u, v)| {
                let name = |x: Vertex| {
                    vertices
                        .get(x)
                        .map(|s| s.as_ref().to_string())
                        .ok_or(GraphError::VertexOutOfRange(x))
                };
                Ok((name(u)?, name(v)?))
            })
            .collect::<Result<_, GraphError>>()?;
        Self::build(vertices, &named)
    }

    /// The `n`-cycle `t, a1, ..., a_{n-1}` with the chord `a1 - a_{n-1}`.
    pub fn cycle_with_chord(n: usize) -> Result<Self, GraphError> {
        if n < 5 {
            return Err(GraphError::BadParameter(format!(
                "cycle_with_chord needs n >= 5, got {n}"
            )));
        }
        let mut g = Self::cycle(n)?;
        g.adjacency[1].insert(n - 1);
        g.adjacency[n - 1].insert(1);
        Ok(g)
    }

    /// The plain `n`-cycle on `t, a1, ..., a_{n-1}`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::BadParameter(format!(
                "cycle needs n >= 3, got {n}"
            )));
        }
        let mut names = vec!["t".to_string()];
        names.extend((1..n).map(|i| format!("a{i}")));
        let edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_indices(&names, &edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    /// Resolves a list of names into a vertex set.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet, GraphError> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    pub fn all(&self) -> VertexSet {
        if self.names.len() == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << self.names.len()) - 1)
        }
    }

    pub fn set_names(&self, set: VertexSet) -> Vec<String> {
        set.iter().map(|v| self.names[v].clone()).collect()
    }

    /// True iff `u` and `v` commute: they are equal or joined by an edge.
    #[inline]
    pub fn commute(&self, u: Vertex, v: Vertex) -> bool {
        u == v || self.adjacency[u].contains(v)
    }

    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbours(&self, v: Vertex) -> VertexSet {
        self.adjacency[v]
    }

    pub fn star(&self, v: Vertex) -> VertexSet {
        self.adjacency[v].with(v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in self.adjacency[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edges_by_name(&self) -> Vec<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (self.names[u].clone(), self.names[v].clone()))
            .collect()
    }

    fn check(&self, set: VertexSet) -> Result<(), GraphError> {
        if set.is_subset(self.all()) {
            Ok(())
        } else {
            let bad = set.difference(self.all()).first().unwrap_or(0);
            Err(GraphError::VertexOutOfRange(bad))
        }
    }

    /// `lk(Y)`: the vertices adjacent to every member of `Y`.
    pub fn link(&self, set: VertexSet) -> Result<VertexSet, GraphError> {
        self.check(set)?;
        if set.is_empty() {
            return Err(GraphError::EmptyLink);
        }
        Ok(set
            .iter()
            .fold(self.all(), |acc, y| acc.intersection(self.adjacency[y])))
    }

    pub fn is_clique(&self, set: VertexSet) -> Result<bool, GraphError> {
        self.check(set)?;
        Ok(set
            .iter()
            .all(|v| set.without(v).is_subset(self.adjacency[v])))
    }

    pub fn is_independent(&self, set: VertexSet) -> Result<bool, GraphError> {
        self.check(set)?;
        Ok(set
            .iter()
            .all(|v| self.adjacency[v].intersection(set).is_empty()))
    }

    /// True iff `st(v) ⊆ Y ∪ lk(Y)` for every `v ∈ Y`.
    pub fn is_synchronised(&self, set: VertexSet) -> Result<bool, GraphError> {
        let allowed = set.union(self.link(set)?);
        Ok(set.iter().all(|v| self.star(v).is_subset(allowed)))
    }

    /// Vertices adjacent to every other vertex.
    pub fn central_vertices(&self) -> VertexSet {
        (0..self.len())
            .filter(|&v| self.star(v) == self.all())
            .collect()
    }

    /// Connected components of the complement graph restricted to `set`,
    /// ordered by their smallest vertex.
    pub fn complement_components(&self, set: VertexSet) -> Result<Vec<VertexSet>, GraphError> {
        self.check(set)?;
        let mut remaining = set;
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut component = VertexSet::singleton(start);
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                let next = remaining
                    .difference(component)
                    .difference(self.adjacency[v])
                    .without(v);
                for w in next.iter() {
                    component.insert(w);
                    frontier.push(w);
                }
            }
            remaining = remaining.difference(component);
            out.push(component);
        }
        Ok(out)
    }

    /// Full subgraph on `set`, keeping declaration order.
    pub fn induced(&self, set: VertexSet) -> Result<(CommutationGraph, Vec<Vertex>), GraphError> {
        self.check(set)?;
        let kept: Vec<Vertex> = set.iter().collect();
        let names: Vec<&str> = kept.iter().map(|&v| self.names[v].as_str()).collect();
        let mut edges = Vec::new();
        for (i, &u) in kept.iter().enumerate() {
            for (j, &v) in kept.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Ok((CommutationGraph::from_indices(&names, &edges)?, kept))
    }

    /// Copy of the graph with one extra edge.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<CommutationGraph, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(self.names[u].clone()));
        }
        let mut g = self.clone();
        g.adjacency[u].insert(v);
        g.adjacency[v].insert(u);
        Ok(g)
    }

    /// Reorders vertices: new vertex `i` is old vertex `order[i]`.
    pub fn relabel(&self, order: &[Vertex]) -> Result<CommutationGraph, GraphError> {
        let names: Vec<&str> = order.iter().map(|&v| self.names[v].as_str()).collect();
        let mut position = vec![0; self.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let edges: Vec<(Vertex, Vertex)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (position[u], position[v]))
            .collect();
        CommutationGraph::from_indices(&names, &edges)
    }

    /// True iff the graph is a single cycle on all of its vertices.
    pub fn is_cycle(&self) -> bool {
        let n = self.len();
        if n < 3 || (0..n).any(|v| self.degree(v) != 2) {
            return false;
        }
        // connected and 2-regular
        let mut seen = VertexSet::singleton(0);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in self.adjacency[v].difference(seen).iter() {
                seen.insert(w);
                stack.push(w);
            }
        }
        seen == self.all()
    }

    /// Parses the line-oriented graph file format.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut vertices: Option<Vec<String>> = None;
        let mut edges: Vec<(String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let keyword = tokens.next().unwrap_or("");
            let rest: Vec<&str> = tokens.collect();
            let syntax = |message: String| GraphError::Syntax {
                line: line_no,
                message,
            };
            for name in &rest {
                if !is_identifier(name) {
                    return Err(syntax(format!("invalid vertex name `{name}`")));
                }
            }
            match keyword {
                "vertices" => {
                    if vertices.is_some() {
                        return Err(syntax("more than one `vertices` line".into()));
                    }
                    vertices = Some(rest.iter().map(|s| s.to_string()).collect());
                }
                "edge" => {
                    if vertices.is_none() {
                        return Err(syntax("`edge` before `vertices`".into()));
                    }
                    if rest.len() != 2 {
                        return Err(syntax("`edge` takes exactly two names".into()));
                    }
                    edges.push((rest[0].to_string(), rest[1].to_string()));
                }
                other => return Err(syntax(format!("unknown keyword `{other}`"))),
            }
        }
        let vertices = vertices.ok_or(GraphError::Syntax {
            line: 0,
            message: "missing `vertices` line".into(),
        })?;
        Self::build(&vertices, &edges)
    }

    /// Serializes in the graph file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.names.join(" "));
        for (u, v) in self.edges_by_name() {
            out.push_str(&format!("edge {u} {v}\n"));
        }
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
