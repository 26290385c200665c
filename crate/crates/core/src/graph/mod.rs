//! Finite directed multigraphs `E = (E⁰, E¹, r, s)` and the graph-theoretic
//! predicates the center classification depends on.
//!
//! Vertices and edges are addressed by dense indices ([`VertexId`],
//! [`EdgeId`]) in declaration order; every ordering in the crate (cycle
//! canonicalization, report order) follows those indices, so results are
//! reproducible for a given input file.

mod cycles;
mod hereditary;
mod path;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use cycles::PathCount;
pub use hereditary::{HereditarySaturatedSet, DEFAULT_MAX_ENUMERATION_VERTICES};
pub use path::{Cycle, Path};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid identifier `{0}`")]
    InvalidId(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("edges {0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("path is not a cycle of this graph")]
    NotACycle,
    #[error("vertex {0} is not a sink")]
    NotASink(String),
    #[error("cycle has an exit")]
    CycleHasExit,
    #[error("vertex set is not hereditary")]
    NotHereditary,
    #[error("the quotient by all vertices is empty")]
    ImproperQuotient,
    #[error("{what} must be at least {min}")]
    BadSize { what: &'static str, min: usize },
    #[error("{vertices} vertices exceeds the enumeration cap of {cap}")]
    TooManyVertices { vertices: usize, cap: usize },
}

pub(crate) fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An immutable finite directed multigraph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    src: Vec<VertexId>,
    rng: Vec<VertexId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    lookup: HashMap<String, Item>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Item {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ vertices: {:?}, edges: [", self.vertex_names)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{}: {} -> {}",
                self.edge_name(e),
                self.vertex_name(self.source(e)),
                self.vertex_name(self.range(e))
            )?;
        }
        write!(f, "] }}")
    }
}

/// Incremental construction with identifier validation.
#[derive(Default, Debug, Clone)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        range: impl Into<String>,
    ) -> Self {
        self.edges.push((id.into(), source.into(), range.into()));
        self
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        for id in self.vertices.iter().chain(self.edges.iter().map(|e| &e.0)) {
            if !valid_id(id) {
                return Err(GraphError::InvalidId(id.clone()));
            }
        }
        Graph::from_parts(self.vertices, self.edges)
    }
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    /// Builds a graph without identifier syntax checks (used for derived
    /// graphs such as the extended graph, whose ghost edges carry a `*`).
    pub(crate) fn from_parts(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    ) -> Result<Graph, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if lookup
                .insert(v.clone(), Item::Vertex(VertexId(i)))
                .is_some()
            {
                return Err(GraphError::DuplicateId(v.clone()));
            }
        }
        let mut src = Vec::with_capacity(edges.len());
        let mut rng = Vec::with_capacity(edges.len());
        let mut edge_names = Vec::with_capacity(edges.len());
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (i, (name, s, r)) in edges.into_iter().enumerate() {
            let endpoint = |n: &str| match lookup.get(n) {
                Some(Item::Vertex(v)) => Ok(*v),
                _ => Err(GraphError::UnknownVertex(n.to_string())),
            };
            let (s, r) = (endpoint(&s)?, endpoint(&r)?);
            if lookup.insert(name.clone(), Item::Edge(EdgeId(i))).is_some() {
                return Err(GraphError::DuplicateId(name));
            }
            out_edges[s.0].push(EdgeId(i));
            in_edges[r.0].push(EdgeId(i));
            src.push(s);
            rng.push(r);
            edge_names.push(name);
        }
        Ok(Graph {
            vertex_names: vertices,
            edge_names,
            src,
            rng,
            out_edges,
            in_edges,
            lookup,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = EdgeId> + ExactSizeIterator {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.src[e.0]
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.rng[e.0]
    }

    /// `s⁻¹(v)` in edge-id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// `r⁻¹(v)` in edge-id order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.0]
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId, GraphError> {
        match self.lookup.get(name) {
            Some(Item::Vertex(v)) => Ok(*v),
            _ => Err(GraphError::UnknownVertex(name.to_string())),
        }
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId, GraphError> {
        match self.lookup.get(name) {
            Some(Item::Edge(e)) => Ok(*e),
            _ => Err(GraphError::UnknownEdge(name.to_string())),
        }
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.0 < self.vertex_count()
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(format!("#{}", v.0)))
        }
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges(v).is_empty()
    }

    /// Regular vertices emit a nonzero finite number of edges; in a finite
    /// graph this is exactly "not a sink".
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.is_sink(v)
    }

    pub fn classify_vertex(&self, v: VertexId) -> Result<VertexClass, GraphError> {
        self.check_vertex(v)?;
        Ok(VertexClass {
            sink: self.is_sink(v),
            source: self.in_edges(v).is_empty(),
            regular: self.is_regular(v),
            infinite_emitter: false,
        })
    }

    /// Partition of the vertices under undirected reachability. Blocks are
    /// sorted and listed by their least vertex.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut label = vec![usize::MAX; self.vertex_count()];
        let mut blocks = Vec::new();
        for start in self.vertices() {
            if label[start.0] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = Vec::new();
            let mut queue = VecDeque::from([start]);
            label[start.0] = id;
            while let Some(v) = queue.pop_front() {
                block.push(v);
                for w in self.undirected_neighbours(v) {
                    if label[w.0] == usize::MAX {
                        label[w.0] = id;
                        queue.push_back(w);
                    }
                }
            }
            block.sort();
            blocks.push(block);
        }
        blocks
    }

    fn undirected_neighbours(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_edges(v)
            .iter()
            .map(|&e| self.range(e))
            .chain(self.in_edges(v).iter().map(|&e| self.source(e)))
    }

    /// Undirected edge-count distance; `None` means infinite.
    pub fn geodesic_distance(&self, u: VertexId, v: VertexId) -> Result<Option<usize>, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[u.0] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return Ok(Some(dist[x.0]));
            }
            for y in self.undirected_neighbours(x) {
                if dist[y.0] == usize::MAX {
                    dist[y.0] = dist[x.0] + 1;
                    queue.push_back(y);
                }
            }
        }
        Ok(None)
    }

    /// Reflexive directed reachability: `reach[v][w]` iff there is a path
    /// from `v` to `w`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        self.vertices()
            .map(|v| {
                let mut seen = vec![false; self.vertex_count()];
                seen[v.0] = true;
                let mut stack = vec![v];
                while let Some(x) = stack.pop() {
                    for &e in self.out_edges(x) {
                        let y = self.range(e);
                        if !seen[y.0] {
                            seen[y.0] = true;
                            stack.push(y);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Every pair of vertices flows into a common vertex.
    pub fn is_downward_directed(&self) -> bool {
        let reach = self.reachability();
        let n = self.vertex_count();
        (0..n).all(|v| (v..n).all(|w| (0..n).any(|u| reach[v][u] && reach[w][u])))
    }

    pub fn opposite(&self) -> Graph {
        let edges = self
            .edges()
            .map(|e| {
                (
                    self.edge_name(e).to_string(),
                    self.vertex_name(self.range(e)).to_string(),
                    self.vertex_name(self.source(e)).to_string(),
                )
            })
            .collect();
        Graph::from_parts(self.vertex_names.clone(), edges).expect("opposite of a valid graph")
    }

    /// The extended graph `Ê`: the original edges followed by one ghost edge
    /// `e*` per edge, in the same order.
    pub fn extended(&self) -> ExtendedGraph {
        let mut edges: Vec<_> = self
            .edges()
            .map(|e| {
                (
                    self.edge_name(e).to_string(),
                    self.vertex_name(self.source(e)).to_string(),
                    self.vertex_name(self.range(e)).to_string(),
                )
            })
            .collect();
        let mut kinds: Vec<_> = self.edges().map(ExtendedEdge::Real).collect();
        for e in self.edges() {
            edges.push((
                format!("{}*", self.edge_name(e)),
                self.vertex_name(self.range(e)).to_string(),
                self.vertex_name(self.source(e)).to_string(),
            ));
            kinds.push(ExtendedEdge::Ghost(e));
        }
        ExtendedGraph {
            graph: Graph::from_parts(self.vertex_names.clone(), edges)
                .expect("extended graph of a valid graph"),
            kinds,
        }
    }

    /// `E/H`: drops `H` and every edge whose range lies in `H`. Only
    /// heredity is needed for this to be a graph; saturation is not checked.
    pub fn quotient(&self, h: &HereditarySaturatedSet) -> Result<Graph, GraphError> {
        if !h.vertices().iter().all(|&v| self.contains_vertex(v)) || !h.is_hereditary(self) {
            return Err(GraphError::NotHereditary);
        }
        if h.len() == self.vertex_count() {
            return Err(GraphError::ImproperQuotient);
        }
        let vertices = self
            .vertices()
            .filter(|v| !h.contains(*v))
            .map(|v| self.vertex_name(v).to_string())
            .collect();
        let edges = self
            .edges()
            .filter(|&e| !h.contains(self.range(e)))
            .map(|e| {
                (
                    self.edge_name(e).to_string(),
                    self.vertex_name(self.source(e)).to_string(),
                    self.vertex_name(self.range(e)).to_string(),
                )
            })
            .collect();
        Ok(Graph::from_parts(vertices, edges).expect("quotient of a valid graph"))
    }

    /// Relabels into a graph with the given vertex and edge declaration
    /// orders; names are kept.
    pub fn permuted(&self, vertex_order: &[VertexId], edge_order: &[EdgeId]) -> Graph {
        let vertices = vertex_order
            .iter()
            .map(|&v| self.vertex_name(v).to_string())
            .collect();
        let edges = edge_order
            .iter()
            .map(|&e| {
                (
                    self.edge_name(e).to_string(),
                    self.vertex_name(self.source(e)).to_string(),
                    self.vertex_name(self.range(e)).to_string(),
                )
            })
            .collect();
        Graph::from_parts(vertices, edges).expect("permutation of a valid graph")
    }

    pub fn vertex_set_names(&self, set: &BTreeSet<VertexId>) -> Vec<String> {
        set.iter()
            .map(|&v| self.vertex_name(v).to_string())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub sink: bool,
    pub source: bool,
    pub regular: bool,
    pub infinite_emitter: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendedEdge {
    Real(EdgeId),
    Ghost(EdgeId),
}

#[derive(Debug, Clone)]
pub struct ExtendedGraph {
    pub graph: Graph,
    /// Indexed by edge id of `graph`.
    pub kinds: Vec<ExtendedEdge>,
}

/// The rose with `m` petals: one vertex `v` and loops `e1..em`.
pub fn rose_graph(m: usize) -> Graph {
    (1..=m)
        .fold(Graph::builder().vertex("v"), |b, i| {
            b.edge(format!("e{i}"), "v", "v")
        })
        .build()
        .expect("rose graph")
}

/// `u1 -> u2 -> ... -> un` with edges `f1..f(n-1)`.
pub fn line_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::BadSize {
            what: "line length",
            min: 1,
        });
    }
    let b = (1..=n).fold(Graph::builder(), |b, i| b.vertex(format!("u{i}")));
    (1..n)
        .fold(b, |b, i| {
            b.edge(format!("f{i}"), format!("u{i}"), format!("u{}", i + 1))
        })
        .build()
}

/// The `n`-cycle `u1 -> u2 -> ... -> un -> u1` with `fi: ui -> u(i+1)`.
pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::BadSize {
            what: "cycle length",
            min: 1,
        });
    }
    let b = (1..=n).fold(Graph::builder(), |b, i| b.vertex(format!("u{i}")));
    (1..=n)
        .fold(b, |b, i| {
            b.edge(format!("f{i}"), format!("u{i}"), format!("u{}", i % n + 1))
        })
        .build()
}
