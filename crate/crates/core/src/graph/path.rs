use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::{EdgeId, Graph, GraphError, VertexId};

/// A path of `E`: either the trivial path at a vertex or a composable,
/// nonempty edge sequence. Source and range are cached so concatenation
/// never needs the ambient graph.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            source: v,
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Path {
        Path {
            source: g.source(e),
            range: g.range(e),
            edges: vec![e],
        }
    }

    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Result<Path, GraphError> {
        let (first, last) = match (edges.first(), edges.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(GraphError::NotComposable(String::new(), String::new())),
        };
        for &e in edges {
            if e.0 >= g.edge_count() {
                return Err(GraphError::UnknownEdge(format!("#{}", e.0)));
            }
        }
        for w in edges.windows(2) {
            if g.range(w[0]) != g.source(w[1]) {
                return Err(GraphError::NotComposable(
                    g.edge_name(w[0]).to_string(),
                    g.edge_name(w[1]).to_string(),
                ));
            }
        }
        Ok(Path {
            source: g.source(first),
            range: g.range(last),
            edges: edges.to_vec(),
        })
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn first_edge(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// Concatenation `self · other`, or `None` when `r(self) ≠ s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.range != other.source {
            return None;
        }
        let mut edges = Vec::with_capacity(self.len() + other.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        Some(Path {
            source: self.source,
            range: other.range,
            edges,
        })
    }

    /// Extends by one edge; the caller guarantees composability.
    pub(crate) fn push(&self, g: &Graph, e: EdgeId) -> Path {
        debug_assert_eq!(g.source(e), self.range);
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            source: self.source,
            range: g.range(e),
            edges,
        }
    }

    /// Prepends one edge; the caller guarantees composability.
    pub(crate) fn prepend(&self, g: &Graph, e: EdgeId) -> Path {
        debug_assert_eq!(g.range(e), self.source);
        let mut edges = Vec::with_capacity(self.len() + 1);
        edges.push(e);
        edges.extend_from_slice(&self.edges);
        Path {
            source: g.source(e),
            range: self.range,
            edges,
        }
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.source != self.source || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            source: prefix.range,
            range: self.range,
            edges: self.edges[prefix.len()..].to_vec(),
        })
    }

    /// Drops the last edge: `λ = λ' e` gives `(λ', e)`.
    pub(crate) fn split_last(&self, g: &Graph) -> Option<(Path, EdgeId)> {
        let (&last, rest) = self.edges.split_last()?;
        let init = Path {
            source: self.source,
            range: g.source(last),
            edges: rest.to_vec(),
        };
        Some((init, last))
    }

    /// `k`-fold concatenation of a closed path; `power(0)` is the base vertex.
    pub fn power(&self, k: usize) -> Option<Path> {
        if self.source != self.range {
            return None;
        }
        let mut edges = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            edges.extend_from_slice(&self.edges);
        }
        Some(Path {
            source: self.source,
            range: self.range,
            edges,
        })
    }

    pub fn is_closed(&self) -> bool {
        !self.is_trivial() && self.source == self.range
    }

    /// Vertices visited, as the sources of the edges followed by the range.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut out: Vec<_> = self.edges.iter().map(|&e| g.source(e)).collect();
        out.push(self.range);
        out
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.is_trivial() {
            format!("@{}", g.vertex_name(self.source))
        } else {
            self.edges
                .iter()
                .map(|&e| g.edge_name(e))
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

impl Ord for Path {
    /// Shorter paths first, then lexicographic on edge ids, then source.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A closed path whose edges have pairwise distinct sources, stored in the
/// rotation that starts with its least edge id.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cycle {
    path: Path,
}

impl Cycle {
    /// Validates and canonicalizes a closed path of `g`.
    pub fn new(g: &Graph, edges: &[EdgeId]) -> Result<Cycle, GraphError> {
        let path = Path::from_edges(g, edges).map_err(|_| GraphError::NotACycle)?;
        if !path.is_closed() {
            return Err(GraphError::NotACycle);
        }
        let sources: BTreeSet<_> = edges.iter().map(|&e| g.source(e)).collect();
        if sources.len() != edges.len() {
            return Err(GraphError::NotACycle);
        }
        let lead = (0..edges.len())
            .min_by_key(|&i| edges[i])
            .expect("nonempty");
        let rotated: Vec<_> = edges[lead..]
            .iter()
            .chain(&edges[..lead])
            .copied()
            .collect();
        Ok(Cycle {
            path: Path::from_edges(g, &rotated)?,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Source of the leading edge in canonical rotation.
    pub fn base(&self) -> VertexId {
        self.path.source()
    }

    pub fn edges(&self) -> &[EdgeId] {
        self.path.edges()
    }

    /// `μ⁰`, the vertex set of the cycle.
    pub fn vertex_set(&self, g: &Graph) -> BTreeSet<VertexId> {
        self.edges().iter().map(|&e| g.source(e)).collect()
    }

    /// The rotation of the cycle based at `v`, if `v` lies on it.
    pub fn rotation_at(&self, g: &Graph, v: VertexId) -> Option<Path> {
        let edges = self.edges();
        let i = edges.iter().position(|&e| g.source(e) == v)?;
        let rotated: Vec<_> = edges[i..].iter().chain(&edges[..i]).copied().collect();
        Some(Path::from_edges(g, &rotated).expect("rotation of a cycle"))
    }

    /// Every rotation, ordered by position along the canonical rotation.
    pub fn rotations(&self, g: &Graph) -> Vec<Path> {
        self.edges()
            .iter()
            .map(|&e| self.rotation_at(g, g.source(e)).expect("vertex on cycle"))
            .collect()
    }

    /// Checks that the cycle's edges exist in `g` with the same incidence.
    pub(crate) fn belongs_to(&self, g: &Graph) -> bool {
        Path::from_edges(g, self.edges())
            .map(|p| p == self.path)
            .unwrap_or(false)
    }
}
