//! The path algebra `KE`: paths as a basis, concatenation as product, graded
//! by length.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::field::Field;
use crate::graph::{Graph, Path, VertexId};
use crate::linalg::Echelon;

use super::{Algebra, AlgebraError, AlgebraKind, Element};

pub type KEElement<F> = Element<PathAlgebra, F>;

#[derive(Clone, Debug, PartialEq)]
pub struct PathAlgebra {
    graph: Arc<Graph>,
}

impl PathAlgebra {
    pub fn new(graph: Arc<Graph>) -> Arc<Self> {
        Arc::new(PathAlgebra { graph })
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }
}

pub(crate) fn parse_path(g: &Graph, s: &str) -> Result<Path, AlgebraError> {
    if let Some(v) = s.strip_prefix('@') {
        return Ok(Path::vertex(g.vertex_id(v)?));
    }
    let edges = s
        .split('.')
        .map(|e| g.edge_id(e))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Path::from_edges(g, &edges)?)
}

impl Algebra for PathAlgebra {
    type Mono = Path;

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn kind(&self) -> AlgebraKind {
        AlgebraKind::Path
    }

    fn vertex_mono(&self, v: VertexId) -> Path {
        Path::vertex(v)
    }

    fn generators(&self) -> Vec<Path> {
        let g = &self.graph;
        g.vertices()
            .map(Path::vertex)
            .chain(g.edges().map(|e| Path::edge(g, e)))
            .collect()
    }

    fn mul_mono<F: Field>(&self, a: &Path, b: &Path) -> Vec<(Path, F)> {
        a.concat(b).map(|p| (p, F::one())).into_iter().collect()
    }

    fn degree(&self, m: &Path) -> i64 {
        m.len() as i64
    }

    fn real_len(&self, m: &Path) -> usize {
        m.len()
    }

    fn ghost_len(&self, _: &Path) -> usize {
        0
    }

    fn left_vertex(&self, m: &Path) -> VertexId {
        m.source()
    }

    fn right_vertex(&self, m: &Path) -> VertexId {
        m.range()
    }

    fn junction_vertex(&self, m: &Path) -> VertexId {
        m.range()
    }

    fn star(&self, _: &Path) -> Option<Path> {
        None
    }

    fn is_symmetric_mono(&self, m: &Path) -> bool {
        m.is_trivial()
    }

    fn monomials_up_to(&self, max_len: usize) -> Vec<Path> {
        self.graph.paths_up_to(max_len)
    }

    fn format_mono(&self, m: &Path) -> String {
        m.display(&self.graph)
    }

    fn parse_mono(&self, s: &str) -> Result<Path, AlgebraError> {
        let (real, ghost) = match s.split_once('|') {
            Some((r, g)) => (r, Some(g)),
            None => (s, None),
        };
        let path = parse_path(&self.graph, real)?;
        if let Some(ghost) = ghost {
            let ghost = parse_path(&self.graph, ghost)?;
            if !ghost.is_trivial() || ghost.source() != path.range() {
                return Err(AlgebraError::GhostInPathAlgebra(AlgebraKind::Path));
            }
        }
        Ok(path)
    }
}

impl<F: Field> KEElement<F> {
    pub fn path(alg: &Arc<PathAlgebra>, p: Path) -> Self {
        Self::monomial(alg, p)
    }
}

/// Decides by exact linear algebra whether `μ·x = 0` forces `x = 0` for `x`
/// in the span of paths from `v` to `w` of length at most `bound`.
pub fn left_annihilator_test<F: Field>(
    alg: &Arc<PathAlgebra>,
    mu: &Path,
    v: VertexId,
    w: VertexId,
    bound: usize,
) -> Result<bool, AlgebraError> {
    let g = alg.graph();
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if mu.range() != v {
        return Err(AlgebraError::RangeMismatch);
    }
    let span: Vec<Path> = g
        .paths_up_to(bound)
        .into_iter()
        .filter(|p| p.source() == v && p.range() == w)
        .collect();
    // Columns are the span's paths; rows are coordinates of μ·x.
    let mu = KEElement::<F>::path(alg, mu.clone());
    let mut rows: BTreeMap<Path, Vec<(usize, F)>> = BTreeMap::new();
    for (j, p) in span.iter().enumerate() {
        let image = &mu * &KEElement::path(alg, p.clone());
        for (m, c) in image.terms() {
            rows.entry(m.clone()).or_default().push((j, c.clone()));
        }
    }
    let mut ech = Echelon::new();
    for r in rows.values() {
        ech.insert(r);
    }
    Ok(ech.nullspace(span.len()).is_empty())
}
