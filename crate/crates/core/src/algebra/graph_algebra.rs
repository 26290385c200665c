//! Cohn path algebras `C_K(E)` and Leavitt path algebras `L_K(E)`.
//!
//! Both have the monomials `λμ*` with `r(λ) = r(μ)` as a spanning set. In the
//! Cohn algebra they form a basis. In the Leavitt algebra one special edge
//! `e_v` is fixed at every regular vertex `v`, and the basis consists of the
//! monomials that do not end in `e_v e_v*` at the junction of the real and
//! ghost parts; such a junction is eliminated with
//! `e_v e_v* = v − Σ_{f ∈ s⁻¹(v), f ≠ e_v} f f*`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::field::Field;
use crate::graph::{EdgeId, Graph, Path, VertexId};

use super::path_algebra::parse_path;
use super::{kernel_in_span, Algebra, AlgebraError, AlgebraKind, Element};

pub type GAElement<F> = Element<GraphAlgebra, F>;

/// The monomial `λμ*` with real part `λ` and ghost part `μ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GMonomial {
    pub real: Path,
    pub ghost: Path,
}

impl GMonomial {
    pub fn new(real: Path, ghost: Path) -> Option<GMonomial> {
        (real.range() == ghost.range()).then_some(GMonomial { real, ghost })
    }

    pub fn vertex(v: VertexId) -> GMonomial {
        GMonomial {
            real: Path::vertex(v),
            ghost: Path::vertex(v),
        }
    }

    /// The path `λ` viewed as `λ r(λ)*`.
    pub fn real_path(p: Path) -> GMonomial {
        let ghost = Path::vertex(p.range());
        GMonomial { real: p, ghost }
    }

    /// `μ*` viewed as `r(μ) μ*`.
    pub fn ghost_path(p: Path) -> GMonomial {
        let real = Path::vertex(p.range());
        GMonomial { real, ghost: p }
    }

    pub fn degree(&self) -> i64 {
        self.real.len() as i64 - self.ghost.len() as i64
    }
}

/// A special edge at every regular vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialEdgeChoice(BTreeMap<VertexId, EdgeId>);

impl SpecialEdgeChoice {
    /// The least edge id emitted by each regular vertex.
    pub fn least(g: &Graph) -> Self {
        SpecialEdgeChoice(
            g.vertices()
                .filter_map(|v| g.out_edges(v).first().map(|&e| (v, e)))
                .collect(),
        )
    }

    pub fn custom(g: &Graph, choice: BTreeMap<VertexId, EdgeId>) -> Result<Self, AlgebraError> {
        for v in g.vertices() {
            let ok = match choice.get(&v) {
                Some(&e) => e.0 < g.edge_count() && g.source(e) == v,
                None => g.is_sink(v),
            };
            if !ok {
                return Err(AlgebraError::BadSpecialEdge(g.vertex_name(v).to_string()));
            }
        }
        if choice.keys().any(|v| !g.contains_vertex(*v)) {
            return Err(AlgebraError::BadSpecialEdge("?".into()));
        }
        Ok(SpecialEdgeChoice(choice))
    }

    pub fn at(&self, v: VertexId) -> Option<EdgeId> {
        self.0.get(&v).copied()
    }

    pub fn is_special(&self, g: &Graph, e: EdgeId) -> bool {
        self.at(g.source(e)) == Some(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphAlgebra {
    graph: Arc<Graph>,
    kind: AlgebraKind,
    special: SpecialEdgeChoice,
}

impl GraphAlgebra {
    pub fn cohn(graph: Arc<Graph>) -> Arc<Self> {
        let special = SpecialEdgeChoice::least(&graph);
        Arc::new(GraphAlgebra {
            graph,
            kind: AlgebraKind::Cohn,
            special,
        })
    }

    pub fn leavitt(graph: Arc<Graph>) -> Arc<Self> {
        let special = SpecialEdgeChoice::least(&graph);
        Arc::new(GraphAlgebra {
            graph,
            kind: AlgebraKind::Leavitt,
            special,
        })
    }

    pub fn leavitt_with_choice(graph: Arc<Graph>, special: SpecialEdgeChoice) -> Arc<Self> {
        Arc::new(GraphAlgebra {
            graph,
            kind: AlgebraKind::Leavitt,
            special,
        })
    }

    /// `kind` must be Cohn or Leavitt.
    pub fn new(graph: Arc<Graph>, kind: AlgebraKind) -> Arc<Self> {
        match kind {
            AlgebraKind::Cohn => Self::cohn(graph),
            AlgebraKind::Leavitt => Self::leavitt(graph),
            AlgebraKind::Path => panic!("path algebras are built with PathAlgebra::new"),
        }
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn special_edges(&self) -> &SpecialEdgeChoice {
        &self.special
    }

    pub fn is_leavitt(&self) -> bool {
        self.kind == AlgebraKind::Leavitt
    }

    /// Whether `λμ*` is a basis monomial of this algebra.
    pub fn is_normal(&self, m: &GMonomial) -> bool {
        if m.real.range() != m.ghost.range() {
            return false;
        }
        if !self.is_leavitt() {
            return true;
        }
        match (m.real.last_edge(), m.ghost.last_edge()) {
            (Some(a), Some(b)) => !(a == b && self.special.is_special(&self.graph, a)),
            _ => true,
        }
    }

    /// Expands `λμ*` (with `r(λ) = r(μ)`) into basis monomials.
    pub(crate) fn reduce<F: Field>(
        &self,
        real: Path,
        ghost: Path,
        coef: F,
        out: &mut Vec<(GMonomial, F)>,
    ) {
        let g = &*self.graph;
        let (mut real, mut ghost) = (real, ghost);
        loop {
            let junction = match (real.last_edge(), ghost.last_edge()) {
                (Some(a), Some(b))
                    if self.is_leavitt() && a == b && self.special.is_special(g, a) =>
                {
                    a
                }
                _ => {
                    out.push((GMonomial { real, ghost }, coef));
                    return;
                }
            };
            let (real_init, _) = real.split_last(g).expect("nonempty");
            let (ghost_init, _) = ghost.split_last(g).expect("nonempty");
            for &f in g.out_edges(g.source(junction)) {
                if f != junction {
                    out.push((
                        GMonomial {
                            real: real_init.push(g, f),
                            ghost: ghost_init.push(g, f),
                        },
                        -coef.clone(),
                    ));
                }
            }
            real = real_init;
            ghost = ghost_init;
        }
    }

    /// Product of two basis monomials:
    /// `(λ₁μ₁*)(λ₂μ₂*)` is `λ₁κμ₂*` if `λ₂ = μ₁κ`, `λ₁(μ₂κ)*` if `μ₁ = λ₂κ`,
    /// and zero otherwise; the result is then brought to normal form.
    fn product<F: Field>(&self, a: &GMonomial, b: &GMonomial) -> Vec<(GMonomial, F)> {
        let mut out = Vec::new();
        if let Some(kappa) = b.real.strip_prefix(&a.ghost) {
            let real = a.real.concat(&kappa).expect("composable");
            self.reduce(real, b.ghost.clone(), F::one(), &mut out);
        } else if let Some(kappa) = a.ghost.strip_prefix(&b.real) {
            let ghost = b.ghost.concat(&kappa).expect("composable");
            self.reduce(a.real.clone(), ghost, F::one(), &mut out);
        }
        out
    }

    pub fn edge_mono(&self, e: EdgeId) -> GMonomial {
        GMonomial::real_path(Path::edge(&self.graph, e))
    }

    pub fn ghost_mono(&self, e: EdgeId) -> GMonomial {
        GMonomial::ghost_path(Path::edge(&self.graph, e))
    }
}

impl Algebra for GraphAlgebra {
    type Mono = GMonomial;

    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn kind(&self) -> AlgebraKind {
        self.kind
    }

    fn vertex_mono(&self, v: VertexId) -> GMonomial {
        GMonomial::vertex(v)
    }

    fn generators(&self) -> Vec<GMonomial> {
        let g = &self.graph;
        g.vertices()
            .map(GMonomial::vertex)
            .chain(g.edges().map(|e| self.edge_mono(e)))
            .chain(g.edges().map(|e| self.ghost_mono(e)))
            .collect()
    }

    fn mul_mono<F: Field>(&self, a: &GMonomial, b: &GMonomial) -> Vec<(GMonomial, F)> {
        self.product(a, b)
    }

    fn degree(&self, m: &GMonomial) -> i64 {
        m.degree()
    }

    fn real_len(&self, m: &GMonomial) -> usize {
        m.real.len()
    }

    fn ghost_len(&self, m: &GMonomial) -> usize {
        m.ghost.len()
    }

    fn left_vertex(&self, m: &GMonomial) -> VertexId {
        m.real.source()
    }

    fn right_vertex(&self, m: &GMonomial) -> VertexId {
        m.ghost.source()
    }

    fn junction_vertex(&self, m: &GMonomial) -> VertexId {
        m.real.range()
    }

    fn star(&self, m: &GMonomial) -> Option<GMonomial> {
        Some(GMonomial {
            real: m.ghost.clone(),
            ghost: m.real.clone(),
        })
    }

    fn is_symmetric_mono(&self, m: &GMonomial) -> bool {
        m.real == m.ghost
    }

    fn monomials_up_to(&self, max_len: usize) -> Vec<GMonomial> {
        let paths = self.graph.paths_up_to(max_len);
        let mut by_range: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
        for p in &paths {
            by_range.entry(p.range()).or_default().push(p);
        }
        let mut out = Vec::new();
        for group in by_range.values() {
            for real in group {
                for ghost in group {
                    let m = GMonomial {
                        real: (*real).clone(),
                        ghost: (*ghost).clone(),
                    };
                    if self.is_normal(&m) {
                        out.push(m);
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn format_mono(&self, m: &GMonomial) -> String {
        let real = m.real.display(&self.graph);
        if m.ghost.is_trivial() {
            real
        } else {
            format!("{}|{}", real, m.ghost.display(&self.graph))
        }
    }

    fn parse_mono(&self, s: &str) -> Result<GMonomial, AlgebraError> {
        let (real, ghost) = match s.split_once('|') {
            Some((r, g)) => (
                parse_path(&self.graph, r)?,
                Some(parse_path(&self.graph, g)?),
            ),
            None => (parse_path(&self.graph, s)?, None),
        };
        let ghost = ghost.unwrap_or_else(|| Path::vertex(real.range()));
        let m = GMonomial::new(real, ghost).ok_or(AlgebraError::RangeMismatch)?;
        if !self.is_normal(&m) {
            return Err(AlgebraError::Parse {
                text: s.to_string(),
                reason: "not a basis monomial of the Leavitt algebra".into(),
            });
        }
        Ok(m)
    }
}

impl<F: Field> GAElement<F> {
    pub fn edge(alg: &Arc<GraphAlgebra>, e: EdgeId) -> Self {
        Self::monomial(alg, alg.edge_mono(e))
    }

    pub fn ghost(alg: &Arc<GraphAlgebra>, e: EdgeId) -> Self {
        Self::monomial(alg, alg.ghost_mono(e))
    }

    /// `λμ*` for arbitrary paths with a common range, in normal form.
    pub fn from_paths(
        alg: &Arc<GraphAlgebra>,
        real: Path,
        ghost: Path,
    ) -> Result<Self, AlgebraError> {
        if real.range() != ghost.range() {
            return Err(AlgebraError::RangeMismatch);
        }
        let mut out = Vec::new();
        alg.reduce(real, ghost, F::one(), &mut out);
        Ok(Self::from_terms(alg, out))
    }

    pub fn real_path(alg: &Arc<GraphAlgebra>, p: Path) -> Self {
        Self::monomial(alg, GMonomial::real_path(p))
    }

    /// The involution `(λμ*)* = μλ*`, identity on scalars.
    pub fn involution(&self) -> Self {
        self.star().expect("graph algebras have an involution")
    }

    /// `T_a(x) = a* x a`.
    pub fn t_operator(a: &Self, x: &Self) -> Result<Self, AlgebraError> {
        a.involution().try_mul(x)?.try_mul(a)
    }
}

/// Basis of the degree-zero fixed points of `T_c` inside the span of
/// monomials `λμ*` with `s(λ) = s(μ) = s(c)` and `l(λ) = l(μ) ≤ max_len`.
pub fn fixed_point_subspace<F: Field>(
    alg: &Arc<GraphAlgebra>,
    c: &Path,
    max_len: usize,
) -> Result<Vec<GAElement<F>>, AlgebraError> {
    if !c.is_closed() {
        return Err(AlgebraError::NotClosed);
    }
    let u = c.source();
    let cel = GAElement::<F>::real_path(alg, c.clone());
    let candidates: Vec<GAElement<F>> = alg
        .monomials_up_to(max_len)
        .into_iter()
        .filter(|m| m.degree() == 0 && m.real.source() == u && m.ghost.source() == u)
        .map(|m| GAElement::monomial(alg, m))
        .collect();
    let images: Vec<Vec<GAElement<F>>> = candidates
        .iter()
        .map(|m| Ok(vec![&GAElement::t_operator(&cel, m)? - m]))
        .collect::<Result<_, AlgebraError>>()?;
    Ok(kernel_in_span(alg, &candidates, &images))
}

/// The graph `F` with `C_K(E) ≅ L_K(F)`: for every regular vertex `v` a new
/// sink `v'`, and for every edge `e` with regular range a new edge
/// `e': s(e) → r(e)'`.
pub fn cohn_to_leavitt_graph(g: &Graph) -> Graph {
    let taken = |name: &str| g.vertex_id(name).is_ok() || g.edge_id(name).is_ok();
    let fresh = |base: &str| {
        let mut name = format!("{base}_p");
        while taken(&name) {
            name.push('p');
        }
        name
    };
    let mut vertices: Vec<String> = g.vertices().map(|v| g.vertex_name(v).to_string()).collect();
    let mut primed = BTreeMap::new();
    for v in g.vertices().filter(|&v| g.is_regular(v)) {
        let name = fresh(g.vertex_name(v));
        primed.insert(v, name.clone());
        vertices.push(name);
    }
    let mut edges: Vec<(String, String, String)> = g
        .edges()
        .map(|e| {
            (
                g.edge_name(e).to_string(),
                g.vertex_name(g.source(e)).to_string(),
                g.vertex_name(g.range(e)).to_string(),
            )
        })
        .collect();
    for e in g.edges() {
        if let Some(target) = primed.get(&g.range(e)) {
            edges.push((
                fresh(g.edge_name(e)),
                g.vertex_name(g.source(e)).to_string(),
                target.clone(),
            ));
        }
    }
    Graph::from_parts(vertices, edges).expect("fresh names are unique")
}

/// Whether the products `x·m·y` vanish for every monomial `m` up to the
/// given length; returns the first nonzero product otherwise.
pub fn sandwich_vanishes<F: Field>(
    x: &GAElement<F>,
    y: &GAElement<F>,
    max_len: usize,
) -> Option<GAElement<F>> {
    let alg = x.algebra();
    alg.monomials_up_to(max_len).into_iter().find_map(|m| {
        let p = &(x * &GAElement::monomial(alg, m)) * y;
        (!p.is_zero()).then_some(p)
    })
}
