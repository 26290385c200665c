//! Python bindings: graphs, graph algebras, their elements, centers and the
//! bounded center oracle.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use pathcenter::algebra::{
    normal_form, parse_word, Degree, Element as CoreElement, GraphAlgebra, PathAlgebra,
    RewriteOrder,
};
use pathcenter::center::{
    center_bounds, center_prime_cohn, center_prime_leavitt, center_structure_ke, is_prime_cohn,
    is_prime_leavitt,
};
use pathcenter::field::{Field, Rational};
use pathcenter::graph::Graph as CoreGraph;
use pathcenter::io::graph_file::{emit_graph, parse_graph};
use pathcenter::oracle::{central_subspace, check_central, OracleWindow};

type Q = Rational;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite directed multigraph.
#[pyclass(frozen, module = "pathcenter")]
struct Graph {
    inner: Arc<CoreGraph>,
}

#[pymethods]
impl Graph {
    /// Parses the plain-text graph format.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Graph {
            inner: Arc::new(parse_graph(text).map_err(value_err)?),
        })
    }

    fn to_text(&self) -> String {
        emit_graph(&self.inner)
    }

    fn vertices(&self) -> Vec<String> {
        self.inner
            .vertices()
            .map(|v| self.inner.vertex_name(v).to_string())
            .collect()
    }

    /// `(id, source, range)` triples.
    fn edges(&self) -> Vec<(String, String, String)> {
        let g = &self.inner;
        g.edges()
            .map(|e| {
                (
                    g.edge_name(e).to_string(),
                    g.vertex_name(g.source(e)).to_string(),
                    g.vertex_name(g.range(e)).to_string(),
                )
            })
            .collect()
    }

    fn sinks(&self) -> Vec<String> {
        let g = &self.inner;
        g.vertices()
            .filter(|&v| g.is_sink(v))
            .map(|v| g.vertex_name(v).to_string())
            .collect()
    }

    fn cycles(&self) -> Vec<String> {
        self.inner
            .find_cycles()
            .iter()
            .map(|c| c.path().display(&self.inner))
            .collect()
    }

    fn condition_l(&self) -> bool {
        self.inner.condition_l()
    }

    fn is_downward_directed(&self) -> bool {
        self.inner.is_downward_directed()
    }

    fn hereditary_saturated_sets(&self) -> PyResult<Vec<Vec<String>>> {
        let sets = self
            .inner
            .enumerate_hereditary_saturated()
            .map_err(value_err)?;
        Ok(sets
            .iter()
            .map(|h| self.inner.vertex_set_names(h.vertices()))
            .collect())
    }

    fn is_prime_leavitt(&self) -> bool {
        is_prime_leavitt(&self.inner)
    }

    fn is_prime_cohn(&self) -> bool {
        is_prime_cohn(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

#[derive(Clone)]
enum AnyElement {
    Path(CoreElement<PathAlgebra, Q>),
    Graph(CoreElement<GraphAlgebra, Q>),
}

macro_rules! each {
    ($x:expr, $v:ident => $body:expr) => {
        match $x {
            AnyElement::Path($v) => $body,
            AnyElement::Graph($v) => $body,
        }
    };
}

/// An element of a path, Cohn or Leavitt path algebra.
#[pyclass(frozen, module = "pathcenter")]
struct Element {
    inner: AnyElement,
}

fn binary(
    a: &AnyElement,
    b: &AnyElement,
    op: impl Fn(&AnyElement, &AnyElement) -> Option<Result<AnyElement, String>>,
) -> PyResult<Element> {
    match op(a, b) {
        Some(Ok(inner)) => Ok(Element { inner }),
        Some(Err(e)) => Err(value_err(e)),
        None => Err(value_err("elements of different algebras")),
    }
}

#[pymethods]
impl Element {
    fn __str__(&self) -> String {
        each!(&self.inner, x => x.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.__str__())
    }

    fn __eq__(&self, other: &Element) -> bool {
        match (&self.inner, &other.inner) {
            (AnyElement::Path(a), AnyElement::Path(b)) => a == b,
            (AnyElement::Graph(a), AnyElement::Graph(b)) => a == b,
            _ => false,
        }
    }

    fn __add__(&self, other: &Element) -> PyResult<Element> {
        binary(&self.inner, &other.inner, |a, b| match (a, b) {
            (AnyElement::Path(x), AnyElement::Path(y)) => Some(
                x.try_add(y)
                    .map(AnyElement::Path)
                    .map_err(|e| e.to_string()),
            ),
            (AnyElement::Graph(x), AnyElement::Graph(y)) => Some(
                x.try_add(y)
                    .map(AnyElement::Graph)
                    .map_err(|e| e.to_string()),
            ),
            _ => None,
        })
    }

    fn __sub__(&self, other: &Element) -> PyResult<Element> {
        binary(&self.inner, &other.inner, |a, b| match (a, b) {
            (AnyElement::Path(x), AnyElement::Path(y)) => Some(
                x.try_sub(y)
                    .map(AnyElement::Path)
                    .map_err(|e| e.to_string()),
            ),
            (AnyElement::Graph(x), AnyElement::Graph(y)) => Some(
                x.try_sub(y)
                    .map(AnyElement::Graph)
                    .map_err(|e| e.to_string()),
            ),
            _ => None,
        })
    }

    fn __mul__(&self, other: &Element) -> PyResult<Element> {
        binary(&self.inner, &other.inner, |a, b| match (a, b) {
            (AnyElement::Path(x), AnyElement::Path(y)) => Some(
                x.try_mul(y)
                    .map(AnyElement::Path)
                    .map_err(|e| e.to_string()),
            ),
            (AnyElement::Graph(x), AnyElement::Graph(y)) => Some(
                x.try_mul(y)
                    .map(AnyElement::Graph)
                    .map_err(|e| e.to_string()),
            ),
            _ => None,
        })
    }

    /// Multiplies by the scalar `p/q` given as text.
    fn scale(&self, scalar: &str) -> PyResult<Element> {
        let c = Q::parse_scalar(scalar).map_err(value_err)?;
        let inner = match &self.inner {
            AnyElement::Path(x) => AnyElement::Path(x.scale(&c)),
            AnyElement::Graph(x) => AnyElement::Graph(x.scale(&c)),
        };
        Ok(Element { inner })
    }

    /// The involution; `None` in a path algebra.
    fn star(&self) -> Option<Element> {
        let inner = match &self.inner {
            AnyElement::Path(x) => AnyElement::Path(x.star()?),
            AnyElement::Graph(x) => AnyElement::Graph(x.star()?),
        };
        Some(Element { inner })
    }

    fn is_zero(&self) -> bool {
        each!(&self.inner, x => x.is_zero())
    }

    fn is_central(&self) -> bool {
        each!(&self.inner, x => check_central(x))
    }

    fn is_symmetric(&self) -> bool {
        each!(&self.inner, x => x.is_symmetric())
    }

    /// The degree, or `None` for zero and for mixed elements.
    fn degree(&self) -> Option<i64> {
        match each!(&self.inner, x => x.degree()) {
            Degree::Homogeneous(d) => Some(d),
            Degree::Zero | Degree::Mixed => None,
        }
    }
}

#[derive(Clone)]
enum AnyAlgebra {
    Path(Arc<PathAlgebra>),
    Graph(Arc<GraphAlgebra>),
}

/// `KE`, `C_K(E)` or `L_K(E)` over the rationals.
#[pyclass(frozen, name = "GraphAlgebra", module = "pathcenter")]
struct GraphAlgebraPy {
    inner: AnyAlgebra,
}

fn window(
    max_len: usize,
    deg: Option<i64>,
    deg_window: Option<(i64, i64)>,
) -> PyResult<OracleWindow> {
    match (deg, deg_window) {
        (Some(_), Some(_)) => Err(value_err("give at most one of deg and deg_window")),
        (Some(n), None) => OracleWindow::degree(max_len, n).map_err(value_err),
        (None, Some((a, b))) => OracleWindow::degree_window(max_len, a, b).map_err(value_err),
        (None, None) => Ok(OracleWindow::new(max_len)),
    }
}

#[pymethods]
impl GraphAlgebraPy {
    /// `kind` is `"path"`, `"cohn"` or `"leavitt"`.
    #[new]
    fn new(graph: &Graph, kind: &str) -> PyResult<Self> {
        let g = graph.inner.clone();
        let inner = match kind {
            "path" => AnyAlgebra::Path(PathAlgebra::new(g)),
            "cohn" => AnyAlgebra::Graph(GraphAlgebra::cohn(g)),
            "leavitt" => AnyAlgebra::Graph(GraphAlgebra::leavitt(g)),
            other => return Err(value_err(format!("unknown algebra kind `{other}`"))),
        };
        Ok(GraphAlgebraPy { inner })
    }

    /// Parses element text such as `"3/2 e1.e2|e3 + -1 @u"`.
    fn element(&self, text: &str) -> PyResult<Element> {
        let inner = match &self.inner {
            AnyAlgebra::Path(a) => {
                AnyElement::Path(CoreElement::parse(a, text).map_err(value_err)?)
            }
            AnyAlgebra::Graph(a) => {
                AnyElement::Graph(CoreElement::parse(a, text).map_err(value_err)?)
            }
        };
        Ok(Element { inner })
    }

    fn one(&self) -> Element {
        let inner = match &self.inner {
            AnyAlgebra::Path(a) => AnyElement::Path(CoreElement::one(a)),
            AnyAlgebra::Graph(a) => AnyElement::Graph(CoreElement::one(a)),
        };
        Element { inner }
    }

    /// Reduces a raw word such as `"e.f*.@v"` to normal form; `seed` picks
    /// random redexes.
    #[pyo3(signature = (word, seed=None))]
    fn normal_form(&self, word: &str, seed: Option<u64>) -> PyResult<Element> {
        let AnyAlgebra::Graph(a) = &self.inner else {
            return Err(value_err("raw words need a Cohn or Leavitt path algebra"));
        };
        let letters = parse_word(a.graph_arc(), word).map_err(value_err)?;
        let order = seed.map_or(RewriteOrder::Leftmost, RewriteOrder::Random);
        let x = normal_form(a, &[(Q::from_i64(1), letters)], order).map_err(value_err)?;
        Ok(Element {
            inner: AnyElement::Graph(x),
        })
    }

    /// The structural center as a ring description such as `"K[x,x^-1]"`,
    /// with its generators.
    fn center(&self) -> PyResult<(String, Vec<String>)> {
        match &self.inner {
            AnyAlgebra::Path(a) => {
                let s = center_structure_ke::<Q>(a);
                Ok((
                    s.to_string(),
                    s.elements().iter().map(|x| x.to_string()).collect(),
                ))
            }
            AnyAlgebra::Graph(a) => {
                let s = if a.is_leavitt() {
                    center_prime_leavitt::<Q>(a).map(|c| c.structure)
                } else {
                    center_prime_cohn::<Q>(a)
                }
                .map_err(value_err)?;
                Ok((
                    s.to_string(),
                    s.elements().iter().map(|x| x.to_string()).collect(),
                ))
            }
        }
    }

    /// Upper and lower bounds for the center of a Leavitt path algebra.
    fn center_bounds(&self) -> PyResult<(String, String)> {
        let AnyAlgebra::Graph(a) = &self.inner else {
            return Err(value_err("bounds need a Leavitt path algebra"));
        };
        let b = center_bounds::<Q>(a).map_err(value_err)?;
        Ok((b.upper_display(), b.lower_display()))
    }

    /// A basis of the central elements within the window.
    #[pyo3(signature = (max_len, deg=None, deg_window=None))]
    fn oracle(
        &self,
        max_len: usize,
        deg: Option<i64>,
        deg_window: Option<(i64, i64)>,
    ) -> PyResult<Vec<Element>> {
        let w = window(max_len, deg, deg_window)?;
        let err = |e: pathcenter::oracle::OracleError| PyRuntimeError::new_err(e.to_string());
        Ok(match &self.inner {
            AnyAlgebra::Path(a) => central_subspace::<PathAlgebra, Q>(a, w)
                .map_err(err)?
                .basis
                .into_iter()
                .map(|x| Element {
                    inner: AnyElement::Path(x),
                })
                .collect(),
            AnyAlgebra::Graph(a) => central_subspace::<GraphAlgebra, Q>(a, w)
                .map_err(err)?
                .basis
                .into_iter()
                .map(|x| Element {
                    inner: AnyElement::Graph(x),
                })
                .collect(),
        })
    }
}

/// Runs the command line with `args` (without the program name) and
/// returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let out = pathcenter::io::cli::run(std::iter::once("pathcenter".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
#[pyo3(name = "pathcenter")]
pub fn pathcenter_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Element>()?;
    m.add_class::<GraphAlgebraPy>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
