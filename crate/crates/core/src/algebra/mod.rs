//! Exact linear combinations of basis monomials in path algebras, Cohn path
//! algebras and Leavitt path algebras.
//!
//! An [`Algebra`] fixes the monomial basis and how two basis monomials
//! multiply; [`Element`] is a finite linear combination over a [`Field`] tied
//! to one shared algebra instance.

pub mod graph_algebra;
pub mod path_algebra;
pub mod rewrite;

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, ScalarParseError};
use crate::graph::{Graph, GraphError, VertexId};
use crate::linalg::{Echelon, SparseVec};

pub use graph_algebra::{
    cohn_to_leavitt_graph, fixed_point_subspace, sandwich_vanishes, GAElement, GMonomial,
    GraphAlgebra, SpecialEdgeChoice,
};
pub use path_algebra::{KEElement, PathAlgebra};
pub use rewrite::{format_word, monomial_word, normal_form, parse_word, Letter, RewriteOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Path,
    Cohn,
    Leavitt,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Path => "path",
            AlgebraKind::Cohn => "cohn",
            AlgebraKind::Leavitt => "leavitt",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras")]
    MismatchedAlgebra,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scalar(#[from] ScalarParseError),
    #[error("cannot parse `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("word is not composable at position {0}")]
    NotComposable(usize),
    #[error("graph is not a single cycle")]
    NotACycleGraph,
    #[error("path does not end at the given vertex")]
    RangeMismatch,
    #[error("path is not closed")]
    NotClosed,
    #[error("invalid special edge choice at vertex {0}")]
    BadSpecialEdge(String),
    #[error("{0} algebra requires a ghost-free monomial")]
    GhostInPathAlgebra(AlgebraKind),
}

/// Homogeneous degree of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Degree {
    /// The zero element, homogeneous of every degree.
    Zero,
    Homogeneous(i64),
    Mixed,
}

/// A monomial basis together with its multiplication table.
pub trait Algebra: Debug + PartialEq + Send + Sync + 'static {
    type Mono: Clone + Ord + Hash + Debug + Send + Sync;

    fn graph(&self) -> &Graph;
    fn kind(&self) -> AlgebraKind;
    fn vertex_mono(&self, v: VertexId) -> Self::Mono;
    /// Vertices, then edges, then ghost edges where the algebra has them.
    /// These generate the algebra, so commuting with all of them is
    /// equivalent to being central.
    fn generators(&self) -> Vec<Self::Mono>;
    fn mul_mono<F: Field>(&self, a: &Self::Mono, b: &Self::Mono) -> Vec<(Self::Mono, F)>;
    fn degree(&self, m: &Self::Mono) -> i64;
    fn real_len(&self, m: &Self::Mono) -> usize;
    fn ghost_len(&self, m: &Self::Mono) -> usize;
    /// `u` with `u·m = m`.
    fn left_vertex(&self, m: &Self::Mono) -> VertexId;
    /// `w` with `m·w = m`.
    fn right_vertex(&self, m: &Self::Mono) -> VertexId;
    /// The common range `r(λ) = r(μ)` of the real and ghost parts.
    fn junction_vertex(&self, m: &Self::Mono) -> VertexId;
    fn star(&self, m: &Self::Mono) -> Option<Self::Mono>;
    fn is_symmetric_mono(&self, m: &Self::Mono) -> bool;
    /// All basis monomials with real and ghost length at most `max_len`.
    fn monomials_up_to(&self, max_len: usize) -> Vec<Self::Mono>;
    fn format_mono(&self, m: &Self::Mono) -> String;
    fn parse_mono(&self, s: &str) -> Result<Self::Mono, AlgebraError>;
}

/// A finite linear combination of basis monomials with nonzero coefficients.
pub struct Element<A: Algebra, F: Field> {
    alg: Arc<A>,
    terms: BTreeMap<A::Mono, F>,
}

impl<A: Algebra, F: Field> Clone for Element<A, F> {
    fn clone(&self) -> Self {
        Element {
            alg: Arc::clone(&self.alg),
            terms: self.terms.clone(),
        }
    }
}

impl<A: Algebra, F: Field> PartialEq for Element<A, F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_algebra(&self.alg, &other.alg)
    }
}

impl<A: Algebra, F: Field> Eq for Element<A, F> {}

impl<A: Algebra, F: Field> Debug for Element<A, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self)
    }
}

fn same_algebra<A: Algebra>(a: &Arc<A>, b: &Arc<A>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<A: Algebra, F: Field> Element<A, F> {
    pub fn zero(alg: &Arc<A>) -> Self {
        Element {
            alg: Arc::clone(alg),
            terms: BTreeMap::new(),
        }
    }

    /// The identity `Σ_{v ∈ E⁰} v`.
    pub fn one(alg: &Arc<A>) -> Self {
        Self::from_terms(
            alg,
            alg.graph()
                .vertices()
                .map(|v| (alg.vertex_mono(v), F::one())),
        )
    }

    pub fn monomial(alg: &Arc<A>, m: A::Mono) -> Self {
        Self::from_terms(alg, [(m, F::one())])
    }

    pub fn vertex(alg: &Arc<A>, v: VertexId) -> Self {
        Self::monomial(alg, alg.vertex_mono(v))
    }

    /// Sums the given terms, merging duplicates and dropping zeros.
    pub fn from_terms(alg: &Arc<A>, terms: impl IntoIterator<Item = (A::Mono, F)>) -> Self {
        let mut out = Self::zero(alg);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: A::Mono, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn algebra(&self) -> &Arc<A> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<A::Mono, F> {
        &self.terms
    }

    pub fn coefficient(&self, m: &A::Mono) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(
            &self.alg,
            self.terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone())),
        )
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(AlgebraError::MismatchedAlgebra)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&-other)
    }

    /// Bilinear extension of the monomial product.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.alg);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let coef = ca.clone() * cb.clone();
                for (m, c) in self.alg.mul_mono::<F>(a, b) {
                    out.add_term(m, c * coef.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(&self.alg), |acc, _| &acc * self)
    }

    pub fn degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(|m| self.alg.degree(m));
        match degrees.next() {
            None => Degree::Zero,
            Some(d) if degrees.all(|e| e == d) => Degree::Homogeneous(d),
            Some(_) => Degree::Mixed,
        }
    }

    /// `∂_R`: the largest real length among the basis monomials.
    pub fn real_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| self.alg.real_len(m))
            .max()
            .unwrap_or(0)
    }

    pub fn max_ghost_len(&self) -> usize {
        self.terms
            .keys()
            .map(|m| self.alg.ghost_len(m))
            .max()
            .unwrap_or(0)
    }

    /// The Peirce piece `u·a·v`.
    pub fn peirce_component(&self, u: VertexId, v: VertexId) -> Result<Self, AlgebraError> {
        self.alg.graph().check_vertex(u)?;
        self.alg.graph().check_vertex(v)?;
        Ok(Self::from_terms(
            &self.alg,
            self.terms
                .iter()
                .filter(|(m, _)| self.alg.left_vertex(m) == u && self.alg.right_vertex(m) == v)
                .map(|(m, c)| (m.clone(), c.clone())),
        ))
    }

    /// `a = Σ_u u·a·u`.
    pub fn is_peirce_diagonal(&self) -> bool {
        self.terms
            .keys()
            .all(|m| self.alg.left_vertex(m) == self.alg.right_vertex(m))
    }

    /// A linear combination of monomials `μμ*`.
    pub fn is_symmetric(&self) -> bool {
        self.terms.keys().all(|m| self.alg.is_symmetric_mono(m))
    }

    /// The involution, when the algebra has one.
    pub fn star(&self) -> Option<Self> {
        let mut out = Self::zero(&self.alg);
        for (m, c) in &self.terms {
            out.add_term(self.alg.star(m)?, c.clone());
        }
        Some(out)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Whether every monomial has real and ghost length at most `max_len`.
    pub fn fits_lengths(&self, max_len: usize) -> bool {
        self.real_degree() <= max_len && self.max_ghost_len() <= max_len
    }

    /// Parses the text syntax `3/2 e1.e2|e3 + -1 @u`.
    pub fn parse(alg: &Arc<A>, text: &str) -> Result<Self, AlgebraError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["0"] {
            return Ok(Self::zero(alg));
        }
        let bad = |reason: &str| AlgebraError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut out = Self::zero(alg);
        let mut i = 0;
        while i < tokens.len() {
            if i > 0 {
                if tokens[i] != "+" {
                    return Err(bad("expected `+` between terms"));
                }
                i += 1;
            }
            let (Some(coef), Some(mono)) = (tokens.get(i), tokens.get(i + 1)) else {
                return Err(bad("each term needs a coefficient and a monomial"));
            };
            let coef = F::parse_scalar(coef)?;
            if coef.is_zero() {
                return Err(bad("zero coefficient"));
            }
            out.add_term(alg.parse_mono(mono)?, coef);
            i += 2;
        }
        if tokens.is_empty() {
            return Err(bad("empty element"));
        }
        Ok(out)
    }

    /// Coordinates with respect to a monomial index, growing it as needed.
    pub(crate) fn coordinates(&self, index: &mut BTreeMap<A::Mono, usize>) -> SparseVec<F> {
        let mut row: Vec<(usize, F)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let next = index.len();
                (*index.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect();
        row.sort_by_key(|(i, _)| *i);
        row
    }
}

impl<A: Algebra, F: Field> fmt::Display for Element<A, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} {}", c, self.alg.format_mono(m))?;
        }
        Ok(())
    }
}

impl<A: Algebra, F: Field> Neg for &Element<A, F> {
    type Output = Element<A, F>;
    fn neg(self) -> Element<A, F> {
        self.scale(&-F::one())
    }
}

impl<A: Algebra, F: Field> Add for &Element<A, F> {
    type Output = Element<A, F>;
    fn add(self, rhs: Self) -> Element<A, F> {
        self.try_add(rhs).expect("elements of different algebras")
    }
}

impl<A: Algebra, F: Field> Sub for &Element<A, F> {
    type Output = Element<A, F>;
    fn sub(self, rhs: Self) -> Element<A, F> {
        self.try_sub(rhs).expect("elements of different algebras")
    }
}

impl<A: Algebra, F: Field> Mul for &Element<A, F> {
    type Output = Element<A, F>;
    fn mul(self, rhs: Self) -> Element<A, F> {
        self.try_mul(rhs).expect("elements of different algebras")
    }
}

/// Canonical basis of the span of `elements`: the fully reduced row echelon
/// form in monomial coordinates (monomials in basis order), zero rows
/// dropped.
pub fn reduced_basis<A: Algebra, F: Field>(
    alg: &Arc<A>,
    elements: &[Element<A, F>],
) -> Vec<Element<A, F>> {
    let monos: std::collections::BTreeSet<A::Mono> = elements
        .iter()
        .flat_map(|e| e.terms.keys().cloned())
        .collect();
    let monos: Vec<A::Mono> = monos.into_iter().collect();
    let index: BTreeMap<A::Mono, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut ech = Echelon::new();
    for e in elements {
        let row: SparseVec<F> = e.terms.iter().map(|(m, c)| (index[m], c.clone())).collect();
        ech.insert(&row);
    }
    ech.reduced_rows()
        .into_iter()
        .map(|row| Element::from_terms(alg, row.into_iter().map(|(i, c)| (monos[i].clone(), c))))
        .collect()
}

/// Whether `target` lies in the span of `basis`.
pub fn in_span<A: Algebra, F: Field>(basis: &[Element<A, F>], target: &Element<A, F>) -> bool {
    let mut index = BTreeMap::new();
    let mut ech = Echelon::new();
    for b in basis {
        ech.insert(&b.coordinates(&mut index));
    }
    ech.contains(&target.coordinates(&mut index))
}

/// Dimension of the span.
pub fn span_dimension<A: Algebra, F: Field>(elements: &[Element<A, F>]) -> usize {
    let mut index = BTreeMap::new();
    let mut ech = Echelon::new();
    elements
        .iter()
        .filter(|e| ech.insert(&e.coordinates(&mut index)))
        .count()
}

/// Solves `Σ x_j φ_k(b_j) = 0` for all constraint families `k`, where
/// `images[j][k] = φ_k(b_j)` is computed in the full algebra, and returns a
/// reduced basis of the resulting subspace `{Σ x_j b_j}` of the span of the
/// candidates.
pub fn kernel_in_span<A: Algebra, F: Field>(
    alg: &Arc<A>,
    candidates: &[Element<A, F>],
    images: &[Vec<Element<A, F>>],
) -> Vec<Element<A, F>> {
    let mut rows: BTreeMap<(usize, A::Mono), Vec<(usize, F)>> = BTreeMap::new();
    for (j, family) in images.iter().enumerate() {
        for (k, img) in family.iter().enumerate() {
            for (m, c) in img.terms() {
                rows.entry((k, m.clone())).or_default().push((j, c.clone()));
            }
        }
    }
    let mut ech = Echelon::new();
    for row in rows.values() {
        ech.insert(row);
    }
    let solutions: Vec<Element<A, F>> = ech
        .nullspace(candidates.len())
        .into_iter()
        .map(|x| {
            let mut z = Element::zero(alg);
            for (j, c) in x {
                for (m, v) in candidates[j].terms() {
                    z.add_term(m.clone(), v.clone() * c.clone());
                }
            }
            z
        })
        .collect();
    reduced_basis(alg, &solutions)
}
