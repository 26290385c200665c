//! Centers described by the structure theorems: path algebras, prime Cohn
//! and prime Leavitt path algebras, and bounds for arbitrary Leavitt path
//! algebras through their graded prime ideals.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    Algebra, AlgebraError, AlgebraKind, Element, GAElement, GraphAlgebra, KEElement, PathAlgebra,
};
use crate::field::Field;
use crate::graph::{
    Cycle, Graph, GraphError, HereditarySaturatedSet, Path, PathCount, VertexId,
    DEFAULT_MAX_ENUMERATION_VERTICES,
};
use crate::oracle::{graded_center_component, OracleError, OracleWindow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    #[error("the {0} algebra of this graph is not prime")]
    NotPrime(AlgebraKind),
    #[error("expected a {expected} algebra, got {found}")]
    WrongAlgebra {
        expected: AlgebraKind,
        found: AlgebraKind,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingType {
    Zero,
    ScalarField,
    PolynomialRing,
    LaurentRing,
}

impl fmt::Display for RingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingType::Zero => "0",
            RingType::ScalarField => "K",
            RingType::PolynomialRing => "K[x]",
            RingType::LaurentRing => "K[x,x^-1]",
        })
    }
}

/// One direct summand of a center: `unit` is its identity, `generator` the
/// variable `x`, and `inverse` is `x⁻¹` for Laurent rings.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterComponent<A: Algebra, F: Field> {
    pub ring: RingType,
    pub unit: Option<Element<A, F>>,
    pub generator: Option<Element<A, F>>,
    pub inverse: Option<Element<A, F>>,
}

impl<A: Algebra, F: Field> CenterComponent<A, F> {
    pub fn zero() -> Self {
        CenterComponent {
            ring: RingType::Zero,
            unit: None,
            generator: None,
            inverse: None,
        }
    }

    pub fn scalar(unit: Element<A, F>) -> Self {
        CenterComponent {
            ring: RingType::ScalarField,
            unit: Some(unit),
            generator: None,
            inverse: None,
        }
    }

    pub fn polynomial(unit: Element<A, F>, x: Element<A, F>) -> Self {
        CenterComponent {
            ring: RingType::PolynomialRing,
            unit: Some(unit),
            generator: Some(x),
            inverse: None,
        }
    }

    pub fn laurent(unit: Element<A, F>, x: Element<A, F>, inverse: Element<A, F>) -> Self {
        CenterComponent {
            ring: RingType::LaurentRing,
            unit: Some(unit),
            generator: Some(x),
            inverse: Some(inverse),
        }
    }

    pub fn elements(&self) -> Vec<Element<A, F>> {
        [&self.unit, &self.generator, &self.inverse]
            .into_iter()
            .flatten()
            .cloned()
            .collect()
    }

    /// The unit and the powers of the generator (and of its inverse) that
    /// fit in the window.
    pub fn truncation(&self, window: &OracleWindow) -> Vec<Element<A, F>> {
        let fits = |x: &Element<A, F>| {
            x.fits_lengths(window.max_len)
                && match x.degree() {
                    crate::algebra::Degree::Homogeneous(d) => window.accepts(d),
                    _ => false,
                }
        };
        let mut out = Vec::new();
        let Some(unit) = &self.unit else { return out };
        if fits(unit) {
            out.push(unit.clone());
        }
        for x in [&self.generator, &self.inverse].into_iter().flatten() {
            let mut p = unit.clone();
            for _ in 0..window.max_len {
                p = &p * x;
                if p.is_zero() {
                    break;
                }
                if fits(&p) {
                    out.push(p.clone());
                }
            }
        }
        out
    }
}

/// A center as a direct sum of components.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterStructure<A: Algebra, F: Field> {
    pub components: Vec<CenterComponent<A, F>>,
}

impl<A: Algebra, F: Field> CenterStructure<A, F> {
    pub fn single(c: CenterComponent<A, F>) -> Self {
        CenterStructure {
            components: vec![c],
        }
    }

    pub fn elements(&self) -> Vec<Element<A, F>> {
        self.components.iter().flat_map(|c| c.elements()).collect()
    }

    pub fn truncation(&self, window: &OracleWindow) -> Vec<Element<A, F>> {
        self.components
            .iter()
            .flat_map(|c| c.truncation(window))
            .collect()
    }

    pub fn rings(&self) -> Vec<RingType> {
        self.components.iter().map(|c| c.ring).collect()
    }
}

fn join_rings(rings: impl Iterator<Item = RingType>) -> String {
    let parts: Vec<String> = rings
        .filter(|r| *r != RingType::Zero)
        .map(|r| r.to_string())
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

impl<A: Algebra, F: Field> fmt::Display for CenterStructure<A, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_rings(self.components.iter().map(|c| c.ring)))
    }
}

fn require_kind(alg: &impl Algebra, expected: AlgebraKind) -> Result<(), CenterError> {
    if alg.kind() == expected {
        Ok(())
    } else {
        Err(CenterError::WrongAlgebra {
            expected,
            found: alg.kind(),
        })
    }
}

/// The cycle traversing a connected block, if the block is one.
fn block_cycle(g: &Graph, block: &[VertexId]) -> Option<Cycle> {
    if !block
        .iter()
        .all(|&v| g.out_edges(v).len() == 1 && g.in_edges(v).len() == 1)
    {
        return None;
    }
    let start = block[0];
    let mut edges = Vec::new();
    let mut at = start;
    loop {
        let e = g.out_edges(at)[0];
        edges.push(e);
        at = g.range(e);
        if at == start {
            break;
        }
    }
    (edges.len() == block.len())
        .then(|| Cycle::new(g, &edges).expect("closed walk through distinct vertices"))
}

fn vertex_sum<A: Algebra, F: Field>(alg: &Arc<A>, vs: &[VertexId]) -> Element<A, F> {
    Element::from_terms(alg, vs.iter().map(|&v| (alg.vertex_mono(v), F::one())))
}

/// `Z(KE)`: `K[x]` with `x = Σ cᵢ` for each component that is a cycle,
/// `K` (spanned by the sum of its vertices) for every other component.
pub fn center_structure_ke<F: Field>(alg: &Arc<PathAlgebra>) -> CenterStructure<PathAlgebra, F> {
    let g = alg.graph();
    let components = g
        .connected_components()
        .iter()
        .map(|block| {
            let unit = vertex_sum(alg, block);
            match block_cycle(g, block) {
                Some(c) => {
                    let x =
                        Element::from_terms(alg, c.rotations(g).into_iter().map(|p| (p, F::one())));
                    CenterComponent::polynomial(unit, x)
                }
                None => CenterComponent::scalar(unit),
            }
        })
        .collect();
    CenterStructure { components }
}

/// `Σᵢ p(cᵢ)` on a cycle graph; `coeffs` lists `p` from the constant term up.
pub fn cycle_center_evaluate<F: Field>(
    alg: &Arc<PathAlgebra>,
    coeffs: &[F],
) -> Result<KEElement<F>, AlgebraError> {
    let g = alg.graph();
    let all: Vec<VertexId> = g.vertices().collect();
    let c = block_cycle(g, &all)
        .filter(|_| g.connected_components().len() == 1)
        .ok_or(AlgebraError::NotACycleGraph)?;
    let x = Element::from_terms(alg, c.rotations(g).into_iter().map(|p| (p, F::one())));
    let mut power = KEElement::one(alg);
    let mut out = KEElement::zero(alg);
    for a in coeffs {
        out = &out + &power.scale(a);
        power = &power * &x;
    }
    Ok(out)
}

pub fn is_prime_leavitt(g: &Graph) -> bool {
    g.is_downward_directed()
}

pub fn is_prime_cohn(g: &Graph) -> bool {
    g.vertex_count() == 1
}

/// The center `K` of a prime Cohn path algebra (a rose).
pub fn center_prime_cohn<F: Field>(
    alg: &Arc<GraphAlgebra>,
) -> Result<CenterStructure<GraphAlgebra, F>, CenterError> {
    require_kind(&**alg, AlgebraKind::Cohn)?;
    if !is_prime_cohn(alg.graph()) {
        return Err(CenterError::NotPrime(AlgebraKind::Cohn));
    }
    Ok(CenterStructure::single(CenterComponent::scalar(
        GAElement::one(alg),
    )))
}

/// Why a prime Leavitt path algebra has the center it has.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PrimeLeavittCase {
    /// Every cycle has an exit.
    ConditionL,
    /// The exit-free cycle is fed by infinitely many paths.
    InfiniteFeeding { cycle: String },
    /// The exit-free cycle is fed by finitely many paths.
    FiniteFeeding { cycle: String, count: u64 },
}

/// The explicit Laurent generator `z = Σ_τ τcτ*` and its checks.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentWitness<F: Field> {
    pub cycle: Cycle,
    pub count: PathCount,
    pub count_on_cycle_vertices: PathCount,
    pub feeding_paths: Vec<Path>,
    /// Real and ghost length bound of the solve.
    pub window_len: usize,
    pub constructed: GAElement<F>,
    pub central: bool,
    /// `z z* = z* z = 1`.
    pub unitary: bool,
    /// The solve found exactly the span of `z`.
    pub matches_oracle: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimeLeavittCenter<F: Field> {
    pub structure: CenterStructure<GraphAlgebra, F>,
    pub case: PrimeLeavittCase,
    pub laurent: Option<LaurentWitness<F>>,
}

/// `Σ_τ τ c τ*` and `Σ_τ τ τ*` over the given paths ending at the base of `c`.
pub fn laurent_elements<F: Field>(
    alg: &Arc<GraphAlgebra>,
    c: &Cycle,
    taus: &[Path],
) -> Result<(GAElement<F>, GAElement<F>), AlgebraError> {
    let mut z = GAElement::zero(alg);
    let mut unit = GAElement::zero(alg);
    for tau in taus {
        let real = tau.concat(c.path()).ok_or(AlgebraError::RangeMismatch)?;
        z = &z + &GAElement::from_paths(alg, real, tau.clone())?;
        unit = &unit + &GAElement::from_paths(alg, tau.clone(), tau.clone())?;
    }
    Ok((z, unit))
}

/// The center of a prime Leavitt path algebra: `K[x,x⁻¹]` when there is an
/// exit-free cycle fed by finitely many paths, `K` otherwise.
pub fn center_prime_leavitt<F: Field>(
    alg: &Arc<GraphAlgebra>,
) -> Result<PrimeLeavittCenter<F>, CenterError> {
    require_kind(&**alg, AlgebraKind::Leavitt)?;
    let g = alg.graph();
    if !is_prime_leavitt(g) {
        return Err(CenterError::NotPrime(AlgebraKind::Leavitt));
    }
    let scalar = CenterStructure::single(CenterComponent::scalar(GAElement::one(alg)));
    let exit_free = g.cycles_without_exits();
    let Some(c) = exit_free.first() else {
        return Ok(PrimeLeavittCenter {
            structure: scalar,
            case: PrimeLeavittCase::ConditionL,
            laurent: None,
        });
    };
    let name = c.path().display(g);
    let count = g.count_paths_ending_at_cycle(c)?;
    let PathCount::Finite(n) = count else {
        return Ok(PrimeLeavittCenter {
            structure: scalar,
            case: PrimeLeavittCase::InfiniteFeeding { cycle: name },
            laurent: None,
        });
    };
    let taus = g.paths_ending_at_cycle(c)?.expect("finite count");
    let longest = taus.iter().map(Path::len).max().unwrap_or(0);
    let window_len = c.len() + longest;
    let solved = graded_center_component::<GraphAlgebra, F>(alg, c.len() as i64, window_len)?;
    let (constructed, unit) = laurent_elements(alg, c, &taus)?;
    let matches_oracle = solved.basis.len() == 1 && solved.basis[0] == constructed;
    let z = if solved.basis.len() == 1 {
        solved.basis[0].clone()
    } else {
        constructed.clone()
    };
    let inverse = z.involution();
    let unitary = &z * &inverse == unit && &inverse * &z == unit && unit == GAElement::one(alg);
    let central = crate::oracle::check_central(&z);
    Ok(PrimeLeavittCenter {
        structure: CenterStructure::single(CenterComponent::laurent(unit, z, inverse)),
        case: PrimeLeavittCase::FiniteFeeding {
            cycle: name,
            count: n,
        },
        laurent: Some(LaurentWitness {
            cycle: c.clone(),
            count,
            count_on_cycle_vertices: g.count_paths_ending_on_cycle_vertices(c)?,
            feeding_paths: taus,
            window_len,
            constructed,
            central,
            unitary,
            matches_oracle,
        }),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalityCheck {
    pub first: String,
    pub second: String,
    pub products: usize,
    pub all_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub exit_free_cycles: Vec<String>,
    pub prime: bool,
    /// A prime graph has at most one exit-free cycle.
    pub unique_if_prime: bool,
    pub orthogonality: Vec<OrthogonalityCheck>,
    pub passed: bool,
}

/// Spanning elements `λμ*` of `I(H)` for a hereditary `H`: all pairs of
/// paths with common range in `H`, lengths at most `max_len`.
pub fn ideal_spanning_elements<F: Field>(
    alg: &Arc<GraphAlgebra>,
    h: &BTreeSet<VertexId>,
    max_len: usize,
) -> Vec<GAElement<F>> {
    let g = alg.graph();
    let mut out = Vec::new();
    for &v in h {
        let paths = g.paths_ending_at(v, max_len);
        for a in &paths {
            for b in &paths {
                let x = GAElement::from_paths(alg, a.clone(), b.clone()).expect("common range");
                out.push(x);
            }
        }
    }
    out
}

/// At most one exit-free cycle on a prime graph, and `I(c⁰)I(d⁰) = 0` for
/// distinct exit-free cycles, checked on spanning elements up to `max_len`.
pub fn uniqueness_check_exit_free<F: Field>(
    alg: &Arc<GraphAlgebra>,
    max_len: usize,
) -> UniquenessReport {
    let g = alg.graph();
    let cycles = g.cycles_without_exits();
    let prime = is_prime_leavitt(g);
    let unique_if_prime = !prime || cycles.len() <= 1;
    let spans: Vec<Vec<GAElement<F>>> = cycles
        .iter()
        .map(|c| ideal_spanning_elements(alg, &c.vertex_set(g), max_len))
        .collect();
    let mut orthogonality = Vec::new();
    for i in 0..cycles.len() {
        for j in 0..cycles.len() {
            if i == j {
                continue;
            }
            let all_zero = spans[i]
                .par_iter()
                .all(|x| spans[j].iter().all(|y| (x * y).is_zero()));
            orthogonality.push(OrthogonalityCheck {
                first: cycles[i].path().display(g),
                second: cycles[j].path().display(g),
                products: spans[i].len() * spans[j].len(),
                all_zero,
            });
        }
    }
    let passed = unique_if_prime && orthogonality.iter().all(|o| o.all_zero);
    UniquenessReport {
        exit_free_cycles: cycles.iter().map(|c| c.path().display(g)).collect(),
        prime,
        unique_if_prime,
        orthogonality,
        passed,
    }
}

/// Why a graded prime contributes `K` to the upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IWitness {
    ConditionL,
    /// An exit-free cycle of the quotient, fed by infinitely many paths.
    InfiniteFeeding {
        cycle: Cycle,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    I(IWitness),
    /// The unique exit-free cycle of the quotient and its finite path count.
    J {
        cycle: Cycle,
        count: u64,
    },
}

/// A graded prime ideal `I(H)`: `H` is proper and `E/H` is downward
/// directed. Cycles refer to edge ids of the quotient graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPrimeRecord {
    pub h: HereditarySaturatedSet,
    pub quotient: Graph,
    pub flavor: Flavor,
}

impl GradedPrimeRecord {
    pub fn is_j(&self) -> bool {
        matches!(self.flavor, Flavor::J { .. })
    }

    pub fn cycle_len(&self) -> Option<usize> {
        match &self.flavor {
            Flavor::J { cycle, .. } => Some(cycle.len()),
            _ => None,
        }
    }

    pub fn upper_ring(&self) -> RingType {
        if self.is_j() {
            RingType::LaurentRing
        } else {
            RingType::ScalarField
        }
    }
}

fn classify_quotient(q: &Graph) -> Result<Flavor, GraphError> {
    if q.condition_l() {
        return Ok(Flavor::I(IWitness::ConditionL));
    }
    let c = q
        .cycles_without_exits()
        .into_iter()
        .next()
        .expect("Condition (L) fails");
    Ok(match q.count_paths_ending_at_cycle(&c)? {
        PathCount::Finite(count) => Flavor::J { cycle: c, count },
        PathCount::Infinite => Flavor::I(IWitness::InfiniteFeeding { cycle: c }),
    })
}

pub fn graded_prime_ideals(g: &Graph) -> Result<Vec<GradedPrimeRecord>, GraphError> {
    graded_prime_ideals_capped(g, DEFAULT_MAX_ENUMERATION_VERTICES)
}

/// All graded prime ideals, in the order of `𝓗_E`.
pub fn graded_prime_ideals_capped(
    g: &Graph,
    cap: usize,
) -> Result<Vec<GradedPrimeRecord>, GraphError> {
    let sets = g.enumerate_hereditary_saturated_capped(cap)?;
    let records: Vec<Option<GradedPrimeRecord>> = sets
        .into_par_iter()
        .filter(|h| h.len() < g.vertex_count())
        .map(|h| {
            let quotient = g.quotient(&h)?;
            if !quotient.is_downward_directed() {
                return Ok(None);
            }
            let flavor = classify_quotient(&quotient)?;
            Ok(Some(GradedPrimeRecord {
                h,
                quotient,
                flavor,
            }))
        })
        .collect::<Result<_, GraphError>>()?;
    Ok(records.into_iter().flatten().collect())
}

/// How `Z(W_P)` was determined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "pattern", rename_all = "snake_case")]
pub enum WPattern {
    /// `H_{W_P} = ∅`, so `W_P = 0`.
    ZeroIdeal,
    /// Only one graded prime: `W_P` is taken to be the whole algebra.
    Improper { prime: bool },
    /// `H_{W_P}` is generated by the vertices of an exit-free cycle.
    ExitFreeCycle { cycle: String, count: PathCount },
    /// `H_{W_P}` is generated by a sink.
    Sink { vertex: String, count: PathCount },
    /// No structural pattern applies; only oracle evidence is available.
    OracleEvidence,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LowerTerm<F: Field> {
    pub record: usize,
    /// `∩_{Q≠P} H_Q`; `None` for the improper convention.
    pub h_w: Option<HereditarySaturatedSet>,
    pub pattern: WPattern,
    /// `None` when only oracle evidence is available.
    pub center: Option<CenterComponent<GraphAlgebra, F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CenterBounds<F: Field> {
    pub records: Vec<GradedPrimeRecord>,
    pub upper: Vec<RingType>,
    pub lower: Vec<LowerTerm<F>>,
    /// `∩_P H_P`.
    pub radical: HereditarySaturatedSet,
    /// The radical is empty, so the sum of the `W_P` is direct.
    pub direct: bool,
}

impl<F: Field> CenterBounds<F> {
    /// Dimension in degree `d` of the upper bound: one per `𝓘` record in
    /// degree zero, one per `𝓙` record whose cycle length divides `d`.
    pub fn upper_dimension_at(&self, d: i64) -> usize {
        self.records
            .iter()
            .filter(|r| match r.cycle_len() {
                Some(l) => d % l as i64 == 0,
                None => d == 0,
            })
            .count()
    }

    pub fn lower_truncation(&self, window: &OracleWindow) -> Vec<GAElement<F>> {
        self.lower
            .iter()
            .filter_map(|t| t.center.as_ref())
            .flat_map(|c| c.truncation(window))
            .collect()
    }

    pub fn upper_display(&self) -> String {
        if self.upper.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.upper.iter().map(|r| r.to_string()).collect();
        parts.join(" × ")
    }

    pub fn lower_display(&self) -> String {
        let mut s = join_rings(
            self.lower
                .iter()
                .filter_map(|t| t.center.as_ref().map(|c| c.ring)),
        );
        let evidence = self.lower.iter().filter(|t| t.center.is_none()).count();
        if evidence > 0 {
            if s == "0" {
                s.clear();
            } else {
                s.push_str(" ⊕ ");
            }
            s.push_str(&vec!["Z(W)?"; evidence].join(" ⊕ "));
        }
        s
    }

    /// Whether the lower bound equals the upper bound as a list of rings.
    pub fn bounds_meet(&self) -> bool {
        let mut lower: Vec<RingType> = Vec::new();
        for t in &self.lower {
            match &t.center {
                Some(c) if c.ring != RingType::Zero => lower.push(c.ring),
                Some(_) => {}
                None => return false,
            }
        }
        let mut upper = self.upper.clone();
        lower.sort_by_key(|r| *r as u8);
        upper.sort_by_key(|r| *r as u8);
        lower == upper
    }
}

fn lower_term<F: Field>(
    alg: &Arc<GraphAlgebra>,
    index: usize,
    h_w: Option<HereditarySaturatedSet>,
) -> Result<LowerTerm<F>, CenterError> {
    let g = alg.graph();
    let Some(h) = h_w else {
        let prime = is_prime_leavitt(g);
        let center = if prime {
            let c = center_prime_leavitt::<F>(alg)?;
            c.structure.components.into_iter().next()
        } else {
            None
        };
        return Ok(LowerTerm {
            record: index,
            h_w: None,
            pattern: WPattern::Improper { prime },
            center,
        });
    };
    if h.is_empty() {
        return Ok(LowerTerm {
            record: index,
            h_w: Some(h),
            pattern: WPattern::ZeroIdeal,
            center: Some(CenterComponent::zero()),
        });
    }
    for c in g.cycles_without_exits() {
        if g.hereditary_saturated_closure(&c.vertex_set(g))? != h {
            continue;
        }
        let count = g.count_paths_ending_at_cycle(&c)?;
        let center = match g.paths_ending_at_cycle(&c)? {
            Some(taus) => {
                let (z, unit) = laurent_elements::<F>(alg, &c, &taus)?;
                let inverse = z.involution();
                CenterComponent::laurent(unit, z, inverse)
            }
            None => CenterComponent::zero(),
        };
        let pattern = WPattern::ExitFreeCycle {
            cycle: c.path().display(g),
            count,
        };
        return Ok(LowerTerm {
            record: index,
            h_w: Some(h),
            pattern,
            center: Some(center),
        });
    }
    for w in g.vertices().filter(|&w| g.is_sink(w)) {
        if g.hereditary_saturated_closure(&BTreeSet::from([w]))? != h {
            continue;
        }
        let count = g.count_paths_ending_at_sink(w)?;
        let center = match g.paths_ending_at_sink(w)? {
            Some(taus) => {
                let unit = taus.iter().try_fold(GAElement::zero(alg), |acc, t| {
                    Ok::<_, AlgebraError>(&acc + &GAElement::from_paths(alg, t.clone(), t.clone())?)
                })?;
                CenterComponent::scalar(unit)
            }
            None => CenterComponent::zero(),
        };
        let pattern = WPattern::Sink {
            vertex: g.vertex_name(w).to_string(),
            count,
        };
        return Ok(LowerTerm {
            record: index,
            h_w: Some(h),
            pattern,
            center: Some(center),
        });
    }
    Ok(LowerTerm {
        record: index,
        h_w: Some(h),
        pattern: WPattern::OracleEvidence,
        center: None,
    })
}

pub fn center_bounds<F: Field>(alg: &Arc<GraphAlgebra>) -> Result<CenterBounds<F>, CenterError> {
    center_bounds_capped(alg, DEFAULT_MAX_ENUMERATION_VERTICES)
}

/// Upper bound from the graded primes and lower bound `⊕ Z(W_P)`, where
/// `H_{W_P}` is the intersection of the other primes' sets.
pub fn center_bounds_capped<F: Field>(
    alg: &Arc<GraphAlgebra>,
    cap: usize,
) -> Result<CenterBounds<F>, CenterError> {
    require_kind(&**alg, AlgebraKind::Leavitt)?;
    let g = alg.graph();
    let records = graded_prime_ideals_capped(g, cap)?;
    let everything = HereditarySaturatedSet::from_vertices(g.vertices());
    let radical = records
        .iter()
        .fold(everything, |acc, r| acc.intersection(&r.h));
    let mut lower = Vec::new();
    for p in 0..records.len() {
        let h_w = (records.len() > 1).then(|| {
            records.iter().enumerate().filter(|(q, _)| *q != p).fold(
                HereditarySaturatedSet::from_vertices(g.vertices()),
                |acc, (_, r)| acc.intersection(&r.h),
            )
        });
        lower.push(lower_term(alg, p, h_w)?);
    }
    Ok(CenterBounds {
        upper: records.iter().map(GradedPrimeRecord::upper_ring).collect(),
        direct: radical.is_empty(),
        radical,
        records,
        lower,
    })
}
