//! Brute-force centralizers inside bounded monomial spans.
//!
//! The candidates are the basis monomials whose real and ghost parts both
//! have length at most `L`, optionally restricted by degree. The equations
//! `[z, g] = 0` for every generator `g` are formed in the full algebra, so a
//! returned basis is exactly the center intersected with the candidate span.
//! Generators are homogeneous, so the system splits by degree and each
//! degree is solved on its own.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    in_span, kernel_in_span, span_dimension, Algebra, Degree, Element, GraphAlgebra,
};
use crate::center::{CenterBounds, CenterStructure};
use crate::field::Field;

pub const DEFAULT_MAX_CANDIDATES: usize = 20_000;
pub const MAX_CANDIDATES_ENV: &str = "PATHCENTER_MAX_CANDIDATES";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("window has {count} candidate monomials, above the cap of {cap}")]
    TooManyCandidates { count: usize, cap: usize },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("{MAX_CANDIDATES_ENV} must be a positive integer, got `{0}`")]
    BadCap(String),
}

/// Candidate cap from the environment, or the default.
pub fn max_candidates() -> Result<usize, OracleError> {
    match std::env::var(MAX_CANDIDATES_ENV) {
        Err(_) => Ok(DEFAULT_MAX_CANDIDATES),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(OracleError::BadCap(s)),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DegreeFilter {
    All,
    Single { degree: i64 },
    Range { low: i64, high: i64 },
}

impl DegreeFilter {
    pub fn accepts(&self, d: i64) -> bool {
        match *self {
            DegreeFilter::All => true,
            DegreeFilter::Single { degree } => d == degree,
            DegreeFilter::Range { low, high } => low <= d && d <= high,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleWindow {
    pub max_len: usize,
    pub degrees: DegreeFilter,
}

impl OracleWindow {
    pub fn new(max_len: usize) -> Self {
        OracleWindow {
            max_len,
            degrees: DegreeFilter::All,
        }
    }

    pub fn degree(max_len: usize, degree: i64) -> Result<Self, OracleError> {
        let w = OracleWindow {
            max_len,
            degrees: DegreeFilter::Single { degree },
        };
        w.validate()?;
        Ok(w)
    }

    pub fn degree_window(max_len: usize, low: i64, high: i64) -> Result<Self, OracleError> {
        let w = OracleWindow {
            max_len,
            degrees: DegreeFilter::Range { low, high },
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let l = self.max_len as i64;
        let ok = match self.degrees {
            DegreeFilter::All => true,
            DegreeFilter::Single { degree } => degree.abs() <= l,
            DegreeFilter::Range { low, high } => low <= high && low.abs() <= l && high.abs() <= l,
        };
        if ok {
            Ok(())
        } else {
            Err(OracleError::InvalidWindow(format!(
                "degrees must lie within ±{l}"
            )))
        }
    }

    pub fn accepts(&self, d: i64) -> bool {
        self.degrees.accepts(d)
    }
}

impl fmt::Display for OracleWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={}", self.max_len)?;
        match self.degrees {
            DegreeFilter::All => Ok(()),
            DegreeFilter::Single { degree } => write!(f, ", degree {degree}"),
            DegreeFilter::Range { low, high } => write!(f, ", degrees [{low},{high}]"),
        }
    }
}

/// A reduced basis of the center inside a window's candidate span.
#[derive(Clone, Debug)]
pub struct CentralSubspace<A: Algebra, F: Field> {
    pub basis: Vec<Element<A, F>>,
    pub window: OracleWindow,
    pub candidates: usize,
    /// The basis spans every central element of the candidate span.
    pub complete_within_window: bool,
}

impl<A: Algebra, F: Field> CentralSubspace<A, F> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn dimension_at(&self, d: i64) -> usize {
        self.basis
            .iter()
            .filter(|b| b.degree() == Degree::Homogeneous(d))
            .count()
    }

    pub fn contains(&self, x: &Element<A, F>) -> bool {
        in_span(&self.basis, x)
    }
}

/// First generator that does not commute with `a`.
pub fn central_witness<A: Algebra, F: Field>(a: &Element<A, F>) -> Option<A::Mono> {
    let alg = a.algebra();
    alg.generators().into_iter().find(|g| {
        let g = Element::monomial(alg, g.clone());
        !(a * &g).eq(&(&g * a))
    })
}

/// Whether `a` commutes with every vertex, edge and (where present) ghost
/// edge.
pub fn check_central<A: Algebra, F: Field>(a: &Element<A, F>) -> bool {
    central_witness(a).is_none()
}

pub fn central_subspace<A: Algebra, F: Field>(
    alg: &Arc<A>,
    window: OracleWindow,
) -> Result<CentralSubspace<A, F>, OracleError> {
    central_subspace_capped(alg, window, max_candidates()?)
}

pub fn central_subspace_capped<A: Algebra, F: Field>(
    alg: &Arc<A>,
    window: OracleWindow,
    cap: usize,
) -> Result<CentralSubspace<A, F>, OracleError> {
    window.validate()?;
    // Central elements commute with the vertices, so only monomials in some
    // u·A·u can occur.
    let mut by_degree: BTreeMap<i64, Vec<A::Mono>> = BTreeMap::new();
    let mut count = 0;
    for m in alg.monomials_up_to(window.max_len) {
        let d = alg.degree(&m);
        if window.accepts(d) && alg.left_vertex(&m) == alg.right_vertex(&m) {
            by_degree.entry(d).or_default().push(m);
            count += 1;
        }
    }
    if count > cap {
        return Err(OracleError::TooManyCandidates { count, cap });
    }
    let generators: Vec<Element<A, F>> = alg
        .generators()
        .into_iter()
        .map(|g| Element::monomial(alg, g))
        .collect();
    let mut basis = Vec::new();
    for monos in by_degree.into_values() {
        let candidates: Vec<Element<A, F>> = monos
            .into_iter()
            .map(|m| Element::monomial(alg, m))
            .collect();
        let images: Vec<Vec<Element<A, F>>> = candidates
            .par_iter()
            .map(|z| generators.iter().map(|g| &(z * g) - &(g * z)).collect())
            .collect();
        basis.extend(kernel_in_span(alg, &candidates, &images));
    }
    assert!(
        basis.iter().all(check_central),
        "oracle produced a non-central vector"
    );
    Ok(CentralSubspace {
        basis,
        window,
        candidates: count,
        complete_within_window: true,
    })
}

/// The degree-`n` part of the center within real and ghost length `L`.
pub fn graded_center_component<A: Algebra, F: Field>(
    alg: &Arc<A>,
    n: i64,
    max_len: usize,
) -> Result<CentralSubspace<A, F>, OracleError> {
    central_subspace(alg, OracleWindow::degree(max_len, n)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub element: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub window: OracleWindow,
    pub claim: String,
    pub generators_central: bool,
    pub oracle_dimension: usize,
    pub predicted_dimension: usize,
    /// Every oracle vector lies in the span of the claim's truncation.
    pub oracle_within_claim: bool,
    /// Every truncated claim element lies in the oracle's span.
    pub claim_within_oracle: bool,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
}

/// Checks a structural claim against the oracle in a window.
pub fn verify_structure<A: Algebra, F: Field>(
    claim: &CenterStructure<A, F>,
    alg: &Arc<A>,
    window: OracleWindow,
) -> Result<Verification, OracleError> {
    let oracle = central_subspace::<A, F>(alg, window)?;
    let mut mismatches = Vec::new();
    for x in claim.elements() {
        if let Some(g) = central_witness(&x) {
            mismatches.push(Mismatch {
                element: x.to_string(),
                reason: format!("does not commute with {}", alg.format_mono(&g)),
            });
        }
    }
    let generators_central = mismatches.is_empty();
    let truncation = claim.truncation(&window);
    let mut oracle_within_claim = true;
    for b in &oracle.basis {
        if !in_span(&truncation, b) {
            oracle_within_claim = false;
            mismatches.push(Mismatch {
                element: b.to_string(),
                reason: "central in the window but outside the claimed span".into(),
            });
        }
    }
    let mut claim_within_oracle = true;
    for t in &truncation {
        if !oracle.contains(t) {
            claim_within_oracle = false;
            mismatches.push(Mismatch {
                element: t.to_string(),
                reason: "claimed central element missing from the oracle span".into(),
            });
        }
    }
    Ok(Verification {
        window,
        claim: claim.to_string(),
        generators_central,
        oracle_dimension: oracle.dimension(),
        predicted_dimension: span_dimension(&truncation),
        oracle_within_claim,
        claim_within_oracle,
        passed: mismatches.is_empty(),
        mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub degree: i64,
    pub oracle: usize,
    pub upper: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsCheck {
    pub window: OracleWindow,
    pub per_degree: Vec<DegreeCount>,
    /// Oracle dimension never exceeds the upper bound's in any degree.
    pub upper_ok: bool,
    pub lower_elements: usize,
    /// Every truncated lower-bound element is central and found by the
    /// oracle.
    pub lower_ok: bool,
    pub passed: bool,
}

/// Compares the oracle with both bounds in a window.
pub fn check_bounds<F: Field>(
    bounds: &CenterBounds<F>,
    alg: &Arc<GraphAlgebra>,
    window: OracleWindow,
) -> Result<BoundsCheck, OracleError> {
    let oracle = central_subspace::<GraphAlgebra, F>(alg, window)?;
    let l = window.max_len as i64;
    let per_degree: Vec<DegreeCount> = (-l..=l)
        .filter(|&d| window.accepts(d))
        .map(|d| DegreeCount {
            degree: d,
            oracle: oracle.dimension_at(d),
            upper: bounds.upper_dimension_at(d),
        })
        .collect();
    let upper_ok = per_degree.iter().all(|c| c.oracle <= c.upper);
    let lower = bounds.lower_truncation(&window);
    let lower_ok = lower.iter().all(|x| check_central(x) && oracle.contains(x));
    Ok(BoundsCheck {
        window,
        per_degree,
        upper_ok,
        lower_elements: lower.len(),
        lower_ok,
        passed: upper_ok && lower_ok,
    })
}
