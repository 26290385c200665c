//! Rewriting raw words over the extended graph into the `λμ*` basis.
//!
//! Rules, applied anywhere in a word:
//! - a vertex letter next to another letter is absorbed;
//! - `e* e' → δ_{e,e'} r(e)`;
//! - Leavitt only: `e_v e_v* → v − Σ_{f ∈ s⁻¹(v), f ≠ e_v} f f*` for the
//!   special edge `e_v`.
//!
//! Each step shortens the word or keeps its length while removing two
//! special letters, so reduction terminates. A word with no redex is a run
//! of real edges followed by a run of ghost edges, which is a basis monomial.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::field::Field;
use crate::graph::{EdgeId, Graph, Path, VertexId};

use super::{AlgebraError, GAElement, GMonomial, GraphAlgebra};

/// A letter of the extended graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Vertex(VertexId),
    Edge(EdgeId),
    Ghost(EdgeId),
}

impl Letter {
    pub fn source(self, g: &Graph) -> VertexId {
        match self {
            Letter::Vertex(v) => v,
            Letter::Edge(e) => g.source(e),
            Letter::Ghost(e) => g.range(e),
        }
    }

    pub fn range(self, g: &Graph) -> VertexId {
        match self {
            Letter::Vertex(v) => v,
            Letter::Edge(e) => g.range(e),
            Letter::Ghost(e) => g.source(e),
        }
    }
}

/// Which redex to contract at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    /// A uniformly random redex, from a seeded generator.
    Random(u64),
}

/// Parses `@v` or `.`-separated letters such as `e.f*.@v`.
pub fn parse_word(g: &Graph, s: &str) -> Result<Vec<Letter>, AlgebraError> {
    s.trim()
        .split('.')
        .map(|tok| {
            if let Some(v) = tok.strip_prefix('@') {
                Ok(Letter::Vertex(g.vertex_id(v)?))
            } else if let Some(e) = tok.strip_suffix('*') {
                Ok(Letter::Ghost(g.edge_id(e)?))
            } else {
                Ok(Letter::Edge(g.edge_id(tok)?))
            }
        })
        .collect()
}

pub fn format_word(g: &Graph, w: &[Letter]) -> String {
    let parts: Vec<String> = w
        .iter()
        .map(|l| match *l {
            Letter::Vertex(v) => format!("@{}", g.vertex_name(v)),
            Letter::Edge(e) => g.edge_name(e).to_string(),
            Letter::Ghost(e) => format!("{}*", g.edge_name(e)),
        })
        .collect();
    parts.join(".")
}

/// The word `λ μ*`, i.e. the edges of `λ` followed by the reversed ghosts
/// of `μ`.
pub fn monomial_word(m: &GMonomial) -> Vec<Letter> {
    if m.real.is_trivial() && m.ghost.is_trivial() {
        return vec![Letter::Vertex(m.real.source())];
    }
    m.real
        .edges()
        .iter()
        .map(|&e| Letter::Edge(e))
        .chain(m.ghost.edges().iter().rev().map(|&e| Letter::Ghost(e)))
        .collect()
}

fn check_composable(g: &Graph, w: &[Letter]) -> Result<(), AlgebraError> {
    if w.is_empty() {
        return Err(AlgebraError::NotComposable(0));
    }
    for (i, pair) in w.windows(2).enumerate() {
        if pair[0].range(g) != pair[1].source(g) {
            return Err(AlgebraError::NotComposable(i + 1));
        }
    }
    Ok(())
}

/// Position `i` such that letters `i, i+1` form a redex.
fn redexes(alg: &GraphAlgebra, w: &[Letter]) -> Vec<usize> {
    let g = alg.graph_arc();
    (0..w.len().saturating_sub(1))
        .filter(|&i| match (w[i], w[i + 1]) {
            (Letter::Vertex(_), _) | (_, Letter::Vertex(_)) => true,
            (Letter::Ghost(_), Letter::Edge(_)) => true,
            (Letter::Edge(a), Letter::Ghost(b)) => {
                alg.is_leavitt() && a == b && alg.special_edges().is_special(g, a)
            }
            _ => false,
        })
        .collect()
}

/// Contracts the redex at `i`, returning the replacement terms.
fn contract<F: Field>(
    alg: &GraphAlgebra,
    w: &[Letter],
    i: usize,
    coef: &F,
) -> Vec<(F, Vec<Letter>)> {
    let g = alg.graph_arc();
    let splice = |mid: &[Letter]| -> Vec<Letter> {
        let mut out = w[..i].to_vec();
        out.extend_from_slice(mid);
        out.extend_from_slice(&w[i + 2..]);
        out
    };
    match (w[i], w[i + 1]) {
        (Letter::Vertex(_), other) | (other, Letter::Vertex(_)) => {
            vec![(coef.clone(), splice(&[other]))]
        }
        (Letter::Ghost(a), Letter::Edge(b)) => {
            if a == b {
                vec![(coef.clone(), splice(&[Letter::Vertex(g.range(a))]))]
            } else {
                vec![]
            }
        }
        (Letter::Edge(e), Letter::Ghost(_)) => {
            let v = g.source(e);
            let mut out = vec![(coef.clone(), splice(&[Letter::Vertex(v)]))];
            for &f in g.out_edges(v) {
                if f != e {
                    out.push((-coef.clone(), splice(&[Letter::Edge(f), Letter::Ghost(f)])));
                }
            }
            out
        }
        _ => unreachable!("not a redex"),
    }
}

fn terminal_monomial(g: &Graph, w: &[Letter]) -> GMonomial {
    if let [Letter::Vertex(v)] = w {
        return GMonomial::vertex(*v);
    }
    let real: Vec<EdgeId> = w
        .iter()
        .filter_map(|l| {
            if let Letter::Edge(e) = l {
                Some(*e)
            } else {
                None
            }
        })
        .collect();
    let mut ghost: Vec<EdgeId> = w
        .iter()
        .filter_map(|l| {
            if let Letter::Ghost(e) = l {
                Some(*e)
            } else {
                None
            }
        })
        .collect();
    ghost.reverse();
    let junction = match w.iter().position(|l| matches!(l, Letter::Ghost(_))) {
        Some(0) => w[0].source(g),
        Some(i) => w[i - 1].range(g),
        None => w[w.len() - 1].range(g),
    };
    let path = |edges: &[EdgeId]| {
        if edges.is_empty() {
            Path::vertex(junction)
        } else {
            Path::from_edges(g, edges).expect("terminal words are composable")
        }
    };
    GMonomial {
        real: path(&real),
        ghost: path(&ghost),
    }
}

/// Reduces a linear combination of raw words to normal form.
pub fn normal_form<F: Field>(
    alg: &Arc<GraphAlgebra>,
    words: &[(F, Vec<Letter>)],
    order: RewriteOrder,
) -> Result<GAElement<F>, AlgebraError> {
    let g = alg.graph_arc().clone();
    for (_, w) in words {
        check_composable(&g, w)?;
    }
    let mut rng = match order {
        RewriteOrder::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        RewriteOrder::Leftmost => None,
    };
    let mut out = GAElement::zero(alg);
    let mut stack: Vec<(F, Vec<Letter>)> = words
        .iter()
        .filter(|(c, _)| !c.is_zero())
        .cloned()
        .collect();
    while let Some((coef, w)) = stack.pop() {
        let spots = redexes(alg, &w);
        if spots.is_empty() {
            out.add_term(terminal_monomial(&g, &w), coef);
            continue;
        }
        let i = match rng.as_mut() {
            Some(r) => spots[r.gen_range(0..spots.len())],
            None => spots[0],
        };
        stack.extend(contract(alg, &w, i, &coef));
    }
    Ok(out)
}
