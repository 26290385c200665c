//! Machine-readable reports and their text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::center::{
    CenterBounds, CenterStructure, Flavor, GradedPrimeRecord, IWitness, PrimeLeavittCase,
    PrimeLeavittCenter, UniquenessReport, WPattern,
};
use crate::field::Field;
use crate::graph::{Graph, HereditarySaturatedSet, PathCount};
use crate::oracle::{BoundsCheck, CentralSubspace, OracleWindow, Verification};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSummary {
    pub id: String,
    pub source: String,
    pub range: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSummary>,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary {
            vertices: g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
            edges: g
                .edges()
                .map(|e| EdgeSummary {
                    id: g.edge_name(e).to_string(),
                    source: g.vertex_name(g.source(e)).to_string(),
                    range: g.vertex_name(g.range(e)).to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSummary {
    pub cycle: String,
    pub has_exit: bool,
    /// Paths ending at the base vertex not containing the whole cycle
    /// (exit-free cycles only).
    pub count: Option<PathCount>,
    /// The same, over every vertex of the cycle.
    pub count_on_cycle_vertices: Option<PathCount>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub sinks: Vec<String>,
    pub sources: Vec<String>,
    pub regular: Vec<String>,
    pub components: Vec<Vec<String>>,
    pub cycles: Vec<CycleSummary>,
    pub condition_l: bool,
    pub downward_directed: bool,
    pub exit_free_cycle_vertices: Vec<String>,
    pub hereditary_saturated: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Primeness {
    pub leavitt: bool,
    pub cohn: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub ring: String,
    pub unit: Option<String>,
    pub generator: Option<String>,
    pub inverse: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentSummary {
    pub cycle: String,
    pub count: PathCount,
    pub count_on_cycle_vertices: PathCount,
    pub feeding_paths: Vec<String>,
    pub window_len: usize,
    pub central: bool,
    pub unitary: bool,
    pub matches_oracle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterSummary {
    pub algebra: String,
    pub structure: String,
    pub components: Vec<ComponentSummary>,
    pub case: Option<PrimeLeavittCase>,
    pub laurent: Option<LaurentSummary>,
}

impl CenterSummary {
    pub fn of<A: Algebra, F: Field>(algebra: &str, s: &CenterStructure<A, F>) -> Self {
        CenterSummary {
            algebra: algebra.to_string(),
            structure: s.to_string(),
            components: s
                .components
                .iter()
                .map(|c| ComponentSummary {
                    ring: c.ring.to_string(),
                    unit: c.unit.as_ref().map(|x| x.to_string()),
                    generator: c.generator.as_ref().map(|x| x.to_string()),
                    inverse: c.inverse.as_ref().map(|x| x.to_string()),
                })
                .collect(),
            case: None,
            laurent: None,
        }
    }

    pub fn of_prime_leavitt<F: Field>(g: &Graph, c: &PrimeLeavittCenter<F>) -> Self {
        let mut out = Self::of("leavitt", &c.structure);
        out.case = Some(c.case.clone());
        out.laurent = c.laurent.as_ref().map(|w| LaurentSummary {
            cycle: w.cycle.path().display(g),
            count: w.count,
            count_on_cycle_vertices: w.count_on_cycle_vertices,
            feeding_paths: w.feeding_paths.iter().map(|p| p.display(g)).collect(),
            window_len: w.window_len,
            central: w.central,
            unitary: w.unitary,
            matches_oracle: w.matches_oracle,
        });
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPrimeSummary {
    pub h: Vec<String>,
    pub quotient_vertices: Vec<String>,
    pub flavor: String,
    pub witness: String,
    pub cycle: Option<String>,
    pub count: Option<u64>,
}

fn names(g: &Graph, h: &HereditarySaturatedSet) -> Vec<String> {
    g.vertex_set_names(h.vertices())
}

impl GradedPrimeSummary {
    pub fn of(g: &Graph, r: &GradedPrimeRecord) -> Self {
        let q = &r.quotient;
        let (flavor, witness, cycle, count) = match &r.flavor {
            Flavor::I(IWitness::ConditionL) => ("I", "condition_l", None, None),
            Flavor::I(IWitness::InfiniteFeeding { cycle }) => {
                ("I", "infinite_feeding", Some(cycle.path().display(q)), None)
            }
            Flavor::J { cycle, count } => (
                "J",
                "finite_feeding",
                Some(cycle.path().display(q)),
                Some(*count),
            ),
        };
        GradedPrimeSummary {
            h: names(g, &r.h),
            quotient_vertices: q.vertices().map(|v| q.vertex_name(v).to_string()).collect(),
            flavor: flavor.into(),
            witness: witness.into(),
            cycle,
            count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerSummary {
    pub record: usize,
    /// `None` when the only prime's complement is the whole algebra.
    pub h_w: Option<Vec<String>>,
    pub pattern: WPattern,
    /// `None` when only oracle evidence is available.
    pub center: Option<ComponentSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsSummary {
    pub upper: String,
    pub lower: String,
    pub terms: Vec<LowerSummary>,
    pub radical: Vec<String>,
    pub direct: bool,
    pub bounds_meet: bool,
    pub check: Option<BoundsCheck>,
}

impl BoundsSummary {
    pub fn of<F: Field>(g: &Graph, b: &CenterBounds<F>) -> Self {
        BoundsSummary {
            upper: b.upper_display(),
            lower: b.lower_display(),
            terms: b
                .lower
                .iter()
                .map(|t| LowerSummary {
                    record: t.record,
                    h_w: t.h_w.as_ref().map(|h| names(g, h)),
                    pattern: t.pattern.clone(),
                    center: t.center.as_ref().map(|c| ComponentSummary {
                        ring: c.ring.to_string(),
                        unit: c.unit.as_ref().map(|x| x.to_string()),
                        generator: c.generator.as_ref().map(|x| x.to_string()),
                        inverse: c.inverse.as_ref().map(|x| x.to_string()),
                    }),
                })
                .collect(),
            radical: names(g, &b.radical),
            direct: b.direct,
            bounds_meet: b.bounds_meet(),
            check: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub algebra: String,
    pub window: OracleWindow,
    pub candidates: usize,
    pub complete_within_window: bool,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub verification: Option<Verification>,
}

impl OracleSummary {
    pub fn of<A: Algebra, F: Field>(algebra: &str, z: &CentralSubspace<A, F>) -> Self {
        OracleSummary {
            algebra: algebra.to_string(),
            window: z.window,
            candidates: z.candidates,
            complete_within_window: z.complete_within_window,
            dimension: z.dimension(),
            basis: z.basis.iter().map(|b| b.to_string()).collect(),
            verification: None,
        }
    }
}

/// The document every command emits; sections a command does not produce
/// are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub graph: GraphSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicates: Option<Predicates>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primeness: Option<Primeness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<CenterSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graded_primes: Option<Vec<GradedPrimeSummary>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exit_free_uniqueness: Option<UniquenessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
}

impl Report {
    pub fn new(command: &str, g: &Graph) -> Self {
        Report {
            command: command.to_string(),
            graph: GraphSummary::of(g),
            predicates: None,
            primeness: None,
            center: None,
            graded_primes: None,
            bounds: None,
            exit_free_uniqueness: None,
            oracle: None,
            notices: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let g = &self.graph;
        let _ = writeln!(
            s,
            "graph: {} vertices, {} edges",
            g.vertices.len(),
            g.edges.len()
        );
        if let Some(p) = &self.predicates {
            let list = |v: &[String]| {
                if v.is_empty() {
                    "-".to_string()
                } else {
                    v.join(" ")
                }
            };
            let _ = writeln!(s, "sinks: {}", list(&p.sinks));
            let _ = writeln!(s, "sources: {}", list(&p.sources));
            let _ = writeln!(s, "regular: {}", list(&p.regular));
            let blocks: Vec<String> = p
                .components
                .iter()
                .map(|b| format!("{{{}}}", b.join(" ")))
                .collect();
            let _ = writeln!(s, "components: {}", blocks.join(" "));
            for c in &p.cycles {
                let _ = write!(
                    s,
                    "cycle {}: {}",
                    c.cycle,
                    if c.has_exit { "has exit" } else { "no exit" }
                );
                if let (Some(n), Some(m)) = (c.count, c.count_on_cycle_vertices) {
                    let _ = write!(s, ", paths ending at base {n}, ending on cycle {m}");
                }
                s.push('\n');
            }
            let _ = writeln!(s, "condition (L): {}", p.condition_l);
            let _ = writeln!(s, "downward directed: {}", p.downward_directed);
            let _ = writeln!(
                s,
                "exit-free cycle vertices: {}",
                list(&p.exit_free_cycle_vertices)
            );
            let sets: Vec<String> = p
                .hereditary_saturated
                .iter()
                .map(|h| format!("{{{}}}", h.join(" ")))
                .collect();
            let _ = writeln!(s, "hereditary saturated sets: {}", sets.join(" "));
        }
        if let Some(p) = &self.primeness {
            let _ = writeln!(s, "prime leavitt: {}\nprime cohn: {}", p.leavitt, p.cohn);
        }
        if let Some(c) = &self.center {
            let _ = write!(s, "center ({} algebra): {}", c.algebra, c.structure);
            if let [only] = c.components.as_slice() {
                if let Some(x) = &only.generator {
                    let _ = write!(s, ", generator: {x}");
                }
                s.push('\n');
            } else {
                s.push('\n');
                for (i, comp) in c.components.iter().enumerate() {
                    let _ = write!(s, "  summand {}: {}", i + 1, comp.ring);
                    if let Some(u) = &comp.unit {
                        let _ = write!(s, ", unit: {u}");
                    }
                    if let Some(x) = &comp.generator {
                        let _ = write!(s, ", generator: {x}");
                    }
                    s.push('\n');
                }
            }
            if let Some(w) = &c.laurent {
                let _ = writeln!(
                    s,
                    "exit-free cycle {}: {} feeding paths ({} ending on the cycle), central {}, unitary {}, matches oracle {}",
                    w.cycle, w.count, w.count_on_cycle_vertices, w.central, w.unitary, w.matches_oracle
                );
            }
        }
        if let Some(gp) = &self.graded_primes {
            let _ = writeln!(s, "graded primes: {}", gp.len());
            for r in gp {
                let _ = write!(
                    s,
                    "  H = {{{}}}: flavor {} ({})",
                    r.h.join(" "),
                    r.flavor,
                    r.witness
                );
                if let Some(c) = &r.cycle {
                    let _ = write!(s, ", cycle {c}");
                }
                if let Some(n) = r.count {
                    let _ = write!(s, ", n = {n}");
                }
                s.push('\n');
            }
        }
        if let Some(b) = &self.bounds {
            let _ = writeln!(s, "upper bound: {}", b.upper);
            let _ = writeln!(s, "lower bound: {}", b.lower);
            for t in &b.terms {
                let hw = match &t.h_w {
                    Some(h) => format!("{{{}}}", h.join(" ")),
                    None => "whole algebra".into(),
                };
                let ring = t
                    .center
                    .as_ref()
                    .map(|c| c.ring.clone())
                    .unwrap_or_else(|| "oracle-bounded".into());
                let _ = writeln!(
                    s,
                    "  W for prime {}: H_W = {}, Z(W) = {}",
                    t.record + 1,
                    hw,
                    ring
                );
            }
            let _ = writeln!(s, "graded Baer radical zero: {}", b.direct);
            if let Some(c) = &b.check {
                let _ = writeln!(
                    s,
                    "oracle check ({}): upper {}, lower {}",
                    c.window, c.upper_ok, c.lower_ok
                );
            }
        }
        if let Some(u) = &self.exit_free_uniqueness {
            let _ = writeln!(
                s,
                "exit-free cycles: {}, orthogonality passed: {}",
                u.exit_free_cycles.len(),
                u.passed
            );
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                s,
                "oracle ({} algebra, {}): dimension {} from {} candidates",
                o.algebra, o.window, o.dimension, o.candidates
            );
            for b in &o.basis {
                let _ = writeln!(s, "  {b}");
            }
            if let Some(v) = &o.verification {
                let _ = writeln!(
                    s,
                    "verification of {}: {} (oracle {}, predicted {})",
                    v.claim,
                    if v.passed { "pass" } else { "FAIL" },
                    v.oracle_dimension,
                    v.predicted_dimension
                );
                for m in &v.mismatches {
                    let _ = writeln!(s, "  {}: {}", m.element, m.reason);
                }
            }
        }
        for n in &self.notices {
            let _ = writeln!(s, "notice: {n}");
        }
        s
    }
}
