//! The `pathcenter` command line.

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{Algebra, GraphAlgebra, PathAlgebra};
use crate::center::{
    center_bounds_capped, center_prime_cohn, center_prime_leavitt, center_structure_ke,
    graded_prime_ideals_capped, is_prime_cohn, is_prime_leavitt, uniqueness_check_exit_free,
    CenterError, CenterStructure,
};
use crate::field::Rational;
use crate::graph::{Graph, GraphError, DEFAULT_MAX_ENUMERATION_VERTICES};
use crate::oracle::{central_subspace, check_bounds, verify_structure, OracleError, OracleWindow};

use super::graph_file::parse_graph;
use super::report::{
    BoundsSummary, CenterSummary, CycleSummary, GradedPrimeSummary, OracleSummary, Predicates,
    Primeness, Report,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "pathcenter",
    version,
    about = "Centers of path, Cohn and Leavitt path algebras"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest graph for which hereditary saturated sets are enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ENUMERATION_VERTICES)]
    max_vertices: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgebraArg {
    Path,
    Cohn,
    Leavitt,
}

impl AlgebraArg {
    fn name(self) -> &'static str {
        match self {
            AlgebraArg::Path => "path",
            AlgebraArg::Cohn => "cohn",
            AlgebraArg::Leavitt => "leavitt",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graph predicates: sinks, cycles, exits, Condition (L), hereditary saturated sets.
    Analyze { file: PathBuf },
    /// The center, from the classification matching the algebra.
    Center {
        file: PathBuf,
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
    },
    /// Graded prime ideals of the Leavitt path algebra and the center bounds.
    Gprimes {
        file: PathBuf,
        /// Also compare the bounds with the oracle at this length.
        #[arg(long)]
        check_len: Option<usize>,
    },
    /// Bounded brute-force computation of central elements.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        /// Largest real and ghost length of candidate monomials.
        #[arg(long)]
        max_len: usize,
        /// Restrict to one degree.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "deg_window")]
        deg: Option<i64>,
        /// Restrict to degrees in [A, B].
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        deg_window: Option<Vec<i64>>,
        /// Check the structural answer against the oracle.
        #[arg(long)]
        verify: bool,
    },
}

/// What a command printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Failure {
    message: String,
    code: i32,
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = match e {
            GraphError::TooManyVertices { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::TooManyCandidates { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

impl From<CenterError> for Failure {
    fn from(e: CenterError) -> Self {
        match e {
            CenterError::Graph(g) => g.into(),
            CenterError::Oracle(o) => o.into(),
            CenterError::NotPrime(_) => Failure {
                message: e.to_string(),
                code: EXIT_HYPOTHESIS,
            },
            other => Failure {
                message: other.to_string(),
                code: EXIT_USAGE,
            },
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match execute(&cli) {
        Ok((report, code)) => {
            let stdout = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code,
            }
        }
        Err(f) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
            code: f.code,
        },
    }
}

fn load(file: &PathBuf) -> Result<Arc<Graph>, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure {
        message: format!("{}: {e}", file.display()),
        code: EXIT_USAGE,
    })?;
    let g = parse_graph(&text).map_err(|e| Failure {
        message: format!("{}: {e}", file.display()),
        code: EXIT_USAGE,
    })?;
    Ok(Arc::new(g))
}

fn execute(cli: &Cli) -> Result<(Report, i32), Failure> {
    match &cli.command {
        Command::Analyze { file } => {
            let g = load(file)?;
            let mut r = Report::new("analyze", &g);
            r.predicates = Some(predicates(&g, cli.max_vertices)?);
            r.primeness = Some(primeness(&g));
            Ok((r, EXIT_OK))
        }
        Command::Center { file, algebra } => {
            let g = load(file)?;
            center(&g, *algebra, cli.max_vertices)
        }
        Command::Gprimes { file, check_len } => {
            let g = load(file)?;
            let mut r = Report::new("gprimes", &g);
            let records = graded_prime_ideals_capped(&g, cli.max_vertices)?;
            r.graded_primes = Some(
                records
                    .iter()
                    .map(|p| GradedPrimeSummary::of(&g, p))
                    .collect(),
            );
            let alg = GraphAlgebra::leavitt(g.clone());
            let bounds = center_bounds_capped::<Rational>(&alg, cli.max_vertices)?;
            let mut summary = BoundsSummary::of(&g, &bounds);
            let mut code = EXIT_OK;
            if let Some(l) = check_len {
                let check = check_bounds(&bounds, &alg, OracleWindow::new(*l))?;
                if !check.passed {
                    code = EXIT_HYPOTHESIS;
                    r.notices
                        .push("the oracle disagrees with the bounds".into());
                }
                summary.check = Some(check);
                let uniqueness = uniqueness_check_exit_free::<Rational>(&alg, *l);
                if !uniqueness.passed {
                    code = EXIT_HYPOTHESIS;
                    r.notices
                        .push("exit-free cycle ideals are not orthogonal".into());
                }
                r.exit_free_uniqueness = Some(uniqueness);
            }
            r.bounds = Some(summary);
            Ok((r, code))
        }
        Command::Oracle {
            file,
            algebra,
            max_len,
            deg,
            deg_window,
            verify,
        } => {
            let g = load(file)?;
            let window = match (deg, deg_window.as_deref()) {
                (Some(n), _) => OracleWindow::degree(*max_len, *n)?,
                (None, Some([a, b])) => OracleWindow::degree_window(*max_len, *a, *b)?,
                _ => OracleWindow::new(*max_len),
            };
            oracle(&g, *algebra, window, *verify, cli.max_vertices)
        }
    }
}

fn predicates(g: &Graph, cap: usize) -> Result<Predicates, Failure> {
    let names = |vs: &mut dyn Iterator<Item = crate::graph::VertexId>| -> Vec<String> {
        vs.map(|v| g.vertex_name(v).to_string()).collect()
    };
    let mut cycles = Vec::new();
    for c in g.find_cycles() {
        let has_exit = g.cycle_has_exit(&c)?;
        let (count, on_cycle) = if has_exit {
            (None, None)
        } else {
            (
                Some(g.count_paths_ending_at_cycle(&c)?),
                Some(g.count_paths_ending_on_cycle_vertices(&c)?),
            )
        };
        cycles.push(CycleSummary {
            cycle: c.path().display(g),
            has_exit,
            count,
            count_on_cycle_vertices: on_cycle,
        });
    }
    let hss = g.enumerate_hereditary_saturated_capped(cap)?;
    Ok(Predicates {
        sinks: names(&mut g.vertices().filter(|&v| g.is_sink(v))),
        sources: names(&mut g.vertices().filter(|&v| g.in_edges(v).is_empty())),
        regular: names(&mut g.vertices().filter(|&v| g.is_regular(v))),
        components: g
            .connected_components()
            .into_iter()
            .map(|c| names(&mut c.into_iter()))
            .collect(),
        cycles,
        condition_l: g.condition_l(),
        downward_directed: g.is_downward_directed(),
        exit_free_cycle_vertices: g.vertex_set_names(&g.exit_free_cycle_vertices()),
        hereditary_saturated: hss
            .iter()
            .map(|h| g.vertex_set_names(h.vertices()))
            .collect(),
    })
}

fn primeness(g: &Graph) -> Primeness {
    Primeness {
        leavitt: is_prime_leavitt(g),
        cohn: is_prime_cohn(g),
    }
}

fn center(g: &Arc<Graph>, algebra: AlgebraArg, cap: usize) -> Result<(Report, i32), Failure> {
    let mut r = Report::new("center", g);
    r.primeness = Some(primeness(g));
    match algebra {
        AlgebraArg::Path => {
            let alg = PathAlgebra::new(g.clone());
            r.center = Some(CenterSummary::of(
                "path",
                &center_structure_ke::<Rational>(&alg),
            ));
        }
        AlgebraArg::Cohn => {
            if !is_prime_cohn(g) {
                r.notices
                    .push("the Cohn path algebra is prime only for one-vertex graphs".into());
                return Ok((r, EXIT_HYPOTHESIS));
            }
            let alg = GraphAlgebra::cohn(g.clone());
            r.center = Some(CenterSummary::of(
                "cohn",
                &center_prime_cohn::<Rational>(&alg)?,
            ));
        }
        AlgebraArg::Leavitt => {
            let alg = GraphAlgebra::leavitt(g.clone());
            if !is_prime_leavitt(g) {
                let records = graded_prime_ideals_capped(g, cap)?;
                r.graded_primes = Some(
                    records
                        .iter()
                        .map(|p| GradedPrimeSummary::of(g, p))
                        .collect(),
                );
                let bounds = center_bounds_capped::<Rational>(&alg, cap)?;
                r.bounds = Some(BoundsSummary::of(g, &bounds));
                r.notices.push("the graph is not downward directed, so the Leavitt path algebra is not prime; reporting bounds instead".into());
                return Ok((r, EXIT_HYPOTHESIS));
            }
            let c = center_prime_leavitt::<Rational>(&alg)?;
            r.center = Some(CenterSummary::of_prime_leavitt(g, &c));
        }
    }
    Ok((r, EXIT_OK))
}

fn oracle_section<A: Algebra>(
    r: &mut Report,
    alg: &Arc<A>,
    name: &str,
    window: OracleWindow,
    claim: Option<CenterStructure<A, Rational>>,
) -> Result<i32, Failure> {
    let z = central_subspace::<A, Rational>(alg, window)?;
    let mut summary = OracleSummary::of(name, &z);
    let mut code = EXIT_OK;
    if let Some(claim) = claim {
        let v = verify_structure(&claim, alg, window)?;
        if !v.passed {
            code = EXIT_HYPOTHESIS;
            r.notices.push("verification failed".into());
        }
        summary.verification = Some(v);
    }
    r.oracle = Some(summary);
    Ok(code)
}

fn oracle(
    g: &Arc<Graph>,
    algebra: AlgebraArg,
    window: OracleWindow,
    verify: bool,
    cap: usize,
) -> Result<(Report, i32), Failure> {
    let mut r = Report::new("oracle", g);
    let code = match algebra {
        AlgebraArg::Path => {
            let alg = PathAlgebra::new(g.clone());
            let claim = verify.then(|| center_structure_ke::<Rational>(&alg));
            oracle_section(&mut r, &alg, algebra.name(), window, claim)?
        }
        AlgebraArg::Cohn => {
            let alg = GraphAlgebra::cohn(g.clone());
            let claim = if verify && is_prime_cohn(g) {
                Some(center_prime_cohn::<Rational>(&alg)?)
            } else {
                if verify {
                    r.notices
                        .push("no structural claim: the Cohn path algebra is not prime".into());
                }
                None
            };
            let code = oracle_section(&mut r, &alg, algebra.name(), window, claim)?;
            if verify && !is_prime_cohn(g) {
                EXIT_HYPOTHESIS
            } else {
                code
            }
        }
        AlgebraArg::Leavitt => {
            let alg = GraphAlgebra::leavitt(g.clone());
            if verify && !is_prime_leavitt(g) {
                let code = oracle_section(&mut r, &alg, algebra.name(), window, None)?;
                let bounds = center_bounds_capped::<Rational>(&alg, cap)?;
                let mut summary = BoundsSummary::of(g, &bounds);
                let check = check_bounds(&bounds, &alg, window)?;
                let passed = check.passed;
                summary.check = Some(check);
                r.bounds = Some(summary);
                r.notices.push(
                    "the Leavitt path algebra is not prime; checked the bounds instead".into(),
                );
                if passed {
                    code
                } else {
                    EXIT_HYPOTHESIS
                }
            } else {
                let claim = if verify {
                    Some(center_prime_leavitt::<Rational>(&alg)?.structure)
                } else {
                    None
                };
                oracle_section(&mut r, &alg, algebra.name(), window, claim)?
            }
        }
    };
    Ok((r, code))
}
