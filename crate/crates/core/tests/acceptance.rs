//! End-to-end acceptance checks, one line of output per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use pathcenter::algebra::{
    in_span, normal_form, span_dimension, Algebra, Element, GAElement, GMonomial, GraphAlgebra,
    KEElement, Letter, PathAlgebra, RewriteOrder,
};
use pathcenter::center::{
    center_bounds, center_prime_cohn, center_prime_leavitt, center_structure_ke,
    graded_prime_ideals, is_prime_cohn, is_prime_leavitt, CenterComponent, CenterStructure,
    PrimeLeavittCase, RingType,
};
use pathcenter::field::{Field, Rational};
use pathcenter::graph::{cycle_graph, line_graph, rose_graph, Graph, Path, VertexId};
use pathcenter::io::cli::{run, EXIT_HYPOTHESIS, EXIT_RESOURCE, EXIT_USAGE};
use pathcenter::io::graph_file::parse_graph;
use pathcenter::oracle::{
    central_subspace, check_bounds, graded_center_component, verify_structure, OracleWindow,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Q = Rational;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> Arc<Graph> {
    let text = std::fs::read_to_string(fixtures_dir().join(format!("{name}.graph"))).unwrap();
    Arc::new(parse_graph(&text).unwrap())
}

fn all_fixtures() -> Vec<(String, Arc<Graph>)> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "graph")
                .then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| (n.clone(), fixture(&n)))
        .collect()
}

/// The spans of two families coincide.
fn same_span<A: Algebra>(a: &[Element<A, Q>], b: &[Element<A, Q>]) -> bool {
    span_dimension(a) == span_dimension(b)
        && b.iter().all(|x| in_span(a, x))
        && a.iter().all(|x| in_span(b, x))
}

/// `Σ_i c_i` built edge by edge: the closed path of length `n` at each vertex.
fn cycle_sum(alg: &Arc<PathAlgebra>, g: &Graph, n: usize) -> KEElement<Q> {
    let mut z = KEElement::zero(alg);
    for v in g.vertices() {
        let mut edges = Vec::new();
        let mut at = v;
        for _ in 0..n {
            let e = g.out_edges(at)[0];
            edges.push(e);
            at = g.range(e);
        }
        z = &z + &KEElement::path(alg, Path::from_edges(g, &edges).unwrap());
    }
    z
}

fn criterion_1() {
    for n in 1..=4 {
        let g = Arc::new(cycle_graph(n).unwrap());
        let alg = PathAlgebra::new(g.clone());
        let s = center_structure_ke::<Q>(&alg);
        assert_eq!(s.rings(), vec![RingType::PolynomialRing]);
        let z = cycle_sum(&alg, &g, n);
        assert_eq!(s.components[0].generator.as_ref().unwrap(), &z);
        let one = KEElement::one(&alg);
        let oracle = central_subspace::<PathAlgebra, Q>(&alg, OracleWindow::new(2 * n)).unwrap();
        assert!(
            same_span(&oracle.basis, &[one, z.clone(), &z * &z]),
            "cycle {n}"
        );
    }
}

fn criterion_2() {
    let graphs: Vec<Graph> = (1..=3)
        .map(|n| line_graph(n).unwrap())
        .chain([rose_graph(2), rose_graph(3)])
        .collect();
    for g in graphs {
        let alg = PathAlgebra::new(Arc::new(g));
        let s = center_structure_ke::<Q>(&alg);
        assert_eq!(s.rings(), vec![RingType::ScalarField]);
        assert_eq!(
            s.components[0].unit.as_ref().unwrap(),
            &KEElement::one(&alg)
        );
        let oracle = central_subspace::<PathAlgebra, Q>(&alg, OracleWindow::new(3)).unwrap();
        assert!(same_span(&oracle.basis, &[KEElement::one(&alg)]));
    }
}

fn criterion_3() {
    let fixtures = all_fixtures();
    assert!(fixtures.len() >= 8);
    for (name, g) in &fixtures {
        assert_eq!(is_prime_cohn(g), g.vertex_count() == 1, "{name}");
    }
    for m in 1..=3 {
        let alg = GraphAlgebra::cohn(Arc::new(rose_graph(m)));
        let s = center_prime_cohn::<Q>(&alg).unwrap();
        assert_eq!(s.rings(), vec![RingType::ScalarField]);
        assert_eq!(
            s.components[0].unit.as_ref().unwrap(),
            &GAElement::one(&alg)
        );
    }
    let alg = GraphAlgebra::cohn(fixture("R1"));
    let z =
        central_subspace::<GraphAlgebra, Q>(&alg, OracleWindow::degree_window(4, 1, 3).unwrap())
            .unwrap();
    assert_eq!(z.dimension(), 0);
}

/// Paths ending at the base of `c` that avoid some edge of `c`, by brute
/// force over all paths up to the vertex count.
fn feeding_count(g: &Graph, cycle_edges: &[&str]) -> usize {
    let edges: BTreeSet<_> = cycle_edges.iter().map(|e| g.edge_id(e).unwrap()).collect();
    let base = g.source(g.edge_id(cycle_edges[0]).unwrap());
    g.paths_up_to(g.vertex_count() + cycle_edges.len())
        .into_iter()
        .filter(|p| p.range() == base && !edges.iter().all(|e| p.edges().contains(e)))
        .count()
}

fn criterion_4() {
    let window = OracleWindow::degree_window(4, -4, 4).unwrap();
    let cases: [(&str, RingType, Option<usize>); 7] = [
        ("R1", RingType::LaurentRing, Some(9)),
        ("R2", RingType::ScalarField, Some(1)),
        ("R3", RingType::ScalarField, Some(1)),
        ("line1", RingType::ScalarField, Some(1)),
        ("line2", RingType::ScalarField, Some(1)),
        ("feeding", RingType::LaurentRing, None),
        ("exit_loop_feeding", RingType::ScalarField, Some(1)),
    ];
    for (name, ring, expected_dim) in cases {
        let g = fixture(name);
        assert!(is_prime_leavitt(&g), "{name}");
        let alg = GraphAlgebra::leavitt(g.clone());
        let c = center_prime_leavitt::<Q>(&alg).unwrap();
        assert_eq!(c.structure.rings(), vec![ring], "{name}");
        let oracle = central_subspace::<GraphAlgebra, Q>(&alg, window).unwrap();
        let predicted = c.structure.truncation(&window);
        assert!(same_span(&oracle.basis, &predicted), "{name}");
        if let Some(d) = expected_dim {
            assert_eq!(oracle.dimension(), d, "{name}");
        }
        assert!(
            verify_structure(&c.structure, &alg, window).unwrap().passed,
            "{name}"
        );
    }
    let g = fixture("line3");
    assert_eq!(
        center_prime_leavitt::<Q>(&GraphAlgebra::leavitt(g))
            .unwrap()
            .structure
            .rings(),
        vec![RingType::ScalarField]
    );

    let g = fixture("feeding");
    let c = center_prime_leavitt::<Q>(&GraphAlgebra::leavitt(g.clone())).unwrap();
    let brute = feeding_count(&g, &["c"]);
    assert_eq!(brute, 2);
    assert_eq!(
        c.case,
        PrimeLeavittCase::FiniteFeeding {
            cycle: "c".into(),
            count: brute as u64
        }
    );
    let w = c.laurent.unwrap();
    assert!(w.central && w.unitary && w.matches_oracle);
    // z^k = f c^k f* + c^k fits the window for |k| <= 3.
    let oracle =
        central_subspace::<GraphAlgebra, Q>(&GraphAlgebra::leavitt(g.clone()), window).unwrap();
    assert_eq!(oracle.dimension(), 7);

    let g = fixture("exit_loop_feeding");
    assert!(matches!(
        center_prime_leavitt::<Q>(&GraphAlgebra::leavitt(g))
            .unwrap()
            .case,
        PrimeLeavittCase::InfiniteFeeding { .. }
    ));
}

fn degree_zero_checks<A: Algebra>(alg: &Arc<A>, name: &str) {
    let z = graded_center_component::<A, Q>(alg, 0, 4).unwrap();
    assert_eq!(z.dimension(), 1, "{name}");
    for x in &z.basis {
        assert!(x.is_symmetric(), "{name}: {x}");
        assert!(x.is_peirce_diagonal(), "{name}: {x}");
    }
}

fn criterion_5() {
    let mut checked = 0;
    for (name, g) in all_fixtures() {
        if is_prime_leavitt(&g) {
            degree_zero_checks(&GraphAlgebra::leavitt(g.clone()), &name);
            checked += 1;
        }
        if is_prime_cohn(&g) {
            degree_zero_checks(&GraphAlgebra::cohn(g.clone()), &name);
            checked += 1;
        }
    }
    assert!(checked >= 8);
}

/// Monomials `λμ*` with `r(λ) = r(μ)` in `h`, both lengths at most `max_len`.
fn ideal_monomials(
    alg: &Arc<GraphAlgebra>,
    h: &BTreeSet<VertexId>,
    max_len: usize,
) -> Vec<GAElement<Q>> {
    let g = alg.graph_arc();
    let paths = g.paths_up_to(max_len);
    let mut out = Vec::new();
    for l in paths.iter().filter(|p| h.contains(&p.range())) {
        for m in paths.iter().filter(|p| p.range() == l.range()) {
            out.push(GAElement::from_paths(alg, l.clone(), m.clone()).unwrap());
        }
    }
    out
}

fn criterion_6() {
    let g = fixture("two_loops");
    let alg = GraphAlgebra::leavitt(g.clone());
    let u = BTreeSet::from([g.vertex_id("u").unwrap()]);
    let v = BTreeSet::from([g.vertex_id("v").unwrap()]);
    let iu = ideal_monomials(&alg, &u, 4);
    let iv = ideal_monomials(&alg, &v, 4);
    assert!(!iu.is_empty() && !iv.is_empty());
    for x in &iu {
        for y in &iv {
            assert!((x * y).is_zero() && (y * x).is_zero(), "{x} · {y}");
        }
    }
    let report = pathcenter::center::uniqueness_check_exit_free::<Q>(&alg, 4);
    assert!(report.passed);
}

fn criterion_7() {
    for (name, g) in all_fixtures() {
        let records = graded_prime_ideals(&g).unwrap();
        assert!(!records.is_empty(), "{name}");
        let mut meet: BTreeSet<VertexId> = g.vertices().collect();
        for r in &records {
            meet = meet.intersection(r.h.vertices()).copied().collect();
        }
        assert!(meet.is_empty(), "{name}");
        let bounds = center_bounds::<Q>(&GraphAlgebra::leavitt(g.clone())).unwrap();
        assert!(bounds.radical.is_empty() && bounds.direct, "{name}");
    }
}

fn criterion_8() {
    let window = OracleWindow::new(4);
    let alg = GraphAlgebra::leavitt(fixture("toeplitz"));
    let b = center_bounds::<Q>(&alg).unwrap();
    assert_eq!(b.upper_display(), "K × K[x,x^-1]");
    assert_eq!(b.lower_display(), "0");
    assert!(check_bounds(&b, &alg, window).unwrap().passed);

    let alg = GraphAlgebra::leavitt(fixture("two_loops"));
    let b = center_bounds::<Q>(&alg).unwrap();
    assert_eq!(b.upper_display(), "K[x,x^-1] × K[x,x^-1]");
    assert!(b.bounds_meet());
    let lower: Vec<RingType> = b
        .lower
        .iter()
        .filter_map(|t| t.center.as_ref().map(|c| c.ring))
        .collect();
    assert_eq!(lower, vec![RingType::LaurentRing, RingType::LaurentRing]);
    let check = check_bounds(&b, &alg, window).unwrap();
    assert!(check.passed && check.upper_ok && check.lower_ok);
    let oracle = central_subspace::<GraphAlgebra, Q>(&alg, window).unwrap();
    assert!(same_span(&oracle.basis, &b.lower_truncation(&window)));
}

fn random_word(g: &Graph, rng: &mut StdRng) -> Vec<Letter> {
    let len = rng.gen_range(1..=8);
    let mut at = VertexId(rng.gen_range(0..g.vertex_count()));
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let mut options = vec![Letter::Vertex(at)];
        options.extend(g.out_edges(at).iter().map(|&e| Letter::Edge(e)));
        options.extend(g.in_edges(at).iter().map(|&e| Letter::Ghost(e)));
        let l = options[rng.gen_range(0..options.len())];
        at = l.range(g);
        word.push(l);
    }
    word
}

fn letter_element(alg: &Arc<GraphAlgebra>, l: Letter) -> GAElement<Q> {
    match l {
        Letter::Vertex(v) => GAElement::vertex(alg, v),
        Letter::Edge(e) => GAElement::edge(alg, e),
        Letter::Ghost(e) => GAElement::ghost(alg, e),
    }
}

fn random_element(alg: &Arc<GraphAlgebra>, monos: &[GMonomial], rng: &mut StdRng) -> GAElement<Q> {
    let terms = (0..rng.gen_range(1..=3)).map(|_| {
        let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        (monos[rng.gen_range(0..monos.len())].clone(), q(c))
    });
    GAElement::from_terms(alg, terms.collect::<Vec<_>>())
}

fn criterion_9() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (name, g) in all_fixtures() {
        for alg in [
            GraphAlgebra::leavitt(g.clone()),
            GraphAlgebra::cohn(g.clone()),
        ] {
            for _ in 0..1000 {
                let w = random_word(&g, &mut rng);
                let left = normal_form(&alg, &[(q(1), w.clone())], RewriteOrder::Leftmost).unwrap();
                let seed = rng.gen();
                let shuffled =
                    normal_form(&alg, &[(q(1), w.clone())], RewriteOrder::Random(seed)).unwrap();
                assert_eq!(left, shuffled, "{name}");
                let product = w
                    .iter()
                    .map(|&l| letter_element(&alg, l))
                    .reduce(|a, b| &a * &b)
                    .unwrap();
                assert_eq!(left, product, "{name}");
            }
            let monos = alg.monomials_up_to(2);
            for _ in 0..1000 {
                let x = random_element(&alg, &monos, &mut rng);
                let y = random_element(&alg, &monos, &mut rng);
                let z = random_element(&alg, &monos, &mut rng);
                assert_eq!(&(&x * &y) * &z, &x * &(&y * &z), "{name}");
            }
        }
        let leavitt = GraphAlgebra::leavitt(g.clone());
        for e in g.edges() {
            for f in g.edges().filter(|&f| g.source(f) == g.source(e)) {
                let mut words = vec![(q(1), vec![Letter::Ghost(e), Letter::Edge(f)])];
                if e == f {
                    words.push((q(-1), vec![Letter::Vertex(g.range(e))]));
                }
                assert!(
                    normal_form(&leavitt, &words, RewriteOrder::Leftmost)
                        .unwrap()
                        .is_zero(),
                    "{name}"
                );
            }
        }
        for v in g.vertices().filter(|&v| g.is_regular(v)) {
            let mut words = vec![(q(1), vec![Letter::Vertex(v)])];
            words.extend(
                g.out_edges(v)
                    .iter()
                    .map(|&e| (q(-1), vec![Letter::Edge(e), Letter::Ghost(e)])),
            );
            for order in [RewriteOrder::Leftmost, RewriteOrder::Random(7)] {
                assert!(
                    normal_form(&leavitt, &words, order).unwrap().is_zero(),
                    "{name}"
                );
            }
            let cohn = GraphAlgebra::cohn(g.clone());
            assert!(
                !normal_form(&cohn, &words, RewriteOrder::Leftmost)
                    .unwrap()
                    .is_zero(),
                "{name}"
            );
        }
    }
}

fn criterion_10() {
    let g = fixture("cycle3");
    let alg = PathAlgebra::new(g.clone());
    let honest = center_structure_ke::<Q>(&alg);
    let window = OracleWindow::new(6);
    assert!(verify_structure(&honest, &alg, window).unwrap().passed);
    let lone = KEElement::<Q>::path(
        &alg,
        Path::from_edges(
            &g,
            &[
                g.edge_id("f1").unwrap(),
                g.edge_id("f2").unwrap(),
                g.edge_id("f3").unwrap(),
            ],
        )
        .unwrap(),
    );
    let corrupted =
        CenterStructure::single(CenterComponent::polynomial(KEElement::one(&alg), lone));
    let v = verify_structure(&corrupted, &alg, window).unwrap();
    assert!(!v.passed && !v.generators_central);
    assert!(v
        .mismatches
        .iter()
        .any(|m| m.reason.contains("does not commute with")));

    let dir = std::env::temp_dir().join(format!("pathcenter-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.graph");
    std::fs::write(&bad, "edge e: u -> v\n").unwrap();
    let bad = bad.to_string_lossy().into_owned();
    let path = |n: &str| {
        fixtures_dir()
            .join(format!("{n}.graph"))
            .to_string_lossy()
            .into_owned()
    };
    let out = run(["pathcenter", "analyze", bad.as_str()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("line 1"));
    assert_eq!(
        run([
            "pathcenter",
            "center",
            path("toeplitz").as_str(),
            "--algebra",
            "cohn"
        ])
        .code,
        EXIT_HYPOTHESIS
    );
    let out = run([
        "pathcenter",
        "center",
        path("two_loops").as_str(),
        "--algebra",
        "leavitt",
    ]);
    assert_eq!(out.code, EXIT_HYPOTHESIS);
    assert!(out.stdout.contains("upper bound: K[x,x^-1] × K[x,x^-1]"));
    let out = run([
        "pathcenter",
        "gprimes",
        path("R2").as_str(),
        "--max-vertices",
        "0",
    ]);
    assert_eq!(out.code, EXIT_RESOURCE);
    assert_eq!(
        run([
            "pathcenter",
            "oracle",
            path("R1").as_str(),
            "--algebra",
            "path"
        ])
        .code,
        EXIT_USAGE
    );
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("1 cycle centers of path algebras", criterion_1),
        ("2 scalar centers of non-cycle path algebras", criterion_2),
        ("3 prime Cohn path algebras", criterion_3),
        ("4 prime Leavitt classification", criterion_4),
        ("5 degree-zero central elements", criterion_5),
        ("6 orthogonality of exit-free cycle ideals", criterion_6),
        ("7 graded Baer radical", criterion_7),
        ("8 center bounds", criterion_8),
        ("9 rewriting integrity", criterion_9),
        ("10 negative controls", criterion_10),
    ];
    let only: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (label, check) in criteria {
        if !only.is_empty() && !only.iter().any(|o| label.contains(o.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {label}: PASS ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {label}: FAIL ({secs:.2}s) {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
