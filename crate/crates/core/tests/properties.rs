use std::collections::BTreeSet;
use std::sync::Arc;

use pathcenter::algebra::{
    in_span, normal_form, Algebra, Degree, Element, GAElement, GMonomial, GraphAlgebra, KEElement,
    Letter, PathAlgebra, RewriteOrder,
};
use pathcenter::center::{
    center_prime_leavitt, center_structure_ke, graded_prime_ideals, is_prime_leavitt, Flavor,
    GradedPrimeRecord,
};
use pathcenter::field::{Field, Rational};
use pathcenter::graph::{EdgeId, Graph, HereditarySaturatedSet, PathCount, VertexId};
use pathcenter::io::graph_file::{emit_graph, parse_graph};
use pathcenter::oracle::{central_subspace, check_central, OracleWindow};
use proptest::prelude::*;

type Q = Rational;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    let b = (0..n).fold(Graph::builder(), |b, i| b.vertex(format!("v{i}")));
    edges
        .iter()
        .enumerate()
        .fold(b, |b, (i, &(s, r))| {
            b.edge(
                format!("e{i}"),
                format!("v{}", s % n),
                format!("v{}", r % n),
            )
        })
        .build()
        .unwrap()
}

fn graphs(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_edges).prop_map(move |es| build(n, &es))
    })
}

fn subsets(g: &Graph, mask: u32) -> BTreeSet<VertexId> {
    g.vertices().filter(|v| mask & (1 << v.0) != 0).collect()
}

fn random_element<A: Algebra>(
    alg: &Arc<A>,
    monos: &[A::Mono],
    picks: &[(usize, i64)],
) -> Element<A, Q> {
    Element::from_terms(
        alg,
        picks
            .iter()
            .map(|&(i, c)| (monos[i % monos.len()].clone(), q(c)))
            .collect::<Vec<_>>(),
    )
}

type Picks = Vec<(usize, i64)>;

fn picks() -> impl Strategy<Value = Picks> {
    prop::collection::vec((0usize..1000, -3i64..=3), 1..=3)
}

fn walk(g: &Graph, start: usize, choices: &[usize]) -> Vec<Letter> {
    let mut at = VertexId(start % g.vertex_count());
    let mut out = Vec::new();
    for &c in choices {
        let mut options = vec![Letter::Vertex(at)];
        options.extend(g.out_edges(at).iter().map(|&e| Letter::Edge(e)));
        options.extend(g.in_edges(at).iter().map(|&e| Letter::Ghost(e)));
        let l = options[c % options.len()];
        at = l.range(g);
        out.push(l);
    }
    out
}

/// Vertices from which `target` can be reached.
fn reaches(g: &Graph, target: VertexId) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::from([target]);
    let mut stack = vec![target];
    while let Some(v) = stack.pop() {
        for &e in g.in_edges(v) {
            if seen.insert(g.source(e)) {
                stack.push(g.source(e));
            }
        }
    }
    seen
}

fn flavor_key(g: &Graph, r: &GradedPrimeRecord) -> (Vec<String>, String) {
    let flavor = match &r.flavor {
        Flavor::I(_) => "I".to_string(),
        Flavor::J { cycle, count } => format!("J {} {}", cycle.len(), count),
    };
    (g.vertex_set_names(r.h.vertices()), flavor)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_idempotent(g in graphs(5, 7), mask in 0u32..32) {
        let c = g.hereditary_saturated_closure(&subsets(&g, mask)).unwrap();
        prop_assert_eq!(g.hereditary_saturated_closure(c.vertices()).unwrap(), c.clone());
        prop_assert!(c.is_hereditary(&g) && c.is_saturated(&g));
    }

    #[test]
    fn enumerated_sets_are_hereditary_and_saturated(g in graphs(5, 7)) {
        let all = g.enumerate_hereditary_saturated().unwrap();
        prop_assert!(all.contains(&HereditarySaturatedSet::empty()) || !all.is_empty());
        for h in &all {
            prop_assert!(h.is_hereditary(&g) && h.is_saturated(&g));
        }
        // brute force over all subsets
        let brute = (0u32..1 << g.vertex_count())
            .map(|m| HereditarySaturatedSet::from_vertices(subsets(&g, m)))
            .filter(|h| h.is_hereditary(&g) && h.is_saturated(&g))
            .count();
        prop_assert_eq!(brute, all.len());
    }

    #[test]
    fn quotients_drop_h(g in graphs(5, 7)) {
        prop_assert_eq!(g.quotient(&HereditarySaturatedSet::empty()).unwrap(), g.clone());
        for h in g.enumerate_hereditary_saturated().unwrap() {
            if h.len() == g.vertex_count() {
                continue;
            }
            let quotient = g.quotient(&h).unwrap();
            let removed: BTreeSet<String> = g.vertex_set_names(h.vertices()).into_iter().collect();
            prop_assert!(quotient.vertices().all(|v| !removed.contains(quotient.vertex_name(v))));
        }
    }

    #[test]
    fn opposite_is_an_involution(g in graphs(5, 7)) {
        prop_assert_eq!(g.opposite().opposite(), g.clone());
        prop_assert_eq!(g.opposite().find_cycles().len(), g.find_cycles().len());
    }

    #[test]
    fn infinite_count_iff_another_cycle_feeds(g in graphs(5, 7)) {
        let cycles = g.find_cycles();
        for c in g.cycles_without_exits() {
            let into_base = reaches(&g, c.base());
            let fed = cycles
                .iter()
                .filter(|d| **d != c)
                .any(|d| d.vertex_set(&g).iter().any(|v| into_base.contains(v)));
            let count = g.count_paths_ending_at_cycle(&c).unwrap();
            prop_assert_eq!(count == PathCount::Infinite, fed);
        }
    }

    #[test]
    fn graded_baer_radical_is_zero(g in graphs(5, 7)) {
        let records = graded_prime_ideals(&g).unwrap();
        prop_assert!(!records.is_empty());
        let mut meet: BTreeSet<VertexId> = g.vertices().collect();
        for r in &records {
            meet = meet.intersection(r.h.vertices()).copied().collect();
        }
        prop_assert!(meet.is_empty());
    }

    #[test]
    fn j_counts_match_path_enumeration(g in graphs(5, 7)) {
        for r in graded_prime_ideals(&g).unwrap() {
            if let Flavor::J { cycle, count } = &r.flavor {
                let quotient = &r.quotient;
                let edges: BTreeSet<EdgeId> = cycle.edges().iter().copied().collect();
                let brute = quotient
                    .paths_up_to(quotient.vertex_count() + cycle.len())
                    .into_iter()
                    .filter(|p| p.range() == cycle.base() && !edges.iter().all(|e| p.edges().contains(e)))
                    .count();
                prop_assert_eq!(brute as u64, *count);
            }
        }
    }

    #[test]
    fn flavors_survive_relabeling(g in graphs(4, 6), seed in any::<u64>()) {
        let mut vs: Vec<VertexId> = g.vertices().collect();
        let mut es: Vec<EdgeId> = g.edges().collect();
        // a deterministic shuffle from the drawn seed
        let mut s = seed;
        for i in (1..vs.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            vs.swap(i, (s >> 33) as usize % (i + 1));
        }
        for i in (1..es.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            es.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permuted(&vs, &es);
        let mut a: Vec<_> = graded_prime_ideals(&g).unwrap().iter().map(|r| flavor_key(&g, r)).collect();
        let mut b: Vec<_> = graded_prime_ideals(&h).unwrap().iter().map(|r| flavor_key(&h, r)).collect();
        for k in a.iter_mut().chain(b.iter_mut()) {
            k.0.sort();
        }
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(is_prime_leavitt(&g), is_prime_leavitt(&h));
    }

    #[test]
    fn graph_text_round_trips(g in graphs(5, 7)) {
        prop_assert_eq!(parse_graph(&emit_graph(&g)).unwrap(), g);
    }

    #[test]
    fn products_are_associative(g in graphs(3, 5), x in picks(), y in picks(), z in picks()) {
        let g = Arc::new(g);
        let ke = PathAlgebra::new(g.clone());
        let monos = ke.monomials_up_to(2);
        let (a, b, c) = (random_element(&ke, &monos, &x), random_element(&ke, &monos, &y), random_element(&ke, &monos, &z));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        for alg in [GraphAlgebra::cohn(g.clone()), GraphAlgebra::leavitt(g.clone())] {
            let monos = alg.monomials_up_to(2);
            let (a, b, c) = (random_element(&alg, &monos, &x), random_element(&alg, &monos, &y), random_element(&alg, &monos, &z));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }

    #[test]
    fn products_respect_the_grading(g in graphs(3, 5), i in 0usize..1000, j in 0usize..1000) {
        let alg = GraphAlgebra::leavitt(Arc::new(g));
        let monos = alg.monomials_up_to(2);
        let (m, n) = (&monos[i % monos.len()], &monos[j % monos.len()]);
        let p = &GAElement::<Q>::monomial(&alg, m.clone()) * &GAElement::monomial(&alg, n.clone());
        for t in p.terms().keys() {
            prop_assert_eq!(t.degree(), m.degree() + n.degree());
        }
    }

    #[test]
    fn involution_is_an_involution(g in graphs(3, 5), x in picks()) {
        let alg = GraphAlgebra::leavitt(Arc::new(g));
        let monos = alg.monomials_up_to(2);
        let a = random_element(&alg, &monos, &x);
        prop_assert_eq!(a.involution().involution(), a.clone());
        for m in a.terms().keys() {
            let single = GAElement::<Q>::monomial(&alg, m.clone());
            match (single.degree(), single.involution().degree()) {
                (Degree::Homogeneous(d), Degree::Homogeneous(e)) => prop_assert_eq!(d, -e),
                (Degree::Zero, Degree::Zero) => {}
                other => prop_assert!(false, "{other:?}"),
            }
        }
    }

    #[test]
    fn rewriting_is_confluent(g in graphs(4, 6), start in 0usize..8, choices in prop::collection::vec(0usize..16, 1..=8), seed in any::<u64>()) {
        let g = Arc::new(g);
        let word = walk(&g, start, &choices);
        for alg in [GraphAlgebra::cohn(g.clone()), GraphAlgebra::leavitt(g.clone())] {
            let a = normal_form::<Q>(&alg, &[(q(1), word.clone())], RewriteOrder::Leftmost).unwrap();
            let b = normal_form::<Q>(&alg, &[(q(1), word.clone())], RewriteOrder::Random(seed)).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn cohn_gap_idempotents_are_orthogonal(g in graphs(3, 5), i in 0usize..1000) {
        let g = Arc::new(g);
        let alg = GraphAlgebra::cohn(g.clone());
        let gap = |v: VertexId| {
            g.out_edges(v).iter().fold(GAElement::<Q>::vertex(&alg, v), |acc, &e| {
                &acc - &(&GAElement::edge(&alg, e) * &GAElement::ghost(&alg, e))
            })
        };
        let monos = alg.monomials_up_to(2);
        let m = GAElement::<Q>::monomial(&alg, monos[i % monos.len()].clone());
        let regular: Vec<VertexId> = g.vertices().filter(|&v| g.is_regular(v)).collect();
        for &u in &regular {
            prop_assert!(!gap(u).is_zero());
            for &v in &regular {
                if u != v {
                    prop_assert!((&(&gap(u) * &m) * &gap(v)).is_zero());
                }
            }
        }
    }

    #[test]
    fn t_operators_compose(g in graphs(3, 5), x in picks(), i in 0usize..1000, j in 0usize..1000) {
        let g = Arc::new(g);
        let alg = GraphAlgebra::leavitt(g.clone());
        let paths = g.paths_up_to(2);
        let (a, b) = (&paths[i % paths.len()], &paths[j % paths.len()]);
        if let Some(ba) = b.concat(a) {
            let monos = alg.monomials_up_to(2);
            let xe = random_element(&alg, &monos, &x);
            let (ae, be) = (GAElement::real_path(&alg, a.clone()), GAElement::real_path(&alg, b.clone()));
            let lhs = GAElement::t_operator(&ae, &GAElement::t_operator(&be, &xe).unwrap()).unwrap();
            let rhs = GAElement::t_operator(&GAElement::real_path(&alg, ba), &xe).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_vectors_are_central_symmetric_and_diagonal(g in graphs(3, 4)) {
        let g = Arc::new(g);
        let alg = GraphAlgebra::leavitt(g.clone());
        let z = central_subspace::<GraphAlgebra, Q>(&alg, OracleWindow::new(2)).unwrap();
        let on_closed_paths: BTreeSet<VertexId> =
            g.find_cycles().iter().flat_map(|c| c.vertex_set(&g)).collect();
        for x in &z.basis {
            prop_assert!(check_central(x));
            prop_assert!(x.is_peirce_diagonal());
            if x.degree() == Degree::Zero || x.degree() == Degree::Homogeneous(0) {
                prop_assert!(x.is_symmetric());
            }
        }
        // degree-zero central elements are scalar on the corner of any vertex
        // carrying a closed path
        let degree_zero = central_subspace::<GraphAlgebra, Q>(&alg, OracleWindow::degree(2, 0).unwrap()).unwrap();
        for x in &degree_zero.basis {
            prop_assert!(x.is_symmetric());
            for &u in &on_closed_paths {
                let corner = x.peirce_component(u, u).unwrap();
                let scalar = corner.coefficient(&GMonomial::vertex(u));
                prop_assert_eq!(corner, GAElement::vertex(&alg, u).scale(&scalar));
            }
        }
    }

    #[test]
    fn oracle_windows_are_monotone(g in graphs(3, 4)) {
        let alg = GraphAlgebra::leavitt(Arc::new(g));
        let small = central_subspace::<GraphAlgebra, Q>(&alg, OracleWindow::new(1)).unwrap();
        let large = central_subspace::<GraphAlgebra, Q>(&alg, OracleWindow::new(2)).unwrap();
        prop_assert!(small.basis.iter().all(|x| in_span(&large.basis, x)));
    }

    #[test]
    fn vertex_span_meets_center_in_scalars(g in graphs(4, 5)) {
        prop_assume!(g.connected_components().len() == 1);
        let alg = PathAlgebra::new(Arc::new(g));
        let z = central_subspace::<PathAlgebra, Q>(&alg, OracleWindow::new(0)).unwrap();
        prop_assert_eq!(z.dimension(), 1);
        prop_assert!(in_span(&z.basis, &KEElement::one(&alg)));
    }

    #[test]
    fn structural_generators_are_central(g in graphs(3, 4)) {
        let g = Arc::new(g);
        let ke = PathAlgebra::new(g.clone());
        for x in center_structure_ke::<Q>(&ke).elements() {
            prop_assert!(check_central(&x));
        }
        if is_prime_leavitt(&g) {
            let alg = GraphAlgebra::leavitt(g.clone());
            let c = center_prime_leavitt::<Q>(&alg).unwrap();
            for x in c.structure.elements() {
                prop_assert!(check_central(&x));
            }
            let window = OracleWindow::new(2);
            let z = central_subspace::<GraphAlgebra, Q>(&alg, window).unwrap();
            let predicted = c.structure.truncation(&window);
            prop_assert!(z.basis.iter().all(|x| in_span(&predicted, x)));
        }
    }
}
