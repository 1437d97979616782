use proptest::prelude::*;

use building_core::coxeter::CoxeterMatrix;
use building_core::graph::{GraphEdge, GraphPoint, MetricGraph};
use building_core::recognize::{recognize, recognize_dim1, BoundaryPolicy, Verdict};
use building_core::report::CheckReport;
use building_core::{corpus, Angle, Budgets, MetricComplex};

const DENOMS: [i64; 4] = [2, 3, 4, 6];

/// Connected simple graph: a random spanning tree plus extra edges.
fn graphs() -> impl Strategy<Value = MetricGraph> {
    (2usize..9)
        .prop_flat_map(|n| {
            let tree = proptest::collection::vec((any::<prop::sample::Index>(), 0usize..4), n - 1);
            let extra = proptest::collection::vec((0..n, 0..n, 0usize..4), 0..8);
            (Just(n), tree, extra)
        })
        .prop_map(|(n, tree, extra)| {
            let mut edges = vec![];
            let mut seen = std::collections::BTreeSet::new();
            for (v, (parent, d)) in (1..n).zip(tree) {
                let u = parent.index(v);
                seen.insert((u, v));
                edges.push(GraphEdge { a: u, b: v, len: Angle::pi_frac(1, DENOMS[d]) });
            }
            for (a, b, d) in extra {
                if a != b && seen.insert((a.min(b), a.max(b))) {
                    edges.push(GraphEdge { a: a.min(b), b: a.max(b), len: Angle::pi_frac(1, DENOMS[d]) });
                }
            }
            MetricGraph::new((0..n).map(|i| format!("v{i}")).collect(), edges).unwrap()
        })
}

fn point(g: &MetricGraph, e: prop::sample::Index, t: f64) -> GraphPoint {
    let e = e.index(g.edge_count());
    let len = g.edge(e).len;
    g.point(e, Angle::Approx(len.radians() * t)).unwrap()
}

/// Splits edge `e` at its midpoint with a new vertex.
fn subdivide(g: &MetricGraph, e: usize) -> MetricGraph {
    let mut names = g.names().to_vec();
    let mid = names.len();
    names.push("mid".into());
    let mut edges: Vec<GraphEdge> = g.edges().to_vec();
    let old = edges.remove(e);
    let half = old.len.half();
    edges.push(GraphEdge { a: old.a, b: mid, len: half });
    edges.push(GraphEdge { a: mid, b: old.b, len: half });
    MetricGraph::new(names, edges).unwrap()
}

/// Renames vertices by a permutation.
fn relabel(g: &MetricGraph, perm: &[usize]) -> MetricGraph {
    let mut names = vec![String::new(); g.vertex_count()];
    for (v, &p) in perm.iter().enumerate() {
        names[p] = format!("w{v}");
    }
    let edges = g.edges().iter().map(|e| GraphEdge { a: perm[e.a], b: perm[e.b], len: e.len }).collect();
    MetricGraph::new(names, edges).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn angle_text_round_trip(p in -40i64..40, q in 1i64..24) {
        let a = Angle::pi_frac(p, q);
        let back: Angle = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
        prop_assert!(back.is_exact());
    }

    #[test]
    fn angle_json_round_trip(p in -40i64..40, q in 1i64..24, x in -10.0f64..10.0) {
        for a in [Angle::pi_frac(p, q), Angle::Approx(x)] {
            let back: Angle = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
            prop_assert_eq!(back, a);
            prop_assert_eq!(back.is_exact(), a.is_exact());
        }
    }

    #[test]
    fn exact_arithmetic_matches_floats(a in -20i64..20, b in 1i64..12, c in -20i64..20, d in 1i64..12) {
        let (x, y) = (Angle::pi_frac(a, b), Angle::pi_frac(c, d));
        prop_assert!(((x + y).radians() - (x.radians() + y.radians())).abs() < 1e-12);
        prop_assert!(((x - y).radians() - (x.radians() - y.radians())).abs() < 1e-12);
        prop_assert_eq!(x < y, x.radians() < y.radians() - 1e-12);
    }

    #[test]
    fn metric_axioms(g in graphs(),
                     pts in proptest::collection::vec((any::<prop::sample::Index>(), 0.0f64..1.0), 3)) {
        let p: Vec<GraphPoint> = pts.into_iter().map(|(e, t)| point(&g, e, t)).collect();
        let d = |a: &GraphPoint, b: &GraphPoint| g.distance(a, b).unwrap().radians();
        prop_assert!(d(&p[0], &p[0]).abs() < 1e-12);
        prop_assert!((d(&p[0], &p[1]) - d(&p[1], &p[0])).abs() < 1e-12);
        prop_assert!(d(&p[0], &p[2]) <= d(&p[0], &p[1]) + d(&p[1], &p[2]) + 1e-9);
        let diam = g.diameter().unwrap().value.radians();
        prop_assert!(d(&p[0], &p[1]) <= diam + 1e-9);
    }

    #[test]
    fn diameter_witness_realizes_value(g in graphs()) {
        let d = g.diameter().unwrap();
        let (p, q) = d.witness;
        prop_assert!((g.distance(&p, &q).unwrap().radians() - d.value.radians()).abs() < 1e-9);
    }

    #[test]
    fn systole_cycle_is_closed(g in graphs()) {
        let s = g.systole();
        if let Some(len) = s.length {
            let total: Angle = s.cycle_edges.iter().map(|&e| g.edge(e).len).sum();
            prop_assert_eq!(total, len);
            prop_assert!(s.cycle_vertices.len() >= 3);
        } else {
            prop_assert_eq!(g.edge_count(), g.vertex_count() - 1);
        }
    }

    #[test]
    fn invariants_survive_subdivision(g in graphs(), e in any::<prop::sample::Index>()) {
        let h = subdivide(&g, e.index(g.edge_count()));
        prop_assert_eq!(h.diameter().unwrap().value, g.diameter().unwrap().value);
        prop_assert_eq!(h.systole().length, g.systole().length);
    }

    #[test]
    fn invariants_survive_relabeling(g in graphs(), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left((seed as usize) % n);
        if seed % 2 == 1 {
            perm.reverse();
        }
        let h = relabel(&g, &perm);
        prop_assert_eq!(h.diameter().unwrap().value, g.diameter().unwrap().value);
        prop_assert_eq!(h.systole().length, g.systole().length);
        let a = recognize_dim1(&g, &Budgets::default()).map(|c| c.verdict).map_err(|d| d.condition);
        let b = recognize_dim1(&h, &Budgets::default()).map(|c| c.verdict).map_err(|d| d.condition);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn complex_json_round_trip(g in graphs()) {
        let c = g.to_complex().unwrap();
        let json = c.to_json();
        let back = MetricComplex::from_json(&json).unwrap();
        prop_assert_eq!(back.to_json(), json);
        prop_assert!(back.is_isometric_by_names(&c));
    }

    #[test]
    fn recognition_is_deterministic(g in graphs()) {
        let c = g.to_complex().unwrap();
        let run = || CheckReport::new(&recognize(&c, BoundaryPolicy::Window, &Budgets::default()).unwrap()).to_json();
        prop_assert_eq!(run(), run());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn heawood_relabeled_and_subdivided(perm in permutation(14), e in 0usize..21) {
        let g = MetricGraph::from_complex(&corpus::named("heawood").unwrap()).unwrap();
        let h = subdivide(&relabel(&g, &perm), e);
        let cert = recognize_dim1(&h, &Budgets::default()).unwrap();
        prop_assert_eq!(cert.verdict, Verdict::ThickBuilding);
        prop_assert_eq!(cert.dihedral_m, Some(3));
        prop_assert_eq!(cert.apartments.count, 28);
    }

    #[test]
    fn coxeter_classification_ignores_generator_order(name in prop::sample::select(vec!["A3", "B3", "H3", "A1xA2", "~A2", "~C2"]),
                                                      seed in any::<u64>()) {
        let m = CoxeterMatrix::named(name).unwrap();
        let n = m.rank();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left((seed as usize) % n);
        let p = m.permuted(&perm);
        let (a, b) = (m.classify(), p.classify());
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.group_order, b.group_order);
        prop_assert!((a.determinant - b.determinant).abs() < 1e-9);
        prop_assert!(m.isomorphic(&p));
    }

    #[test]
    fn budgets_json_round_trip(apartments in 1usize..1_000_000, seed in any::<u64>(), eps in 1e-9f64..1e-3) {
        let b = Budgets { apartments, seed, eps_hit: eps, ..Budgets::default() };
        prop_assert_eq!(Budgets::from_json(&serde_json::to_string(&b).unwrap()).unwrap(), b);
    }
}
