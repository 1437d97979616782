//! Frozen reference values for the generated corpus and the Coxeter engine.

use building_core::coxeter::{CoxeterMatrix, FormType};
use building_core::graph::MetricGraph;
use building_core::recognize::{outcome, recognize, BoundaryPolicy, Outcome};
use building_core::report::CheckReport;
use building_core::{corpus, Angle, Budgets};

fn graph(name: &str) -> MetricGraph {
    MetricGraph::from_complex(&corpus::named(name).unwrap()).unwrap()
}

fn report(name: &str) -> serde_json::Value {
    let c = corpus::named(name).unwrap();
    let r = recognize(&c, BoundaryPolicy::Window, &Budgets::default()).unwrap();
    serde_json::from_str(&CheckReport::new(&r).to_json()).unwrap()
}

#[test]
fn graph_invariants() {
    let table = [
        ("heawood", Angle::PI, Some(Angle::TWO_PI)),
        ("tutte-coxeter", Angle::PI, Some(Angle::TWO_PI)),
        ("k33", Angle::PI, Some(Angle::TWO_PI)),
        ("petersen", Angle::PI, Some(Angle::pi_frac(5, 3))),
        ("k4", Angle::pi_frac(4, 3), Some(Angle::TWO_PI)),
    ];
    for (name, diam, sys) in table {
        let g = graph(name);
        let d = g.diameter().unwrap().value;
        assert_eq!(d, diam, "{name} diameter");
        assert!(d.is_exact(), "{name}");
        assert_eq!(g.systole().length, sys, "{name} systole");
    }
}

#[test]
fn odd_cycle_diameter() {
    let h = Angle::HALF_PI;
    let g = MetricGraph::from_named_edges(&[("a", "b", h), ("b", "c", h), ("c", "d", h), ("d", "e", h), ("e", "a", h)])
        .unwrap();
    assert_eq!(g.diameter().unwrap().value, Angle::pi_frac(5, 4));
}

#[test]
fn coxeter_table() {
    let table: &[(&str, f64, Option<u64>)] = &[
        ("A1", 1.0, Some(2)),
        ("A2", 0.75, Some(6)),
        ("A3", 0.5, Some(24)),
        ("A4", 0.3125, Some(120)),
        ("B2", 0.5, Some(8)),
        ("B3", 0.25, Some(48)),
        ("G2", 0.25, Some(12)),
        ("H3", 0.095492, Some(120)),
        ("D4", 0.25, Some(192)),
        ("F4", 0.0625, Some(1152)),
        ("H4", 0.009119, Some(14400)),
        ("I2(5)", 0.345492, Some(10)),
        ("A1xA1xA1", 1.0, Some(8)),
    ];
    for &(name, det, order) in table {
        let c = CoxeterMatrix::named(name).unwrap().classify();
        assert_eq!(c.verdict, FormType::Spherical, "{name}");
        assert!((c.determinant - det).abs() < 1e-6, "{name}: {}", c.determinant);
        assert_eq!(c.group_order, order, "{name}");
    }
    for name in ["~A1", "~A2", "~C2", "~G2", "~B3"] {
        let c = CoxeterMatrix::named(name).unwrap().classify();
        assert_eq!(c.verdict, FormType::Euclidean, "{name}");
        assert!(c.determinant.abs() < 1e-9, "{name}");
        assert_eq!(c.group_order, None);
    }
}

#[test]
fn coxeter_complexes() {
    for (name, chambers, vertices) in [("A3", 24, 14), ("B3", 48, 26), ("H3", 120, 62)] {
        let c = corpus::coxeter_complex(name).unwrap();
        assert_eq!(c.top_cells().len(), chambers, "{name}");
        assert_eq!(c.vertex_count(), vertices, "{name}");
        assert_eq!(c.euler_characteristic(), 2, "{name}");
    }
}

#[test]
fn window_sizes() {
    for (r, cells, vertices) in [(1, 4, 6), (2, 10, 12), (3, 19, 18)] {
        let w = corpus::euclidean_window("~A2", r).unwrap();
        assert_eq!((w.top_cells().len(), w.vertex_count()), (cells, vertices), "radius {r}");
    }
}

#[test]
fn certified_reports() {
    let table = [
        ("octahedron", "thin_building", "A1xA1xA1", 2, 1),
        ("theta", "suspension", "A1xA1", 2, 3),
        ("heawood", "thick_building", "A2", 3, 28),
        ("tutte-coxeter", "thick_building", "B2", 3, 90),
        ("k33", "thick_building", "A1xA1", 3, 9),
        ("suspended-heawood", "suspension", "A1xA2", 2, 28),
    ];
    for (name, verdict, coxeter, thickness, apartments) in table {
        let v = report(name);
        assert_eq!(v["outcome"], "certified", "{name}");
        assert_eq!(v["verdict"], verdict, "{name}");
        assert_eq!(v["coxeter"], coxeter, "{name}");
        assert_eq!(v["thickness"], thickness, "{name}");
        assert_eq!(v["apartments"]["count"], apartments, "{name}");
        assert_eq!(v["apartments"]["exhaustive"], true, "{name}");
    }
}

#[test]
fn diagnosed_reports() {
    let petersen = report("petersen");
    assert_eq!(petersen["diagnosis"]["witness"]["length"]["pi"], serde_json::json!([5, 3]));
    assert_eq!(petersen["diagnosis"]["witness"]["vertices"].as_array().unwrap().len(), 5);

    let k4 = report("k4");
    assert_eq!(k4["diagnosis"]["condition"], "diameter");
    assert_eq!(k4["diagnosis"]["witness"]["distance"]["pi"], serde_json::json!([4, 3]));

    let lune = report("short-lune");
    assert_eq!(lune["diagnosis"]["condition"], "link_failure");
    assert_eq!(lune["diagnosis"]["inner"]["witness"]["length"]["pi"], serde_json::json!([3, 2]));

    let punctured = report("punctured-octahedron");
    assert_eq!(punctured["diagnosis"]["condition"], "codim1_cell_count");
    assert_eq!(punctured["diagnosis"]["witness"]["cofaces"], 1);

    let window = report("perturbed-a2-window");
    assert_eq!(window["diagnosis"]["cell"], serde_json::json!(["s0@e"]));
    assert_eq!(window["diagnosis"]["inner"]["condition"], "systole");
}

#[test]
fn negatives_are_never_certified() {
    for k in corpus::NegativeKind::ALL {
        let c = corpus::negative(k).unwrap();
        let r = recognize(&c, BoundaryPolicy::Window, &Budgets::default()).unwrap();
        assert_eq!(outcome(&r), Outcome::Diagnosed, "{k}");
    }
}
