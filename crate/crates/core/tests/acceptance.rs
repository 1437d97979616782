//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! The process fails when the set of failing criteria differs from
//! `KNOWN_FAILURES`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use building_core::corpus::{self, NegativeKind, Rank2Kind};
use building_core::coxeter::{CoxeterMatrix, FormType};
use building_core::decompose::join_decompose;
use building_core::geodesic::{propagate_apartment, GeodesicLab};
use building_core::graph::{GraphEdge, GraphPoint, MetricGraph};
use building_core::recognize::{
    check_spherical, discrete_extension_check, recognize, recognize_dim1, BoundaryPolicy, Condition, Verdict,
    Witness,
};
use building_core::report::CheckReport;
use building_core::{Angle, Budgets, MetricComplex};

/// Criteria expected to fail; see the decisions ledger.
const KNOWN_FAILURES: &[usize] = &[5];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, format!("took {e:.2?}, limit {limit:?}"))?;
    Ok(e)
}

/// Number of cycles with exactly `len` edges, by plain DFS over simple
/// paths from each minimal start vertex.
fn count_cycles(g: &MetricGraph, len: usize) -> usize {
    fn dfs(g: &MetricGraph, s: usize, v: usize, depth: usize, len: usize, seen: &mut Vec<bool>) -> usize {
        let mut n = 0;
        for &(_, w) in g.incident(v) {
            if w == s && depth == len - 1 && len > 2 {
                n += 1;
            } else if w > s && !seen[w] && depth < len - 1 {
                seen[w] = true;
                n += dfs(g, s, w, depth + 1, len, seen);
                seen[w] = false;
            }
        }
        n
    }
    let mut total = 0;
    for s in 0..g.vertex_count() {
        let mut seen = vec![false; g.vertex_count()];
        seen[s] = true;
        total += dfs(g, s, s, 0, len, &mut seen);
    }
    total / 2
}

fn rank2(kind: Rank2Kind, m: i64) -> MetricGraph {
    corpus::rank2_building(kind, Angle::pi_frac(1, m)).expect("generator")
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let g = rank2(Rank2Kind::ProjectivePlane { q: 2 }, 3);
    let cert = recognize_dim1(&g, &Budgets::default()).map_err(|d| format!("diagnosed {:?}", d.condition))?;
    let diam = g.diameter().expect("connected").value;
    let sys = g.systole().length.expect("has cycles");
    let hexagons = count_cycles(&g, 6);
    let axioms = cert.axioms.clone().expect("axioms");
    let e = within(t, Duration::from_secs(2))?;
    ensure(cert.verdict == Verdict::ThickBuilding, format!("verdict {:?}", cert.verdict))?;
    ensure(cert.dihedral_m == Some(3), "m != 3")?;
    ensure(diam == Angle::PI && diam.is_exact(), format!("diameter {diam}"))?;
    ensure(sys == Angle::TWO_PI && sys.is_exact(), format!("systole {sys}"))?;
    ensure(cert.apartments.count == 28 && hexagons == 28, format!("{} apartments, {hexagons} hexagons", cert.apartments.count))?;
    ensure(axioms.axiom2 && !axioms.sampled, "axiom 2 not verified exhaustively")?;
    Ok(format!("thick m=3, diameter {diam}, systole {sys}, 28 apartments = 28 hexagons, {e:.2?}"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let g = rank2(Rank2Kind::CompleteBipartite { s: 3, t: 3 }, 2);
    let c = g.to_complex().map_err(|e| e.to_string())?;
    let b = Budgets::default();
    let cert = recognize(&c, BoundaryPolicy::Window, &b).map_err(|e| e.to_string())?.map_err(|d| format!("{d:?}"))?;
    let factors = join_decompose(&c, &cert, &b).map_err(|e| e.to_string())?;
    let rejoined = factors[0].complex.join(&factors[1].complex).map_err(|e| e.to_string())?;
    let e = within(t, Duration::from_secs(1))?;
    ensure(cert.verdict == Verdict::ThickBuilding && cert.dihedral_m == Some(2), "not a thick m=2 building")?;
    ensure(factors.len() == 2 && factors.iter().all(|f| f.vertices.len() == 3), "factors are not two triples")?;
    ensure(cert.apartments.count == 9, format!("{} apartments", cert.apartments.count))?;
    ensure(rejoined.is_isometric_by_names(&c), "reassembly is not isometric")?;
    Ok(format!("thick m=2, factors 3+3, 9 apartments, reassembly isometric, {e:.2?}"))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let g = rank2(Rank2Kind::GeneralizedQuadrangle { q: 2 }, 4);
    let cert = recognize_dim1(&g, &Budgets::default()).map_err(|d| format!("diagnosed {:?}", d.condition))?;
    let diam = g.diameter().expect("connected").value;
    let sys = g.systole().length.expect("has cycles");
    let octagons = count_cycles(&g, 8);
    let e = within(t, Duration::from_secs(5))?;
    ensure(cert.verdict == Verdict::ThickBuilding && cert.dihedral_m == Some(4), "not a thick m=4 building")?;
    ensure(sys == Angle::TWO_PI, format!("systole {sys}"))?;
    ensure(diam == Angle::PI, format!("diameter {diam}"))?;
    ensure(
        cert.apartments.exhaustive && cert.apartments.count == octagons,
        format!("{} apartments vs {octagons} octagons", cert.apartments.count),
    )?;
    Ok(format!("thick m=4, systole 2pi, diameter pi, {octagons} apartments = {octagons} octagons, {e:.2?}"))
}

fn criterion_4() -> Outcome {
    let g = MetricGraph::from_named_edges(&[("n", "s", Angle::PI), ("n", "s", Angle::PI), ("n", "s", Angle::PI)])
        .map_err(|e| e.to_string())?;
    let cert = recognize_dim1(&g, &Budgets::default()).map_err(|d| format!("{d:?}"))?;
    let sub = recognize(&corpus::theta(3).map_err(|e| e.to_string())?, BoundaryPolicy::Window, &Budgets::default())
        .map_err(|e| e.to_string())?
        .map_err(|d| format!("{d:?}"))?;
    for c in [&cert, &sub] {
        ensure(c.verdict == Verdict::Suspension, format!("verdict {:?}", c.verdict))?;
        ensure(c.suspension.as_ref().is_some_and(|s| s.base.len() == 3), "|Y| != 3")?;
    }
    Ok("suspension with |Y| = 3 (multigraph and subdivided)".into())
}

fn criterion_5() -> Outcome {
    let b = Budgets::default();
    let diagnose = |k: NegativeKind| {
        let c = corpus::negative(k).expect("generator");
        recognize(&c, BoundaryPolicy::Window, &b).expect("valid input").expect_err("must be diagnosed")
    };
    let p = diagnose(NegativeKind::Petersen);
    ensure(p.condition == Condition::Systole, format!("petersen: {:?}", p.condition))?;
    let Witness::Cycle { vertices, length } = &p.witness else { return Err("petersen: no cycle witness".into()) };
    ensure(
        vertices.len() == 5 && (length.radians() - 5.0 * std::f64::consts::PI / 3.0).abs() <= 1e-9,
        format!("petersen witness {} vertices, length {length}", vertices.len()),
    )?;
    let o = diagnose(NegativeKind::PuncturedOctahedron);
    ensure(o.condition == Condition::Codim1CellCount, format!("punctured octahedron: {:?}", o.condition))?;
    let k = diagnose(NegativeKind::K4);
    ensure(k.condition == Condition::Diameter, format!("k4: {:?}", k.condition))?;
    let Witness::PointPair { distance, .. } = k.witness else { return Err("k4: no point-pair witness".into()) };
    ensure(
        distance < Angle::PI,
        format!("petersen systole 5pi/3 and octahedron codim1 ok; k4 diameter diagnosed but witness is {distance}, not < pi"),
    )?;
    Ok(format!("petersen 5pi/3 cycle, k4 diameter {distance}, punctured octahedron codim1"))
}

fn criterion_6() -> Outcome {
    let c = corpus::octahedron();
    let b = Budgets::default();
    let cert = check_spherical(&c, &b).map_err(|e| e.to_string())?.map_err(|d| format!("{d:?}"))?;
    let factors = join_decompose(&c, &cert, &b).map_err(|e| e.to_string())?;
    let dep = discrete_extension_check(&c).map_err(|e| e.to_string())?;
    ensure(cert.verdict == Verdict::ThinBuilding, format!("verdict {:?}", cert.verdict))?;
    ensure(factors.len() == 3 && factors.iter().all(|f| f.vertices.len() == 2), "not three S0 factors")?;
    ensure(cert.apartments.count == 1, format!("{} apartments", cert.apartments.count))?;
    ensure(cert.thickness == Some(2), format!("thickness {:?}", cert.thickness))?;
    ensure(dep.holds, "discrete extension fails")?;
    Ok(format!("thin, 3 S0 factors, 1 apartment, thickness 2, extension holds ({} directions)", dep.directions_checked))
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let b = Budgets::default();
    let heawood = rank2(Rank2Kind::ProjectivePlane { q: 2 }, 3);
    let c = corpus::suspension_of(&heawood).map_err(|e| e.to_string())?;
    let cert = check_spherical(&c, &b).map_err(|e| e.to_string())?.map_err(|d| format!("{d:?}"))?;
    ensure(cert.dimension == 2, "certificate is not 2-dimensional")?;
    let lab = GeodesicLab::new(&c).map_err(|e| e.to_string())?;
    let lk = lab.link("N").map_err(|e| e.to_string())?.expect("surface").clone();
    let (hexagons, _) = building_core::recognize::enumerate_apartments_dim1(&lk, 3, &b);
    ensure(hexagons.count == 28, format!("{} link hexagons", hexagons.count))?;
    let mut spheres = BTreeSet::new();
    for ap in &hexagons.list {
        let cycle: Vec<String> = ap.vertices.iter().map(|&v| lk.name(v).to_string()).collect();
        let a = propagate_apartment(&lab, "N", &cycle, "S", &b)
            .map_err(|e| e.to_string())?
            .map_err(|f| format!("{f:?}"))?;
        ensure(a.verified && a.euler == 2, format!("hexagon {cycle:?}: {:?}", a.issues))?;
        spheres.insert(a.cells);
    }
    let e = within(t, Duration::from_secs(30))?;
    ensure(spheres.len() == 28, format!("{} distinct spheres", spheres.len()))?;
    Ok(format!("28 hexagons give 28 distinct verified 2-spheres, {e:.2?}"))
}

fn criterion_8() -> Outcome {
    let a2 = CoxeterMatrix::named("A2").map_err(|e| e.to_string())?.classify();
    let mut ev = a2.eigenvalues.clone();
    ev.sort_by(f64::total_cmp);
    ensure(a2.verdict == FormType::Spherical, "A2 not spherical")?;
    ensure((ev[0] - 0.5).abs() <= 1e-9 && (ev[1] - 1.5).abs() <= 1e-9, format!("A2 eigenvalues {ev:?}"))?;
    let at2 = CoxeterMatrix::named("~A2").map_err(|e| e.to_string())?.classify();
    ensure(at2.verdict == FormType::Euclidean && at2.determinant.abs() <= 1e-9, format!("~A2 det {}", at2.determinant))?;
    let a3 = corpus::coxeter_complex("A3").map_err(|e| e.to_string())?;
    ensure(a3.top_cells().len() == 24, format!("A3 has {} chambers", a3.top_cells().len()))?;
    let cert = check_spherical(&a3, &Budgets::default()).map_err(|e| e.to_string())?.map_err(|d| format!("{d:?}"))?;
    ensure(cert.verdict == Verdict::ThinBuilding, format!("A3 verdict {:?}", cert.verdict))?;
    Ok(format!("A2 eigenvalues {:.3}, {:.3}; ~A2 |det| {:.1e}; A3 24 chambers, thin", ev[0], ev[1], at2.determinant.abs()))
}

fn criterion_9() -> Outcome {
    let b = Budgets::default();
    let w = corpus::euclidean_window("~A2", 3).map_err(|e| e.to_string())?;
    let boundary = w.boundary_vertices();
    let mut interior = 0;
    for v in 0..w.vertex_count() {
        if boundary.contains(&v) {
            continue;
        }
        interior += 1;
        let lk = MetricGraph::from_complex(&w.vertex_link(w.name(v)).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let cert = recognize_dim1(&lk, &b).map_err(|d| format!("link of {}: {:?}", w.name(v), d.condition))?;
        ensure(
            cert.verdict == Verdict::ThinBuilding && cert.dihedral_m == Some(3) && lk.vertex_count() == 6,
            format!("link of {} is not C6(pi/3)", w.name(v)),
        )?;
    }
    let cert = recognize(&w, BoundaryPolicy::Window, &b).map_err(|e| e.to_string())?.map_err(|d| format!("{d:?}"))?;
    ensure(cert.verdict == Verdict::MetricEuclideanBuildingLocal, format!("verdict {:?}", cert.verdict))?;

    let p = corpus::perturbed_window("~A2", 3, 0.01).map_err(|e| e.to_string())?;
    let d = recognize(&p, BoundaryPolicy::Window, &b).map_err(|e| e.to_string())?.expect_err("must fail");
    ensure(d.condition == Condition::LinkFailure, format!("perturbed: {:?}", d.condition))?;
    let at = d.cell.clone().unwrap_or_default();
    let o = w.vertex("s0@e").expect("base vertex");
    let nb = w.neighbors(o)[0];
    let v = w.vertex(&at[0]).ok_or("failing cell is not a vertex")?;
    let touched = v == o || v == nb || (w.neighbors(o).contains(&v) && w.neighbors(nb).contains(&v));
    ensure(touched && !boundary.contains(&v), format!("link failure at {at:?}, away from the perturbed edge"))?;
    Ok(format!("{interior} interior links C6(pi/3), local verdict; 1% perturbation -> link_failure at {}", at[0]))
}

fn random_graph(rng: &mut ChaCha8Rng) -> MetricGraph {
    let lens = [Angle::pi_frac(1, 4), Angle::pi_frac(1, 3), Angle::pi_frac(1, 2)];
    let n = rng.gen_range(2..=10);
    let mut edges = vec![];
    let mut have = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        have.insert((u, v));
        edges.push(GraphEdge { a: u, b: v, len: lens[rng.gen_range(0..3)] });
    }
    let target = rng.gen_range(edges.len()..=14.min(n * (n - 1) / 2));
    while edges.len() < target {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let key = (a.min(b), a.max(b));
        if a != b && have.insert(key) {
            edges.push(GraphEdge { a: key.0, b: key.1, len: lens[rng.gen_range(0..3)] });
        }
    }
    MetricGraph::new((0..n).map(|i| format!("v{i}")).collect(), edges).expect("random graph")
}

/// Ternary search for the maximum of a concave function on `[lo, hi]`.
fn ternary(lo: f64, hi: f64, f: &dyn Fn(f64) -> f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    for _ in 0..80 {
        let (m1, m2) = (a + (b - a) / 3.0, b - (b - a) / 3.0);
        if f(m1) < f(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    f((a + b) / 2.0)
}

/// Sampling oracle for the diameter: sup of point distances over a grid
/// on every edge pair, polished by nested ternary search (distance is
/// concave on each edge-pair rectangle, and on each half of a single edge).
fn oracle_diameter(g: &MetricGraph) -> f64 {
    let dist = g.vertex_distances();
    let d = |u: usize, v: usize| dist[u][v].expect("connected").radians();
    let es = g.edges();
    let pair = |i: usize, j: usize, x: f64, y: f64| -> f64 {
        let (e, f) = (&es[i], &es[j]);
        let (le, lf) = (e.len.radians(), f.len.radians());
        if i == j {
            let (x, y) = (x.min(y), x.max(y));
            let around = d(e.a, e.b);
            return (y - x).min(x + around + le - y);
        }
        let ends = [(e.a, x), (e.b, le - x)];
        let fends = [(f.a, y), (f.b, lf - y)];
        let mut best = f64::INFINITY;
        for (u, du) in ends {
            for (w, dw) in fends {
                best = best.min(du + d(u, w) + dw);
            }
        }
        best
    };
    let mut best = 0.0f64;
    for v in 0..g.vertex_count() {
        for w in 0..g.vertex_count() {
            best = best.max(d(v, w));
        }
    }
    const GRID: usize = 16;
    for i in 0..es.len() {
        for j in i..es.len() {
            let (le, lf) = (es[i].len.radians(), es[j].len.radians());
            for a in 0..=GRID {
                for b in 0..=GRID {
                    best = best.max(pair(i, j, le * a as f64 / GRID as f64, lf * b as f64 / GRID as f64));
                }
            }
            let refined = if i == j {
                ternary(0.0, le, &|x| ternary(x, le, &|y| pair(i, j, x, y)))
            } else {
                ternary(0.0, le, &|x| ternary(0.0, lf, &|y| pair(i, j, x, y)))
            };
            best = best.max(refined);
        }
    }
    best
}

/// Shortest injective cycle by exhaustive DFS over simple cycles.
fn oracle_systole(g: &MetricGraph) -> Option<Angle> {
    fn dfs(g: &MetricGraph, s: usize, v: usize, acc: Angle, used_edge: usize, seen: &mut Vec<bool>, best: &mut Option<Angle>) {
        for &(e, w) in g.incident(v) {
            if e == used_edge {
                continue;
            }
            let len = acc + g.edge(e).len;
            if w == s {
                if best.is_none_or(|b| len < b) {
                    *best = Some(len);
                }
            } else if w > s && !seen[w] {
                seen[w] = true;
                dfs(g, s, w, len, e, seen, best);
                seen[w] = false;
            }
        }
    }
    let mut best = None;
    for s in 0..g.vertex_count() {
        let mut seen = vec![false; g.vertex_count()];
        seen[s] = true;
        dfs(g, s, s, Angle::ZERO, usize::MAX, &mut seen, &mut best);
    }
    best
}

fn random_point(g: &MetricGraph, rng: &mut ChaCha8Rng) -> GraphPoint {
    let e = rng.gen_range(0..g.edge_count());
    let t: f64 = rng.gen();
    g.point(e, Angle::Approx(g.edge(e).len.radians() * t)).expect("inside edge")
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst_diam = 0.0f64;
    for k in 0..200 {
        let g = random_graph(&mut rng);
        let fast = g.diameter().expect("connected").value.radians();
        let slow = oracle_diameter(&g);
        worst_diam = worst_diam.max((fast - slow).abs());
        ensure((fast - slow).abs() <= 1e-6, format!("graph {k}: diameter {fast} vs oracle {slow}"))?;
        let sys = g.systole().length;
        let oracle = oracle_systole(&g);
        ensure(sys == oracle, format!("graph {k}: systole {sys:?} vs oracle {oracle:?}"))?;
    }
    let mut worst_tri = 0.0f64;
    let mut triples = 0;
    while triples < 10_000 {
        let g = random_graph(&mut rng);
        for _ in 0..100 {
            let (p, q, r) = (random_point(&g, &mut rng), random_point(&g, &mut rng), random_point(&g, &mut rng));
            let d = |a: &GraphPoint, b: &GraphPoint| g.distance(a, b).expect("connected").radians();
            let slack = d(&p, &r) - d(&p, &q) - d(&q, &r);
            worst_tri = worst_tri.max(slack);
            ensure(slack <= 1e-9, format!("triangle inequality violated by {slack}"))?;
            triples += 1;
        }
    }
    Ok(format!("200 graphs: max diameter gap {worst_diam:.1e}, systoles exact; 10^4 triples, max slack {worst_tri:.1e}"))
}

fn criterion_11() -> Outcome {
    let b = Budgets::default();
    let mut n = 0;
    let complexes: Vec<(String, Box<dyn Fn() -> MetricComplex>)> = {
        let mut v: Vec<(String, Box<dyn Fn() -> MetricComplex>)> = vec![];
        for name in corpus::NAMED {
            v.push((name.to_string(), Box::new(move || corpus::named(name).expect("generator"))));
        }
        v.push(("A3".into(), Box::new(|| corpus::coxeter_complex("A3").expect("A3"))));
        v.push(("B3".into(), Box::new(|| corpus::coxeter_complex("B3").expect("B3"))));
        v.push(("~A2 window".into(), Box::new(|| corpus::euclidean_window("~A2", 3).expect("window"))));
        v
    };
    for (name, make) in &complexes {
        let (a, c) = (make(), make());
        ensure(a.to_json() == c.to_json(), format!("{name}: generator output differs"))?;
        let report = |x: &MetricComplex| {
            CheckReport::new(&recognize(x, BoundaryPolicy::Window, &b).expect("valid")).to_json()
        };
        ensure(report(&a) == report(&c), format!("{name}: check report differs"))?;
        n += 1;
    }
    Ok(format!("{n} generators and their check reports byte-identical across two runs"))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = BTreeSet::new();
    for (id, f) in criteria {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!("criterion {id:>2}: PASS  {detail}"),
            Err(detail) => {
                println!("criterion {id:>2}: FAIL  {detail}");
                failed.insert(id);
            }
        }
    }
    let known: BTreeSet<usize> = KNOWN_FAILURES.iter().copied().collect();
    if failed != known {
        println!("unexpected acceptance result: failing {failed:?}, known {known:?}");
        std::process::exit(1);
    }
    println!("acceptance: {} passed, {} known failure(s)", 11 - failed.len(), failed.len());
}
