use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::apartments::check_pairs;
use super::{
    Apartment, ApartmentSummary, AxiomReport, BuildingCertificate, Condition, Diagnosis,
    Recognition, SuspensionInfo, Verdict, Witness, FLAG_SAMPLED,
};
use crate::angle::{Angle, EPS_ANGLE};
use crate::budget::Budgets;
use crate::complex::Geometry;
use crate::coxeter::CoxeterMatrix;
use crate::graph::{Chain, MetricGraph, Suppression};

/// `m` with `len = π/m`, if any.
pub(crate) fn pi_over(len: Angle) -> Option<u32> {
    match len.as_pi_frac() {
        Some((1, q)) if q >= 1 => u32::try_from(q).ok(),
        Some(_) => None,
        None => {
            let m = (std::f64::consts::PI / len.radians()).round();
            (m >= 1.0 && (std::f64::consts::PI / m - len.radians()).abs() <= EPS_ANGLE)
                .then_some(m as u32)
        }
    }
}

fn cycle_names(g: &MetricGraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.name(v).to_string()).collect()
}

/// Injective cycles with exactly `k` edges, each reported once in a
/// canonical orientation (starting at its smallest vertex). Returns the
/// cycles as `(vertices, edges)` and whether the search finished within
/// `budget` steps.
pub(crate) fn cycles_with_edges(
    g: &MetricGraph,
    k: usize,
    budget: usize,
) -> (Vec<(Vec<usize>, Vec<usize>)>, bool) {
    struct Search<'a> {
        g: &'a MetricGraph,
        k: usize,
        start: usize,
        on_path: Vec<bool>,
        verts: Vec<usize>,
        edges: Vec<usize>,
        seen: BTreeSet<Vec<usize>>,
        out: Vec<(Vec<usize>, Vec<usize>)>,
        steps: usize,
        budget: usize,
    }
    impl Search<'_> {
        fn go(&mut self, v: usize) -> bool {
            self.steps += 1;
            if self.steps > self.budget {
                return false;
            }
            if self.edges.len() == self.k - 1 {
                for &(e, w) in self.g.incident(v) {
                    if w == self.start && !self.edges.contains(&e) {
                        let mut edges = self.edges.clone();
                        edges.push(e);
                        let mut key = edges.clone();
                        key.sort_unstable();
                        if self.seen.insert(key) {
                            self.out.push((self.verts.clone(), edges));
                        }
                    }
                }
                return true;
            }
            for &(e, w) in self.g.incident(v) {
                if w <= self.start || self.on_path[w] {
                    continue;
                }
                self.on_path[w] = true;
                self.verts.push(w);
                self.edges.push(e);
                let ok = self.go(w);
                self.edges.pop();
                self.verts.pop();
                self.on_path[w] = false;
                if !ok {
                    return false;
                }
            }
            true
        }
    }
    let mut s = Search {
        g,
        k,
        start: 0,
        on_path: vec![false; g.vertex_count()],
        verts: vec![],
        edges: vec![],
        seen: BTreeSet::new(),
        out: vec![],
        steps: 0,
        budget,
    };
    if k < 2 {
        return (vec![], true);
    }
    for start in 0..g.vertex_count() {
        s.start = start;
        s.on_path[start] = true;
        s.verts = vec![start];
        let ok = s.go(start);
        s.on_path[start] = false;
        if !ok {
            return (s.out, false);
        }
    }
    (s.out, true)
}

/// Axiom (3) for cycles: aligning two apartments at a shared edge must fix
/// every shared vertex and edge.
fn cycles_compatible(a: &(Vec<usize>, Vec<usize>), b: &(Vec<usize>, Vec<usize>)) -> bool {
    let (av, ae) = a;
    let (bv, be) = b;
    let n = av.len();
    let Some((i, j)) = ae
        .iter()
        .enumerate()
        .find_map(|(i, e)| be.iter().position(|f| f == e).map(|j| (i, j)))
    else {
        return true;
    };
    let forward = bv[j] == av[i];
    let idx = |k: usize| -> (usize, usize) {
        // image positions of A's vertex i+k and edge i+k
        if forward {
            ((j + k) % n, (j + k) % n)
        } else {
            ((j + 1 + n * 2 - k) % n, (j + n * 2 - k) % n)
        }
    };
    let bset_v: BTreeSet<usize> = bv.iter().copied().collect();
    let bset_e: BTreeSet<usize> = be.iter().copied().collect();
    for k in 0..n {
        let (pv, pe) = idx(k);
        let v = av[(i + k) % n];
        if bset_v.contains(&v) && bv[pv] != v {
            return false;
        }
        let e = ae[(i + k) % n];
        if bset_e.contains(&e) && be[pe] != e {
            return false;
        }
    }
    true
}

fn expand(chains: &[Chain], cycle: &(Vec<usize>, Vec<usize>), kept: &[usize]) -> Apartment {
    let (vs, es) = cycle;
    let mut vertices = vec![];
    let mut edges = vec![];
    for (k, &e) in es.iter().enumerate() {
        let chain = &chains[e];
        let from = kept[vs[k]];
        let forward = chain.vertices[0] == from;
        let (cv, ce): (Vec<usize>, Vec<usize>) = if forward {
            (chain.vertices.clone(), chain.edges.clone())
        } else {
            (
                chain.vertices.iter().rev().copied().collect(),
                chain.edges.iter().rev().copied().collect(),
            )
        };
        vertices.extend_from_slice(&cv[..cv.len() - 1]);
        edges.extend(ce);
    }
    Apartment { chambers: edges, vertices }
}

/// All `2m`-cycles of the valence-2-suppressed graph, expanded to the
/// original cell structure, together with the axiom (2)/(3) checks.
pub fn enumerate_apartments_dim1(
    g: &MetricGraph,
    m: u32,
    budgets: &Budgets,
) -> (ApartmentSummary, AxiomReport) {
    match g.suppress_degree2() {
        Suppression::Circle { chain, .. } => {
            let mut vertices = chain.vertices.clone();
            vertices.pop();
            let ap = Apartment { chambers: chain.edges.clone(), vertices };
            (
                ApartmentSummary { count: 1, exhaustive: true, list: vec![ap] },
                AxiomReport { axiom2: true, axiom3: true, pairs_checked: 0, sampled: false },
            )
        }
        Suppression::SelfLoop { .. } => (
            ApartmentSummary { count: 0, exhaustive: true, list: vec![] },
            AxiomReport { axiom2: false, axiom3: false, pairs_checked: 0, sampled: false },
        ),
        Suppression::Graph { graph: h, kept, chains, .. } => {
            let (cycles, exhaustive) = cycles_with_edges(&h, 2 * m as usize, budgets.apartments);
            let nv = h.vertex_count();
            let simplex_sets: Vec<Vec<usize>> = cycles
                .iter()
                .map(|(vs, es)| vs.iter().copied().chain(es.iter().map(|&e| nv + e)).collect())
                .collect();
            let pairs = check_pairs(nv + h.edge_count(), &simplex_sets, exhaustive, budgets);
            let mut axiom3 = true;
            'outer: for a in 0..cycles.len() {
                for b in a + 1..cycles.len() {
                    if !cycles_compatible(&cycles[a], &cycles[b]) {
                        axiom3 = false;
                        break 'outer;
                    }
                }
            }
            let list: Vec<Apartment> = cycles.iter().map(|c| expand(&chains, c, &kept)).collect();
            (
                ApartmentSummary { count: list.len(), exhaustive, list },
                AxiomReport {
                    axiom2: pairs.ok,
                    axiom3,
                    pairs_checked: pairs.checked,
                    sampled: pairs.sampled,
                },
            )
        }
    }
}

fn chain_midpoint(g: &MetricGraph, chain: &Chain) -> String {
    let half = chain.length.half();
    let mut acc = Angle::ZERO;
    for (k, &e) in chain.edges.iter().enumerate() {
        let len = g.edge(e).len;
        let next = acc + len;
        match next.cmp_tol(&half) {
            Ordering::Less => acc = next,
            Ordering::Equal => return g.name(chain.vertices[k + 1]).to_string(),
            Ordering::Greater => {
                let from = chain.vertices[k];
                let off = if g.edge(e).a == from { half - acc } else { len - (half - acc) };
                let p = g.point(e, off).expect("inside edge");
                return g.describe(&p);
            }
        }
    }
    g.name(*chain.vertices.last().expect("nonempty")).to_string()
}

/// One-dimensional recognition: connected, valence, CAT(1) via the
/// systole, diameter exactly `π`, then uniform edge length `π/m` after
/// valence-2 suppression.
pub fn recognize_dim1(g: &MetricGraph, budgets: &Budgets) -> Recognition {
    let comps = g.components();
    if comps.len() != 1 {
        return Err(Diagnosis::new(
            Condition::NotConnected,
            Witness::Components {
                components: comps.iter().map(|c| cycle_names(g, c)).collect(),
            },
        ));
    }
    if let Some((v, d)) = g.min_valence().filter(|&(_, d)| d < 2) {
        return Err(Diagnosis::new(
            Condition::Valence,
            Witness::Vertex { vertex: g.name(v).to_string(), valence: d },
        ));
    }
    let cat = g.cat1();
    if !cat.cat1 {
        return Err(Diagnosis::new(
            Condition::Systole,
            Witness::Cycle {
                vertices: cycle_names(g, &cat.systole.cycle_vertices),
                length: cat.systole.length.expect("a short cycle exists"),
            },
        ));
    }
    let diam = g.diameter().expect("connected");
    let diameter_failure = |d: &crate::graph::Diameter| {
        Diagnosis::new(
            Condition::Diameter,
            Witness::PointPair {
                p: g.describe(&d.witness.0),
                q: g.describe(&d.witness.1),
                distance: d.value,
            },
        )
    };
    if !diam.value.approx_eq(&Angle::PI) {
        return Err(diameter_failure(&diam));
    }
    let mut cert = BuildingCertificate::new(Geometry::Spherical, 1, Verdict::ThinBuilding);
    match g.suppress_degree2() {
        Suppression::SelfLoop { .. } => Err(diameter_failure(&diam)),
        Suppression::Circle { .. } => {
            let first = g.edge(0).len;
            let m = g
                .edges()
                .iter()
                .all(|e| e.len.approx_eq(&first))
                .then(|| pi_over(first))
                .flatten()
                .filter(|&m| 2 * m as usize == g.edge_count());
            cert.dihedral_m = m;
            if let Some(m) = m.filter(|&m| m >= 2) {
                cert.set_coxeter(CoxeterMatrix::from_edges(2, &[(0, 1, m)]).expect("valid"));
                cert.vertex_types = g.bipartition().map(|c| c.to_vec());
            }
            cert.thickness = Some(2);
            let (aps, ax) = enumerate_apartments_dim1(g, m.unwrap_or(1), budgets);
            cert.apartments = aps;
            cert.axioms = Some(ax);
            Ok(cert)
        }
        Suppression::Graph { graph: h, chains, .. } => {
            let first = h.edge(0).len;
            if let Some(e) = h.edges().iter().position(|e| !e.len.approx_eq(&first)) {
                let side = |i: usize| {
                    let c = &chains[i];
                    (
                        g.name(c.vertices[0]).to_string(),
                        g.name(*c.vertices.last().expect("nonempty")).to_string(),
                        c.length,
                    )
                };
                return Err(Diagnosis::new(
                    Condition::EdgeLengthNonuniform,
                    Witness::Edges { first: side(0), second: side(e) },
                ));
            }
            let Some(m) = pi_over(first) else {
                return Err(Diagnosis::new(
                    Condition::EdgeLengthNonuniform,
                    Witness::Text { detail: format!("edge length {first} is not pi/m") },
                ));
            };
            cert.dihedral_m = Some(m);
            let (aps, ax) = enumerate_apartments_dim1(g, m, budgets);
            if aps.exhaustive && !(ax.axiom2 && ax.axiom3) {
                return Err(Diagnosis::new(
                    Condition::ApartmentAxiom,
                    Witness::Text { detail: "apartment axioms fail".into() },
                ));
            }
            if !aps.exhaustive {
                cert.flags.push(FLAG_SAMPLED.into());
            }
            if m == 1 {
                cert.verdict = Verdict::Suspension;
                cert.thickness = Some(2);
                cert.suspension = Some(SuspensionInfo {
                    poles: h.names().to_vec(),
                    base: chains.iter().map(|c| chain_midpoint(g, c)).collect(),
                });
                let right_angled = g.edges().iter().all(|e| e.len.approx_eq(&Angle::HALF_PI));
                if right_angled {
                    cert.set_coxeter(CoxeterMatrix::named("A1xA1").expect("valid"));
                    cert.vertex_types = g.bipartition();
                }
            } else {
                cert.verdict = Verdict::ThickBuilding;
                cert.thickness = h.min_valence().map(|(_, d)| d);
                cert.set_coxeter(CoxeterMatrix::from_edges(2, &[(0, 1, m)]).expect("valid"));
                if h.vertex_count() == g.vertex_count() {
                    cert.vertex_types = g.bipartition();
                }
            }
            cert.apartments = aps;
            cert.axioms = Some(ax);
            Ok(cert)
        }
    }
}

#[cfg(test)]
/// Re-checks a diagnosis witness cycle against the graph.
pub(crate) fn cycle_length(g: &MetricGraph, vertices: &[usize]) -> Option<Angle> {
    let n = vertices.len();
    let mut total = Angle::ZERO;
    for k in 0..n {
        let (u, v) = (vertices[k], vertices[(k + 1) % n]);
        let e = g
            .incident(u)
            .iter()
            .filter(|&&(_, w)| w == v)
            .map(|&(e, _)| g.edge(e).len)
            .min_by(|a, b| a.cmp_tol(b))?;
        total = total + e;
    }
    Some(total)
}
