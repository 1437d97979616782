//! Local geodesics in metric graphs and piecewise spherical surfaces.
//!
//! Inside a triangle a geodesic is a great-circle arc in the triangle's
//! own realization on `S²`. Crossing an edge, the arc is developed into
//! each other triangle on that edge; at a vertex it continues in every
//! direction of the vertex link at distance `≥ π` from the incoming one.

mod propagate;
mod shoot;

use std::collections::BTreeMap;

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::angle::Angle;
use crate::budget::Budgets;
use crate::complex::{Geometry, MetricComplex};
use crate::error::{Error, Result};
use crate::graph::{GraphPoint, MetricGraph};

pub use propagate::{propagate_apartment, PropagatedApartment, PropagationFailure};
pub use shoot::{geodesic_between, Between};

const ZERO_TOL: f64 = 1e-9;

/// One piece of a geodesic inside a single cell. `from`/`to` are
/// normalized barycentric coordinates with respect to `cell`.
#[derive(Clone, Debug, Serialize)]
pub struct Segment {
    pub cell: Vec<String>,
    pub from: Vec<f64>,
    pub to: Vec<f64>,
    pub length: f64,
    #[serde(skip)]
    arc: Arc,
}

#[derive(Clone, Debug)]
enum Arc {
    /// Start point and unit direction in the frame of top cell `cell`.
    Surface { cell: usize, p: Vector3<f64>, u: Vector3<f64> },
    /// Offsets (from `edges[edge].a`) along a graph edge.
    Graph { edge: usize, from: f64, to: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ending {
    /// Target length reached.
    Reached,
    /// No direction at this vertex continues the geodesic.
    DeadEnd { vertex: String },
    /// The continuations at this vertex form a non-discrete set.
    NonDiscrete { vertex: String },
    /// The geodesic left the complex through a free edge.
    Boundary { edge: Vec<String> },
    /// Still extendable (a geodesic that was just started).
    Open,
}

#[derive(Clone, Debug)]
enum Tip {
    Surface { cell: usize, p: Vector3<f64>, u: Vector3<f64> },
    Graph { edge: usize, pos: f64, forward: bool },
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalGeodesic {
    pub start: String,
    pub segments: Vec<Segment>,
    pub length: f64,
    /// Vertices passed through, with arclength.
    pub vertices: Vec<(String, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub end_vertex: Option<String>,
    pub ending: Ending,
    #[serde(skip)]
    tip: Option<Tip>,
}

/// Triangle realized on the unit sphere: `v[i]` is the `i`-th vertex of
/// the (sorted) cell.
#[derive(Clone, Debug)]
struct Frame {
    v: [Vector3<f64>; 3],
    inv: Matrix3<f64>,
}

impl Frame {
    fn coords(&self, x: &Vector3<f64>) -> Vector3<f64> {
        self.inv * x
    }

    fn bary(&self, x: &Vector3<f64>) -> Vec<f64> {
        let c = self.coords(x).map(|t| t.max(0.0));
        let s = c.sum();
        c.iter().map(|t| t / s).collect()
    }
}

/// Unit tangent at `x` pointing to `y`.
fn tangent(x: &Vector3<f64>, y: &Vector3<f64>) -> Vector3<f64> {
    (y - x * x.dot(y)).normalize()
}

struct SurfaceData {
    frames: Vec<Frame>,
    cell_index: BTreeMap<Vec<usize>, usize>,
    edge_cells: BTreeMap<(usize, usize), Vec<usize>>,
    /// Link graph of each vertex with the complex id of each link vertex.
    links: Vec<(MetricGraph, Vec<usize>)>,
}

enum Space {
    Graph(MetricGraph),
    Surface(SurfaceData),
}

/// Precomputed geometry for geodesic work on a spherical complex of
/// dimension one or two.
pub struct GeodesicLab {
    complex: MetricComplex,
    space: Space,
}

/// All continuations of a geodesic.
#[derive(Clone, Debug, Serialize)]
pub struct Extension {
    pub geodesics: Vec<LocalGeodesic>,
    pub budget_exceeded: bool,
}

impl GeodesicLab {
    pub fn new(c: &MetricComplex) -> Result<GeodesicLab> {
        if c.geometry() != Geometry::Spherical {
            return Err(Error::Geometry("geodesics need a spherical complex".into()));
        }
        c.ensure_valid()?;
        let space = match c.dimension() {
            1 => Space::Graph(MetricGraph::from_complex(c)?),
            2 => Space::Surface(SurfaceData::new(c)?),
            n => {
                return Err(Error::Precondition(format!("geodesics need dimension 1 or 2, got {n}")))
            }
        };
        Ok(GeodesicLab { complex: c.clone(), space })
    }

    pub fn complex(&self) -> &MetricComplex {
        &self.complex
    }

    /// The link of vertex `x` as a metric graph (for dimension two), or
    /// `None` for graphs.
    pub fn link(&self, x: &str) -> Result<Option<&MetricGraph>> {
        let v = self.complex.require_vertex(x)?;
        Ok(match &self.space {
            Space::Surface(s) => Some(&s.links[v].0),
            Space::Graph(_) => None,
        })
    }

    /// A zero-length geodesic at vertex `x` heading in direction `dir`: a
    /// point of the link of `x` (`e:i@t` or a link vertex name) for
    /// surfaces, or a neighbor name / `#edge` for graphs.
    pub fn start(&self, x: &str, dir: &str) -> Result<LocalGeodesic> {
        let v = self.complex.require_vertex(x)?;
        let tip = match &self.space {
            Space::Surface(s) => {
                let (g, _) = &s.links[v];
                let q = parse_link_point(g, dir)?;
                s.direction_at(v, &q)
            }
            Space::Graph(g) => {
                let edge = match dir.strip_prefix('#') {
                    Some(i) => i.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?,
                    None => {
                        let w = g.vertex_by_name(dir).ok_or_else(|| Error::UnknownVertex(dir.into()))?;
                        g.incident(v)
                            .iter()
                            .find(|&&(_, n)| n == w)
                            .map(|&(e, _)| e)
                            .ok_or_else(|| Error::Precondition(format!("{dir} is not adjacent to {x}")))?
                    }
                };
                let e = g.edges().get(edge).ok_or_else(|| Error::Malformed(format!("no edge {edge}")))?;
                if e.a != v && e.b != v {
                    return Err(Error::Precondition(format!("edge {edge} does not contain {x}")));
                }
                let forward = e.a == v;
                Tip::Graph { edge, pos: if forward { 0.0 } else { e.len.radians() }, forward }
            }
        };
        Ok(LocalGeodesic {
            start: format!("{x}/{dir}"),
            segments: vec![],
            length: 0.0,
            vertices: vec![],
            end_vertex: Some(x.to_string()),
            ending: Ending::Open,
            tip: Some(tip),
        })
    }

    fn cell_names(&self, k: usize) -> Vec<String> {
        crate::recognize::names(&self.complex, &self.complex.top_cells()[k])
    }
}

/// Parses a link point: `e:i@t`, `e:i:t`, `i:t` or a link vertex name.
pub(crate) fn parse_link_point(g: &MetricGraph, s: &str) -> Result<GraphPoint> {
    let t = s.strip_prefix("v:").unwrap_or(s);
    if let Some(rest) = t.strip_prefix("e:") {
        let (e, off) = rest
            .split_once('@')
            .or_else(|| rest.split_once(':'))
            .ok_or_else(|| Error::Parse(format!("link point {s:?}")))?;
        let e: usize = e.split('(').next().unwrap_or(e).parse().map_err(|_| Error::Parse(format!("link point {s:?}")))?;
        return g.point(e, off.parse()?);
    }
    g.parse_point(t)
}

impl SurfaceData {
    fn new(c: &MetricComplex) -> Result<SurfaceData> {
        let mut frames = vec![];
        let mut cell_index = BTreeMap::new();
        let mut edge_cells: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, cell) in c.top_cells().iter().enumerate() {
            let g = Matrix3::from_fn(|i, j| {
                if i == j {
                    1.0
                } else {
                    c.length(cell[i], cell[j]).expect("edge").radians().cos()
                }
            });
            let l = g
                .cholesky()
                .ok_or_else(|| Error::Invalid(format!("cell {k} is degenerate")))?
                .l();
            let v = [0, 1, 2].map(|i| Vector3::new(l[(i, 0)], l[(i, 1)], l[(i, 2)]));
            let inv = Matrix3::from_columns(&v).try_inverse().expect("nondegenerate");
            frames.push(Frame { v, inv });
            cell_index.insert(cell.clone(), k);
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                edge_cells.entry((cell[i], cell[j])).or_default().push(k);
            }
        }
        let mut links = vec![];
        for v in 0..c.vertex_count() {
            let g = MetricGraph::from_complex(&c.vertex_link(c.name(v))?)?;
            let ids = g.names().iter().map(|n| c.vertex(n).expect("neighbor")).collect();
            links.push((g, ids));
        }
        Ok(SurfaceData { frames, cell_index, edge_cells, links })
    }

    fn slot(cell: &[usize], v: usize) -> usize {
        cell.iter().position(|&w| w == v).expect("vertex of cell")
    }

    /// Cell and unit tangent at vertex `x` for the link direction `q`.
    fn direction_at(&self, x: usize, q: &GraphPoint) -> Tip {
        let (g, ids) = &self.links[x];
        let (a, b, theta) = match *q {
            GraphPoint::Vertex { vertex } => {
                let a = ids[vertex];
                let e = g.incident(vertex)[0].1;
                (a, ids[e], 0.0)
            }
            GraphPoint::Edge { edge, offset } => {
                let e = g.edge(edge);
                (ids[e.a], ids[e.b], offset.radians())
            }
        };
        let mut key = vec![x, a, b];
        key.sort_unstable();
        let k = self.cell_index[&key];
        let f = &self.frames[k];
        let px = f.v[Self::slot(&key, x)];
        let ta = tangent(&px, &f.v[Self::slot(&key, a)]);
        let tb = tangent(&px, &f.v[Self::slot(&key, b)]);
        let perp = (tb - ta * ta.dot(&tb)).normalize();
        Tip::Surface { cell: k, p: px, u: ta * theta.cos() + perp * theta.sin() }
    }

    /// Link point of the direction `d` (a tangent at vertex `x` inside
    /// cell `k`).
    fn link_point(&self, c: &MetricComplex, x: usize, k: usize, d: &Vector3<f64>) -> GraphPoint {
        let cell = &c.top_cells()[k];
        let f = &self.frames[k];
        let (g, ids) = &self.links[x];
        let others: Vec<usize> = cell.iter().copied().filter(|&w| w != x).collect();
        let local = |w: usize| ids.iter().position(|&i| i == w).expect("link vertex");
        let (la, lb) = (local(others[0]), local(others[1]));
        let edge = g.incident(la).iter().find(|&&(_, n)| n == lb).map(|&(e, _)| e).expect("link edge");
        let px = f.v[Self::slot(cell, x)];
        let ta = tangent(&px, &f.v[Self::slot(cell, others[0])]);
        let tb = tangent(&px, &f.v[Self::slot(cell, others[1])]);
        let perp = (tb - ta * ta.dot(&tb)).normalize();
        let len = g.edge(edge).len.radians();
        let theta = d.dot(&perp).atan2(d.dot(&ta)).clamp(0.0, len);
        let off = if g.edge(edge).a == la { theta } else { len - theta };
        let off = Angle::rationalize(off).max(Angle::ZERO).min(g.edge(edge).len);
        g.point(edge, off).expect("offset clamped to edge")
    }
}

/// Continues every branch of `geo` to total length `target`, branching at
/// vertices over link antipodes and at edges over the other cells.
pub fn extend_geodesic(lab: &GeodesicLab, geo: &LocalGeodesic, target: f64, budgets: &Budgets) -> Extension {
    let mut done = vec![];
    let mut work = vec![geo.clone()];
    let mut exceeded = false;
    while let Some(mut g) = work.pop() {
        if g.tip.is_none() || g.length >= target - ZERO_TOL {
            if g.ending == Ending::Open {
                g.ending = Ending::Reached;
            }
            done.push(g);
            continue;
        }
        let branches = match &lab.space {
            Space::Surface(s) => step_surface(lab, s, g, target),
            Space::Graph(gr) => step_graph(lab, gr, g, target),
        };
        for b in branches {
            if done.len() + work.len() >= budgets.branches {
                exceeded = true;
                break;
            }
            work.push(b);
        }
    }
    done.sort_by(|a, b| a.segments.len().cmp(&b.segments.len()).then(a.start.cmp(&b.start)));
    Extension { geodesics: done, budget_exceeded: exceeded }
}

fn step_surface(lab: &GeodesicLab, s: &SurfaceData, mut g: LocalGeodesic, target: f64) -> Vec<LocalGeodesic> {
    let c = &lab.complex;
    let Some(Tip::Surface { cell: k, p, u }) = g.tip.clone() else { return vec![] };
    let f = &s.frames[k];
    let (a, b) = (f.coords(&p), f.coords(&u));
    let mut t_exit = f64::INFINITY;
    for i in 0..3 {
        if a[i].abs() <= ZERO_TOL && b[i].abs() <= ZERO_TOL {
            continue;
        }
        let t = a[i].max(0.0).atan2(-b[i]);
        if t > ZERO_TOL {
            t_exit = t_exit.min(t);
        }
    }
    let remaining = target - g.length;
    let ends_inside = remaining < t_exit - ZERO_TOL;
    let t = if ends_inside { remaining } else { t_exit };
    let e = p * t.cos() + u * t.sin();
    let v = -p * t.sin() + u * t.cos();
    g.segments.push(Segment {
        cell: lab.cell_names(k),
        from: f.bary(&p),
        to: f.bary(&e),
        length: t,
        arc: Arc::Surface { cell: k, p, u },
    });
    g.length += t;
    g.end_vertex = None;
    let finished = ends_inside || remaining <= t_exit + ZERO_TOL;
    let cell = &c.top_cells()[k];
    let zc = f.bary(&e);
    let zeros: Vec<usize> = (0..3).filter(|&i| zc[i] <= ZERO_TOL).collect();
    if let (2.., false) = (zeros.len(), ends_inside) {
        let x = cell[(0..3).find(|i| !zeros.contains(i)).expect("one nonzero")];
        g.end_vertex = Some(c.name(x).to_string());
        if finished {
            g.ending = Ending::Reached;
            g.tip = None;
            return vec![g];
        }
        g.vertices.push((c.name(x).to_string(), g.length));
        let back = s.link_point(c, x, k, &-v);
        let (lk, _) = &s.links[x];
        let anti = lk.antipode_set(&back);
        if !anti.nonempty {
            g.ending = Ending::DeadEnd { vertex: c.name(x).to_string() };
            g.tip = None;
            return vec![g];
        }
        if !anti.discrete {
            g.ending = Ending::NonDiscrete { vertex: c.name(x).to_string() };
            g.tip = None;
            return vec![g];
        }
        return anti
            .points
            .iter()
            .map(|q| {
                let mut h = g.clone();
                h.tip = Some(s.direction_at(x, q));
                h
            })
            .collect();
    }
    if finished {
        g.ending = Ending::Reached;
        g.tip = None;
        return vec![g];
    }
    // crossing the interior of an edge
    let z = zeros[0];
    let (ia, ib) = match z {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (va, vb) = (cell[ia], cell[ib]);
    let others: Vec<usize> = s.edge_cells[&(va, vb)].iter().copied().filter(|&o| o != k).collect();
    if others.is_empty() {
        g.ending = Ending::Boundary { edge: vec![c.name(va).into(), c.name(vb).into()] };
        g.tip = None;
        return vec![g];
    }
    let tv = tangent(&e, &f.v[ib]);
    let nv = {
        let pc = f.v[z];
        (pc - e * e.dot(&pc) - tv * tv.dot(&pc)).normalize()
    };
    let (alpha, beta) = (v.dot(&tv), v.dot(&nv));
    let lam = f.coords(&e);
    others
        .into_iter()
        .map(|o| {
            let fo = &s.frames[o];
            let co = &c.top_cells()[o];
            let (sa, sb) = (SurfaceData::slot(co, va), SurfaceData::slot(co, vb));
            let sc = 3 - sa - sb;
            let e2 = (fo.v[sa] * lam[ia] + fo.v[sb] * lam[ib]).normalize();
            let t2 = tangent(&e2, &fo.v[sb]);
            let pc = fo.v[sc];
            let n2 = (pc - e2 * e2.dot(&pc) - t2 * t2.dot(&pc)).normalize();
            let u2 = (t2 * alpha - n2 * beta).normalize();
            let mut h = g.clone();
            h.tip = Some(Tip::Surface { cell: o, p: e2, u: u2 });
            h
        })
        .collect()
}

fn step_graph(lab: &GeodesicLab, gr: &MetricGraph, mut g: LocalGeodesic, target: f64) -> Vec<LocalGeodesic> {
    let Some(Tip::Graph { edge, pos, forward }) = g.tip.clone() else { return vec![] };
    let e = gr.edge(edge);
    let len = e.len.radians();
    let to_end = if forward { len - pos } else { pos };
    let remaining = target - g.length;
    let t = remaining.min(to_end);
    let new_pos = if forward { pos + t } else { pos - t };
    let bary = |x: f64| vec![1.0 - x / len, x / len];
    g.segments.push(Segment {
        cell: vec![gr.name(e.a).into(), gr.name(e.b).into()],
        from: bary(pos),
        to: bary(new_pos),
        length: t,
        arc: Arc::Graph { edge, from: pos, to: new_pos },
    });
    g.length += t;
    let reached_vertex = to_end <= remaining + ZERO_TOL;
    let w = if forward { e.b } else { e.a };
    g.end_vertex = reached_vertex.then(|| gr.name(w).to_string());
    if remaining <= to_end + ZERO_TOL {
        g.ending = Ending::Reached;
        g.tip = None;
        return vec![g];
    }
    g.vertices.push((gr.name(w).to_string(), g.length));
    // in a graph every other direction at `w` is at distance π
    let outs: Vec<usize> = gr.incident(w).iter().map(|&(f, _)| f).filter(|&f| f != edge).collect();
    if outs.is_empty() {
        g.ending = Ending::DeadEnd { vertex: lab.complex.name(w).to_string() };
        g.tip = None;
        return vec![g];
    }
    outs.into_iter()
        .map(|f| {
            let ef = gr.edge(f);
            let fwd = ef.a == w;
            let mut h = g.clone();
            h.tip = Some(Tip::Graph { edge: f, pos: if fwd { 0.0 } else { ef.len.radians() }, forward: fwd });
            h
        })
        .collect()
}

impl GeodesicLab {
    /// Keeps the first `length` of `geo`.
    pub fn truncate(&self, geo: &mut LocalGeodesic, length: f64) {
        let mut acc = 0.0;
        let mut keep = vec![];
        for mut seg in std::mem::take(&mut geo.segments) {
            if acc >= length - ZERO_TOL && !keep.is_empty() {
                break;
            }
            if acc + seg.length > length {
                seg.length = (length - acc).max(0.0);
                seg.to = self.arc_point(&seg.arc, seg.length);
            }
            acc += seg.length;
            keep.push(seg);
        }
        geo.segments = keep;
        geo.length = acc;
        geo.vertices.retain(|(_, s)| *s < length - ZERO_TOL);
        geo.tip = None;
        geo.ending = Ending::Reached;
    }

    fn arc_point(&self, arc: &Arc, t: f64) -> Vec<f64> {
        match (arc, &self.space) {
            (Arc::Surface { cell, p, u }, Space::Surface(s)) => s.frames[*cell].bary(&(p * t.cos() + u * t.sin())),
            (Arc::Graph { edge, from, to }, Space::Graph(g)) => {
                let len = g.edge(*edge).len.radians();
                let x = from + (to - from).signum() * t;
                vec![1.0 - x / len, x / len]
            }
            _ => unreachable!("arc kind matches the space"),
        }
    }
}

impl Segment {
    /// Cell, start point and direction of a surface segment.
    fn surface_arc(&self) -> Option<(usize, Vector3<f64>, Vector3<f64>)> {
        match &self.arc {
            Arc::Surface { cell, p, u } => Some((*cell, *p, *u)),
            Arc::Graph { .. } => None,
        }
    }
}

impl LocalGeodesic {
    /// Segment lengths add up to the total, and consecutive segments meet
    /// (the exit point of one is the entry point of the next, up to the
    /// identification of the shared face).
    pub fn is_consistent(&self) -> bool {
        let sum: f64 = self.segments.iter().map(|s| s.length).sum();
        self.segments.iter().all(|s| s.length >= 0.0) && (sum - self.length).abs() <= 1e-9
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexBuilder;
    use std::f64::consts::PI;

    fn octahedron() -> MetricComplex {
        let s = MetricComplex::sphere0;
        s("x+", "x-").join(&s("y+", "y-")).unwrap().join(&s("z+", "z-")).unwrap()
    }

    #[test]
    fn octahedron_poles_are_at_pi() {
        let lab = GeodesicLab::new(&octahedron()).unwrap();
        let b = Budgets::default();
        let Between::Found { geodesic, .. } = geodesic_between(&lab, "x+", "x-", None, &b).unwrap() else {
            panic!("x- not reached");
        };
        assert!((geodesic.length - PI).abs() < 1e-9);
        assert!(geodesic.is_consistent());
    }

    #[test]
    fn octahedron_neighbors_are_at_half_pi() {
        let lab = GeodesicLab::new(&octahedron()).unwrap();
        let Between::Found { geodesic, .. } =
            geodesic_between(&lab, "x+", "y+", None, &Budgets::default()).unwrap()
        else {
            panic!("y+ not reached");
        };
        assert!((geodesic.length - PI / 2.0).abs() < 1e-9);
        assert_eq!(geodesic.segments.len(), 1);
    }

    #[test]
    fn straight_line_through_an_edge_interior() {
        let lab = GeodesicLab::new(&octahedron()).unwrap();
        let g = lab.start("x+", "e:0@0.78539816339744828").unwrap();
        let ext = extend_geodesic(&lab, &g, PI, &Budgets::default());
        assert_eq!(ext.geodesics.len(), 1);
        let h = &ext.geodesics[0];
        assert_eq!(h.end_vertex.as_deref(), Some("x-"));
        assert_eq!(h.segments.len(), 2);
        assert_eq!(h.ending, Ending::Reached);
    }

    #[test]
    fn heawood_geodesics_branch_at_vertices() {
        let g = crate::graph::fixtures::heawood().to_complex().unwrap();
        let lab = GeodesicLab::new(&g).unwrap();
        let start = lab.start("p0", "l0").unwrap();
        let ext = extend_geodesic(&lab, &start, PI, &Budgets::default());
        // two binary branchings at l0 and at the next point vertex
        assert_eq!(ext.geodesics.len(), 4);
        assert!(ext.geodesics.iter().all(|h| h.end_vertex.is_some() && (h.length - PI).abs() < 1e-9));
        let Between::Found { geodesic, .. } =
            geodesic_between(&lab, "p0", "p1", None, &Budgets::default()).unwrap()
        else {
            panic!("p1 not reached");
        };
        assert!((geodesic.length - 2.0 * PI / 3.0).abs() < 1e-9);
    }

    #[test]
    fn path_end_is_a_dead_end() {
        let h = Angle::pi_frac(1, 2);
        let g = MetricGraph::from_named_edges(&[("a", "b", h), ("b", "c", h)]).unwrap();
        let lab = GeodesicLab::new(&g.to_complex().unwrap()).unwrap();
        let ext = extend_geodesic(&lab, &lab.start("a", "b").unwrap(), PI + 0.5, &Budgets::default());
        assert_eq!(ext.geodesics[0].ending, Ending::DeadEnd { vertex: "c".into() });
    }

    #[test]
    fn cone_point_is_a_dead_end() {
        let mut b = ComplexBuilder::new(Geometry::Spherical, 2);
        for (x, y) in [("a", "b"), ("b", "c"), ("c", "d")] {
            b.cell_with(&["o", x, y], |p, q| {
                if p == "o" || q == "o" { Angle::pi_frac(1, 2) } else { Angle::pi_frac(1, 4) }
            })
            .unwrap();
        }
        let lab = GeodesicLab::new(&b.build().unwrap()).unwrap();
        let ext = extend_geodesic(&lab, &lab.start("a", "o").unwrap(), PI, &Budgets::default());
        assert!(ext.geodesics.iter().all(|g| g.ending == Ending::DeadEnd { vertex: "o".into() }));
    }

    #[test]
    fn euclidean_input_is_rejected() {
        let w = crate::coxeter::CoxeterMatrix::named("~A2").unwrap().euclidean_window(1).unwrap();
        assert!(GeodesicLab::new(&w.complex).is_err());
    }
}
