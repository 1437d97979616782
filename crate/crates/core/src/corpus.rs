//! Deterministic generators for positive and negative example complexes.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::angle::Angle;
use crate::complex::{edge_key, Geometry, MetricComplex};
use crate::coxeter::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::graph::{GraphEdge, MetricGraph};
use crate::recognize::Condition;

/// Rank-2 spherical buildings given by incidence structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Kind {
    CompleteBipartite { s: usize, t: usize },
    ProjectivePlane { q: u32 },
    GeneralizedQuadrangle { q: u32 },
}

impl Rank2Kind {
    /// The `m` with edge length `π/m`.
    pub fn m(&self) -> u32 {
        match self {
            Rank2Kind::CompleteBipartite { .. } => 2,
            Rank2Kind::ProjectivePlane { .. } => 3,
            Rank2Kind::GeneralizedQuadrangle { .. } => 4,
        }
    }
}

/// Incidence graph of `kind` with every edge of length `edge`, which must
/// be exactly `π/m` for the kind's `m`.
pub fn rank2_building(kind: Rank2Kind, edge: Angle) -> Result<MetricGraph> {
    let m = kind.m();
    if edge.as_pi_frac() != Some((1, m as i64)) {
        return Err(Error::Precondition(format!("{kind:?} needs edge length pi/{m}, got {edge}")));
    }
    let (points, lines, flags) = match kind {
        Rank2Kind::CompleteBipartite { s, t } => {
            if s < 2 || t < 2 {
                return Err(Error::Precondition("complete bipartite graph needs s, t >= 2".into()));
            }
            let flags = (0..s).flat_map(|i| (0..t).map(move |j| (i, j))).collect();
            let a = (0..s).map(|i| format!("a{i}")).collect();
            let b = (0..t).map(|j| format!("b{j}")).collect();
            (a, b, flags)
        }
        Rank2Kind::ProjectivePlane { q } => {
            require_q2(q)?;
            fano()
        }
        Rank2Kind::GeneralizedQuadrangle { q } => {
            require_q2(q)?;
            gq22()
        }
    };
    let n = points.len();
    let mut names: Vec<String> = points;
    names.extend(lines);
    let edges = flags.into_iter().map(|(p, l)| GraphEdge { a: p, b: n + l, len: edge }).collect();
    MetricGraph::new(names, edges)
}

fn require_q2(q: u32) -> Result<()> {
    if q != 2 {
        return Err(Error::Precondition(format!("only q = 2 is available, got {q}")));
    }
    Ok(())
}

type Incidence = (Vec<String>, Vec<String>, Vec<(usize, usize)>);

/// Points and lines of the Fano plane; line `l` is `{l, l+1, l+3} mod 7`.
fn fano() -> Incidence {
    let points = (0..7).map(|i| format!("p{i}")).collect();
    let lines = (0..7).map(|i| format!("l{i}")).collect();
    let flags = (0..7).flat_map(|l| [0, 1, 3].map(|d| ((l + d) % 7, l))).collect();
    (points, lines, flags)
}

/// GQ(2,2): points are the 15 pairs from a 6-set, lines the 15 partitions
/// of it into three pairs.
fn gq22() -> Incidence {
    let mut pairs = vec![];
    for a in 0..6 {
        for b in a + 1..6 {
            pairs.push((a, b));
        }
    }
    let mut synthemes: Vec<[(usize, usize); 3]> = vec![];
    for &p in &pairs {
        for &q in &pairs {
            for &r in &pairs {
                let mut all = [p.0, p.1, q.0, q.1, r.0, r.1];
                all.sort_unstable();
                if p < q && q < r && all == [0, 1, 2, 3, 4, 5] {
                    synthemes.push([p, q, r]);
                }
            }
        }
    }
    let points = pairs.iter().map(|(a, b)| format!("p{a}{b}")).collect();
    let lines = synthemes
        .iter()
        .map(|s| format!("l{}{}-{}{}-{}{}", s[0].0, s[0].1, s[1].0, s[1].1, s[2].0, s[2].1))
        .collect();
    let mut flags = vec![];
    for (l, s) in synthemes.iter().enumerate() {
        for p in s {
            flags.push((pairs.iter().position(|x| x == p).expect("pair"), l));
        }
    }
    (points, lines, flags)
}

/// Negative controls, each violating one hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NegativeKind {
    Petersen,
    K4,
    ShortLune,
    PuncturedOctahedron,
    PerturbedA2Window,
}

impl NegativeKind {
    pub const ALL: [NegativeKind; 5] = [
        NegativeKind::Petersen,
        NegativeKind::K4,
        NegativeKind::ShortLune,
        NegativeKind::PuncturedOctahedron,
        NegativeKind::PerturbedA2Window,
    ];

    /// The diagnosis the control is built to trigger.
    pub fn expected(&self) -> Condition {
        match self {
            NegativeKind::Petersen => Condition::Systole,
            NegativeKind::K4 => Condition::Diameter,
            NegativeKind::ShortLune | NegativeKind::PerturbedA2Window => Condition::LinkFailure,
            NegativeKind::PuncturedOctahedron => Condition::Codim1CellCount,
        }
    }
}

impl fmt::Display for NegativeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NegativeKind::Petersen => "petersen",
            NegativeKind::K4 => "k4",
            NegativeKind::ShortLune => "short-lune",
            NegativeKind::PuncturedOctahedron => "punctured-octahedron",
            NegativeKind::PerturbedA2Window => "perturbed-a2-window",
        })
    }
}

impl FromStr for NegativeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        NegativeKind::ALL
            .into_iter()
            .find(|k| k.to_string() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown negative control {s:?}")))
    }
}

pub fn negative(kind: NegativeKind) -> Result<MetricComplex> {
    match kind {
        NegativeKind::Petersen => petersen(Angle::pi_frac(1, 3)).to_complex(),
        NegativeKind::K4 => complete_graph(4, Angle::pi_frac(2, 3)).to_complex(),
        NegativeKind::ShortLune => short_lune(),
        NegativeKind::PuncturedOctahedron => {
            let o = octahedron();
            let keep: Vec<usize> = (1..o.top_cells().len()).collect();
            o.subcomplex(&keep)
        }
        NegativeKind::PerturbedA2Window => perturbed_window("~A2", 3, 0.01),
    }
}

pub fn petersen(len: Angle) -> MetricGraph {
    let names = (0..10).map(|i| format!("v{i}")).collect();
    let mut edges = vec![];
    for i in 0..5 {
        edges.push(GraphEdge { a: i, b: (i + 1) % 5, len });
        edges.push(GraphEdge { a: i, b: i + 5, len });
        edges.push(GraphEdge { a: 5 + i, b: 5 + (i + 2) % 5, len });
    }
    MetricGraph::new(names, edges).expect("petersen")
}

pub fn complete_graph(n: usize, len: Angle) -> MetricGraph {
    let names = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = vec![];
    for a in 0..n {
        for b in a + 1..n {
            edges.push(GraphEdge { a, b, len });
        }
    }
    MetricGraph::new(names, edges).expect("complete graph")
}

/// Three right-angled lunes glued cyclically along their sides: a sphere
/// whose two poles have total angle `3π/2`.
fn short_lune() -> Result<MetricComplex> {
    let tri = MetricGraph::from_named_edges(&[
        ("a", "b", Angle::HALF_PI),
        ("b", "c", Angle::HALF_PI),
        ("c", "a", Angle::HALF_PI),
    ])?;
    MetricComplex::sphere0("n", "s").join(&tri.to_complex()?)
}

/// `S⁰ * S⁰ * S⁰` with all edges `π/2`.
pub fn octahedron() -> MetricComplex {
    let s = MetricComplex::sphere0;
    s("x+", "x-").join(&s("y+", "y-")).and_then(|c| c.join(&s("z+", "z-"))).expect("octahedron")
}

/// `k` arcs of length `π` between two poles, each subdivided at its
/// midpoint.
pub fn theta(k: usize) -> Result<MetricComplex> {
    let names: Vec<String> = (0..k).map(|i| format!("m{i}")).collect();
    MetricComplex::sphere0("n", "s").join(&MetricComplex::discrete(&names)?)
}

/// `S⁰ * g`.
pub fn suspension_of(g: &MetricGraph) -> Result<MetricComplex> {
    MetricComplex::sphere0("N", "S").join(&g.to_complex()?)
}

/// Triangulated Coxeter complex of a named spherical type.
pub fn coxeter_complex(name: &str) -> Result<MetricComplex> {
    Ok(CoxeterMatrix::named(name)?.coxeter_complex()?.complex)
}

/// Window of a named Euclidean type, with boundary and coordinates.
pub fn euclidean_window(name: &str, radius: usize) -> Result<MetricComplex> {
    Ok(CoxeterMatrix::named(name)?.euclidean_window(radius)?.complex)
}

/// A window with one edge at the base vertex lengthened by `rel`.
pub fn perturbed_window(name: &str, radius: usize, rel: f64) -> Result<MetricComplex> {
    let c = euclidean_window(name, radius)?;
    let o = c.require_vertex("s0@e")?;
    let nb = c.neighbors(o)[0];
    let mut lengths = c.lengths().clone();
    let len = lengths.get_mut(&edge_key(o, nb)).expect("edge");
    *len = Angle::Approx(len.radians() * (1.0 + rel));
    let p = MetricComplex::new(Geometry::Euclidean, c.dimension(), c.vertex_names().to_vec(), c.top_cells().to_vec(), lengths)?;
    match c.declared_boundary() {
        Some(b) => p.with_boundary(b.to_vec()),
        None => Ok(p),
    }
}

/// Every named example the generator command knows, by name.
pub fn named(name: &str) -> Result<MetricComplex> {
    let third = Angle::pi_frac(1, 3);
    match name {
        "octahedron" => Ok(octahedron()),
        "theta" => theta(3),
        "heawood" => rank2_building(Rank2Kind::ProjectivePlane { q: 2 }, third)?.to_complex(),
        "tutte-coxeter" => {
            rank2_building(Rank2Kind::GeneralizedQuadrangle { q: 2 }, Angle::pi_frac(1, 4))?.to_complex()
        }
        "k33" => rank2_building(Rank2Kind::CompleteBipartite { s: 3, t: 3 }, Angle::HALF_PI)?.to_complex(),
        "suspended-heawood" => suspension_of(&rank2_building(Rank2Kind::ProjectivePlane { q: 2 }, third)?),
        other => match other.parse::<NegativeKind>() {
            Ok(k) => negative(k),
            Err(_) => Err(Error::Parse(format!("unknown example {other:?}"))),
        },
    }
}

pub const NAMED: [&str; 11] = [
    "octahedron",
    "theta",
    "heawood",
    "tutte-coxeter",
    "k33",
    "suspended-heawood",
    "petersen",
    "k4",
    "short-lune",
    "punctured-octahedron",
    "perturbed-a2-window",
];
