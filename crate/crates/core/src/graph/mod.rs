//! Exact metric analysis of one-dimensional complexes.
//!
//! A [`MetricGraph`] allows multi-edges (but no self-loops) so that
//! valence-2 suppression can be expressed without subdividing. Points of
//! the graph are vertices or interior edge points ([`GraphPoint`]);
//! distances between arbitrary points are exact whenever all edge lengths
//! are exact multiples of π.

mod antipode;
mod diameter;
mod suppress;
mod systole;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::angle::Angle;
use crate::complex::{Geometry, MetricComplex};
use crate::error::{Error, Result};

pub use antipode::{AntipodeSet, SuperlevelInterval};
pub use diameter::Diameter;
pub use suppress::{Chain, Suppression};
pub use systole::{Cat1Verdict, Systole};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub len: Angle,
}

impl GraphEdge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// A point of a metric graph: a vertex, or a point at distance `offset`
/// from `edges[edge].a` strictly inside the edge.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphPoint {
    Vertex { vertex: usize },
    Edge { edge: usize, offset: Angle },
}

impl GraphPoint {
    pub fn vertex(v: usize) -> Self {
        GraphPoint::Vertex { vertex: v }
    }
}

#[derive(Clone, Debug)]
pub struct MetricGraph {
    names: Vec<String>,
    edges: Vec<GraphEdge>,
    adj: Vec<Vec<(usize, usize)>>,
}

/// Single-source shortest paths over vertices.
#[derive(Clone, Debug)]
pub(crate) struct ShortestPaths {
    pub dist: Vec<Option<Angle>>,
    /// `(edge, previous vertex)` on a shortest path.
    pub pred: Vec<Option<(usize, usize)>>,
}

impl ShortestPaths {
    /// Edge ids along the recorded path from the source to `v`.
    pub fn path_edges(&self, v: usize) -> Vec<usize> {
        let mut out = vec![];
        let mut cur = v;
        while let Some((e, p)) = self.pred[cur] {
            out.push(e);
            cur = p;
        }
        out.reverse();
        out
    }
}

impl MetricGraph {
    pub fn new(names: Vec<String>, edges: Vec<GraphEdge>) -> Result<Self> {
        let n = names.len();
        let mut adj = vec![vec![]; n];
        for (i, e) in edges.iter().enumerate() {
            if e.a >= n || e.b >= n {
                return Err(Error::Malformed(format!("edge {i} has a dangling endpoint")));
            }
            if e.a == e.b {
                return Err(Error::Malformed(format!(
                    "self-loop at {}; subdivide it",
                    names[e.a]
                )));
            }
            if !e.len.is_positive() {
                return Err(Error::Malformed(format!("edge {i} has non-positive length")));
            }
            adj[e.a].push((i, e.b));
            adj[e.b].push((i, e.a));
        }
        Ok(MetricGraph { names, edges, adj })
    }

    /// Builds a graph with named vertices from `(u, v, length)` triples.
    pub fn from_named_edges(edges: &[(&str, &str, Angle)]) -> Result<Self> {
        let mut names: Vec<String> = vec![];
        let mut idx: BTreeMap<String, usize> = BTreeMap::new();
        let mut id = |s: &str, names: &mut Vec<String>| {
            *idx.entry(s.to_string()).or_insert_with(|| {
                names.push(s.to_string());
                names.len() - 1
            })
        };
        let mut es = vec![];
        for &(a, b, len) in edges {
            let (a, b) = (id(a, &mut names), id(b, &mut names));
            es.push(GraphEdge { a, b, len });
        }
        MetricGraph::new(names, es)
    }

    /// The 1-skeleton of a complex of dimension ≤ 1.
    pub fn from_complex(c: &MetricComplex) -> Result<Self> {
        if c.dimension() > 1 {
            return Err(Error::Precondition(format!(
                "expected a complex of dimension <= 1, got {}",
                c.dimension()
            )));
        }
        let edges = c
            .edges()
            .map(|((a, b), len)| GraphEdge { a, b, len })
            .collect();
        MetricGraph::new(c.vertex_names().to_vec(), edges)
    }

    /// The simplicial complex of this graph (fails on multi-edges).
    pub fn to_complex(&self) -> Result<MetricComplex> {
        let mut lengths = BTreeMap::new();
        let mut cells = vec![];
        for e in &self.edges {
            let key = crate::complex::edge_key(e.a, e.b);
            if lengths.insert(key, e.len).is_some() {
                return Err(Error::Precondition(format!(
                    "multi-edge between {} and {} is not simplicial",
                    self.names[e.a], self.names[e.b]
                )));
            }
            cells.push(vec![e.a, e.b]);
        }
        let dim = if self.edges.is_empty() { 0 } else { 1 };
        if dim == 0 {
            cells = (0..self.names.len()).map(|v| vec![v]).collect();
        }
        MetricComplex::new(Geometry::Spherical, dim, self.names.clone(), cells, lengths)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &GraphEdge {
        &self.edges[e]
    }

    /// `(edge, neighbor)` pairs at `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_valence(&self) -> Option<(usize, usize)> {
        (0..self.vertex_count())
            .map(|v| (self.valence(v), v))
            .min()
            .map(|(d, v)| (v, d))
    }

    pub fn total_length(&self) -> Angle {
        self.edges.iter().map(|e| e.len).sum()
    }

    pub fn min_edge_length(&self) -> Option<Angle> {
        self.edges
            .iter()
            .map(|e| e.len)
            .min_by(|a, b| a.cmp_tol(b))
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = vec![];
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for &(_, w) in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Normalized point at distance `offset` from `edges[edge].a`.
    pub fn point(&self, edge: usize, offset: Angle) -> Result<GraphPoint> {
        let e = self
            .edges
            .get(edge)
            .ok_or_else(|| Error::Malformed(format!("edge {edge} out of range")))?;
        match (offset.cmp_tol(&Angle::ZERO), offset.cmp_tol(&e.len)) {
            (Ordering::Less, _) | (_, Ordering::Greater) => Err(Error::Malformed(format!(
                "offset {offset} outside edge {edge} of length {}",
                e.len
            ))),
            (Ordering::Equal, _) => Ok(GraphPoint::vertex(e.a)),
            (_, Ordering::Equal) => Ok(GraphPoint::vertex(e.b)),
            _ => Ok(GraphPoint::Edge { edge, offset }),
        }
    }

    /// Vertices reachable from `p` with the extra distance needed to reach them
    /// without leaving `p`'s cell.
    pub(crate) fn anchors(&self, p: &GraphPoint) -> Vec<(usize, Angle)> {
        match *p {
            GraphPoint::Vertex { vertex } => vec![(vertex, Angle::ZERO)],
            GraphPoint::Edge { edge, offset } => {
                let e = &self.edges[edge];
                vec![(e.a, offset), (e.b, e.len - offset)]
            }
        }
    }

    /// Dijkstra from `source`, optionally ignoring one edge. Quadratic in the
    /// vertex count; ties are broken by vertex index so results are
    /// deterministic.
    pub(crate) fn dijkstra(&self, source: usize, skip_edge: Option<usize>) -> ShortestPaths {
        let n = self.vertex_count();
        let mut dist: Vec<Option<Angle>> = vec![None; n];
        let mut pred = vec![None; n];
        let mut done = vec![false; n];
        dist[source] = Some(Angle::ZERO);
        loop {
            let mut best: Option<(usize, Angle)> = None;
            for v in 0..n {
                if done[v] {
                    continue;
                }
                if let Some(d) = dist[v] {
                    if best.is_none_or(|(_, bd)| d.cmp_tol(&bd) == Ordering::Less) {
                        best = Some((v, d));
                    }
                }
            }
            let Some((u, du)) = best else { break };
            done[u] = true;
            for &(e, w) in &self.adj[u] {
                if Some(e) == skip_edge || done[w] {
                    continue;
                }
                let nd = du + self.edges[e].len;
                if dist[w].is_none_or(|dw| nd.cmp_tol(&dw) == Ordering::Less) {
                    dist[w] = Some(nd);
                    pred[w] = Some((e, u));
                }
            }
        }
        ShortestPaths { dist, pred }
    }

    /// All-pairs vertex distances (`None` = different components).
    pub fn vertex_distances(&self) -> Vec<Vec<Option<Angle>>> {
        (0..self.vertex_count())
            .map(|s| self.dijkstra(s, None).dist)
            .collect()
    }

    /// Distances from an arbitrary point to every vertex.
    pub fn distances_from(&self, p: &GraphPoint) -> Vec<Option<Angle>> {
        let n = self.vertex_count();
        let mut out: Vec<Option<Angle>> = vec![None; n];
        for (v, c) in self.anchors(p) {
            let sp = self.dijkstra(v, None);
            for w in 0..n {
                if let Some(d) = sp.dist[w] {
                    let cand = c + d;
                    if out[w].is_none_or(|o| cand.cmp_tol(&o) == Ordering::Less) {
                        out[w] = Some(cand);
                    }
                }
            }
        }
        out
    }

    /// Exact distance between two points; `None` when they lie in different
    /// components.
    pub fn distance(&self, p: &GraphPoint, q: &GraphPoint) -> Option<Angle> {
        let dp = self.distances_from(p);
        self.distance_with(p, &dp, q)
    }

    /// Distance from `p` to `q` given `p`'s vertex distances.
    pub(crate) fn distance_with(
        &self,
        p: &GraphPoint,
        dp: &[Option<Angle>],
        q: &GraphPoint,
    ) -> Option<Angle> {
        let mut best: Option<Angle> = None;
        let mut offer = |d: Angle| {
            if best.is_none_or(|b| d.cmp_tol(&b) == Ordering::Less) {
                best = Some(d);
            }
        };
        for (v, c) in self.anchors(q) {
            if let Some(d) = dp[v] {
                offer(d + c);
            }
        }
        match (p, q) {
            (
                GraphPoint::Edge { edge: e1, offset: t },
                GraphPoint::Edge { edge: e2, offset: s },
            ) if e1 == e2 => {
                let d = *t - *s;
                offer(if d.cmp_tol(&Angle::ZERO) == Ordering::Less { -d } else { d });
            }
            (GraphPoint::Vertex { vertex: a }, GraphPoint::Vertex { vertex: b }) if a == b => {
                offer(Angle::ZERO)
            }
            _ => {}
        }
        best
    }

    /// Proper 2-coloring of the vertices, if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut color = vec![usize::MAX; n];
        for s in 0..n {
            if color[s] != usize::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(_, w) in &self.adj[v] {
                    if color[w] == usize::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Renders a point for reports, e.g. `v:a` or `e:3@pi/6`.
    pub fn describe(&self, p: &GraphPoint) -> String {
        match p {
            GraphPoint::Vertex { vertex } => format!("v:{}", self.names[*vertex]),
            GraphPoint::Edge { edge, offset } => {
                let e = &self.edges[*edge];
                format!(
                    "e:{edge}({}-{})@{offset}",
                    self.names[e.a], self.names[e.b]
                )
            }
        }
    }

    /// Parses `e:t` (edge index and offset from its first endpoint) or a
    /// vertex name.
    pub fn parse_point(&self, s: &str) -> Result<GraphPoint> {
        if let Some((e, t)) = s.split_once(':') {
            if let Ok(e) = e.trim().parse::<usize>() {
                let t: Angle = t.parse()?;
                return self.point(e, t);
            }
        }
        self.vertex_by_name(s)
            .map(GraphPoint::vertex)
            .ok_or_else(|| Error::UnknownVertex(s.to_string()))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn cycle(n: usize, len: Angle) -> MetricGraph {
        let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let edges = (0..n)
            .map(|i| GraphEdge {
                a: i,
                b: (i + 1) % n,
                len,
            })
            .collect();
        MetricGraph::new(names, edges).unwrap()
    }

    pub fn complete_bipartite(s: usize, t: usize, len: Angle) -> MetricGraph {
        let mut names: Vec<String> = (0..s).map(|i| format!("a{i}")).collect();
        names.extend((0..t).map(|j| format!("b{j}")));
        let mut edges = vec![];
        for i in 0..s {
            for j in 0..t {
                edges.push(GraphEdge { a: i, b: s + j, len });
            }
        }
        MetricGraph::new(names, edges).unwrap()
    }

    pub fn heawood() -> MetricGraph {
        let names: Vec<String> = (0..7)
            .map(|i| format!("p{i}"))
            .chain((0..7).map(|i| format!("l{i}")))
            .collect();
        let mut edges = vec![];
        for l in 0..7 {
            for d in [0, 1, 3] {
                edges.push(GraphEdge {
                    a: (l + d) % 7,
                    b: 7 + l,
                    len: Angle::pi_frac(1, 3),
                });
            }
        }
        MetricGraph::new(names, edges).unwrap()
    }

    pub fn petersen(len: Angle) -> MetricGraph {
        let names: Vec<String> = (0..10).map(|i| format!("v{i}")).collect();
        let mut edges = vec![];
        for i in 0..5 {
            edges.push(GraphEdge { a: i, b: (i + 1) % 5, len });
            edges.push(GraphEdge { a: i, b: i + 5, len });
            edges.push(GraphEdge { a: 5 + i, b: 5 + (i + 2) % 5, len });
        }
        MetricGraph::new(names, edges).unwrap()
    }

    pub fn complete(n: usize, len: Angle) -> MetricGraph {
        let names: Vec<String> = (0..n).map(|i| format!("k{i}")).collect();
        let mut edges = vec![];
        for i in 0..n {
            for j in i + 1..n {
                edges.push(GraphEdge { a: i, b: j, len });
            }
        }
        MetricGraph::new(names, edges).unwrap()
    }
}
