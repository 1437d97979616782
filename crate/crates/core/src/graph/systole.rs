use std::cmp::Ordering;

use serde::Serialize;

use super::MetricGraph;
use crate::angle::Angle;

/// Shortest injective cycle. `length` is `None` for forests.
#[derive(Clone, Debug, Serialize)]
pub struct Systole {
    pub length: Option<Angle>,
    /// Edge ids of a shortest cycle, in traversal order.
    pub cycle_edges: Vec<usize>,
    /// Vertices of that cycle, in traversal order (not repeated).
    pub cycle_vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cat1Verdict {
    pub cat1: bool,
    pub systole: Systole,
}

impl MetricGraph {
    /// For every edge `e = (u, v)` the shortest cycle through `e` is `e` plus
    /// a shortest `u`–`v` path avoiding `e`; the minimum over edges is the
    /// systole.
    pub fn systole(&self) -> Systole {
        let mut best: Option<(Angle, usize, Vec<usize>)> = None;
        for (e, edge) in self.edges.iter().enumerate() {
            let sp = self.dijkstra(edge.a, Some(e));
            let Some(d) = sp.dist[edge.b] else { continue };
            let len = d + edge.len;
            if best
                .as_ref()
                .is_none_or(|(b, _, _)| len.cmp_tol(b) == Ordering::Less)
            {
                best = Some((len, e, sp.path_edges(edge.b)));
            }
        }
        let Some((len, e, path)) = best else {
            return Systole { length: None, cycle_edges: vec![], cycle_vertices: vec![] };
        };
        let start = self.edges[e].a;
        let mut edges = path;
        edges.push(e);
        let mut vertices = vec![start];
        let mut cur = start;
        for &f in &edges[..edges.len() - 1] {
            cur = self.edges[f].other(cur);
            vertices.push(cur);
        }
        Systole { length: Some(len), cycle_edges: edges, cycle_vertices: vertices }
    }

    /// CAT(1) for graphs: no circuit shorter than `2π`.
    pub fn cat1(&self) -> Cat1Verdict {
        let systole = self.systole();
        let cat1 = systole
            .length
            .is_none_or(|l| l.cmp_tol(&Angle::TWO_PI) != Ordering::Less);
        Cat1Verdict { cat1, systole }
    }
}
