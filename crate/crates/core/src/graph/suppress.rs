use serde::Serialize;

use super::{GraphEdge, MetricGraph};
use crate::angle::Angle;

/// A maximal path through valence-2 vertices, in original ids.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Chain {
    pub edges: Vec<usize>,
    /// Vertices along the chain including both ends.
    pub vertices: Vec<usize>,
    pub length: Angle,
}

#[derive(Clone, Debug)]
pub enum Suppression {
    /// `kept[i]` is the original id of new vertex `i`; `chains[e]` is the
    /// original path of new edge `e`.
    Graph {
        graph: MetricGraph,
        kept: Vec<usize>,
        chains: Vec<Chain>,
        /// Components that are circles (all vertices of valence 2).
        circles: Vec<Chain>,
    },
    /// The whole graph is one circle.
    Circle { circumference: Angle, chain: Chain },
    /// A chain returns to its starting branch vertex.
    SelfLoop { vertex: usize, chain: Chain },
}

impl MetricGraph {
    /// Removes valence-2 vertices, concatenating their edges.
    pub fn suppress_degree2(&self) -> Suppression {
        let n = self.vertex_count();
        let branch: Vec<bool> = (0..n).map(|v| self.valence(v) != 2).collect();
        let mut used = vec![false; self.edge_count()];
        let mut chains = vec![];
        for s in (0..n).filter(|&v| branch[v]) {
            for &(e0, _) in self.incident(s) {
                if used[e0] {
                    continue;
                }
                let chain = self.walk(s, e0, &mut used);
                let end = *chain.vertices.last().expect("nonempty");
                if end == s {
                    return Suppression::SelfLoop { vertex: s, chain };
                }
                chains.push(chain);
            }
        }
        let mut circles = vec![];
        for e0 in 0..self.edge_count() {
            if !used[e0] {
                circles.push(self.walk(self.edges[e0].a, e0, &mut used));
            }
        }
        if chains.is_empty() && circles.len() == 1 && n == circles[0].vertices.len() - 1 {
            let chain = circles.pop().expect("one circle");
            return Suppression::Circle { circumference: chain.length, chain };
        }
        let kept: Vec<usize> = (0..n).filter(|&v| branch[v]).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = chains
            .iter()
            .map(|c| GraphEdge {
                a: new_id[c.vertices[0]],
                b: new_id[*c.vertices.last().expect("nonempty")],
                len: c.length,
            })
            .collect();
        let names = kept.iter().map(|&v| self.names[v].clone()).collect();
        let graph = MetricGraph::new(names, edges).expect("chains join distinct branch vertices");
        Suppression::Graph { graph, kept, chains, circles }
    }

    fn walk(&self, start: usize, e0: usize, used: &mut [bool]) -> Chain {
        let mut edges = vec![e0];
        let mut vertices = vec![start];
        let mut length = self.edges[e0].len;
        used[e0] = true;
        let mut cur = self.edges[e0].other(start);
        let mut via = e0;
        vertices.push(cur);
        while self.valence(cur) == 2 && cur != start {
            let &(next_e, next_v) = self
                .incident(cur)
                .iter()
                .find(|&&(e, _)| e != via)
                .expect("valence two");
            if used[next_e] {
                break;
            }
            used[next_e] = true;
            edges.push(next_e);
            length = length + self.edges[next_e].len;
            cur = next_v;
            via = next_e;
            vertices.push(cur);
        }
        Chain { edges, vertices, length }
    }
}
