use std::cmp::Ordering;

use serde::Serialize;

use super::{GraphPoint, MetricGraph};
use crate::angle::Angle;

#[derive(Clone, Debug, Serialize)]
pub struct Diameter {
    pub value: Angle,
    pub witness: (GraphPoint, GraphPoint),
}

/// `c + α·t + β·s` with `α, β ∈ {-1, 0, 1}`.
#[derive(Clone, Copy, Debug)]
struct Affine {
    c: Angle,
    a: i64,
    b: i64,
}

impl Affine {
    fn eval(&self, t: Angle, s: Angle) -> Angle {
        self.c + t.scale(self.a, 1) + s.scale(self.b, 1)
    }
}

/// Line `a·t + b·s + c = 0`.
#[derive(Clone, Copy, Debug)]
struct Line {
    a: i64,
    b: i64,
    c: Angle,
}

fn intersect(l1: &Line, l2: &Line) -> Option<(Angle, Angle)> {
    let det = l1.a * l2.b - l2.a * l1.b;
    if det == 0 {
        return None;
    }
    let t = l2.c.scale(l1.b, det) - l1.c.scale(l2.b, det);
    let s = l1.c.scale(l2.a, det) - l2.c.scale(l1.a, det);
    Some((t, s))
}

fn within(x: Angle, hi: Angle) -> Option<Angle> {
    match (x.cmp_tol(&Angle::ZERO), x.cmp_tol(&hi)) {
        (Ordering::Less, _) | (_, Ordering::Greater) => None,
        (Ordering::Equal, _) => Some(Angle::ZERO),
        (_, Ordering::Equal) => Some(hi),
        _ => Some(x),
    }
}

impl MetricGraph {
    /// Exact supremum of `d(x, y)` over all points, with a witness pair.
    /// `None` if the graph is disconnected or has no vertices.
    pub fn diameter(&self) -> Option<Diameter> {
        if self.vertex_count() == 0 || !self.is_connected() {
            return None;
        }
        let dist = self.vertex_distances();
        let d = |u: usize, v: usize| dist[u][v].expect("connected");
        let mut best = Diameter {
            value: Angle::ZERO,
            witness: (GraphPoint::vertex(0), GraphPoint::vertex(0)),
        };
        for u in 0..self.vertex_count() {
            for v in u..self.vertex_count() {
                if d(u, v).cmp_tol(&best.value) == Ordering::Greater {
                    best.value = d(u, v);
                    best.witness = (GraphPoint::vertex(u), GraphPoint::vertex(v));
                }
            }
        }
        for i in 0..self.edge_count() {
            for j in i..self.edge_count() {
                self.edge_pair_max(i, j, &d, &mut best);
            }
        }
        Some(best)
    }

    fn edge_pair_max(
        &self,
        i: usize,
        j: usize,
        d: &dyn Fn(usize, usize) -> Angle,
        best: &mut Diameter,
    ) {
        let (e1, e2) = (self.edges[i], self.edges[j]);
        let (l1, l2) = (e1.len, e2.len);
        let routes = [
            Affine { c: d(e1.a, e2.a), a: 1, b: 1 },
            Affine { c: d(e1.a, e2.b) + l2, a: 1, b: -1 },
            Affine { c: d(e1.b, e2.a) + l1, a: -1, b: 1 },
            Affine { c: d(e1.b, e2.b) + l1 + l2, a: -1, b: -1 },
        ];
        let corners = [
            (Angle::ZERO, Angle::ZERO),
            (Angle::ZERO, l2),
            (l1, Angle::ZERO),
            (l1, l2),
        ];
        // min over routes of the route's max is an upper bound for the pair.
        let bound = routes
            .iter()
            .map(|f| {
                corners
                    .iter()
                    .map(|&(t, s)| f.eval(t, s))
                    .fold(Angle::ZERO, Angle::max)
            })
            .fold(None, |acc: Option<Angle>, x| Some(acc.map_or(x, |a| a.min(x))))
            .expect("four routes");
        if bound.cmp_tol(&best.value) != Ordering::Greater {
            return;
        }
        let same = i == j;
        let mut terms: Vec<Affine> = routes.to_vec();
        if same {
            terms.push(Affine { c: Angle::ZERO, a: 1, b: -1 });
            terms.push(Affine { c: Angle::ZERO, a: -1, b: 1 });
        }
        let mut lines = vec![
            Line { a: 1, b: 0, c: Angle::ZERO },
            Line { a: 1, b: 0, c: -l1 },
            Line { a: 0, b: 1, c: Angle::ZERO },
            Line { a: 0, b: 1, c: -l2 },
        ];
        for x in 0..terms.len() {
            for y in x + 1..terms.len() {
                let (f, g) = (terms[x], terms[y]);
                if f.a == g.a && f.b == g.b {
                    continue;
                }
                lines.push(Line { a: f.a - g.a, b: f.b - g.b, c: f.c - g.c });
            }
        }
        let value = |t: Angle, s: Angle| {
            let mut m = routes[0].eval(t, s);
            for f in &routes[1..] {
                m = m.min(f.eval(t, s));
            }
            if same {
                let diff = t - s;
                let abs = if diff.cmp_tol(&Angle::ZERO) == Ordering::Less { -diff } else { diff };
                m = m.min(abs);
            }
            m
        };
        for x in 0..lines.len() {
            for y in x + 1..lines.len() {
                let Some((t, s)) = intersect(&lines[x], &lines[y]) else {
                    continue;
                };
                let (Some(t), Some(s)) = (within(t, l1), within(s, l2)) else {
                    continue;
                };
                let v = value(t, s);
                if v.cmp_tol(&best.value) == Ordering::Greater {
                    best.value = v;
                    best.witness = (
                        self.point(i, t).expect("in range"),
                        self.point(j, s).expect("in range"),
                    );
                }
            }
        }
    }
}
