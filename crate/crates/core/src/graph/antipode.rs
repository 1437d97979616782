use std::cmp::Ordering;

use serde::Serialize;

use super::{GraphPoint, MetricGraph};
use crate::angle::Angle;

/// Closed interval `[from, to]` of offsets on one edge.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuperlevelInterval {
    pub edge: usize,
    pub from: Angle,
    pub to: Angle,
}

impl SuperlevelInterval {
    pub fn is_degenerate(&self) -> bool {
        self.from.approx_eq(&self.to)
    }
}

/// `{q : d(p, q) ≥ π}`.
#[derive(Clone, Debug, Serialize)]
pub struct AntipodeSet {
    pub intervals: Vec<SuperlevelInterval>,
    /// Degenerate intervals as points, deduplicated (vertices appear once).
    pub points: Vec<GraphPoint>,
    pub discrete: bool,
    pub nonempty: bool,
}

/// `c + σ·s` for `σ ∈ {-1, 1}`.
#[derive(Clone, Copy)]
struct Piece {
    c: Angle,
    slope: i64,
}

impl Piece {
    fn eval(&self, s: Angle) -> Angle {
        self.c + s.scale(self.slope, 1)
    }
}

impl MetricGraph {
    /// Exact antipode set of `p`, computed edge by edge from the piecewise
    /// linear distance function. Disconnected parts are ignored.
    pub fn antipode_set(&self, p: &GraphPoint) -> AntipodeSet {
        self.superlevel_set(p, Angle::PI)
    }

    /// `{q : d(p, q) ≥ level}` as closed intervals per edge.
    pub fn superlevel_set(&self, p: &GraphPoint, level: Angle) -> AntipodeSet {
        let dp = self.distances_from(p);
        let mut intervals = vec![];
        for (i, e) in self.edges.iter().enumerate() {
            let (Some(da), Some(db)) = (dp[e.a], dp[e.b]) else { continue };
            let len = e.len;
            let mut pieces = vec![Piece { c: da, slope: 1 }, Piece { c: db + len, slope: -1 }];
            let mut direct_at = None;
            if let GraphPoint::Edge { edge, offset } = *p {
                if edge == i {
                    pieces.push(Piece { c: offset, slope: -1 });
                    pieces.push(Piece { c: -offset, slope: 1 });
                    direct_at = Some(offset);
                }
            }
            let f = |s: Angle| {
                let mut m = pieces[0].eval(s).min(pieces[1].eval(s));
                if let Some(t) = direct_at {
                    let d = s - t;
                    m = m.min(if d.cmp_tol(&Angle::ZERO) == Ordering::Less { -d } else { d });
                }
                m
            };
            let mut cand = vec![Angle::ZERO, len];
            if let Some(t) = direct_at {
                cand.push(t);
            }
            for x in 0..pieces.len() {
                // level crossings
                cand.push((level - pieces[x].c).scale(pieces[x].slope, 1));
                for y in x + 1..pieces.len() {
                    let (u, v) = (pieces[x], pieces[y]);
                    if u.slope != v.slope {
                        cand.push((v.c - u.c).scale(1, u.slope - v.slope));
                    }
                }
            }
            let mut cand: Vec<Angle> = cand
                .into_iter()
                .filter(|s| {
                    s.cmp_tol(&Angle::ZERO) != Ordering::Less && s.cmp_tol(&len) != Ordering::Greater
                })
                .collect();
            cand.sort_by(|a, b| a.cmp_tol(b));
            cand.dedup_by(|a, b| a.approx_eq(b));
            let high: Vec<bool> = cand
                .iter()
                .map(|&s| f(s).cmp_tol(&level) != Ordering::Less)
                .collect();
            let mut k = 0;
            while k < cand.len() {
                if !high[k] {
                    k += 1;
                    continue;
                }
                let from = cand[k];
                while k + 1 < cand.len() && high[k + 1] {
                    k += 1;
                }
                intervals.push(SuperlevelInterval { edge: i, from, to: cand[k] });
                k += 1;
            }
        }
        let mut points: Vec<GraphPoint> = vec![];
        for iv in intervals.iter().filter(|iv| iv.is_degenerate()) {
            let q = self.point(iv.edge, iv.from).expect("in range");
            if !points.contains(&q) {
                points.push(q);
            }
        }
        let discrete = intervals.iter().all(|iv| iv.is_degenerate());
        AntipodeSet { nonempty: !intervals.is_empty(), intervals, points, discrete }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn circle_has_single_opposite_point() {
        let g = cycle(6, Angle::pi_frac(1, 3));
        let a = g.antipode_set(&GraphPoint::vertex(0));
        assert!(a.discrete && a.nonempty);
        assert_eq!(a.points, vec![GraphPoint::vertex(3)]);
        let p = g.point(0, Angle::pi_frac(1, 6)).unwrap();
        let a = g.antipode_set(&p);
        assert_eq!(a.points.len(), 1);
        assert_eq!(a.points[0], GraphPoint::Edge { edge: 3, offset: Angle::pi_frac(1, 6) });
    }

    #[test]
    fn heawood_vertex_antipodes_are_the_four_far_lines() {
        let g = heawood();
        let a = g.antipode_set(&GraphPoint::vertex(0));
        assert!(a.discrete && a.nonempty);
        assert_eq!(a.points.len(), 4);
        assert!(a
            .points
            .iter()
            .all(|p| matches!(p, GraphPoint::Vertex { vertex } if *vertex >= 7)));
    }

    #[test]
    fn petersen_vertex_has_no_antipodes() {
        let g = petersen(Angle::pi_frac(1, 3));
        let a = g.antipode_set(&GraphPoint::vertex(0));
        assert!(!a.nonempty);
        assert!(a.discrete);
    }

    #[test]
    fn long_edges_give_nondiscrete_sets() {
        // Far half of a single 3π/2 edge.
        let g = MetricGraph::from_named_edges(&[("a", "b", Angle::pi_frac(3, 2))]).unwrap();
        let a = g.antipode_set(&GraphPoint::vertex(0));
        assert!(!a.discrete);
        assert_eq!(a.intervals.len(), 1);
        assert_eq!(a.intervals[0].from.as_pi_frac(), Some((1, 1)));
    }
}
