use serde::Serialize;

use super::{Condition, Diagnosis, Witness};
use crate::angle::Angle;
use crate::complex::MetricComplex;
use crate::error::{Error, Result};
use crate::graph::{GraphEdge, GraphPoint, MetricGraph};

/// Outcome of the discrete extension check: every direction at every
/// sampled point has a nonempty, discrete set of antipodal continuations.
#[derive(Clone, Debug, Serialize)]
pub struct DepReport {
    pub holds: bool,
    pub directions_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Diagnosis>,
}

/// Offsets sampled inside each link edge, as fractions of its length.
const EDGE_SAMPLES: [(i64, i64); 2] = [(1, 2), (1, 3)];

fn check_direction(
    g: &MetricGraph,
    p: &GraphPoint,
    at: &str,
) -> Option<Diagnosis> {
    let a = g.antipode_set(p);
    let condition = if !a.nonempty {
        Condition::DepEmpty
    } else if !a.discrete {
        Condition::DepNotDiscrete
    } else {
        return None;
    };
    Some(Diagnosis::new(condition, Witness::Direction { vertex: at.to_string(), direction: g.describe(p) }))
}

fn check_link_graph(g: &MetricGraph, at: &str, checked: &mut usize) -> Option<Diagnosis> {
    for v in 0..g.vertex_count() {
        *checked += 1;
        if let Some(d) = check_direction(g, &GraphPoint::vertex(v), at) {
            return Some(d);
        }
    }
    for (e, edge) in g.edges().iter().enumerate() {
        for (num, den) in EDGE_SAMPLES {
            *checked += 1;
            let p = g.point(e, edge.len.scale(num, den)).expect("offset inside edge");
            if let Some(d) = check_direction(g, &p, at) {
                return Some(d);
            }
        }
    }
    None
}

/// Link of an interior point of an edge lying in the given chambers:
/// the suspension of `k` points, a `K_{2,k}` with edges `π/2`.
fn edge_point_link(opposite: &[String]) -> Result<MetricGraph> {
    let mut names = vec!["+".to_string(), "-".to_string()];
    names.extend(opposite.iter().cloned());
    let half = Angle::pi_frac(1, 2);
    let edges = (0..opposite.len())
        .flat_map(|i| [GraphEdge { a: 0, b: i + 2, len: half }, GraphEdge { a: 1, b: i + 2, len: half }])
        .collect();
    MetricGraph::new(names, edges)
}

/// Checks the discrete extension property of a complex of dimension one
/// or two, at vertex links and sampled edge-interior directions.
pub fn discrete_extension_check(c: &MetricComplex) -> Result<DepReport> {
    let mut checked = 0;
    let report = |violation: Option<Diagnosis>, checked| DepReport {
        holds: violation.is_none(),
        directions_checked: checked,
        violation,
    };
    match c.dimension() {
        1 => {
            let g = MetricGraph::from_complex(c)?;
            for v in 0..g.vertex_count() {
                checked += 1;
                // the link is `valence` points at mutual distance π
                if g.valence(v) < 2 {
                    let w = Witness::Vertex { vertex: g.name(v).to_string(), valence: g.valence(v) };
                    return Ok(report(Some(Diagnosis::new(Condition::DepEmpty, w)), checked));
                }
            }
            Ok(report(None, checked))
        }
        2 => {
            for v in 0..c.vertex_count() {
                let lk = MetricGraph::from_complex(&c.vertex_link(c.name(v))?)?;
                if let Some(d) = check_link_graph(&lk, c.name(v), &mut checked) {
                    return Ok(report(Some(d), checked));
                }
            }
            for f in c.faces(1) {
                let opposite: Vec<String> = c
                    .cells_containing(&f)
                    .iter()
                    .map(|&cell| {
                        let x = c.top_cells()[cell].iter().find(|x| !f.contains(x)).expect("triangle");
                        c.name(*x).to_string()
                    })
                    .collect();
                let g = edge_point_link(&opposite)?;
                let at = format!("{}-{}", c.name(f[0]), c.name(f[1]));
                let mut samples = vec![];
                if g.vertex_count() > 2 {
                    samples.push(GraphPoint::vertex(2));
                    samples.push(g.point(0, Angle::pi_frac(1, 4))?);
                }
                samples.push(GraphPoint::vertex(0));
                for p in samples {
                    checked += 1;
                    if let Some(d) = check_direction(&g, &p, &at) {
                        return Ok(report(Some(d), checked));
                    }
                }
            }
            Ok(report(None, checked))
        }
        n => Err(Error::Precondition(format!(
            "discrete extension check needs dimension 1 or 2, got {n}"
        ))),
    }
}
