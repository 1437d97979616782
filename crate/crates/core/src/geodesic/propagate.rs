use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{extend_geodesic, GeodesicLab, LocalGeodesic, Space, ZERO_TOL};
use crate::budget::Budgets;
use crate::complex::MetricComplex;
use crate::error::{Error, Result};
use crate::graph::MetricGraph;

/// Initial directions per wedge.
const WEDGE_SAMPLES: usize = 8;

/// A 2-sphere swept out by the geodesics from `x` to `y` that leave `x`
/// through a circle of its link.
#[derive(Clone, Debug, Serialize)]
pub struct PropagatedApartment {
    pub cells: Vec<Vec<String>>,
    pub euler: i64,
    pub verified: bool,
    pub issues: Vec<String>,
    pub wedges: usize,
    pub directions: usize,
    /// The direction budget ran out before all wedges were resolved.
    pub overflow: bool,
    #[serde(skip)]
    pub complex: MetricComplex,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PropagationFailure {
    /// The given link vertices do not form a circle of length `2π`.
    BadCycle { reason: String },
    /// `y` is `x` or adjacent to it, so cannot be at distance `π`.
    NotAntipodal { vertex: String, reason: String },
    /// No branch from this direction ends at `y` at length `π`.
    Unreached { direction: String, endpoints: Vec<String> },
}

/// Sweeps the geodesics of length `π` from `x` to `y` over every
/// direction of `cycle` (a closed path of link vertices of `x`) and
/// collects the cells they cross.
pub fn propagate_apartment(
    lab: &GeodesicLab,
    x: &str,
    cycle: &[String],
    y: &str,
    budgets: &Budgets,
) -> Result<std::result::Result<PropagatedApartment, PropagationFailure>> {
    let c = lab.complex();
    let Space::Surface(_) = &lab.space else {
        return Err(Error::Precondition("apartment propagation needs a 2-dimensional complex".into()));
    };
    let xv = c.require_vertex(x)?;
    let yv = c.require_vertex(y)?;
    if xv == yv {
        return Ok(Err(PropagationFailure::NotAntipodal { vertex: y.into(), reason: "equals the start".into() }));
    }
    if c.neighbors(xv).contains(&yv) {
        return Ok(Err(PropagationFailure::NotAntipodal {
            vertex: y.into(),
            reason: format!("adjacent to {x} at distance {}", c.length(xv, yv).expect("edge")),
        }));
    }
    let g = lab.link(x)?.expect("surface");
    let wedges = match cycle_edges(g, cycle) {
        Ok(w) => w,
        Err(reason) => return Ok(Err(PropagationFailure::BadCycle { reason })),
    };

    let mut cells: BTreeSet<usize> = BTreeSet::new();
    let mut directions = 0;
    let mut overflow = false;
    for &edge in &wedges {
        let len = g.edge(edge).len.radians();
        let mut samples: BTreeMap<u64, (f64, Vec<usize>)> = BTreeMap::new();
        let mut pending: Vec<f64> =
            (1..=WEDGE_SAMPLES).map(|i| len * i as f64 / (WEDGE_SAMPLES + 1) as f64).collect();
        while let Some(t) = pending.pop() {
            if directions >= budgets.wedges {
                overflow = true;
                break;
            }
            directions += 1;
            match sweep(lab, x, &format!("e:{edge}@{t:.17}"), y, budgets)? {
                Ok(seq) => {
                    samples.insert(t.to_bits(), (t, seq));
                }
                Err(f) => return Ok(Err(f)),
            }
            if pending.is_empty() {
                // bisect between neighbors whose cell sequences differ
                let mut sorted: Vec<&(f64, Vec<usize>)> = samples.values().collect();
                sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
                for w in sorted.windows(2) {
                    if w[0].1 != w[1].1 && w[1].0 - w[0].0 > len * 2f64.powi(-(budgets.bisection_depth as i32)) {
                        pending.push((w[0].0 + w[1].0) / 2.0);
                    }
                }
            }
        }
        for (_, seq) in samples.into_values() {
            cells.extend(seq);
        }
    }

    let names: Vec<Vec<String>> = cells.iter().map(|&k| lab.cell_names(k)).collect();
    let sub = c.subcomplex(&cells.iter().copied().collect::<Vec<_>>())?;
    let issues = sphere_issues(&sub)?;
    Ok(Ok(PropagatedApartment {
        euler: sub.euler_characteristic(),
        verified: issues.is_empty() && !overflow,
        issues,
        cells: names,
        wedges: wedges.len(),
        directions,
        overflow,
        complex: sub,
    }))
}

/// Link edges joining consecutive cycle vertices, checking the total is `2π`.
fn cycle_edges(g: &MetricGraph, cycle: &[String]) -> std::result::Result<Vec<usize>, String> {
    if cycle.len() < 2 {
        return Err("cycle needs at least two vertices".into());
    }
    let ids: Vec<usize> = cycle
        .iter()
        .map(|n| g.vertex_by_name(n).ok_or_else(|| format!("{n} is not in the link")))
        .collect::<std::result::Result<_, _>>()?;
    if ids.iter().collect::<BTreeSet<_>>().len() != ids.len() {
        return Err("cycle repeats a vertex".into());
    }
    let mut edges = vec![];
    let mut used = BTreeSet::new();
    for i in 0..ids.len() {
        let (a, b) = (ids[i], ids[(i + 1) % ids.len()]);
        let e = g
            .incident(a)
            .iter()
            .find(|&&(e, n)| n == b && !used.contains(&e))
            .map(|&(e, _)| e)
            .ok_or_else(|| format!("{} and {} are not adjacent in the link", cycle[i], cycle[(i + 1) % ids.len()]))?;
        used.insert(e);
        edges.push(e);
    }
    let total: f64 = edges.iter().map(|&e| g.edge(e).len.radians()).sum();
    if (total - 2.0 * std::f64::consts::PI).abs() > 1e-9 {
        return Err(format!("cycle has length {total}, not 2π"));
    }
    Ok(edges)
}

/// Cells crossed by the branch from `x` in direction `dir` that ends at
/// `y` at length `π`.
fn sweep(
    lab: &GeodesicLab,
    x: &str,
    dir: &str,
    y: &str,
    budgets: &Budgets,
) -> Result<std::result::Result<Vec<usize>, PropagationFailure>> {
    let start = lab.start(x, dir)?;
    let ext = extend_geodesic(lab, &start, std::f64::consts::PI, budgets);
    let hit = ext.geodesics.iter().find(|g| {
        g.end_vertex.as_deref() == Some(y) && (g.length - std::f64::consts::PI).abs() <= 1e-7
    });
    Ok(match hit {
        Some(g) => Ok(cells_of(g)),
        None => Err(PropagationFailure::Unreached {
            direction: dir.into(),
            endpoints: ext
                .geodesics
                .iter()
                .map(|g| g.end_vertex.clone().unwrap_or_else(|| "interior".into()))
                .collect(),
        }),
    })
}

fn cells_of(g: &LocalGeodesic) -> Vec<usize> {
    g.segments
        .iter()
        .filter(|s| s.length > ZERO_TOL)
        .filter_map(|s| s.surface_arc().map(|(k, _, _)| k))
        .collect()
}

/// Checks a surface is a closed 2-sphere: every edge in two cells, Euler
/// characteristic 2, every vertex link a circle of length `2π`.
fn sphere_issues(s: &MetricComplex) -> Result<Vec<String>> {
    let mut issues = vec![];
    for f in s.faces(1) {
        let k = s.cells_containing(&f).len();
        if k != 2 {
            issues.push(format!("edge {}-{} lies in {k} cells", s.name(f[0]), s.name(f[1])));
        }
    }
    let chi = s.euler_characteristic();
    if chi != 2 {
        issues.push(format!("euler characteristic {chi}"));
    }
    for v in 0..s.vertex_count() {
        let lk = MetricGraph::from_complex(&s.vertex_link(s.name(v))?)?;
        let circle = (0..lk.vertex_count()).all(|w| lk.valence(w) == 2)
            && lk.distances_from(&crate::graph::GraphPoint::vertex(0)).iter().all(Option::is_some);
        let total = lk.total_length().radians();
        if !circle || (total - 2.0 * std::f64::consts::PI).abs() > 1e-9 {
            issues.push(format!("link of {} is not a circle of length 2π", s.name(v)));
        }
    }
    Ok(issues)
}
