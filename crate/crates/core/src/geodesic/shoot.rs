use serde::Serialize;

use super::{extend_geodesic, GeodesicLab, LocalGeodesic, Space};
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::graph::GraphPoint;

/// Result of a geodesic search between two vertices.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Between {
    Found { geodesic: LocalGeodesic, direction: String },
    /// No direction came within `eps_hit` of the target.
    Missed { best_miss: f64, best_direction: String, directions_tried: usize },
}

/// Geodesic from vertex `p` to vertex `q`. Graphs are handled exactly;
/// for surfaces, directions in the link of `p` are shot on a grid and the
/// best one is refined. With `dir` set only that initial direction is
/// tried, which is how antipodal pairs get a unique answer.
pub fn geodesic_between(
    lab: &GeodesicLab,
    p: &str,
    q: &str,
    dir: Option<&str>,
    budgets: &Budgets,
) -> Result<Between> {
    let c = lab.complex();
    let (pv, qv) = (c.require_vertex(p)?, c.require_vertex(q)?);
    if pv == qv {
        return Err(Error::Precondition("endpoints coincide".into()));
    }
    match &lab.space {
        Space::Graph(g) => {
            let d = g
                .distance(&GraphPoint::vertex(pv), &GraphPoint::vertex(qv))
                .ok_or_else(|| Error::Precondition(format!("{q} is not reachable from {p}")))?;
            let first = match dir {
                Some(dir) => lab.start(p, dir)?,
                None => {
                    let sp = g.dijkstra(pv, None);
                    let e = sp.path_edges(qv)[0];
                    lab.start(p, &format!("#{e}"))?
                }
            };
            let ext = extend_geodesic(lab, &first, d.radians(), budgets);
            let hit = ext
                .geodesics
                .into_iter()
                .find(|g| g.end_vertex.as_deref() == Some(q) && (g.length - d.radians()).abs() <= 1e-9);
            Ok(match hit {
                Some(geodesic) => Between::Found { direction: geodesic.start.clone(), geodesic },
                None => Between::Missed {
                    best_miss: f64::NAN,
                    best_direction: dir.unwrap_or_default().to_string(),
                    directions_tried: 1,
                },
            })
        }
        Space::Surface(s) => {
            let (g, _) = &s.links[pv];
            let dirs: Vec<String> = match dir {
                Some(d) => vec![d.to_string()],
                None => grid(g, budgets.shooting_directions),
            };
            let mut best: Option<(f64, f64, String, LocalGeodesic)> = None;
            for d in &dirs {
                let (miss, geo) = shoot(lab, p, d, q, budgets)?;
                let better = match &best {
                    None => true,
                    Some((m, l, _, _)) => miss < m - 1e-12 || (miss - m).abs() <= 1e-12 && geo.length < *l,
                };
                if better {
                    best = Some((miss, geo.length, d.clone(), geo));
                }
            }
            let (mut miss, _, mut best_dir, mut geo) = best.expect("at least one direction");
            if miss > budgets.eps_hit && dir.is_none() {
                if let Some((m, d, h)) = refine(lab, p, q, &best_dir, budgets)? {
                    if m < miss {
                        (miss, best_dir, geo) = (m, d, h);
                    }
                }
            }
            Ok(if miss <= budgets.eps_hit {
                Between::Found { geodesic: geo, direction: best_dir }
            } else {
                Between::Missed { best_miss: miss, best_direction: best_dir, directions_tried: dirs.len() }
            })
        }
    }
}

/// Link vertices plus about `n` points spread along the link edges.
fn grid(g: &crate::graph::MetricGraph, n: usize) -> Vec<String> {
    let total = g.total_length().radians();
    let mut out: Vec<String> = g.names().to_vec();
    for (i, e) in g.edges().iter().enumerate() {
        let k = ((n as f64) * e.len.radians() / total).ceil().max(1.0) as usize;
        for j in 1..=k {
            let t = e.len.radians() * j as f64 / (k + 1) as f64;
            out.push(format!("e:{i}@{t:.17}"));
        }
    }
    out
}

/// Shoots from `p` in direction `dir` to length `π` and returns the
/// closest approach to `q` over all branches, with the geodesic truncated
/// there.
fn shoot(lab: &GeodesicLab, p: &str, dir: &str, q: &str, budgets: &Budgets) -> Result<(f64, LocalGeodesic)> {
    let c = lab.complex();
    let qv = c.require_vertex(q)?;
    let start = lab.start(p, dir)?;
    let ext = extend_geodesic(lab, &start, std::f64::consts::PI, budgets);
    let Space::Surface(s) = &lab.space else { unreachable!("surface only") };
    let mut best: Option<(f64, f64, LocalGeodesic)> = None;
    for geo in ext.geodesics {
        let mut acc = 0.0;
        let mut hit: Option<(f64, f64)> = None;
        if let Some(&(_, at)) = geo.vertices.iter().find(|(v, _)| v == q) {
            hit = Some((0.0, at));
        } else if geo.end_vertex.as_deref() == Some(q) {
            hit = Some((0.0, geo.length));
        } else {
            for seg in &geo.segments {
                let (cell, x0, u) = seg.surface_arc().expect("surface");
                let cv = &c.top_cells()[cell];
                if let Some(slot) = cv.iter().position(|&w| w == qv) {
                    let qx = s.frames[cell].v[slot];
                    let t = qx.dot(&u).atan2(qx.dot(&x0)).clamp(0.0, seg.length);
                    let at = x0 * t.cos() + u * t.sin();
                    let d = at.dot(&qx).clamp(-1.0, 1.0).acos();
                    if hit.is_none_or(|(m, _)| d < m) {
                        hit = Some((d, acc + t));
                    }
                }
                acc += seg.length;
            }
        }
        if let Some((miss, at)) = hit {
            if best.as_ref().is_none_or(|(m, l, _)| miss < m - 1e-12 || (miss - m).abs() <= 1e-12 && at < *l) {
                best = Some((miss, at, geo));
            }
        }
    }
    Ok(match best {
        Some((miss, at, mut geo)) => {
            lab.truncate(&mut geo, at);
            geo.end_vertex = (miss <= budgets.eps_hit).then(|| q.to_string());
            (miss, geo)
        }
        None => (f64::INFINITY, start),
    })
}

/// Golden-section search along the link edge of `dir`.
fn refine(
    lab: &GeodesicLab,
    p: &str,
    q: &str,
    dir: &str,
    budgets: &Budgets,
) -> Result<Option<(f64, String, LocalGeodesic)>> {
    let Some(rest) = dir.strip_prefix("e:") else { return Ok(None) };
    let Some((e, t)) = rest.split_once('@') else { return Ok(None) };
    let e: usize = e.parse().map_err(|_| Error::Parse(dir.into()))?;
    let Space::Surface(s) = &lab.space else { return Ok(None) };
    let g = &s.links[lab.complex().require_vertex(p)?].0;
    let len = g.edge(e).len.radians();
    let t: f64 = t.parse().map_err(|_| Error::Parse(dir.into()))?;
    let k = ((budgets.shooting_directions as f64) * len / g.total_length().radians()).ceil().max(1.0);
    let step = len / (k + 1.0);
    let (mut lo, mut hi) = ((t - step).max(len * 1e-12), (t + step).min(len * (1.0 - 1e-12)));
    let name = |x: f64| format!("e:{e}@{x:.17}");
    let eval = |x: f64| shoot(lab, p, &name(x), q, budgets).map(|(m, _)| m);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
    let (mut fa, mut fb) = (eval(a)?, eval(b)?);
    for _ in 0..budgets.bisection_depth {
        if fa < fb {
            hi = b;
            (b, fb) = (a, fa);
            a = hi - phi * (hi - lo);
            fa = eval(a)?;
        } else {
            lo = a;
            (a, fa) = (b, fb);
            b = lo + phi * (hi - lo);
            fb = eval(b)?;
        }
    }
    let x = if fa < fb { a } else { b };
    let (m, geo) = shoot(lab, p, &name(x), q, budgets)?;
    Ok(Some((m, name(x), geo)))
}
