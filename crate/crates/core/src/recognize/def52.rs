//! Atlas checks for Euclidean complexes produced by the corpus: sampled
//! segments must lie in a chart, and overlapping charts must differ by a
//! rigid motion.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budgets;
use crate::complex::{Geometry, MetricComplex};
use crate::coxeter::EuclideanWindow;
use crate::error::{Error, Result};

const TOL: f64 = 1e-9;
const SEGMENT_PROBES: usize = 64;

/// An isometric chart of a union of top cells into `ℝⁿ`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub cells: Vec<usize>,
    pub coords: BTreeMap<usize, DVector<f64>>,
}

#[derive(Clone, Debug, Default)]
pub struct Atlas {
    pub charts: Vec<Chart>,
}

impl Atlas {
    /// One chart covering the whole window in its own coordinates.
    pub fn standard(w: &EuclideanWindow) -> Result<Atlas> {
        let coords = w
            .complex
            .coordinates()
            .ok_or_else(|| Error::Precondition("window has no coordinates".into()))?;
        Ok(Atlas {
            charts: vec![Chart {
                name: "standard".into(),
                cells: (0..w.complex.top_cells().len()).collect(),
                coords: coords.iter().enumerate().map(|(v, x)| (v, DVector::from_vec(x.clone()))).collect(),
            }],
        })
    }

    /// Two charts on either side of the wall `walls[wall]`, overlapping in
    /// a strip of width `2·overlap`; the second chart is written in
    /// reflected coordinates.
    pub fn half_planes(w: &EuclideanWindow, wall: usize, overlap: f64) -> Result<Atlas> {
        let base = Atlas::standard(w)?.charts.remove(0);
        let (normal, offset) = &w.walls[wall];
        let side = |cell: &[usize]| {
            let n = cell.len() as f64;
            cell.iter().map(|v| normal.dot(&base.coords[v]) + offset).sum::<f64>() / n
        };
        let cells = w.complex.top_cells();
        let pick = |keep: &dyn Fn(f64) -> bool| -> (Vec<usize>, BTreeSet<usize>) {
            let cs: Vec<usize> = (0..cells.len()).filter(|&i| keep(side(&cells[i]))).collect();
            let vs = cs.iter().flat_map(|&i| cells[i].iter().copied()).collect();
            (cs, vs)
        };
        let (ca, va) = pick(&|s| s >= -overlap);
        let (cb, vb) = pick(&|s| s <= overlap);
        let reflect = |x: &DVector<f64>| x - normal * (2.0 * (normal.dot(x) + offset));
        Ok(Atlas {
            charts: vec![
                Chart { name: "upper".into(), cells: ca, coords: va.iter().map(|&v| (v, base.coords[&v].clone())).collect() },
                Chart {
                    name: "lower_reflected".into(),
                    cells: cb,
                    coords: vb.iter().map(|&v| (v, reflect(&base.coords[&v]))).collect(),
                },
            ],
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SegmentWitness {
    pub from_cell: Vec<String>,
    pub to_cell: Vec<String>,
    pub from_barycentric: Vec<f64>,
    pub to_barycentric: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Def52Report {
    pub charts_isometric: bool,
    pub segments_sampled: usize,
    pub segments_contained: usize,
    /// Segments whose straight image leaves every chart holding both
    /// endpoints (non-convex window); not counted either way.
    pub segments_skipped: usize,
    pub overlapping_pairs: usize,
    pub compatible: bool,
    pub max_motion_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncovered_segment: Option<SegmentWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub incompatible_charts: Option<(String, String)>,
}

impl Def52Report {
    pub fn passed(&self) -> bool {
        self.charts_isometric && self.compatible && self.uncovered_segment.is_none()
    }
}

fn chart_point(chart: &Chart, cell: &[usize], bary: &[f64]) -> DVector<f64> {
    let d = chart.coords[&cell[0]].len();
    cell.iter().zip(bary).fold(DVector::zeros(d), |acc, (v, &l)| acc + &chart.coords[v] * l)
}

fn in_cell(chart: &Chart, cell: &[usize], p: &DVector<f64>) -> bool {
    let n = cell.len() - 1;
    let o = &chart.coords[&cell[0]];
    let a = DMatrix::from_fn(o.len(), n, |i, j| chart.coords[&cell[j + 1]][i] - o[i]);
    let Some(l) = a.clone().lu().solve(&(p - o)) else { return false };
    l.iter().all(|&x| x >= -TOL) && l.sum() <= 1.0 + TOL
}

/// Least-squares rigid motion `x ↦ R·x + t` taking `src` to `dst`; returns
/// the max residual.
fn rigid_residual(src: &[DVector<f64>], dst: &[DVector<f64>]) -> f64 {
    let k = src.len() as f64;
    let d = src[0].len();
    let cs = src.iter().fold(DVector::zeros(d), |a, x| a + x) / k;
    let cd = dst.iter().fold(DVector::zeros(d), |a, x| a + x) / k;
    let mut h = DMatrix::zeros(d, d);
    for (x, y) in src.iter().zip(dst) {
        h += (x - &cs) * (y - &cd).transpose();
    }
    let svd = h.svd(true, true);
    let (u, vt) = (svd.u.expect("u"), svd.v_t.expect("v"));
    // reflections are allowed: the orthogonal part is V·Uᵀ
    let r = vt.transpose() * u.transpose();
    src.iter()
        .zip(dst)
        .map(|(x, y)| (&r * (x - &cs) + &cd - y).amax())
        .fold(0.0, f64::max)
}

/// Samples segments between random points of random chambers and checks that some chart contains each one; checks charts
/// are isometric and pairwise compatible on overlaps.
pub fn verify_def52(c: &MetricComplex, atlas: &Atlas, budgets: &Budgets) -> Result<Def52Report> {
    if c.geometry() != Geometry::Euclidean {
        return Err(Error::Geometry("atlas checks need a Euclidean complex".into()));
    }
    let cells = c.top_cells();
    let charts_isometric = atlas.charts.iter().all(|ch| {
        ch.cells.iter().all(|&i| {
            let cell = &cells[i];
            (0..cell.len()).all(|a| {
                (a + 1..cell.len()).all(|b| {
                    let want = c.length(cell[a], cell[b]).expect("edge").radians();
                    ((&ch.coords[&cell[a]] - &ch.coords[&cell[b]]).norm() - want).abs() <= 1e-7
                })
            })
        })
    });

    let pool: Vec<usize> = (0..cells.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(budgets.seed);
    let bary = |rng: &mut ChaCha8Rng, k: usize| {
        let e: Vec<f64> = (0..k).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let s: f64 = e.iter().sum();
        e.into_iter().map(|x| x / s).collect::<Vec<f64>>()
    };
    let (mut contained, mut skipped, mut uncovered) = (0, 0, None);
    let mut sampled = 0;
    for _ in 0..budgets.def52_samples {
        sampled += 1;
        let (i, j) = (pool[rng.gen_range(0..pool.len())], pool[rng.gen_range(0..pool.len())]);
        let (bi, bj) = (bary(&mut rng, cells[i].len()), bary(&mut rng, cells[j].len()));
        let holding: Vec<&Chart> =
            atlas.charts.iter().filter(|ch| ch.cells.contains(&i) && ch.cells.contains(&j)).collect();
        if holding.is_empty() {
            uncovered = Some(SegmentWitness {
                from_cell: super::names(c, &cells[i]),
                to_cell: super::names(c, &cells[j]),
                from_barycentric: bi,
                to_barycentric: bj,
            });
            break;
        }
        let straight = holding.iter().any(|ch| {
            let (p, q) = (chart_point(ch, &cells[i], &bi), chart_point(ch, &cells[j], &bj));
            (0..=SEGMENT_PROBES).all(|k| {
                let t = k as f64 / SEGMENT_PROBES as f64;
                let x = &p * (1.0 - t) + &q * t;
                ch.cells.iter().any(|&cell| in_cell(ch, &cells[cell], &x))
            })
        });
        if straight {
            contained += 1;
        } else {
            skipped += 1;
        }
    }

    let (mut pairs, mut compatible, mut worst, mut bad) = (0, true, 0.0f64, None);
    for a in 0..atlas.charts.len() {
        for b in a + 1..atlas.charts.len() {
            let (ca, cb) = (&atlas.charts[a], &atlas.charts[b]);
            let shared: Vec<usize> = ca.coords.keys().filter(|v| cb.coords.contains_key(v)).copied().collect();
            if !ca.cells.iter().any(|x| cb.cells.contains(x)) {
                continue;
            }
            pairs += 1;
            let src: Vec<DVector<f64>> = shared.iter().map(|v| ca.coords[v].clone()).collect();
            let dst: Vec<DVector<f64>> = shared.iter().map(|v| cb.coords[v].clone()).collect();
            let res = rigid_residual(&src, &dst);
            worst = worst.max(res);
            if res > 1e-7 && compatible {
                compatible = false;
                bad = Some((ca.name.clone(), cb.name.clone()));
            }
        }
    }
    Ok(Def52Report {
        charts_isometric,
        segments_sampled: sampled,
        segments_contained: contained,
        segments_skipped: skipped,
        overlapping_pairs: pairs,
        compatible,
        max_motion_residual: worst,
        uncovered_segment: uncovered,
        incompatible_charts: bad,
    })
}
