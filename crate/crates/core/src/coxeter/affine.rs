use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::group::{realize_roots, render_word, PointIndex};
use super::{CoxeterMatrix, FormType};
use crate::angle::Angle;
use crate::complex::{edge_key, Geometry, MetricComplex};
use crate::error::{Error, Result};

/// Finite window of a Euclidean Coxeter complex: all alcoves `w·A` with
/// word length `|w| ≤ radius`, scaled so the shortest edge is 1.
#[derive(Clone, Debug)]
pub struct EuclideanWindow {
    pub complex: MetricComplex,
    pub vertex_type: Vec<usize>,
    /// Shortlex-least word of each chamber (same order as top cells).
    pub chamber_words: Vec<Vec<usize>>,
    /// Unit normals and offsets of the walls of the fundamental alcove:
    /// the alcove is `{x : normal·x + offset ≥ 0}` (scaled coordinates).
    pub walls: Vec<(DVector<f64>, f64)>,
}

type Affine = (DMatrix<f64>, DVector<f64>);

fn compose(a: &Affine, b: &Affine) -> Affine {
    (&a.0 * &b.0, &a.0 * &b.1 + &a.1)
}

fn apply(a: &Affine, x: &DVector<f64>) -> DVector<f64> {
    &a.0 * x + &a.1
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

impl CoxeterMatrix {
    /// Window of radius `radius` around the fundamental alcove. The first
    /// generator plays the affine reflection.
    pub fn euclidean_window(&self, radius: usize) -> Result<EuclideanWindow> {
        let cls = self.classify();
        if cls.verdict != FormType::Euclidean || cls.components.len() != 1 {
            return Err(Error::Coxeter(
                "Euclidean windows need an irreducible Euclidean Coxeter matrix".into(),
            ));
        }
        let r = self.rank();
        let d = r - 1;
        let eig = SymmetricEigen::new(self.cosine_form());
        let (kidx, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("rank >= 2");
        let mut k: DVector<f64> = eig.eigenvectors.column(kidx).into_owned();
        if k[0] < 0.0 {
            k = -k;
        }
        let rest: Vec<usize> = (1..r).collect();
        let sub = realize_roots(&self.restrict(&rest))?;
        let mut alpha0 = DVector::zeros(d);
        for (i, a) in sub.iter().enumerate() {
            alpha0 -= a * (k[i + 1] / k[0]);
        }
        if (alpha0.norm() - 1.0).abs() > 1e-6 {
            return Err(Error::Coxeter("affine root has wrong length".into()));
        }
        let mut roots = vec![alpha0];
        roots.extend(sub);
        let offsets: Vec<f64> = (0..r).map(|s| if s == 0 { 1.0 } else { 0.0 }).collect();

        // alcove vertex of type s lies on every wall except the s-th
        let mut corners = vec![];
        for s in 0..r {
            let others: Vec<usize> = (0..r).filter(|&t| t != s).collect();
            let a = DMatrix::from_fn(d, d, |i, j| roots[others[i]][j]);
            let b = DVector::from_fn(d, |i, _| -offsets[others[i]]);
            let v = a
                .lu()
                .solve(&b)
                .ok_or_else(|| Error::Coxeter("degenerate alcove".into()))?;
            corners.push(v);
        }
        let mut min_edge = f64::INFINITY;
        for s in 0..r {
            for t in s + 1..r {
                min_edge = min_edge.min((&corners[s] - &corners[t]).norm());
            }
        }
        let scale = 1.0 / min_edge;
        let corners: Vec<DVector<f64>> = corners.iter().map(|c| c * scale).collect();
        let gens: Vec<Affine> = roots
            .iter()
            .zip(&offsets)
            .map(|(a, &c)| {
                let m = DMatrix::identity(d, d) - a * a.transpose() * 2.0;
                (m, a * (-2.0 * c * scale))
            })
            .collect();
        let walls = roots
            .iter()
            .zip(&offsets)
            .map(|(a, &c)| (a.clone(), c * scale))
            .collect();

        let bary: DVector<f64> = corners.iter().fold(DVector::zeros(d), |acc, c| acc + c) / r as f64;
        let mut seen = PointIndex::default();
        seen.insert(bary.clone());
        let mut elements: Vec<(Vec<usize>, Affine)> =
            vec![(vec![], (DMatrix::identity(d, d), DVector::zeros(d)))];
        let mut head = 0;
        while head < elements.len() {
            if elements[head].0.len() < radius {
                for (s, g) in gens.iter().enumerate() {
                    let m = compose(&elements[head].1, g);
                    let img = apply(&m, &bary);
                    if seen.find(&img).is_none() {
                        seen.insert(img);
                        let mut w = elements[head].0.clone();
                        w.push(s);
                        elements.push((w, m));
                    }
                }
            }
            head += 1;
        }

        let mut per_type: Vec<PointIndex> = (0..r).map(|_| PointIndex::default()).collect();
        let mut per_type_ids: Vec<Vec<usize>> = vec![vec![]; r];
        let mut names = vec![];
        let mut coords: Vec<Vec<f64>> = vec![];
        let mut vertex_type = vec![];
        let mut cells = vec![];
        for (word, m) in &elements {
            let mut cell = vec![];
            for t in 0..r {
                let p = apply(m, &corners[t]);
                let v = match per_type[t].find(&p) {
                    Some(local) => per_type_ids[t][local],
                    None => {
                        let id = names.len();
                        per_type_ids[t].push(id);
                        names.push(format!("{}@{}", self.generators()[t], render_word(self, word)));
                        coords.push(p.iter().map(|&x| round12(x)).collect());
                        per_type[t].insert(p);
                        vertex_type.push(t);
                        id
                    }
                };
                cell.push(v);
            }
            cells.push(cell);
        }
        let mut lengths = BTreeMap::new();
        for cell in &cells {
            for i in 0..r {
                for j in i + 1..r {
                    let (a, b) = (cell[i], cell[j]);
                    let dist: f64 = coords[a]
                        .iter()
                        .zip(&coords[b])
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum::<f64>()
                        .sqrt();
                    lengths.insert(edge_key(a, b), Angle::Approx(round12(dist)));
                }
            }
        }
        let complex = MetricComplex::new(Geometry::Euclidean, d, names, cells, lengths)?;
        let boundary: Vec<usize> = complex.boundary_vertices().into_iter().collect();
        let complex = complex.with_boundary(boundary)?.with_coordinates(coords)?;
        Ok(EuclideanWindow {
            complex,
            vertex_type,
            chamber_words: elements.into_iter().map(|(w, _)| w).collect(),
            walls,
        })
    }
}
