use std::collections::BTreeMap;

use super::{edge_key, Geometry, MetricComplex};
use crate::angle::Angle;
use crate::error::{Error, Result};

/// Angle at the apex of a triangle with apex sides `a`, `b` and opposite side `c`.
pub fn apex_angle(geometry: Geometry, a: Angle, b: Angle, c: Angle) -> Angle {
    let (a, b, c) = (a.radians(), b.radians(), c.radians());
    let cos = match geometry {
        Geometry::Spherical => (c.cos() - a.cos() * b.cos()) / (a.sin() * b.sin()),
        Geometry::Euclidean => (a * a + b * b - c * c) / (2.0 * a * b),
    };
    Angle::rationalize(cos.clamp(-1.0, 1.0).acos())
}

impl MetricComplex {
    /// `lk(v, X)`: an `(n-1)`-dimensional spherical complex whose vertices
    /// are the neighbors of `v` (same names) and whose edge lengths are the
    /// angles at `v` of the incident cells.
    pub fn vertex_link(&self, v: &str) -> Result<MetricComplex> {
        let vi = self.require_vertex(v)?;
        if self.dimension() == 0 {
            return Err(Error::Precondition(
                "a 0-dimensional complex has empty vertex links".into(),
            ));
        }
        let neighbors = self.neighbors(vi);
        let remap: BTreeMap<usize, usize> =
            neighbors.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let mut cells = Vec::new();
        let mut lengths = BTreeMap::new();
        for cell in self.top_cells() {
            if !cell.contains(&vi) {
                continue;
            }
            let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != vi).collect();
            for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    let key = edge_key(remap[&rest[i]], remap[&rest[j]]);
                    if lengths.contains_key(&key) {
                        continue;
                    }
                    let a = self.length(vi, rest[i]).expect("edge");
                    let b = self.length(vi, rest[j]).expect("edge");
                    let c = self.length(rest[i], rest[j]).expect("edge");
                    lengths.insert(key, apex_angle(self.geometry(), a, b, c));
                }
            }
            cells.push(rest.iter().map(|w| remap[w]).collect());
        }
        let names = neighbors.iter().map(|&w| self.name(w).to_string()).collect();
        MetricComplex::new(
            Geometry::Spherical,
            self.dimension() - 1,
            names,
            cells,
            lengths,
        )
    }

    /// `lk(σ, X)` for a cell `σ` of dimension below `n`, by iterated vertex links.
    pub fn cell_link<S: AsRef<str>>(&self, cell: &[S]) -> Result<MetricComplex> {
        let names: Vec<&str> = cell.iter().map(|s| s.as_ref()).collect();
        let not_cell = || Error::NotACell(names.iter().map(|s| s.to_string()).collect());
        if names.is_empty() {
            return Err(not_cell());
        }
        let ids: Vec<usize> = names
            .iter()
            .map(|n| self.vertex(n).ok_or_else(not_cell))
            .collect::<Result<_>>()?;
        if !self.is_face(&ids) {
            return Err(not_cell());
        }
        if names.len() > self.dimension() {
            return Err(Error::Precondition(format!(
                "cell {names:?} is top-dimensional; its link is empty"
            )));
        }
        let mut link = self.vertex_link(names[0])?;
        for n in &names[1..] {
            link = link.vertex_link(n)?;
        }
        Ok(link)
    }
}
