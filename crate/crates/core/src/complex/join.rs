use std::collections::{BTreeMap, HashSet};

use super::{edge_key, Geometry, MetricComplex};
use crate::angle::Angle;
use crate::error::{Error, Result};

impl MetricComplex {
    /// Orthogonal (simplicial) join. Cross edges get length `π/2`; names of
    /// `other` that collide with names of `self` are primed until unique.
    pub fn join(&self, other: &MetricComplex) -> Result<MetricComplex> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::Empty);
        }
        if self.geometry() != Geometry::Spherical || other.geometry() != Geometry::Spherical {
            return Err(Error::Geometry("orthogonal join needs spherical operands".into()));
        }
        let mut taken: HashSet<String> = self.vertex_names().iter().cloned().collect();
        let mut vertices: Vec<String> = self.vertex_names().to_vec();
        let offset = vertices.len();
        for name in other.vertex_names() {
            let mut n = name.clone();
            while taken.contains(&n) {
                n.push('\'');
            }
            taken.insert(n.clone());
            vertices.push(n);
        }
        let mut lengths: BTreeMap<_, Angle> = self.lengths().clone();
        for (&(a, b), &l) in other.lengths() {
            lengths.insert((a + offset, b + offset), l);
        }
        let mut cells = Vec::with_capacity(self.top_cells().len() * other.top_cells().len());
        for s in self.top_cells() {
            for t in other.top_cells() {
                let mut c: Vec<usize> = s.clone();
                c.extend(t.iter().map(|&v| v + offset));
                for &a in s {
                    for &b in t {
                        lengths.insert(edge_key(a, b + offset), Angle::HALF_PI);
                    }
                }
                cells.push(c);
            }
        }
        MetricComplex::new(
            Geometry::Spherical,
            self.dimension() + other.dimension() + 1,
            vertices,
            cells,
            lengths,
        )
    }

    /// `S⁰ * self` with fresh pole names (`N`, `S`, primed on collision).
    pub fn suspension(&self) -> Result<MetricComplex> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        let fresh = |base: &str| {
            let mut n = base.to_string();
            while self.vertex(&n).is_some() {
                n.push('\'');
            }
            n
        };
        MetricComplex::sphere0(&fresh("N"), &fresh("S")).join(self)
    }
}
