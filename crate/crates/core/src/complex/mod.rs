//! Finite piecewise spherical and piecewise Euclidean simplicial complexes.
//!
//! A [`MetricComplex`] is a pure simplicial complex whose top cells carry
//! a metric shape given by edge lengths. Lengths live on edges, so faces
//! shared by several top cells automatically agree; disagreement can only
//! arise while assembling a complex from per-cell data, and is reported as
//! [`Error::Gluing`] by [`ComplexBuilder`] and the JSON reader.

mod join;
mod json;
mod link;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::angle::{Angle, EPS_GRAM};
use crate::error::{Error, Result};

pub use json::ComplexFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Spherical,
    Euclidean,
}

impl std::fmt::Display for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Geometry::Spherical => write!(f, "spherical"),
            Geometry::Euclidean => write!(f, "euclidean"),
        }
    }
}

/// Normalized vertex pair `(i, j)` with `i < j`.
pub type EdgeKey = (usize, usize);

pub fn edge_key(a: usize, b: usize) -> EdgeKey {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Metric shape of one simplex.
#[derive(Clone, Debug)]
pub struct SimplexShape {
    pub geometry: Geometry,
    pub vertices: Vec<usize>,
    /// Symmetric, zero diagonal.
    pub lengths: Vec<Vec<Angle>>,
}

impl SimplexShape {
    pub fn dimension(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Spherical: `cos` of the edge lengths. Euclidean: the Gram matrix of
    /// the edge vectors issuing from the first vertex (Cayley–Menger form).
    pub fn gram(&self) -> DMatrix<f64> {
        let k = self.vertices.len();
        match self.geometry {
            Geometry::Spherical => DMatrix::from_fn(k, k, |i, j| {
                if i == j {
                    1.0
                } else {
                    self.lengths[i][j].radians().cos()
                }
            }),
            Geometry::Euclidean => {
                let d = |i: usize, j: usize| self.lengths[i][j].radians();
                DMatrix::from_fn(k - 1, k - 1, |i, j| {
                    let (a, b) = (d(0, i + 1), d(0, j + 1));
                    let c = if i == j { 0.0 } else { d(i + 1, j + 1) };
                    (a * a + b * b - c * c) / 2.0
                })
            }
        }
    }

    /// Smallest eigenvalue of [`Self::gram`]; realizable iff it exceeds `EPS_GRAM`.
    pub fn min_eigenvalue(&self) -> f64 {
        let g = self.gram();
        if g.nrows() == 0 {
            return f64::INFINITY;
        }
        g.symmetric_eigenvalues().min()
    }

    pub fn is_realizable(&self) -> bool {
        self.min_eigenvalue() > EPS_GRAM
    }
}

#[derive(Clone, Debug)]
pub struct MetricComplex {
    geometry: Geometry,
    dimension: usize,
    vertices: Vec<String>,
    top_cells: Vec<Vec<usize>>,
    lengths: BTreeMap<EdgeKey, Angle>,
    boundary: Option<Vec<usize>>,
    coordinates: Option<Vec<Vec<f64>>>,
    index: HashMap<String, usize>,
}

impl MetricComplex {
    /// Structural constructor. Cells are sorted internally; every edge of
    /// every top cell needs a positive finite length and no other pair may
    /// carry one.
    pub fn new(
        geometry: Geometry,
        dimension: usize,
        vertices: Vec<String>,
        top_cells: Vec<Vec<usize>>,
        lengths: BTreeMap<EdgeKey, Angle>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate vertex name {v:?}")));
            }
        }
        let mut cells = Vec::with_capacity(top_cells.len());
        let mut seen = BTreeSet::new();
        let mut needed = BTreeSet::new();
        for cell in top_cells {
            if cell.len() != dimension + 1 {
                return Err(Error::Malformed(format!(
                    "cell {cell:?} has {} vertices, expected {}",
                    cell.len(),
                    dimension + 1
                )));
            }
            if let Some(&bad) = cell.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::Malformed(format!("dangling vertex index {bad}")));
            }
            let mut sorted = cell.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!("cell {cell:?} repeats a vertex")));
            }
            if !seen.insert(sorted.clone()) {
                return Err(Error::Malformed(format!("duplicate top cell {cell:?}")));
            }
            for i in 0..sorted.len() {
                for j in i + 1..sorted.len() {
                    needed.insert((sorted[i], sorted[j]));
                }
            }
            cells.push(sorted);
        }
        for e in &needed {
            match lengths.get(e) {
                None => {
                    return Err(Error::Malformed(format!(
                        "edge ({}, {}) has no length",
                        vertices[e.0], vertices[e.1]
                    )))
                }
                Some(l) => {
                    let r = l.radians();
                    if !(r.is_finite() && r > 0.0) {
                        return Err(Error::Malformed(format!(
                            "edge ({}, {}) has non-positive length {l}",
                            vertices[e.0], vertices[e.1]
                        )));
                    }
                }
            }
        }
        if let Some(e) = lengths.keys().find(|e| !needed.contains(e)) {
            return Err(Error::Malformed(format!(
                "length given for ({}, {}) which is not an edge of any cell",
                vertices.get(e.0).map_or("?", |s| s.as_str()),
                vertices.get(e.1).map_or("?", |s| s.as_str())
            )));
        }
        Ok(MetricComplex {
            geometry,
            dimension,
            vertices,
            top_cells: cells,
            lengths,
            boundary: None,
            coordinates: None,
            index,
        })
    }

    /// The empty complex of the given geometry.
    pub fn empty(geometry: Geometry) -> Self {
        MetricComplex::new(geometry, 0, vec![], vec![], BTreeMap::new()).expect("empty complex")
    }

    /// 0-dimensional spherical complex on the given points.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let vertices: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let cells = (0..vertices.len()).map(|i| vec![i]).collect();
        MetricComplex::new(Geometry::Spherical, 0, vertices, cells, BTreeMap::new())
    }

    /// `S⁰` on two named points.
    pub fn sphere0(a: &str, b: &str) -> Self {
        MetricComplex::discrete(&[a, b]).expect("two distinct names")
    }

    pub fn with_boundary(mut self, boundary: Vec<usize>) -> Result<Self> {
        if let Some(&b) = boundary.iter().find(|&&b| b >= self.vertices.len()) {
            return Err(Error::Malformed(format!("boundary vertex index {b} out of range")));
        }
        let mut b = boundary;
        b.sort_unstable();
        b.dedup();
        self.boundary = Some(b);
        Ok(self)
    }

    pub fn with_coordinates(mut self, coords: Vec<Vec<f64>>) -> Result<Self> {
        if coords.len() != self.vertices.len() {
            return Err(Error::Malformed("coordinate count differs from vertex count".into()));
        }
        self.coordinates = Some(coords);
        Ok(self)
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<usize> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn top_cells(&self) -> &[Vec<usize>] {
        &self.top_cells
    }

    pub fn lengths(&self) -> &BTreeMap<EdgeKey, Angle> {
        &self.lengths
    }

    pub fn length(&self, a: usize, b: usize) -> Option<Angle> {
        self.lengths.get(&edge_key(a, b)).copied()
    }

    pub fn declared_boundary(&self) -> Option<&[usize]> {
        self.boundary.as_deref()
    }

    pub fn coordinates(&self) -> Option<&[Vec<f64>]> {
        self.coordinates.as_deref()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeKey, Angle)> + '_ {
        self.lengths.iter().map(|(k, v)| (*k, *v))
    }

    pub fn edge_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn shape(&self, cell: usize) -> SimplexShape {
        let verts = self.top_cells[cell].clone();
        self.shape_of(&verts)
    }

    /// Shape of any face, given as a sorted vertex list.
    pub fn shape_of(&self, face: &[usize]) -> SimplexShape {
        let k = face.len();
        let mut lengths = vec![vec![Angle::ZERO; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let l = self.length(face[i], face[j]).expect("face edge has a length");
                lengths[i][j] = l;
                lengths[j][i] = l;
            }
        }
        SimplexShape {
            geometry: self.geometry,
            vertices: face.to_vec(),
            lengths,
        }
    }

    /// All faces of dimension `k` (sorted vertex lists, sorted set).
    pub fn faces(&self, k: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        if k > self.dimension {
            return out;
        }
        for cell in &self.top_cells {
            for_each_subset(cell, k + 1, &mut |s| {
                out.insert(s.to_vec());
            });
        }
        out
    }

    /// Number of top cells containing `face` (sorted).
    pub fn coface_count(&self, face: &[usize]) -> usize {
        self.top_cells
            .iter()
            .filter(|c| is_sorted_subset(face, c))
            .count()
    }

    /// Indices of the top cells containing `face` (sorted).
    pub fn cells_containing(&self, face: &[usize]) -> Vec<usize> {
        self.top_cells
            .iter()
            .enumerate()
            .filter(|(_, c)| is_sorted_subset(face, c))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_face(&self, face: &[usize]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        self.top_cells.iter().any(|c| is_sorted_subset(&f, c))
    }

    /// Neighbors of `v` in the 1-skeleton, sorted.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .lengths
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Connected components of the 1-skeleton (vertex index lists).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(a, b) in self.lengths.keys() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Boundary vertices: the declared set, or else every vertex of a
    /// codimension-1 face lying in exactly one top cell.
    pub fn boundary_vertices(&self) -> BTreeSet<usize> {
        if let Some(b) = &self.boundary {
            return b.iter().copied().collect();
        }
        let mut out = BTreeSet::new();
        if self.dimension == 0 {
            return out;
        }
        for f in self.faces(self.dimension - 1) {
            if self.coface_count(&f) == 1 {
                out.extend(f);
            }
        }
        out
    }

    /// Subcomplex spanned by the given top cells (unused vertices dropped,
    /// names kept).
    pub fn subcomplex(&self, cells: &[usize]) -> Result<MetricComplex> {
        let mut used = BTreeSet::new();
        for &c in cells {
            let cell = self
                .top_cells
                .get(c)
                .ok_or_else(|| Error::Malformed(format!("cell index {c} out of range")))?;
            used.extend(cell.iter().copied());
        }
        let remap: BTreeMap<usize, usize> =
            used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vertices = used.iter().map(|&v| self.vertices[v].clone()).collect();
        let top: Vec<Vec<usize>> = cells
            .iter()
            .map(|&c| self.top_cells[c].iter().map(|v| remap[v]).collect())
            .collect();
        let mut lengths = BTreeMap::new();
        for cell in cells.iter().map(|&c| &self.top_cells[c]) {
            for i in 0..cell.len() {
                for j in i + 1..cell.len() {
                    let l = self.length(cell[i], cell[j]).expect("edge length");
                    lengths.insert(edge_key(remap[&cell[i]], remap[&cell[j]]), l);
                }
            }
        }
        MetricComplex::new(self.geometry, self.dimension, vertices, top, lengths)
    }

    /// Same vertex names, same cells by name, equal edge lengths.
    pub fn is_isometric_by_names(&self, other: &MetricComplex) -> bool {
        if self.geometry != other.geometry
            || self.dimension != other.dimension
            || self.vertices.len() != other.vertices.len()
            || self.top_cells.len() != other.top_cells.len()
        {
            return false;
        }
        let mut map = Vec::with_capacity(self.vertices.len());
        for name in &self.vertices {
            match other.vertex(name) {
                Some(j) => map.push(j),
                None => return false,
            }
        }
        let theirs: BTreeSet<Vec<usize>> = other.top_cells.iter().cloned().collect();
        for cell in &self.top_cells {
            let mut img: Vec<usize> = cell.iter().map(|&v| map[v]).collect();
            img.sort_unstable();
            if !theirs.contains(&img) {
                return false;
            }
        }
        self.lengths.iter().all(|(&(a, b), l)| {
            other
                .length(map[a], map[b])
                .is_some_and(|m| m.approx_eq(l))
        })
    }

    /// Euler characteristic of the face poset.
    pub fn euler_characteristic(&self) -> i64 {
        if self.is_empty() {
            return 0;
        }
        (0..=self.dimension)
            .map(|k| {
                let n = self.faces(k).len() as i64;
                if k % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let mut in_cell = vec![false; self.vertices.len()];
        for c in &self.top_cells {
            for &v in c {
                in_cell[v] = true;
            }
        }
        for (v, used) in in_cell.iter().enumerate() {
            if !used {
                issues.push(ValidationIssue::NotPure {
                    vertex: self.vertices[v].clone(),
                });
            }
        }
        if self.geometry == Geometry::Spherical {
            for (&(a, b), l) in &self.lengths {
                if l.cmp_tol(&Angle::PI) == std::cmp::Ordering::Greater {
                    issues.push(ValidationIssue::LengthOutOfRange {
                        edge: [self.vertices[a].clone(), self.vertices[b].clone()],
                        length: l.to_string(),
                    });
                }
            }
        }
        if self.dimension >= 1 {
            for c in 0..self.top_cells.len() {
                let shape = self.shape(c);
                let ev = shape.min_eigenvalue();
                if ev <= EPS_GRAM {
                    issues.push(ValidationIssue::ShapeNotRealizable {
                        cell: self.top_cells[c]
                            .iter()
                            .map(|&v| self.vertices[v].clone())
                            .collect(),
                        min_eigenvalue: ev,
                    });
                }
            }
        }
        ValidationReport {
            dimension: self.dimension,
            geometry: self.geometry,
            pure: !issues
                .iter()
                .any(|i| matches!(i, ValidationIssue::NotPure { .. })),
            connected: self.is_connected(),
            gluing_consistent: true,
            issues,
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(
                r.issues
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            ))
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationIssue {
    NotPure { vertex: String },
    LengthOutOfRange { edge: [String; 2], length: String },
    ShapeNotRealizable { cell: Vec<String>, min_eigenvalue: f64 },
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationIssue::NotPure { vertex } => {
                write!(f, "vertex {vertex} lies in no top cell")
            }
            ValidationIssue::LengthOutOfRange { edge, length } => {
                write!(f, "edge {edge:?} has spherical length {length} > pi")
            }
            ValidationIssue::ShapeNotRealizable {
                cell,
                min_eigenvalue,
            } => write!(
                f,
                "cell {cell:?} is not realizable (min Gram eigenvalue {min_eigenvalue:.3e})"
            ),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub dimension: usize,
    pub geometry: Geometry,
    pub pure: bool,
    pub connected: bool,
    pub gluing_consistent: bool,
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Incremental construction from named cells with per-cell lengths.
#[derive(Debug)]
pub struct ComplexBuilder {
    geometry: Geometry,
    dimension: usize,
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    cells: Vec<Vec<usize>>,
    lengths: BTreeMap<EdgeKey, Angle>,
}

impl ComplexBuilder {
    pub fn new(geometry: Geometry, dimension: usize) -> Self {
        ComplexBuilder {
            geometry,
            dimension,
            vertices: vec![],
            index: HashMap::new(),
            cells: vec![],
            lengths: BTreeMap::new(),
        }
    }

    pub fn vertex(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.vertices.len();
        self.vertices.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    /// Sets the length of edge `{a, b}`; a conflicting earlier value is a
    /// gluing error.
    pub fn length(&mut self, a: &str, b: &str, len: Angle) -> Result<&mut Self> {
        let (i, j) = (self.vertex(a), self.vertex(b));
        if i == j {
            return Err(Error::Malformed(format!("self-edge at {a:?}")));
        }
        let key = edge_key(i, j);
        if let Some(old) = self.lengths.get(&key) {
            if !old.approx_eq(&len) {
                let (x, y) = (&self.vertices[key.0], &self.vertices[key.1]);
                return Err(Error::Gluing {
                    edge: (x.clone(), y.clone()),
                    first: old.to_string(),
                    second: len.to_string(),
                });
            }
        }
        self.lengths.insert(key, len);
        Ok(self)
    }

    /// Adds a top cell whose edges all get lengths from `len`.
    pub fn cell_with<F>(&mut self, names: &[&str], len: F) -> Result<&mut Self>
    where
        F: Fn(&str, &str) -> Angle,
    {
        let ids: Vec<usize> = names.iter().map(|n| self.vertex(n)).collect();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                self.length(names[i], names[j], len(names[i], names[j]))?;
            }
        }
        self.cells.push(ids);
        Ok(self)
    }

    /// Adds a top cell with an explicit symmetric length table.
    pub fn cell(&mut self, names: &[&str], lengths: &[&[Angle]]) -> Result<&mut Self> {
        let ids: Vec<usize> = names.iter().map(|n| self.vertex(n)).collect();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                self.length(names[i], names[j], lengths[i][j])?;
            }
        }
        self.cells.push(ids);
        Ok(self)
    }

    /// Adds a top cell whose edges must already have lengths.
    pub fn cell_unmetered(&mut self, names: &[&str]) -> &mut Self {
        let ids = names.iter().map(|n| self.vertex(n)).collect();
        self.cells.push(ids);
        self
    }

    pub fn build(self) -> Result<MetricComplex> {
        MetricComplex::new(
            self.geometry,
            self.dimension,
            self.vertices,
            self.cells,
            self.lengths,
        )
    }
}

pub(crate) fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Calls `f` with every `k`-subset of `items` (in lexicographic order).
pub(crate) fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(items, k, 0, &mut cur, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn octahedron() -> MetricComplex {
        let s = |a: &str, b: &str| MetricComplex::sphere0(a, b);
        s("x+", "x-")
            .join(&s("y+", "y-"))
            .unwrap()
            .join(&s("z+", "z-"))
            .unwrap()
    }

    #[test]
    fn octahedron_is_valid() {
        let o = octahedron();
        let r = o.validate();
        assert!(r.is_valid(), "{:?}", r.issues);
        assert!(r.pure && r.connected);
        assert_eq!(o.dimension(), 2);
        assert_eq!(o.top_cells().len(), 8);
        assert_eq!(o.euler_characteristic(), 2);
        assert!(o.edges().all(|(_, l)| l.approx_eq(&Angle::HALF_PI)));
    }

    #[test]
    fn triangle_with_long_third_side_is_still_realizable() {
        // Sides pi/2, pi/2, 2: Gram eigenvalues 1 and 1 +- cos 2, all positive.
        let mut b = ComplexBuilder::new(Geometry::Spherical, 2);
        b.cell(
            &["a", "b", "c"],
            &[
                &[Angle::ZERO, Angle::HALF_PI, Angle::HALF_PI],
                &[Angle::HALF_PI, Angle::ZERO, Angle::Approx(2.0)],
                &[Angle::HALF_PI, Angle::Approx(2.0), Angle::ZERO],
            ],
        )
        .unwrap();
        let c = b.build().unwrap();
        let ev = c.shape(0).min_eigenvalue();
        assert!((ev - (1.0 + 2.0f64.cos())).abs() < 1e-12);
        assert!(c.validate().is_valid());
    }

    #[test]
    fn triangle_violating_triangle_inequality_names_the_cell() {
        // pi/4 + pi/4 < pi: Gram determinant is -2.
        let q = Angle::pi_frac(1, 4);
        let mut b = ComplexBuilder::new(Geometry::Spherical, 2);
        b.cell(
            &["a", "b", "c"],
            &[&[Angle::ZERO, q, q], &[q, Angle::ZERO, Angle::PI], &[q, Angle::PI, Angle::ZERO]],
        )
        .unwrap();
        let c = b.build().unwrap();
        let r = c.validate();
        assert!(!r.is_valid());
        match &r.issues[0] {
            ValidationIssue::ShapeNotRealizable { cell, min_eigenvalue } => {
                assert_eq!(cell, &["a", "b", "c"]);
                assert!(*min_eigenvalue < 0.0);
            }
            other => panic!("unexpected issue {other:?}"),
        }
    }

    #[test]
    fn mismatched_shared_edge_is_a_gluing_error() {
        let h = Angle::HALF_PI;
        let t = Angle::pi_frac(1, 3);
        let mut b = ComplexBuilder::new(Geometry::Spherical, 2);
        b.cell_with(&["a", "b", "c"], |_, _| h).unwrap();
        let err = b.cell_with(&["b", "c", "d"], |_, _| t).unwrap_err();
        match err {
            Error::Gluing { edge, .. } => assert_eq!(edge, ("b".to_string(), "c".to_string())),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn euclidean_cayley_menger() {
        let mut b = ComplexBuilder::new(Geometry::Euclidean, 2);
        b.cell_with(&["a", "b", "c"], |_, _| Angle::Approx(1.0)).unwrap();
        assert!(b.build().unwrap().validate().is_valid());
        let mut b = ComplexBuilder::new(Geometry::Euclidean, 2);
        b.cell(
            &["a", "b", "c"],
            &[
                &[Angle::ZERO, Angle::Approx(1.0), Angle::Approx(1.0)],
                &[Angle::Approx(1.0), Angle::ZERO, Angle::Approx(2.0)],
                &[Angle::Approx(1.0), Angle::Approx(2.0), Angle::ZERO],
            ],
        )
        .unwrap();
        assert!(!b.build().unwrap().validate().is_valid());
    }

    #[test]
    fn structural_errors() {
        let e = MetricComplex::new(Geometry::Spherical, 1, vec!["a".into()], vec![vec![0, 3]], BTreeMap::new());
        assert!(matches!(e, Err(Error::Malformed(_))));
        let e = MetricComplex::new(
            Geometry::Spherical,
            1,
            vec!["a".into(), "b".into()],
            vec![vec![0, 1]],
            BTreeMap::new(),
        );
        assert!(matches!(e, Err(Error::Malformed(_))));
    }

    #[test]
    fn empty_and_discrete_complexes_are_valid() {
        assert!(MetricComplex::empty(Geometry::Spherical).validate().is_valid());
        let d = MetricComplex::discrete(&["a", "b", "c"]).unwrap();
        let r = d.validate();
        assert!(r.is_valid());
        assert!(!r.connected);
    }

    #[test]
    fn isolated_vertex_breaks_purity() {
        let mut lengths = BTreeMap::new();
        lengths.insert((0, 1), Angle::HALF_PI);
        let c = MetricComplex::new(
            Geometry::Spherical,
            1,
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0, 1]],
            lengths,
        )
        .unwrap();
        let r = c.validate();
        assert!(!r.pure);
        assert!(!r.is_valid());
    }
}
