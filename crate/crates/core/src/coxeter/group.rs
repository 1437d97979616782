use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::CoxeterMatrix;
use crate::angle::Angle;
use crate::complex::{edge_key, Geometry, MetricComplex};
use crate::error::{Error, Result};

pub const DEFAULT_GROUP_BUDGET: usize = 1_000_000;

const MATRIX_TOL: f64 = 1e-9;
const POINT_TOL: f64 = 1e-7;

#[derive(Clone, Debug, Serialize)]
pub struct GroupElement {
    /// Shortlex-least word in the generator indices.
    pub word: Vec<usize>,
    #[serde(skip)]
    pub matrix: DMatrix<f64>,
}

/// Finite reflection group in shortlex order, with a right multiplication
/// table.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    system: CoxeterMatrix,
    roots: Vec<DVector<f64>>,
    weights: Vec<DVector<f64>>,
    elements: Vec<GroupElement>,
    right: Vec<Vec<usize>>,
}

/// Finds points up to `POINT_TOL`, bucketing by the first coordinate.
#[derive(Default)]
pub(crate) struct PointIndex {
    buckets: HashMap<i64, Vec<usize>>,
    points: Vec<DVector<f64>>,
}

impl PointIndex {
    fn key(x: f64) -> i64 {
        (x * 1e5).round() as i64
    }

    pub fn find(&self, p: &DVector<f64>) -> Option<usize> {
        let k = Self::key(p[0]);
        (k - 1..=k + 1)
            .filter_map(|b| self.buckets.get(&b))
            .flatten()
            .copied()
            .find(|&i| (&self.points[i] - p).amax() <= POINT_TOL)
    }

    pub fn insert(&mut self, p: DVector<f64>) -> usize {
        let id = self.points.len();
        self.buckets.entry(Self::key(p[0])).or_default().push(id);
        self.points.push(p);
        id
    }
}

/// Roots `α_s` with `α_s·α_t = B(s,t)`, from the Cholesky factor of `B`.
pub(crate) fn realize_roots(system: &CoxeterMatrix) -> Result<Vec<DVector<f64>>> {
    let b = system.cosine_form();
    let chol = b
        .cholesky()
        .ok_or_else(|| Error::Coxeter("cosine form is not positive definite".into()))?;
    let l = chol.l();
    Ok((0..system.rank()).map(|s| l.row(s).transpose()).collect())
}

/// Dual basis: `α_s·ω_t = δ_st`.
pub(crate) fn dual_basis(roots: &[DVector<f64>]) -> Vec<DVector<f64>> {
    let r = roots.len();
    let a = DMatrix::from_columns(roots);
    let omega = a.transpose().try_inverse().expect("roots form a basis");
    (0..r).map(|s| omega.column(s).into_owned()).collect()
}

pub(crate) fn reflection(alpha: &DVector<f64>) -> DMatrix<f64> {
    let r = alpha.len();
    DMatrix::identity(r, r) - alpha * alpha.transpose() * 2.0
}

pub(crate) fn render_word(system: &CoxeterMatrix, word: &[usize]) -> String {
    if word.is_empty() {
        "e".into()
    } else {
        word.iter()
            .map(|&s| system.generators()[s].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl ReflectionGroup {
    /// Closes the generating reflections under multiplication, breadth
    /// first; fails with [`Error::Budget`] past `budget` elements.
    pub fn generate(system: &CoxeterMatrix, budget: usize) -> Result<ReflectionGroup> {
        let r = system.rank();
        let roots = realize_roots(system)?;
        let omega = dual_basis(&roots);
        let x0: DVector<f64> = omega.iter().fold(DVector::zeros(r), |acc, w| acc + w);
        let weights = omega.iter().map(|w| w.normalize()).collect();
        let gens: Vec<DMatrix<f64>> = roots.iter().map(reflection).collect();

        let mut index = PointIndex::default();
        index.insert(x0.clone());
        let mut elements = vec![GroupElement { word: vec![], matrix: DMatrix::identity(r, r) }];
        let mut right: Vec<Vec<usize>> = vec![];
        let mut head = 0;
        while head < elements.len() {
            let mut row = Vec::with_capacity(r);
            for (s, g) in gens.iter().enumerate() {
                let m = &elements[head].matrix * g;
                let img = &m * &x0;
                let id = match index.find(&img) {
                    Some(id) => {
                        debug_assert!((&elements[id].matrix - &m).amax() <= MATRIX_TOL);
                        id
                    }
                    None => {
                        if elements.len() >= budget {
                            return Err(Error::Budget(budget));
                        }
                        let mut word = elements[head].word.clone();
                        word.push(s);
                        elements.push(GroupElement { word, matrix: m });
                        index.insert(img)
                    }
                };
                row.push(id);
            }
            right.push(row);
            head += 1;
        }
        Ok(ReflectionGroup { system: system.clone(), roots, weights, elements, right })
    }

    pub fn system(&self) -> &CoxeterMatrix {
        &self.system
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn roots(&self) -> &[DVector<f64>] {
        &self.roots
    }

    /// Unit vectors along the fundamental weights: the vertices of the
    /// fundamental chamber on the sphere.
    pub fn chamber_vertices(&self) -> &[DVector<f64>] {
        &self.weights
    }

    /// Index of `w·s`.
    pub fn mul_gen(&self, w: usize, s: usize) -> usize {
        self.right[w][s]
    }

    /// Index of the element represented by `word`.
    pub fn element_of(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |w, &s| self.mul_gen(w, s))
    }

    pub fn word_string(&self, w: usize) -> String {
        render_word(&self.system, &self.elements[w].word)
    }
}

/// `Σ_W` as a triangulated sphere, one chamber per group element.
#[derive(Clone, Debug)]
pub struct CoxeterComplexModel {
    pub group: ReflectionGroup,
    pub complex: MetricComplex,
    /// `chamber_of[w]` is the top cell of `w·C`.
    pub chamber_of: Vec<usize>,
    /// Generator index labelling each vertex.
    pub vertex_type: Vec<usize>,
}

impl CoxeterMatrix {
    pub fn generate_reflection_group(&self) -> Result<ReflectionGroup> {
        ReflectionGroup::generate(self, super::DEFAULT_GROUP_BUDGET)
    }

    pub fn coxeter_complex(&self) -> Result<CoxeterComplexModel> {
        self.coxeter_complex_with_budget(super::DEFAULT_GROUP_BUDGET)
    }

    /// Vertex `t@w` is `w·ω̂_t`; vertices are named by the shortlex-least
    /// element reaching them.
    pub fn coxeter_complex_with_budget(&self, budget: usize) -> Result<CoxeterComplexModel> {
        let r = self.rank();
        if r == 0 {
            return Err(Error::Coxeter("rank 0 has no Coxeter complex".into()));
        }
        let group = ReflectionGroup::generate(self, budget)?;
        let w_hat = group.chamber_vertices().to_vec();
        let mut lengths_by_type = vec![vec![Angle::ZERO; r]; r];
        for s in 0..r {
            for t in s + 1..r {
                let c = w_hat[s].dot(&w_hat[t]).clamp(-1.0, 1.0);
                let a = Angle::rationalize(c.acos());
                lengths_by_type[s][t] = a;
                lengths_by_type[t][s] = a;
            }
        }
        let mut per_type: Vec<PointIndex> = (0..r).map(|_| PointIndex::default()).collect();
        let mut per_type_ids: Vec<Vec<usize>> = vec![vec![]; r];
        let mut names = vec![];
        let mut vertex_type = vec![];
        let mut cells = Vec::with_capacity(group.order());
        for (w, el) in group.elements().iter().enumerate() {
            let mut cell = Vec::with_capacity(r);
            for t in 0..r {
                let p = &el.matrix * &w_hat[t];
                let v = match per_type[t].find(&p) {
                    Some(local) => per_type_ids[t][local],
                    None => {
                        per_type[t].insert(p);
                        let id = names.len();
                        per_type_ids[t].push(id);
                        names.push(format!("{}@{}", self.generators()[t], group.word_string(w)));
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
                    lengths.insert(edge_key(cell[i], cell[j]), lengths_by_type[i][j]);
                }
            }
        }
        let chamber_of = (0..cells.len()).collect();
        let complex = MetricComplex::new(Geometry::Spherical, r - 1, names, cells, lengths)?;
        Ok(CoxeterComplexModel { group, complex, chamber_of, vertex_type })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        for (name, order) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("B3", 48),
            ("D4", 192),
            ("H3", 120),
            ("F4", 1152),
            ("I2(7)", 14),
            ("A1xA1xA1", 8),
        ] {
            let g = CoxeterMatrix::named(name).unwrap().generate_reflection_group().unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
    }

    #[test]
    fn shortlex_words_and_relations() {
        let g = CoxeterMatrix::named("A2").unwrap().generate_reflection_group().unwrap();
        let words: Vec<String> = (0..g.order()).map(|w| g.word_string(w)).collect();
        assert_eq!(words, vec!["e", "s0", "s1", "s0.s1", "s1.s0", "s0.s1.s0"]);
        assert_eq!(g.element_of(&[0, 1, 0]), g.element_of(&[1, 0, 1]));
        assert_eq!(g.element_of(&[0, 0]), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let c = CoxeterMatrix::named("A3").unwrap();
        assert!(matches!(ReflectionGroup::generate(&c, 10), Err(Error::Budget(10))));
        let cls = CoxeterMatrix::named("E8").unwrap().classify_with_budget(1000);
        assert!(cls.order_unknown);
        assert_eq!(cls.group_order, None);
    }

    #[test]
    fn dihedral_complex_is_a_2m_gon() {
        for m in [3u32, 4, 5, 6] {
            let c = CoxeterMatrix::from_edges(2, &[(0, 1, m)]).unwrap();
            let model = c.coxeter_complex().unwrap();
            let x = &model.complex;
            assert_eq!(x.top_cells().len(), 2 * m as usize);
            assert_eq!(x.vertex_count(), 2 * m as usize);
            assert!(x.edges().all(|(_, l)| l.as_pi_frac() == Some((1, m as i64))));
        }
    }

    #[test]
    fn a1_cubed_is_the_octahedron() {
        let model = CoxeterMatrix::named("A1xA1xA1").unwrap().coxeter_complex().unwrap();
        let x = &model.complex;
        assert_eq!(x.top_cells().len(), 8);
        assert_eq!(x.vertex_count(), 6);
        assert!(x.edges().all(|(_, l)| l.as_pi_frac() == Some((1, 2))));
        assert_eq!(x.euler_characteristic(), 2);
    }

    #[test]
    fn a3_complex_has_24_chambers() {
        let model = CoxeterMatrix::named("A3").unwrap().coxeter_complex().unwrap();
        let x = &model.complex;
        assert_eq!(x.top_cells().len(), 24);
        assert_eq!(x.vertex_count(), 14);
        assert!(x.validate().is_valid());
        assert_eq!(x.euler_characteristic(), 2);
        assert_eq!(model.chamber_of.len(), 24);
    }

    #[test]
    fn rank_one_is_s0() {
        let model = CoxeterMatrix::named("A1").unwrap().coxeter_complex().unwrap();
        assert_eq!(model.complex.dimension(), 0);
        assert_eq!(model.complex.vertex_count(), 2);
    }
}
