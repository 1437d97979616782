//! Coxeter matrices, the cosine form and the geometric representation.
//!
//! `m(s,t) = 0` encodes `∞` throughout (matching the JSON format).

mod affine;
mod group;
mod named;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::angle::EPS_GRAM;
use crate::error::{Error, Result};

pub use affine::EuclideanWindow;
pub use group::{CoxeterComplexModel, GroupElement, ReflectionGroup, DEFAULT_GROUP_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoxeterFile", into = "CoxeterFile")]
pub struct CoxeterMatrix {
    generators: Vec<String>,
    m: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoxeterFile {
    generators: Vec<String>,
    m: Vec<Vec<u32>>,
}

impl TryFrom<CoxeterFile> for CoxeterMatrix {
    type Error = Error;
    fn try_from(f: CoxeterFile) -> Result<Self> {
        CoxeterMatrix::new(f.generators, f.m)
    }
}

impl From<CoxeterMatrix> for CoxeterFile {
    fn from(c: CoxeterMatrix) -> Self {
        CoxeterFile { generators: c.generators, m: c.m }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormType {
    Spherical,
    Euclidean,
    Other,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxeterClassification {
    pub verdict: FormType,
    pub components: Vec<Vec<usize>>,
    pub component_verdicts: Vec<FormType>,
    /// `None` means infinite (or unknown when `order_unknown` is set).
    pub group_order: Option<u64>,
    pub order_unknown: bool,
    pub eigenvalues: Vec<f64>,
    pub determinant: f64,
}

impl CoxeterMatrix {
    pub fn new(generators: Vec<String>, m: Vec<Vec<u32>>) -> Result<Self> {
        let r = generators.len();
        if m.len() != r || m.iter().any(|row| row.len() != r) {
            return Err(Error::Coxeter(format!("matrix must be {r}x{r}")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(g) = generators.iter().find(|g| !seen.insert(g.as_str())) {
            return Err(Error::Coxeter(format!("duplicate generator {g:?}")));
        }
        for i in 0..r {
            if m[i][i] != 1 {
                return Err(Error::Coxeter(format!("m({0},{0}) must be 1", generators[i])));
            }
            for j in 0..r {
                if m[i][j] != m[j][i] {
                    return Err(Error::Coxeter("matrix is not symmetric".into()));
                }
                if i != j && m[i][j] == 1 {
                    return Err(Error::Coxeter(format!(
                        "m({},{}) must be at least 2",
                        generators[i], generators[j]
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { generators, m })
    }

    /// Generators `s0, s1, …` with the given off-diagonal entries (others 2).
    pub fn from_edges(rank: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut m = vec![vec![2; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, v) in edges {
            if i >= rank || j >= rank || i == j {
                return Err(Error::Coxeter(format!("bad diagram edge ({i},{j})")));
            }
            m[i][j] = v;
            m[j][i] = v;
        }
        CoxeterMatrix::new((0..rank).map(|i| format!("s{i}")).collect(), m)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn m(&self, i: usize, j: usize) -> u32 {
        self.m[i][j]
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.m
    }

    /// `B(s,t) = -cos(π/m(s,t))`, with `π/∞ = 0`.
    pub fn cosine_form(&self) -> DMatrix<f64> {
        let r = self.rank();
        DMatrix::from_fn(r, r, |i, j| {
            if i == j {
                1.0
            } else if self.m[i][j] == 0 {
                -1.0
            } else {
                -(std::f64::consts::PI / self.m[i][j] as f64).cos()
            }
        })
    }

    /// Connected components of the diagram with edges `m ≥ 3` (or `∞`).
    pub fn irreducible_components(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut comp = vec![usize::MAX; r];
        let mut out = vec![];
        for s in 0..r {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in 0..r {
                    if comp[w] == usize::MAX && (self.m[v][w] >= 3 || self.m[v][w] == 0) {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Principal submatrix on the given generators (in that order).
    pub fn restrict(&self, idx: &[usize]) -> CoxeterMatrix {
        CoxeterMatrix {
            generators: idx.iter().map(|&i| self.generators[i].clone()).collect(),
            m: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.m[i][j]).collect())
                .collect(),
        }
    }

    /// Same matrix with generators reordered by `perm` (new `i` = old `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> CoxeterMatrix {
        self.restrict(perm)
    }

    fn form_type(&self) -> (FormType, Vec<f64>) {
        let eig = SymmetricEigen::new(self.cosine_form()).eigenvalues;
        let mut ev: Vec<f64> = eig.iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        let min = ev.first().copied().unwrap_or(1.0);
        let zeros = ev.iter().filter(|x| x.abs() <= EPS_GRAM).count();
        let t = if min > EPS_GRAM {
            FormType::Spherical
        } else if min >= -EPS_GRAM && zeros == 1 {
            FormType::Euclidean
        } else {
            FormType::Other
        };
        (t, ev)
    }

    pub fn is_spherical(&self) -> bool {
        self.form_type().0 == FormType::Spherical
    }

    /// Spherical iff definite; Euclidean iff every irreducible component is
    /// semidefinite with a one-dimensional kernel. The group order of a
    /// spherical system is found by enumeration under `budget`.
    pub fn classify_with_budget(&self, budget: usize) -> CoxeterClassification {
        let (_, eigenvalues) = self.form_type();
        let components = self.irreducible_components();
        let component_verdicts: Vec<FormType> = components
            .iter()
            .map(|c| self.restrict(c).form_type().0)
            .collect();
        let verdict = if component_verdicts.iter().all(|&v| v == FormType::Spherical) {
            FormType::Spherical
        } else if component_verdicts.iter().all(|&v| v == FormType::Euclidean) {
            FormType::Euclidean
        } else {
            FormType::Other
        };
        let mut group_order = None;
        let mut order_unknown = false;
        if verdict == FormType::Spherical {
            let mut total: u64 = 1;
            for c in &components {
                match ReflectionGroup::generate(&self.restrict(c), budget) {
                    Ok(g) => total = total.saturating_mul(g.order() as u64),
                    Err(_) => order_unknown = true,
                }
            }
            if !order_unknown {
                group_order = Some(total);
            }
        }
        CoxeterClassification {
            verdict,
            components,
            component_verdicts,
            group_order,
            order_unknown,
            determinant: eigenvalues.iter().product(),
            eigenvalues,
        }
    }

    pub fn classify(&self) -> CoxeterClassification {
        self.classify_with_budget(DEFAULT_GROUP_BUDGET)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterMatrix {
        CoxeterMatrix::named("A2").unwrap()
    }

    #[test]
    fn cosine_form_examples() {
        let b = a2().cosine_form();
        assert!((b[(0, 1)] + 0.5).abs() < 1e-12);
        let inf = CoxeterMatrix::from_edges(2, &[(0, 1, 0)]).unwrap().cosine_form();
        assert!((inf[(0, 1)] + 1.0).abs() < 1e-12);
        let a1 = CoxeterMatrix::named("A1").unwrap().cosine_form();
        assert_eq!(a1, DMatrix::from_element(1, 1, 1.0));
    }

    #[test]
    fn classify_examples() {
        let c = a2().classify();
        assert_eq!(c.verdict, FormType::Spherical);
        assert_eq!(c.group_order, Some(6));
        assert!((c.eigenvalues[0] - 0.5).abs() < 1e-9);
        assert!((c.eigenvalues[1] - 1.5).abs() < 1e-9);

        let c = CoxeterMatrix::named("~A2").unwrap().classify();
        assert_eq!(c.verdict, FormType::Euclidean);
        assert!(c.determinant.abs() <= 1e-9);
        assert_eq!(c.group_order, None);

        let c = CoxeterMatrix::named("I2(5)").unwrap().classify();
        assert_eq!(c.verdict, FormType::Spherical);
        assert_eq!(c.group_order, Some(10));
    }

    #[test]
    fn hyperbolic_and_mixed_are_other() {
        let c = CoxeterMatrix::from_edges(3, &[(0, 1, 7), (1, 2, 3)]).unwrap();
        assert_eq!(c.classify().verdict, FormType::Other);
        let mixed = CoxeterMatrix::named("A1x~A2").unwrap();
        assert_eq!(mixed.classify().verdict, FormType::Other);
    }

    #[test]
    fn components() {
        let c = CoxeterMatrix::named("A1xA1").unwrap();
        assert_eq!(c.irreducible_components(), vec![vec![0], vec![1]]);
        assert_eq!(CoxeterMatrix::named("A3").unwrap().irreducible_components().len(), 1);
        let c = CoxeterMatrix::named("A2xB2").unwrap();
        let comps = c.irreducible_components();
        assert_eq!(comps.iter().map(|c| c.len()).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn validation_errors() {
        assert!(CoxeterMatrix::new(vec!["s".into()], vec![vec![2]]).is_err());
        assert!(CoxeterMatrix::new(
            vec!["s".into(), "t".into()],
            vec![vec![1, 3], vec![4, 1]]
        )
        .is_err());
        assert!(CoxeterMatrix::new(
            vec!["s".into(), "t".into()],
            vec![vec![1, 1], vec![1, 1]]
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"generators":["s","t"],"m":[[1,0],[0,1]]}"#;
        let c = CoxeterMatrix::from_json(s).unwrap();
        assert_eq!(c.m(0, 1), 0);
        assert_eq!(c.to_json(), s);
    }
}
