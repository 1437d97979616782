//! Join and suspension structure of spherical complexes, and factor hints
//! at vertices of Euclidean complexes.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::angle::Angle;
use crate::budget::Budgets;
use crate::complex::{edge_key, Geometry, MetricComplex};
use crate::error::{Error, Result};
use crate::recognize::{recognize_any, BuildingCertificate, Diagnosis, Verdict};

/// An orthogonal `S⁰` factor: `c = {p, p'} * base`.
#[derive(Clone, Debug)]
pub struct SuspensionFactor {
    pub poles: (String, String),
    pub base: MetricComplex,
}

/// Finds a pole pair: two non-adjacent vertices joined to every other
/// vertex by edges of length `π/2`, such that `c` is the join of the pair
/// with the link of the first pole.
pub fn suspension_factor(c: &MetricComplex) -> Option<SuspensionFactor> {
    if c.geometry() != Geometry::Spherical || c.dimension() == 0 || c.is_empty() {
        return None;
    }
    let n = c.vertex_count();
    let full = |p: usize| {
        let nb = c.neighbors(p);
        nb.len() == n - 2 && nb.iter().all(|&w| c.length(p, w).is_some_and(|l| l.approx_eq(&Angle::HALF_PI)))
    };
    for p in (0..n).filter(|&p| full(p)) {
        let nb: BTreeSet<usize> = c.neighbors(p).into_iter().collect();
        let q = (0..n).find(|&q| q != p && !nb.contains(&q)).expect("one non-neighbor");
        if q < p || !full(q) {
            continue;
        }
        let Ok(base) = c.vertex_link(c.name(p)) else { continue };
        let Ok(rebuilt) = MetricComplex::sphere0(c.name(p), c.name(q)).join(&base) else { continue };
        if rebuilt.is_isometric_by_names(c) {
            return Some(SuspensionFactor { poles: (c.name(p).into(), c.name(q).into()), base });
        }
    }
    None
}

/// Splits off `S⁰` factors as long as possible. Returns the pole pairs and
/// the remaining base; a base that is itself `S⁰` is counted as a factor.
pub fn suspension_factors(c: &MetricComplex) -> (Vec<(String, String)>, MetricComplex) {
    let mut poles = vec![];
    let mut cur = c.clone();
    while let Some(s) = suspension_factor(&cur) {
        poles.push(s.poles);
        cur = s.base;
    }
    if cur.dimension() == 0 && cur.vertex_count() == 2 {
        poles.push((cur.name(0).into(), cur.name(1).into()));
    }
    (poles, cur)
}

/// A join factor with its own recognition result.
#[derive(Clone, Debug, Serialize)]
pub struct Factor {
    pub vertices: Vec<String>,
    pub coxeter_type: String,
    pub dimension: usize,
    #[serde(skip)]
    pub complex: MetricComplex,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<BuildingCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnosis: Option<Diagnosis>,
}

/// Full subcomplex on `vs`: the traces of the top cells.
fn trace(c: &MetricComplex, vs: &BTreeSet<usize>) -> Result<MetricComplex> {
    let remap: BTreeMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let cells: BTreeSet<Vec<usize>> = c
        .top_cells()
        .iter()
        .map(|cell| cell.iter().filter(|v| vs.contains(v)).map(|v| remap[v]).collect::<Vec<_>>())
        .filter(|t: &Vec<usize>| !t.is_empty())
        .collect();
    let dim = cells.iter().map(|t| t.len()).max().unwrap_or(1) - 1;
    let mut lengths = BTreeMap::new();
    for (&(a, b), &l) in c.lengths() {
        if let (Some(&x), Some(&y)) = (remap.get(&a), remap.get(&b)) {
            lengths.insert(edge_key(x, y), l);
        }
    }
    let names = vs.iter().map(|&v| c.name(v).to_string()).collect();
    MetricComplex::new(Geometry::Spherical, dim, names, cells.into_iter().collect(), lengths)
}

/// Decomposes a certified spherical building along the irreducible
/// components of its Coxeter matrix, checks that the orthogonal join of
/// the factors gives back `c`, and recognizes each factor.
pub fn join_decompose(c: &MetricComplex, cert: &BuildingCertificate, budgets: &Budgets) -> Result<Vec<Factor>> {
    let coxeter = cert
        .coxeter
        .as_ref()
        .ok_or_else(|| Error::Precondition("certificate carries no Coxeter matrix".into()))?;
    let types = cert
        .vertex_types
        .as_ref()
        .ok_or_else(|| Error::Precondition("certificate carries no type function".into()))?;
    let comps = coxeter.irreducible_components();
    let comp_of: BTreeMap<usize, usize> =
        comps.iter().enumerate().flat_map(|(i, comp)| comp.iter().map(move |&s| (s, i))).collect();
    let mut parts: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); comps.len()];
    for v in 0..c.vertex_count() {
        parts[comp_of[&types[v]]].insert(v);
    }
    if comps.len() > 1 {
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                for &x in a {
                    for &y in b {
                        if !c.length(x, y).is_some_and(|l| l.approx_eq(&Angle::HALF_PI)) {
                            return Err(Error::Integrity(format!(
                                "vertices {} and {} lie in different factors but are not at distance pi/2",
                                c.name(x),
                                c.name(y)
                            )));
                        }
                    }
                }
            }
        }
    }
    let mut factors = vec![];
    for (comp, part) in comps.iter().zip(&parts) {
        let complex = if comps.len() == 1 { c.clone() } else { trace(c, part)? };
        let (certificate, diagnosis) = match recognize_any(&complex, budgets)? {
            Ok(x) => (Some(x), None),
            Err(d) => (None, Some(d)),
        };
        factors.push(Factor {
            vertices: complex.vertex_names().to_vec(),
            coxeter_type: coxeter.restrict(comp).type_name(),
            dimension: complex.dimension(),
            complex,
            certificate,
            diagnosis,
        });
    }
    let mut it = factors.iter().map(|f| &f.complex);
    let first = it.next().expect("at least one factor").clone();
    let joined = it.try_fold(first, |acc, f| acc.join(f))?;
    if !joined.is_isometric_by_names(c) {
        return Err(Error::Integrity("orthogonal join of the factors differs from the input".into()));
    }
    Ok(factors)
}

/// Factor types read off a vertex link of a Euclidean complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorHint {
    /// Round-sphere join factors: a flat `ℝ^dimension` direction.
    Flat { dimension: usize },
    /// A discrete link factor with `branches ≥ 3` points.
    Tree { branches: usize },
    /// A thick irreducible Euclidean building, or the cone on a spherical
    /// one; thin factors are irreducible Coxeter complexes.
    Irreducible { coxeter_type: String, thick: bool },
}

impl FactorHint {
    fn is_singular(&self) -> bool {
        !matches!(self, FactorHint::Flat { .. })
    }
}

/// Factor hints at vertex `x`, from the join decomposition of its link.
pub fn euclidean_factor_hint(c: &MetricComplex, x: &str, budgets: &Budgets) -> Result<Vec<FactorHint>> {
    if c.geometry() != Geometry::Euclidean {
        return Err(Error::Geometry("factor hints need a Euclidean complex".into()));
    }
    let link = c.vertex_link(x)?;
    let cert = recognize_any(&link, budgets)?
        .map_err(|d| Error::Precondition(format!("link of {x} is not certified: {:?}", d.root_condition())))?;
    let factors = join_decompose(&link, &cert, budgets)?;
    let mut flat = 0;
    let mut hints = vec![];
    for f in &factors {
        let thick = f.certificate.as_ref().is_some_and(|c| c.verdict == Verdict::ThickBuilding);
        match (f.dimension, f.vertices.len()) {
            (0, 2) => flat += 1,
            (0, k) => hints.push(FactorHint::Tree { branches: k }),
            _ if !thick => match suspension_factors(&f.complex) {
                (poles, base) if base.dimension() == 0 && base.vertex_count() == 2 => flat += poles.len(),
                _ => hints.push(FactorHint::Irreducible { coxeter_type: f.coxeter_type.clone(), thick }),
            },
            _ => hints.push(FactorHint::Irreducible { coxeter_type: f.coxeter_type.clone(), thick }),
        }
    }
    if flat > 0 {
        hints.insert(0, FactorHint::Flat { dimension: flat });
    }
    Ok(hints)
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexHints {
    pub vertex: String,
    pub hints: Vec<FactorHint>,
}

/// Hints at every interior vertex, and the first vertex (by name) with
/// the most singular factors.
pub fn euclidean_hints(c: &MetricComplex, budgets: &Budgets) -> Result<(Vec<VertexHints>, Option<String>)> {
    let boundary = c.boundary_vertices();
    let mut out = vec![];
    for v in (0..c.vertex_count()).filter(|v| !boundary.contains(v)) {
        let name = c.name(v).to_string();
        let hints = euclidean_factor_hint(c, &name, budgets)?;
        out.push(VertexHints { vertex: name, hints });
    }
    let best = out
        .iter()
        .map(|h| (h.hints.iter().filter(|x| x.is_singular()).count(), &h.vertex))
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(a.1)))
        .map(|(_, v)| v.clone());
    Ok((out, best))
}
