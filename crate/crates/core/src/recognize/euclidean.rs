use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::pi1::{simple_connectivity, Pi1};
use super::spherical::{assemble_coxeter, check_codim1, check_vertex_links, ChamberSystem};
use super::{names, ApartmentSummary, BuildingCertificate, Condition, Diagnosis, Recognition, Verdict, Witness};
use crate::budget::Budgets;
use crate::complex::{Geometry, MetricComplex};
use crate::error::{Error, Result};

/// How boundary vertices are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryPolicy {
    /// The complex is a finite window into a larger space: boundary
    /// vertices and panels through them are not checked and the verdict is
    /// local.
    #[default]
    Window,
    /// Every vertex must be interior.
    Strict,
}

/// Local-to-global recognition of a Euclidean building: every interior
/// vertex link is a spherical building, and the space is simply connected.
pub fn check_euclidean(c: &MetricComplex, policy: BoundaryPolicy, budgets: &Budgets) -> Result<Recognition> {
    if c.geometry() != Geometry::Euclidean {
        return Err(Error::Geometry("check_euclidean needs a Euclidean complex".into()));
    }
    c.ensure_valid()?;
    let n = c.dimension();
    if n < 2 {
        return Err(Error::Precondition("Euclidean recognition needs dimension at least 2".into()));
    }
    if !c.is_connected() {
        return Ok(Err(Diagnosis::new(
            Condition::NotConnected,
            Witness::Components { components: c.components().iter().map(|comp| names(c, comp)).collect() },
        )));
    }
    let exempt: BTreeSet<usize> = match policy {
        BoundaryPolicy::Window => c.boundary_vertices(),
        BoundaryPolicy::Strict => BTreeSet::new(),
    };
    if let Some(d) = check_codim1(c, &exempt) {
        return Ok(Err(d));
    }
    let flags = match check_vertex_links(c, &exempt, budgets)? {
        Ok(f) => f,
        Err(d) => return Ok(Err(d)),
    };

    let mut cert = BuildingCertificate::new(Geometry::Euclidean, n, Verdict::MetricEuclideanBuilding);
    cert.flags = flags;
    cert.apartments = ApartmentSummary { count: 0, exhaustive: false, list: vec![] };
    if let Ok(sys) = ChamberSystem::build(c) {
        if let Ok(m) = assemble_coxeter(c, &sys) {
            cert.set_coxeter(m);
            cert.vertex_types = Some(sys.types);
        }
    }
    cert.thickness = c
        .faces(n - 1)
        .iter()
        .filter(|f| f.iter().all(|v| !exempt.contains(v)))
        .map(|f| c.coface_count(f))
        .min();

    let pi1 = simple_connectivity(c, budgets);
    match policy {
        BoundaryPolicy::Strict => match &pi1 {
            Pi1::Trivial => {}
            Pi1::Nontrivial { loop_vertices, .. } => {
                return Ok(Err(Diagnosis::new(
                    Condition::NotSimplyConnected,
                    Witness::Loop { vertices: loop_vertices.clone() },
                )))
            }
            Pi1::Unknown { generators, relators } => {
                return Ok(Err(Diagnosis::new(
                    Condition::UnknownPi1,
                    Witness::Text {
                        detail: format!("presentation left with {generators} generators and {relators} relators"),
                    },
                )))
            }
        },
        BoundaryPolicy::Window => cert.verdict = Verdict::MetricEuclideanBuildingLocal,
    }
    cert.pi1 = Some(pi1);
    Ok(Ok(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::coxeter::CoxeterMatrix;

    #[test]
    fn affine_window_is_local_building() {
        let w = CoxeterMatrix::named("~A2").unwrap().euclidean_window(3).unwrap();
        let cert = check_euclidean(&w.complex, BoundaryPolicy::Window, &Budgets::default())
            .unwrap()
            .unwrap();
        assert_eq!(cert.verdict, Verdict::MetricEuclideanBuildingLocal);
        assert_eq!(cert.pi1, Some(Pi1::Trivial));
        assert_eq!(cert.coxeter_type.as_deref(), Some("~A2"));
        assert_eq!(cert.thickness, Some(2));
    }

    #[test]
    fn strict_policy_rejects_boundary() {
        let w = CoxeterMatrix::named("~A2").unwrap().euclidean_window(3).unwrap();
        let d = check_euclidean(&w.complex, BoundaryPolicy::Strict, &Budgets::default())
            .unwrap()
            .unwrap_err();
        assert_eq!(d.condition, Condition::Codim1CellCount);
    }

    #[test]
    fn perturbed_edge_breaks_a_link() {
        let w = CoxeterMatrix::named("~A2").unwrap().euclidean_window(3).unwrap();
        let c = &w.complex;
        let o = c.vertex("s0@e").unwrap();
        let nb = c.neighbors(o)[0];
        let mut lengths = c.lengths().clone();
        *lengths.get_mut(&crate::complex::edge_key(o, nb)).unwrap() = Angle::Approx(1.01);
        let p = MetricComplex::new(
            Geometry::Euclidean,
            2,
            c.vertex_names().to_vec(),
            c.top_cells().to_vec(),
            lengths,
        )
        .unwrap();
        let d = check_euclidean(&p, BoundaryPolicy::Window, &Budgets::default()).unwrap().unwrap_err();
        assert_eq!(d.condition, Condition::LinkFailure);
    }
}
