//! Certificates and diagnoses for spherical and Euclidean buildings.
//!
//! Every check returns either a [`BuildingCertificate`] carrying positive
//! evidence (Coxeter data, apartments, thickness, verified axioms) or a
//! [`Diagnosis`] naming the first failed hypothesis together with a witness
//! that can be re-checked independently.

mod apartments;
mod def52;
mod dep;
mod dim1;
mod euclidean;
mod pi1;
mod spherical;

use serde::Serialize;

use crate::angle::Angle;
use crate::budget::Budgets;
use crate::complex::{Geometry, MetricComplex};
use crate::coxeter::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::graph::MetricGraph;

pub use def52::{verify_def52, Atlas, Chart, Def52Report};
pub use dep::{discrete_extension_check, DepReport};
pub use dim1::{enumerate_apartments_dim1, recognize_dim1};
pub use euclidean::{check_euclidean, BoundaryPolicy};
pub use pi1::{simple_connectivity, Pi1};
pub use spherical::{check_spherical, dihedral_angle};
pub(crate) use spherical::recognize_any;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ThickBuilding,
    ThinBuilding,
    Suspension,
    /// A spherical building that is neither thick, thin nor a suspension.
    Building,
    MetricEuclideanBuilding,
    MetricEuclideanBuildingLocal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    NotConnected,
    Valence,
    Systole,
    Diameter,
    EdgeLengthNonuniform,
    LinkFailure,
    Codim1CellCount,
    DepEmpty,
    DepNotDiscrete,
    NotSimplyConnected,
    UnknownPi1,
    /// Exhaustive apartment search contradicts the building axioms.
    ApartmentAxiom,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Components { components: Vec<Vec<String>> },
    Vertex { vertex: String, valence: usize },
    Cycle { vertices: Vec<String>, length: Angle },
    PointPair { p: String, q: String, distance: Angle },
    Edges { first: (String, String, Angle), second: (String, String, Angle) },
    Cell { cell: Vec<String>, cofaces: usize },
    Direction { vertex: String, direction: String },
    Loop { vertices: Vec<String> },
    Simplices { first: Vec<String>, second: Vec<String> },
    Text { detail: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnosis {
    pub condition: Condition,
    pub witness: Witness,
    /// The cell whose link failed (for `link_failure`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<Diagnosis>>,
}

impl Diagnosis {
    pub fn new(condition: Condition, witness: Witness) -> Self {
        Diagnosis { condition, witness, cell: None, inner: None }
    }

    pub fn link_failure(cell: Vec<String>, inner: Diagnosis) -> Self {
        Diagnosis {
            condition: Condition::LinkFailure,
            witness: Witness::Cell { cell: cell.clone(), cofaces: 0 },
            cell: Some(cell),
            inner: Some(Box::new(inner)),
        }
    }

    /// The innermost failed condition.
    pub fn root_condition(&self) -> Condition {
        match &self.inner {
            Some(d) => d.root_condition(),
            None => self.condition,
        }
    }

    /// Whether the outcome is "undecided" rather than a failure.
    pub fn is_undecided(&self) -> bool {
        self.root_condition() == Condition::UnknownPi1
    }
}

/// One apartment. For graphs `chambers` are edge ids in cycle order and
/// `vertices` the cycle; for higher dimension `chambers` are top-cell
/// indices (sorted) and `vertices` the sorted vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Apartment {
    pub chambers: Vec<usize>,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ApartmentSummary {
    pub count: usize,
    pub exhaustive: bool,
    #[serde(skip)]
    pub list: Vec<Apartment>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    /// Any two simplices lie in a common apartment.
    pub axiom2: bool,
    /// Apartments sharing a chamber are isomorphic fixing the intersection.
    pub axiom3: bool,
    pub pairs_checked: usize,
    pub sampled: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuspensionInfo {
    pub poles: Vec<String>,
    pub base: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildingCertificate {
    pub geometry: Geometry,
    pub dimension: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coxeter: Option<CoxeterMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coxeter_type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dihedral_m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thickness: Option<usize>,
    pub apartments: ApartmentSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suspension: Option<SuspensionInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi1: Option<Pi1>,
    pub flags: Vec<String>,
    /// Type (generator index) of every vertex, when a type function exists.
    #[serde(skip)]
    pub vertex_types: Option<Vec<usize>>,
}

pub const FLAG_GLOBAL_UNVERIFIED: &str = "global_curvature_unverified";
pub const FLAG_SAMPLED: &str = "apartments_sampled";

impl BuildingCertificate {
    pub(crate) fn new(geometry: Geometry, dimension: usize, verdict: Verdict) -> Self {
        BuildingCertificate {
            geometry,
            dimension,
            verdict,
            coxeter: None,
            coxeter_type: None,
            dihedral_m: None,
            thickness: None,
            apartments: ApartmentSummary { count: 0, exhaustive: true, list: vec![] },
            axioms: None,
            suspension: None,
            pi1: None,
            flags: vec![],
            vertex_types: None,
        }
    }

    pub(crate) fn set_coxeter(&mut self, m: CoxeterMatrix) {
        self.coxeter_type = Some(m.type_name());
        self.coxeter = Some(m);
    }

    pub fn is_undecided(&self) -> bool {
        self.flags.iter().any(|f| f == FLAG_GLOBAL_UNVERIFIED)
    }
}

pub type Recognition = std::result::Result<BuildingCertificate, Diagnosis>;

/// Coarse outcome, used for exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Certified,
    Diagnosed,
    Undecided,
}

pub fn outcome(r: &Recognition) -> Outcome {
    match r {
        Ok(c) if c.is_undecided() => Outcome::Undecided,
        Ok(_) => Outcome::Certified,
        Err(d) if d.is_undecided() => Outcome::Undecided,
        Err(_) => Outcome::Diagnosed,
    }
}

/// Dispatches on geometry and dimension. Input errors (invalid complexes)
/// are `Err`; recognition results are inside the `Ok`.
pub fn recognize(
    c: &MetricComplex,
    policy: BoundaryPolicy,
    budgets: &Budgets,
) -> Result<Recognition> {
    c.ensure_valid()?;
    if c.is_empty() {
        return Err(Error::Empty);
    }
    match (c.geometry(), c.dimension()) {
        (Geometry::Spherical, 0) => Ok(recognize_discrete(c)),
        (Geometry::Spherical, 1) => Ok(recognize_dim1(&MetricGraph::from_complex(c)?, budgets)),
        (Geometry::Spherical, _) => check_spherical(c, budgets),
        (Geometry::Euclidean, _) => check_euclidean(c, policy, budgets),
    }
}

/// A finite set of at least two points is a rank-1 building (type `A1`);
/// thick with three or more points.
pub fn recognize_discrete(c: &MetricComplex) -> Recognition {
    let k = c.vertex_count();
    if k < 2 {
        return Err(Diagnosis::new(
            Condition::Codim1CellCount,
            Witness::Cell { cell: vec![], cofaces: k },
        ));
    }
    let verdict = if k >= 3 { Verdict::ThickBuilding } else { Verdict::ThinBuilding };
    let mut cert = BuildingCertificate::new(Geometry::Spherical, 0, verdict);
    cert.set_coxeter(CoxeterMatrix::named("A1").expect("A1"));
    cert.thickness = Some(k);
    let mut list = vec![];
    for a in 0..k {
        for b in a + 1..k {
            list.push(Apartment { chambers: vec![a, b], vertices: vec![a, b] });
        }
    }
    cert.apartments = ApartmentSummary { count: list.len(), exhaustive: true, list };
    cert.axioms = Some(AxiomReport {
        axiom2: true,
        axiom3: true,
        pairs_checked: k * (k - 1) / 2,
        sampled: false,
    });
    cert.vertex_types = Some(vec![0; k]);
    Ok(cert)
}

pub(crate) fn names(c: &MetricComplex, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| c.name(v).to_string()).collect()
}
