//! JSON complex format.
//!
//! ```json
//! { "geometry": "spherical", "dimension": 1, "vertices": ["a","b"],
//!   "top_cells": [[0,1]], "edge_lengths": [{"edge":[0,1],"pi":[1,2]}] }
//! ```
//!
//! Writing always lists every edge explicitly in sorted order, so
//! write → read → write is byte-identical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{edge_key, Geometry, MetricComplex};
use crate::angle::{Angle, AngleRepr};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeLength {
    pub edge: [usize; 2],
    #[serde(flatten)]
    pub length: AngleRepr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub geometry: Geometry,
    pub dimension: usize,
    pub vertices: Vec<String>,
    pub top_cells: Vec<Vec<usize>>,
    #[serde(default)]
    pub edge_lengths: Vec<EdgeLength>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_length: Option<AngleRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<Vec<f64>>>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<MetricComplex> {
        let n = self.vertices.len();
        let mut given: BTreeMap<(usize, usize), ([usize; 2], Angle)> = BTreeMap::new();
        for el in self.edge_lengths {
            let [a, b] = el.edge;
            if a >= n || b >= n {
                return Err(Error::Malformed(format!(
                    "edge [{a},{b}] references a dangling vertex index"
                )));
            }
            if a == b {
                return Err(Error::Malformed(format!("self-edge [{a},{b}]")));
            }
            let len = Angle::try_from(el.length)?;
            let key = edge_key(a, b);
            if let Some((orig, prev)) = given.get(&key) {
                if !prev.approx_eq(&len) {
                    if *orig != el.edge {
                        return Err(Error::Malformed(format!(
                            "asymmetric lengths for edge [{a},{b}]: {prev} vs {len}"
                        )));
                    }
                    return Err(Error::Gluing {
                        edge: (self.vertices[key.0].clone(), self.vertices[key.1].clone()),
                        first: prev.to_string(),
                        second: len.to_string(),
                    });
                }
            } else {
                given.insert(key, (el.edge, len));
            }
        }
        let default = self.default_length.map(Angle::try_from).transpose()?;
        let mut lengths: BTreeMap<(usize, usize), Angle> =
            given.into_iter().map(|(k, (_, l))| (k, l)).collect();
        for cell in &self.top_cells {
            if let Some(&bad) = cell.iter().find(|&&v| v >= n) {
                return Err(Error::Malformed(format!("dangling vertex index {bad}")));
            }
            for i in 0..cell.len() {
                for j in i + 1..cell.len() {
                    if cell[i] == cell[j] {
                        continue;
                    }
                    let key = edge_key(cell[i], cell[j]);
                    if let std::collections::btree_map::Entry::Vacant(slot) = lengths.entry(key) {
                        let d = default.ok_or_else(|| {
                            Error::Malformed(format!(
                                "edge ({}, {}) has no length and no default_length is declared",
                                self.vertices[key.0], self.vertices[key.1]
                            ))
                        })?;
                        slot.insert(d);
                    }
                }
            }
        }
        let mut c = MetricComplex::new(
            self.geometry,
            self.dimension,
            self.vertices,
            self.top_cells,
            lengths,
        )?;
        if let Some(b) = self.boundary {
            c = c.with_boundary(b)?;
        }
        if let Some(x) = self.coordinates {
            c = c.with_coordinates(x)?;
        }
        Ok(c)
    }
}

impl From<&MetricComplex> for ComplexFile {
    fn from(c: &MetricComplex) -> Self {
        ComplexFile {
            geometry: c.geometry(),
            dimension: c.dimension(),
            vertices: c.vertex_names().to_vec(),
            top_cells: c.top_cells().to_vec(),
            edge_lengths: c
                .edges()
                .map(|((a, b), l)| EdgeLength {
                    edge: [a, b],
                    length: l.into(),
                })
                .collect(),
            default_length: None,
            boundary: c.declared_boundary().map(|b| b.to_vec()),
            coordinates: c.coordinates().map(|x| x.to_vec()),
        }
    }
}

impl MetricComplex {
    pub fn from_json(s: &str) -> Result<MetricComplex> {
        let f: ComplexFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        f.into_complex()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexFile::from(self)).expect("serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&ComplexFile::from(self)).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_default_length() {
        let s = r#"{"geometry":"spherical","dimension":1,"vertices":["a","b","c"],
            "top_cells":[[0,1],[1,2]],"edge_lengths":[{"edge":[1,0],"pi":[1,3]}],
            "default_length":{"pi":[1,2]}}"#;
        let c = MetricComplex::from_json(s).unwrap();
        assert_eq!(c.length(0, 1).unwrap().as_pi_frac(), Some((1, 3)));
        assert_eq!(c.length(1, 2).unwrap().as_pi_frac(), Some((1, 2)));
    }

    #[test]
    fn missing_length_without_default_is_rejected() {
        let s = r#"{"geometry":"spherical","dimension":1,"vertices":["a","b"],
            "top_cells":[[0,1]],"edge_lengths":[]}"#;
        assert!(matches!(MetricComplex::from_json(s), Err(Error::Malformed(_))));
    }

    #[test]
    fn dangling_index_and_conflicts() {
        let s = r#"{"geometry":"spherical","dimension":1,"vertices":["a","b"],
            "top_cells":[[0,2]],"default_length":{"pi":[1,2]}}"#;
        assert!(matches!(MetricComplex::from_json(s), Err(Error::Malformed(_))));
        let s = r#"{"geometry":"spherical","dimension":1,"vertices":["a","b"],
            "top_cells":[[0,1]],"edge_lengths":[{"edge":[0,1],"pi":[1,2]},{"edge":[1,0],"pi":[1,3]}]}"#;
        assert!(matches!(MetricComplex::from_json(s), Err(Error::Malformed(_))));
        let s = r#"{"geometry":"spherical","dimension":1,"vertices":["a","b"],
            "top_cells":[[0,1]],"edge_lengths":[{"edge":[0,1],"pi":[1,2]},{"edge":[0,1],"pi":[1,3]}]}"#;
        assert!(matches!(MetricComplex::from_json(s), Err(Error::Gluing { .. })));
        assert!(matches!(MetricComplex::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn exact_round_trip_is_byte_identical() {
        let s = r#"{"geometry":"spherical","dimension":1,"vertices":["a","b","c"],
            "top_cells":[[0,1],[1,2],[2,0]],"default_length":{"pi":[2,3]}}"#;
        let c = MetricComplex::from_json(s).unwrap();
        let once = c.to_json();
        let twice = MetricComplex::from_json(&once).unwrap().to_json();
        assert_eq!(once, twice);
        assert!(once.contains(r#"{"edge":[0,1],"pi":[2,3]}"#));
    }
}
