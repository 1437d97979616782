//! Versioned check reports.

use std::fmt::Write as _;

use serde::Serialize;

use crate::recognize::{outcome, ApartmentSummary, Diagnosis, Outcome, Pi1, Recognition};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ApartmentCount {
    pub count: usize,
    pub exhaustive: bool,
}

impl From<&ApartmentSummary> for ApartmentCount {
    fn from(a: &ApartmentSummary) -> Self {
        ApartmentCount { count: a.count, exhaustive: a.exhaustive }
    }
}

/// The report written by `check`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    pub outcome: Outcome,
    /// Certificate verdict, or `"diagnosed"` / `"undecided"`.
    pub verdict: String,
    pub coxeter: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dihedral_m: Option<u32>,
    pub thickness: Option<usize>,
    pub apartments: Option<ApartmentCount>,
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi1: Option<Pi1>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnosis: Option<Diagnosis>,
}

impl CheckReport {
    pub fn new(r: &Recognition) -> Self {
        let out = outcome(r);
        match r {
            Ok(c) => CheckReport {
                schema: SCHEMA,
                file: None,
                outcome: out,
                verdict: serde_json::to_value(c.verdict).expect("verdict").as_str().expect("str").to_string(),
                coxeter: c.coxeter_type.clone(),
                dihedral_m: c.dihedral_m,
                thickness: c.thickness,
                apartments: Some((&c.apartments).into()),
                flags: c.flags.clone(),
                pi1: c.pi1.clone(),
                diagnosis: None,
            },
            Err(d) => CheckReport {
                schema: SCHEMA,
                file: None,
                outcome: out,
                verdict: if out == Outcome::Undecided { "undecided" } else { "diagnosed" }.into(),
                coxeter: None,
                dihedral_m: None,
                thickness: None,
                apartments: None,
                flags: vec![],
                pi1: None,
                diagnosis: Some(d.clone()),
            },
        }
    }

    pub fn with_file(mut self, file: impl Into<String>) -> Self {
        self.file = Some(file.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(f) = &self.file {
            let _ = writeln!(s, "file: {f}");
        }
        let _ = writeln!(s, "verdict: {}", self.verdict);
        if let Some(c) = &self.coxeter {
            let _ = writeln!(s, "coxeter: {c}");
        }
        if let Some(m) = self.dihedral_m {
            let _ = writeln!(s, "m: {m}");
        }
        if let Some(t) = self.thickness {
            let _ = writeln!(s, "thickness: {t}");
        }
        if let Some(a) = &self.apartments {
            let _ = writeln!(s, "apartments: {}{}", a.count, if a.exhaustive { "" } else { " (sampled)" });
        }
        if !self.flags.is_empty() {
            let _ = writeln!(s, "flags: {}", self.flags.join(", "));
        }
        if let Some(d) = &self.diagnosis {
            let _ = writeln!(s, "diagnosis: {}", describe(d));
        }
        s
    }
}

/// One-line rendering of a (possibly nested) diagnosis.
pub fn describe(d: &Diagnosis) -> String {
    let cond = serde_json::to_value(d.condition).expect("condition");
    let witness = serde_json::to_string(&d.witness).expect("witness");
    let mut s = format!("{} {}", cond.as_str().expect("str"), witness);
    if let Some(inner) = &d.inner {
        s.push_str(" <- ");
        s.push_str(&describe(inner));
    }
    s
}
