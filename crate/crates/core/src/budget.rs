//! Search budgets. Every exhaustive search in the crate is capped; the
//! defaults can be overridden from JSON (the CLI reads `BUILDCTL_BUDGETS`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    /// Reflection group elements.
    pub group: usize,
    /// Partial galleries / cycle-search steps during apartment enumeration.
    pub apartments: usize,
    /// Random simplex pairs checked when enumeration is not exhaustive.
    pub axiom_samples: usize,
    /// Initial direction grid for geodesic shooting.
    pub shooting_directions: usize,
    pub bisection_depth: u32,
    pub eps_hit: f64,
    /// Geodesic branches kept during extension.
    pub branches: usize,
    /// Wedges per propagated apartment.
    pub wedges: usize,
    /// Backtracking steps in the finite-quotient search for π₁.
    pub pi1_search: usize,
    /// Segments sampled by the Euclidean atlas check.
    pub def52_samples: usize,
    pub seed: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            group: 1_000_000,
            apartments: 100_000,
            axiom_samples: 1_000,
            shooting_directions: 720,
            bisection_depth: 40,
            eps_hit: 1e-6,
            branches: 4_096,
            wedges: 10_000,
            pi1_search: 200_000,
            def52_samples: 256,
            seed: 0x5eed,
        }
    }
}

impl Budgets {
    /// Defaults with the fields present in `json` overridden.
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("budgets: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_override() {
        let b = Budgets::from_json(r#"{"apartments": 10}"#).unwrap();
        assert_eq!(b.apartments, 10);
        assert_eq!(b.group, 1_000_000);
        assert!(Budgets::from_json(r#"{"nope": 1}"#).is_err());
    }
}
