//! Checks shared by all apartment enumerators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budgets;

pub(crate) struct PairCheck {
    pub ok: bool,
    pub checked: usize,
    pub sampled: bool,
    pub failing: Option<(usize, usize)>,
}

/// Axiom (2): every pair of simplices lies in a common apartment. Each
/// apartment is given as the list of simplex ids it contains. Exhaustive
/// over all pairs when `exhaustive`, else on a seeded random sample.
pub(crate) fn check_pairs(
    n_simplices: usize,
    apartments: &[Vec<usize>],
    exhaustive: bool,
    budgets: &Budgets,
) -> PairCheck {
    let words = apartments.len().div_ceil(64).max(1);
    let mut member = vec![vec![0u64; words]; n_simplices];
    for (a, simplices) in apartments.iter().enumerate() {
        for &s in simplices {
            member[s][a / 64] |= 1 << (a % 64);
        }
    }
    let common = |x: usize, y: usize| member[x].iter().zip(&member[y]).any(|(p, q)| p & q != 0);
    if exhaustive {
        let mut checked = 0;
        for x in 0..n_simplices {
            for y in x..n_simplices {
                checked += 1;
                if !common(x, y) {
                    return PairCheck { ok: false, checked, sampled: false, failing: Some((x, y)) };
                }
            }
        }
        return PairCheck { ok: true, checked, sampled: false, failing: None };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budgets.seed);
    let mut checked = 0;
    for _ in 0..budgets.axiom_samples {
        if n_simplices == 0 {
            break;
        }
        let x = rng.gen_range(0..n_simplices);
        let y = rng.gen_range(0..n_simplices);
        checked += 1;
        if !common(x, y) {
            return PairCheck { ok: false, checked, sampled: true, failing: Some((x, y)) };
        }
    }
    PairCheck { ok: true, checked, sampled: true, failing: None }
}
