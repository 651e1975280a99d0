use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vassbound::lp::{LpProblem, LpRow, LpVar, Relation};
use vassbound::Vass;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected VASS with at most `max_vars` variables, `max_transitions`
/// transitions and updates in `[-2, 2]`.
pub fn random_vass(rng: &mut ChaCha8Rng, max_vars: usize, max_transitions: usize) -> Vass {
    loop {
        let dim = rng.gen_range(1..=max_vars);
        let states = rng.gen_range(1..=3usize);
        let m = rng.gen_range(states.max(1)..=max_transitions);
        let vars: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
        let ts = (0..m)
            .map(|_| {
                let s = format!("s{}", rng.gen_range(0..states));
                let t = format!("s{}", rng.gen_range(0..states));
                (s, (0..dim).map(|_| rng.gen_range(-2..=2)).collect(), t)
            })
            .collect();
        let Ok(v) = Vass::new(vars, ts) else { continue };
        if v.states().len() == states && v.is_connected() {
            return v;
        }
    }
}

/// Homogeneous problem over up to five variables with random `>=` and `=`
/// rows; every `>=` row is a strict candidate.
pub fn random_lp(rng: &mut ChaCha8Rng) -> LpProblem {
    let n = rng.gen_range(1..=5usize);
    let rows = rng.gen_range(1..=6usize);
    let vars = (0..n)
        .map(|i| LpVar {
            name: format!("v{i}"),
            nonneg: rng.gen_bool(0.6),
        })
        .collect();
    let mut lp_rows = Vec::new();
    let mut candidates = BTreeSet::new();
    for r in 0..rows {
        let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let relation = if rng.gen_bool(0.75) { Relation::Ge } else { Relation::Eq };
        if relation == Relation::Ge {
            candidates.insert(r);
        }
        lp_rows.push(LpRow::from_ints(&coeffs, relation));
    }
    let p = LpProblem::new(vars, lp_rows, candidates).expect("well formed");
    debug_assert!(p.is_homogeneous());
    p
}
