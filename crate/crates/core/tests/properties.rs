mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use vassbound::analyzer::{analyze, AnalyzeOptions, Bound, Status};
use vassbound::lp::{lp_feasible, max_strict_set};
use vassbound::oracle::{self, Outcome};
use vassbound::seq::Seq;
use vassbound::witness::{build_witness, exponential_certificate, verify_witness};
use vassbound::{models, parse_vass, Vass};

fn vass_from_seed(seed: u64) -> Vass {
    common::random_vass(&mut common::rng(seed), 3, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_round_trips(seed in any::<u64>()) {
        let v = vass_from_seed(seed);
        let text = v.to_canonical_string();
        let back = parse_vass(&text).unwrap();
        prop_assert_eq!(back.to_canonical_string(), text);
    }

    #[test]
    fn analysis_is_deterministic(seed in any::<u64>()) {
        let v = vass_from_seed(seed);
        let a = analyze(&v, AnalyzeOptions::default()).unwrap();
        let b = analyze(&v, AnalyzeOptions::default()).unwrap();
        prop_assert_eq!(a.report, b.report);
    }

    #[test]
    fn status_matches_bounds(seed in any::<u64>()) {
        let v = vass_from_seed(seed);
        let a = analyze(&v, AnalyzeOptions::default()).unwrap();
        let all: Vec<Bound> = a.report.vexp.iter().chain(&a.report.texp).copied().collect();
        match a.report.status {
            Status::Polynomial => {
                let cap = 1u64 << v.dim();
                prop_assert!(all.iter().all(|b| matches!(b, Bound::Finite(k) if *k <= cap)));
                if !v.transitions().is_empty() {
                    prop_assert!(a.report.texp.iter().all(|b| *b >= Bound::Finite(1)));
                }
            }
            Status::Exponential => {
                prop_assert!(all.contains(&Bound::Inf));
                let cert = exponential_certificate(&v, &a).unwrap();
                prop_assert!(cert.check(&v).is_ok());
            }
        }
    }

    #[test]
    fn tree_layers_are_disjoint_and_nested(seed in any::<u64>()) {
        let v = vass_from_seed(seed);
        let a = analyze(&v, AnalyzeOptions::default()).unwrap();
        let tree = &a.tree;
        for l in 0..=tree.depth() {
            let mut seen = std::collections::BTreeSet::new();
            for id in tree.layer(l) {
                for s in &tree.node(id).label.states {
                    prop_assert!(seen.insert(*s));
                }
            }
        }
        for node in &tree.nodes {
            if let Some(p) = node.parent {
                let parent = tree.node(p);
                prop_assert!(node.label.states.is_subset(&parent.label.states));
                prop_assert!(node.label.transitions.is_subset(&parent.label.transitions));
                prop_assert_eq!(node.span.0, parent.span.1 + 1);
            }
        }
    }

    #[test]
    fn witnesses_verify(seed in any::<u64>(), n in 1u64..=3) {
        let v = vass_from_seed(seed);
        let a = analyze(&v, AnalyzeOptions::default()).unwrap();
        prop_assume!(a.report.status == Status::Polynomial);
        let w = build_witness(&v, &a, n).unwrap();
        let r = verify_witness(&v, &w, &a.report.vexp, &a.report.texp);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn polynomial_systems_terminate_and_grow_monotonically(seed in any::<u64>()) {
        let v = vass_from_seed(seed);
        let a = analyze(&v, AnalyzeOptions::default()).unwrap();
        prop_assume!(a.report.status == Status::Polynomial);
        let mut prev = 0;
        for n in 0..=2 {
            match oracle::longest_trace(&v, n, oracle::DEFAULT_BUDGET).unwrap() {
                Outcome::Values(xs) => {
                    prop_assert!(xs[0] >= prev);
                    prev = xs[0];
                }
                Outcome::NonTerminating(l) => prop_assert!(false, "lasso {:?}", l),
            }
        }
    }

    #[test]
    fn exclusions_are_maximal(seed in any::<u64>()) {
        let p = common::random_lp(&mut common::rng(seed));
        let sol = max_strict_set(&p).unwrap();
        prop_assert!(p.satisfied_by(&sol.assignment));
        prop_assert_eq!(&sol.strict_set, &p.strict_rows(&sol.assignment));
        for c in p.strict_candidates.iter().filter(|c| !sol.strict_set.contains(c)) {
            prop_assert!(lp_feasible(&p.tightened(*c)).is_none());
        }
    }

    #[test]
    fn sequence_summaries_match_expansion(
        parts in proptest::collection::vec((proptest::collection::vec(0usize..10, 0..6), 0u64..4), 1..5)
    ) {
        let v = models::running_example();
        let seqs = parts
            .iter()
            .map(|(steps, times)| Seq::repeat(&v, Seq::steps(&v, steps.clone()), *times))
            .collect();
        let s = Seq::concat(&v, seqs);
        let flat = s.to_vec(10_000).unwrap();
        prop_assert_eq!(BigInt::from(flat.len()), s.len().clone());
        prop_assert_eq!(s.min_initial(), v.min_initial_valuation(&flat));
        let counts: Vec<BigInt> = v.instances(&flat).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(s.instances(), counts.as_slice());
    }
}

#[test]
fn k_settles_on_the_running_example() {
    let v = models::running_example();
    let a = analyze(&v, AnalyzeOptions::default()).unwrap();
    let ks: Vec<u64> = (2..=8).map(|n| build_witness(&v, &a, n).unwrap().k).collect();
    assert!(ks.windows(2).all(|w| w[0] == w[1]), "{ks:?}");
}

#[test]
fn oracle_z_grows_at_least_quadratically() {
    let v = models::running_example();
    for n in 1..=3 {
        let z = v.var_index("z").unwrap();
        let Outcome::Values(xs) = oracle::max_reachable(&v, n, z, oracle::DEFAULT_BUDGET).unwrap() else {
            panic!("nontermination");
        };
        assert!(xs[0] >= n * n);
    }
}
