//! Algebraic invariants of formulas, elimination, and the general engines,
//! checked on small random formulas against the brute-force oracles.

use std::collections::HashSet;
use std::ops::ControlFlow;

use proptest::prelude::*;
use xorsig::bits::Bits;
use xorsig::flashlight::{all_signatures, enumerate_all, extendable, FlashlightOptions};
use xorsig::formula::{emit_xnf, parse_xnf, preprocess, Assignment, PreprocessMode, Signature, XorClause, XorCnf};
use xorsig::gf2::{self, EchelonState};
use xorsig::maxgen::{gc, is_maximal, is_minimal, is_signature, max_signatures, min_signatures, MaxEngine};
use xorsig::oracle::{brute_all, brute_max, brute_min, canonical};

/// Formulas with up to `max_n` variables and `max_m` clauses; duplicates
/// and complementary pairs occur.
fn formula(max_n: usize, max_m: usize) -> impl Strategy<Value = XorCnf> {
    (1..=max_n).prop_flat_map(move |n| {
        let clause = (1u32..(1 << n), any::<bool>()).prop_map(move |(mask, parity)| {
            XorClause::new((0..n).filter(|v| mask >> v & 1 == 1).map(|v| v + 1), parity).unwrap()
        });
        proptest::collection::vec(clause, 0..=max_m).prop_map(move |cs| XorCnf::new(n, cs).unwrap())
    })
}

fn assignment(n: usize, seed: u64) -> Assignment {
    Assignment::new(Bits::from_indices(n, (0..n).filter(|i| seed >> i & 1 == 1)))
}

fn set(v: Vec<Signature>) -> Vec<Signature> {
    canonical(v)
}

fn records_set(v: Vec<xorsig::maxgen::MaxSigRecord>) -> Vec<Signature> {
    set(v.into_iter().map(|r| r.signature).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_complements_every_signature(phi in formula(6, 8), seed in any::<u64>()) {
        let alpha = assignment(phi.num_vars(), seed);
        let s = phi.evaluate(&alpha).unwrap();
        prop_assert_eq!(phi.inverse().evaluate(&alpha).unwrap(), s.complement());
        prop_assert_eq!(phi.inverse().inverse(), phi);
    }

    #[test]
    fn restrict_keeps_selected_clauses(phi in formula(5, 8), mask in any::<u32>()) {
        let m = phi.num_clauses();
        let a: Vec<usize> = (0..m).filter(|j| mask >> (2 * j) & 1 == 1).collect();
        let b: Vec<usize> = (0..m).filter(|j| mask >> (2 * j) & 1 == 0 && mask >> (2 * j + 1) & 1 == 1).collect();
        let r = phi.restrict(&a, &b).unwrap();
        prop_assert_eq!(r.num_clauses(), a.len() + b.len());
        prop_assert_eq!(r.num_vars(), phi.num_vars());
        // Satisfiable exactly when a signature matches the prescription.
        let matching = brute_all(&phi).unwrap().iter().any(|s| a.iter().all(|&j| s.get(j)) && b.iter().all(|&j| !s.get(j)));
        prop_assert_eq!(gf2::satisfiable(&r), matching);
        prop_assert_eq!(extendable(&phi, &a, &b).unwrap(), matching);
    }

    #[test]
    fn xnf_round_trip(phi in formula(6, 8)) {
        let text = emit_xnf(&phi);
        prop_assert_eq!(parse_xnf(&text).unwrap(), phi);
    }

    #[test]
    fn preprocessing_preserves_signature_sets(phi in formula(4, 8)) {
        let (core, remap) = preprocess(&phi, PreprocessMode::DedupOnly);
        let expanded = set(brute_all(&core).unwrap().iter().map(|s| remap.expand(s)).collect());
        prop_assert_eq!(expanded, set(brute_all(&phi).unwrap()));

        let (core, remap) = preprocess(&phi, PreprocessMode::Maximal);
        let expanded = set(brute_max(&core).unwrap().iter().map(|s| remap.expand(s)).collect());
        prop_assert_eq!(expanded, set(brute_max(&phi).unwrap()));
    }

    #[test]
    fn satisfiable_matches_brute_force(phi in formula(6, 8)) {
        let all_ones = Signature::ones(phi.num_clauses());
        let brute = brute_all(&phi).unwrap().contains(&all_ones);
        prop_assert_eq!(gf2::satisfiable(&phi), brute);
        if let Some(alpha) = gf2::solve(&phi) {
            prop_assert_eq!(phi.evaluate(&alpha).unwrap(), all_ones);
        }
    }

    #[test]
    fn rollback_is_bit_identical(phi in formula(6, 10), split in 0usize..10) {
        let mut state = EchelonState::new(phi.num_vars());
        let (head, tail) = phi.clauses().split_at(split.min(phi.num_clauses()));
        for c in head {
            if state.probe(c, false).is_feasible() {
                state.push(c, false);
            }
        }
        let before = state.clone();
        let cp = state.checkpoint();
        for (k, c) in tail.iter().enumerate() {
            let negate = k % 2 == 1;
            if state.probe(c, negate).is_feasible() {
                state.push(c, negate);
            }
        }
        state.rollback(cp);
        prop_assert_eq!(state, before);
    }

    #[test]
    fn span_is_the_signature_set(phi in formula(6, 8)) {
        let span = gf2::signature_span(&phi);
        let mut walked = Vec::new();
        span.walk(|s, alpha| {
            assert_eq!(&phi.evaluate(alpha).unwrap(), s);
            walked.push(s.clone());
            true
        });
        let brute = brute_all(&phi).unwrap();
        prop_assert_eq!(walked.len(), 1usize << span.rank());
        prop_assert_eq!(walked.len(), brute.len());
        prop_assert_eq!(set(walked), set(brute));
    }

    #[test]
    fn flashlight_matches_brute_force(phi in formula(6, 10)) {
        let mut out = Vec::new();
        let stats = enumerate_all(&phi, FlashlightOptions { witness: true }, |s, w| {
            assert_eq!(&phi.evaluate(w.expect("witness requested")).unwrap(), s);
            out.push(s.clone());
            ControlFlow::Continue(())
        });
        let distinct: HashSet<&Signature> = out.iter().collect();
        prop_assert_eq!(distinct.len(), out.len());
        let m = phi.num_clauses() as u64;
        prop_assert!(stats.oracle_calls <= 2 * m * (stats.emitted + 1));
        prop_assert!(stats.max_depth <= phi.num_clauses());
        // 1-branch first: descending lexicographic order.
        prop_assert!(out.windows(2).all(|w| w[0] > w[1]));
        prop_assert_eq!(set(out), set(brute_all(&phi).unwrap()));
    }

    #[test]
    fn engines_match_brute_force(phi in formula(5, 9)) {
        let bmax = set(brute_max(&phi).unwrap());
        let bmin = set(brute_min(&phi).unwrap());
        for engine in [MaxEngine::default(), MaxEngine::Supergraph] {
            let max = max_signatures(&phi, engine).unwrap();
            let min = min_signatures(&phi, engine).unwrap();
            for r in max.iter().chain(&min) {
                prop_assert_eq!(&phi.evaluate(&r.witness).unwrap(), &r.signature);
            }
            prop_assert_eq!(records_set(max), bmax.clone());
            prop_assert_eq!(records_set(min), bmin.clone());
        }
    }

    #[test]
    fn min_is_complement_of_inverse_max(phi in formula(5, 9)) {
        let inv_max: Vec<Signature> = brute_max(&phi.inverse()).unwrap().iter().map(Signature::complement).collect();
        prop_assert_eq!(set(brute_min(&phi).unwrap()), set(inv_max));
    }

    #[test]
    fn membership_tests_match_brute_force(phi in formula(4, 7), bits in any::<u64>()) {
        let m = phi.num_clauses();
        let sigma = Signature::from_indices(m, (0..m).filter(|j| bits >> j & 1 == 1));
        let all = brute_all(&phi).unwrap();
        prop_assert_eq!(is_signature(&phi, &sigma).unwrap(), all.contains(&sigma));
        prop_assert_eq!(is_maximal(&phi, &sigma).unwrap(), brute_max(&phi).unwrap().contains(&sigma));
        prop_assert_eq!(is_minimal(&phi, &sigma).unwrap(), brute_min(&phi).unwrap().contains(&sigma));
    }

    #[test]
    fn greedy_completion_is_maximal_and_containing(phi in formula(5, 9), seed_mask in any::<u32>()) {
        let m = phi.num_clauses();
        // Shrink the seed until it is feasible.
        let mut seed: Vec<usize> = (0..m).filter(|j| seed_mask >> j & 1 == 1).collect();
        while !gf2::satisfiable(&phi.restrict(&seed, &[]).unwrap()) {
            seed.pop();
        }
        let r = gc(&phi, &seed, None).unwrap();
        prop_assert!(seed.iter().all(|&j| r.signature.get(j)));
        prop_assert!(is_maximal(&phi, &r.signature).unwrap());
        prop_assert_eq!(phi.evaluate(&r.witness).unwrap(), r.signature);
    }
}

#[test]
fn flashlight_on_empty_formula() {
    let phi = XorCnf::new(3, vec![]).unwrap();
    assert_eq!(all_signatures(&phi), vec![Signature::zeros(0)]);
}
