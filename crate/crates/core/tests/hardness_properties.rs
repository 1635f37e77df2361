//! The 3-SAT reduction: extension witnesses exist exactly for satisfiable
//! inputs, and decode to models.

use proptest::prelude::*;
use xorsig::hardness::{
    brute_extension, decode_witness, is_maximal_bipartite, parse_dimacs, reduce_3sat, Cnf, DEFAULT_FREE_CAP,
};
use xorsig::maxgen::{max_signatures, MaxEngine};

fn cnf(max_n: usize, max_m: usize) -> impl Strategy<Value = Cnf> {
    (1..=max_n).prop_flat_map(move |n| {
        let literal = (1..=n as i32, any::<bool>()).prop_map(|(v, pos)| if pos { v } else { -v });
        let clause = proptest::collection::vec(literal, 1..=3).prop_map(|mut c| {
            c.sort_by_key(|l| l.abs());
            c.dedup_by_key(|l| l.abs());
            c
        });
        proptest::collection::vec(clause, 0..=max_m).prop_map(move |cs| Cnf::new(n, cs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn extension_iff_satisfiable(f in cnf(5, 8)) {
        let inst = reduce_3sat(&f).unwrap();
        let witness = brute_extension(&inst.graph, &inst.a, &inst.b, DEFAULT_FREE_CAP).unwrap();
        prop_assert_eq!(witness.is_some(), f.brute_model().is_some());
        if let Some(h) = witness {
            prop_assert!(is_maximal_bipartite(&inst.graph, &h).unwrap());
            let alpha = decode_witness(&inst, &h).unwrap();
            prop_assert!(f.satisfied_by(&alpha));
        }
    }

    #[test]
    fn dimacs_round_trip(f in cnf(6, 8)) {
        prop_assert_eq!(parse_dimacs(&f.to_string()).unwrap(), f);
    }
}

#[test]
fn maximal_bipartite_subgraphs_are_maximal_signatures_of_disequalities() {
    // Small instances: the general engine over the disequality formula
    // lists exactly the maximal bipartite subgraphs.
    let f = Cnf::new(2, vec![vec![1, -2], vec![-1]]).unwrap();
    let inst = reduce_3sat(&f).unwrap();
    let phi = inst.graph.to_disequalities();
    let max = max_signatures(&phi, MaxEngine::default()).unwrap();
    assert!(!max.is_empty());
    for r in &max {
        assert!(is_maximal_bipartite(&inst.graph, &r.signature.one()).unwrap());
    }
    // Every maximal cut appears.
    let m = inst.graph.num_edges();
    let count = (0u32..1 << m)
        .filter(|mask| {
            let h: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
            is_maximal_bipartite(&inst.graph, &h).unwrap()
        })
        .count();
    assert_eq!(count, max.len());
}
