//! Seeded random instance generators for tests, benchmarks and the demo.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{XorClause, XorCnf};
use crate::hardness::Cnf;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` pairwise distinct clauses over `n` variables, widths uniform in
/// `1..=max_width` (capped at `n`), parities uniform. Stops early if the
/// clause space is exhausted.
pub fn random_xor_cnf<R: Rng>(rng: &mut R, n: usize, m: usize, max_width: usize) -> XorCnf {
    assert!(n > 0 && max_width > 0, "need at least one variable and width 1");
    let w_max = max_width.min(n);
    let mut seen = HashSet::new();
    let mut clauses = Vec::with_capacity(m);
    let mut attempts = 0;
    while clauses.len() < m && attempts < 50 * m + 100 {
        attempts += 1;
        let w = rng.random_range(1..=w_max);
        let vars = sample(rng, n, w).into_iter().map(|v| v + 1);
        let clause = XorClause::new(vars, rng.random()).expect("distinct in-range variables");
        if seen.insert(clause.clone()) {
            clauses.push(clause);
        }
    }
    XorCnf::new(n, clauses).expect("generated clauses are valid")
}

#[derive(Clone, Copy, Debug)]
pub struct TwoXorShape {
    pub n: usize,
    pub m: usize,
    /// Variables are split into this many groups; clauses never cross groups.
    pub groups: usize,
    /// Probability that a clause is a unit clause.
    pub unit_prob: f64,
    /// Probability that a 2-clause duplicates an existing pair with the
    /// opposite parity (a red/blue parallel edge).
    pub parallel_prob: f64,
}

/// Random distinct 2-XOR clauses with parallel red/blue pairs, units and
/// several independent groups of variables.
pub fn random_2xor<R: Rng>(rng: &mut R, shape: TwoXorShape) -> XorCnf {
    let TwoXorShape { n, m, groups, unit_prob, parallel_prob } = shape;
    assert!(groups >= 1 && n >= groups, "each group needs a variable");
    // Contiguous groups of near-equal size.
    let group_of: Vec<usize> = (0..n).map(|v| v * groups / n).collect();
    let members: Vec<Vec<usize>> =
        (0..groups).map(|g| (0..n).filter(|&v| group_of[v] == g).map(|v| v + 1).collect()).collect();
    let mut seen = HashSet::new();
    let mut clauses: Vec<XorClause> = Vec::new();
    let mut attempts = 0;
    while clauses.len() < m && attempts < 50 * m + 100 {
        attempts += 1;
        let clause = if !clauses.is_empty() && rng.random_bool(parallel_prob) {
            let base = &clauses[rng.random_range(0..clauses.len())];
            base.negated()
        } else {
            let group = &members[rng.random_range(0..groups)];
            if group.len() < 2 || rng.random_bool(unit_prob) {
                let v = group[rng.random_range(0..group.len())];
                XorClause::new([v], rng.random()).expect("valid unit")
            } else {
                let pick = sample(rng, group.len(), 2);
                XorClause::new([group[pick.index(0)], group[pick.index(1)]], rng.random()).expect("valid pair")
            }
        };
        if seen.insert(clause.clone()) {
            clauses.push(clause);
        }
    }
    XorCnf::new(n, clauses).expect("generated clauses are valid")
}

/// Random CNF with clauses of 1 to 3 distinct literals.
pub fn random_3cnf<R: Rng>(rng: &mut R, n: usize, m: usize) -> Cnf {
    assert!(n > 0);
    let clauses = (0..m)
        .map(|_| {
            let w = rng.random_range(1..=3usize.min(n));
            sample(rng, n, w)
                .into_iter()
                .map(|v| {
                    let lit = (v + 1) as i32;
                    if rng.random() {
                        lit
                    } else {
                        -lit
                    }
                })
                .collect()
        })
        .collect();
    Cnf::new(n, clauses).expect("generated clauses are valid")
}

/// A named instance of a test corpus.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub phi: XorCnf,
}

/// `per_class` random formulas for each `n ∈ {4, 8, 12}`, with `m` uniform
/// in `1..=20` and clause width at most 4.
pub fn random_corpus(per_class: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(3 * per_class);
    for n in [4, 8, 12] {
        for i in 0..per_class {
            let m = r.random_range(1..=20);
            out.push(CorpusEntry { name: format!("random-n{n}-{i}"), phi: random_xor_cnf(&mut r, n, m, 4) });
        }
    }
    out
}

/// `count` random 2-XOR formulas with `n ≤ 12`, `m ≤ 24`, units, parallel
/// red/blue pairs and two or three variable groups.
pub fn two_xor_corpus(count: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let groups = r.random_range(2..=3);
            let n = r.random_range(2 * groups..=12);
            let shape = TwoXorShape { n, m: r.random_range(2..=24), groups, unit_prob: 0.15, parallel_prob: 0.2 };
            CorpusEntry { name: format!("two-xor-{i}"), phi: random_2xor(&mut r, shape) }
        })
        .collect()
}

/// Small hand-written formulas covering the edge cases.
pub fn fixtures() -> Vec<CorpusEntry> {
    let f = |name: &str, n: usize, pairs: &[(&[usize], bool)]| CorpusEntry {
        name: name.to_string(),
        phi: XorCnf::from_pairs(n, pairs),
    };
    vec![
        f("odd-triangle", 3, &[(&[1, 2], true), (&[2, 3], true), (&[1, 3], true)]),
        f("disjoint-disequalities", 4, &[(&[1, 2], true), (&[3, 4], true)]),
        f("equal-and-unequal", 2, &[(&[1, 2], false), (&[1, 2], true)]),
        f("empty", 2, &[]),
        f("unit-gadget", 2, &[(&[1], true), (&[1, 2], false)]),
        f("isolated-units", 3, &[(&[3], true), (&[1, 2], false), (&[1, 2], true)]),
        f("satisfiable-chain", 3, &[(&[1, 2], true), (&[2, 3], false), (&[3], true)]),
        f("odd-five-cycle", 5, &[(&[1, 2], true), (&[2, 3], true), (&[3, 4], true), (&[4, 5], true), (&[1, 5], true)]),
        f(
            "two-triangles",
            6,
            &[(&[1, 2], true), (&[2, 3], true), (&[1, 3], true), (&[4, 5], true), (&[5, 6], true), (&[4, 6], true)],
        ),
        f("wide-clauses", 4, &[(&[1, 2, 3], true), (&[2, 3, 4], false), (&[1, 4], true), (&[1, 2, 3, 4], true)]),
        f("duplicates", 2, &[(&[1, 2], true), (&[1, 2], true), (&[1], false)]),
    ]
}
