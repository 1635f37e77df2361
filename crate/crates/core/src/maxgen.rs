//! Maximality tests and maximal/minimal signature engines for general
//! XOR-CNF.
//!
//! Two engines produce the maximal signatures:
//!
//! * [`enumerate_max_exact`] walks the whole signature space
//!   `base ⊕ span(deltas)` (size `2^rank`) and keeps its maximal elements.
//!   Always complete; exponential in the rank only.
//! * [`enumerate_max_supergraph`] saturates a graph of maximal solutions from
//!   greedy completions ([`gc`]). Output is incremental; its completeness is
//!   checked against the exact engine in the test suite.
//!
//! Minimal signatures of φ are complements of maximal signatures of φ̄.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::Bits;
use crate::formula::{Assignment, FormulaError, Signature, XorCnf};
use crate::gf2::{self, EchelonState};

pub const DEFAULT_RANK_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("rank {rank} exceeds the exact engine cap {cap}")]
    RankCapExceeded { rank: usize, cap: usize },
    #[error("seed clauses are not simultaneously satisfiable")]
    InfeasibleSeed,
    #[error("clause index {index} out of range for {m} clauses")]
    IndexOutOfRange { index: usize, m: usize },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// A maximal (or minimal) signature together with an assignment producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSigRecord {
    pub signature: Signature,
    pub witness: Assignment,
}

fn check_len(phi: &XorCnf, sigma: &Signature) -> Result<(), FormulaError> {
    if sigma.len() != phi.num_clauses() {
        return Err(FormulaError::LengthMismatch { expected: phi.num_clauses(), found: sigma.len() });
    }
    Ok(())
}

/// σ is a signature iff φ(one(σ), zero(σ)) is satisfiable.
pub fn is_signature(phi: &XorCnf, sigma: &Signature) -> Result<bool, FormulaError> {
    check_len(phi, sigma)?;
    Ok(gf2::satisfiable(&phi.restrict(&sigma.one(), &sigma.zero())?))
}

/// σ is maximal iff it is a signature and every clause in zero(σ) conflicts
/// with the clauses of one(σ).
pub fn is_maximal(phi: &XorCnf, sigma: &Signature) -> Result<bool, FormulaError> {
    if !is_signature(phi, sigma)? {
        return Ok(false);
    }
    let mut state = EchelonState::new(phi.num_vars());
    for j in sigma.one() {
        state.push_row(phi.clause(j));
    }
    Ok(sigma.zero().into_iter().all(|j| !state.probe(phi.clause(j), false).is_feasible()))
}

pub fn is_minimal(phi: &XorCnf, sigma: &Signature) -> Result<bool, FormulaError> {
    is_maximal(&phi.inverse(), &sigma.complement())
}

/// Greedy completion: pushes the `seed` clauses, then every clause of
/// `order` that keeps the system feasible, then (ascending) any index not
/// mentioned in either. The result is a maximal signature containing the
/// seed. `order = None` means ascending.
pub fn gc(phi: &XorCnf, seed: &[usize], order: Option<&[usize]>) -> Result<MaxSigRecord, EngineError> {
    let m = phi.num_clauses();
    let mut state = EchelonState::new(phi.num_vars());
    let mut chosen = Signature::zeros(m);
    let mut visited = vec![false; m];
    for &i in seed {
        if i >= m {
            return Err(EngineError::IndexOutOfRange { index: i, m });
        }
        if visited[i] {
            continue;
        }
        visited[i] = true;
        if !state.push_row(phi.clause(i)).is_feasible() {
            return Err(EngineError::InfeasibleSeed);
        }
        chosen.set(i, true);
    }
    let tail = (0..m).filter(|_| true);
    let order_iter = order.into_iter().flatten().copied().chain(tail);
    for i in order_iter {
        if i >= m {
            return Err(EngineError::IndexOutOfRange { index: i, m });
        }
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let cp = state.checkpoint();
        if state.push_row(phi.clause(i)).is_feasible() {
            chosen.set(i, true);
        } else {
            state.rollback(cp);
        }
    }
    let witness = state.solve().expect("greedy state stays feasible");
    Ok(MaxSigRecord { signature: chosen, witness })
}

/// Engine selector for maximal/minimal enumeration of general XOR-CNF.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxEngine {
    Exact { rank_cap: usize },
    Supergraph,
}

impl Default for MaxEngine {
    fn default() -> Self {
        MaxEngine::Exact { rank_cap: DEFAULT_RANK_CAP }
    }
}

impl fmt::Display for MaxEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxEngine::Exact { .. } => f.write_str("exact"),
            MaxEngine::Supergraph => f.write_str("supergraph"),
        }
    }
}

impl FromStr for MaxEngine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(MaxEngine::default()),
            "supergraph" => Ok(MaxEngine::Supergraph),
            other => Err(format!("unknown engine {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MaxStats {
    pub emitted: u64,
    /// Greedy completions (supergraph) or signatures visited (exact).
    pub work: u64,
}

/// Complete maximal-signature enumeration over the `2^rank` signature space.
///
/// Output order: descending popcount, then lexicographic.
pub fn enumerate_max_exact<F>(phi: &XorCnf, rank_cap: usize, mut sink: F) -> Result<MaxStats, EngineError>
where
    F: FnMut(&MaxSigRecord) -> ControlFlow<()>,
{
    let span = gf2::signature_span(phi);
    if span.rank() > rank_cap {
        return Err(EngineError::RankCapExceeded { rank: span.rank(), cap: rank_cap });
    }
    let mut all: Vec<MaxSigRecord> = Vec::with_capacity(1 << span.rank());
    span.walk(|s, a| {
        all.push(MaxSigRecord { signature: s.clone(), witness: a.clone() });
        true
    });
    let mut stats = MaxStats { work: all.len() as u64, ..MaxStats::default() };
    all.sort_by(|a, b| {
        b.signature.count_ones().cmp(&a.signature.count_ones()).then_with(|| a.signature.cmp(&b.signature))
    });
    let mut accepted: Vec<Signature> = Vec::new();
    for rec in all {
        if accepted.iter().any(|t| rec.signature.le_bitwise(t)) {
            continue;
        }
        accepted.push(rec.signature.clone());
        stats.emitted += 1;
        if sink(&rec).is_break() {
            break;
        }
    }
    Ok(stats)
}

/// Maximal signatures by saturation over greedy completions.
///
/// A clause set is feasible iff its augmented rows `(a | ε)` do not span
/// `z = (0…0 | 1)`. From each maximal `S` (FIFO order) and each
/// `r ∈ zero(S)` the neighbours are
///
/// * N1: `gc({r}, one(S) ascending, then the rest ascending)`;
/// * N2: `gc(r plus the greedy-feasible part of {i ∈ one(S) : i < r})`;
/// * N3: `gc(Y ∪ {r})` for every maximal `Y ⊆ {i ∈ one(S) : i < r}` with
///   `Y ∪ {r}` feasible. Those `Y` are the maximal subsets of the prefix
///   not spanning `z ⊕ h_r`: the same problem on fewer rows, solved
///   recursively and memoised.
///
/// N1 and N2 are cheap and find most solutions early, but miss some even on
/// the odd triangle. N3 alone makes the solution graph strongly connected:
/// for a target `T` let `r` be the least index of `T \ S`; then
/// `T ∩ [0, r)` lies in `S` and extends to one of the `Y`, so the neighbour
/// contains a strictly longer ascending prefix of `T`. Unseen results are
/// emitted immediately.
pub fn enumerate_max_supergraph<F>(phi: &XorCnf, mut sink: F) -> MaxStats
where
    F: FnMut(&MaxSigRecord) -> ControlFlow<()>,
{
    let family = Family::from_formula(phi);
    let mut stats = MaxStats::default();
    let mut memo = HashMap::new();
    let all: Vec<usize> = (0..phi.num_clauses()).collect();
    let _ = family.saturate(&all, &family.target, true, &mut memo, &mut stats.work, &mut |sel| {
        stats.emitted += 1;
        let sigma = Signature::new(sel.clone());
        let restricted = phi.restrict(&sigma.one(), &[]).expect("indices in range");
        let witness = gf2::solve(&restricted).expect("maximal selection is feasible");
        sink(&MaxSigRecord { signature: sigma, witness })
    });
    stats
}

/// Rows over GF(2) together with a target vector; the solutions are the
/// maximal row subsets whose span avoids the target.
struct Family {
    rows: Vec<Bits>,
    target: Bits,
}

type Memo = HashMap<(Vec<usize>, Bits), Vec<Bits>>;

impl Family {
    fn from_formula(phi: &XorCnf) -> Self {
        let n = phi.num_vars();
        let rows = phi
            .clauses()
            .iter()
            .map(|c| {
                let mut row = Bits::from_indices(n + 1, c.vars().iter().map(|v| v - 1));
                row.set(n, c.parity());
                row
            })
            .collect();
        Family { rows, target: Bits::from_indices(n + 1, [n]) }
    }

    /// Greedy completion within `members` (original row ids): seed first,
    /// then `order`, then the remaining members ascending. The result is
    /// indexed by position in `members`; `None` if the seed is infeasible.
    fn gc(&self, members: &[usize], target: &Bits, seed: &[usize], order: &[usize]) -> Option<Bits> {
        let k = members.len();
        let mut span = Rref::new(target);
        let mut chosen = Bits::zeros(k);
        let mut visited = vec![false; k];
        for &p in seed {
            if visited[p] {
                continue;
            }
            visited[p] = true;
            if !span.try_add(&self.rows[members[p]]) {
                return None;
            }
            chosen.set(p, true);
        }
        for p in order.iter().copied().chain(0..k) {
            if visited[p] {
                continue;
            }
            visited[p] = true;
            if span.try_add(&self.rows[members[p]]) {
                chosen.set(p, true);
            }
        }
        Some(chosen)
    }

    /// Saturation over the rows `members` with the given target. `emit`
    /// receives each maximal selection (indexed by position in `members`)
    /// once. Returns `Break` if `emit` asked to stop.
    fn saturate(
        &self,
        members: &[usize],
        target: &Bits,
        cheap_moves: bool,
        memo: &mut Memo,
        work: &mut u64,
        emit: &mut dyn FnMut(&Bits) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut queue: VecDeque<Bits> = VecDeque::new();
        let mut offer = |sel: Bits, queue: &mut VecDeque<Bits>| {
            if seen.insert(sel.clone()) {
                queue.push_back(sel.clone());
                return emit(&sel);
            }
            ControlFlow::Continue(())
        };

        *work += 1;
        let first = self.gc(members, target, &[], &[]).expect("empty seed is feasible");
        offer(first, &mut queue)?;

        while let Some(s) = queue.pop_front() {
            let ones: Vec<usize> = s.iter_ones().collect();
            let zeros: Vec<usize> = s.iter_zeros().collect();
            for &r in zeros.iter().filter(|_| cheap_moves) {
                if self.rows[members[r]] == *target {
                    continue;
                }
                let order: Vec<usize> = ones.iter().chain(&zeros).copied().collect();
                *work += 1;
                let n1 = self.gc(members, target, &[r], &order).expect("single row is feasible");
                offer(n1, &mut queue)?;

                let prefix: Vec<usize> = ones.iter().copied().take_while(|&i| i < r).collect();
                let probe = self.gc(members, target, &[r], &prefix).expect("single row is feasible");
                let seed: Vec<usize> = std::iter::once(r).chain(prefix).filter(|&i| probe.get(i)).collect();
                *work += 1;
                let n2 = self.gc(members, target, &seed, &[]).expect("seed built feasible");
                offer(n2, &mut queue)?;
            }
            for &r in &zeros {
                let row = &self.rows[members[r]];
                if row == target {
                    continue;
                }
                let mut sub_target = target.clone();
                sub_target.xor_assign(row);
                let below: Vec<usize> = ones.iter().copied().take_while(|&i| i < r).collect();
                let sub_members: Vec<usize> = below.iter().map(|&p| members[p]).collect();
                for y in self.restricted(&sub_members, &sub_target, memo, work) {
                    let mut seed: Vec<usize> = y.iter_ones().map(|q| below[q]).collect();
                    seed.push(r);
                    *work += 1;
                    let n3 = self.gc(members, target, &seed, &[]).expect("restricted seed is feasible");
                    offer(n3, &mut queue)?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    /// All maximal selections of a sub-problem, memoised.
    fn restricted(&self, members: &[usize], target: &Bits, memo: &mut Memo, work: &mut u64) -> Vec<Bits> {
        let key = (members.to_vec(), target.clone());
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        let _ = self.saturate(members, target, false, memo, work, &mut |sel| {
            out.push(sel.clone());
            ControlFlow::Continue(())
        });
        memo.insert(key, out.clone());
        out
    }
}

/// Row-reduced span of the accepted rows, tracking the reduced target.
///
/// With the basis in reduced echelon form, reduction is canonical, so the
/// target enters the span of `basis + row` exactly when `row` and the target
/// reduce to the same vector.
struct Rref {
    words: usize,
    basis: Vec<u64>,
    pivots: Vec<usize>,
    target: Vec<u64>,
    scratch: Vec<u64>,
}

impl Rref {
    fn new(target: &Bits) -> Self {
        let words = target.words().len();
        Rref { words, basis: Vec::new(), pivots: Vec::new(), target: target.words().to_vec(), scratch: vec![0; words] }
    }

    fn reduce(basis: &[u64], pivots: &[usize], words: usize, v: &mut [u64]) {
        for (b, &p) in basis.chunks_exact(words).zip(pivots) {
            if v[p / 64] >> (p % 64) & 1 == 1 {
                v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
            }
        }
    }

    /// Adds `row` if the target stays outside the span.
    fn try_add(&mut self, row: &Bits) -> bool {
        let w = self.words;
        self.scratch.copy_from_slice(row.words());
        Self::reduce(&self.basis, &self.pivots, w, &mut self.scratch);
        if self.scratch == self.target {
            return false;
        }
        let Some(p) = first_one(&self.scratch) else {
            return true;
        };
        let v = std::mem::take(&mut self.scratch);
        for b in self.basis.chunks_exact_mut(w) {
            if b[p / 64] >> (p % 64) & 1 == 1 {
                b.iter_mut().zip(&v).for_each(|(x, y)| *x ^= y);
            }
        }
        if self.target[p / 64] >> (p % 64) & 1 == 1 {
            self.target.iter_mut().zip(&v).for_each(|(x, y)| *x ^= y);
        }
        self.basis.extend_from_slice(&v);
        self.pivots.push(p);
        self.scratch = v;
        true
    }
}

fn first_one(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Runs the selected maximal engine.
pub fn enumerate_max<F>(phi: &XorCnf, engine: MaxEngine, sink: F) -> Result<MaxStats, EngineError>
where
    F: FnMut(&MaxSigRecord) -> ControlFlow<()>,
{
    match engine {
        MaxEngine::Exact { rank_cap } => enumerate_max_exact(phi, rank_cap, sink),
        MaxEngine::Supergraph => Ok(enumerate_max_supergraph(phi, sink)),
    }
}

/// Minimal signatures: maximal signatures of φ̄, complemented. The witness
/// carries over unchanged.
pub fn enumerate_min<F>(phi: &XorCnf, engine: MaxEngine, mut sink: F) -> Result<MaxStats, EngineError>
where
    F: FnMut(&MaxSigRecord) -> ControlFlow<()>,
{
    enumerate_max(&phi.inverse(), engine, |rec| {
        sink(&MaxSigRecord { signature: rec.signature.complement(), witness: rec.witness.clone() })
    })
}

/// Collects maximal signatures in emission order.
pub fn max_signatures(phi: &XorCnf, engine: MaxEngine) -> Result<Vec<MaxSigRecord>, EngineError> {
    let mut out = Vec::new();
    enumerate_max(phi, engine, |r| {
        out.push(r.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Collects minimal signatures in emission order.
pub fn min_signatures(phi: &XorCnf, engine: MaxEngine) -> Result<Vec<MaxSigRecord>, EngineError> {
    let mut out = Vec::new();
    enumerate_min(phi, engine, |r| {
        out.push(r.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::tests::odd_triangle;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn strs(v: &[MaxSigRecord]) -> Vec<String> {
        v.iter().map(|r| r.signature.to_string()).collect()
    }

    fn sorted(mut v: Vec<String>) -> Vec<String> {
        v.sort();
        v
    }

    fn eq_neq() -> XorCnf {
        XorCnf::from_pairs(2, &[(&[1, 2], false), (&[1, 2], true)])
    }

    #[test]
    fn signature_checks() {
        let t = odd_triangle();
        assert!(is_signature(&t, &sig("110")).unwrap());
        assert!(!is_signature(&t, &sig("111")).unwrap());
        assert!(!is_signature(&t, &sig("100")).unwrap());
        assert!(is_signature(&t, &sig("11")).is_err());
    }

    #[test]
    fn maximality_checks() {
        let t = odd_triangle();
        assert!(is_maximal(&t, &sig("110")).unwrap());
        assert!(!is_maximal(&t, &sig("000")).unwrap());
        assert!(is_minimal(&t, &sig("000")).unwrap());
        assert!(!is_minimal(&t, &sig("110")).unwrap());
        assert!(!is_maximal(&t, &sig("100")).unwrap());

        let e = eq_neq();
        assert!(is_maximal(&e, &sig("10")).unwrap());
        assert!(is_minimal(&e, &sig("10")).unwrap());
    }

    #[test]
    fn gc_examples() {
        let t = odd_triangle();
        let r = gc(&t, &[], None).unwrap();
        assert_eq!(r.signature, sig("110"));
        assert_eq!(t.evaluate(&r.witness).unwrap(), r.signature);
        assert_eq!(gc(&t, &[2], None).unwrap().signature, sig("101"));
        assert_eq!(gc(&t, &[0, 2], None).unwrap().signature, sig("101"));
        assert_eq!(gc(&t, &[0, 1, 2], None), Err(EngineError::InfeasibleSeed));
    }

    #[test]
    fn gc_fixpoint_on_maximal() {
        let t = odd_triangle();
        for s in ["011", "101", "110"] {
            let s = sig(s);
            assert_eq!(gc(&t, &s.one(), None).unwrap().signature, s);
        }
    }

    #[test]
    fn exact_examples() {
        let t = odd_triangle();
        let got = max_signatures(&t, MaxEngine::default()).unwrap();
        assert_eq!(strs(&got), ["011", "101", "110"]);

        let disjoint = XorCnf::from_pairs(4, &[(&[1, 2], true), (&[3, 4], true)]);
        assert_eq!(strs(&max_signatures(&disjoint, MaxEngine::default()).unwrap()), ["11"]);

        assert_eq!(strs(&max_signatures(&eq_neq(), MaxEngine::default()).unwrap()), ["01", "10"]);
    }

    #[test]
    fn exact_rank_cap() {
        let t = odd_triangle();
        let err = enumerate_max_exact(&t, 1, |_| ControlFlow::Continue(())).unwrap_err();
        assert_eq!(err, EngineError::RankCapExceeded { rank: 2, cap: 1 });
    }

    #[test]
    fn supergraph_examples() {
        let t = odd_triangle();
        let got = max_signatures(&t, MaxEngine::Supergraph).unwrap();
        assert_eq!(got[0].signature, sig("110"));
        assert_eq!(sorted(strs(&got)), ["011", "101", "110"]);

        let sat = XorCnf::from_pairs(3, &[(&[1, 2], true), (&[2, 3], true), (&[3], false)]);
        assert_eq!(strs(&max_signatures(&sat, MaxEngine::Supergraph).unwrap()), ["111"]);
    }

    #[test]
    fn min_examples() {
        let t = odd_triangle();
        for engine in [MaxEngine::default(), MaxEngine::Supergraph] {
            assert_eq!(strs(&min_signatures(&t, engine).unwrap()), ["000"]);
            let disjoint = XorCnf::from_pairs(4, &[(&[1, 2], true), (&[3, 4], true)]);
            assert_eq!(strs(&min_signatures(&disjoint, engine).unwrap()), ["00"]);
            assert_eq!(sorted(strs(&min_signatures(&eq_neq(), engine).unwrap())), ["01", "10"]);
        }
    }

    #[test]
    fn records_are_consistent() {
        let t = odd_triangle();
        for engine in [MaxEngine::default(), MaxEngine::Supergraph] {
            for r in max_signatures(&t, engine).unwrap() {
                assert_eq!(t.evaluate(&r.witness).unwrap(), r.signature);
                assert!(is_maximal(&t, &r.signature).unwrap());
            }
            for r in min_signatures(&t, engine).unwrap() {
                assert_eq!(t.evaluate(&r.witness).unwrap(), r.signature);
                assert!(is_minimal(&t, &r.signature).unwrap());
            }
        }
    }
}
