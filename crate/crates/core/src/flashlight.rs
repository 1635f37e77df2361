//! Polynomial-delay, polynomial-space enumeration of all signatures.
//!
//! Depth-first binary partition over the clause bits. A branch fixing bit `i`
//! to 1 (resp. 0) pushes clause `i` (resp. its negation) onto a shared
//! [`EchelonState`]; a branch is entered only if the pushed system stays
//! feasible, i.e. only if some signature extends the current prefix. Every
//! internal node of the search tree therefore has a leaf below it.

use std::ops::ControlFlow;

use crate::formula::{Assignment, FormulaError, Signature, XorCnf};
use crate::gf2::{self, EchelonState};

/// Whether some signature has 1 on every index of `a` and 0 on every index of `b`.
pub fn extendable(phi: &XorCnf, a: &[usize], b: &[usize]) -> Result<bool, FormulaError> {
    Ok(gf2::satisfiable(&phi.restrict(a, b)?))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlashlightStats {
    pub emitted: u64,
    /// Incremental extension tests performed (one per attempted branch).
    pub oracle_calls: u64,
    pub max_depth: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FlashlightOptions {
    /// Compute a witness assignment for every emitted signature.
    pub witness: bool,
}

/// Emits every signature of `phi` exactly once, lexicographically with the
/// 1-branch first. `sink` receives the signature and, if requested, a
/// witness; returning `Break` stops the enumeration.
pub fn enumerate_all<F>(phi: &XorCnf, options: FlashlightOptions, mut sink: F) -> FlashlightStats
where
    F: FnMut(&Signature, Option<&Assignment>) -> ControlFlow<()>,
{
    let mut search = Search {
        phi,
        options,
        state: EchelonState::new(phi.num_vars()),
        prefix: Signature::zeros(phi.num_clauses()),
        stats: FlashlightStats::default(),
    };
    let _ = search.descend(0, &mut sink);
    search.stats
}

/// Collects all signatures in emission order.
pub fn all_signatures(phi: &XorCnf) -> Vec<Signature> {
    let mut out = Vec::new();
    enumerate_all(phi, FlashlightOptions::default(), |s, _| {
        out.push(s.clone());
        ControlFlow::Continue(())
    });
    out
}

struct Search<'a> {
    phi: &'a XorCnf,
    options: FlashlightOptions,
    state: EchelonState,
    prefix: Signature,
    stats: FlashlightStats,
}

impl Search<'_> {
    fn descend<F>(&mut self, depth: usize, sink: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Signature, Option<&Assignment>) -> ControlFlow<()>,
    {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if depth == self.phi.num_clauses() {
            self.stats.emitted += 1;
            let witness = if self.options.witness { self.state.solve() } else { None };
            return sink(&self.prefix, witness.as_ref());
        }
        let clause = self.phi.clause(depth);
        for bit in [true, false] {
            let cp = self.state.checkpoint();
            self.stats.oracle_calls += 1;
            if self.state.push(clause, !bit).is_feasible() {
                self.prefix.set(depth, bit);
                let flow = self.descend(depth + 1, sink);
                self.state.rollback(cp);
                flow?;
            } else {
                self.state.rollback(cp);
            }
        }
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::tests::odd_triangle;

    fn strings(v: &[Signature]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn extendable_examples() {
        let t = odd_triangle();
        assert!(extendable(&t, &[0, 1], &[]).unwrap());
        assert!(!extendable(&t, &[0, 1, 2], &[]).unwrap());
        assert!(extendable(&t, &[], &[0, 1, 2]).unwrap());
        assert!(extendable(&t, &[1], &[1]).is_err());
    }

    #[test]
    fn triangle_in_dfs_order() {
        assert_eq!(strings(&all_signatures(&odd_triangle())), ["110", "101", "011", "000"]);
    }

    #[test]
    fn disjoint_disequalities() {
        let phi = XorCnf::from_pairs(4, &[(&[1, 2], true), (&[3, 4], true)]);
        assert_eq!(strings(&all_signatures(&phi)), ["11", "10", "01", "00"]);
    }

    #[test]
    fn equal_and_unequal() {
        let phi = XorCnf::from_pairs(2, &[(&[1, 2], false), (&[1, 2], true)]);
        assert_eq!(strings(&all_signatures(&phi)), ["10", "01"]);
    }

    #[test]
    fn empty_formula_has_empty_signature() {
        let phi = XorCnf::new(2, vec![]).unwrap();
        let all = all_signatures(&phi);
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn satisfiable_formula_emits_all_ones_first() {
        let phi = XorCnf::from_pairs(3, &[(&[1, 2], true), (&[2, 3], false), (&[3], true)]);
        assert_eq!(all_signatures(&phi)[0].to_string(), "111");
    }

    #[test]
    fn witnesses_and_early_stop() {
        let t = odd_triangle();
        let mut seen = 0;
        let stats = enumerate_all(&t, FlashlightOptions { witness: true }, |s, w| {
            assert_eq!(&t.evaluate(w.unwrap()).unwrap(), s);
            seen += 1;
            if seen == 2 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(seen, 2);
        assert_eq!(stats.emitted, 2);
    }

    #[test]
    fn oracle_call_bound() {
        let t = odd_triangle();
        let stats = enumerate_all(&t, FlashlightOptions::default(), |_, _| ControlFlow::Continue(()));
        let m = t.num_clauses() as u64;
        assert!(stats.oracle_calls <= 2 * m * (stats.emitted + 1));
        assert_eq!(stats.max_depth, 3);
    }
}
