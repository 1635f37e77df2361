//! Maximal and minimal signatures of 2-XOR formulas via maximal red-blue
//! bipartite subgraphs.
//!
//! A formula whose clauses have width at most two is an edge-bicoloured
//! multigraph: `x ⊕ y = 1` is a blue edge, `x ⊕ y = 0` a red one, and unit
//! clauses attach to a gadget vertex `u` fixed to 0. A clause set is
//! satisfiable iff some vertex bipartition is crossed by exactly its blue
//! edges, so maximal signatures are maximal red-blue bipartite subgraphs.

mod dsu;
mod graph;
mod proximity;

use std::ops::ControlFlow;

use thiserror::Error;

use crate::formula::{preprocess, Assignment, PreprocessMode, Signature, XorCnf};
use crate::maxgen::MaxSigRecord;

pub use dsu::ParityDsu;
pub use graph::{
    build_graph, check_rb_bipartite, from_signature, is_connected_edges, is_maximal_rb, parse_dump, to_signature,
    BicoloredMultigraph, Bipartition, Color, Conflict, Edge,
};
pub use proximity::{
    combine_components, enumerate_connected, enumerate_max_rb, gc_rb, mu, removables, MuOrder, Odometer, ProximityStats,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RbError {
    #[error("clause {} has {width} variables; this engine takes at most 2", index + 1)]
    ClauseTooWide { index: usize, width: usize },
    #[error("clause {} repeats an earlier clause", index + 1)]
    DuplicateClause { index: usize },
    #[error("edge {} repeats an earlier edge of the same colour", edge + 1)]
    DuplicateEdge { edge: usize },
    #[error("edge {} has an endpoint out of range", edge + 1)]
    VertexOutOfRange { edge: usize },
    #[error("edge {} is a loop", edge + 1)]
    SelfLoop { edge: usize },
    #[error("seed is not red-blue bipartite")]
    ConflictingSeed,
    #[error("edge set is not connected")]
    Disconnected,
    #[error("edge {} already belongs to the solution", edge + 1)]
    EdgeInSolution { edge: usize },
    #[error("dump line {line}: {message}")]
    Dump { line: usize, message: String },
}

/// Maximal signatures of a 2-XOR formula, each with a witness.
///
/// Duplicates and isolated unit clauses are stripped first and restored in
/// the output. Returns the per-component engine statistics.
pub fn enumerate_max_2xor<F>(phi: &XorCnf, mut sink: F) -> Result<Vec<ProximityStats>, RbError>
where
    F: FnMut(&MaxSigRecord) -> ControlFlow<()>,
{
    let (core, remap) = preprocess(phi, PreprocessMode::Maximal);
    let g = build_graph(&core)?;
    Ok(enumerate_max_rb(&g, |h| {
        let bip = check_rb_bipartite(&g, h).expect("solutions are red-blue bipartite");
        let mut alpha = Assignment::zeros(core.num_vars());
        for var in 1..=core.num_vars() {
            alpha.set_value(var, bip.side[g.vertex_of_var(var)]);
        }
        let record = MaxSigRecord { signature: remap.expand(&to_signature(h)), witness: remap.expand_witness(&alpha) };
        debug_assert_eq!(phi.evaluate(&record.witness).as_ref(), Ok(&record.signature));
        sink(&record)
    }))
}

/// Minimal signatures: maximal signatures of the inverse formula,
/// complemented.
pub fn enumerate_min_2xor<F>(phi: &XorCnf, mut sink: F) -> Result<Vec<ProximityStats>, RbError>
where
    F: FnMut(&MaxSigRecord) -> ControlFlow<()>,
{
    enumerate_max_2xor(&phi.inverse(), |r| {
        sink(&MaxSigRecord { signature: r.signature.complement(), witness: r.witness.clone() })
    })
}

pub fn max_signatures_2xor(phi: &XorCnf) -> Result<Vec<MaxSigRecord>, RbError> {
    let mut out = Vec::new();
    enumerate_max_2xor(phi, |r| {
        out.push(r.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn min_signatures_2xor(phi: &XorCnf) -> Result<Vec<MaxSigRecord>, RbError> {
    let mut out = Vec::new();
    enumerate_min_2xor(phi, |r| {
        out.push(r.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Signatures only, for callers that do not need witnesses.
pub fn signatures_of(records: &[MaxSigRecord]) -> Vec<Signature> {
    records.iter().map(|r| r.signature.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::tests::odd_triangle;
    use crate::maxgen::is_maximal;

    fn strs(v: &[MaxSigRecord]) -> Vec<String> {
        let mut out: Vec<String> = v.iter().map(|r| r.signature.to_string()).collect();
        out.sort();
        out
    }

    #[test]
    fn triangle() {
        let t = odd_triangle();
        assert_eq!(strs(&max_signatures_2xor(&t).unwrap()), ["011", "101", "110"]);
        assert_eq!(strs(&min_signatures_2xor(&t).unwrap()), ["000"]);
    }

    #[test]
    fn gadget_example() {
        let phi = XorCnf::from_pairs(2, &[(&[1], true), (&[1, 2], false)]);
        let got = max_signatures_2xor(&phi).unwrap();
        assert_eq!(strs(&got), ["11"]);
        assert_eq!(got[0].witness.to_string(), "11");
    }

    #[test]
    fn units_duplicates_and_isolated() {
        // Isolated unit on x3, a duplicate, and conflicting units on x1.
        let phi =
            XorCnf::from_pairs(3, &[(&[1], true), (&[1], false), (&[1, 2], true), (&[3], false), (&[1, 2], true)]);
        let got = max_signatures_2xor(&phi).unwrap();
        for r in &got {
            assert_eq!(phi.evaluate(&r.witness).unwrap(), r.signature);
            assert!(is_maximal(&phi, &r.signature).unwrap());
        }
        assert_eq!(strs(&got), ["01111", "10111"]);
    }

    #[test]
    fn rejects_wide_clauses() {
        let phi = XorCnf::from_pairs(3, &[(&[1, 2, 3], true)]);
        let err = max_signatures_2xor(&phi).unwrap_err();
        assert_eq!(err.to_string(), "clause 1 has 3 variables; this engine takes at most 2");
    }

    #[test]
    fn empty_formula() {
        let phi = XorCnf::new(2, vec![]).unwrap();
        let got = max_signatures_2xor(&phi).unwrap();
        assert_eq!(got.len(), 1);
        assert!(got[0].signature.is_empty());
    }
}
