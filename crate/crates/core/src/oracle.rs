//! Brute-force ground truth: sweeps all `2^n` assignments.
//!
//! Test and benchmark use only. Kept independent of the elimination code so
//! it can certify the engines.

use std::collections::HashSet;

use thiserror::Error;

use crate::formula::{Assignment, Signature, XorCnf};

pub const DEFAULT_VAR_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("brute force refused: {n} variables exceeds cap {cap}")]
pub struct CapExceeded {
    pub n: usize,
    pub cap: usize,
}

/// Every distinct signature of `phi`, sorted lexicographically.
///
/// The sweep walks assignments in Gray-code order, toggling the bits of the
/// clauses that contain the flipped variable.
pub fn brute_all(phi: &XorCnf) -> Result<Vec<Signature>, CapExceeded> {
    brute_all_capped(phi, DEFAULT_VAR_CAP)
}

pub fn brute_all_capped(phi: &XorCnf, cap: usize) -> Result<Vec<Signature>, CapExceeded> {
    let n = phi.num_vars();
    if n > cap {
        return Err(CapExceeded { n, cap });
    }
    let occ = phi.occurrences();
    let mut sigma = phi.evaluate(&Assignment::zeros(n)).expect("zero assignment").into_bits();
    let mut seen = HashSet::new();
    seen.insert(sigma.clone());
    for k in 1u64..(1u64 << n) {
        let var = k.trailing_zeros() as usize;
        for &j in &occ[var] {
            sigma.flip(j);
        }
        if !seen.contains(&sigma) {
            seen.insert(sigma.clone());
        }
    }
    let mut out: Vec<Signature> = seen.into_iter().map(Signature::new).collect();
    out.sort();
    Ok(out)
}

/// Maximal signatures, ordered by descending popcount then lexicographically.
pub fn brute_max(phi: &XorCnf) -> Result<Vec<Signature>, CapExceeded> {
    Ok(maximal_filter(&brute_all(phi)?))
}

/// Minimal signatures, ordered by ascending popcount then lexicographically.
pub fn brute_min(phi: &XorCnf) -> Result<Vec<Signature>, CapExceeded> {
    let all = brute_all(phi)?;
    let mut out: Vec<Signature> = all.iter().filter(|s| !all.iter().any(|t| t.lt_bitwise(s))).cloned().collect();
    out.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Elements not strictly below any other element, in canonical order
/// (descending popcount, then lexicographic). Duplicates collapse.
pub fn maximal_filter(set: &[Signature]) -> Vec<Signature> {
    let mut sorted: Vec<&Signature> = set.iter().collect();
    sorted.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then_with(|| a.cmp(b)));
    sorted.dedup();
    let mut accepted: Vec<Signature> = Vec::new();
    for s in sorted {
        if !accepted.iter().any(|t| s.le_bitwise(t)) {
            accepted.push(s.clone());
        }
    }
    accepted
}

/// Canonical order used for comparing result sets: descending popcount,
/// then lexicographic.
pub fn canonical(mut v: Vec<Signature>) -> Vec<Signature> {
    v.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then_with(|| a.cmp(b)));
    v
}
