//! Incremental Gaussian elimination over GF(2).
//!
//! [`EchelonState`] keeps its rows in reduced row-echelon form and records
//! every mutation in an undo log, so a [`Checkpoint`] can be restored in time
//! proportional to the work done since it was taken.

use crate::bits::Bits;
use crate::formula::{Assignment, Signature, XorClause, XorCnf};

/// Outcome of absorbing one equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Push {
    /// The equation added a new pivot.
    Independent,
    /// The equation was implied by the current rows.
    Redundant,
    /// The equation reduced to `0 = 1`.
    Conflict,
}

impl Push {
    pub fn is_feasible(self) -> bool {
        self != Push::Conflict
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Undo {
    Added,
    /// `rows[target] ^= rows[source]` was applied.
    Xored {
        target: usize,
        source: usize,
    },
    Conflict,
}

/// Opaque marker returned by [`EchelonState::checkpoint`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checkpoint(usize);

/// Reduced row-echelon form of a growing set of equations over `n` variables.
///
/// Row width is `n + 1`; column `n` holds the right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonState {
    num_vars: usize,
    rows: Vec<Bits>,
    pivots: Vec<usize>,
    conflict: bool,
    undo: Vec<Undo>,
}

impl EchelonState {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, rows: Vec::new(), pivots: Vec::new(), conflict: false, undo: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_conflict(&self) -> bool {
        self.conflict
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn row_of(&self, clause: &XorClause, negate: bool) -> Bits {
        let n = self.num_vars;
        let mut row = Bits::zeros(n + 1);
        for &v in clause.vars() {
            assert!(v <= n, "variable {v} exceeds state width {n}");
            row.set(v - 1, true);
        }
        if clause.parity() != negate {
            row.set(n, true);
        }
        row
    }

    fn reduce(&self, row: &mut Bits) {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if row.get(p) {
                row.xor_assign(r);
            }
        }
    }

    fn classify(&self, row: &Bits) -> Result<usize, Push> {
        match row.first_one_below(self.num_vars) {
            Some(p) => Ok(p),
            None if row.get(self.num_vars) => Err(Push::Conflict),
            None => Err(Push::Redundant),
        }
    }

    /// Absorbs `clause` (or its negation when `negate` is set).
    ///
    /// Panics if the state is already in conflict; roll back first.
    pub fn push(&mut self, clause: &XorClause, negate: bool) -> Push {
        assert!(!self.conflict, "push onto a conflicting echelon state");
        let mut row = self.row_of(clause, negate);
        self.reduce(&mut row);
        let pivot = match self.classify(&row) {
            Ok(p) => p,
            Err(Push::Conflict) => {
                self.conflict = true;
                self.undo.push(Undo::Conflict);
                return Push::Conflict;
            }
            Err(outcome) => return outcome,
        };
        let source = self.rows.len();
        self.rows.push(row);
        self.pivots.push(pivot);
        self.undo.push(Undo::Added);
        for target in 0..source {
            if self.rows[target].get(pivot) {
                let (head, tail) = self.rows.split_at_mut(source);
                head[target].xor_assign(&tail[0]);
                self.undo.push(Undo::Xored { target, source });
            }
        }
        Push::Independent
    }

    pub fn push_row(&mut self, clause: &XorClause) -> Push {
        self.push(clause, false)
    }

    /// What [`push`](Self::push) would return, without changing the state.
    pub fn probe(&self, clause: &XorClause, negate: bool) -> Push {
        if self.conflict {
            return Push::Conflict;
        }
        let mut row = self.row_of(clause, negate);
        self.reduce(&mut row);
        match self.classify(&row) {
            Ok(_) => Push::Independent,
            Err(outcome) => outcome,
        }
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint(self.undo.len())
    }

    /// Restores the exact state at `cp`.
    pub fn rollback(&mut self, cp: Checkpoint) {
        assert!(cp.0 <= self.undo.len(), "stale checkpoint");
        while self.undo.len() > cp.0 {
            match self.undo.pop().expect("length checked") {
                Undo::Added => {
                    self.rows.pop();
                    self.pivots.pop();
                }
                Undo::Xored { target, source } => {
                    let (head, tail) = self.rows.split_at_mut(source);
                    head[target].xor_assign(&tail[0]);
                }
                Undo::Conflict => self.conflict = false,
            }
        }
    }

    /// The solution with every free variable set to 0, or `None` on conflict.
    pub fn solve(&self) -> Option<Assignment> {
        if self.conflict {
            return None;
        }
        let n = self.num_vars;
        let mut alpha = Assignment::zeros(n);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(n) {
                alpha.bits_mut().set(p, true);
            }
        }
        Some(alpha)
    }
}

/// Echelon state of all clauses of `phi`.
pub fn eliminate(phi: &XorCnf) -> EchelonState {
    let mut state = EchelonState::new(phi.num_vars());
    for c in phi.clauses() {
        if !state.push_row(c).is_feasible() {
            break;
        }
    }
    state
}

pub fn satisfiable(phi: &XorCnf) -> bool {
    !eliminate(phi).is_conflict()
}

/// A model of `phi` with free variables at 0, if one exists.
pub fn solve(phi: &XorCnf) -> Option<Assignment> {
    eliminate(phi).solve()
}

/// Reduced basis of a subspace of GF(2)^len.
#[derive(Clone, Debug, Default)]
pub struct XorBasis {
    vectors: Vec<Bits>,
    pivots: Vec<usize>,
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Inserts `v`; returns `true` if it was independent of the basis.
    pub fn insert(&mut self, v: &Bits) -> bool {
        let mut v = v.clone();
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(b);
            }
        }
        let Some(p) = v.first_one() else {
            return false;
        };
        for b in &mut self.vectors {
            if b.get(p) {
                b.xor_assign(&v);
            }
        }
        self.vectors.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &Bits) -> bool {
        let mut v = v.clone();
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(b);
            }
        }
        v.is_zero()
    }
}

/// The signature set of a formula as an affine subspace of GF(2)^m.
///
/// `σ(α) = base ⊕ L·α` where `L` is the clause/variable incidence matrix, so
/// the signatures are exactly `base ⊕ span(deltas)`. Each delta is the
/// incidence column of one variable, i.e. the signature change produced by
/// flipping that variable alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureSpan {
    num_vars: usize,
    base: Signature,
    deltas: Vec<Signature>,
    generators: Vec<usize>,
}

impl SignatureSpan {
    pub fn rank(&self) -> usize {
        self.deltas.len()
    }

    /// Signature of the all-zero assignment.
    pub fn base(&self) -> &Signature {
        &self.base
    }

    pub fn deltas(&self) -> &[Signature] {
        &self.deltas
    }

    /// 0-based variable positions whose unit assignments produce the deltas.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, sigma: &Signature) -> bool {
        if sigma.len() != self.base.len() {
            return false;
        }
        let mut diff = sigma.bits().clone();
        diff.xor_assign(self.base.bits());
        let mut basis = XorBasis::new();
        for d in &self.deltas {
            basis.insert(d.bits());
        }
        basis.contains(&diff)
    }

    /// Visits all `2^rank` signatures in Gray-code order together with an
    /// assignment producing each. Stops early when `f` returns `false`.
    pub fn walk(&self, mut f: impl FnMut(&Signature, &Assignment) -> bool) {
        let mut sigma = self.base.clone().into_bits();
        let mut alpha = Assignment::zeros(self.num_vars);
        if !f(&Signature::new(sigma.clone()), &alpha) {
            return;
        }
        let total: u64 = 1u64 << self.deltas.len();
        for k in 1..total {
            let t = k.trailing_zeros() as usize;
            sigma.xor_assign(self.deltas[t].bits());
            alpha.bits_mut().flip(self.generators[t]);
            if !f(&Signature::new(sigma.clone()), &alpha) {
                return;
            }
        }
    }
}

pub fn signature_span(phi: &XorCnf) -> SignatureSpan {
    let m = phi.num_clauses();
    let base = phi.evaluate(&Assignment::zeros(phi.num_vars())).expect("zero assignment has the formula's width");
    let mut basis = XorBasis::new();
    let mut deltas = Vec::new();
    let mut generators = Vec::new();
    for (j, occ) in phi.occurrences().into_iter().enumerate() {
        let column = Bits::from_indices(m, occ);
        if basis.insert(&column) {
            deltas.push(Signature::new(column));
            generators.push(j);
        }
    }
    SignatureSpan { num_vars: phi.num_vars(), base, deltas, generators }
}

/// Rank of the clause/variable coefficient matrix.
pub fn rank(phi: &XorCnf) -> usize {
    let n = phi.num_vars();
    let mut basis = XorBasis::new();
    for c in phi.clauses() {
        basis.insert(&Bits::from_indices(n, c.vars().iter().map(|v| v - 1)));
    }
    basis.rank()
}
