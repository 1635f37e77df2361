//! XOR-CNF data model, the XNF text format, and formula-level constructions.
//!
//! Variables are 1-based ids `1..=n` inside [`XorClause`] (matching the XNF
//! literals); clause indices and assignment positions are 0-based everywhere
//! in the library API. Only text formats use 1-based clause numbers.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::{Bits, BitsParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("empty clause")]
    EmptyClause,
    #[error("variable {var} repeated in clause")]
    RepeatedVariable { var: usize },
    #[error("variable {var} out of range 1..={n}")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("clause index {index} out of range for {m} clauses")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("clause index {index} appears in both A and B")]
    Overlap { index: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
}

/// One XOR clause `x_{v1} + ... + x_{vk} = parity` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XorClause {
    vars: Vec<usize>,
    parity: bool,
}

impl XorClause {
    pub fn new(vars: impl IntoIterator<Item = usize>, parity: bool) -> Result<Self, FormulaError> {
        let mut vars: Vec<usize> = vars.into_iter().collect();
        if vars.is_empty() {
            return Err(FormulaError::EmptyClause);
        }
        vars.sort_unstable();
        if let Some(w) = vars.windows(2).find(|w| w[0] == w[1]) {
            return Err(FormulaError::RepeatedVariable { var: w[0] });
        }
        if vars[0] == 0 {
            return Err(FormulaError::VariableOutOfRange { var: 0, n: 0 });
        }
        Ok(Self { vars, parity })
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn parity(&self) -> bool {
        self.parity
    }

    pub fn width(&self) -> usize {
        self.vars.len()
    }

    /// The same equation with the opposite right-hand side.
    pub fn negated(&self) -> Self {
        Self { vars: self.vars.clone(), parity: !self.parity }
    }

    pub fn holds(&self, assignment: &Assignment) -> bool {
        let sum = self.vars.iter().fold(false, |acc, &v| acc ^ assignment.value(v));
        sum == self.parity
    }
}

impl fmt::Display for XorClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.vars.iter().map(|v| format!("x{v}")).collect();
        write!(f, "{} = {}", terms.join(" + "), u8::from(self.parity))
    }
}

/// An ordered conjunction of XOR clauses over variables `1..=n`.
///
/// Clause order is the signature bit order: bit `j` belongs to clause `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XorCnf {
    num_vars: usize,
    clauses: Vec<XorClause>,
}

impl XorCnf {
    pub fn new(num_vars: usize, clauses: Vec<XorClause>) -> Result<Self, FormulaError> {
        for c in &clauses {
            if let Some(&var) = c.vars.last() {
                if var > num_vars {
                    return Err(FormulaError::VariableOutOfRange { var, n: num_vars });
                }
            }
        }
        Ok(Self { num_vars, clauses })
    }

    /// Convenience constructor from `(vars, parity)` pairs; panics on invalid input.
    pub fn from_pairs(num_vars: usize, pairs: &[(&[usize], bool)]) -> Self {
        let clauses =
            pairs.iter().map(|(vars, parity)| XorClause::new(vars.iter().copied(), *parity).unwrap()).collect();
        Self::new(num_vars, clauses).unwrap()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[XorClause] {
        &self.clauses
    }

    pub fn clause(&self, index: usize) -> &XorClause {
        &self.clauses[index]
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(XorClause::width).max().unwrap_or(0)
    }

    /// Total size: the sum of clause widths.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(XorClause::width).sum()
    }

    /// φ̄: every parity flipped, order preserved.
    pub fn inverse(&self) -> Self {
        Self { num_vars: self.num_vars, clauses: self.clauses.iter().map(XorClause::negated).collect() }
    }

    /// φ(A, B): the clauses indexed by `a` as they are and the negations of
    /// the clauses indexed by `b`, in ascending index order, on the same
    /// variable set.
    pub fn restrict(&self, a: &[usize], b: &[usize]) -> Result<Self, FormulaError> {
        let m = self.clauses.len();
        let mut picked: Vec<(usize, bool)> = Vec::with_capacity(a.len() + b.len());
        let mut in_a = vec![false; m];
        for &i in a {
            if i >= m {
                return Err(FormulaError::IndexOutOfRange { index: i, m });
            }
            if !in_a[i] {
                in_a[i] = true;
                picked.push((i, false));
            }
        }
        let mut in_b = vec![false; m];
        for &j in b {
            if j >= m {
                return Err(FormulaError::IndexOutOfRange { index: j, m });
            }
            if in_a[j] {
                return Err(FormulaError::Overlap { index: j });
            }
            if !in_b[j] {
                in_b[j] = true;
                picked.push((j, true));
            }
        }
        picked.sort_unstable();
        let clauses = picked
            .into_iter()
            .map(|(i, negate)| if negate { self.clauses[i].negated() } else { self.clauses[i].clone() })
            .collect();
        Ok(Self { num_vars: self.num_vars, clauses })
    }

    /// σ_φ(α): bit `j` is set iff clause `j` holds under `assignment`.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Signature, FormulaError> {
        if assignment.len() != self.num_vars {
            return Err(FormulaError::LengthMismatch { expected: self.num_vars, found: assignment.len() });
        }
        let mut bits = Bits::zeros(self.clauses.len());
        for (j, c) in self.clauses.iter().enumerate() {
            if c.holds(assignment) {
                bits.set(j, true);
            }
        }
        Ok(Signature(bits))
    }

    /// For each variable (0-based), the clause indices it occurs in.
    pub fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.num_vars];
        for (j, c) in self.clauses.iter().enumerate() {
            for &v in &c.vars {
                occ[v - 1].push(j);
            }
        }
        occ
    }

    /// Connected components of the clause/variable incidence structure,
    /// counted over clauses (clauses sharing a variable are connected).
    pub fn component_count(&self) -> usize {
        self.clause_components().len()
    }

    /// Clause index lists of the connected components, each ascending,
    /// ordered by smallest clause index.
    pub fn clause_components(&self) -> Vec<Vec<usize>> {
        let m = self.clauses.len();
        let occ = self.occurrences();
        let mut comp = vec![usize::MAX; m];
        let mut out = Vec::new();
        for start in 0..m {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut head = 0;
            while head < members.len() {
                let j = members[head];
                head += 1;
                for &v in &self.clauses[j].vars {
                    for &k in &occ[v - 1] {
                        if comp[k] == usize::MAX {
                            comp[k] = id;
                            members.push(k);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// A signature: one bit per clause, bitwise partial order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Bits);

impl Signature {
    pub fn new(bits: Bits) -> Self {
        Self(bits)
    }

    pub fn zeros(m: usize) -> Self {
        Self(Bits::zeros(m))
    }

    pub fn ones(m: usize) -> Self {
        Self(Bits::ones(m))
    }

    pub fn from_indices(m: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        Self(Bits::from_indices(m, ones))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> bool {
        self.0.get(j)
    }

    pub fn set(&mut self, j: usize, bit: bool) {
        self.0.set(j, bit);
    }

    pub fn bits(&self) -> &Bits {
        &self.0
    }

    pub fn into_bits(self) -> Bits {
        self.0
    }

    /// one(σ), ascending.
    pub fn one(&self) -> Vec<usize> {
        self.0.iter_ones().collect()
    }

    /// zero(σ), ascending.
    pub fn zero(&self) -> Vec<usize> {
        self.0.iter_zeros().collect()
    }

    pub fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    pub fn count_ones(&self) -> usize {
        self.0.count_ones()
    }

    /// Bitwise `self ≤ other`.
    pub fn le_bitwise(&self, other: &Signature) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Bitwise `self < other`.
    pub fn lt_bitwise(&self, other: &Signature) -> bool {
        self != other && self.le_bitwise(other)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ{}", self.0)
    }
}

impl FromStr for Signature {
    type Err = BitsParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(Signature)
    }
}

/// A truth assignment; position `i` holds the value of variable `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Bits);

impl Assignment {
    pub fn new(bits: Bits) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(Bits::zeros(n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value of the 1-based variable `var`.
    pub fn value(&self, var: usize) -> bool {
        self.0.get(var - 1)
    }

    pub fn set_value(&mut self, var: usize, value: bool) {
        self.0.set(var - 1, value);
    }

    pub fn bits(&self) -> &Bits {
        &self.0
    }

    pub fn bits_mut(&mut self) -> &mut Bits {
        &mut self.0
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α{}", self.0)
    }
}

impl FromStr for Assignment {
    type Err = BitsParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(Assignment)
    }
}

/// Whether [`preprocess`] may drop unit clauses on otherwise unused variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreprocessMode {
    /// Duplicate removal only; used when every signature matters.
    DedupOnly,
    /// Also drop isolated unit clauses, whose bit is 1 in every maximal
    /// signature.
    Maximal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dropped {
    /// Same `(vars, parity)` as the kept clause at this original index.
    DuplicateOf(usize),
    /// Isolated unit clause on `var` with the given parity; its bit is forced.
    IsolatedUnit { var: usize, parity: bool, bit: bool },
}

/// Maps signatures of a preprocessed core back to the original clause list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remap {
    original_len: usize,
    kept: Vec<usize>,
    dropped: Vec<(usize, Dropped)>,
}

impl Remap {
    pub fn identity(m: usize) -> Self {
        Self { original_len: m, kept: (0..m).collect(), dropped: Vec::new() }
    }

    pub fn original_len(&self) -> usize {
        self.original_len
    }

    /// Original indices of the core clauses, in core order.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn dropped(&self) -> &[(usize, Dropped)] {
        &self.dropped
    }

    pub fn is_identity(&self) -> bool {
        self.dropped.is_empty()
    }

    /// Expands a core signature to a signature of the original formula.
    pub fn expand(&self, core: &Signature) -> Signature {
        assert_eq!(core.len(), self.kept.len(), "core signature length");
        let mut bits = Bits::zeros(self.original_len);
        for (pos, &orig) in self.kept.iter().enumerate() {
            bits.set(orig, core.get(pos));
        }
        for &(orig, d) in &self.dropped {
            if let Dropped::IsolatedUnit { bit, .. } = d {
                bits.set(orig, bit);
            }
        }
        for &(orig, d) in &self.dropped {
            if let Dropped::DuplicateOf(twin) = d {
                let b = bits.get(twin);
                bits.set(orig, b);
            }
        }
        Signature(bits)
    }

    /// Adjusts a witness of the core so that it also realises the forced
    /// bits of dropped isolated units.
    pub fn expand_witness(&self, core_witness: &Assignment) -> Assignment {
        let mut out = core_witness.clone();
        for &(_, d) in &self.dropped {
            if let Dropped::IsolatedUnit { var, parity, bit } = d {
                out.set_value(var, if bit { parity } else { !parity });
            }
        }
        out
    }
}

/// Removes duplicate clauses (and, in [`PreprocessMode::Maximal`], isolated
/// unit clauses). Returns the core formula and the map back.
pub fn preprocess(phi: &XorCnf, mode: PreprocessMode) -> (XorCnf, Remap) {
    let m = phi.num_clauses();
    let mut first: HashMap<&XorClause, usize> = HashMap::new();
    let mut survivors = Vec::new();
    let mut dropped = Vec::new();
    for (j, c) in phi.clauses.iter().enumerate() {
        match first.get(c) {
            Some(&twin) => dropped.push((j, Dropped::DuplicateOf(twin))),
            None => {
                first.insert(c, j);
                survivors.push(j);
            }
        }
    }

    let mut kept = survivors.clone();
    if mode == PreprocessMode::Maximal {
        let mut occurrences = vec![0usize; phi.num_vars];
        for &j in &survivors {
            for &v in phi.clauses[j].vars() {
                occurrences[v - 1] += 1;
            }
        }
        kept.clear();
        for &j in &survivors {
            let c = &phi.clauses[j];
            if c.width() == 1 && occurrences[c.vars[0] - 1] == 1 {
                dropped.push((j, Dropped::IsolatedUnit { var: c.vars[0], parity: c.parity, bit: true }));
            } else {
                kept.push(j);
            }
        }
    }
    dropped.sort_unstable_by_key(|&(j, _)| j);

    let core = XorCnf { num_vars: phi.num_vars, clauses: kept.iter().map(|&j| phi.clauses[j].clone()).collect() };
    (core, Remap { original_len: m, kept, dropped })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("malformed header, expected `p xnf <n> <m>`")]
    MalformedHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("clause before header")]
    MissingHeader,
    #[error("invalid literal {0:?}")]
    InvalidLiteral(String),
    #[error("variable {var} out of range 1..={n}")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("repeated variable {0} in clause")]
    RepeatedVariable(usize),
    #[error("empty clause")]
    EmptyClause,
    #[error("clause not terminated by 0")]
    Unterminated,
    #[error("trailing tokens after terminating 0")]
    TrailingTokens,
    #[error("unexpected line, expected `c`, `p` or `x`")]
    UnexpectedLine,
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
}

/// Parses the XNF text format.
///
/// A clause line `x l1 ... lk 0` with `t` negative literals is the equation
/// `x_|l1| + ... + x_|lk| = (1 + t) mod 2`.
pub fn parse_xnf(text: &str) -> Result<XorCnf, ParseError> {
    let err = |line: usize, kind| ParseError { line, kind };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(err(line_no, ParseErrorKind::DuplicateHeader));
                }
                let rest: Vec<&str> = tokens.collect();
                let parsed = match rest.as_slice() {
                    ["xnf", n, m] => n.parse::<usize>().ok().zip(m.parse::<usize>().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or(err(line_no, ParseErrorKind::MalformedHeader))?);
            }
            Some("x") => {
                let (n, _) = header.ok_or(err(line_no, ParseErrorKind::MissingHeader))?;
                let mut vars = Vec::new();
                let mut negatives = 0usize;
                let mut terminated = false;
                for tok in tokens {
                    if terminated {
                        return Err(err(line_no, ParseErrorKind::TrailingTokens));
                    }
                    let lit: i64 = tok.parse().map_err(|_| err(line_no, ParseErrorKind::InvalidLiteral(tok.into())))?;
                    if lit == 0 {
                        terminated = true;
                        continue;
                    }
                    let var = lit.unsigned_abs() as usize;
                    if var > n {
                        return Err(err(line_no, ParseErrorKind::VariableOutOfRange { var, n }));
                    }
                    if vars.contains(&var) {
                        return Err(err(line_no, ParseErrorKind::RepeatedVariable(var)));
                    }
                    if lit < 0 {
                        negatives += 1;
                    }
                    vars.push(var);
                }
                if !terminated {
                    return Err(err(line_no, ParseErrorKind::Unterminated));
                }
                if vars.is_empty() {
                    return Err(err(line_no, ParseErrorKind::EmptyClause));
                }
                let parity = negatives.is_multiple_of(2);
                clauses.push(XorClause::new(vars, parity).expect("validated above"));
            }
            _ => return Err(err(line_no, ParseErrorKind::UnexpectedLine)),
        }
    }

    let (n, m) = header.ok_or(err(last_line.max(1), ParseErrorKind::MissingHeader))?;
    if clauses.len() != m {
        return Err(err(last_line.max(1), ParseErrorKind::ClauseCount { declared: m, found: clauses.len() }));
    }
    Ok(XorCnf { num_vars: n, clauses })
}

/// Writes `phi` in XNF. Odd clauses use positive literals only; even clauses
/// negate their first literal.
pub fn emit_xnf(phi: &XorCnf) -> String {
    let mut out = format!("p xnf {} {}\n", phi.num_vars, phi.clauses.len());
    for c in &phi.clauses {
        out.push('x');
        for (i, &v) in c.vars.iter().enumerate() {
            if i == 0 && !c.parity {
                out.push_str(&format!(" -{v}"));
            } else {
                out.push_str(&format!(" {v}"));
            }
        }
        out.push_str(" 0\n");
    }
    out
}

/// Distinct variables occurring in `phi`.
pub fn used_vars(phi: &XorCnf) -> BTreeSet<usize> {
    phi.clauses.iter().flat_map(|c| c.vars.iter().copied()).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The odd triangle x1≠x2, x2≠x3, x1≠x3.
    pub(crate) fn odd_triangle() -> XorCnf {
        XorCnf::from_pairs(3, &[(&[1, 2], true), (&[2, 3], true), (&[1, 3], true)])
    }

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn parse_parity_rule() {
        let phi = parse_xnf("p xnf 2 2\nx 1 -2 0\nx 1 2 0\n").unwrap();
        assert_eq!(phi.clause(0), &XorClause::new([1, 2], false).unwrap());
        assert_eq!(phi.clause(1), &XorClause::new([1, 2], true).unwrap());
    }

    #[test]
    fn parse_unit_clause() {
        let phi = parse_xnf("c unit\np xnf 1 1\nx 1 0\n").unwrap();
        assert_eq!(phi.clauses(), &[XorClause::new([1], true).unwrap()]);
    }

    #[test]
    fn parse_errors_name_line() {
        let e = parse_xnf("p xnf 2 1\nx 1 1 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::RepeatedVariable(1));

        let e = parse_xnf("p xnf 2 1\nx 3 0\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::VariableOutOfRange { var: 3, n: 2 });

        let e = parse_xnf("p xnf 2 1\nx 0\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyClause);

        let e = parse_xnf("p cnf 2 1\n").unwrap_err();
        assert_eq!((e.line, e.kind), (1, ParseErrorKind::MalformedHeader));

        let e = parse_xnf("p xnf 2 2\nx 1 0\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::ClauseCount { declared: 2, found: 1 }));

        let e = parse_xnf("p xnf 2 1\nx 1 2\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unterminated);

        let e = parse_xnf("x 1 0\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingHeader);
    }

    #[test]
    fn restrict_examples() {
        let single = XorCnf::from_pairs(2, &[(&[1, 2], true)]);
        assert_eq!(single.restrict(&[0], &[]).unwrap(), single);
        assert_eq!(single.restrict(&[], &[0]).unwrap().clauses(), &[XorClause::new([1, 2], false).unwrap()]);

        let t = odd_triangle().restrict(&[0, 1], &[2]).unwrap();
        let expected = XorCnf::from_pairs(3, &[(&[1, 2], true), (&[2, 3], true), (&[1, 3], false)]);
        assert_eq!(t, expected);

        assert_eq!(odd_triangle().restrict(&[0], &[0]), Err(FormulaError::Overlap { index: 0 }));
        assert_eq!(odd_triangle().restrict(&[0, 1], &[]).unwrap().num_clauses(), 2);
    }

    #[test]
    fn inverse_examples() {
        let single = XorCnf::from_pairs(2, &[(&[1, 2], true)]);
        assert!(!single.inverse().clause(0).parity());
        assert!(odd_triangle().inverse().clauses().iter().all(|c| !c.parity()));
        assert_eq!(odd_triangle().inverse().inverse(), odd_triangle());
    }

    #[test]
    fn evaluate_examples() {
        let t = odd_triangle();
        assert_eq!(t.evaluate(&"010".parse().unwrap()).unwrap(), sig("110"));
        assert_eq!(t.evaluate(&"000".parse().unwrap()).unwrap(), sig("000"));
        let eq_neq = XorCnf::from_pairs(2, &[(&[1, 2], false), (&[1, 2], true)]);
        assert_eq!(eq_neq.evaluate(&"11".parse().unwrap()).unwrap(), sig("10"));
        assert!(matches!(
            t.evaluate(&"01".parse().unwrap()),
            Err(FormulaError::LengthMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn preprocess_duplicates() {
        let phi = XorCnf::from_pairs(2, &[(&[1, 2], true), (&[1, 2], true)]);
        let (core, remap) = preprocess(&phi, PreprocessMode::DedupOnly);
        assert_eq!(core.num_clauses(), 1);
        assert_eq!(remap.dropped(), &[(1, Dropped::DuplicateOf(0))]);
        assert_eq!(remap.expand(&sig("1")), sig("11"));
        assert_eq!(remap.expand(&sig("0")), sig("00"));
    }

    #[test]
    fn preprocess_isolated_unit() {
        let phi = XorCnf::from_pairs(3, &[(&[3], true), (&[1, 2], false)]);
        let (core, remap) = preprocess(&phi, PreprocessMode::Maximal);
        assert_eq!(core.clauses(), &[XorClause::new([1, 2], false).unwrap()]);
        assert_eq!(remap.dropped(), &[(0, Dropped::IsolatedUnit { var: 3, parity: true, bit: true })]);
        assert_eq!(remap.expand(&sig("1")), sig("11"));
        let w = remap.expand_witness(&"000".parse().unwrap());
        assert_eq!(phi.evaluate(&w).unwrap(), sig("11"));

        // In dedup-only mode units stay.
        let (core, remap) = preprocess(&phi, PreprocessMode::DedupOnly);
        assert_eq!(core, phi);
        assert!(remap.is_identity());
    }

    #[test]
    fn preprocess_duplicate_of_isolated_unit() {
        let phi = XorCnf::from_pairs(2, &[(&[2], false), (&[1], true), (&[2], false)]);
        let (core, remap) = preprocess(&phi, PreprocessMode::Maximal);
        assert_eq!(core.num_clauses(), 0);
        assert_eq!(remap.expand(&Signature::zeros(0)), sig("111"));
        let w = remap.expand_witness(&Assignment::zeros(2));
        assert_eq!(phi.evaluate(&w).unwrap(), sig("111"));
    }

    #[test]
    fn emit_round_trip() {
        let phi = XorCnf::from_pairs(4, &[(&[1, 2], false), (&[3], true), (&[2, 3, 4], false)]);
        let text = emit_xnf(&phi);
        assert_eq!(text, "p xnf 4 3\nx -1 2 0\nx 3 0\nx -2 3 4 0\n");
        assert_eq!(parse_xnf(&text).unwrap(), phi);
    }

    #[test]
    fn components() {
        let phi = XorCnf::from_pairs(5, &[(&[1, 2], true), (&[4, 5], true), (&[2, 3], false)]);
        assert_eq!(phi.clause_components(), vec![vec![0, 2], vec![1]]);
        assert_eq!(phi.component_count(), 2);
    }
}
