//! The 3-SAT reduction to the extension problem for maximal bipartite
//! subgraphs, plus an exact decider for small instances.
//!
//! Given a CNF on `v_1..v_n` with clauses `C_1..C_m`, the graph has vertices
//! `x_i, y_i` per variable, `c_j` per clause and a universal vertex `u`;
//! edges `x_i y_i`, `x_i c_j` (`v_i ∈ C_j`), `y_i c_j` (`¬v_i ∈ C_j`) and `u`
//! to everything. The CNF is satisfiable iff some maximal bipartite subgraph
//! contains `A = {x_i y_i}` and avoids `B = {u c_j}`.
//!
//! The decider relies on maximal bipartite subgraphs being exactly the
//! inclusion-maximal cuts `δ(X, Y)`: it propagates the forced sides (`A`
//! edges cross, `B` edges do not), enumerates the remaining free side
//! choices and keeps the first cut that cannot be extended.

use std::fmt;

use thiserror::Error;

use crate::formula::{XorClause, XorCnf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HardnessError {
    #[error("clause {index} is empty")]
    EmptyClause { index: usize },
    #[error("clause {index} has {len} literals; the reduction takes at most 3")]
    ClauseTooLong { index: usize, len: usize },
    #[error("clause {index}: literal {literal} out of range for {n} variables")]
    LiteralOutOfRange { index: usize, literal: i32, n: usize },
    #[error("clause {index}: variable {var} repeated")]
    RepeatedVariable { index: usize, var: usize },
    #[error("{free} free side choices exceed the decider cap {cap}")]
    CapExceeded { free: usize, cap: usize },
    #[error("edge {edge} out of range for {m} edges")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("invalid witness: {0}")]
    InvalidWitness(&'static str),
}

/// A CNF formula with DIMACS-style literals (`±v`, 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self, HardnessError> {
        for (index, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(HardnessError::EmptyClause { index });
            }
            let mut seen = vec![false; num_vars + 1];
            for &literal in clause {
                let var = literal.unsigned_abs() as usize;
                if literal == 0 || var > num_vars {
                    return Err(HardnessError::LiteralOutOfRange { index, literal, n: num_vars });
                }
                if seen[var] {
                    return Err(HardnessError::RepeatedVariable { index, var });
                }
                seen[var] = true;
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// `values[i]` is the value of `v_{i+1}`.
    pub fn satisfied_by(&self, values: &[bool]) -> bool {
        assert_eq!(values.len(), self.num_vars, "assignment length");
        self.clauses.iter().all(|c| c.iter().any(|&l| values[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// First model in binary counting order (v_1 least significant), by
    /// exhaustive search. Intended for `n` up to about 20.
    pub fn brute_model(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars < 32, "brute force over {} variables", self.num_vars);
        (0u64..1 << self.num_vars)
            .map(|k| (0..self.num_vars).map(|i| k >> i & 1 == 1).collect::<Vec<_>>())
            .find(|values| self.satisfied_by(values))
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                write!(f, "{l} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct DimacsError {
    pub line: usize,
    pub message: String,
}

/// Parses DIMACS CNF. Clauses may span lines; a `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<Cnf, DimacsError> {
    let err = |line: usize, message: String| DimacsError { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", n, m] => n.parse().ok().zip(m.parse().ok()),
                _ => None,
            };
            let Some(h) = parsed else {
                return Err(err(line, format!("malformed header {trimmed:?}")));
            };
            if header.is_some() {
                return Err(err(line, "duplicate header".into()));
            }
            header = Some(h);
            continue;
        }
        let Some((n, _)) = header else {
            return Err(err(line, "clause before header".into()));
        };
        for token in trimmed.split_whitespace() {
            let literal: i32 = token.parse().map_err(|_| err(line, format!("bad literal {token:?}")))?;
            if literal == 0 {
                let clause = std::mem::take(&mut current);
                let index = clauses.len();
                Cnf::new(n, vec![clause.clone()])
                    .map_err(|e| err(line, e.to_string().replacen("clause 0", &format!("clause {}", index + 1), 1)))?;
                clauses.push(clause);
            } else {
                current.push(literal);
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(err(last_line.max(1), "missing header".into()));
    };
    if !current.is_empty() {
        return Err(err(last_line, "unterminated clause".into()));
    }
    if clauses.len() != m {
        return Err(err(last_line, format!("header announces {m} clauses, found {}", clauses.len())));
    }
    Cnf::new(n, clauses).map_err(|e| err(last_line, e.to_string()))
}

/// Simple undirected graph with labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Index of the edge between `a` and `b`, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.iter().position(|&(p, q)| (p, q) == (a, b) || (p, q) == (b, a))
    }

    /// The graph as a formula of disequalities: vertex `k` is variable
    /// `k + 1`, edge `j` is clause `j`. Its maximal signatures are the
    /// maximal bipartite subgraphs.
    pub fn to_disequalities(&self) -> XorCnf {
        let clauses = self
            .edges
            .iter()
            .map(|&(a, b)| XorClause::new([a + 1, b + 1], true).expect("simple graph has no loops"))
            .collect();
        XorCnf::new(self.num_vertices(), clauses).expect("vertices in range")
    }

    /// Edge dump, one `edge <id> <u> <v> blue` line per edge (1-based ids).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (j, &(a, b)) in self.edges.iter().enumerate() {
            out.push_str(&format!("edge {} {} {} blue\n", j + 1, self.labels[a], self.labels[b]));
        }
        out
    }
}

/// Output of [`reduce_3sat`]. Vertex ids: `x_i = 2(i-1)`, `y_i = 2(i-1)+1`,
/// `c_j = 2n + j - 1`, `u = 2n + m`. Edge ids: the `x_i y_i` edges first,
/// then literal edges clause by clause, then the edges at `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInstance {
    pub graph: SimpleGraph,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub num_vars: usize,
    pub num_clauses: usize,
}

impl ReductionInstance {
    pub fn x(&self, i: usize) -> usize {
        2 * (i - 1)
    }

    pub fn y(&self, i: usize) -> usize {
        2 * (i - 1) + 1
    }

    pub fn c(&self, j: usize) -> usize {
        2 * self.num_vars + j - 1
    }

    pub fn u(&self) -> usize {
        2 * self.num_vars + self.num_clauses
    }
}

pub fn reduce_3sat(cnf: &Cnf) -> Result<ReductionInstance, HardnessError> {
    let n = cnf.num_vars();
    let m = cnf.clauses().len();
    if let Some((index, c)) = cnf.clauses().iter().enumerate().find(|(_, c)| c.len() > 3) {
        return Err(HardnessError::ClauseTooLong { index, len: c.len() });
    }
    let mut labels = Vec::with_capacity(2 * n + m + 1);
    for i in 1..=n {
        labels.push(format!("x{i}"));
        labels.push(format!("y{i}"));
    }
    labels.extend((1..=m).map(|j| format!("c{j}")));
    labels.push("u".into());
    let u = 2 * n + m;

    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
    for (j, clause) in cnf.clauses().iter().enumerate() {
        for &l in clause {
            let i = l.unsigned_abs() as usize - 1;
            let lit_vertex = if l > 0 { 2 * i } else { 2 * i + 1 };
            edges.push((lit_vertex, 2 * n + j));
        }
    }
    let first_b = edges.len() + 2 * n;
    edges.extend((0..2 * n + m).map(|v| (v, u)));

    Ok(ReductionInstance {
        graph: SimpleGraph { labels, edges },
        a: (0..n).collect(),
        b: (first_b..first_b + m).collect(),
        num_vars: n,
        num_clauses: m,
    })
}

pub const DEFAULT_FREE_CAP: usize = 24;

/// Parity union-find without rollback; `find` returns (root, parity to root).
struct Parity {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl Parity {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, v: usize) -> (usize, bool) {
        let p = self.parent[v];
        if p == v {
            return (v, false);
        }
        let (root, up) = self.find(p);
        self.parent[v] = root;
        self.parity[v] ^= up;
        (root, self.parity[v])
    }

    /// Requires `side(a) ^ side(b) == diff`; `false` on contradiction.
    fn relate(&mut self, a: usize, b: usize, diff: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == diff;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ diff;
        true
    }
}

/// Whether `h` (edge ids) is a maximal bipartite subgraph of `g`.
pub fn is_maximal_bipartite(g: &SimpleGraph, h: &[usize]) -> Result<bool, HardnessError> {
    let mut inside = vec![false; g.num_edges()];
    for &e in h {
        if e >= g.num_edges() {
            return Err(HardnessError::EdgeOutOfRange { edge: e, m: g.num_edges() });
        }
        inside[e] = true;
    }
    let mut dsu = Parity::new(g.num_vertices());
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        if inside[e] && !dsu.relate(a, b, true) {
            return Ok(false);
        }
    }
    // H + ab stays bipartite unless a and b are already forced to one side.
    Ok(g.edges.iter().enumerate().all(|(e, &(a, b))| {
        inside[e] || {
            let (ra, pa) = dsu.find(a);
            let (rb, pb) = dsu.find(b);
            ra == rb && pa == pb
        }
    }))
}

/// Some maximal bipartite subgraph `H` with `a ⊆ H` and `H ∩ b = ∅`, as an
/// ascending edge-id list; `None` if there is none. Refuses when more than
/// `cap` side choices remain free after propagation.
pub fn brute_extension(
    g: &SimpleGraph,
    a: &[usize],
    b: &[usize],
    cap: usize,
) -> Result<Option<Vec<usize>>, HardnessError> {
    let m = g.num_edges();
    let nv = g.num_vertices();
    if let Some(&edge) = a.iter().chain(b).find(|&&e| e >= m) {
        return Err(HardnessError::EdgeOutOfRange { edge, m });
    }
    let mut forced = Parity::new(nv);
    for &e in a {
        let (p, q) = g.edges[e];
        if !forced.relate(p, q, true) {
            return Ok(None);
        }
    }
    for &e in b {
        let (p, q) = g.edges[e];
        if !forced.relate(p, q, false) {
            return Ok(None);
        }
    }
    // Each class of forced vertices gets one free bit; the class of vertex 0
    // is pinned (swapping sides gives the same cut).
    let mut class = vec![usize::MAX; nv];
    let mut offset = vec![false; nv];
    let mut roots = Vec::new();
    for v in 0..nv {
        let (r, p) = forced.find(v);
        let id = match roots.iter().position(|&x| x == r) {
            Some(id) => id,
            None => {
                roots.push(r);
                roots.len() - 1
            }
        };
        class[v] = id;
        offset[v] = p;
    }
    let free = roots.len().saturating_sub(1);
    if free > cap {
        return Err(HardnessError::CapExceeded { free, cap });
    }
    let mut side = vec![false; nv];
    for mask in 0u64..(1u64 << free) {
        for v in 0..nv {
            let bit = class[v] > 0 && mask >> (class[v] - 1) & 1 == 1;
            side[v] = bit ^ offset[v];
        }
        let cut: Vec<usize> = (0..m)
            .filter(|&e| {
                let (p, q) = g.edges[e];
                side[p] != side[q]
            })
            .collect();
        if is_maximal_bipartite(g, &cut)? {
            return Ok(Some(cut));
        }
    }
    Ok(None)
}

/// Reads the assignment encoded by a witness: `v_i = 1` iff `u x_i ∈ H`.
/// Validates that `h` is maximal bipartite, contains `A` and avoids `B`.
pub fn decode_witness(inst: &ReductionInstance, h: &[usize]) -> Result<Vec<bool>, HardnessError> {
    if !is_maximal_bipartite(&inst.graph, h)? {
        return Err(HardnessError::InvalidWitness("not a maximal bipartite subgraph"));
    }
    if !inst.a.iter().all(|e| h.contains(e)) {
        return Err(HardnessError::InvalidWitness("misses an edge of A"));
    }
    if inst.b.iter().any(|e| h.contains(e)) {
        return Err(HardnessError::InvalidWitness("contains an edge of B"));
    }
    Ok((1..=inst.num_vars)
        .map(|i| {
            let e = inst.graph.edge_between(inst.x(i), inst.u()).expect("u is universal");
            h.contains(&e)
        })
        .collect())
}

/// The three-clause example formula `(v1 ∨ v2 ∨ v3) ∧ (¬v1 ∨ v2 ∨ v3) ∧ (¬v1 ∨ v2 ∨ ¬v3)`.
pub fn worked_example() -> Cnf {
    Cnf::new(3, vec![vec![1, 2, 3], vec![-1, 2, 3], vec![-1, 2, -3]]).expect("valid")
}
