//! Enumeration of all, minimal and maximal signatures of XOR-CNF formulas.
//!
//! A signature of a formula is the bit vector recording which clauses an
//! assignment satisfies. Viewing the clauses as linear equations over GF(2)
//! makes every extension question a rank computation, which drives:
//!
//! * [`flashlight`]: all signatures with polynomial delay and space;
//! * [`maxgen`]: maximality tests plus two engines for maximal and minimal
//!   signatures of arbitrary XOR-CNF;
//! * [`rb2xor`]: proximity search over maximal red-blue bipartite subgraphs
//!   for formulas with clauses of width at most two;
//! * [`hardness`]: the 3-SAT reduction showing that the extension problem
//!   for maximal bipartite subgraphs is NP-hard, with a small exact decider.
//!
//! [`oracle`] holds brute-force references used by the tests.

pub mod bits;
pub mod flashlight;
pub mod formula;
pub mod gen;
pub mod gf2;
pub mod hardness;
pub mod maxgen;
pub mod oracle;
pub mod rb2xor;

pub use bits::Bits;
pub use formula::{parse_xnf, Assignment, Signature, XorClause, XorCnf};
