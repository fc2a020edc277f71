//! Symmetry-breaking toolkit for finite-domain constraint problems.
//!
//! The crate is `no_std` (it needs `alloc`). It contains:
//!
//! - [`perm`]: permutations, product closure, Schreier–Sims stabilizer chains,
//!   sifting membership and orbits of assignments;
//! - [`csp`]: a small bitset-domain constraint engine with fixpoint propagation,
//!   depth-first search and an exhaustive domain-consistency oracle;
//! - [`lex`]: Lex, value lex-leader, LexChain and DoubleLex propagators, lex-leader
//!   generation from generators, and an orbit-based completeness audit;
//! - [`reduction`]: the compilation of positive 1-in-3 SAT into a partially
//!   instantiated DoubleLex matrix, with gadget property checks and decoding.
//!
//! Points of permutations and matrix coordinates at the public surface are 1-based.

#![no_std]

extern crate alloc;

pub mod csp;
pub mod lex;
pub mod perm;
pub mod reduction;

pub use csp::{Constraint, Domain, Model, Outcome, SearchConfig, SearchResult, Status, Term, Value, VarId, Wipeout};
pub use lex::{ChainOrder, LexChain, LexConstraint, MatrixCell, MatrixModel, ValueLexLeader};
pub use perm::{GeneratingSet, Permutation, StabilizerChain, SymmetryKind};
