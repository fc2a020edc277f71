//! Lexicographic ordering constraints and their propagators.
//!
//! Every propagator here enforces domain consistency on its own constraint except
//! [`propagate_doublelex`], which only runs the row and column chains to a joint
//! fixpoint. Deciding DC for DoubleLex is NP-hard; [`doublelex_complete_check`] does it
//! by search with a node budget.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::csp::{CspError, Domain, Outcome, Term, Value, VarId, Wipeout};
use crate::perm::{PermError, Permutation};

mod audit;
mod chain;
mod generate;
mod matrix;
mod pairwise;

pub use audit::{audit_completeness, AuditReport, OrbitWitness, DEFAULT_AUDIT_CAP};
pub use chain::propagate_chain;
pub use generate::lex_leader_from_generators;
pub use matrix::{
    doublelex_complete_check, propagate_doublelex, CompleteCheck, MatrixCell, MatrixModel, DEFAULT_SUPPORT_BUDGET,
};
pub use pairwise::{propagate_lex, propagate_value_leader};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexError {
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("more than {cap} solutions to audit")]
    SolutionCap { cap: usize },
    #[error("invalid matrix: {0}")]
    Matrix(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Csp(#[from] CspError),
}

/// Compares two full value vectors lexicographically.
pub fn lex_cmp(a: &[Value], b: &[Value]) -> Ordering {
    a.cmp(b)
}

fn eval(terms: &[Term], assignment: &[Value]) -> Vec<Value> {
    terms.iter().map(|t| t.value(assignment)).collect()
}

/// `left <=lex right`, or `<lex` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexConstraint {
    pub left: Vec<Term>,
    pub right: Vec<Term>,
    pub strict: bool,
}

impl LexConstraint {
    pub fn leq(left: Vec<Term>, right: Vec<Term>) -> Self {
        LexConstraint {
            left,
            right,
            strict: false,
        }
    }

    pub fn lt(left: Vec<Term>, right: Vec<Term>) -> Self {
        LexConstraint {
            left,
            right,
            strict: true,
        }
    }

    /// Non-strict constraint over plain variable vectors.
    pub fn vars(left: &[VarId], right: &[VarId]) -> Self {
        LexConstraint::leq(
            left.iter().map(|&v| Term::Var(v)).collect(),
            right.iter().map(|&v| Term::Var(v)).collect(),
        )
    }

    pub fn check(&self, assignment: &[Value]) -> bool {
        let ord = lex_cmp(&eval(&self.left, assignment), &eval(&self.right, assignment));
        if self.strict {
            ord == Ordering::Less
        } else {
            ord != Ordering::Greater
        }
    }
}

/// `X <=lex θ(X)` where θ acts on values as 1-based points.
///
/// Values outside `1..=θ.degree()` have no image and so never satisfy the constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueLexLeader {
    pub vars: Vec<VarId>,
    pub theta: Permutation,
}

impl ValueLexLeader {
    pub fn new(vars: Vec<VarId>, theta: Permutation) -> Self {
        ValueLexLeader { vars, theta }
    }

    pub(crate) fn image(&self, v: Value) -> Option<Value> {
        let v = v as usize;
        (1..=self.theta.degree())
            .contains(&v)
            .then(|| self.theta.image(v) as Value)
    }

    pub fn check(&self, assignment: &[Value]) -> bool {
        let xs: Vec<Value> = self.vars.iter().map(|&v| assignment[v]).collect();
        let Some(ys) = xs.iter().map(|&x| self.image(x)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        xs <= ys
    }
}

/// Direction of a chain of vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainOrder {
    /// `V1 <=lex V2 <=lex ...`
    Lex,
    /// `V1 >=lex V2 >=lex ...`
    ReverseLex,
}

/// Adjacent vectors ordered per `order`. Vectors must have equal length and no variable
/// may occur twice in the whole chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexChain {
    pub vectors: Vec<Vec<Term>>,
    pub order: ChainOrder,
}

impl LexChain {
    pub fn new(vectors: Vec<Vec<Term>>, order: ChainOrder) -> Self {
        LexChain { vectors, order }
    }

    pub fn validate(&self) -> Result<(), String> {
        validate_chain(&self.vectors)
    }

    pub fn check(&self, assignment: &[Value]) -> bool {
        chain_holds(&self.vectors, self.order, assignment)
    }
}

pub(crate) fn validate_chain(vectors: &[Vec<Term>]) -> Result<(), String> {
    if let Some(first) = vectors.first() {
        if let Some(bad) = vectors.iter().find(|v| v.len() != first.len()) {
            return Err(alloc::format!(
                "chain vectors differ in length ({} vs {})",
                first.len(),
                bad.len()
            ));
        }
    }
    let mut vars: Vec<VarId> = vectors.iter().flatten().filter_map(|t| t.var()).collect();
    let total = vars.len();
    vars.sort_unstable();
    vars.dedup();
    if vars.len() != total {
        return Err(String::from("a variable occurs more than once in the chain"));
    }
    Ok(())
}

pub(crate) fn chain_holds(vectors: &[Vec<Term>], order: ChainOrder, assignment: &[Value]) -> bool {
    let values: Vec<Vec<Value>> = vectors.iter().map(|v| eval(v, assignment)).collect();
    values.windows(2).all(|w| match order {
        ChainOrder::Lex => w[0] <= w[1],
        ChainOrder::ReverseLex => w[0] >= w[1],
    })
}

fn apply(f: impl FnOnce(&mut [Domain]) -> Result<bool, Wipeout>, domains: &[Domain]) -> Outcome {
    let mut d = domains.to_vec();
    f(&mut d).map(|_| d).into()
}

/// DC filtering of a single Lex constraint, returning new domains.
pub fn lex_leq_propagate(c: &LexConstraint, domains: &[Domain]) -> Outcome {
    apply(|d| propagate_lex(c, d), domains)
}

pub fn value_lexleader_propagate(c: &ValueLexLeader, domains: &[Domain]) -> Outcome {
    apply(|d| propagate_value_leader(c, d), domains)
}

pub fn lexchain_propagate(vectors: &[Vec<Term>], order: ChainOrder, domains: &[Domain]) -> Outcome {
    apply(|d| propagate_chain(vectors, order, d), domains)
}

pub fn doublelex_propagate(m: &MatrixModel, domains: &[Domain]) -> Outcome {
    apply(|d| propagate_doublelex(m, d), domains)
}
