//! Compilation of positive 1-in-3 SAT into a partially instantiated DoubleLex matrix.
//!
//! Coordinates follow the construction's own convention: `(row, column)`, 1-based, row 1
//! at the **bottom**. Under that convention rows are ordered reverse-lexicographically
//! (each row is `>=lex` the row above it) and columns lexicographically, columns being
//! read from the top row down. [`Grid::to_matrix`] flips the rows so that the emitted
//! [`MatrixModel`](crate::lex::MatrixModel) lists them top-down, where both chains are
//! plain `Lex`.

use alloc::string::String;
use alloc::vec::Vec;

mod gadgets;
mod grid;
mod instance;

pub use gadgets::{
    build_gadget1, build_gadget2, check_gadget1_properties, check_gadget2_properties, gadget1_row_feasible,
    gadget2_row_feasible, zero_columns_neutral, Gadget1, Gadget1Layout, Gadget1Properties, Gadget2, Gadget2Layout,
    Gadget2Properties,
};
pub use grid::{detect_wrongly_ordered, Grid, WronglyOrdered};
pub use instance::{
    build_instance, check_instance_properties, count_repaired_witnesses, decode_assignment, scan_witnesses,
    verify_equivalence, CellLabel, ClausePlacement, ConstructionPlan, EquivalenceReport, GadgetPlacement, HeaderRow,
    Instance, InstanceProperties, PairKind, PairWitness, SubPlacement, DEFAULT_NODE_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("clause {clause} mentions variable {var}, outside 1..={n}")]
    VariableOutOfRange { clause: usize, var: usize, n: usize },
    #[error("clause {clause} repeats a variable")]
    RepeatedVariable { clause: usize },
    #[error("variable {var} occurs in no clause")]
    UnusedVariable { var: usize },
    #[error("formula has no clauses")]
    Empty,
    #[error("{n} variables are too many to enumerate")]
    TooManyVariables { n: usize },
    #[error("conflicting fixed values at ({row}, {col})")]
    Clash { row: usize, col: usize },
    #[error("gadget geometry: {0}")]
    Geometry(String),
    #[error("variable {var} has a mix of true and false dependents")]
    MixedDependents { var: usize },
}

/// A positive 1-in-3 SAT formula over `x_1..x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    n: usize,
    clauses: Vec<[usize; 3]>,
}

impl Formula {
    /// Every clause needs three distinct variables in `1..=n`, and every variable must
    /// occur somewhere.
    pub fn new(n: usize, clauses: Vec<[usize; 3]>) -> Result<Self, ReductionError> {
        if clauses.is_empty() {
            return Err(ReductionError::Empty);
        }
        let mut used = alloc::vec![false; n];
        for (k, c) in clauses.iter().enumerate() {
            for &v in c {
                if v == 0 || v > n {
                    return Err(ReductionError::VariableOutOfRange {
                        clause: k + 1,
                        var: v,
                        n,
                    });
                }
                used[v - 1] = true;
            }
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(ReductionError::RepeatedVariable { clause: k + 1 });
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(ReductionError::UnusedVariable { var: i + 1 });
        }
        Ok(Formula { n, clauses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// 1-based indices of the clauses containing `var`, ascending.
    pub fn occurrences(&self, var: usize) -> Vec<usize> {
        (1..=self.m()).filter(|&k| self.clauses[k - 1].contains(&var)).collect()
    }

    /// Whether exactly one variable of every clause is true. `assignment[i]` is `x_{i+1}`.
    pub fn is_model(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().filter(|&&v| assignment[v - 1]).count() == 1)
    }

    /// All models, by enumerating the `2^n` assignments.
    pub fn models(&self) -> Result<Vec<Vec<bool>>, ReductionError> {
        if self.n > 24 {
            return Err(ReductionError::TooManyVariables { n: self.n });
        }
        Ok((0u32..1 << self.n)
            .map(|bits| (0..self.n).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>())
            .filter(|a| self.is_model(a))
            .collect())
    }
}
