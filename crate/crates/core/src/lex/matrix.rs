use alloc::format;
use alloc::vec::Vec;

use super::{chain_holds, propagate_chain, ChainOrder, LexError};
use crate::csp::{solve, Constraint, Domain, Model, Outcome, SearchConfig, Status, Term, Value, VarId, Wipeout};

/// State of a matrix cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixCell {
    Zero,
    One,
    Free(VarId),
}

impl MatrixCell {
    pub fn term(self) -> Term {
        match self {
            MatrixCell::Zero => Term::Const(0),
            MatrixCell::One => Term::Const(1),
            MatrixCell::Free(v) => Term::Var(v),
        }
    }

    pub fn fixed(self) -> Option<Value> {
        match self {
            MatrixCell::Zero => Some(0),
            MatrixCell::One => Some(1),
            MatrixCell::Free(_) => None,
        }
    }
}

/// A partially instantiated matrix whose rows and columns are each lex-chained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixModel {
    rows: usize,
    cols: usize,
    cells: Vec<MatrixCell>,
    row_order: ChainOrder,
    col_order: ChainOrder,
    row_terms: Vec<Vec<Term>>,
    col_terms: Vec<Vec<Term>>,
}

impl MatrixModel {
    /// `cells` is row-major. Free cells must reference distinct variables.
    pub fn new(
        rows: usize,
        cols: usize,
        cells: Vec<MatrixCell>,
        row_order: ChainOrder,
        col_order: ChainOrder,
    ) -> Result<Self, LexError> {
        if cells.len() != rows * cols {
            return Err(LexError::Matrix(format!(
                "{} cells given for a {rows}x{cols} matrix",
                cells.len()
            )));
        }
        let row_terms = cells
            .chunks(cols.max(1))
            .take(rows)
            .map(|r| r.iter().map(|c| c.term()).collect())
            .collect();
        let col_terms = (0..cols)
            .map(|c| (0..rows).map(|r| cells[r * cols + c].term()).collect())
            .collect();
        let m = MatrixModel {
            rows,
            cols,
            cells,
            row_order,
            col_order,
            row_terms,
            col_terms,
        };
        let vars = m.free_vars();
        if vars.len() != m.cells.iter().filter(|c| c.fixed().is_none()).count() {
            return Err(LexError::Matrix("a variable occurs in two cells".into()));
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_order(&self) -> ChainOrder {
        self.row_order
    }

    pub fn col_order(&self) -> ChainOrder {
        self.col_order
    }

    pub fn cells(&self) -> &[MatrixCell] {
        &self.cells
    }

    /// 1-based coordinates.
    pub fn cell(&self, row: usize, col: usize) -> MatrixCell {
        assert!((1..=self.rows).contains(&row) && (1..=self.cols).contains(&col));
        self.cells[(row - 1) * self.cols + col - 1]
    }

    /// Sorted variables of the free cells.
    pub fn free_vars(&self) -> Vec<VarId> {
        let mut vars: Vec<VarId> = self
            .cells
            .iter()
            .filter_map(|c| match c {
                MatrixCell::Free(v) => Some(*v),
                _ => None,
            })
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn row_terms(&self) -> &[Vec<Term>] {
        &self.row_terms
    }

    pub fn col_terms(&self) -> &[Vec<Term>] {
        &self.col_terms
    }

    /// The matrix as a value grid under a full assignment.
    pub fn values(&self, assignment: &[Value]) -> Vec<Vec<Value>> {
        self.row_terms()
            .iter()
            .map(|r| r.iter().map(|t| t.value(assignment)).collect())
            .collect()
    }

    pub fn check(&self, assignment: &[Value]) -> bool {
        chain_holds(self.row_terms(), self.row_order, assignment)
            && chain_holds(self.col_terms(), self.col_order, assignment)
    }
}

/// Row chain and column chain filtered alternately to a common fixpoint. Not DC.
pub fn propagate_doublelex(m: &MatrixModel, domains: &mut [Domain]) -> Result<bool, Wipeout> {
    let rows = m.row_terms();
    let cols = m.col_terms();
    let mut changed = false;
    loop {
        let a = propagate_chain(rows, m.row_order, domains)?;
        let b = propagate_chain(cols, m.col_order, domains)?;
        if !(a || b) {
            return Ok(changed);
        }
        changed = true;
    }
}

/// Default node budget for each support search of [`doublelex_complete_check`].
pub const DEFAULT_SUPPORT_BUDGET: u64 = 1_000_000;

/// Result of [`doublelex_complete_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteCheck {
    /// Domains with every value removed that provably has no support. Values in
    /// `unknown` are kept.
    pub outcome: Outcome,
    /// `(variable, value)` pairs whose support search ran out of budget.
    pub unknown: Vec<(VarId, Value)>,
    pub nodes: u64,
}

impl CompleteCheck {
    pub fn is_exact(&self) -> bool {
        self.unknown.is_empty()
    }
}

/// Domain consistency for the whole DoubleLex constraint by support search.
///
/// Each candidate value is fixed in turn and a solution of the matrix is searched for with
/// [`propagate_doublelex`] at every node; a found solution marks all its values supported.
pub fn doublelex_complete_check(m: &MatrixModel, domains: &[Domain], budget: u64) -> CompleteCheck {
    let vars = m.free_vars();
    let mut check = CompleteCheck {
        outcome: Outcome::Wipeout,
        unknown: Vec::new(),
        nodes: 0,
    };
    let mut weak = domains.to_vec();
    if vars.iter().any(|&v| domains[v].is_empty()) || propagate_doublelex(m, &mut weak).is_err() {
        return check;
    }
    // variables outside the matrix are pinned so search only branches on cells
    let mut base: Vec<Domain> = domains
        .iter()
        .map(|d| d.min().map_or(Domain::singleton(0), Domain::singleton))
        .collect();
    for &v in &vars {
        base[v] = domains[v];
    }
    let mut supported: Vec<Domain> = alloc::vec![Domain::EMPTY; domains.len()];
    let mut pruned = domains.to_vec();
    for &v in &vars {
        for value in domains[v] {
            if supported[v].contains(value) {
                continue;
            }
            let mut trial = base.clone();
            trial[v] = Domain::singleton(value);
            let mut model = Model::from_domains(&trial).expect("non-empty domains");
            model.post(Constraint::DoubleLex(m.clone())).expect("valid matrix");
            let result = solve(&model, &SearchConfig::first().with_budget(budget));
            check.nodes += result.stats.nodes;
            match result.status {
                Status::Satisfiable => {
                    for &w in &vars {
                        supported[w].insert(result.solutions[0][w]);
                    }
                }
                Status::Unsatisfiable => {
                    pruned[v].remove(value);
                }
                Status::Unknown => check.unknown.push((v, value)),
            }
        }
        if pruned[v].is_empty() {
            return check;
        }
    }
    check.outcome = Outcome::Consistent(pruned);
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn corner_zero() -> MatrixModel {
        use MatrixCell::*;
        MatrixModel::new(
            2,
            2,
            vec![Free(0), Free(1), Free(2), Zero],
            ChainOrder::Lex,
            ChainOrder::Lex,
        )
        .unwrap()
    }

    #[test]
    fn corner_zero_gap() {
        let m = corner_zero();
        let d = vec![Domain::BOOL; 3];
        let mut weak = d.clone();
        assert_eq!(propagate_doublelex(&m, &mut weak), Ok(false));
        let full = doublelex_complete_check(&m, &d, DEFAULT_SUPPORT_BUDGET);
        assert!(full.is_exact());
        assert_eq!(
            full.outcome,
            Outcome::Consistent(vec![Domain::singleton(0), Domain::BOOL, Domain::BOOL])
        );
    }

    #[test]
    fn duplicate_variable_rejected() {
        use MatrixCell::*;
        assert!(MatrixModel::new(1, 2, vec![Free(0), Free(0)], ChainOrder::Lex, ChainOrder::Lex).is_err());
        assert!(MatrixModel::new(1, 2, vec![Zero], ChainOrder::Lex, ChainOrder::Lex).is_err());
    }

    #[test]
    fn fixed_valid_matrix_unchanged() {
        use MatrixCell::*;
        let m = MatrixModel::new(2, 2, vec![Zero, One, One, One], ChainOrder::Lex, ChainOrder::Lex).unwrap();
        let mut d: Vec<Domain> = vec![];
        assert_eq!(propagate_doublelex(&m, &mut d), Ok(false));
        let c = doublelex_complete_check(&m, &d, 10);
        assert_eq!(c.outcome, Outcome::Consistent(vec![]));
    }
}
