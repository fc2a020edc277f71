//! JSON form of a reduction instance.
//!
//! Rows are numbered from the top of the emitted matrix (row 1 is the first row of the
//! DoubleLex constraint), columns from the left, both 1-based. A free cell's state is
//! `free:<var>` with the 0-based variable index. The `plan` section uses the same
//! numbering.

use serde::Serialize;
use symbreak::reduction::{CellLabel, EquivalenceReport, Formula, Grid, Instance};
use symbreak::{MatrixCell, Status, VarId};

use crate::model_io::{OrderDoc, SCHEMA_VERSION};

#[derive(Debug, Serialize)]
pub struct InstanceDoc {
    pub schema_version: u32,
    pub rows: usize,
    pub cols: usize,
    pub row_order: OrderDoc,
    pub col_order: OrderDoc,
    pub cells: Vec<(usize, usize, String)>,
    pub plan: PlanDoc,
}

#[derive(Debug, Serialize)]
pub struct PlanDoc {
    pub n: usize,
    pub m: usize,
    pub gadgets: Vec<GadgetDoc>,
    pub clauses: Vec<ClauseDoc>,
    pub header: Vec<HeaderDoc>,
    pub variables: Vec<VariableDoc>,
}

#[derive(Debug, Serialize)]
pub struct GadgetDoc {
    pub var: usize,
    pub p: usize,
    pub padding: usize,
    pub top_row: usize,
    pub bottom_row: usize,
    pub switcher_col: usize,
    pub body_start: usize,
    pub last_col: usize,
    pub first_var: VarId,
}

#[derive(Debug, Serialize)]
pub struct ClauseDoc {
    pub clause: usize,
    pub vars: [usize; 3],
    pub subs: Vec<SubDoc>,
}

#[derive(Debug, Serialize)]
pub struct SubDoc {
    pub bottom_row: usize,
    pub switcher_col: usize,
    /// `(SAT variable, column of its dependent)`.
    pub targets: [(usize, usize); 3],
    pub first_var: VarId,
}

#[derive(Debug, Serialize)]
pub struct HeaderDoc {
    pub var: usize,
    pub row: usize,
    pub first_one: usize,
}

#[derive(Debug, Serialize)]
pub struct VariableDoc {
    pub id: VarId,
    pub row: usize,
    pub col: usize,
    pub label: LabelDoc,
}

#[derive(Debug, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum LabelDoc {
    Indicator { var: usize, truth: bool },
    Dependent { var: usize, clause: usize, truth: bool },
    Switcher { var: usize, index: usize },
    ClauseSwitcher { clause: usize, sub: usize, index: usize },
    Repair { clause: usize, sub: usize, var: usize },
}

impl From<CellLabel> for LabelDoc {
    fn from(l: CellLabel) -> Self {
        match l {
            CellLabel::Indicator { var, truth } => LabelDoc::Indicator { var, truth },
            CellLabel::Dependent { var, clause, truth } => LabelDoc::Dependent { var, clause, truth },
            CellLabel::Switcher { var, index } => LabelDoc::Switcher { var, index },
            CellLabel::ClauseSwitcher { clause, sub, index } => LabelDoc::ClauseSwitcher { clause, sub, index },
            CellLabel::Repair { clause, sub, var } => LabelDoc::Repair { clause, sub, var },
        }
    }
}

fn state(c: MatrixCell) -> String {
    match c {
        MatrixCell::Zero => "0".into(),
        MatrixCell::One => "1".into(),
        MatrixCell::Free(v) => format!("free:{v}"),
    }
}

/// Cells of a grid, top row first.
pub fn grid_cells(grid: &Grid) -> Vec<(usize, usize, String)> {
    (1..=grid.rows())
        .flat_map(|top| {
            let row = grid.rows() - top + 1;
            (1..=grid.cols()).map(move |c| (top, c, state(grid.get(row, c))))
        })
        .collect()
}

pub fn instance_doc(f: &Formula, inst: &Instance) -> InstanceDoc {
    let plan = &inst.plan;
    let top = |row: usize| inst.grid.display_row(row);
    let cells = (1..=inst.matrix.rows())
        .flat_map(|r| (1..=inst.matrix.cols()).map(move |c| (r, c, state(inst.matrix.cell(r, c)))))
        .collect();
    InstanceDoc {
        schema_version: SCHEMA_VERSION,
        rows: inst.matrix.rows(),
        cols: inst.matrix.cols(),
        row_order: inst.matrix.row_order().into(),
        col_order: inst.matrix.col_order().into(),
        cells,
        plan: PlanDoc {
            n: plan.n,
            m: plan.m,
            gadgets: plan
                .gadgets
                .iter()
                .map(|g| GadgetDoc {
                    var: g.var,
                    p: g.p,
                    padding: g.r,
                    top_row: top(g.last_row),
                    bottom_row: top(g.first_row),
                    switcher_col: g.col_offset + 1,
                    body_start: g.body_start,
                    last_col: g.last_col,
                    first_var: g.first_var,
                })
                .collect(),
            clauses: plan
                .clauses
                .iter()
                .map(|c| ClauseDoc {
                    clause: c.clause,
                    vars: f.clauses()[c.clause - 1],
                    subs: c
                        .subs
                        .iter()
                        .map(|s| SubDoc {
                            bottom_row: top(s.first_row),
                            switcher_col: s.switcher_col,
                            targets: s.targets,
                            first_var: s.first_var,
                        })
                        .collect(),
                })
                .collect(),
            header: plan
                .header
                .iter()
                .map(|h| HeaderDoc {
                    var: h.var,
                    row: top(h.row),
                    first_one: h.first_one,
                })
                .collect(),
            variables: plan
                .labels
                .iter()
                .zip(&plan.positions)
                .enumerate()
                .map(|(id, (&label, &(row, col)))| VariableDoc {
                    id,
                    row: top(row),
                    col,
                    label: label.into(),
                })
                .collect(),
        },
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyDoc {
    pub schema_version: u32,
    pub n: usize,
    pub m: usize,
    pub rows: usize,
    pub cols: usize,
    pub free_cells: usize,
    pub model_count: usize,
    pub formula_satisfiable: bool,
    pub matrix_status: &'static str,
    pub nodes: u64,
    pub decoded: Option<Vec<bool>>,
    pub decoded_is_model: bool,
    /// `null` when the search ran out of budget.
    pub agree: Option<bool>,
}

pub fn status_name(s: Status) -> &'static str {
    match s {
        Status::Satisfiable => "satisfiable",
        Status::Unsatisfiable => "unsatisfiable",
        Status::Unknown => "unknown",
    }
}

pub fn verify_doc(f: &Formula, inst: &Instance, r: &EquivalenceReport) -> VerifyDoc {
    VerifyDoc {
        schema_version: SCHEMA_VERSION,
        n: f.n(),
        m: f.m(),
        rows: inst.matrix.rows(),
        cols: inst.matrix.cols(),
        free_cells: inst.plan.num_vars(),
        model_count: r.model_count,
        formula_satisfiable: r.formula_satisfiable,
        matrix_status: status_name(r.matrix_status),
        nodes: r.nodes,
        decoded: r.decoded.clone(),
        decoded_is_model: r.decoded_is_model,
        agree: r.agree,
    }
}
