use alloc::vec;
use alloc::vec::Vec;

use super::gadgets::{build_gadget1, build_gadget2, Gadget1Layout};
use super::grid::{detect_wrongly_ordered, Grid, WronglyOrdered};
use super::{Formula, ReductionError};
use crate::csp::{solve, Domain, Model, SearchConfig, Status, Value, VarId};
use crate::lex::{MatrixCell, MatrixModel};

/// Role of a free cell in the full construction. Variables and clauses are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellLabel {
    Indicator {
        var: usize,
        truth: bool,
    },
    Dependent {
        var: usize,
        clause: usize,
        truth: bool,
    },
    /// `index` counts from the bottom of the gadget, starting at 1.
    Switcher {
        var: usize,
        index: usize,
    },
    ClauseSwitcher {
        clause: usize,
        sub: usize,
        index: usize,
    },
    /// Repair cell of sub-matrix `sub` of `clause`, next to the dependent of `var`.
    Repair {
        clause: usize,
        sub: usize,
        var: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetPlacement {
    pub var: usize,
    pub p: usize,
    /// Zero-column padding of this gadget.
    pub r: usize,
    pub first_row: usize,
    pub last_row: usize,
    /// Local column `c` sits at absolute column `col_offset + c`.
    pub col_offset: usize,
    pub last_col: usize,
    /// First column after the padding.
    pub body_start: usize,
    pub first_var: VarId,
    pub layout: Gadget1Layout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPlacement {
    pub first_row: usize,
    pub switcher_col: usize,
    /// `(SAT variable, absolute column of its dependent)`, ascending by column.
    pub targets: [(usize, usize); 3],
    pub first_var: VarId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClausePlacement {
    pub clause: usize,
    pub first_row: usize,
    /// Sub-matrix 0 repairs true dependents, 1 and 2 false ones.
    pub subs: Vec<SubPlacement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeaderRow {
    pub var: usize,
    pub row: usize,
    pub first_one: usize,
}

/// Where everything went. Rows and columns are 1-based, rows counted from the bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub n: usize,
    pub m: usize,
    pub rows: usize,
    pub cols: usize,
    pub gadgets: Vec<GadgetPlacement>,
    pub clauses: Vec<ClausePlacement>,
    pub header: Vec<HeaderRow>,
    /// Label of every variable, indexed by `VarId`.
    pub labels: Vec<CellLabel>,
    /// Position of every variable, indexed by `VarId`.
    pub positions: Vec<(usize, usize)>,
}

impl ConstructionPlan {
    pub fn num_vars(&self) -> usize {
        self.labels.len()
    }

    /// Largest column of the construction.
    pub fn max_g(&self) -> usize {
        self.cols
    }

    pub fn var_of(&self, label: CellLabel) -> Option<VarId> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Dependent variables of `x_var` for `truth`, in clause order.
    pub fn dependents(&self, var: usize, truth: bool) -> Vec<VarId> {
        let g = &self.gadgets[var - 1];
        (1..=g.p)
            .map(|k| {
                g.first_var
                    + if truth {
                        g.layout.t_dep_var(k)
                    } else {
                        g.layout.f_dep_var(k)
                    }
            })
            .collect()
    }

    /// Absolute column of a labelled cell.
    pub fn col(&self, var: VarId) -> usize {
        self.positions[var].1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub grid: Grid,
    pub matrix: MatrixModel,
    pub plan: ConstructionPlan,
}

/// Builds the DoubleLex instance of a formula.
///
/// Columns, left to right: the switcher and all-ones columns of each variable gadget
/// (`2i-1`, `2i`), then those of each clause sub-matrix in stacking order, then the
/// gadget bodies of variables `1..n` side by side. Each gadget's padding `r_i` is chosen
/// so that its body starts right after the previous one.
pub fn build_instance(f: &Formula) -> Result<Instance, ReductionError> {
    let (n, m) = (f.n(), f.m());
    let mut gadgets = Vec::with_capacity(n);
    // clause cells are numbered first: deciding them early keeps the search small
    let mut labels = Vec::with_capacity(21 * m);
    let mut gadget_labels = Vec::new();
    let mut body_start = 2 * n + 6 * m + 1;
    let mut first_row = 1;
    for i in 1..=n {
        let occ = f.occurrences(i);
        let p = occ.len();
        let col_offset = 2 * (i - 1);
        let r = body_start - 3 - col_offset;
        let g = build_gadget1(i, p, r)?;
        let first_var = 21 * m + gadget_labels.len();
        gadget_labels.push(CellLabel::Indicator { var: i, truth: true });
        gadget_labels.push(CellLabel::Indicator { var: i, truth: false });
        for truth in [true, false] {
            gadget_labels.extend(occ.iter().map(|&clause| CellLabel::Dependent { var: i, clause, truth }));
        }
        gadget_labels.extend((1..=2 * p + 2).map(|index| CellLabel::Switcher { var: i, index }));
        let last_col = col_offset + g.layout.cols;
        gadgets.push(GadgetPlacement {
            var: i,
            p,
            r,
            first_row,
            last_row: first_row + g.layout.rows - 1,
            col_offset,
            last_col,
            body_start,
            first_var,
            layout: g.layout,
        });
        first_row += 2 * p + 4;
        body_start = last_col + 1;
    }
    let cols = body_start - 1;
    let dep_col = |var: usize, clause: usize, truth: bool| {
        let g = &gadgets[var - 1];
        let k = f.occurrences(var).iter().position(|&c| c == clause).unwrap() + 1;
        let local = if truth {
            g.layout.t_deps[k - 1]
        } else {
            g.layout.f_deps[k - 1]
        };
        g.col_offset + local.1
    };
    let mut clauses = Vec::with_capacity(m);
    for (k, clause) in f.clauses().iter().enumerate() {
        let k = k + 1;
        let mut vars = *clause;
        vars.sort_unstable();
        let mut subs = Vec::with_capacity(3);
        for q in 0..3 {
            let truth = q == 0;
            let targets = vars.map(|v| (v, dep_col(v, k, truth)));
            subs.push(SubPlacement {
                first_row: first_row + 6 * q,
                switcher_col: 2 * n + 6 * (k - 1) + 2 * q + 1,
                targets,
                first_var: labels.len(),
            });
            labels.extend((1..=4).map(|index| CellLabel::ClauseSwitcher {
                clause: k,
                sub: q,
                index,
            }));
            labels.extend(vars.map(|var| CellLabel::Repair { clause: k, sub: q, var }));
        }
        clauses.push(ClausePlacement {
            clause: k,
            first_row,
            subs,
        });
        first_row += 18;
    }
    labels.extend(gadget_labels);
    let header: Vec<HeaderRow> = gadgets
        .iter()
        .map(|g| HeaderRow {
            var: g.var,
            row: first_row + g.var - 1,
            first_one: g.body_start,
        })
        .collect();
    let rows = first_row + n - 1;

    let mut grid = Grid::new(rows, cols);
    for g in &gadgets {
        let local = build_gadget1(g.var, g.p, g.r)?;
        grid.place(&local.grid, g.first_row - 1, g.col_offset, |v| g.first_var + v)?;
    }
    for c in &clauses {
        for s in &c.subs {
            let local = build_gadget2(s.switcher_col, s.targets.map(|t| t.1), cols)?;
            grid.place(&local.grid, s.first_row - 1, 0, |v| s.first_var + v)?;
        }
    }
    for h in &header {
        grid.ones(h.row, h.first_one, cols)?;
    }
    let mut positions = vec![(0, 0); labels.len()];
    for row in 1..=rows {
        for col in 1..=cols {
            if let MatrixCell::Free(v) = grid.get(row, col) {
                positions[v] = (row, col);
            }
        }
    }
    let matrix = grid.to_matrix();
    Ok(Instance {
        grid,
        matrix,
        plan: ConstructionPlan {
            n,
            m,
            rows,
            cols,
            gadgets,
            clauses,
            header,
            labels,
            positions,
        },
    })
}

/// Reads a SAT assignment off a matrix solution: `x_i` is true iff all its true
/// dependents are 1. Fails unless one side's dependents are all 1 and the other's all 0.
pub fn decode_assignment(
    f: &Formula,
    plan: &ConstructionPlan,
    solution: &[Value],
) -> Result<Vec<bool>, ReductionError> {
    (1..=f.n())
        .map(|i| {
            let side = |truth| {
                plan.dependents(i, truth)
                    .iter()
                    .map(|&v| solution[v])
                    .collect::<Vec<_>>()
            };
            let (t, fl) = (side(true), side(false));
            let all = |s: &[Value], x| s.iter().all(|&v| v == x);
            match (all(&t, 1) && all(&fl, 0), all(&fl, 1) && all(&t, 0)) {
                (true, _) => Ok(true),
                (_, true) => Ok(false),
                _ => Err(ReductionError::MixedDependents { var: i }),
            }
        })
        .collect()
}

/// Default search budget per instance for [`verify_equivalence`].
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub model_count: usize,
    pub formula_satisfiable: bool,
    pub matrix_status: Status,
    pub nodes: u64,
    /// Decoded SAT assignment of the matrix solution, if one was found and decodes.
    pub decoded: Option<Vec<bool>>,
    pub decoded_is_model: bool,
    /// `None` when the search budget ran out.
    pub agree: Option<bool>,
}

/// Compares brute-force satisfiability of `f` with a search for a solution of its
/// matrix (DoubleLex propagation at every node), decoding any solution found.
pub fn verify_equivalence(f: &Formula, budget: u64) -> Result<EquivalenceReport, ReductionError> {
    let models = f.models()?;
    let inst = build_instance(f)?;
    let mut model = Model::from_domains(&vec![Domain::BOOL; inst.plan.num_vars()]).expect("non-empty");
    model.post(inst.matrix.clone()).expect("valid matrix");
    let result = solve(&model, &SearchConfig::first().with_budget(budget));
    let decoded = result
        .solutions
        .first()
        .and_then(|s| decode_assignment(f, &inst.plan, s).ok());
    let decoded_is_model = decoded.as_deref().is_some_and(|a| f.is_model(a));
    let formula_satisfiable = !models.is_empty();
    let agree = match result.status {
        Status::Unknown => None,
        Status::Satisfiable => Some(formula_satisfiable && decoded_is_model),
        Status::Unsatisfiable => Some(!formula_satisfiable),
    };
    Ok(EquivalenceReport {
        model_count: models.len(),
        formula_satisfiable,
        matrix_status: result.status,
        nodes: result.stats.nodes,
        decoded,
        decoded_is_model,
        agree,
    })
}

/// Whether a pair of adjacent vectors is strictly ordered by fixed cells alone: the
/// greatest completion of `lo` is below the least completion of `hi`.
fn strictly_separated(lo: &[MatrixCell], hi: &[MatrixCell]) -> bool {
    let max: Vec<Value> = lo.iter().map(|c| c.fixed().unwrap_or(1)).collect();
    let min: Vec<Value> = hi.iter().map(|c| c.fixed().unwrap_or(0)).collect();
    max < min
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Owner {
    Gadget(usize),
    Sub(usize, usize),
    Header(usize),
}

fn row_owner(plan: &ConstructionPlan, row: usize) -> Owner {
    if let Some(g) = plan.gadgets.iter().find(|g| (g.first_row..=g.last_row).contains(&row)) {
        return Owner::Gadget(g.var);
    }
    for c in &plan.clauses {
        for (q, s) in c.subs.iter().enumerate() {
            if (s.first_row..s.first_row + 6).contains(&row) {
                return Owner::Sub(c.clause, q);
            }
        }
    }
    let h = plan
        .header
        .iter()
        .find(|h| h.row == row)
        .expect("every row has an owner");
    Owner::Header(h.var)
}

fn col_owner(plan: &ConstructionPlan, col: usize) -> Owner {
    if col <= 2 * plan.n {
        return Owner::Gadget(col.div_ceil(2));
    }
    if col <= 2 * plan.n + 6 * plan.m {
        let off = col - 2 * plan.n - 1;
        return Owner::Sub(off / 6 + 1, off % 6 / 2);
    }
    let g = plan
        .gadgets
        .iter()
        .find(|g| (g.body_start..=g.last_col).contains(&col))
        .expect("every column has an owner");
    Owner::Gadget(g.var)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    Rows,
    Columns,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub kind: PairKind,
    /// First index of the adjacent pair (top-down for rows, left to right for columns).
    pub index: usize,
    pub witness: WronglyOrdered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceProperties {
    /// Rows: every adjacent pair of rows from different gadgets (or header
    /// rows) is strictly ordered by its fixed cells.
    pub rows_separated: bool,
    /// Columns: likewise for columns of different gadgets.
    pub columns_separated: bool,
    /// Under each canonical gadget assignment with clause cells free, a
    /// dependent column pair is wrongly ordered iff the dependent is 1.
    pub dependent_columns: bool,
    /// Each gadget yields at least `p` such pairs.
    pub witness_count: bool,
    /// The repair set of each such pair is exactly the clause repair cells
    /// aimed at that dependent.
    pub designated_repair: bool,
    pub header_fixed: bool,
    pub free_cells: usize,
}

impl InstanceProperties {
    pub fn all(&self) -> bool {
        self.rows_separated
            && self.columns_separated
            && self.dependent_columns
            && self.witness_count
            && self.designated_repair
            && self.header_fixed
    }
}

/// Every wrongly ordered adjacent pair of rows (top-down) and columns of a grid.
pub fn scan_witnesses(grid: &Grid) -> Vec<PairWitness> {
    let rows = (1..grid.rows()).filter_map(|d| {
        let upper = grid.rows() - d + 1;
        detect_wrongly_ordered(&grid.row(upper), &grid.row(upper - 1)).map(|witness| PairWitness {
            kind: PairKind::Rows,
            index: d,
            witness,
        })
    });
    let cols = (1..grid.cols()).filter_map(|c| {
        column_pair(grid, c).map(|witness| PairWitness {
            kind: PairKind::Columns,
            index: c,
            witness,
        })
    });
    rows.chain(cols).collect()
}

/// Gadget values for a truth value: the indicator and dependents of that side are 1,
/// the other side 0, and the switcher repairs the other indicator's row pair.
fn canonical_gadget_values(l: &Gadget1Layout, truth: bool) -> Vec<Value> {
    let mut v = vec![0; l.num_vars()];
    v[if truth { Gadget1Layout::T } else { Gadget1Layout::F }] = 1;
    for k in 1..=l.p {
        v[if truth { l.t_dep_var(k) } else { l.f_dep_var(k) }] = 1;
    }
    // switcher cells cover rows 2..=2p+3; 1 below the step
    let step = if truth { 2 * l.p + 3 } else { l.p + 1 };
    for (s, row) in l.switcher_vars().zip(2..) {
        v[s] = (row <= step) as Value;
    }
    v
}

fn column_pair(grid: &Grid, col: usize) -> Option<WronglyOrdered> {
    detect_wrongly_ordered(&grid.column(col), &grid.column(col + 1))
}

/// Structural checks of Properties 5, 6, 9 and 10 on a built instance; the
/// dependent-column checks run for every SAT assignment (so keep `n` small).
pub fn check_instance_properties(inst: &Instance) -> InstanceProperties {
    let plan = &inst.plan;
    let grid = &inst.grid;
    let rows_separated = (1..plan.rows)
        .all(|r| row_owner(plan, r) == row_owner(plan, r + 1) || strictly_separated(&grid.row(r + 1), &grid.row(r)));
    let columns_separated = (1..plan.cols).all(|c| {
        col_owner(plan, c) == col_owner(plan, c + 1) || strictly_separated(&grid.column(c), &grid.column(c + 1))
    });
    let header_fixed = plan
        .header
        .iter()
        .all(|h| grid.row(h.row).iter().all(|c| c.fixed().is_some()));

    let mut dependent_columns = true;
    let mut witness_count = true;
    let mut designated_repair = true;
    for bits in 0u32..1 << plan.n {
        let mut values: Vec<Option<Value>> = vec![None; plan.num_vars()];
        for g in &plan.gadgets {
            let local = canonical_gadget_values(&g.layout, bits >> (g.var - 1) & 1 == 1);
            for (v, x) in local.into_iter().enumerate() {
                values[g.first_var + v] = Some(x);
            }
        }
        let partial = grid.instantiate(|v| values[v]);
        for g in &plan.gadgets {
            let mut count = 0;
            for truth in [true, false] {
                for dep in plan.dependents(g.var, truth) {
                    let col = plan.col(dep);
                    let w = column_pair(&partial, col);
                    dependent_columns &= w.is_some() == (values[dep] == Some(1));
                    let Some(w) = w else { continue };
                    count += 1;
                    let mut fixers: Vec<VarId> = w
                        .fix_set
                        .iter()
                        .map(|&j| match partial.get(plan.rows - j + 1, col + 1) {
                            MatrixCell::Free(v) => v,
                            _ => usize::MAX,
                        })
                        .collect();
                    fixers.sort_unstable();
                    let CellLabel::Dependent { clause, .. } = plan.labels[dep] else {
                        unreachable!()
                    };
                    let mut expected: Vec<VarId> = plan
                        .labels
                        .iter()
                        .enumerate()
                        .filter(|(_, l)| {
                            matches!(**l, CellLabel::Repair { clause: c, sub, var }
                                if c == clause && var == g.var && (sub == 0) == truth)
                        })
                        .map(|(v, _)| v)
                        .collect();
                    expected.sort_unstable();
                    designated_repair &= fixers == expected;
                }
            }
            witness_count &= count >= g.p;
        }
    }
    InstanceProperties {
        rows_separated,
        columns_separated,
        dependent_columns,
        witness_count,
        designated_repair,
        header_fixed,
        free_cells: grid.free_count(),
    }
}

/// For a full solution of the instance: the number of dependent column pairs that are
/// wrongly ordered once the clause cells are freed again, and how many of those the
/// solution repairs with a clause cell set to 1.
pub fn count_repaired_witnesses(inst: &Instance, solution: &[Value]) -> (usize, usize) {
    let plan = &inst.plan;
    let is_clause_cell = |v: VarId| {
        matches!(
            plan.labels[v],
            CellLabel::Repair { .. } | CellLabel::ClauseSwitcher { .. }
        )
    };
    let partial = inst.grid.instantiate(|v| (!is_clause_cell(v)).then(|| solution[v]));
    let mut witnesses = 0;
    let mut repaired = 0;
    for g in &plan.gadgets {
        for truth in [true, false] {
            for dep in plan.dependents(g.var, truth) {
                let col = plan.col(dep);
                if let Some(w) = column_pair(&partial, col) {
                    witnesses += 1;
                    let fixed = w
                        .fix_set
                        .iter()
                        .any(|&j| match partial.get(plan.rows - j + 1, col + 1) {
                            MatrixCell::Free(v) => solution[v] == 1,
                            _ => false,
                        });
                    repaired += fixed as usize;
                }
            }
        }
    }
    (witnesses, repaired)
}
