use alloc::format;
use alloc::vec::Vec;

use super::grid::{detect_wrongly_ordered, Grid, WronglyOrdered};
use super::ReductionError;
use crate::csp::{solve, Domain, Model, SearchConfig, Value, VarId};
use crate::lex::{ChainOrder, LexChain, MatrixCell};

/// Cell roles of a variable gadget, in local bottom-up coordinates.
///
/// Local variables are numbered `t = 0`, `f = 1`, t-dependents `2..2+p`, f-dependents
/// `2+p..2+2p`, then the switcher cells bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget1Layout {
    pub var: usize,
    pub p: usize,
    pub r: usize,
    pub rows: usize,
    pub cols: usize,
    pub t: (usize, usize),
    pub f: (usize, usize),
    pub t_deps: Vec<(usize, usize)>,
    pub f_deps: Vec<(usize, usize)>,
    pub switcher: Vec<(usize, usize)>,
}

impl Gadget1Layout {
    pub const T: VarId = 0;
    pub const F: VarId = 1;

    pub fn t_dep_var(&self, k: usize) -> VarId {
        2 + k - 1
    }

    pub fn f_dep_var(&self, k: usize) -> VarId {
        2 + self.p + k - 1
    }

    pub fn switcher_vars(&self) -> core::ops::Range<VarId> {
        2 + 2 * self.p..4 + 4 * self.p
    }

    pub fn num_vars(&self) -> usize {
        4 * self.p + 4
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget1 {
    pub grid: Grid,
    pub layout: Gadget1Layout,
}

/// The `(2p+4) x (4p+4+r)` gadget of variable `i` occurring in `p` clauses.
pub fn build_gadget1(i: usize, p: usize, r: usize) -> Result<Gadget1, ReductionError> {
    use MatrixCell::*;
    if p == 0 {
        return Err(ReductionError::Geometry(format!("variable {i} occurs in no clause")));
    }
    let rows = 2 * p + 4;
    let w = 4 * p + 4 + r;
    let mut g = Grid::new(rows, w);
    let mut layout = Gadget1Layout {
        var: i,
        p,
        r,
        rows,
        cols: w,
        t: (p + 1, r + 3 + 2 * p),
        f: (2 * p + 3, w),
        t_deps: Vec::new(),
        f_deps: Vec::new(),
        switcher: Vec::new(),
    };
    g.set(1, 1, One)?;
    g.set(rows, 1, Zero)?;
    for row in 1..=rows {
        g.set(row, 2, One)?;
    }
    for k in 1..=p {
        let c = r + 3 + 2 * (k - 1);
        g.set(k, c, Free(layout.t_dep_var(k)))?;
        g.ones(k, c + 3, w)?;
        layout.t_deps.push((k, c));
    }
    g.set(layout.t.0, layout.t.1, Free(Gadget1Layout::T))?;
    g.ones(p + 1, layout.t.1 + 1, w)?;
    g.ones(p + 2, layout.t.1, w)?;
    for k in 1..=p {
        let (row, c) = (p + 2 + k, r + 4 + 2 * p + 2 * (k - 1));
        g.set(row, c, Free(layout.f_dep_var(k)))?;
        if c + 3 <= w {
            g.ones(row, c + 3, w)?;
        }
        layout.f_deps.push((row, c));
    }
    g.set(layout.f.0, layout.f.1, Free(Gadget1Layout::F))?;
    g.set(rows, w, One)?;
    for (v, row) in layout.switcher_vars().zip(2..=2 * p + 3) {
        g.set(row, 1, Free(v))?;
        layout.switcher.push((row, 1));
    }
    Ok(Gadget1 { grid: g, layout })
}

/// Cell roles of one clause sub-matrix. Local variables: switcher `0..4` (rows 2..=5),
/// then the cells next to targets `a`, `b`, `c` as `4`, `5`, `6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget2Layout {
    pub switcher_col: usize,
    /// Absolute columns of the three targeted dependents, ascending.
    pub targets: [usize; 3],
    pub width: usize,
    pub switcher: Vec<(usize, usize)>,
    pub cells: [(usize, usize); 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget2 {
    pub grid: Grid,
    pub layout: Gadget2Layout,
}

/// One 6-row clause sub-matrix spanning `width` columns, with its switcher in
/// `switcher_col` and repair cells next to the target columns.
pub fn build_gadget2(switcher_col: usize, targets: [usize; 3], width: usize) -> Result<Gadget2, ReductionError> {
    use MatrixCell::*;
    let [a, b, c] = targets;
    if switcher_col == 0 || switcher_col + 1 >= a {
        return Err(ReductionError::Geometry(format!(
            "switcher column {switcher_col} must lie left of target column {a} with a gap"
        )));
    }
    if !(a < b && b < c) {
        return Err(ReductionError::Geometry(format!(
            "target columns {a}, {b}, {c} are not increasing"
        )));
    }
    if c + 2 > width {
        return Err(ReductionError::Geometry(format!(
            "target column {c} leaves no room for its 1-block in width {width}"
        )));
    }
    let mut g = Grid::new(6, width);
    let geometry = |e: ReductionError| match e {
        ReductionError::Clash { row, col } => ReductionError::Geometry(format!("blocks overlap at ({row}, {col})")),
        e => e,
    };
    g.set(1, switcher_col, One).map_err(geometry)?;
    for row in 1..=6 {
        g.set(row, switcher_col + 1, One).map_err(geometry)?;
    }
    let mut switcher = Vec::new();
    for (v, row) in (2..=5).enumerate() {
        g.set(row, switcher_col, Free(v)).map_err(geometry)?;
        switcher.push((row, switcher_col));
    }
    let cells = [(2, a + 1), (4, b + 1), (6, c + 1)];
    for (v, (&(row, col), target)) in cells.iter().zip(targets).enumerate() {
        g.set(row, col, Free(4 + v)).map_err(geometry)?;
        g.ones(row - 1, target + 2, width).map_err(geometry)?;
        g.ones(row, target + 2, width).map_err(geometry)?;
    }
    Ok(Gadget2 {
        grid: g,
        layout: Gadget2Layout {
            switcher_col,
            targets,
            width,
            switcher,
            cells,
        },
    })
}

/// All assignments of a grid's free cells (variables `0..num_vars`) under which the
/// rows are ordered. Columns are not constrained.
fn row_feasible(grid: &Grid, num_vars: usize) -> Vec<Vec<Value>> {
    let matrix = grid.to_matrix();
    let mut model = Model::from_domains(&alloc::vec![Domain::BOOL; num_vars]).expect("non-empty");
    model
        .post(LexChain::new(matrix.row_terms().to_vec(), ChainOrder::Lex))
        .expect("valid chain");
    solve(&model, &SearchConfig::all()).solutions
}

pub fn gadget1_row_feasible(g: &Gadget1) -> Vec<Vec<Value>> {
    row_feasible(&g.grid, g.layout.num_vars())
}

pub fn gadget2_row_feasible(g: &Gadget2) -> Vec<Vec<Value>> {
    row_feasible(&g.grid, 7)
}

fn column_out_of_order(grid: &Grid, col: usize) -> bool {
    let fixed = |v: Vec<MatrixCell>| v.iter().map(|c| c.fixed().expect("fully assigned")).collect::<Vec<_>>();
    fixed(grid.column(col)) > fixed(grid.column(col + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gadget1Properties {
    /// Read top-down the switcher is 0s then 1s.
    pub switcher_monotone: bool,
    /// `t` or `f` is 1.
    pub indicator_disjunction: bool,
    /// For `t` or for `f`, being 1 forces all its dependents to 1.
    pub cascade: bool,
    /// A dependent is 1 iff its column and the next are out of order.
    pub dependent_columns: bool,
    /// At least `p` dependent columns are out of order.
    pub witness_count: bool,
}

impl Gadget1Properties {
    pub fn all(&self) -> bool {
        self.switcher_monotone
            && self.indicator_disjunction
            && self.cascade
            && self.dependent_columns
            && self.witness_count
    }
}

/// Evaluates the variable-gadget properties on one full assignment of its free cells.
pub fn check_gadget1_properties(g: &Gadget1, values: &[Value]) -> Gadget1Properties {
    let l = &g.layout;
    let switcher: Vec<Value> = l.switcher_vars().rev().map(|v| values[v]).collect();
    let deps = |k: fn(&Gadget1Layout, usize) -> VarId| (1..=l.p).map(move |i| values[k(l, i)]);
    let t = values[Gadget1Layout::T] == 1;
    let f = values[Gadget1Layout::F] == 1;
    let t_cascade = !t || deps(Gadget1Layout::t_dep_var).all(|v| v == 1);
    let f_cascade = !f || deps(Gadget1Layout::f_dep_var).all(|v| v == 1);
    let full = g.grid.instantiate(|v| Some(values[v]));
    let dep_cells = l
        .t_deps
        .iter()
        .zip((1..=l.p).map(|k| l.t_dep_var(k)))
        .chain(l.f_deps.iter().zip((1..=l.p).map(|k| l.f_dep_var(k))));
    let mut dependent_columns = true;
    let mut witnesses = 0;
    for (&(_, col), v) in dep_cells {
        let out = column_out_of_order(&full, col);
        witnesses += out as usize;
        dependent_columns &= out == (values[v] == 1);
    }
    Gadget1Properties {
        switcher_monotone: switcher.windows(2).all(|w| w[0] <= w[1]),
        indicator_disjunction: t || f,
        cascade: t_cascade || f_cascade,
        dependent_columns,
        witness_count: witnesses >= l.p,
    }
}

/// Padding a gadget with extra 0-columns leaves its row-feasible
/// assignments unchanged.
pub fn zero_columns_neutral(p: usize, r1: usize, r2: usize) -> Result<bool, ReductionError> {
    let a = gadget1_row_feasible(&build_gadget1(1, p, r1)?);
    let b = gadget1_row_feasible(&build_gadget1(1, p, r2)?);
    Ok(a == b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gadget2Properties {
    /// At most one of the three repair cells is 1.
    pub at_most_one: bool,
    /// Fixing repair cells to 0 creates no wrongly ordered column pair.
    pub zero_neutral: bool,
}

fn column_witnesses(grid: &Grid) -> Vec<(usize, WronglyOrdered)> {
    (1..grid.cols())
        .filter_map(|c| detect_wrongly_ordered(&grid.column(c), &grid.column(c + 1)).map(|w| (c, w)))
        .collect()
}

pub fn check_gadget2_properties(g: &Gadget2, values: &[Value]) -> Gadget2Properties {
    let ones = (4..7).filter(|&v| values[v] == 1).count();
    let before = column_witnesses(&g.grid);
    let zeroed = g.grid.instantiate(|v| (v >= 4 && values[v] == 0).then_some(0));
    let after = column_witnesses(&zeroed);
    Gadget2Properties {
        at_most_one: ones <= 1,
        zero_neutral: after.iter().all(|w| before.contains(w)),
    }
}
