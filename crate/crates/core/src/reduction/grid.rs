use alloc::string::String;
use alloc::vec::Vec;

use super::ReductionError;
use crate::csp::VarId;
use crate::lex::{ChainOrder, MatrixCell, MatrixModel};

/// A matrix under construction, in bottom-up coordinates. Unset cells read as 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    cells: Vec<Option<MatrixCell>>,
}

impl Grid {
    pub fn new(rows: usize, cols: usize) -> Self {
        Grid {
            rows,
            cols,
            cells: alloc::vec![None; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn index(&self, row: usize, col: usize) -> usize {
        assert!(
            (1..=self.rows).contains(&row) && (1..=self.cols).contains(&col),
            "({row}, {col}) outside a {}x{} grid",
            self.rows,
            self.cols
        );
        (row - 1) * self.cols + col - 1
    }

    /// Sets a cell; setting it again to a different state is a clash.
    pub fn set(&mut self, row: usize, col: usize, cell: MatrixCell) -> Result<(), ReductionError> {
        let i = self.index(row, col);
        match self.cells[i] {
            Some(old) if old != cell => Err(ReductionError::Clash { row, col }),
            _ => {
                self.cells[i] = Some(cell);
                Ok(())
            }
        }
    }

    /// Sets `row`, columns `from..=to`, to 1.
    pub fn ones(&mut self, row: usize, from: usize, to: usize) -> Result<(), ReductionError> {
        (from..=to).try_for_each(|c| self.set(row, c, MatrixCell::One))
    }

    pub fn get(&self, row: usize, col: usize) -> MatrixCell {
        self.cells[self.index(row, col)].unwrap_or(MatrixCell::Zero)
    }

    pub fn is_set(&self, row: usize, col: usize) -> bool {
        self.cells[self.index(row, col)].is_some()
    }

    /// Copies every set cell of `other` with its origin moved to `(row_off+1, col_off+1)`,
    /// renaming variables through `rename`.
    pub fn place(
        &mut self,
        other: &Grid,
        row_off: usize,
        col_off: usize,
        rename: impl Fn(VarId) -> VarId,
    ) -> Result<(), ReductionError> {
        for r in 1..=other.rows {
            for c in 1..=other.cols {
                if let Some(cell) = other.cells[other.index(r, c)] {
                    let cell = match cell {
                        MatrixCell::Free(v) => MatrixCell::Free(rename(v)),
                        fixed => fixed,
                    };
                    self.set(r + row_off, c + col_off, cell)?;
                }
            }
        }
        Ok(())
    }

    /// Top-down index of a bottom-up row.
    pub fn display_row(&self, row: usize) -> usize {
        self.rows - row + 1
    }

    /// A row read left to right.
    pub fn row(&self, row: usize) -> Vec<MatrixCell> {
        (1..=self.cols).map(|c| self.get(row, c)).collect()
    }

    /// A column read from the top row down.
    pub fn column(&self, col: usize) -> Vec<MatrixCell> {
        (1..=self.rows).rev().map(|r| self.get(r, col)).collect()
    }

    pub fn free_count(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| matches!(c, Some(MatrixCell::Free(_))))
            .count()
    }

    /// Replaces free cells by the value `value(v)` returns, when it returns one.
    pub fn instantiate(&self, value: impl Fn(VarId) -> Option<u32>) -> Grid {
        let mut g = self.clone();
        for cell in g.cells.iter_mut() {
            if let Some(MatrixCell::Free(v)) = *cell {
                match value(v) {
                    Some(0) => *cell = Some(MatrixCell::Zero),
                    Some(_) => *cell = Some(MatrixCell::One),
                    None => {}
                }
            }
        }
        g
    }

    /// The grid top-down, with both chains `Lex`.
    pub fn to_matrix(&self) -> MatrixModel {
        let mut cells = Vec::with_capacity(self.rows * self.cols);
        for r in (1..=self.rows).rev() {
            cells.extend(self.row(r));
        }
        MatrixModel::new(self.rows, self.cols, cells, ChainOrder::Lex, ChainOrder::Lex)
            .expect("grid free cells are distinct")
    }

    /// `0`, `1` and `.` (free), top row first.
    pub fn render(&self) -> String {
        let mut s = String::with_capacity((self.cols + 1) * self.rows);
        for r in (1..=self.rows).rev() {
            for c in 1..=self.cols {
                s.push(match self.get(r, c) {
                    MatrixCell::Zero => '0',
                    MatrixCell::One => '1',
                    MatrixCell::Free(_) => '.',
                });
            }
            s.push('\n');
        }
        s
    }
}

/// A pair of partially fixed vectors whose fixed suffix is out of order at `k` but which
/// may still be repaired at an earlier free position in `fix_set`. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WronglyOrdered {
    pub k: usize,
    pub fix_set: Vec<usize>,
}

/// Finds the least `k` such that no `j < k` has `v1[j] = 0 < 1 = v2[j]` fixed,
/// `v1[k] = 1` and `v2[k] = 0` are fixed, and
/// `J = {j < k : (v1[j] = 0 or free) and v2[j] free}` is non-empty.
pub fn detect_wrongly_ordered(v1: &[MatrixCell], v2: &[MatrixCell]) -> Option<WronglyOrdered> {
    assert_eq!(v1.len(), v2.len(), "vectors differ in length");
    let mut fix_set = Vec::new();
    for (j, (&a, &b)) in v1.iter().zip(v2).enumerate() {
        match (a.fixed(), b.fixed()) {
            (Some(0), Some(1)) => return None,
            (Some(1), Some(0)) if !fix_set.is_empty() => {
                return Some(WronglyOrdered { k: j + 1, fix_set });
            }
            (x, None) if x != Some(1) => fix_set.push(j + 1),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use MatrixCell::*;

    #[test]
    fn witness_examples() {
        assert_eq!(
            detect_wrongly_ordered(&[Zero, Zero, One], &[Free(0), Zero, Zero]),
            Some(WronglyOrdered { k: 3, fix_set: vec![1] })
        );
        assert_eq!(detect_wrongly_ordered(&[Zero, Zero], &[Zero, Zero]), None);
        assert_eq!(detect_wrongly_ordered(&[One, Zero], &[Zero, One]), None);
        // a fixed 0 < 1 before k orders the pair already
        assert_eq!(
            detect_wrongly_ordered(&[Free(0), Zero, One], &[Free(1), One, Zero]),
            None
        );
    }

    #[test]
    fn clash_detected() {
        let mut g = Grid::new(2, 2);
        g.set(1, 1, One).unwrap();
        g.set(1, 1, One).unwrap();
        assert_eq!(g.set(1, 1, Zero), Err(ReductionError::Clash { row: 1, col: 1 }));
    }

    #[test]
    fn display_is_top_down() {
        let mut g = Grid::new(2, 2);
        g.set(1, 1, One).unwrap();
        g.set(2, 2, Free(0)).unwrap();
        assert_eq!(g.render(), "0.\n10\n");
        let m = g.to_matrix();
        assert_eq!(m.cell(2, 1), One);
        assert_eq!(m.cell(1, 2), Free(0));
        assert_eq!(g.column(1), [Zero, One]);
    }
}
